import pytest

from cuboidsearch import backend

TABLE2 = [
    "1\t44\tB,44,117,240,(73225)",
    "2\t60\te,60,63,(-3344),65",
    "3\t85\tB,85,132,720,(543049)",
    "4\t104\tF,153,672,104,697",
    "5\t108\te,108,725,(-426400),333",
    "6\t117\tF,520,756,117,925",
    "7\t124\tE,124,957,(13852800),3845",
]


@pytest.fixture(params=sorted(backend.KERNELS))
def kernel(request):
    return backend.KERNELS[request.param]


@pytest.fixture
def table2_lines():
    return [line.encode("ascii") for line in TABLE2]


@pytest.fixture
def table2_file(tmp_path):
    p = tmp_path / "table2.tsv"
    p.write_bytes("".join(line + "\n" for line in TABLE2).encode("ascii"))
    return p


# -- acceptance reporting: one line per criterion ---------------------------

_acceptance = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): exit criterion, reported in the summary")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("acceptance")
    if mark is None or call.when != "call":
        return
    _acceptance.append((mark.args[0], call.excinfo is None, call.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, dur in _acceptance:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  ({dur:.2f}s)")
