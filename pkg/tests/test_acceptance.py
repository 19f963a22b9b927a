"""Exit criteria, each at its stated tolerance."""
import subprocess
import sys
import time

import pytest

from cuboidsearch import SearchConfig, py_group, search_range
from cuboidsearch.cuboid_model import CuboidType, is_square, violations
from cuboidsearch.oracle import OracleLimit, cuboids_bruteforce, partners_bruteforce

from conftest import TABLE2

TABLE2_BYTES = "".join(line + "\n" for line in TABLE2).encode("ascii")


@pytest.fixture(scope="module")
def report_1e5():
    return search_range(SearchConfig(1, 100_000))


@pytest.mark.acceptance("Table-2 reproduction: search --from 44 --to 124 is byte-identical, < 1 s")
def test_table2_reproduction():
    proc = subprocess.run([sys.executable, "-m", "cuboidsearch", "search", "--from", "44", "--to", "124"],
                          capture_output=True, check=True)
    assert proc.stdout == TABLE2_BYTES
    t0 = time.perf_counter()
    rep = search_range(SearchConfig(44, 124))
    assert time.perf_counter() - t0 < 1.0
    assert b"".join(bytes(f"{r.index}\t{r.ss}\t{r.cuboid}\n", "ascii") for r in rep.rows) == TABLE2_BYTES


@pytest.mark.acceptance("Worked examples: Py(44), Py(117), Py(104) exact")
def test_worked_examples():
    assert (py_group(44).a, py_group(44).A) == ([483, 240, 117, 33], [485, 244, 125, 55])
    assert (py_group(117).a, py_group(117).A) == (
        [6844, 2280, 756, 520, 240, 156, 44], [6845, 2283, 765, 533, 267, 195, 125])
    assert (py_group(104).a, py_group(104).A) == (
        [2703, 1350, 672, 330, 195, 153, 78], [2705, 1354, 680, 346, 221, 185, 130])


@pytest.mark.acceptance("PyGroup completeness: a-list == brute-force partners for n in 3..2000, < 60 s")
def test_pygroup_completeness():
    t0 = time.perf_counter()
    for n in range(3, 2001):
        assert sorted(py_group(n).a) == partners_bruteforce(n), n
    assert time.perf_counter() - t0 < 60


@pytest.mark.acceptance("Oracle equivalence: search over smallest edge <= 500 == cuboids_bruteforce(500)")
def test_oracle_equivalence():
    engine = {r.cuboid for r in search_range(SearchConfig(1, 500)).rows}
    oracle = set(cuboids_bruteforce(OracleLimit(500)))
    assert engine == oracle
    assert len(engine) == 25


@pytest.mark.acceptance("Soundness at scale: every row for N <= 1e5 verifies (zero failures)")
def test_soundness_at_scale(report_1e5):
    failures = [(r, violations(r.cuboid)) for r in report_1e5.rows if violations(r.cuboid)]
    assert failures == []
    assert report_1e5.edges_scanned == 100_000
    assert all(r.ss <= 100_000 for r in report_1e5.rows)


@pytest.mark.acceptance("Determinism: 1, 2 and 8 workers over [44, 1e4] give byte-identical files")
def test_determinism(tmp_path):
    outs = []
    for w in (1, 2, 8):
        out = tmp_path / f"w{w}.tsv"
        subprocess.run([sys.executable, "-m", "cuboidsearch", "search", "--from", "44", "--to", "10000",
                        "--workers", str(w), "--chunk-size", "256", "--out", str(out)], check=True)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]
    assert outs[0].startswith(TABLE2_BYTES)


@pytest.mark.acceptance("No perfect cuboid: every body radicand is non-square; none flagged")
def test_no_perfect_cuboid(report_1e5):
    bodies = [r.cuboid for r in report_1e5.rows if r.cuboid.kind is CuboidType.BODY]
    assert bodies
    assert not any(is_square(c.d.radicand) for c in bodies)
    assert report_1e5.extraordinary == []
