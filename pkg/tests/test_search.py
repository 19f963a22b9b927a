import json
import subprocess
import sys

import pytest

from cuboidsearch import backend
from cuboidsearch.cli import main
from cuboidsearch.errors import CapacityError, CheckpointError
from cuboidsearch.search import (SearchConfig, cuboids_at_edge, load_checkpoint, print_py, search_range,
                                 verify_table)
from cuboidsearch.table_format import dumps, format_row

from conftest import TABLE2


def lines(report):
    return [format_row(r).decode() for r in report.rows]


def test_table2_range(kernel):
    rep = search_range(SearchConfig(44, 124, backend=kernel.NAME))
    assert lines(rep) == TABLE2
    assert rep.counts == {"B": 2, "e": 2, "E": 1, "F": 2, "total": 7}
    assert rep.edges_scanned == 81


def test_gap_range_empty():
    rep = search_range(SearchConfig(45, 59))
    assert rep.rows == [] and rep.counts["total"] == 0


def test_single_edge():
    assert lines(search_range(SearchConfig(44, 44))) == ["1\t44\tB,44,117,240,(73225)"]


def test_default_start_is_44():
    assert SearchConfig().range_start == 44


@pytest.mark.parametrize("kwargs", [dict(range_start=0, range_end=5), dict(range_start=10, range_end=9),
                                    dict(range_start=1, range_end=9, workers=0)])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        SearchConfig(**kwargs)


def test_no_duplicates_and_counts():
    rep = search_range(SearchConfig(1, 20_000))
    keys = [(r.cuboid.kind, r.cuboid.slots) for r in rep.rows]
    assert len(keys) == len(set(keys))
    assert sum(v for k, v in rep.counts.items() if k != "total") == rep.counts["total"] == len(rep.rows)
    assert [r.index for r in rep.rows] == list(range(1, len(rep.rows) + 1))


def test_workers_deterministic():
    outs = {w: dumps(search_range(SearchConfig(44, 6000, workers=w, chunk_size=97)).rows) for w in (1, 3)}
    assert outs[1] == outs[3]


def test_composability():
    def cuboids(a, b):
        return {r.cuboid for r in search_range(SearchConfig(a, b)).rows}

    left, right = cuboids(1, 1234), cuboids(1235, 3000)
    assert left | right == cuboids(1, 3000)
    assert not left & right


def test_cuboids_at_edge_only_smallest_edge():
    cubs, perfect = cuboids_at_edge(60)
    assert [str(c) for c in cubs] == ["e,60,63,(-3344),65"]
    assert perfect == []
    # 88 produces the doubled 44-brick, which is not primitive and not kept here
    assert cuboids_at_edge(88) == ([], [])


class Stop(Exception):
    pass


@pytest.mark.parametrize("workers", [1, 2])
def test_checkpoint_resume_equivalence(tmp_path, workers):
    ck = tmp_path / "ck.json"
    cfg = SearchConfig(44, 8000, workers=workers, checkpoint_path=ck, checkpoint_interval=1000, chunk_size=250)
    seen = []

    def crash(last):
        seen.append(last)
        if len(seen) == 3:
            raise Stop

    with pytest.raises(Stop):
        search_range(cfg, on_checkpoint=crash)
    state = json.loads(ck.read_text())
    assert state["last_completed"] == seen[-1] >= 44 + 3000 - 1
    resumed = search_range(cfg)
    assert resumed.resumed_from == seen[-1]
    fresh = search_range(SearchConfig(44, 8000))
    assert dumps(resumed.rows) == dumps(fresh.rows)
    assert json.loads(ck.read_text())["last_completed"] == 8000
    # a finished checkpoint resumes to the same answer without scanning
    again = search_range(cfg)
    assert again.edges_scanned == 0 and dumps(again.rows) == dumps(fresh.rows)


def test_checkpoint_range_mismatch(tmp_path):
    ck = tmp_path / "ck.json"
    search_range(SearchConfig(44, 500, checkpoint_path=ck))
    with pytest.raises(CheckpointError, match="range"):
        load_checkpoint(ck, SearchConfig(44, 600))


def test_checkpoint_corrupt(tmp_path):
    ck = tmp_path / "ck.json"
    ck.write_text("{not json")
    with pytest.raises(CheckpointError):
        search_range(SearchConfig(44, 60, checkpoint_path=ck))


def test_checkpoint_atomic_no_temp_left(tmp_path):
    ck = tmp_path / "ck.json"
    search_range(SearchConfig(44, 3000, checkpoint_path=ck, checkpoint_interval=500, chunk_size=100))
    assert [p.name for p in tmp_path.iterdir()] == ["ck.json"]


@pytest.mark.skipif("compiled" not in backend.KERNELS, reason="compiled kernel not built")
def test_overflow_names_edge():
    with pytest.raises(CapacityError, match=r"N=4294967296"):
        search_range(SearchConfig(2**32 - 3, 2**32 + 5, backend="compiled"))


def test_verify_table_clean(table2_file):
    assert verify_table(table2_file) == []


def test_verify_table_swapped(tmp_path):
    swapped = TABLE2[:2] + [TABLE2[3], TABLE2[2]] + TABLE2[4:]
    p = tmp_path / "t.tsv"
    p.write_text("".join(l + "\n" for l in swapped))
    problems = verify_table(p)
    assert any(v.line == 3 and "sort-order" in v.message for v in problems)
    assert all(v.line in (3, 4) for v in problems)


def test_verify_table_empty(tmp_path):
    p = tmp_path / "empty.tsv"
    p.write_bytes(b"")
    assert verify_table(p) == []


def test_verify_table_reports_each_problem(tmp_path):
    bad = [TABLE2[0].replace("(73225)", "(73226)"), "x\t60\te,60,63,(-3344),65", TABLE2[2].replace("\t85\t", "\t86\t"),
           "4\t104\tF,672,153,104,697"]
    p = tmp_path / "bad.tsv"
    p.write_text("".join(l + "\n" for l in bad))
    msgs = {v.line: v.message for v in verify_table(p)}
    assert "verification failure" in msgs[1]
    assert "index" in msgs[2]
    assert "ss 86" in msgs[3]
    assert "canonical" in msgs[4]


def test_print_py():
    assert len(print_py(44).splitlines()) == 2 + 4
    assert len(print_py(104).splitlines()) == 2 + 7
    assert print_py(1) == "Py(1)  k=0"


# -- CLI ---------------------------------------------------------------------

def test_cli_search_stdout(capsysbinary):
    assert main(["search", "--from", "44", "--to", "124"]) == 0
    assert capsysbinary.readouterr().out == "".join(l + "\n" for l in TABLE2).encode()


def test_cli_search_out_and_verify(tmp_path, capsys):
    out = tmp_path / "t.tsv"
    assert main(["search", "--to", "2000", "--workers", "2", "--out", str(out)]) == 0
    assert main(["verify", str(out)]) == 0
    assert main(["stats", str(out)]) == 0
    text = capsys.readouterr().out
    assert "total\t" in text and "body:edge:face" in text


def test_cli_verify_failure(tmp_path, capsys):
    p = tmp_path / "t.tsv"
    p.write_text(TABLE2[1] + "\n")
    assert main(["verify", str(p)]) == 1
    assert "index 2, expected 1" in capsys.readouterr().out


def test_cli_py(capsys):
    assert main(["py", "44"]) == 0
    assert "483" in capsys.readouterr().out


def test_cli_errors(tmp_path, capsys):
    assert main(["search", "--from", "10", "--to", "5"]) == 1
    assert main(["verify", str(tmp_path / "missing.tsv")]) == 1
    assert "error:" in capsys.readouterr().err


def test_cli_header(capsysbinary):
    assert main(["search", "--to", "44", "--header"]) == 0
    assert capsysbinary.readouterr().out == b"#\tss\tcuboid\n1\t44\tB,44,117,240,(73225)\n"


def test_cli_oracle(capsysbinary):
    assert main(["oracle", "124"]) == 0
    assert capsysbinary.readouterr().out == "".join(l + "\n" for l in TABLE2).encode()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cuboidsearch", "search", "--from", "44", "--to", "124"],
                          capture_output=True, check=True)
    assert proc.stdout.decode().splitlines() == TABLE2


def test_extraordinary_exit_code(monkeypatch, capsys):
    # a planted perfect-cuboid candidate must be reported and not accepted
    from cuboidsearch import search as search_mod
    from cuboidsearch.condition_scan import RawCandidate, SearchCondition
    from cuboidsearch.cuboid_model import RadicalLength
    fake = RawCandidate(SearchCondition.BODY_SUM, 44, 240, 117, 267, (240, 117, 44, RadicalLength(100)))
    real_scan = search_mod.scan_n
    monkeypatch.setattr(search_mod, "scan_n", lambda n, p, k: real_scan(n, p, k) + ([fake] if n == 44 else []))
    rep = search_range(SearchConfig(44, 44))
    assert rep.extraordinary == [fake]
    assert len(rep.rows) == 1
    assert main(["search", "--to", "44"]) == 3
    assert "EXTRAORDINARY" in capsys.readouterr().err
