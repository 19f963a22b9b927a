"""Exhaustive range search with parallel chunks and resumable checkpoints.

Each primitive cuboid is emitted exactly once: at the edge ``N`` equal to
its smallest integer edge.  Every partner edge of ``N`` occurs in ``Py(N)``,
so the cuboid is always discoverable there, and workers need no shared
seen-set.
"""
from __future__ import annotations

import json
import logging
import multiprocessing as mp
import os
import tempfile
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from . import backend
from .condition_scan import RawCandidate, scan_n
from .cuboid_model import Cuboid, CuboidType, canonicalize, reduce_primitive, sorted_side, violations
from .errors import CapacityError, CheckpointError, CuboidError, MalformedRowError, RowVerificationError
from .pythagorean import format_py, py_group
from .table_format import TableRow, iter_lines, parse_row, sort_rows

log = logging.getLogger(__name__)

CHECKPOINT_FORMAT = "cuboidsearch-checkpoint"
CHECKPOINT_VERSION = 1
DEFAULT_START = 44


@dataclass
class SearchConfig:
    range_start: int = DEFAULT_START
    range_end: int = DEFAULT_START
    workers: int = 1
    checkpoint_path: str | os.PathLike | None = None
    checkpoint_interval: int = 100_000
    chunk_size: int = 1024
    backend: str | None = None
    prefilter: bool = True

    def __post_init__(self):
        if self.range_start < 1:
            raise ValueError(f"range start must be >= 1, got {self.range_start}")
        if self.range_start > self.range_end:
            raise ValueError(f"empty range [{self.range_start}, {self.range_end}]")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.chunk_size < 1 or self.checkpoint_interval < 1:
            raise ValueError("chunk size and checkpoint interval must be positive")


@dataclass
class SearchReport:
    rows: list[TableRow]
    counts: dict[str, int]
    edges_scanned: int
    elapsed: float
    extraordinary: list[RawCandidate] = field(default_factory=list)
    resumed_from: int | None = None


def kind_counts(cuboids: Iterable[Cuboid]) -> dict[str, int]:
    c = Counter(cb.kind.letter for cb in cuboids)
    counts = {k.letter: c.get(k.letter, 0) for k in CuboidType}
    counts["total"] = sum(counts.values())
    return counts


def cuboids_at_edge(n: int, kernel=None, prefilter: bool = True) -> tuple[list[Cuboid], list[RawCandidate]]:
    """Primitive canonical cuboids whose smallest edge is ``n``.

    Also returns candidates that would be perfect cuboids; those are never
    turned into table rows.
    """
    found: dict[tuple, Cuboid] = {}
    perfect = []
    for cand in scan_n(n, prefilter, kernel):
        if cand.is_perfect():
            log.critical("PERFECT CUBOID CANDIDATE at N=%d: %s %s", n, cand.condition.name, cand.quadruple)
            perfect.append(cand)
            continue
        c = canonicalize(reduce_primitive(cand.to_cuboid()))
        if sorted_side(c) == n:
            found.setdefault((c.kind, c.slots), c)
    return list(found.values()), perfect


def _scan_chunk(args):
    start, stop, backend_name, prefilter = args
    kernel = backend.get_kernel(backend_name)
    cuboids, perfect = [], []
    for n in range(start, stop + 1):
        c, p = cuboids_at_edge(n, kernel, prefilter)
        cuboids.extend(c)
        perfect.extend(p)
    return start, stop, cuboids, perfect


# -- checkpoints -------------------------------------------------------------

def _cuboid_from_text(text: str) -> Cuboid:
    return parse_row(f"1\t1\t{text}", check=False).cuboid


def write_checkpoint(path, cfg: SearchConfig, last_completed: int, cuboids, perfect) -> None:
    """Atomically replace the checkpoint file (write temp, fsync, rename)."""
    path = Path(path)
    state = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "range_start": cfg.range_start,
        "range_end": cfg.range_end,
        "last_completed": last_completed,
        "rows": sorted(str(c) for c in cuboids),
        "extraordinary": [[p.n, p.condition.name, [str(v) for v in p.quadruple]] for p in perfect],
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(state, fh)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_checkpoint(path, cfg: SearchConfig) -> tuple[int, list[Cuboid]] | None:
    """Return ``(last_completed, cuboids)`` or ``None`` if no checkpoint exists."""
    path = Path(path)
    if not path.exists():
        return None
    try:
        state = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"unreadable checkpoint {path}: {exc}") from exc
    if state.get("format") != CHECKPOINT_FORMAT or state.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"{path} is not a version {CHECKPOINT_VERSION} search checkpoint")
    if (state["range_start"], state["range_end"]) != (cfg.range_start, cfg.range_end):
        raise CheckpointError(
            f"checkpoint {path} is for range [{state['range_start']}, {state['range_end']}], "
            f"not [{cfg.range_start}, {cfg.range_end}]")
    last = state["last_completed"]
    if not cfg.range_start - 1 <= last <= cfg.range_end:
        raise CheckpointError(f"checkpoint {path} has last_completed={last} outside the range")
    try:
        cuboids = [_cuboid_from_text(t) for t in state["rows"]]
    except (MalformedRowError, ValueError) as exc:
        raise CheckpointError(f"corrupt row in checkpoint {path}: {exc}") from exc
    return last, cuboids


# -- driver ------------------------------------------------------------------

def search_range(cfg: SearchConfig, on_checkpoint: Callable[[int], None] | None = None) -> SearchReport:
    """Search every edge in ``[range_start, range_end]``.

    With a checkpoint path, an existing checkpoint for the same range is
    resumed and progress is saved every ``checkpoint_interval`` edges of
    contiguous completed work.  ``on_checkpoint`` is called with the last
    completed edge after each save.
    """
    t0 = time.perf_counter()
    kernel = backend.get_kernel(cfg.backend)
    if kernel.MAX_EDGE is not None and cfg.range_end > kernel.MAX_EDGE:
        raise CapacityError(max(cfg.range_start, kernel.MAX_EDGE + 1), kernel.MAX_EDGE)

    committed: list[Cuboid] = []
    perfect: list[RawCandidate] = []
    done_upto = cfg.range_start - 1
    resumed_from = None
    if cfg.checkpoint_path is not None:
        loaded = load_checkpoint(cfg.checkpoint_path, cfg)
        if loaded is not None:
            done_upto, committed = loaded
            resumed_from = done_upto
            log.info("resuming from checkpoint %s after N=%d (%d rows)",
                     cfg.checkpoint_path, done_upto, len(committed))

    chunks = [(a, min(a + cfg.chunk_size - 1, cfg.range_end), kernel.NAME, cfg.prefilter)
              for a in range(done_upto + 1, cfg.range_end + 1, cfg.chunk_size)]
    pending: dict[int, tuple] = {}
    last_saved = done_upto
    edges = 0

    def collect(result):
        nonlocal done_upto, last_saved, edges
        start, stop, cuboids, perf = result
        pending[start] = (stop, cuboids, perf)
        edges += stop - start + 1
        # advance the watermark over contiguous finished chunks only
        while done_upto + 1 in pending:
            stop, cuboids, perf = pending.pop(done_upto + 1)
            committed.extend(cuboids)
            perfect.extend(perf)
            done_upto = stop
        if cfg.checkpoint_path is not None and done_upto - last_saved >= cfg.checkpoint_interval:
            write_checkpoint(cfg.checkpoint_path, cfg, done_upto, committed, perfect)
            last_saved = done_upto
            if on_checkpoint is not None:
                on_checkpoint(done_upto)

    if cfg.workers == 1 or len(chunks) <= 1:
        for ch in chunks:
            collect(_scan_chunk(ch))
    else:
        with mp.get_context().Pool(cfg.workers) as pool:
            for result in pool.imap_unordered(_scan_chunk, chunks, chunksize=1):
                collect(result)

    if cfg.checkpoint_path is not None and last_saved != done_upto:
        write_checkpoint(cfg.checkpoint_path, cfg, done_upto, committed, perfect)
        if on_checkpoint is not None:
            on_checkpoint(done_upto)

    rows = sort_rows(TableRow.of(c) for c in committed)
    return SearchReport(rows, kind_counts(committed), edges, time.perf_counter() - t0, perfect, resumed_from)


# -- table auditing ----------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


def verify_lines(lines: Iterable[tuple[int, bytes]]) -> list[Violation]:
    out = []
    prev = None  # (line, key) of the previous parsed row
    expected_index = 1
    for lineno, line in lines:
        try:
            row = parse_row(line, check=False)
        except MalformedRowError as exc:
            out.append(Violation(lineno, str(exc)))
            expected_index += 1
            prev = None
            continue
        for p in violations(row.cuboid):
            out.append(Violation(lineno, f"verification failure for {row.cuboid}: {p}"))
        if row.index != expected_index:
            out.append(Violation(lineno, f"index {row.index}, expected {expected_index}"))
        expected_index += 1
        try:
            ss = sorted_side(row.cuboid)
            canon = canonicalize(row.cuboid)
        except (CuboidError, ValueError, IndexError) as exc:
            out.append(Violation(lineno, f"cannot canonicalize {row.cuboid}: {exc}"))
            prev = None
            continue
        if row.ss != ss:
            out.append(Violation(lineno, f"ss {row.ss} differs from smallest integer edge {ss}"))
        if canon != row.cuboid:
            out.append(Violation(lineno, f"{row.cuboid} is not in canonical layout ({canon})"))
        key = row.cuboid.key()
        if prev is not None:
            if prev[1] > key:
                out.append(Violation(prev[0], f"sort-order violation: sorts after line {lineno}"))
            elif prev[1] == key:
                out.append(Violation(lineno, f"duplicate of line {prev[0]}"))
        prev = (lineno, key)
    return sorted(out, key=lambda v: v.line)


def verify_table(path) -> list[Violation]:
    """Audit a table file; an empty list means it is clean."""
    with open(path, "rb") as fh:
        return verify_lines(iter_lines(fh))


def table_stats(rows: list[TableRow]) -> dict:
    counts = kind_counts(r.cuboid for r in rows)
    total = counts["total"]
    body = counts["B"]
    edge = counts["e"] + counts["E"]
    face = counts["F"]
    stats = {"counts": counts, "body": body, "edge": edge, "face": face}
    if total:
        stats["fractions"] = {k: counts[k] / total for k in ("B", "e", "E", "F")}
        stats["ss_min"] = min(r.ss for r in rows)
        stats["ss_max"] = max(r.ss for r in rows)
    return stats


def format_stats(stats: dict) -> str:
    c = stats["counts"]
    lines = [f"total\t{c['total']}"]
    names = {"B": "body (Euler)", "e": "edge, complex length", "E": "edge, real length", "F": "face"}
    for k in ("B", "e", "E", "F"):
        frac = stats.get("fractions", {}).get(k, 0.0)
        lines.append(f"{k}\t{c[k]}\t{100 * frac:.2f}%\t{names[k]}")
    if c["total"]:
        b, e, f = stats["body"], stats["edge"], stats["face"]
        lines.append(f"body:edge:face\t{b}:{e}:{f}\t"
                     f"{b / c['total']:.4f}:{e / c['total']:.4f}:{f / c['total']:.4f}")
        lines.append(f"ss range\t{stats['ss_min']}..{stats['ss_max']}")
    return "\n".join(lines)


def print_py(n: int) -> str:
    """Listing of the ``d, a, A`` triples of ``Py(n)``."""
    return format_py(py_group(n))
