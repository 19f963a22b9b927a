"""Compare the compiled and pure-Python scan kernels.

    python benchmarks/bench_kernels.py --from 44 --to 20000
"""
import argparse
import time

from cuboidsearch import backend
from cuboidsearch.search import SearchConfig, search_range
from cuboidsearch.table_format import dumps


def time_it(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--from", dest="start", type=int, default=44)
    ap.add_argument("--to", dest="end", type=int, default=20_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    n_edges = args.end - args.start + 1
    results = {}
    print(f"edges {args.start}..{args.end} ({n_edges} edges), best of {args.repeat}")
    print(f"{'kernel':<10} {'scan s':>9} {'search s':>9} {'edges/s':>10} {'rows':>6}")
    for name, k in sorted(backend.KERNELS.items()):
        scan_t, hits = time_it(lambda: sum(len(k.edge_hits(n)) for n in range(args.start, args.end + 1)),
                               args.repeat)
        search_t, rep = time_it(lambda: search_range(SearchConfig(args.start, args.end, backend=name)),
                                args.repeat)
        results[name] = (scan_t, dumps(rep.rows), hits)
        print(f"{name:<10} {scan_t:>9.3f} {search_t:>9.3f} {n_edges / search_t:>10.0f} {len(rep.rows):>6}")
    if len(results) == 2:
        (_, (tc, oc, hc)), (_, (tp, op, hp)) = sorted(results.items())
        assert oc == op and hc == hp, "kernels disagree"
        print(f"speedup compiled/python: {tp / tc:.1f}x (identical output)")
    else:
        print("compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
