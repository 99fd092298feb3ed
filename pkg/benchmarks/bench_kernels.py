"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends must return identical results; the script prints wall time
per case and the speed-up of the compiled version.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from coxalt import _kernels_py
from coxalt.complex import build_coxeter_complex
from coxalt.coxeter import parse_graph
from coxalt.groups import coxeter_relators, enumerate_group
from coxalt.linalg import cochain_complex

try:
    from coxalt import _kernels as compiled
except ImportError:  # pragma: no cover
    compiled = None


def coset_case(graph, T, cap=200_000):
    M = parse_graph(graph)
    args = (M.n, coxeter_relators(M), [[t] for t in T], cap)
    return f"cosets {graph} / W_{tuple(t + 1 for t in T)}", "coset_enumerate", args


def rank_case(graph, p, k):
    X = build_coxeter_complex(enumerate_group(parse_graph(graph)))
    m = cochain_complex(X, p).d[k].csr
    return (f"rank d_{k} of X({graph}) {m.shape[0]}x{m.shape[1]}", "sparse_rank_mod_p",
            (m.indptr, m.indices, m.data, m.shape[1], p))


def random_rank_case(rows, cols, density, p, seed=0):
    import scipy.sparse as sp
    rng = np.random.default_rng(seed)
    m = sp.random(rows, cols, density=density, format="csr", random_state=rng,
                  data_rvs=lambda n: rng.integers(1, p, n))
    m.sort_indices()
    return (f"rank random {rows}x{cols} d={density}", "sparse_rank_mod_p",
            (m.indptr, m.indices, m.data.astype(np.int64), cols, p))


def timed(fn, args, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if compiled is None:
        raise SystemExit("compiled extension not built; run `pip install -e .` first")
    cases = [
        coset_case("F4", []),
        coset_case("E6", [0, 1, 2, 3, 4]),
        coset_case("H4", [0, 1, 2]),
        coset_case("A6", [0]),
        rank_case("F4", 5, 1),
        rank_case("B5", 5, 1),
        rank_case("B5", 5, 2),
        random_rank_case(1500, 1200, 0.003, 7),
    ]
    print(f"{'case':44s} {'python s':>10s} {'compiled s':>11s} {'speed-up':>9s}")
    for label, kernel, kargs in cases:
        tp, rp = timed(getattr(_kernels_py, kernel), kargs, args.repeat)
        tc, rc = timed(getattr(compiled, kernel), kargs, args.repeat)
        same = np.array_equal(rp, rc) if isinstance(rp, np.ndarray) else rp == rc
        if not same:
            raise SystemExit(f"backends disagree on {label}")
        print(f"{label:44s} {tp:10.4f} {tc:11.4f} {tp / max(tc, 1e-9):8.1f}x")


if __name__ == "__main__":
    main()
