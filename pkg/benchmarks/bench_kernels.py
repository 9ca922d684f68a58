"""Compare the compiled kernels with the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``.  Each workload runs on
both backends, the outputs are checked for equality, and the best of
several repeats is reported.
"""

from __future__ import annotations

import argparse
import itertools
import timeit

from qschur import _pykernels as py

try:
    from qschur import _ckernels as cy
except ImportError:  # extension not built
    cy = None


def gaussian_polys(N: int) -> list[dict]:
    """Raw coefficient dicts of the Gaussian binomials [N choose s] in q."""
    out = []
    for s in range(N + 1):
        p = {0: 1}
        for k in range(s):
            num = {0: 1, 2 * (N - k): -1}
            p = py.poly_mul(p, num)
        out.append(p)
    return out


def work_poly_mul(mod, polys):
    acc = {0: 1}
    for p in polys:
        acc = mod.poly_mul(acc, p)
    return acc


def tensor_terms(m: int, n: int, r: int) -> dict:
    N = m + n
    return {idx: {i % 5 - 2: 1 + i % 3} for i, idx in enumerate(itertools.product(range(1, N + 1), repeat=r))}


def work_act(mod, terms, r, m):
    for k in range(1, r):
        terms = mod.act_generator(terms, k, m)
    return terms


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if cy is None:
        print("compiled extension not built; only the pure-Python backend is available")
    polys = gaussian_polys(14)
    m, n, r = 2, 2, 6
    terms = tensor_terms(m, n, r)
    workloads = [
        ("poly_mul, product of Gaussian binomials N=14", lambda mod: work_poly_mul(mod, polys)),
        (f"act_generator, full word on V(2|2)^{r} ({len(terms)} terms)", lambda mod: work_act(mod, terms, r, m)),
    ]
    print(f"{'workload':58s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, fn in workloads:
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        if cy is None:
            print(f"{label:58s} {t_py:10.4f} {'n/a':>10s}")
            continue
        if fn(py) != fn(cy):
            raise SystemExit(f"backends disagree on {label}")
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        print(f"{label:58s} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
