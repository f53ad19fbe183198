"""Compare the compiled and pure-Python elimination kernels on real boundary matrices.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--large]
"""

from __future__ import annotations

import argparse
import time

from orbcat.families import named_family
from orbcat.fincat import orbit_category
from orbcat.grothendieck import e_f_gamma
from orbcat.groups import make_group
from orbcat.kernels import available_backends
from orbcat.nerve import chain_complex
from orbcat.snf import reduce_sparse


def cases(large: bool):
    S3, D4, S4, Q8 = (make_group(n) for n in ("S3", "D4", "S4", "Q8"))
    yield "E_all(S3) d3", chain_complex(e_f_gamma(S3, named_family(S3, "all")).category, 3).boundaries[3]
    yield "E_all(D4) d3", chain_complex(e_f_gamma(D4, named_family(D4, "all")).category, 3).boundaries[3]
    yield "Orb_1(Q8) d4", chain_complex(orbit_category(Q8, named_family(Q8, "trivial")), 4).boundaries[4]
    yield "Orb_all(D4) d4", chain_complex(orbit_category(D4, named_family(D4, "all")), 4).boundaries[4]
    if large:
        # ~2.5 minutes on the Python side
        yield "Orb_all(S4) d3", chain_complex(orbit_category(S4, named_family(S4, "all")), 3).boundaries[3]


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--large", action="store_true", help="include the 15432 x 351956 matrix")
    args = ap.parse_args()
    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'matrix':<16} {'shape':>16} {'nnz':>9}" + "".join(f" {b + ' s':>12}" for b in backends)
    if len(backends) > 1:
        header += f" {'speedup':>8}"
    print(header)
    for name, M in cases(args.large):
        times, results = [], []
        for b in backends:
            results.append(reduce_sparse(M, backend=b)[0])
            times.append(best_of(lambda b=b: reduce_sparse(M, backend=b), args.repeat))
        if len({r.factors for r in results}) != 1:
            raise SystemExit(f"{name}: backends disagree")
        shape = f"{M.shape[0]}x{M.shape[1]}"
        line = f"{name:<16} {shape:>16} {M.nnz:>9}" + "".join(f" {t:>12.4f}" for t in times)
        if len(times) > 1:
            line += f" {times[0] / times[1]:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
