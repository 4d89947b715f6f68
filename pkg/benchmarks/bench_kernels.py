"""Time the whole-group inversion kernel under both backends.

    python benchmarks/bench_kernels.py [--max-n 12] [--repeat 5]

Each row reports the best of ``--repeat`` runs (numba compile time excluded:
the first call warms the JIT cache) and checks both backends agree.
"""

import argparse
import timeit

import numpy as np

from ghostclass import _kernels
from ghostclass.rootsys import build_root_system
from ghostclass.weyl import weyl_arrays


def bench(n: int, repeat: int):
    rs = build_root_system(n)
    _, sinv, signs = weyl_arrays(rs.l, rs.lie_type)
    roots = _kernels.encode_roots(rs.positive_roots)
    row = {"n": n, "type": f"{rs.lie_type}{rs.l}", "elements": sinv.shape[0], "roots": len(roots)}
    results = {}
    for backend in _kernels.BACKENDS:
        if backend == "numba" and not _kernels.HAVE_NUMBA:
            row[backend] = None
            continue
        results[backend] = _kernels.inversion_matrix(sinv, signs, roots, backend)
        t = min(timeit.repeat(lambda: _kernels.inversion_matrix(sinv, signs, roots, backend),
                              number=1, repeat=repeat))
        row[backend] = t
    if len(results) == 2:
        assert np.array_equal(results["numba"], results["numpy"])
    return row


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'n':>3} {'type':>4} {'|W|':>8} {'roots':>5} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for n in range(3, args.max_n + 1):
        r = bench(n, args.repeat)
        nb = "-" if r["numba"] is None else f"{1e3 * r['numba']:.3f}"
        sp = "-" if r["numba"] is None else f"{r['numpy'] / r['numba']:.1f}x"
        print(f"{r['n']:>3} {r['type']:>4} {r['elements']:>8} {r['roots']:>5} {nb:>10} "
              f"{1e3 * r['numpy']:>10.3f} {sp:>8}")


if __name__ == "__main__":
    main()
