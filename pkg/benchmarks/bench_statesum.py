"""Benchmark the state-sum kernels: compiled extension vs pure Python.

The family is a circle with k alternating kinks: every kink adds one
diagram component with a trivial parity constraint, so the legal-state
count is exactly 2^(k+1) and the enumeration dominates the runtime.

Run with:  python benchmarks/bench_statesum.py [max_k]
"""

from __future__ import annotations

import sys
import time

from mgd import _statesum_py
from mgd.diagram import MarkedGraphDiagram
from mgd.states import HAVE_COMPILED_KERNEL, _legality_basis

try:
    from mgd import _statesum as _compiled
except ImportError:
    _compiled = None


def kink_chain(k: int) -> MarkedGraphDiagram:
    """Circle with k kinks of alternating sign."""
    crossings = []
    for i in range(k):
        loop = 2 * i + 1
        seg_in = 2 * i if i else 2 * k
        seg_out = 2 * i + 2
        if i % 2 == 0:
            crossings.append((loop, loop, seg_in, seg_out))
        else:
            crossings.append((seg_in, loop, loop, seg_out))
    return MarkedGraphDiagram.build(crossings=crossings)


def run(kernel, ends, basis, repeats=1):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t = time.perf_counter()
        out = kernel.accumulate(ends, basis)
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    max_k = int(sys.argv[1]) if len(sys.argv) > 1 else 21
    print(f"compiled kernel available: {HAVE_COMPILED_KERNEL}")
    print(f"{'k':>3} {'states':>12} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for k in range(9, max_k + 1, 3):
        D = kink_chain(k)
        n, basis, ends = _legality_basis(D)
        states = 2 ** len(basis)
        t_py, acc_py = run(_statesum_py, ends, basis)
        if _compiled is not None:
            t_c, acc_c = run(_compiled, ends, basis, repeats=3)
            assert acc_c == acc_py, "kernels disagree"
            print(f"{k:3d} {states:12d} {t_py:9.3f}s {t_c:9.3f}s {t_py / t_c:7.1f}x")
        else:
            print(f"{k:3d} {states:12d} {t_py:9.3f}s {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
