"""Pure-Python state-sum kernel.

Legality of a labelling is a parity condition at each crossing, so the
legal states form the GF(2) null space of the crossing/component parity
matrix.  The kernel walks that null space in Gray-code order, patching
the four-bit label pattern of only the crossings touched by each basis
flip, and tallies how many states realize each weight multiset.

The compiled kernel in ``_statesum.pyx`` implements the same walk; both
return identical dictionaries.
"""

from __future__ import annotations

# symbol codes: 0=x, 1=y, 2=z, 3=w; -1 marks odd-parity (illegal) patterns
PATTERN_SYMBOL = [-1] * 16
PATTERN_SYMBOL[0b0000] = 0
PATTERN_SYMBOL[0b1111] = 0
PATTERN_SYMBOL[0b0101] = 1  # ends 0,2 against 1,3
PATTERN_SYMBOL[0b1010] = 1
PATTERN_SYMBOL[0b0110] = 2  # ends 0,3 against 1,2
PATTERN_SYMBOL[0b1001] = 2
PATTERN_SYMBOL[0b0011] = 3  # ends 0,1 against 2,3
PATTERN_SYMBOL[0b1100] = 3


def crossing_flip_masks(ends_comp: list[tuple[int, int, int, int]], basis: list[int]):
    """For each basis vector, the crossings it touches and the 4-bit
    pattern mask to xor there."""
    flips = []
    for vec in basis:
        touched = []
        for j, comps in enumerate(ends_comp):
            m = 0
            for i, c in enumerate(comps):
                if vec >> c & 1:
                    m |= 1 << i
            if m:
                touched.append((j, m))
        flips.append(touched)
    return flips


def accumulate(ends_comp: list[tuple[int, int, int, int]], basis: list[int]):
    """Tally legal states by weight multiset.

    Returns a dict mapping (#x, #y, #z, #w) to the number of legal
    states whose crossing weights realize that multiset.
    """
    m = len(ends_comp)
    flips = crossing_flip_masks(ends_comp, basis)
    pattern = [0] * m
    sym = [0] * m
    counts = [m, 0, 0, 0]
    acc: dict[tuple[int, int, int, int], int] = {}

    def record():
        key = tuple(counts)
        acc[key] = acc.get(key, 0) + 1

    record()
    k = len(basis)
    for i in range(1, 1 << k):
        j = (i & -i).bit_length() - 1
        for cj, mask in flips[j]:
            counts[sym[cj]] -= 1
            pattern[cj] ^= mask
            s = PATTERN_SYMBOL[pattern[cj]]
            if s < 0:
                raise AssertionError("null-space state produced an illegal pattern")
            sym[cj] = s
            counts[s] += 1
        record()
    return acc
