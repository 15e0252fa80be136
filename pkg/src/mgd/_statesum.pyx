# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled state-sum kernel; mirrors _statesum_py.accumulate.

Walks the GF(2) null space of the crossing parity matrix in Gray-code
order and tallies legal states by weight multiset.  Requires at most 62
diagram components; the pure-Python kernel has no such limit.
"""

from libc.stdlib cimport calloc, free

cdef int PATTERN_SYMBOL[16]
for _i in range(16):
    PATTERN_SYMBOL[_i] = -1
PATTERN_SYMBOL[0b0000] = 0
PATTERN_SYMBOL[0b1111] = 0
PATTERN_SYMBOL[0b0101] = 1
PATTERN_SYMBOL[0b1010] = 1
PATTERN_SYMBOL[0b0110] = 2
PATTERN_SYMBOL[0b1001] = 2
PATTERN_SYMBOL[0b0011] = 3
PATTERN_SYMBOL[0b1100] = 3


def accumulate(ends_comp, basis):
    """Tally legal states by weight multiset; see the Python kernel."""
    cdef int m = len(ends_comp)
    cdef int k = len(basis)
    if k > 62:
        raise ValueError("compiled kernel limited to 62 basis vectors")

    # flatten per-basis flip lists into (crossing, mask) pairs
    flat = []
    offsets = [0]
    cdef unsigned long long vec
    cdef int j
    for vec_py in basis:
        vec = vec_py
        for j in range(m):
            c0, c1, c2, c3 = ends_comp[j]
            mask = ((vec >> c0 & 1)
                    | ((vec >> c1 & 1) << 1)
                    | ((vec >> c2 & 1) << 2)
                    | ((vec >> c3 & 1) << 3))
            if mask:
                flat.append((j, mask))
        offsets.append(len(flat))

    cdef int nflat = len(flat)
    cdef int w = m + 1
    cdef long long accsize = (<long long> w) * w * w
    cdef int* flip_c = <int*> calloc(nflat if nflat else 1, sizeof(int))
    cdef int* flip_m = <int*> calloc(nflat if nflat else 1, sizeof(int))
    cdef int* off = <int*> calloc(k + 1, sizeof(int))
    cdef int* pattern = <int*> calloc(m if m else 1, sizeof(int))
    cdef int* sym = <int*> calloc(m if m else 1, sizeof(int))
    cdef long long* acc_arr = <long long*> calloc(accsize, sizeof(long long))
    if not (flip_c and flip_m and off and pattern and sym and acc_arr):
        raise MemoryError
    cdef long long counts[4]
    counts[0] = m
    counts[1] = 0
    counts[2] = 0
    counts[3] = 0
    cdef int i2
    for i2 in range(nflat):
        flip_c[i2] = flat[i2][0]
        flip_m[i2] = flat[i2][1]
    for i2 in range(k + 1):
        off[i2] = offsets[i2]

    cdef unsigned long long total = 1ULL << k
    cdef unsigned long long i, low
    cdef int jj, t, cj, s
    try:
        acc_arr[(counts[0] * w + counts[1]) * w + counts[2]] += 1
        for i in range(1, total):
            low = i & (~i + 1)
            jj = 0
            while (low >> jj) > 1:
                jj += 1
            for t in range(off[jj], off[jj + 1]):
                cj = flip_c[t]
                counts[sym[cj]] -= 1
                pattern[cj] ^= flip_m[t]
                s = PATTERN_SYMBOL[pattern[cj]]
                sym[cj] = s
                counts[s] += 1
            acc_arr[(counts[0] * w + counts[1]) * w + counts[2]] += 1
        acc = {}
        for a in range(w):
            for b in range(w - a):
                for c in range(w - a - b):
                    v = acc_arr[(a * w + b) * w + c]
                    if v:
                        acc[(a, b, c, m - a - b - c)] = v
        return acc
    finally:
        free(flip_c)
        free(flip_m)
        free(off)
        free(pattern)
        free(sym)
        free(acc_arr)
