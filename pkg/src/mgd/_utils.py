"""Small internal helpers shared across modules."""

from __future__ import annotations


class ParityDSU:
    """Union-find with parity: tracks x ~ y together with a bit saying
    whether their values agree or differ.  union() returns False on a
    parity contradiction."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.offset = [0] * n  # parity of element relative to its parent

    def find(self, x: int) -> tuple[int, int]:
        """Return (root, parity of x relative to root)."""
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        par = 0
        for y in reversed(path):
            par ^= self.offset[y]
            self.parent[y] = root
            self.offset[y] = par
        return root, (self.offset[path[0]] if path else 0)

    def union(self, x: int, y: int, diff: int) -> bool:
        """Impose value(x) xor value(y) == diff; False iff contradictory."""
        rootx, parx = self.find(x)
        rooty, pary = self.find(y)
        if rootx == rooty:
            return (parx ^ pary) == diff
        if self.rank[rootx] < self.rank[rooty]:
            rootx, rooty = rooty, rootx
            parx, pary = pary, parx
        self.parent[rooty] = rootx
        self.offset[rooty] = parx ^ pary ^ diff
        if self.rank[rootx] == self.rank[rooty]:
            self.rank[rootx] += 1
        return True

    def same(self, x: int, y: int) -> bool:
        return self.find(x)[0] == self.find(y)[0]


class DSU:
    """Plain union-find."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def gf2_nullspace_basis(rows: list[int], n: int) -> list[int]:
    """Basis of the null space of a GF(2) matrix given as bitmask rows
    over n variables (bit i = variable i).  Returned vectors are
    bitmasks; the zero vector is excluded."""
    pivots: dict[int, int] = {}  # pivot column -> row with that leading bit
    for row in rows:
        for col in sorted(pivots, reverse=True):
            if row >> col & 1:
                row ^= pivots[col]
        if row:
            pivots[row.bit_length() - 1] = row
    basis = []
    for fc in range(n):
        if fc in pivots:
            continue
        vec = 1 << fc
        # each pivot row's leading bit is solved from its lower bits,
        # so back-substitute in ascending pivot order
        for col in sorted(pivots):
            if bin(pivots[col] & vec).count("1") % 2:
                vec ^= 1 << col
        basis.append(vec)
    return basis
