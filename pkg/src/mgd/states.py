"""States, crossing weights, and the four-variable state sum.

A state labels every component of the crossing-deleted diagram with 0
or 1; it is legal when each label shows up an even number of times
around every crossing.  Legal states therefore form the GF(2) null
space of a parity matrix, which is how the enumeration kernels walk
them without filtering.

Weight convention at a crossing with ends (e0, e1, e2, e3) listed ccw
and the over strand on slots 0 and 2, writing l for the labels:

* all four labels equal                    -> x
* l(e0) = l(e2) differs from l(e1) = l(e3) -> y
* l(e0) = l(e1) differs from l(e2) = l(e3) -> w
* l(e0) = l(e3) differs from l(e1) = l(e2) -> z

The x/w split is pinned by the positive-kink calibration: the kinked
circle C(1,1,2,2) must carry state sum 2x + 2w.  Good states keep their
labels along both strands of every crossing (weights x, y); bad states
flip along both strands everywhere (weights z, w).
"""

from __future__ import annotations

import enum
import os
from typing import Iterable, Sequence

from . import _statesum_py
from ._utils import ParityDSU, gf2_nullspace_basis
from .algebra import Poly4
from .diagram import MarkedGraphDiagram, dhat_components, graph_partition, require_valid

try:  # compiled kernel is optional
    from . import _statesum as _kernel
    HAVE_COMPILED_KERNEL = True
except ImportError:  # pragma: no cover - build-environment dependent
    _kernel = None
    HAVE_COMPILED_KERNEL = False

State = tuple  # tuple of 0/1 labels indexed by component

DEFAULT_STATE_LIMIT = 2 ** 30

_SYMBOLS = "xyzw"


class IllegalStateError(ValueError):
    """A state violated the even-occurrence rule at some crossing."""


class StateSpaceLimitError(RuntimeError):
    """The nominal state space exceeded the configured bound."""


def state_limit() -> int:
    env = os.environ.get("MGD_STATE_LIMIT")
    return int(env) if env else DEFAULT_STATE_LIMIT


def _crossing_comps(D: MarkedGraphDiagram) -> list[tuple[int, int, int, int]]:
    comp = dhat_components(D)
    return [tuple(comp.of_edge(e) for e in c.ends) for c in D.crossings]


def _labels_at(ends_comp: Sequence[int], sigma: State) -> tuple[int, ...]:
    try:
        return tuple(sigma[c] for c in ends_comp)
    except IndexError:
        raise IllegalStateError("state does not label every component") from None


def _pattern_symbol(labels: tuple[int, ...]) -> str:
    l0, l1, l2, l3 = labels
    code = _statesum_py.PATTERN_SYMBOL[l0 | l1 << 1 | l2 << 2 | l3 << 3]
    if code < 0:
        raise IllegalStateError(f"labels {labels} are odd at a crossing")
    return _SYMBOLS[code]


def is_legal(D: MarkedGraphDiagram, sigma: State) -> bool:
    """True when each label occurs an even number of times at every
    crossing (marked vertices impose nothing)."""
    require_valid(D)
    n = dhat_components(D).count
    if len(sigma) != n:
        raise ValueError(f"state labels {len(sigma)} components, diagram has {n}")
    for comps in _crossing_comps(D):
        l0, l1, l2, l3 = (sigma[c] for c in comps)
        if (l0 + l1 + l2 + l3) % 2:
            return False
    return True


def weight(D: MarkedGraphDiagram, crossing_index: int, sigma: State) -> str:
    """The weight symbol ('x', 'y', 'z' or 'w') of one crossing."""
    require_valid(D)
    comps = _crossing_comps(D)[crossing_index]
    return _pattern_symbol(_labels_at(comps, sigma))


def state_weight(D: MarkedGraphDiagram, sigma: State) -> Poly4:
    """Product of all crossing weights of a legal state, as a monomial."""
    require_valid(D)
    exp = [0, 0, 0, 0]
    for comps in _crossing_comps(D):
        sym = _pattern_symbol(_labels_at(comps, sigma))
        exp[_SYMBOLS.index(sym)] += 1
    return Poly4.monomial(tuple(exp))


class StateClass(enum.Enum):
    GOOD = "good"
    BAD = "bad"
    MIXED = "mixed"
    GOOD_AND_BAD = "good+bad"  # crossing-free diagrams: vacuously both


def classify(D: MarkedGraphDiagram, sigma: State) -> StateClass:
    require_valid(D)
    comps = _crossing_comps(D)
    if not comps:
        return StateClass.GOOD_AND_BAD
    seen_good = seen_bad = False
    for c in comps:
        sym = _pattern_symbol(_labels_at(c, sigma))
        if sym in "xy":
            seen_good = True
        else:
            seen_bad = True
    if seen_good and seen_bad:
        return StateClass.MIXED
    return StateClass.GOOD if seen_good else StateClass.BAD


def _legality_basis(D: MarkedGraphDiagram) -> tuple[int, list[int], list]:
    """(component count, null-space basis, per-crossing component tuples)."""
    n = dhat_components(D).count
    ends_comp = _crossing_comps(D)
    rows = []
    for comps in ends_comp:
        row = 0
        for c in comps:
            row ^= 1 << c
        if row:
            rows.append(row)
    basis = gf2_nullspace_basis(rows, n)
    return n, basis, ends_comp


def _check_limit(D: MarkedGraphDiagram, limit: int | None) -> int:
    n = dhat_components(D).count
    bound = state_limit() if limit is None else limit
    if 2 ** n > bound:
        raise StateSpaceLimitError(
            f"2^{n} nominal states exceed the bound {bound} "
            "(raise MGD_STATE_LIMIT to override)"
        )
    return n


def state_sum(D: MarkedGraphDiagram, limit: int | None = None) -> Poly4:
    """The four-variable state sum: over legal states, the product of
    crossing weights, summed in Z[x, y, z, w].

    The empty diagram has exactly its one empty state and returns 1.
    """
    require_valid(D)
    _check_limit(D, limit)
    n, basis, ends_comp = _legality_basis(D)
    use_compiled = HAVE_COMPILED_KERNEL and n <= 62 and len(basis) <= 62
    kern = _kernel if use_compiled else _statesum_py
    acc = kern.accumulate(ends_comp, basis)
    return Poly4({exp: cnt for exp, cnt in acc.items()})


def legal_states(D: MarkedGraphDiagram, limit: int | None = None) -> list[State]:
    """All legal states, ordered by their value as binary numbers over
    component indices (component 0 is the least significant bit)."""
    require_valid(D)
    _check_limit(D, limit)
    n, basis, _ = _legality_basis(D)
    masks = [0]
    for vec in basis:
        masks += [m ^ vec for m in masks]
    masks.sort()
    return [tuple(m >> i & 1 for i in range(n)) for m in masks]


def good_states(D: MarkedGraphDiagram) -> list[State]:
    """States constant on every component of the underlying surface;
    there are exactly 2^N of them and no enumeration over the full
    state space is needed."""
    require_valid(D)
    dhat = dhat_components(D)
    gp = graph_partition(D)
    # graph component of each crossing-deleted component
    owner = [0] * dhat.count
    for e, ci in dhat.edge_component.items():
        owner[ci] = gp.of_edge(e)
    for li, ci in enumerate(dhat.free_loop_components):
        owner[ci] = gp.free_loop_components[li]
    out = []
    for bits in range(1 << gp.count):
        out.append(tuple(bits >> owner[c] & 1 for c in range(dhat.count)))
    out.sort(key=lambda s: sum(b << i for i, b in enumerate(s)))
    return out


def construct_bad_state(D: MarkedGraphDiagram, bits: Sequence[int]) -> State | None:
    """The unique bad state taking the given value on each surface
    component's seed (its lowest-indexed crossing-deleted component),
    or None when the flip constraints are contradictory."""
    require_valid(D)
    dhat = dhat_components(D)
    gp = graph_partition(D)
    if len(bits) != gp.count:
        raise ValueError(f"need {gp.count} seed bits, got {len(bits)}")
    dsu = ParityDSU(dhat.count)
    for comps in _crossing_comps(D):
        if not dsu.union(comps[0], comps[2], 1):
            return None
        if not dsu.union(comps[1], comps[3], 1):
            return None
    owner = [0] * dhat.count
    for e, ci in dhat.edge_component.items():
        owner[ci] = gp.of_edge(e)
    for li, ci in enumerate(dhat.free_loop_components):
        owner[ci] = gp.free_loop_components[li]
    seed = {}
    for c in range(dhat.count):
        seed.setdefault(owner[c], c)  # lowest-indexed component per surface part
    labels = []
    for c in range(dhat.count):
        root, par = dsu.find(c)
        sroot, spar = dsu.find(seed[owner[c]])
        if root != sroot:
            raise AssertionError("flip propagation split a surface component")
        labels.append(bits[owner[c]] ^ par ^ spar)
    return tuple(labels)


def bad_states(D: MarkedGraphDiagram) -> list[State]:
    """All bad states: 2^N of them when the diagram is orientable,
    none otherwise."""
    require_valid(D)
    gp = graph_partition(D)
    out = []
    for bits_val in range(1 << gp.count):
        bits = [bits_val >> i & 1 for i in range(gp.count)]
        sigma = construct_bad_state(D, bits)
        if sigma is None:
            return []
        out.append(sigma)
    out.sort(key=lambda s: sum(b << i for i, b in enumerate(s)))
    return out
