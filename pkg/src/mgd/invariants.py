"""Writhe bookkeeping and the derived invariants.

The surface-link invariants computed from a marked graph diagram D:

* ``r_prime``:  z^t * [D](0, 0, z, z^-1) with t the self-writhe of the
  positive resolution; equals 2^N on diagrams presenting orientable
  surfaces with N components and 0 on non-orientable ones.
* ``s_prime``:  [D](1, 1, 0, 0) = 2^N always.
* ``q_invariant``: ((1+i)/sqrt2)^t * [D](1/sqrt2, 1/sqrt2, i/sqrt2,
  -i/sqrt2); unchanged by every move except the marker slides.

For vertex-free (classical link) diagrams the unnormalized layer is
also exposed: R and S in oriented (writhe) and unoriented (self-writhe)
normalizations; R and S agree as Laurent polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .algebra import (
    LaurentInt,
    LaurentRat,
    SqrtGauss,
    poly4_eval_classical,
    poly4_eval_int,
    poly4_eval_laurent,
    poly4_eval_sqrtgauss,
    sqrtgauss_scale,
)
from .diagram import (
    MarkedGraphDiagram,
    NonOrientable,
    Orientation,
    graph_partition,
    orient,
    require_valid,
    resolve,
)
from .states import state_sum


def sign(D: MarkedGraphDiagram, crossing_index: int, o: Orientation) -> int:
    """Crossing sign: +1 when a quarter turn counterclockwise takes the
    under-strand direction to the over-strand direction.

    In slot terms: the over strand exits at slot 0 or 2, the under
    strand at slot 1 or 3; the crossing is positive exactly when the
    under exit sits one slot clockwise of the over exit.  (The positive
    kink C(1,1,2,2), whose state sum carries the factor x + w, has sign
    +1 under this rule.)
    """
    over_out = 0 if o.is_outward(crossing_index, 0) else 2
    under_out = 1 if o.is_outward(crossing_index, 1) else 3
    return 1 if under_out == (over_out - 1) % 4 else -1


def self_writhe(D: MarkedGraphDiagram) -> int:
    """Sum of signs over self-crossings of a vertex-free diagram.

    The sign of a crossing both of whose strands lie on one component
    does not depend on the chosen orientation, so any orientation works.
    """
    require_valid(D)
    if D.vertices:
        raise ValueError("self-writhe requires a diagram without marked vertices")
    o = orient(D)
    if isinstance(o, NonOrientable):  # cannot happen for vertex-free diagrams
        raise AssertionError("vertex-free diagram failed to orient")
    gp = graph_partition(D)
    total = 0
    for i, c in enumerate(D.crossings):
        if gp.of_edge(c.ends[0]) == gp.of_edge(c.ends[1]):
            total += sign(D, i, o)
    return total


@dataclass(frozen=True)
class WritheReport:
    writhe: int
    self_writhe: int
    total_linking: int


def writhe_report(D: MarkedGraphDiagram) -> WritheReport:
    """Writhe, self-writhe and total linking number of an oriented
    vertex-free diagram (writhe = self_writhe + 2 * total_linking)."""
    require_valid(D)
    if D.vertices:
        raise ValueError("writhe report requires a diagram without marked vertices")
    o = orient(D)
    gp = graph_partition(D)
    w = sw = 0
    for i, c in enumerate(D.crossings):
        s = sign(D, i, o)
        w += s
        if gp.of_edge(c.ends[0]) == gp.of_edge(c.ends[1]):
            sw += s
    assert (w - sw) % 2 == 0
    return WritheReport(w, sw, (w - sw) // 2)


def t_plus(D: MarkedGraphDiagram) -> int:
    """Self-writhe of the positive resolution."""
    return self_writhe(resolve(D, "+"))


def r_prime(D: MarkedGraphDiagram, limit: int | None = None) -> LaurentInt:
    """z^t_plus * [D](0, 0, z, z^-1)."""
    p = poly4_eval_laurent(state_sum(D, limit))
    return LaurentInt.z_power(t_plus(D)) * p


def s_prime(D: MarkedGraphDiagram, limit: int | None = None) -> int:
    """[D](1, 1, 0, 0); always the power 2^N."""
    return poly4_eval_int(state_sum(D, limit))


def q_invariant(D: MarkedGraphDiagram, limit: int | None = None) -> SqrtGauss:
    """((1+i)/sqrt2)^t_plus * [D] at the eighth-root evaluation point."""
    v = poly4_eval_sqrtgauss(state_sum(D, limit))
    return sqrtgauss_scale(v, t_plus(D))


Mode = Literal["ori", "unori"]


def _classical_exponent(D: MarkedGraphDiagram, mode: Mode) -> int:
    if D.vertices:
        raise ValueError("classical invariants require a vertex-free diagram")
    if mode == "ori":
        o = orient(D)
        if isinstance(o, NonOrientable):
            raise ValueError("oriented mode requested but no orientation exists")
        return writhe_report(D).writhe
    if mode == "unori":
        return self_writhe(D)
    raise ValueError(f"unknown mode {mode!r}")


def classical_r(D: MarkedGraphDiagram, mode: Mode = "unori", limit: int | None = None) -> LaurentInt:
    """z^w [D](0,0,z,z^-1) (ori) or z^sw [D](0,0,z,z^-1) (unori)."""
    require_valid(D)
    e = _classical_exponent(D, mode)
    return LaurentInt.z_power(e) * poly4_eval_laurent(state_sum(D, limit))


def classical_s(D: MarkedGraphDiagram, mode: Mode = "unori", limit: int | None = None) -> LaurentRat:
    """Same normalizations with the half-sum substitution
    x = y = (z+z^-1)/2, z = (z-z^-1)/2, w = -(z-z^-1)/2."""
    require_valid(D)
    e = _classical_exponent(D, mode)
    zpow = LaurentRat({e: 1})
    return zpow * poly4_eval_classical(state_sum(D, limit))
