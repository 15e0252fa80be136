"""Exact state-sum invariants of marked graph diagrams of surface-links.

A marked graph diagram is a link diagram with rigid 4-valent vertices
carrying markers; it presents a knotted surface in 4-space through its
two resolutions.  This package computes the four-variable state sum of
such diagrams together with the derived invariants R'(z), S' and Q,
implements the ten local moves with site-addressed rewriting, and ships
a text format, fixture corpus and command line tool.
"""

from .algebra import (
    LaurentInt,
    LaurentRat,
    Poly4,
    SqrtGauss,
    poly4_eval_classical,
    poly4_eval_int,
    poly4_eval_laurent,
    poly4_eval_sqrtgauss,
    sqrtgauss_scale,
)
from .diagram import (
    CompanionLoop,
    CompanionLoopFailure,
    Crossing,
    InvalidDiagramError,
    MarkedGraphDiagram,
    MarkedVertex,
    NonOrientable,
    Orientation,
    canonical_form,
    companion_loop,
    dhat_components,
    enumerate_companion_loops,
    faces,
    graph_components,
    graph_partition,
    is_isomorphic,
    orient,
    resolve,
    validate,
)
from .invariants import (
    WritheReport,
    classical_r,
    classical_s,
    q_invariant,
    r_prime,
    s_prime,
    self_writhe,
    sign,
    t_plus,
    writhe_report,
)
from .mgdio import MgdDocument, MgdSyntaxError, parse, report, serialize
from .moves import (
    MOVE_IDS,
    ApplyResult,
    MoveSite,
    NonPlanarResult,
    PatternMismatch,
    StuckError,
    apply_move,
    enumerate_sites,
    random_walk,
)
from .states import (
    IllegalStateError,
    StateClass,
    StateSpaceLimitError,
    bad_states,
    classify,
    construct_bad_state,
    good_states,
    is_legal,
    legal_states,
    state_sum,
    state_weight,
    weight,
)

__version__ = "0.1.0"
