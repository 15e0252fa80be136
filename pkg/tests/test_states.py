"""State enumeration, weights, and the state sum against brute force."""

import pytest

from _brute import (
    brute_bad_states,
    brute_good_states,
    brute_legal_states,
    brute_state_sum,
)
from mgd.algebra import Poly4
from mgd.diagram import (
    MarkedGraphDiagram,
    NonOrientable,
    dhat_components,
    graph_components,
    orient,
)
from mgd.fixtures import all_fixtures
from mgd.states import (
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

B = MarkedGraphDiagram.build
X, Y, Z, W = (Poly4.variable(v) for v in "xyzw")

KINK_POS = B(crossings=[(1, 1, 2, 2)])
KINK_NEG = B(crossings=[(1, 2, 2, 1)])
HOPF = B(crossings=[(1, 3, 2, 4), (3, 1, 4, 2)])
TREFOIL = B(crossings=[(4, 2, 5, 1), (6, 4, 1, 3), (2, 6, 3, 5)])


def small_fixtures(max_components=20):
    for name, doc in all_fixtures():
        if dhat_components(doc.diagram).count <= max_components:
            yield name, doc.diagram


def test_legality():
    assert is_legal(B(free_loops=1), (0,))
    assert is_legal(KINK_POS, (0, 1))
    assert not is_legal(HOPF, (1, 0, 0, 0))
    assert is_legal(HOPF, (1, 1, 0, 0))


def test_weight_calibration():
    # the positive kink carries the x + w factor: split state gives w
    assert weight(KINK_POS, 0, (0, 0)) == "x"
    assert weight(KINK_POS, 0, (0, 1)) == "w"
    assert weight(KINK_NEG, 0, (0, 1)) == "z"
    assert state_sum(KINK_POS) == 2 * X + 2 * W
    assert state_sum(KINK_NEG) == 2 * X + 2 * Z


def test_weight_rejects_illegal_state():
    with pytest.raises(IllegalStateError):
        weight(HOPF, 0, (1, 0, 0, 0))
    with pytest.raises(IllegalStateError):
        state_weight(HOPF, (1, 0, 0, 0))


def test_state_weight_monomials():
    assert state_weight(B(free_loops=1), (0,)) == Poly4.one()
    assert state_weight(KINK_POS, (0, 1)) == W


def test_state_sum_trivial_cases():
    assert state_sum(B()) == Poly4.one()  # empty diagram: one empty state
    assert state_sum(B(free_loops=1)) == Poly4({(0, 0, 0, 0): 2})
    assert state_sum(B(vertices=[(1, 2, 2, 1)])) == Poly4({(0, 0, 0, 0): 2})


def test_state_sum_frozen_values():
    assert state_sum(HOPF) == 2 * X * X + 2 * Y * Y + 2 * Z * Z + 2 * W * W
    assert (
        state_sum(TREFOIL)
        == 2 * X ** 3 + 6 * X * Z * Z + 6 * Y * Y * W + 2 * W ** 3
    )


def test_state_sum_matches_brute_force_on_corpus():
    for name, D in small_fixtures():
        assert state_sum(D) == brute_state_sum(D), name


def test_both_kernels_agree():
    from mgd import _statesum_py
    from mgd.states import HAVE_COMPILED_KERNEL, _legality_basis

    if not HAVE_COMPILED_KERNEL:
        pytest.skip("compiled kernel not built")
    from mgd import _statesum

    for name, D in small_fixtures():
        n, basis, ends = _legality_basis(D)
        assert _statesum.accumulate(ends, basis) == _statesum_py.accumulate(ends, basis), name


def test_legal_states_enumeration_order():
    states = legal_states(KINK_POS)
    assert states == [(0, 0), (1, 0), (0, 1), (1, 1)]
    for name, D in small_fixtures(14):
        assert legal_states(D) == sorted(
            brute_legal_states(D), key=lambda s: sum(b << i for i, b in enumerate(s))
        ), name


def test_classify():
    circle = B(free_loops=1)
    assert classify(circle, (0,)) == StateClass.GOOD_AND_BAD
    assert classify(KINK_POS, (0, 0)) == StateClass.GOOD
    assert classify(KINK_POS, (0, 1)) == StateClass.BAD
    mixed = next(
        s
        for s in legal_states(TREFOIL)
        if classify(TREFOIL, s) == StateClass.MIXED
    )
    assert is_legal(TREFOIL, mixed)


def test_good_states_counts_and_oracle():
    assert len(good_states(B(free_loops=1))) == 2
    assert len(good_states(HOPF)) == 4
    for name, D in small_fixtures():
        direct = good_states(D)
        assert len(direct) == 2 ** graph_components(D), name
        assert direct == brute_good_states(D), name


def test_bad_states_oracle_and_counts():
    for name, D in small_fixtures():
        direct = bad_states(D)
        brute = brute_bad_states(D)
        if not D.crossings:
            # crossing-free diagrams: every state is vacuously bad too;
            # the constructor agrees with the good enumerator there
            assert direct == good_states(D), name
            continue
        assert direct == brute, name
        if isinstance(orient(D), NonOrientable):
            assert direct == [], name
        else:
            assert len(direct) == 2 ** graph_components(D), name


def test_construct_bad_state_seeds():
    sigma = construct_bad_state(KINK_POS, [0])
    assert sigma == (0, 1)
    assert construct_bad_state(B(crossings=[(1, 2, 3, 4), (1, 5, 6, 7)],
                                 vertices=[(2, 7, 8, 3), (4, 8, 6, 5)]), [0]) is None


def test_s_prime_identity_via_substitution():
    # killing z, w keeps exactly the good states; killing x, y keeps bad
    for name, D in small_fixtures(16):
        p = state_sum(D).terms()
        goods = sum(c for (a, b, cc, d), c in p.items() if cc == 0 and d == 0)
        bads = sum(c for (a, b, cc, d), c in p.items() if a == 0 and b == 0)
        assert goods == len(good_states(D)), name
        if D.crossings:
            assert bads == len(bad_states(D)), name


def test_bad_state_weights_on_trivial_unknot_presentation():
    # a trivial-link diagram with zero self-writhe: every bad state's
    # weight evaluates to 1 at x=0, y=0, w=z^-1
    from mgd.algebra import poly4_eval_laurent
    from mgd.invariants import self_writhe

    from mgd.diagram import validate

    D = B(crossings=[(1, 1, 2, 3), (2, 4, 4, 3)])  # kink pair of opposite signs
    assert validate(D) == []
    assert self_writhe(D) == 0
    bads = bad_states(D)
    assert bads
    for sigma in bads:
        val = poly4_eval_laurent(state_weight(D, sigma))
        assert val == 1, sigma


def test_good_state_count_on_spun_presentation():
    from mgd.fixtures import fixture

    assert len(good_states(fixture("spun_trefoil").diagram)) == 2


def test_state_space_limit():
    with pytest.raises(StateSpaceLimitError):
        state_sum(B(free_loops=40), limit=2 ** 30)
    assert state_sum(B(free_loops=5), limit=2 ** 30) == Poly4({(0, 0, 0, 0): 32})


def test_env_override(monkeypatch):
    monkeypatch.setenv("MGD_STATE_LIMIT", "4")
    with pytest.raises(StateSpaceLimitError):
        state_sum(B(free_loops=3))
    monkeypatch.setenv("MGD_STATE_LIMIT", "1024")
    assert state_sum(B(free_loops=3)) == Poly4({(0, 0, 0, 0): 8})
