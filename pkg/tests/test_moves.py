"""Move rewriting: site enumeration, round trips, rewrite relations,
and the seeded random walk."""

import pytest

from _movepairs import move_pairs
from mgd.algebra import (
    Poly4,
    poly4_eval_int,
    poly4_eval_laurent,
    poly4_eval_sqrtgauss,
)
from mgd.diagram import MarkedGraphDiagram, is_isomorphic, validate
from mgd.fixtures import all_fixtures, fixture
from mgd.invariants import t_plus
from mgd.moves import (
    MOVE_IDS,
    MoveSite,
    PatternMismatch,
    StuckError,
    apply_move,
    enumerate_sites,
    random_walk,
)
from mgd.states import state_sum

B = MarkedGraphDiagram.build
X, Z, W = Poly4.variable("x"), Poly4.variable("z"), Poly4.variable("w")


def test_site_counts_on_small_fixtures():
    circle = B(free_loops=1)
    assert len(enumerate_sites(circle, "O1")) == 2  # one per chirality
    kink = B(crossings=[(1, 1, 2, 2)])
    rev = [s for s in enumerate_sites(kink, "O1") if s.direction == "rev"]
    assert len(rev) == 1
    assert enumerate_sites(circle, "O2") == []
    assert len(enumerate_sites(fixture("slide_pair_a").diagram, "O4")) >= 1


def test_site_text_round_trip():
    for mv in MOVE_IDS:
        for name, doc in all_fixtures():
            for site in enumerate_sites(doc.diagram, mv)[:5]:
                assert MoveSite.parse(site.render()) == site


def test_apply_rejects_mismatched_sites():
    circle = B(free_loops=1)
    with pytest.raises(PatternMismatch):
        apply_move(circle, MoveSite("O1", "rev", (("c", 0),)))
    kink = B(crossings=[(1, 1, 2, 2)])
    with pytest.raises(PatternMismatch):
        apply_move(kink, MoveSite("O2", "rev", (("d", 0),)))


def test_round_trips_on_corpus():
    skipped = 0
    for name, doc in all_fixtures():
        D = doc.diagram
        if D.n_nodes > 6:
            continue
        for mv in MOVE_IDS:
            for site in enumerate_sites(D, mv):
                result = apply_move(D, site)
                assert validate(result.diagram) == [], (name, site.render())
                if result.inverse.anchor and result.inverse.anchor[0] == ("a", -1):
                    skipped += 1  # strand poked across itself: no inverse site
                    continue
                back = apply_move(result.diagram, result.inverse)
                assert is_isomorphic(back.diagram, D), (name, site.render())
    assert skipped == 0  # the corpus contains no degenerate unpokes


def test_round_trips_on_spun_trefoil_sample():
    D = fixture("spun_trefoil").diagram
    for mv in ("O1", "O2", "O6", "O6p"):
        for site in enumerate_sites(D, mv)[:6]:
            result = apply_move(D, site)
            back = apply_move(result.diagram, result.inverse)
            assert is_isomorphic(back.diagram, D), (mv, site.render())


def test_kink_insertion_multiplies_state_sum():
    for D, image, site in move_pairs("O1", 30):
        if site.direction != "fwd":
            continue
        chir = dict(site.anchor)["chir"]
        factor = X + (W if chir == "+" else Z)
        assert state_sum(image) == factor * state_sum(D), site.render()


def test_t_plus_bookkeeping():
    # kinks shift the normalization exponent by their sign; every other
    # move leaves it unchanged
    for D, image, site in move_pairs("O1", 20):
        delta = t_plus(image) - t_plus(D)
        chir = dict(site.anchor).get("chir")
        if site.direction == "fwd":
            assert delta == (1 if chir == "+" else -1), site.render()
        else:
            assert delta in (-1, 1), site.render()
    for mv in ("O2", "O3", "O4", "O4p", "O5", "O6", "O6p", "O7", "O8"):
        for D, image, site in move_pairs(mv, 8):
            assert t_plus(image) == t_plus(D), (mv, site.render())


def _difference_in_slide_ideal(p: Poly4) -> bool:
    # membership in (x, y) intersect (z, w): every monomial must contain
    # one of x, y and one of z, w
    return all((a or b) and (c or d) for (a, b, c, d) in p.terms())


MIN_PAIRS = 20


def test_vertex_moves_preserve_state_sum_exactly():
    for mv in ("O5", "O6", "O6p", "O7"):
        pairs = move_pairs(mv, MIN_PAIRS)
        assert len(pairs) >= MIN_PAIRS, mv
        for D, image, site in pairs:
            assert state_sum(image) == state_sum(D), (mv, site.render())


def test_classical_moves_preserve_evaluation_points():
    for mv in ("O2", "O3"):
        pairs = move_pairs(mv, MIN_PAIRS)
        assert len(pairs) >= MIN_PAIRS, mv
        for D, image, site in pairs:
            p, q = state_sum(D), state_sum(image)
            assert poly4_eval_laurent(p) == poly4_eval_laurent(q), (mv, site.render())
            assert poly4_eval_int(p) == poly4_eval_int(q), (mv, site.render())
            assert poly4_eval_sqrtgauss(p) == poly4_eval_sqrtgauss(q), (mv, site.render())


def test_strand_slides_change_sum_only_inside_ideal():
    saw_change = False
    for mv in ("O4", "O4p"):
        pairs = move_pairs(mv, MIN_PAIRS)
        assert len(pairs) >= MIN_PAIRS, mv
        for D, image, site in pairs:
            diff = state_sum(image) - state_sum(D)
            saw_change |= not diff.is_zero()
            assert _difference_in_slide_ideal(diff), (mv, site.render())
    assert saw_change  # the slides genuinely move the sum inside the ideal


def test_block_shuffle_preserves_evaluation_points():
    pairs = move_pairs("O8", MIN_PAIRS)
    assert len(pairs) >= MIN_PAIRS
    for D, image, site in pairs:
        p, q = state_sum(D), state_sum(image)
        assert poly4_eval_laurent(p) == poly4_eval_laurent(q), site.render()
        assert poly4_eval_int(p) == poly4_eval_int(q), site.render()
        assert poly4_eval_sqrtgauss(p) == poly4_eval_sqrtgauss(q), site.render()


def test_kink_insertion_on_circle_gives_kink_diagram():
    circle = B(free_loops=1)
    site = next(
        s for s in enumerate_sites(circle, "O1") if dict(s.anchor)["chir"] == "+"
    )
    out = apply_move(circle, site).diagram
    assert is_isomorphic(out, B(crossings=[(1, 1, 2, 2)]))


def test_slide_on_demo_diagram_reaches_partner():
    a = fixture("slide_pair_a").diagram
    b = fixture("slide_pair_b").diagram
    site = enumerate_sites(a, "O4")[0]
    assert is_isomorphic(apply_move(a, site).diagram, b)


def test_walks_match_spec_examples():
    from mgd.algebra import SqrtGauss
    from mgd.invariants import q_invariant, r_prime, s_prime

    circle = fixture("circle").diagram
    for D in random_walk(circle, seed=1, n=5, allowed=("O1", "O2")):
        assert r_prime(D) == 2
    infty = fixture("infinity_sphere").diagram
    for D in random_walk(infty, seed=7, n=10, allowed=("O1", "O2", "O6", "O6p")):
        assert s_prime(D) == 2
    a = fixture("slide_pair_a").diagram
    allowed = tuple(m for m in MOVE_IDS if m not in ("O4", "O4p"))
    for D in random_walk(a, seed=3, n=8, allowed=allowed):
        assert q_invariant(D) == SqrtGauss(1)


def test_random_walk_reproducible():
    D = fixture("infinity_sphere").diagram
    w1 = random_walk(D, seed=7, n=6)
    w2 = random_walk(D, seed=7, n=6)
    assert w1 == w2
    w3 = random_walk(D, seed=8, n=6)
    assert w1 != w3  # overwhelmingly likely with these site counts


def test_random_walk_respects_validity_and_cap():
    D = fixture("circle").diagram
    for seed in range(5):
        walk = random_walk(D, seed, 12, max_nodes=7)
        for step in walk:
            assert validate(step) == []
            assert step.n_nodes <= 9  # cap plus one largest insertion


def test_random_walk_stuck_on_empty_diagram():
    with pytest.raises(StuckError):
        random_walk(B(), seed=0, n=1)
