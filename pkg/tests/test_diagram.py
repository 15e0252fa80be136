"""Diagram structure: validation, faces, components, orientation,
resolutions, companion loops, canonical forms."""

import pytest

from mgd.diagram import (
    CompanionLoopFailure,
    MarkedGraphDiagram,
    NonOrientable,
    canonical_form,
    companion_loop,
    dart,
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
from mgd.fixtures import all_fixtures, fixture

B = MarkedGraphDiagram.build

CIRCLE = B(free_loops=1)
KINK_POS = B(crossings=[(1, 1, 2, 2)])
KINK_NEG = B(crossings=[(1, 2, 2, 1)])
INFTY = B(vertices=[(1, 2, 2, 1)])
HOPF = B(crossings=[(1, 3, 2, 4), (3, 1, 4, 2)])
TREFOIL = B(crossings=[(4, 2, 5, 1), (6, 4, 1, 3), (2, 6, 3, 5)])


def test_validate_accepts_fixture_corpus():
    for name, doc in all_fixtures():
        assert validate(doc.diagram) == [], name


def test_validate_empty_diagram():
    assert validate(B()) == []


def test_validate_reports_arity():
    bad = B(crossings=[(1, 2, 1, 3)])
    problems = validate(bad)
    assert any(p.startswith("edge-2") for p in problems)
    assert any(p.startswith("edge-3") for p in problems)


def test_validate_rejects_nonplanar_rotation():
    # both lobes of a single vertex attached to opposite slots cannot
    # be drawn in the plane: the Euler check must fail
    assert validate(B(vertices=[(1, 2, 1, 2)])) == ["non-planar-component-0"]
    # virtual-style classical diagram: interleaved ends fail only Euler
    assert validate(B(crossings=[(1, 1, 2, 3), (2, 4, 3, 4)])) == [
        "non-planar-component-0"
    ]


def test_face_counts():
    assert len(faces(CIRCLE)) == 2
    assert len(faces(KINK_POS)) == 3
    assert len(faces(HOPF)) == 4
    assert len(faces(TREFOIL)) == 5


def test_dhat_components():
    assert dhat_components(CIRCLE).count == 1
    kink = dhat_components(KINK_POS)
    assert kink.count == 2
    assert kink.of_edge(1) == 0 and kink.of_edge(2) == 1  # min-label order
    assert dhat_components(INFTY).count == 1
    assert dhat_components(HOPF).count == 4


def test_graph_components():
    assert graph_components(CIRCLE) == 1
    assert graph_components(B(free_loops=2)) == 2
    assert graph_components(HOPF) == 2
    assert graph_components(TREFOIL) == 1
    assert graph_components(INFTY) == 1


def test_graph_partition_matches_bad_state_clusters():
    gp = graph_partition(HOPF)
    assert gp.of_edge(1) == gp.of_edge(2)
    assert gp.of_edge(3) == gp.of_edge(4)
    assert gp.of_edge(1) != gp.of_edge(3)


def test_orientability():
    assert not isinstance(orient(CIRCLE), NonOrientable)
    assert not isinstance(orient(INFTY), NonOrientable)
    assert not isinstance(orient(TREFOIL), NonOrientable)
    assert isinstance(orient(fixture("slide_pair_a").diagram), NonOrientable)
    assert isinstance(orient(fixture("slide_pair_b").diagram), NonOrientable)


def test_orientation_constraints_hold():
    for D in (KINK_POS, HOPF, TREFOIL, INFTY, fixture("torus_standard").diagram):
        o = orient(D)
        assert not isinstance(o, NonOrientable)
        from mgd.diagram import map_view

        view = map_view(D)
        for d, other in view.theta.items():
            assert o.outward[d] != o.outward[other]
        for n in range(D.n_nodes):
            if D.is_crossing(n):
                assert o.outward[dart(n, 0)] != o.outward[dart(n, 2)]
                assert o.outward[dart(n, 1)] != o.outward[dart(n, 3)]
            else:
                assert o.outward[dart(n, 0)] == o.outward[dart(n, 2)]
                assert o.outward[dart(n, 1)] == o.outward[dart(n, 3)]
                assert o.outward[dart(n, 0)] != o.outward[dart(n, 1)]


def test_resolve_smoothings():
    one = resolve(INFTY, "+")
    assert one == B(free_loops=1)
    two = resolve(INFTY, "-")
    assert two == B(free_loops=2)
    twist = B(vertices=[(1, 1, 2, 2)])
    assert resolve(twist, "+").free_loops == 2
    assert resolve(twist, "-").free_loops == 1


def test_resolve_keeps_crossings():
    D = fixture("slide_pair_a").diagram
    for sign in "+-":
        out = resolve(D, sign)
        assert len(out.crossings) == 2 and not out.vertices
        assert validate(out) == []


def test_resolve_curl_leaves_disjoint_circle():
    # a marked curl on some strand smooths to the strand plus one circle
    from mgd.moves import apply_move, enumerate_sites

    hopf = fixture("hopf").diagram
    site = next(s for s in enumerate_sites(hopf, "O6") if s.direction == "fwd")
    curled = apply_move(hopf, site).diagram
    plus = resolve(curled, "+")
    assert plus.free_loops == 1
    assert is_isomorphic(
        MarkedGraphDiagram(plus.crossings, (), 0), hopf
    )


def test_trivial_companion_loop_on_circle():
    loops = list(enumerate_companion_loops(B(free_loops=1)))
    assert len(loops) == 1 and loops[0].crossing_count == 0


def test_resolve_never_merges_components():
    for name, doc in all_fixtures():
        D = doc.diagram
        for sign in "+-":
            assert graph_components(resolve(D, sign)) >= graph_components(D), name


def test_companion_loop_on_kink():
    # base on the through edge: the loop passes the crossing twice
    loop = companion_loop(KINK_POS, dart(0, 2), [])
    assert loop.crossing_count == 2


def test_companion_loop_edge_repeat_fails():
    with pytest.raises(CompanionLoopFailure):
        # wrong turn budget on the twist sphere forces a repeat or underflow
        companion_loop(B(vertices=[(1, 1, 2, 2)]), dart(0, 0), ["left", "left", "left"])


def test_companion_loops_even_on_oriented_fixtures():
    for name, doc in all_fixtures():
        if "orientable" not in doc.flags:
            continue
        loops = list(enumerate_companion_loops(doc.diagram, limit=5000))
        assert loops, name
        assert all(l.crossing_count % 2 == 0 for l in loops), name


def test_companion_loops_odd_on_nonorientable_fixtures():
    for name, doc in all_fixtures():
        if "nonorientable" not in doc.flags:
            continue
        loops = list(enumerate_companion_loops(doc.diagram, limit=5000))
        assert any(l.crossing_count % 2 == 1 for l in loops), name


def test_canonical_form_invariance():
    relabeled = B(crossings=[(9, 9, 5, 5)])
    assert is_isomorphic(KINK_POS, relabeled)
    assert not is_isomorphic(KINK_POS, KINK_NEG)
    rotated = B(crossings=[(2, 2, 1, 1)])
    assert is_isomorphic(KINK_POS, rotated)
    switched = B(crossings=[(1, 2, 2, 1)])
    assert canonical_form(switched) == canonical_form(KINK_NEG)


def test_canonical_form_detects_structure():
    assert not is_isomorphic(HOPF, B(crossings=[(1, 3, 2, 4), (3, 2, 4, 1)]))
    assert is_isomorphic(B(free_loops=2), B(free_loops=2))
    assert not is_isomorphic(B(free_loops=2), B(free_loops=1))
