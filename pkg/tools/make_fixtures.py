"""Generate the built-in fixture corpus.

Regenerates every .mgd document under src/mgd/fixtures/ and verifies
the key properties of each fixture before writing.  The demonstration
pair was found by exhaustive search (tools/search_demo_pair.py); the
ribbon presentation of the spun trefoil is built here by doubling an
open trefoil arc into a two-lane finger fused to a round circle.
"""

from __future__ import annotations

import os
import sys

sys.path.insert(0, "src")

from mgd.algebra import Poly4
from mgd.diagram import (
    MarkedGraphDiagram,
    NonOrientable,
    graph_components,
    orient,
    resolve,
    validate,
)
from mgd.invariants import r_prime, s_prime, t_plus
from mgd.mgdio import MgdDocument, serialize
from mgd.moves import apply_move, enumerate_sites
from mgd.states import state_sum

OUT = os.path.join("src", "mgd", "fixtures")


# ---------------------------------------------------------------------------
# Spun trefoil: fuse a two-component unlink along a band following an
# open trefoil arc.  The band appears as two parallel lanes doubling the
# arc; each arc self-crossing becomes a 2x2 grid of crossings, the lane
# pair is capped by the fused circle at the base and enters the single
# marked vertex at the tip, where the second circle passes through.

def build_spun_trefoil() -> MarkedGraphDiagram:
    # open trefoil arc: passage list (crossing, corridor) from base to
    # tip; 'u' enters slot 3 and leaves slot 1, 'o' enters 0, leaves 2
    passages = [("A", "u"), ("C", "o"), ("B", "u"), ("A", "o"), ("C", "u"), ("B", "o")]

    labels = {}
    next_label = [0]

    def lab(key) -> int:
        if key not in labels:
            next_label[0] += 1
            labels[key] = next_label[0]
        return labels[key]

    # connector edges between consecutive passages, two lanes each;
    # f0 is the base cap (one edge joining both lanes), f6 enters the tip
    def lane(seg: int, side: str):
        if seg == 0:
            return lab(("base",))  # both lanes of segment 0 share the cap
        return lab(("f", seg, side))

    # per original crossing: the four grid-internal edges
    def internal(x: str, name: str):
        return lab(("i", x, name))

    # corridor stubs: for crossing x, corridor 'u' has south in-stubs and
    # north out-stubs; corridor 'o' has east in-stubs and west out-stubs.
    stub = {}
    for k, (x, corridor) in enumerate(passages):
        stub[(x, corridor, "in", "L")] = lane(k, "L")
        stub[(x, corridor, "in", "R")] = lane(k, "R")
        stub[(x, corridor, "out", "L")] = lane(k + 1, "L")
        stub[(x, corridor, "out", "R")] = lane(k + 1, "R")

    crossings = []
    for x in ("A", "B", "C"):
        iol = internal(x, "oL")
        ior = internal(x, "oR")
        iul = internal(x, "uL")
        iur = internal(x, "uR")
        o_in_l = stub[(x, "o", "in", "L")]
        o_in_r = stub[(x, "o", "in", "R")]
        o_out_l = stub[(x, "o", "out", "L")]
        o_out_r = stub[(x, "o", "out", "R")]
        u_in_l = stub[(x, "u", "in", "L")]
        u_in_r = stub[(x, "u", "in", "R")]
        u_out_l = stub[(x, "u", "out", "L")]
        u_out_r = stub[(x, "u", "out", "R")]
        # grid crossings (o_in, u_out, o_out, u_in) ccw, over lane on 0,2
        crossings.append((o_in_l, iur, iol, u_in_r))   # G1 = oL x uR
        crossings.append((iol, iul, o_out_l, u_in_l))  # G2 = oL x uL
        crossings.append((o_in_r, u_out_r, ior, iur))  # G3 = oR x uR
        crossings.append((ior, u_out_l, o_out_r, iul))  # G4 = oR x uL

    tip_l = lane(len(passages), "L")
    tip_r = lane(len(passages), "R")
    u1 = lab(("u1",))
    vertex = (u1, tip_l, tip_r, u1)
    return MarkedGraphDiagram.build(crossings, [vertex])


def simplify_trivial(D: MarkedGraphDiagram, max_steps: int = 400) -> MarkedGraphDiagram:
    cur = D
    for _ in range(max_steps):
        sites = [s for s in enumerate_sites(cur, "O1") if s.direction == "rev"]
        sites += [s for s in enumerate_sites(cur, "O2") if s.direction == "rev"]
        if not sites:
            return cur
        cur = apply_move(cur, sites[0]).diagram
    return cur


def check(cond: bool, what: str):
    if not cond:
        raise SystemExit(f"fixture verification failed: {what}")


def main():
    os.makedirs(OUT, exist_ok=True)
    fixtures: dict[str, tuple[MarkedGraphDiagram, set[str], str]] = {}

    def add(name, D, flags, comment):
        check(not validate(D), f"{name} invalid: {validate(D)}")
        flags = set(flags)
        computed = "nonorientable" if isinstance(orient(D), NonOrientable) else "orientable"
        stated = flags & {"orientable", "nonorientable"}
        check(not stated or stated == {computed}, f"{name} orientability flag wrong")
        flags.add(computed)
        fixtures[name] = (D, flags, comment)

    B = MarkedGraphDiagram.build

    add("circle", B(free_loops=1), {"admissible", "orientable"},
        "one crossing-free circle; presents the unknotted sphere")
    add("kink_pos", B(crossings=[(1, 1, 2, 2)]), {"orientable"},
        "circle with one positive kink; self-writhe +1, state sum 2x + 2w")
    add("kink_neg", B(crossings=[(1, 2, 2, 1)]), {"orientable"},
        "circle with one negative kink; self-writhe -1, state sum 2x + 2z")
    add("infinity_sphere", B(vertices=[(1, 2, 2, 1)]), {"admissible", "orientable"},
        "figure-eight curve with one marked vertex; presents a sphere")
    add("twist_sphere", B(vertices=[(1, 1, 2, 2)]), {"admissible", "orientable"},
        "marked vertex with both lobes on marker pairs; presents a sphere")
    add("torus_standard", B(vertices=[(1, 2, 3, 4), (3, 2, 1, 4)]),
        {"admissible", "orientable"},
        "two marked vertices, no crossings, both resolutions one circle; "
        "presents the unknotted torus")
    add("hopf", B(crossings=[(1, 3, 2, 4), (3, 1, 4, 2)]), {"orientable"},
        "standard two-crossing diagram of the Hopf link (not admissible)")
    add("trefoil", B(crossings=[(4, 2, 5, 1), (6, 4, 1, 3), (2, 6, 3, 5)]),
        {"orientable"},
        "standard positive trefoil diagram, writhe +3 (not admissible)")

    spun = build_spun_trefoil()
    add("spun_trefoil", spun, {"admissible", "orientable"},
        "ribbon presentation of the spun trefoil: 2-unlink fused along a "
        "band following an open trefoil arc (doubled into 12 crossings)")
    add("spun_trefoil_plus_sphere",
        MarkedGraphDiagram(spun.crossings, spun.vertices, spun.free_loops + 1),
        {"admissible", "orientable"},
        "split union of the spun trefoil presentation and a circle")

    # demonstration pair for marker-slide sensitivity (found by search:
    # tools/search_demo_pair.py); slide_pair_b = over-slide image of _a
    pair_a = B(crossings=[(1, 2, 3, 4), (1, 5, 6, 7)],
               vertices=[(2, 7, 8, 3), (4, 8, 6, 5)])
    add("slide_pair_a", pair_a, {"admissible", "nonorientable"},
        "two-crossing two-vertex non-orientable diagram; state sum 2x^2")
    sites = [s for s in enumerate_sites(pair_a, "O4")]
    check(len(sites) >= 1, "slide_pair_a has an over-slide site")
    pair_b = apply_move(pair_a, sites[0]).diagram
    check(state_sum(pair_b) == Poly4({(2, 0, 0, 0): 2, (1, 0, 1, 0): 2}),
          "slide_pair_b state sum is 2x^2 + 2xz")
    add("slide_pair_b", pair_b, {"admissible", "nonorientable"},
        "over-slide image of slide_pair_a; state sum 2x^2 + 2xz")
    add("slide_pair_a_switched", pair_a.switched(), {"admissible", "nonorientable"},
        "slide_pair_a with all crossings switched")
    add("slide_pair_b_switched", pair_b.switched(), {"admissible", "nonorientable"},
        "slide_pair_b with all crossings switched; under-slide image of "
        "slide_pair_a_switched")

    # small closed tableaux used by the move fuzzer
    add("bigon_slide", B(crossings=[(1, 2, 3, 4)], vertices=[(2, 1, 4, 3)]), set(),
        "marked vertex and crossing joined by a bigon (vertex slide site)")
    add("marker_exchange", B(vertices=[(1, 2, 3, 1), (4, 3, 2, 4)]), set(),
        "two marked vertices joined by marker-mixed edges (exchange site)")
    add("block_shuffle", B(
        crossings=[(15, 2, 14, 3), (10, 3, 11, 4), (14, 6, 1, 7), (11, 7, 8, 8)],
        vertices=[(2, 5, 1, 6), (4, 5, 15, 10)]), set(),
        "closure of the two-vertex four-crossing block (shuffle site)")
    add("strand_slide", B(crossings=[(5, 3, 6, 7), (6, 4, 5, 7)],
                          vertices=[(1, 1, 3, 4)]), set(),
        "strand passing over both lower legs of a marked vertex")

    # ---- verification -----------------------------------------------------
    spun_checks = fixtures["spun_trefoil"][0]
    check(not isinstance(orient(spun_checks), NonOrientable), "spun trefoil orientable")
    check(graph_components(spun_checks) == 1, "spun trefoil connected surface")
    rp = resolve(spun_checks, "+")
    rm = resolve(spun_checks, "-")
    sp = simplify_trivial(rp)
    sm = simplify_trivial(rm)
    check(not sp.crossings and graph_components(sp) == 1,
          f"positive resolution is one unknot (got {sp})")
    check(not sm.crossings and graph_components(sm) == 2,
          f"negative resolution is a two-unlink (got {sm})")
    check(r_prime(spun_checks) == 2, "spun trefoil R' = 2")
    check(s_prime(spun_checks) == 2, "spun trefoil S' = 2")

    for name in ("slide_pair_a", "slide_pair_b",
                 "slide_pair_a_switched", "slide_pair_b_switched"):
        D = fixtures[name][0]
        check(isinstance(orient(D), NonOrientable), f"{name} non-orientable")
        check(t_plus(D) == 0, f"{name} t_plus = 0")
        for sign in "+-":
            simp = simplify_trivial(resolve(D, sign))
            check(not simp.crossings and not simp.vertices,
                  f"{name} {sign} resolution trivial")

    for name, (D, flags, comment) in fixtures.items():
        doc = MgdDocument(D, name, frozenset(flags))
        text = serialize(doc)
        text = f"# {comment}\n" + text
        path = os.path.join(OUT, f"{name}.mgd")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
