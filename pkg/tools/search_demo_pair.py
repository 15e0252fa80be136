"""Search for the marker-slide demonstration pair.

Enumerates all 2-crossing, 2-vertex diagrams (as pairings of the 16
attachment slots) and filters for the diagram D with:

* valid, planar, connected;
* state sum exactly 2x^2;
* non-orientable, one surface component, t_plus == 0;
* both resolutions certified trivial by greedy kink/poke removal;
* a strand-slide site whose image D' has state sum 2x^2 + 2xz.

The survivors (up to isomorphism) are printed with their slide images;
the chosen representative is frozen into the fixture corpus.
"""

from __future__ import annotations

import sys
from itertools import combinations

sys.path.insert(0, "src")

from mgd.algebra import Poly4, poly4_eval_sqrtgauss, sqrtgauss_scale
from mgd.diagram import (
    MarkedGraphDiagram,
    NonOrientable,
    canonical_form,
    graph_components,
    orient,
    resolve,
    validate,
)
from mgd.invariants import t_plus
from mgd.moves import apply_move, enumerate_sites
from mgd.states import state_sum

TARGET_D = Poly4({(2, 0, 0, 0): 2})
TARGET_DP_Z = Poly4({(2, 0, 0, 0): 2, (1, 0, 1, 0): 2})
TARGET_DP_W = Poly4({(2, 0, 0, 0): 2, (1, 0, 0, 1): 2})


def pairings(slots):
    if not slots:
        yield []
        return
    first = slots[0]
    for i in range(1, len(slots)):
        rest = slots[1:i] + slots[i + 1 :]
        for rem in pairings(rest):
            yield [(first, slots[i])] + rem


def simplify_trivial(D: MarkedGraphDiagram, max_steps: int = 60) -> MarkedGraphDiagram:
    """Greedy kink and bigon removal; used to certify resolutions."""
    cur = D
    for _ in range(max_steps):
        sites = [s for s in enumerate_sites(cur, "O1") if s.direction == "rev"]
        sites += [s for s in enumerate_sites(cur, "O2") if s.direction == "rev"]
        if not sites:
            return cur
        cur = apply_move(cur, sites[0]).diagram
    return cur


def is_trivial_unknot_diagram(D: MarkedGraphDiagram) -> bool:
    simp = simplify_trivial(D)
    return not simp.crossings and not simp.vertices


def main():
    slots = list(range(16))
    seen = {}
    count = 0
    for pairing in pairings(slots):
        count += 1
        if count % 200000 == 0:
            print(f"... {count} pairings", file=sys.stderr)
        ends = [0] * 16
        for label, (a, b) in enumerate(pairing, start=1):
            ends[a] = label
            ends[b] = label
        D = MarkedGraphDiagram.build(
            crossings=[ends[0:4], ends[4:8]], vertices=[ends[8:12], ends[12:16]]
        )
        if validate(D):
            continue
        if state_sum(D) != TARGET_D:
            continue
        if graph_components(D) != 1:
            continue
        if not isinstance(orient(D), NonOrientable):
            continue
        if t_plus(D) != 0:
            continue
        rp = resolve(D, "+")
        rm = resolve(D, "-")
        if not (is_trivial_unknot_diagram(rp) and is_trivial_unknot_diagram(rm)):
            continue
        key = canonical_form(D)
        if key in seen:
            continue
        images = []
        for mv in ("O4", "O4p"):
            for site in enumerate_sites(D, mv):
                Dp = apply_move(D, site).diagram
                p = state_sum(Dp)
                tag = "xz" if p == TARGET_DP_Z else ("xw" if p == TARGET_DP_W else None)
                if tag:
                    q = sqrtgauss_scale(poly4_eval_sqrtgauss(p), t_plus(Dp))
                    images.append((mv, site.render(), tag, p.render(), q.render(), Dp))
        if images:
            seen[key] = (D, images)
            print("=" * 70)
            print("D:", D)
            print(
                "  resolutions: +",
                (rp.crossings, rp.free_loops),
                " -",
                (rm.crossings, rm.free_loops),
            )
            for mv, site, tag, p, q, Dp in images:
                print(f"  {mv} {site}: [D'] has {tag}: {p}, Q' = {q}")
                print("   D':", Dp)
    print(f"total pairings {count}, solutions {len(seen)}")


if __name__ == "__main__":
    main()
