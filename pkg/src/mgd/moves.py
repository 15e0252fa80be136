"""Site-addressed rewriting for the ten diagram moves.

Every move is a local pattern (matched through face walks of the
rotation system) plus a surgery.  Site objects name their anchors in
terms of the current diagram; applying a site returns the rewritten
diagram together with an inverse site addressed in the new diagram, so
apply(apply(D, s).diagram, inverse) is the identity up to relabelling.

Move ids: O1, O2, O3 (classical Reidemeister moves), O4 and O4p (a
strand slides across a marked vertex, passing over respectively under
both legs), O5 (a marked vertex slides past a crossing along a bigon),
O6 and O6p (marked curl with the lobe on a marker pair respectively a
marker-split pair), O7 (two adjacent marked vertices trade marker
alignment), O8 (a two-vertex, four-crossing block reshuffles).

Naming of the strand-slide pair: sliding with the strand over both legs
is O4.  This is pinned by the demonstration pair fixtures, whose state
sums must differ by +2xz across an O4 slide.

Pattern scope follows the drawn tableaux: O3 matches only coherent
triangles whose face walk shows one even departure slot; O4/O4p only
marker-parallel slides; O5 both chiralities; O8 the exact six-node
block in both mirror forms.  Variants outside these patterns are
compositions of the implemented moves and are not matched.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from .diagram import (
    MarkedGraphDiagram,
    dart,
    dart_node,
    dart_slot,
    map_view,
    require_valid,
    validate,
)
from .surgery import Surgery

MOVE_IDS = ("O1", "O2", "O3", "O4", "O4p", "O5", "O6", "O6p", "O7", "O8")


class PatternMismatch(ValueError):
    """The site does not match its move's local pattern."""


class NonPlanarResult(AssertionError):
    """A rewrite produced an invalid diagram (should be impossible)."""


class StuckError(RuntimeError):
    """A random walk found no applicable site."""


@dataclass(frozen=True)
class MoveSite:
    move: str
    direction: str  # "fwd" | "rev"
    anchor: tuple
    mirror: bool = False

    def render(self) -> str:
        parts = [self.move, self.direction]
        parts.extend(f"{k}={v}" for k, v in self.anchor)
        if self.mirror:
            parts.append("mirror=1")
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> MoveSite:
        tokens = text.split()
        if len(tokens) < 2 or tokens[0] not in MOVE_IDS or tokens[1] not in ("fwd", "rev"):
            raise ValueError(f"unparseable move site {text!r}")
        anchor = []
        mirror = False
        for tok in tokens[2:]:
            if "=" not in tok:
                raise ValueError(f"bad anchor token {tok!r}")
            k, v = tok.split("=", 1)
            if k == "mirror":
                mirror = v == "1"
            else:
                anchor.append((k, int(v) if v.lstrip("+-").isdigit() else v))
        return cls(tokens[0], tokens[1], tuple(anchor), mirror)


@dataclass(frozen=True)
class ApplyResult:
    diagram: MarkedGraphDiagram
    inverse: MoveSite


def _anchor(**kw) -> tuple:
    return tuple(kw.items())


def _get(site: MoveSite, key: str, default=None):
    for k, v in site.anchor:
        if k == key:
            return v
    return default


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise PatternMismatch(msg)


def _finish(s: Surgery, inverse: MoveSite) -> ApplyResult:
    result = s.finish()
    problems = validate(result.diagram)
    if problems:
        raise NonPlanarResult(f"rewrite produced invalid diagram: {problems}")
    return ApplyResult(result.diagram, inverse)


def _face_from(view, d0: int) -> tuple[int, ...]:
    walk = [d0]
    d = view.phi(d0)
    while d != d0:
        walk.append(d)
        d = view.phi(d)
    return tuple(walk)


# ---------------------------------------------------------------------------
# O1: kink insertion / removal.

def _sites_o1(D: MarkedGraphDiagram) -> list[MoveSite]:
    out = []
    for e in sorted(map_view(D).edge_darts) if D.n_nodes else []:
        for chir in "+-":
            out.append(MoveSite("O1", "fwd", _anchor(edge=e, chir=chir)))
    if D.free_loops:
        for chir in "+-":
            out.append(MoveSite("O1", "fwd", _anchor(loop=0, chir=chir)))
    for i in range(len(D.crossings)):
        if _kink_pair(D, i) is not None:
            out.append(MoveSite("O1", "rev", _anchor(c=i)))
    return out


def _kink_pair(D: MarkedGraphDiagram, i: int) -> int | None:
    """Smallest slot j such that ends[j] == ends[j+1] is a loop edge."""
    ends = D.crossings[i].ends
    for j in range(4):
        if ends[j] == ends[(j + 1) % 4]:
            return j
    return None


def _cut_for_insert(s: Surgery, site: MoveSite) -> tuple:
    """Cut the anchored edge or free loop; honors the optional ``side``
    anchor (side=1 swaps which piece lands on which new slot)."""
    if _get(site, "edge") is not None:
        e = _get(site, "edge")
        _check(e in s.view.edge_darts, f"no edge {e}")
        d1 = s.view.edge_darts[e][0]
        p0, p1 = s.cut(e, dart_node(d1), dart_slot(d1))
    else:
        p0, p1 = s.cut_loop()
    if _get(site, "side", 0) == 1:
        p0, p1 = p1, p0
    return p0, p1


def _insert_inverse_anchor(D, res, node, j, view):
    """Anchor data (edge/loop plus side) for re-inserting a removed
    kink or curl whose through-strand sat at slots j+2, j+3.

    The reinsertion surgery attaches the piece at the merged edge's
    first incidence to a fixed new slot, so the side bit records which
    of the two old through-pieces must land there: the slot-(j+2) piece
    when j is even, the slot-(j+3) piece when j is odd.
    """
    far0 = view.theta[dart(node, (j + 2) % 4)]
    far1 = view.theta[dart(node, (j + 3) % 4)]
    if dart_node(far0) == node and dart_node(far1) == node:
        return {"loop": 0}
    target = far0 if j % 2 == 0 else far1
    label = res.port_label[("keep", dart_node(far0), dart_slot(far0))]
    target_dart = dart(res.node_index[dart_node(target)], dart_slot(target))
    new_darts = map_view(res.diagram).edge_darts[label]
    side = 0 if min(new_darts) == target_dart else 1
    return {"edge": label, "side": side}


def _apply_o1(D: MarkedGraphDiagram, site: MoveSite) -> ApplyResult:
    s = Surgery(D)
    if site.direction == "fwd":
        chir = _get(site, "chir")
        _check(chir in "+-", "kink chirality must be + or -")
        p0, p1 = _cut_for_insert(s, site)
        K = s.new_crossing()
        if chir == "+":
            s.wire(s.new_port(K, 0), s.new_port(K, 1))
            s.wire(s.new_port(K, 2), p0)
            s.wire(s.new_port(K, 3), p1)
        else:
            s.wire(s.new_port(K, 1), s.new_port(K, 2))
            s.wire(s.new_port(K, 0), p0)
            s.wire(s.new_port(K, 3), p1)
        res = s.finish()
        inv = MoveSite("O1", "rev", _anchor(c=res.node_index[K]))
        return _finish_from(res, inv)

    i = _get(site, "c")
    _check(isinstance(i, int) and 0 <= i < len(D.crossings), "no such crossing")
    j = _kink_pair(D, i)
    _check(j is not None, "crossing carries no kink loop")
    ends = D.crossings[i].ends
    loop = ends[j]
    view = map_view(D)
    d_loop = view.edge_darts[loop]
    _check(set(d_loop) == {dart(i, j), dart(i, j + 1)}, "loop edge leaves the crossing")
    chir = "+" if j % 2 == 0 else "-"
    s.delete_node(i)
    s.remove_edge(loop)
    s.wire_dangling(i, j + 2, i, j + 3)
    res = s.finish()
    inv = MoveSite("O1", "fwd", _anchor(chir=chir, **_insert_inverse_anchor(D, res, i, j, view)))
    return _finish_from(res, inv)


def _finish_from(res, inverse: MoveSite) -> ApplyResult:
    problems = validate(res.diagram)
    if problems:
        raise NonPlanarResult(f"rewrite produced invalid diagram: {problems}")
    return ApplyResult(res.diagram, inverse)


# ---------------------------------------------------------------------------
# O2: poke / unpoke.

def _sites_o2(D: MarkedGraphDiagram) -> list[MoveSite]:
    view = map_view(D)
    out = []
    for walk in view.faces:
        for a in walk:
            for b in walk:
                if a == b or view.edge_at(a) == view.edge_at(b):
                    continue
                for over in ("a", "b"):
                    out.append(MoveSite("O2", "fwd", _anchor(a=a, b=b, over=over)))
    for walk in view.faces:
        if len(walk) != 2:
            continue
        d1, d2 = sorted(walk)
        P, i = dart_node(d1), dart_slot(d1)
        Q, j = dart_node(d2), dart_slot(d2)
        if P == Q or not (D.is_crossing(P) and D.is_crossing(Q)):
            continue
        if i % 2 == (j - 1) % 2:
            out.append(MoveSite("O2", "rev", _anchor(d=d1)))
    return out


def _apply_o2(D: MarkedGraphDiagram, site: MoveSite) -> ApplyResult:
    view = map_view(D)
    if site.direction == "fwd":
        a, b, over = _get(site, "a"), _get(site, "b"), _get(site, "over")
        _check(over in ("a", "b"), "over must name a or b")
        _check(("L", "L") != (a, b) or D.free_loops >= 2, "need two free loops")
        _check("L" not in (a, b) or D.free_loops >= 1, "no free loop available")
        s = Surgery(D)
        # either strand may be a free loop ("L"); loops are unplaced, so
        # no face-sharing condition applies to them
        if a == "L":
            a_pre, a_post = s.cut_loop()
        else:
            _check(a in view.theta, "dart a not in diagram")
        if b == "L":
            b_pre, b_post = s.cut_loop()
        else:
            _check(b in view.theta, "dart b not in diagram")
        if a != "L" and b != "L":
            _check(a != b and b in _face_from(view, a), "darts must share a face")
            _check(view.edge_at(a) != view.edge_at(b), "poke requires two distinct strands")
        if a != "L":
            a_pre, a_post = s.cut(view.edge_at(a), dart_node(a), dart_slot(a))
        if b != "L":
            b_pre, b_post = s.cut(view.edge_at(b), dart_node(b), dart_slot(b))
        P = s.new_crossing()
        Q = s.new_crossing()
        np = s.new_port
        if over == "a":
            # P = (a_pre, b_post, u, m); Q = (a_post, m, u, b_pre)
            s.wire(np(P, 0), a_pre)
            s.wire(np(P, 1), b_post)
            s.wire(np(P, 2), np(Q, 2))
            s.wire(np(P, 3), np(Q, 1))
            s.wire(np(Q, 0), a_post)
            s.wire(np(Q, 3), b_pre)
            bigon_at = (P, 3)
        else:
            # P = (b_post, u, m, a_pre); Q = (m, u, b_pre, a_post)
            s.wire(np(P, 0), b_post)
            s.wire(np(P, 1), np(Q, 1))
            s.wire(np(P, 2), np(Q, 0))
            s.wire(np(P, 3), a_pre)
            s.wire(np(Q, 2), b_pre)
            s.wire(np(Q, 3), a_post)
            bigon_at = (P, 2)
        res = s.finish()
        inv_dart = dart(res.node_index[bigon_at[0]], bigon_at[1])
        return _finish_from(res, MoveSite("O2", "rev", _anchor(d=inv_dart)))

    d1 = _get(site, "d")
    _check(d1 in view.theta, "dart not in diagram")
    walk = _face_from(view, d1)
    _check(len(walk) == 2, "face is not a bigon")
    d1, d2 = sorted(walk)
    P, i = dart_node(d1), dart_slot(d1)
    Q, j = dart_node(d2), dart_slot(d2)
    _check(P != Q and D.is_crossing(P) and D.is_crossing(Q), "bigon must join two crossings")
    _check(i % 2 == (j - 1) % 2, "bigon strands are not unpokeable")
    e1 = view.edge_at(d1)  # at P slot i and Q slot j-1
    e2 = view.edge_at(dart(Q, j))  # at Q slot j and P slot i-1
    _check(e1 != e2, "degenerate bigon")
    s = Surgery(D)
    s.delete_node(P)
    s.delete_node(Q)
    s.remove_edge(e1)
    s.remove_edge(e2)
    s.wire_dangling(P, i + 2, Q, j + 1)
    s.wire_dangling(P, i + 1, Q, j + 2)
    # record where the two merged strands attach, for the inverse site
    strand1_far = view.theta[dart(P, i + 2)]
    strand2_far = view.theta[dart(P, i + 1)]
    e1_over = i % 2 == 0
    res = s.finish()
    inv = _o2_inverse_site(D, view, res, strand1_far, strand2_far, e1_over, P, Q)
    return _finish_from(res, inv)


def _o2_inverse_site(D, view, res, far1, far2, e1_over, P, Q):
    """Reconstruct the forward poke site that recreates a removed
    bigon: locate the two merged strands, then pick the candidate dart
    pair whose trial application restores the original diagram."""
    from .diagram import is_isomorphic

    def chase(old_dart):
        cur = old_dart
        seen = 0
        while dart_node(cur) in (P, Q):
            n, sl = dart_node(cur), dart_slot(cur)
            cur = view.theta[dart(n, sl + 2)]
            seen += 1
            if seen > 4 * D.n_nodes + 4:
                return None  # strand closed into a free loop
        return res.port_label.get(("keep", dart_node(cur), dart_slot(cur)))

    la = chase(far1)
    lb = chase(far2)
    over = "a" if e1_over else "b"
    new_view = map_view(res.diagram)
    cand_a = ["L"] if la is None else list(new_view.edge_darts[la])
    cand_b = ["L"] if lb is None else list(new_view.edge_darts[lb])
    for da in cand_a:
        for db in cand_b:
            trial = MoveSite("O2", "fwd", _anchor(a=da, b=db, over=over))
            try:
                redo = _apply_o2(res.diagram, trial)
            except PatternMismatch:
                continue
            if is_isomorphic(redo.diagram, D):
                return trial
    # a strand poked across itself has no expressible inverse site;
    # return a sentinel that never matches
    return MoveSite("O2", "fwd", _anchor(a=-1, b=-1, over=over))


# ---------------------------------------------------------------------------
# O3: triangle slide.

def _o3_walk(D: MarkedGraphDiagram, view, d1: int):
    """The triangle data (N1,s1,N2,s2,N3,s3) for a coherent face walk
    starting at the even-parity departure dart, or None."""
    walk = _face_from(view, d1)
    if len(walk) != 3:
        return None
    nodes = [dart_node(d) for d in walk]
    if len(set(nodes)) != 3 or not all(D.is_crossing(n) for n in nodes):
        return None
    parities = [dart_slot(d) % 2 for d in walk]
    if sorted(parities) != [0, 1, 1]:
        return None
    k = parities.index(0)
    walk = walk[k:] + walk[:k]
    return walk


def _sites_o3(D: MarkedGraphDiagram) -> list[MoveSite]:
    view = map_view(D)
    out = []
    for face in view.faces:
        if len(face) != 3:
            continue
        walk = _o3_walk(D, view, face[0])
        if walk is not None:
            out.append(MoveSite("O3", "fwd", _anchor(d=walk[0])))
    return out


def _apply_o3(D: MarkedGraphDiagram, site: MoveSite) -> ApplyResult:
    view = map_view(D)
    d1 = _get(site, "d")
    _check(d1 in view.theta, "dart not in diagram")
    walk = _o3_walk(D, view, d1)
    _check(walk is not None and walk[0] == d1, "not a coherent triangle anchor")
    (N1, s1), (N2, s2), (N3, s3) = ((dart_node(d), dart_slot(d)) for d in walk)
    e1, e2, e3 = (view.edge_at(d) for d in walk)
    s = Surgery(D)
    for n in (N1, N2, N3):
        s.delete_node(n)
    for e in (e1, e2, e3):
        s.remove_edge(e)
    q_mb = s.new_crossing()
    q_tb = s.new_crossing()
    q_tm = s.new_crossing()
    np = s.new_port

    def dang(n, sl):
        return ("dang", n, sl % 4)

    s.wire(np(q_mb, 0), dang(N2, s2 + 2))
    s.wire(np(q_mb, 1), dang(N1, s1 + 1))
    s.wire(np(q_mb, 2), np(q_tm, 1))
    s.wire(np(q_mb, 3), np(q_tb, 1))
    s.wire(np(q_tb, 0), dang(N2, s2 + 1))
    s.wire(np(q_tb, 2), np(q_tm, 0))
    s.wire(np(q_tb, 3), dang(N3, s3 + 2))
    s.wire(np(q_tm, 2), dang(N1, s1 + 2))
    s.wire(np(q_tm, 3), dang(N3, s3 + 1))
    res = s.finish()
    inv = MoveSite("O3", "fwd", _anchor(d=dart(res.node_index[q_tb], 2)))
    return _finish_from(res, inv)


# ---------------------------------------------------------------------------
# O4 / O4p: strand slides across a marked vertex.

def _o4_match(D: MarkedGraphDiagram, view, v: int, j: int):
    """Match the slide pattern at the sector between slots j-1, j of
    vertex v (j odd).  Returns (Q, q, P, pm, over) or None."""
    if D.is_crossing(v) or j % 2 == 0:
        return None
    d0 = dart(v, j)
    walk = _face_from(view, d0)
    if len(walk) != 3 or walk[0] != d0:
        if len(walk) != 3 or d0 not in walk:
            return None
        k = walk.index(d0)
        walk = walk[k:] + walk[:k]
    arrive1 = view.theta[walk[0]]
    Q, q = dart_node(arrive1), dart_slot(arrive1)
    arrive2 = view.theta[walk[1]]
    P, pm = dart_node(arrive2), dart_slot(arrive2)
    if not (D.is_crossing(Q) and D.is_crossing(P)) or Q == P or v in (P, Q):
        return None
    over_q = (q + 1) % 2 == 0
    over_p = pm % 2 == 0
    if over_q != over_p:
        return None
    return Q, q, P, pm, over_q


OVER_SLIDE_IS_O4 = True


def _o4_move_id(over: bool) -> str:
    if OVER_SLIDE_IS_O4:
        return "O4" if over else "O4p"
    return "O4p" if over else "O4"


def _sites_o4(D: MarkedGraphDiagram, move: str) -> list[MoveSite]:
    view = map_view(D)
    nc = len(D.crossings)
    out = []
    for vi in range(len(D.vertices)):
        v = nc + vi
        for j in (1, 3):
            m = _o4_match(D, view, v, j)
            if m is not None and _o4_move_id(m[4]) == move:
                out.append(MoveSite(move, "fwd", _anchor(d=dart(v, j))))
    return out


def _apply_o4(D: MarkedGraphDiagram, site: MoveSite) -> ApplyResult:
    view = map_view(D)
    d0 = _get(site, "d")
    _check(d0 in view.theta, "dart not in diagram")
    v, j = dart_node(d0), dart_slot(d0)
    m = _o4_match(D, view, v, j)
    _check(m is not None, "no slide pattern at this sector")
    Q, q, P, pm, over = m
    _check(_o4_move_id(over) == site.move, "slide chirality does not match move id")

    a_edge = view.edge_at(dart(v, j + 1))
    b_edge = view.edge_at(dart(v, j + 2))
    s = Surgery(D)
    s.delete_node(P)
    s.delete_node(Q)
    a_near, a_far = s.cut(a_edge, v, (j + 1) % 4)
    b_near, b_far = s.cut(b_edge, v, (j + 2) % 4)
    s.wire_dangling(Q, q, Q, q + 2)
    s.wire_dangling(P, pm + 1, P, pm + 3)
    p2 = s.new_crossing()
    q2 = s.new_crossing()
    np = s.new_port

    def dang(n, sl):
        return ("dang", n, sl % 4)

    if over:
        # P' = (m', b_far, w_out, b_near); Q' = (e_out, a_far, m', a_near)
        s.wire(np(p2, 0), dang(P, pm))
        s.wire(np(p2, 1), b_far)
        s.wire(np(p2, 2), dang(P, pm + 2))
        s.wire(np(p2, 3), b_near)
        s.wire(np(q2, 0), dang(Q, q + 3))
        s.wire(np(q2, 1), a_far)
        s.wire(np(q2, 2), dang(Q, q + 1))
        s.wire(np(q2, 3), a_near)
    else:
        # rotated by one: strand under
        s.wire(np(p2, 0), b_far)
        s.wire(np(p2, 1), dang(P, pm + 2))
        s.wire(np(p2, 2), b_near)
        s.wire(np(p2, 3), dang(P, pm))
        s.wire(np(q2, 0), a_far)
        s.wire(np(q2, 1), dang(Q, q + 1))
        s.wire(np(q2, 2), a_near)
        s.wire(np(q2, 3), dang(Q, q + 3))
    res = s.finish()
    inv = MoveSite(site.move, "fwd", _anchor(d=dart(res.node_index[v], (j + 2) % 4)))
    return _finish_from(res, inv)


# ---------------------------------------------------------------------------
# O5: marked vertex slides past a crossing.

def _o5_match(D: MarkedGraphDiagram, view, d0: int):
    walk = _face_from(view, d0)
    if len(walk) != 2:
        return None
    for dd in walk:
        K, k0 = dart_node(dd), dart_slot(dd)
        if not D.is_crossing(K):
            continue
        arrive = view.theta[dd]
        v, sv = dart_node(arrive), dart_slot(arrive)
        if D.is_crossing(v) or v == K or sv % 2 == 0:
            continue
        back = view.theta[dart(v, sv + 1)]
        if back != dart(K, k0 - 1):
            continue
        return K, k0, v, sv
    return None


def _sites_o5(D: MarkedGraphDiagram) -> list[MoveSite]:
    view = map_view(D)
    out = []
    for face in view.faces:
        if len(face) != 2:
            continue
        m = _o5_match(D, view, face[0])
        if m is not None:
            K, k0, _, _ = m
            out.append(MoveSite("O5", "fwd", _anchor(d=dart(K, k0))))
    return out


def _apply_o5(D: MarkedGraphDiagram, site: MoveSite) -> ApplyResult:
    view = map_view(D)
    d0 = _get(site, "d")
    _check(d0 in view.theta, "dart not in diagram")
    m = _o5_match(D, view, d0)
    _check(m is not None and dart(m[0], m[1]) == d0, "no vertex-crossing bigon here")
    K, k0, v, sv = m
    e1 = view.edge_at(d0)  # K.k0 -- v.sv
    e2 = view.edge_at(dart(v, sv + 1))  # v.(sv+1) -- K.(k0-1)
    s = Surgery(D)
    s.delete_node(K)
    s.delete_node(v)
    v2 = s.new_vertex()
    k2 = s.new_crossing()
    np = s.new_port

    def dang(n, sl):
        return ("dang", n, sl % 4)

    # V' = (E1', K outer k0+1, K outer k0+2, E2')
    s.wire(np(v2, 0), dang(K, k0))
    s.wire(np(v2, 1), dang(K, k0 + 1))
    s.wire(np(v2, 2), dang(K, k0 + 2))
    s.wire(np(v2, 3), dang(K, k0 - 1))
    if k0 % 2 == 0:
        # K' = (v outer s-1, E1', E2', v outer s+2)
        s.wire(np(k2, 0), dang(v, sv - 1))
        s.wire(np(k2, 1), dang(v, sv))
        s.wire(np(k2, 2), dang(v, sv + 1))
        s.wire(np(k2, 3), dang(v, sv + 2))
        inv_dart_slot = 2
    else:
        # K' = (E1', E2', v outer s+2, v outer s-1)
        s.wire(np(k2, 0), dang(v, sv))
        s.wire(np(k2, 1), dang(v, sv + 1))
        s.wire(np(k2, 2), dang(v, sv + 2))
        s.wire(np(k2, 3), dang(v, sv - 1))
        inv_dart_slot = 1
    res = s.finish()
    inv = MoveSite("O5", "fwd", _anchor(d=dart(res.node_index[k2], inv_dart_slot)))
    return _finish_from(res, inv)


# ---------------------------------------------------------------------------
# O6 / O6p: marked curls.

def _curl_pair(D: MarkedGraphDiagram, vi: int) -> int | None:
    ends = D.vertices[vi].ends
    for j in range(4):
        if ends[j] == ends[(j + 1) % 4]:
            return j
    return None


def _sites_o6(D: MarkedGraphDiagram, move: str) -> list[MoveSite]:
    out = []
    view = map_view(D) if D.n_nodes else None
    for e in sorted(view.edge_darts) if view else []:
        out.append(MoveSite(move, "fwd", _anchor(edge=e)))
    if D.free_loops:
        out.append(MoveSite(move, "fwd", _anchor(loop=0)))
    nc = len(D.crossings)
    for vi in range(len(D.vertices)):
        j = _curl_pair(D, vi)
        if j is None:
            continue
        ends = D.vertices[vi].ends
        loop = ends[j]
        if view and set(view.edge_darts[loop]) != {dart(nc + vi, j), dart(nc + vi, j + 1)}:
            continue
        wanted = "O6" if j % 2 == 0 else "O6p"
        if wanted == move:
            out.append(MoveSite(move, "rev", _anchor(v=vi)))
    return out


def _apply_o6(D: MarkedGraphDiagram, site: MoveSite) -> ApplyResult:
    s = Surgery(D)
    nc = len(D.crossings)
    if site.direction == "fwd":
        p0, p1 = _cut_for_insert(s, site)
        W = s.new_vertex()
        np = s.new_port
        if site.move == "O6":
            s.wire(np(W, 0), np(W, 1))
            s.wire(np(W, 2), p0)
            s.wire(np(W, 3), p1)
        else:
            s.wire(np(W, 1), np(W, 2))
            s.wire(np(W, 0), p0)
            s.wire(np(W, 3), p1)
        res = s.finish()
        inv = MoveSite(site.move, "rev", _anchor(v=res.node_index[W] - len(res.diagram.crossings)))
        return _finish_from(res, inv)

    vi = _get(site, "v")
    _check(isinstance(vi, int) and 0 <= vi < len(D.vertices), "no such vertex")
    j = _curl_pair(D, vi)
    _check(j is not None, "vertex carries no curl lobe")
    wanted = "O6" if j % 2 == 0 else "O6p"
    _check(wanted == site.move, "curl parity does not match move id")
    node = nc + vi
    ends = D.vertices[vi].ends
    loop = ends[j]
    view = map_view(D)
    _check(
        set(view.edge_darts[loop]) == {dart(node, j), dart(node, j + 1)},
        "lobe edge leaves the vertex",
    )
    s.delete_node(node)
    s.remove_edge(loop)
    s.wire_dangling(node, j + 2, node, j + 3)
    res = s.finish()
    inv = MoveSite(site.move, "fwd", _anchor(**_insert_inverse_anchor(D, res, node, j, view)))
    return _finish_from(res, inv)


# ---------------------------------------------------------------------------
# O7: adjacent marked vertices trade marker alignment.

def _o7_binding(D: MarkedGraphDiagram, view, e: int):
    d1, d2 = view.edge_darts[e]
    n1, s1 = dart_node(d1), dart_slot(d1)
    n2, s2 = dart_node(d2), dart_slot(d2)
    if D.is_crossing(n1) or D.is_crossing(n2) or n1 == n2:
        return None
    if s1 % 2 == s2 % 2:
        return None
    if s1 % 2 == 1:
        podd, sodd, peven, seven = n1, s1, n2, s2
    else:
        podd, sodd, peven, seven = n2, s2, n1, s1
    return podd, (sodd - 1) % 4, peven, (seven - 2) % 4


def _sites_o7(D: MarkedGraphDiagram) -> list[MoveSite]:
    view = map_view(D)
    out = []
    for e in sorted(view.edge_darts):
        if _o7_binding(D, view, e) is not None:
            out.append(MoveSite("O7", "fwd", _anchor(edge=e)))
            out.append(MoveSite("O7", "rev", _anchor(edge=e)))
    return out


def _apply_o7(D: MarkedGraphDiagram, site: MoveSite) -> ApplyResult:
    view = map_view(D)
    e = _get(site, "edge")
    _check(e in view.edge_darts, f"no edge {e}")
    binding = _o7_binding(D, view, e)
    _check(binding is not None, "edge does not join two marker-mixed vertices")
    s = Surgery(D)
    np = s.new_port

    def dang(n, sl):
        return ("dang", n, sl % 4)

    if site.direction == "fwd":
        # M = (m0, B, m2, m3) with B at canonical slot 1, N = (n0, n1, B, n3)
        M, off_m, N, off_n = binding
        s.delete_node(M)
        s.delete_node(N)
        s.remove_edge(e)
        R = s.new_vertex()
        S = s.new_vertex()
        # R = (n0, B', m0, n3); S = (B', n1, m2, m3)
        s.wire(np(R, 0), dang(N, off_n + 0))
        s.wire(np(R, 1), np(S, 0))
        s.wire(np(R, 2), dang(M, off_m + 0))
        s.wire(np(R, 3), dang(N, off_n + 3))
        s.wire(np(S, 1), dang(N, off_n + 1))
        s.wire(np(S, 2), dang(M, off_m + 2))
        s.wire(np(S, 3), dang(M, off_m + 3))
        res = s.finish()
        inv = MoveSite("O7", "rev", _anchor(edge=res.port_label[np(R, 1)]))
        return _finish_from(res, inv)

    # reverse reading: R carries B' at canonical 1, S at canonical 2
    R, off_r, S, off_s = binding
    s.delete_node(R)
    s.delete_node(S)
    s.remove_edge(e)
    M = s.new_vertex()
    N = s.new_vertex()
    # M = (r2, B'', s0, s1); N = (r0, s3, B'', r3)
    s.wire(np(M, 0), dang(R, off_r + 2))
    s.wire(np(M, 1), np(N, 2))
    s.wire(np(M, 2), dang(S, off_s + 0))
    s.wire(np(M, 3), dang(S, off_s + 1))
    s.wire(np(N, 0), dang(R, off_r + 0))
    s.wire(np(N, 1), dang(S, off_s + 3))
    s.wire(np(N, 3), dang(R, off_r + 3))
    res = s.finish()
    inv = MoveSite("O7", "fwd", _anchor(edge=res.port_label[np(M, 1)]))
    return _finish_from(res, inv)


# ---------------------------------------------------------------------------
# O8: the two-vertex four-crossing block.

def _o8_probe(D, view, node, slot, want_crossing, canon):
    """Follow edge(node, slot); return (other node, offset) if the far
    end has the wanted kind and sits at canonical position `canon` for
    some rotation offset, else None."""
    far = view.theta[dart(node, slot)]
    n, s = dart_node(far), dart_slot(far)
    if D.is_crossing(n) != want_crossing:
        return None
    off = (s - canon) % 4
    if off not in (0, 2):
        return None
    return n, off


def _o8_match_fwd(D: MarkedGraphDiagram, view, va: int, off_a: int):
    """Bind the left-hand block anchored at vertex va with rotation
    offset off_a; returns the six nodes and offsets or None."""
    if D.is_crossing(va):
        return None
    r = _o8_probe(D, view, va, off_a + 0, True, 1)
    if r is None:
        return None
    k1, off_1 = r
    r = _o8_probe(D, view, va, off_a + 3, True, 1)
    if r is None:
        return None
    k3, off_3 = r
    r = _o8_probe(D, view, k1, off_1 + 0, False, 2)
    if r is None:
        return None
    vb, off_b = r
    r = _o8_probe(D, view, k1, off_1 + 2, True, 0)
    if r is None or r[0] != k3 or r[1] != off_3:
        return None
    r = _o8_probe(D, view, k1, off_1 + 3, True, 1)
    if r is None:
        return None
    k2, off_2 = r
    r = _o8_probe(D, view, vb, off_b + 3, True, 0)
    if r is None or r[0] != k2 or r[1] != off_2:
        return None
    r = _o8_probe(D, view, k2, off_2 + 2, True, 0)
    if r is None:
        return None
    k4, off_4 = r
    r = _o8_probe(D, view, k3, off_3 + 3, True, 1)
    if r is None or r[0] != k4 or r[1] != off_4:
        return None
    nodes = (va, vb, k1, k2, k3, k4)
    if len(set(nodes)) != 6 or vb == va or D.is_crossing(vb):
        return None
    return va, off_a, vb, off_b, k1, off_1, k2, off_2, k3, off_3, k4, off_4


def _o8_match_rev(D: MarkedGraphDiagram, view, va: int, off_a: int):
    if D.is_crossing(va):
        return None
    r = _o8_probe(D, view, va, off_a + 0, True, 0)
    if r is None:
        return None
    c1, off_1 = r
    r = _o8_probe(D, view, va, off_a + 3, True, 0)
    if r is None:
        return None
    c2, off_2 = r
    r = _o8_probe(D, view, c1, off_1 + 3, False, 2)
    if r is None:
        return None
    vb, off_b = r
    r = _o8_probe(D, view, c1, off_1 + 1, True, 3)
    if r is None or r[0] != c2 or r[1] != off_2:
        return None
    r = _o8_probe(D, view, c1, off_1 + 2, True, 0)
    if r is None:
        return None
    c3, off_3 = r
    r = _o8_probe(D, view, vb, off_b + 3, True, 3)
    if r is None or r[0] != c3 or r[1] != off_3:
        return None
    r = _o8_probe(D, view, c2, off_2 + 2, True, 0)
    if r is None:
        return None
    c4, off_4 = r
    r = _o8_probe(D, view, c3, off_3 + 1, True, 3)
    if r is None or r[0] != c4 or r[1] != off_4:
        return None
    nodes = (va, vb, c1, c2, c3, c4)
    if len(set(nodes)) != 6 or D.is_crossing(vb):
        return None
    return va, off_a, vb, off_b, c1, off_1, c2, off_2, c3, off_3, c4, off_4


def _sites_o8(D: MarkedGraphDiagram) -> list[MoveSite]:
    out = []
    for mirror in (False, True):
        Dm = D.mirrored() if mirror else D
        view = map_view(Dm)
        nc = len(Dm.crossings)
        for vi in range(len(Dm.vertices)):
            va = nc + vi
            for off in (0, 2):
                if _o8_match_fwd(Dm, view, va, off) is not None:
                    out.append(MoveSite("O8", "fwd", _anchor(v=vi, off=off), mirror))
                if _o8_match_rev(Dm, view, va, off) is not None:
                    out.append(MoveSite("O8", "rev", _anchor(v=vi, off=off), mirror))
    return out


def _apply_o8(D: MarkedGraphDiagram, site: MoveSite) -> ApplyResult:
    if site.mirror:
        inner = replace(site, mirror=False)
        res = _apply_o8(D.mirrored(), inner)
        return ApplyResult(
            res.diagram.mirrored(), replace(res.inverse, mirror=True)
        )
    view = map_view(D)
    nc = len(D.crossings)
    vi, off = _get(site, "v"), _get(site, "off")
    _check(isinstance(vi, int) and 0 <= vi < len(D.vertices), "no such vertex")
    va = nc + vi
    matcher = _o8_match_fwd if site.direction == "fwd" else _o8_match_rev
    m = matcher(D, view, va, off)
    _check(m is not None, "no six-node block here")
    va, off_a, vb, off_b, n1, off_1, n2, off_2, n3, off_3, n4, off_4 = m
    s = Surgery(D)
    for n in (va, vb, n1, n2, n3, n4):
        s.delete_node(n)
    if site.direction == "fwd":
        inner = [
            (va, off_a + 0), (va, off_a + 3), (vb, off_b + 2), (vb, off_b + 3),
            (n1, off_1 + 2), (n1, off_1 + 3), (n2, off_2 + 2), (n3, off_3 + 3),
        ]
    else:
        inner = [
            (va, off_a + 0), (va, off_a + 3), (vb, off_b + 2), (vb, off_b + 3),
            (n1, off_1 + 1), (n1, off_1 + 2), (n2, off_2 + 2), (n3, off_3 + 1),
        ]
    for n, sl in inner:
        s.remove_edge(view.edge_at(dart(n, sl)))
    np = s.new_port

    def dang(n, sl):
        return ("dang", n, sl % 4)

    va2 = s.new_vertex()
    vb2 = s.new_vertex()
    c1 = s.new_crossing()
    c2 = s.new_crossing()
    c3 = s.new_crossing()
    c4 = s.new_crossing()
    if site.direction == "fwd":
        s.wire(np(vb2, 0), dang(vb, off_b + 0))
        s.wire(np(vb2, 1), dang(vb, off_b + 1))
        s.wire(np(va2, 1), dang(va, off_a + 1))
        s.wire(np(va2, 2), dang(va, off_a + 2))
        s.wire(np(c2, 1), dang(n3, off_3 + 2))
        s.wire(np(c4, 1), dang(n4, off_4 + 2))
        s.wire(np(c4, 2), dang(n4, off_4 + 3))
        s.wire(np(c3, 2), dang(n2, off_2 + 3))
        s.wire(np(vb2, 2), np(c1, 3))
        s.wire(np(vb2, 3), np(c3, 3))
        s.wire(np(va2, 3), np(c2, 0))
        s.wire(np(va2, 0), np(c1, 0))
        s.wire(np(c1, 1), np(c2, 3))
        s.wire(np(c1, 2), np(c3, 0))
        s.wire(np(c2, 2), np(c4, 0))
        s.wire(np(c3, 1), np(c4, 3))
        inv_dir = "rev"
    else:
        s.wire(np(va2, 1), dang(va, off_a + 1))
        s.wire(np(va2, 2), dang(va, off_a + 2))
        s.wire(np(vb2, 0), dang(vb, off_b + 0))
        s.wire(np(vb2, 1), dang(vb, off_b + 1))
        s.wire(np(c3, 2), dang(n2, off_2 + 1))
        s.wire(np(c2, 3), dang(n3, off_3 + 2))
        s.wire(np(c4, 2), dang(n4, off_4 + 1))
        s.wire(np(c4, 3), dang(n4, off_4 + 2))
        s.wire(np(va2, 0), np(c1, 1))
        s.wire(np(va2, 3), np(c3, 1))
        s.wire(np(vb2, 2), np(c1, 0))
        s.wire(np(vb2, 3), np(c2, 0))
        s.wire(np(c1, 2), np(c3, 0))
        s.wire(np(c1, 3), np(c2, 1))
        s.wire(np(c2, 2), np(c4, 0))
        s.wire(np(c3, 3), np(c4, 1))
        inv_dir = "fwd"
    res = s.finish()
    new_vi = res.node_index[va2] - len(res.diagram.crossings)
    inv = MoveSite("O8", inv_dir, _anchor(v=new_vi, off=0), site.mirror)
    return _finish_from(res, inv)


# ---------------------------------------------------------------------------
# Dispatch.

_SITE_ENUM = {
    "O1": _sites_o1,
    "O2": _sites_o2,
    "O3": _sites_o3,
    "O4": lambda D: _sites_o4(D, "O4"),
    "O4p": lambda D: _sites_o4(D, "O4p"),
    "O5": _sites_o5,
    "O6": lambda D: _sites_o6(D, "O6"),
    "O6p": lambda D: _sites_o6(D, "O6p"),
    "O7": _sites_o7,
    "O8": _sites_o8,
}

_APPLY = {
    "O1": _apply_o1,
    "O2": _apply_o2,
    "O3": _apply_o3,
    "O4": _apply_o4,
    "O4p": _apply_o4,
    "O5": _apply_o5,
    "O6": _apply_o6,
    "O6p": _apply_o6,
    "O7": _apply_o7,
    "O8": _apply_o8,
}


def enumerate_sites(D: MarkedGraphDiagram, move: str) -> list[MoveSite]:
    """All matches of the move's patterns, in a deterministic order."""
    require_valid(D)
    if move not in _SITE_ENUM:
        raise ValueError(f"unknown move {move!r}")
    return _SITE_ENUM[move](D)


def apply_move(D: MarkedGraphDiagram, site: MoveSite) -> ApplyResult:
    """Rewrite at a matched site; raises PatternMismatch otherwise."""
    require_valid(D)
    if site.move not in _APPLY:
        raise ValueError(f"unknown move {site.move!r}")
    return _APPLY[site.move](D, site)


# growth in node count per (move, direction); used by the walk policy
_GROWTH = {
    ("O1", "fwd"): 1, ("O1", "rev"): -1,
    ("O2", "fwd"): 2, ("O2", "rev"): -2,
    ("O6", "fwd"): 1, ("O6", "rev"): -1,
    ("O6p", "fwd"): 1, ("O6p", "rev"): -1,
}


def random_walk(
    D: MarkedGraphDiagram,
    seed: int,
    n: int,
    allowed: tuple[str, ...] = MOVE_IDS,
    max_nodes: int = 10,
    min_nodes: int = 2,
) -> list[MarkedGraphDiagram]:
    """Seeded random sequence of n single-move rewrites.

    Prefers growing sites while the diagram is small and shrinking ones
    above the node cap; within the active pool the choice is uniform.
    Returns every intermediate diagram.
    """
    require_valid(D)
    rng = random.Random(seed)
    out: list[MarkedGraphDiagram] = []
    cur = D
    for _ in range(n):
        sites: list[MoveSite] = []
        for mv in allowed:
            sites.extend(enumerate_sites(cur, mv))
        if not sites:
            raise StuckError("no applicable move site")
        size = cur.n_nodes
        if size >= max_nodes:
            pool = [s for s in sites if _GROWTH.get((s.move, s.direction), 0) <= 0]
        elif size <= min_nodes:
            pool = [s for s in sites if _GROWTH.get((s.move, s.direction), 0) >= 0]
        else:
            pool = sites
        if not pool:
            pool = sites
        site = pool[rng.randrange(len(pool))]
        cur = apply_move(cur, site).diagram
        out.append(cur)
    return out
