"""Marked graph diagrams as combinatorial maps.

A diagram is a list of classical crossings and marked vertices, each
with four attachment slots listed counterclockwise, plus a count of
crossing-free circles ("free loops").  Edge labels are positive
integers; every label occurs at exactly two slots in the whole diagram.

Slot conventions (these carry all of the geometry):

* Crossing ``C(a, b, c, d)``: the over strand occupies slots 0 and 2,
  the under strand slots 1 and 3.  Tuples equal up to rotation by two
  describe the same crossing.
* Marked vertex ``V(a, b, c, d)``: the marker separates slots {0, 1}
  from {2, 3}; the positive smoothing joins (slot0, slot1) and
  (slot2, slot3), the negative smoothing joins (slot1, slot2) and
  (slot3, slot0).  Again rotation by two is immaterial.

Faces are traced from the rotation system: arriving at a node along an
edge, the walk departs by the counterclockwise-next slot.  Planarity is
enforced through V - E + F = 2 on every connected component.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

from ._utils import DSU, ParityDSU


class InvalidDiagramError(ValueError):
    """Raised when an operation requires a valid diagram."""


@dataclass(frozen=True)
class Crossing:
    """Classical crossing; ``ends`` are edge labels ccw, over at 0 and 2."""

    ends: tuple[int, int, int, int]

    def rotated(self) -> Crossing:
        a, b, c, d = self.ends
        return Crossing((c, d, a, b))

    def switched(self) -> Crossing:
        """Exchange over/under strands (rotate the reading by one)."""
        a, b, c, d = self.ends
        return Crossing((b, c, d, a))

    def mirrored(self) -> Crossing:
        """Reflect across a vertical axis (slots 0 and 2 swap)."""
        a, b, c, d = self.ends
        return Crossing((c, b, a, d))


@dataclass(frozen=True)
class MarkedVertex:
    """Rigid 4-valent vertex with a marker between {0,1} and {2,3}."""

    ends: tuple[int, int, int, int]

    def rotated(self) -> MarkedVertex:
        a, b, c, d = self.ends
        return MarkedVertex((c, d, a, b))

    def mirrored(self) -> MarkedVertex:
        a, b, c, d = self.ends
        return MarkedVertex((b, a, d, c))


@dataclass(frozen=True)
class MarkedGraphDiagram:
    """Immutable marked graph diagram."""

    crossings: tuple[Crossing, ...] = ()
    vertices: tuple[MarkedVertex, ...] = ()
    free_loops: int = 0

    @classmethod
    def build(
        cls,
        crossings: Sequence[Sequence[int]] = (),
        vertices: Sequence[Sequence[int]] = (),
        free_loops: int = 0,
    ) -> MarkedGraphDiagram:
        return cls(
            tuple(Crossing(tuple(c)) for c in crossings),
            tuple(MarkedVertex(tuple(v)) for v in vertices),
            free_loops,
        )

    @property
    def n_nodes(self) -> int:
        return len(self.crossings) + len(self.vertices)

    def node_ends(self, node: int) -> tuple[int, int, int, int]:
        nc = len(self.crossings)
        return self.crossings[node].ends if node < nc else self.vertices[node - nc].ends

    def is_crossing(self, node: int) -> bool:
        return node < len(self.crossings)

    def edge_labels(self) -> list[int]:
        seen = []
        found = set()
        for n in range(self.n_nodes):
            for e in self.node_ends(n):
                if e not in found:
                    found.add(e)
                    seen.append(e)
        return seen

    def mirrored(self) -> MarkedGraphDiagram:
        return MarkedGraphDiagram(
            tuple(c.mirrored() for c in self.crossings),
            tuple(v.mirrored() for v in self.vertices),
            self.free_loops,
        )

    def switched(self) -> MarkedGraphDiagram:
        """Change over/under at every classical crossing."""
        return MarkedGraphDiagram(
            tuple(c.switched() for c in self.crossings),
            self.vertices,
            self.free_loops,
        )


# ---------------------------------------------------------------------------
# Dart bookkeeping.  A dart is an attachment incidence (node, slot),
# packed as 4*node + slot.

def dart(node: int, slot: int) -> int:
    return 4 * node + (slot % 4)

def dart_node(d: int) -> int:
    return d // 4

def dart_slot(d: int) -> int:
    return d % 4


class MapView:
    """Precomputed incidence structure of a structurally sound diagram."""

    def __init__(self, D: MarkedGraphDiagram):
        self.D = D
        self.n_nodes = D.n_nodes
        occ: dict[int, list[int]] = {}
        for n in range(self.n_nodes):
            for s, e in enumerate(D.node_ends(n)):
                occ.setdefault(e, []).append(dart(n, s))
        bad = [e for e, ds in occ.items() if len(ds) != 2 or e <= 0]
        if bad:
            raise InvalidDiagramError(f"edge arity violations: {sorted(bad)}")
        self.edge_darts = occ  # label -> [dart, dart]
        self.theta = {}
        for e, (d1, d2) in occ.items():
            self.theta[d1] = d2
            self.theta[d2] = d1

    def edge_at(self, d: int) -> int:
        D = self.D
        return D.node_ends(dart_node(d))[dart_slot(d)]

    def phi(self, d: int) -> int:
        """Face successor: cross the edge, then turn ccw."""
        t = self.theta[d]
        return dart(dart_node(t), dart_slot(t) + 1)

    @functools.cached_property
    def faces(self) -> list[tuple[int, ...]]:
        """Face boundary walks as dart cycles, each starting from its
        minimal dart, ordered by that dart.  Free loops contribute two
        empty walks each (their two sides)."""
        seen = set()
        out = []
        for d0 in sorted(self.theta):
            if d0 in seen:
                continue
            walk = []
            d = d0
            while True:
                walk.append(d)
                seen.add(d)
                d = self.phi(d)
                if d == d0:
                    break
            out.append(tuple(walk))
        out.extend([()] * (2 * self.D.free_loops))
        return out

    @functools.cached_property
    def node_components(self) -> DSU:
        """Connectivity of the underlying 4-valent graph |D|."""
        dsu = DSU(self.n_nodes)
        for d1, d2 in ((d1, self.theta[d1]) for d1 in self.theta):
            dsu.union(dart_node(d1), dart_node(d2))
        return dsu


@functools.lru_cache(maxsize=512)
def map_view(D: MarkedGraphDiagram) -> MapView:
    return MapView(D)


# ---------------------------------------------------------------------------
# Validation.

def validate(D: MarkedGraphDiagram) -> list[str]:
    """Return every violated structural rule (empty list = valid)."""
    problems: list[str] = []
    if D.free_loops < 0:
        problems.append("negative-free-loops")
    occ: dict[int, int] = {}
    for n in range(D.n_nodes):
        ends = D.node_ends(n)
        if len(ends) != 4:
            problems.append(f"node-{n}-degenerate")
            continue
        for e in ends:
            if not isinstance(e, int) or e <= 0:
                problems.append(f"edge-{e}-bad-label")
            occ[e] = occ.get(e, 0) + 1
    for e, cnt in sorted(occ.items()):
        if cnt != 2:
            problems.append(f"edge-{e}-arity")
    if problems:
        return problems

    view = MapView(D)
    # Euler characteristic per connected component of |D|
    comp_v: dict[int, int] = {}
    comp_e: dict[int, int] = {}
    comp_f: dict[int, int] = {}
    dsu = view.node_components
    for n in range(D.n_nodes):
        comp_v[dsu.find(n)] = comp_v.get(dsu.find(n), 0) + 1
    for e, (d1, _) in view.edge_darts.items():
        r = dsu.find(dart_node(d1))
        comp_e[r] = comp_e.get(r, 0) + 1
    for walk in view.faces:
        if walk:
            r = dsu.find(dart_node(walk[0]))
            comp_f[r] = comp_f.get(r, 0) + 1
    for r in sorted(comp_v):
        chi = comp_v[r] - comp_e.get(r, 0) + comp_f.get(r, 0)
        if chi != 2:
            problems.append(f"non-planar-component-{r}")
    return problems


def require_valid(D: MarkedGraphDiagram, allow_nonplanar: bool = False) -> None:
    problems = validate(D)
    if allow_nonplanar:
        problems = [p for p in problems if not p.startswith("non-planar")]
    if problems:
        raise InvalidDiagramError("; ".join(problems))


def faces(D: MarkedGraphDiagram) -> list[tuple[int, ...]]:
    """Face boundary walks (dart cycles); two empty walks per free loop."""
    return list(map_view(D).faces)


# ---------------------------------------------------------------------------
# Components.

@dataclass(frozen=True)
class DhatComponents:
    """Partition of edges and free loops into components of the diagram
    with all classical crossings deleted (marked vertices retained).

    Components are indexed deterministically: components containing
    edges come first, ordered by their smallest edge label; free loops
    follow in declaration order.
    """

    count: int
    edge_component: dict[int, int]
    free_loop_components: tuple[int, ...]

    def of_edge(self, label: int) -> int:
        return self.edge_component[label]


def dhat_components(D: MarkedGraphDiagram) -> DhatComponents:
    labels = sorted({e for n in range(D.n_nodes) for e in D.node_ends(n)})
    index = {e: i for i, e in enumerate(labels)}
    dsu = DSU(len(labels))
    nc = len(D.crossings)
    for v in D.vertices:
        a = index[v.ends[0]]
        for e in v.ends[1:]:
            dsu.union(a, index[e])
    roots: list[int] = []
    root_id: dict[int, int] = {}
    edge_component: dict[int, int] = {}
    for e in labels:  # ascending labels => components ordered by min label
        r = dsu.find(index[e])
        if r not in root_id:
            root_id[r] = len(roots)
            roots.append(r)
        edge_component[e] = root_id[r]
    k = len(roots)
    loops = tuple(range(k, k + D.free_loops))
    return DhatComponents(k + D.free_loops, edge_component, loops)


@dataclass(frozen=True)
class GraphPartition:
    """Partition of edges and free loops into components of the
    underlying surface: strands pass straight through crossings, marked
    vertices merge all four incident edges.  Indexed like
    DhatComponents (min edge label order, then free loops)."""

    count: int
    edge_component: dict[int, int]
    free_loop_components: tuple[int, ...]

    def of_edge(self, label: int) -> int:
        return self.edge_component[label]


def graph_partition(D: MarkedGraphDiagram) -> GraphPartition:
    labels = sorted({e for n in range(D.n_nodes) for e in D.node_ends(n)})
    index = {e: i for i, e in enumerate(labels)}
    dsu = DSU(len(labels))
    for c in D.crossings:
        a, b, cc, d = c.ends
        dsu.union(index[a], index[cc])
        dsu.union(index[b], index[d])
    for v in D.vertices:
        a = index[v.ends[0]]
        for e in v.ends[1:]:
            dsu.union(a, index[e])
    root_id: dict[int, int] = {}
    edge_component: dict[int, int] = {}
    for e in labels:
        r = dsu.find(index[e])
        if r not in root_id:
            root_id[r] = len(root_id)
        edge_component[e] = root_id[r]
    k = len(root_id)
    loops = tuple(range(k, k + D.free_loops))
    return GraphPartition(k + D.free_loops, edge_component, loops)


def graph_components(D: MarkedGraphDiagram) -> int:
    """Number of connected components of the underlying surface.  For a
    classical link diagram this is the number of link components."""
    return graph_partition(D).count


# ---------------------------------------------------------------------------
# Orientation.

class NonOrientable:
    """Singleton result for diagrams admitting no orientation."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NonOrientable"


NON_ORIENTABLE = NonOrientable()


@dataclass(frozen=True)
class Orientation:
    """Assignment of a flow direction to every incidence.

    ``outward`` maps each dart to True when the edge points away from
    the node at that slot.  The two darts of an edge always disagree; at
    a crossing the over pair disagrees and the under pair disagrees; at
    a marked vertex slots 0,2 agree and slots 1,3 take the other value.
    """

    outward: dict[int, bool]

    def is_outward(self, node: int, slot: int) -> bool:
        return self.outward[dart(node, slot)]


def orient(D: MarkedGraphDiagram) -> Orientation | NonOrientable:
    """Find an orientation via parity propagation, or NonOrientable.

    Ties are broken per connected component by making the
    lowest-indexed unassigned incidence point outward.
    """
    require_valid(D)
    view = map_view(D)
    darts = sorted(view.theta)
    pos = {d: i for i, d in enumerate(darts)}
    dsu = ParityDSU(len(darts))
    ok = True
    for d1 in darts:
        d2 = view.theta[d1]
        ok &= dsu.union(pos[d1], pos[d2], 1)
    for n in range(D.n_nodes):
        if D.is_crossing(n):
            ok &= dsu.union(pos[dart(n, 0)], pos[dart(n, 2)], 1)
            ok &= dsu.union(pos[dart(n, 1)], pos[dart(n, 3)], 1)
        else:
            ok &= dsu.union(pos[dart(n, 0)], pos[dart(n, 2)], 0)
            ok &= dsu.union(pos[dart(n, 1)], pos[dart(n, 3)], 0)
            ok &= dsu.union(pos[dart(n, 0)], pos[dart(n, 1)], 1)
    if not ok:
        return NON_ORIENTABLE
    root_value: dict[int, int] = {}
    outward: dict[int, bool] = {}
    for d in darts:  # ascending: first incidence of each component is outward
        root, par = dsu.find(pos[d])
        if root not in root_value:
            root_value[root] = par  # makes this dart's value "outward"
        outward[d] = (par ^ root_value[root]) == 0
    return Orientation(outward)


# ---------------------------------------------------------------------------
# Resolutions.

def resolve(D: MarkedGraphDiagram, sign: Literal["+", "-"]) -> MarkedGraphDiagram:
    """Smooth every marked vertex along (+) or against (-) its marker.

    Crossings are untouched; circles created by the smoothing fold into
    ``free_loops``.  Edges are relabelled canonically.
    """
    require_valid(D)
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    from .surgery import Surgery

    surgery = Surgery(D)
    nc = len(D.crossings)
    for j in range(len(D.vertices)):
        node = nc + j
        surgery.delete_node(node)
        if sign == "+":
            surgery.wire_dangling(node, 0, node, 1)
            surgery.wire_dangling(node, 2, node, 3)
        else:
            surgery.wire_dangling(node, 1, node, 2)
            surgery.wire_dangling(node, 3, node, 0)
    return surgery.finish().diagram


# ---------------------------------------------------------------------------
# Companion loops.

@dataclass(frozen=True)
class CompanionLoop:
    """A closed walk that goes straight at crossings, turns at marked
    vertices, and never repeats an edge."""

    base: int  # starting dart
    steps: tuple[int, ...]  # departure darts in order
    crossings_passed: tuple[int, ...]  # node indices, with multiplicity

    @property
    def crossing_count(self) -> int:
        return len(self.crossings_passed)


class CompanionLoopFailure(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def companion_loop(
    D: MarkedGraphDiagram,
    base: int,
    turns: Sequence[Literal["left", "right"]],
    at_vertex: bool = False,
) -> CompanionLoop:
    """Trace a companion loop: straight through crossings, one entry of
    ``turns`` per marked-vertex passage ("left" exits one slot
    counterclockwise of the entry, "right" one clockwise), no edge
    traversed twice.

    With ``at_vertex`` False the base point lies in the interior of
    edge(base), next to the incidence ``base``; the walk starts by
    entering that node and closes on the step that would traverse the
    base edge again (so the base edge's two halves are each used once).

    With ``at_vertex`` True the base point is the marked vertex carrying
    ``base``; the walk departs along that dart, passage rules apply at
    every interior node, and closing at the base vertex is free (the
    turning rule is waived there, so the loop may leave and return on
    any pair of legs, in particular diagonally).

    Raises CompanionLoopFailure on an edge repeat, turn underflow, or
    leftover turns at closure.
    """
    require_valid(D)
    view = map_view(D)
    if base not in view.theta:
        raise ValueError(f"base dart {base} not in diagram")
    if at_vertex and D.is_crossing(dart_node(base)):
        raise ValueError("vertex-based loop requires a marked vertex dart")
    turns = list(turns)
    ti = 0
    used_edges = set()
    steps: list[int] = []
    passed: list[int] = []
    base_edge = view.edge_at(base)
    base_node = dart_node(base)

    if at_vertex:
        out = base
    else:
        steps.append(base)
        used_edges.add(base_edge)
        out = None
        arrive = view.theta[base]

    while True:
        if out is not None:
            e = view.edge_at(out)
            if not at_vertex and out == base:
                # re-entering the base edge from its far side: the walk
                # ends at the base point, completing the second half
                if ti != len(turns):
                    raise CompanionLoopFailure("unused-turns")
                return CompanionLoop(base, tuple(steps), tuple(passed))
            if e in used_edges:
                raise CompanionLoopFailure("edge-repeat")
            used_edges.add(e)
            steps.append(out)
            arrive = view.theta[out]
        n, s = dart_node(arrive), dart_slot(arrive)
        if at_vertex and n == base_node and ti == len(turns):
            return CompanionLoop(base, tuple(steps), tuple(passed))
        if D.is_crossing(n):
            passed.append(n)
            out = dart(n, s + 2)
        else:
            if ti == len(turns):
                raise CompanionLoopFailure("turn-underflow")
            turn = turns[ti]
            ti += 1
            out = dart(n, s + 1) if turn == "left" else dart(n, s - 1)


def enumerate_companion_loops(
    D: MarkedGraphDiagram, limit: int = 100000
) -> Iterator[CompanionLoop]:
    """Depth-first enumeration of companion loops over all edge-interior
    base points and all marked-vertex base points (every turn decision,
    and for vertex bases both closing and continuing on each return).
    The no-repeated-edge rule keeps the search finite.  Free loops each
    contribute their one trivial companion loop."""
    require_valid(D)
    view = map_view(D)
    emitted = 0

    for _ in range(D.free_loops):
        emitted += 1
        yield CompanionLoop(-1, (), ())

    def walk(b, base_edge, base_node, at_vertex, arrive, used, steps, passed):
        nonlocal emitted
        if emitted >= limit:
            return
        n, s = dart_node(arrive), dart_slot(arrive)
        if at_vertex and n == base_node:
            emitted += 1
            yield CompanionLoop(b, tuple(steps), tuple(passed))
        if D.is_crossing(n):
            outs = [dart(n, s + 2)]
            passed.append(n)
        else:
            outs = [dart(n, s + 1), dart(n, s - 1)]
        for out in outs:
            e = view.edge_at(out)
            if not at_vertex and out == b:
                emitted += 1
                yield CompanionLoop(b, tuple(steps), tuple(passed))
                continue
            if e in used:
                continue
            used.add(e)
            steps.append(out)
            yield from walk(b, base_edge, base_node, at_vertex,
                            view.theta[out], used, steps, passed)
            steps.pop()
            used.discard(e)
        if D.is_crossing(n):
            passed.pop()

    for b in sorted(view.theta):
        base_edge = view.edge_at(b)
        yield from walk(b, base_edge, dart_node(b), False,
                        view.theta[b], {base_edge}, [b], [])
    nc = len(D.crossings)
    for v in range(nc, D.n_nodes):
        for slot in range(4):
            b = dart(v, slot)
            e = view.edge_at(b)
            yield from walk(b, e, v, True, view.theta[b], {e}, [b], [])


# ---------------------------------------------------------------------------
# Canonical form / isomorphism up to relabelling.

def _encode_from(D: MarkedGraphDiagram, view: MapView, root: int) -> tuple:
    node_id: dict[int, int] = {}
    node_off: dict[int, int] = {}
    order: list[int] = []

    def admit(n: int, arrival_slot: int) -> None:
        node_id[n] = len(order)
        # nodes may only be read from rotation offset 0 or 2; pick the
        # one matching the arrival slot's pair so the encoding does not
        # depend on the stored rotation
        node_off[n] = arrival_slot - (arrival_slot % 2)
        order.append(n)

    admit(dart_node(root), dart_slot(root))
    edge_id: dict[int, int] = {}
    desc: list[tuple] = []
    i = 0
    while i < len(order):
        n = order[i]
        off = node_off[n]
        ends = D.node_ends(n)
        row = [0 if D.is_crossing(n) else 1]
        for k in range(4):
            slot = (off + k) % 4
            e = ends[slot]
            if e not in edge_id:
                edge_id[e] = len(edge_id)
                other = view.theta[dart(n, slot)]
                on = dart_node(other)
                if on not in node_id:
                    admit(on, dart_slot(other))
            row.append(edge_id[e])
        desc.append(tuple(row))
        i += 1
    return tuple(desc)


def canonical_form(D: MarkedGraphDiagram) -> tuple:
    """Canonical encoding invariant under edge relabelling, node
    reordering, and rotation-by-two of any node."""
    view = map_view(D)
    dsu = view.node_components
    comps: dict[int, list[int]] = {}
    for n in range(D.n_nodes):
        comps.setdefault(dsu.find(n), []).append(n)
    encodings = []
    for nodes in comps.values():
        best = None
        for n in nodes:
            for slot in (0, 2):
                enc = _encode_from(D, view, dart(n, slot))
                if best is None or enc < best:
                    best = enc
        encodings.append(best)
    return (tuple(sorted(encodings)), D.free_loops)


def is_isomorphic(D1: MarkedGraphDiagram, D2: MarkedGraphDiagram) -> bool:
    return canonical_form(D1) == canonical_form(D2)
