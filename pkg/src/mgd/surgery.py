"""Local rewrite engine for marked graph diagrams.

Every move and the vertex resolutions are expressed as a small surgery:
delete some nodes, cut some edges, create some nodes, and wire the
resulting loose ends together.  ``finish`` reassembles the diagram by
chasing chains of edge remnants and wires between attachment slots.

Port vocabulary:

* ``('keep', node, slot)``   attachment on a surviving original node
* ``('new', handle, slot)``  attachment on a node created by the move
* ``('dang', node, slot)``   loose end left where a deleted node stood
* ``('cut', cid, side)``     loose end at a cut point (side 0 faces the
                             edge's first incidence)

Attachments are chain endpoints; dangling and cut ports are pass-through
connectors.  Each connector must be consumed exactly twice overall (its
edge remnant plus one wire), except on explicitly removed edges; chains
that close without touching an attachment become free loops.

Edges untouched by the surgery keep their labels; every chain through
the surgery site gets a fresh label, smallest unused integers first, in
order of the chain's minimal attachment position.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Crossing, MarkedGraphDiagram, MarkedVertex, dart_node, dart_slot, map_view

Port = tuple
Link = tuple  # (destination port, "piece"|"wire", index)


@dataclass
class SurgeryResult:
    diagram: MarkedGraphDiagram
    node_index: dict  # original node idx / new-node handle -> final node idx
    port_label: dict  # attachment port -> edge label in the new diagram


class Surgery:
    def __init__(self, D: MarkedGraphDiagram):
        self.D = D
        self.view = map_view(D)
        self.deleted: set[int] = set()
        self.removed_edges: set[int] = set()
        self.cuts: dict[int, list[int]] = {}  # edge label -> cut ids, ordered from end0
        self.loop_cuts = 0
        self.loop_pieces: list[tuple[Port, Port]] = []
        self._next_cut = 0
        self.new_nodes: list[tuple[str, tuple]] = []  # (kind, handle)
        self.wires: list[tuple[Port, Port]] = []

    # -- surgery primitives -------------------------------------------------

    def delete_node(self, node: int) -> None:
        self.deleted.add(node)

    def remove_edge(self, label: int) -> None:
        """Drop an edge whose both ends dangle at deleted nodes."""
        self.removed_edges.add(label)

    def cut(self, label: int, near_node: int, near_slot: int) -> tuple[Port, Port]:
        """Cut an edge; returns (near_port, far_port) relative to the
        given incidence.  Later cuts anchored at the other end land
        between this cut and that end."""
        d1, d2 = self.view.edge_darts[label]
        near = 4 * near_node + near_slot % 4
        if near not in (d1, d2):
            raise ValueError(f"edge {label} has no incidence at node {near_node} slot {near_slot}")
        cid = self._next_cut
        self._next_cut += 1
        lst = self.cuts.setdefault(label, [])
        if near == d1:
            lst.insert(0, cid)
            return ("cut", cid, 0), ("cut", cid, 1)
        lst.append(cid)
        return ("cut", cid, 1), ("cut", cid, 0)

    def cut_loop(self) -> tuple[Port, Port]:
        """Open one free loop into an arc; returns its two ends."""
        if self.loop_cuts >= self.D.free_loops:
            raise ValueError("no free loop available to cut")
        self.loop_cuts += 1
        cid = self._next_cut
        self._next_cut += 1
        # a cut circle is a single arc between the two sides of the cut
        self.loop_pieces.append((("cut", cid, 0), ("cut", cid, 1)))
        return ("cut", cid, 0), ("cut", cid, 1)

    def new_crossing(self) -> tuple:
        handle = ("newc", sum(1 for k, _ in self.new_nodes if k == "c"))
        self.new_nodes.append(("c", handle))
        return handle

    def new_vertex(self) -> tuple:
        handle = ("newv", sum(1 for k, _ in self.new_nodes if k == "v"))
        self.new_nodes.append(("v", handle))
        return handle

    def wire(self, p1: Port, p2: Port) -> None:
        if p1 == p2:
            raise ValueError("cannot wire a port to itself")
        self.wires.append((p1, p2))

    def wire_dangling(self, n1: int, s1: int, n2: int, s2: int) -> None:
        self.wire(("dang", n1, s1 % 4), ("dang", n2, s2 % 4))

    def new_port(self, handle, slot: int) -> Port:
        return ("new", handle, slot % 4)

    def end_port(self, node: int, slot: int) -> Port:
        """Port for an original incidence: 'keep' or 'dang' as appropriate."""
        kind = "dang" if node in self.deleted else "keep"
        return (kind, node, slot % 4)

    # -- reassembly ---------------------------------------------------------

    def finish(self) -> SurgeryResult:
        D = self.D
        pieces: list[tuple[Port, Port]] = list(self.loop_pieces)
        piece_plain_edge: dict[int, int] = {}  # piece idx -> label of a whole kept edge

        for label in sorted(self.view.edge_darts):
            d1, d2 = self.view.edge_darts[label]
            if label in self.removed_edges:
                if dart_node(d1) not in self.deleted or dart_node(d2) not in self.deleted:
                    raise ValueError(f"removed edge {label} still attached")
                continue
            end0 = self.end_port(dart_node(d1), dart_slot(d1))
            end1 = self.end_port(dart_node(d2), dart_slot(d2))
            cids = self.cuts.get(label, [])
            if not cids:
                if end0[0] == "keep" and end1[0] == "keep":
                    piece_plain_edge[len(pieces)] = label
                pieces.append((end0, end1))
            else:
                stops: list[Port] = [end0]
                for cid in cids:
                    stops.append(("cut", cid, 0))
                    stops.append(("cut", cid, 1))
                stops.append(end1)
                for i in range(0, len(stops), 2):
                    pieces.append((stops[i], stops[i + 1]))

        conn: dict[Port, list[Link]] = {}

        def add(p: Port, q: Port, kind: str, idx: int) -> None:
            conn.setdefault(p, []).append((q, kind, idx))

        for i, (p, q) in enumerate(pieces):
            add(p, q, "piece", i)
            add(q, p, "piece", i)
        for i, (p, q) in enumerate(self.wires):
            add(p, q, "wire", i)
            add(q, p, "wire", i)

        # final node numbering: surviving crossings, new crossings,
        # surviving vertices, new vertices
        node_index: dict = {}
        final_nodes: list[tuple[str, object]] = []
        nc = len(D.crossings)
        for n in range(nc):
            if n not in self.deleted:
                node_index[n] = len(final_nodes)
                final_nodes.append(("c", n))
        for kind, handle in self.new_nodes:
            if kind == "c":
                node_index[handle] = len(final_nodes)
                final_nodes.append(("c", handle))
        for n in range(nc, D.n_nodes):
            if n not in self.deleted:
                node_index[n] = len(final_nodes)
                final_nodes.append(("v", n))
        for kind, handle in self.new_nodes:
            if kind == "v":
                node_index[handle] = len(final_nodes)
                final_nodes.append(("v", handle))

        terminals: list[Port] = []
        for kind, key in final_nodes:
            tag = "keep" if isinstance(key, int) else "new"
            terminals.extend((tag, key, s) for s in range(4))

        for p in terminals:
            if len(conn.get(p, [])) != 1:
                raise ValueError(f"attachment {p} has {len(conn.get(p, []))} connections, wanted 1")
        for p, links in conn.items():
            if p[0] in ("dang", "cut") and len(links) != 2:
                raise ValueError(f"connector {p} has {len(links)} connections, wanted 2")

        def other_link(port: Port, came: Link) -> Link:
            a, b = conn[port]
            return b if a == came else a

        # chase chains attachment-to-attachment
        chain_of: dict[Port, int] = {}
        chains: list[tuple[Port, Port, int | None]] = []
        connector_seen: set[Port] = set()
        for start in terminals:
            if start in chain_of:
                continue
            dest, kind, idx = conn[start][0]
            label_hint = piece_plain_edge.get(idx) if kind == "piece" else None
            prev = start
            while dest[0] in ("dang", "cut"):
                label_hint = None
                connector_seen.add(dest)
                nxt = other_link(dest, (prev, kind, idx))
                prev = dest
                dest, kind, idx = nxt
            chain_of[start] = len(chains)
            chain_of[dest] = len(chains)
            chains.append((start, dest, label_hint))

        # untouched connectors form closed cycles -> free loops
        leftover = {
            p for p in conn if p[0] in ("dang", "cut") and p not in connector_seen
        }
        extra_loops = 0
        while leftover:
            start = min(leftover)
            cur = start
            came = None
            while True:
                leftover.discard(cur)
                links = conn[cur]
                link = links[0] if came is None or links[1] == came else links[1]
                came = (cur, link[1], link[2])
                cur = link[0]
                if cur == start:
                    break
                if cur not in leftover:
                    raise AssertionError("free-loop cycle touched a used port")
            extra_loops += 1

        def final_pos(p: Port) -> tuple[int, int]:
            return node_index[p[1]], p[2]

        # assign labels: untouched edges keep theirs, chains through the
        # site get the smallest unused integers
        labels: dict[int, int] = {}
        used: set[int] = set()
        for ci, (_, _, hint) in enumerate(chains):
            if hint is not None:
                labels[ci] = hint
                used.add(hint)
        fresh = sorted(
            (ci for ci in range(len(chains)) if ci not in labels),
            key=lambda ci: min(final_pos(chains[ci][0]), final_pos(chains[ci][1])),
        )
        nxt = 1
        for ci in fresh:
            while nxt in used:
                nxt += 1
            labels[ci] = nxt
            used.add(nxt)

        slot_label: dict[tuple[int, int], int] = {}
        port_label: dict[Port, int] = {}
        for ci, (a, b, _) in enumerate(chains):
            for p in (a, b):
                slot_label[final_pos(p)] = labels[ci]
                port_label[p] = labels[ci]

        crossings = []
        vertices = []
        for idx, (kind, _) in enumerate(final_nodes):
            ends = tuple(slot_label[(idx, s)] for s in range(4))
            if kind == "c":
                crossings.append(Crossing(ends))
            else:
                vertices.append(MarkedVertex(ends))
        loops = D.free_loops - self.loop_cuts + extra_loops
        out = MarkedGraphDiagram(tuple(crossings), tuple(vertices), loops)
        return SurgeryResult(out, node_index, port_label)
