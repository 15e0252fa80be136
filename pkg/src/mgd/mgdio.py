"""Text format and JSON reporting for marked graph diagrams.

The document grammar is line oriented:

* ``mgd 1``        format version header (optional on input)
* ``name <text>``  optional diagram name
* ``flag <word>``  optional annotations (``admissible``, ``orientable``,
  ``nonorientable``); annotations are trusted, never computed
* ``C a b c d``    classical crossing, slots counterclockwise, over
  strand on slots 0 and 2
* ``V a b c d``    marked vertex, positive smoothing joins (a,b), (c,d)
* ``O k``          k crossing-free circles
* ``# ...``        comment

Serialization is canonical (header, flags sorted, C lines, V lines,
O line) so that parse followed by serialize is idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    LaurentInt,
    poly4_eval_int,
    poly4_eval_laurent,
    poly4_eval_sqrtgauss,
    sqrtgauss_scale,
)
from .diagram import (
    MarkedGraphDiagram,
    NonOrientable,
    dhat_components,
    graph_components,
    orient,
    resolve,
    validate,
)
from .invariants import t_plus
from .states import classify, legal_states, state_sum, state_weight

KNOWN_FLAGS = {"admissible", "orientable", "nonorientable"}


class MgdSyntaxError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class MgdDocument:
    diagram: MarkedGraphDiagram
    name: str | None = None
    flags: frozenset = frozenset()


def parse(text: str) -> MgdDocument:
    crossings: list[tuple[int, ...]] = []
    vertices: list[tuple[int, ...]] = []
    free_loops = 0
    name = None
    flags = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        head = parts[0]
        if head == "mgd":
            if parts[1:] != ["1"]:
                raise MgdSyntaxError(line_no, f"unsupported format version {parts[1:]}")
        elif head == "name":
            name = " ".join(parts[1:]) or None
        elif head == "flag":
            for f in parts[1:]:
                if f not in KNOWN_FLAGS:
                    raise MgdSyntaxError(line_no, f"unknown flag {f!r}")
                flags.add(f)
        elif head in ("C", "V"):
            if len(parts) != 5:
                raise MgdSyntaxError(line_no, f"{head} record needs 4 edge labels")
            try:
                ends = tuple(int(p) for p in parts[1:])
            except ValueError:
                raise MgdSyntaxError(line_no, "edge labels must be integers") from None
            if any(e <= 0 for e in ends):
                raise MgdSyntaxError(line_no, "edge labels must be positive")
            (crossings if head == "C" else vertices).append(ends)
        elif head == "O":
            if len(parts) != 2 or not parts[1].isdigit():
                raise MgdSyntaxError(line_no, "O record needs a non-negative count")
            free_loops += int(parts[1])
        else:
            raise MgdSyntaxError(line_no, f"unknown record {head!r}")
    D = MarkedGraphDiagram.build(crossings, vertices, free_loops)
    problems = validate(D)
    if problems:
        raise MgdSyntaxError(0, "invalid diagram: " + "; ".join(problems))
    return MgdDocument(D, name, frozenset(flags))


def serialize(doc: MgdDocument | MarkedGraphDiagram) -> str:
    if isinstance(doc, MarkedGraphDiagram):
        doc = MgdDocument(doc)
    lines = ["mgd 1"]
    if doc.name:
        lines.append(f"name {doc.name}")
    if doc.flags:
        lines.append("flag " + " ".join(sorted(doc.flags)))
    for c in doc.diagram.crossings:
        lines.append("C " + " ".join(map(str, c.ends)))
    for v in doc.diagram.vertices:
        lines.append("V " + " ".join(map(str, v.ends)))
    if doc.diagram.free_loops:
        lines.append(f"O {doc.diagram.free_loops}")
    return "\n".join(lines) + "\n"


def report(D: MarkedGraphDiagram, with_states: bool = False, limit: int | None = None) -> dict:
    """JSON-ready summary of the diagram's invariants."""
    p = state_sum(D, limit)
    o = orient(D)
    rp = resolve(D, "+")
    rm = resolve(D, "-")
    tp = t_plus(D)
    out = {
        "crossings": len(D.crossings),
        "vertices": len(D.vertices),
        "free_loops": D.free_loops,
        "dhat_components": dhat_components(D).count,
        "graph_components": graph_components(D),
        "orientable": not isinstance(o, NonOrientable),
        "t_plus": tp,
        "state_sum": p.render(),
        "R_prime": (poly4_eval_laurent(p) * LaurentInt.z_power(tp)).render(),
        "S_prime": poly4_eval_int(p),
        "Q": sqrtgauss_scale(poly4_eval_sqrtgauss(p), tp).render(),
        "resolutions": {
            "plus": {"crossings": len(rp.crossings), "components": graph_components(rp)},
            "minus": {"crossings": len(rm.crossings), "components": graph_components(rm)},
        },
    }
    if with_states:
        listing = []
        for sigma in legal_states(D, limit):
            listing.append(
                {
                    "labels": "".join(map(str, sigma)),
                    "class": classify(D, sigma).value,
                    "weight": state_weight(D, sigma).render(),
                }
            )
        out["states"] = listing
    return out
