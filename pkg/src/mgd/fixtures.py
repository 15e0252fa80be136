"""Built-in diagram corpus.

Fixtures are shipped as .mgd documents; ``fixture(name)`` parses one,
``all_fixtures()`` yields every (name, document) pair.  Annotation
flags (``admissible``, ``orientable``, ``nonorientable``) are trusted
statements about the presented surface, recorded when the fixture was
constructed and verified; they are never computed at load time.
"""

from __future__ import annotations

from importlib import resources

from .mgdio import MgdDocument, parse


def fixture_names() -> list[str]:
    names = []
    for entry in resources.files(__package__).joinpath("fixtures").iterdir():
        if entry.name.endswith(".mgd"):
            names.append(entry.name[: -len(".mgd")])
    return sorted(names)


def fixture(name: str) -> MgdDocument:
    path = resources.files(__package__).joinpath("fixtures", f"{name}.mgd")
    return parse(path.read_text(encoding="utf-8"))


def all_fixtures() -> list[tuple[str, MgdDocument]]:
    return [(name, fixture(name)) for name in fixture_names()]
