"""Line-oriented category text format.

Directives: `category`, `object`, `morphism f : A -> B`,
`compose g . f = h`, `class Name = { f g h }`.  `#` starts a comment.
Identities are implicit as id_<obj>; compose lines involving identities may be
omitted.  Unknown directives are fatal.
"""

from __future__ import annotations

import re

from .fincat import FinCat


class ParseError(Exception):
    pass


_MOR_RE = re.compile(r"^(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$")
_COMP_RE = re.compile(r"^(\S+)\s*\.\s*(\S+)\s*=\s*(\S+)$")
_CLASS_RE = re.compile(r"^(\S+)\s*=\s*\{([^}]*)\}$")


def parse_category(text: str):
    """Parse the format; returns (FinCat, classes: dict[str, set[str]]).

    The composition table is completed with identity composites; genuinely
    missing composites surface later in validate_category.
    """
    name = "category"
    objects: list[str] = []
    arrows: dict[str, tuple[str, str]] = {}
    comp: dict[tuple[str, str], str] = {}
    classes: dict[str, set[str]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "category":
            name = rest or name
        elif head == "object":
            if not rest or " " in rest:
                raise ParseError(f"line {lineno}: malformed object directive")
            objects.append(rest)
        elif head == "morphism":
            m = _MOR_RE.match(rest)
            if not m:
                raise ParseError(f"line {lineno}: malformed morphism directive")
            arrows[m.group(1)] = (m.group(2), m.group(3))
        elif head == "compose":
            m = _COMP_RE.match(rest)
            if not m:
                raise ParseError(f"line {lineno}: malformed compose directive")
            comp[(m.group(1), m.group(2))] = m.group(3)
        elif head == "class":
            m = _CLASS_RE.match(rest)
            if not m:
                raise ParseError(f"line {lineno}: malformed class directive")
            members = {w for w in re.split(r"[\s,]+", m.group(2).strip()) if w}
            classes[m.group(1)] = members
        else:
            raise ParseError(f"line {lineno}: unknown directive {head!r}")

    identities = {x: f"id_{x}" for x in objects}
    morphisms: dict[str, tuple[str, str]] = {identities[x]: (x, x) for x in objects}
    for f, (d, c) in arrows.items():
        if d not in objects or c not in objects:
            raise ParseError(f"morphism {f!r} references unknown object")
        if f in morphisms and morphisms[f] != (d, c):
            raise ParseError(f"morphism {f!r} declared twice with different endpoints")
        morphisms[f] = (d, c)

    table: dict[tuple[str, str], str] = {}
    for g, (dg, _) in morphisms.items():
        for f, (df, cf) in morphisms.items():
            if cf != dg:
                continue
            if f == identities[df]:
                table[(g, f)] = g
            elif g == identities[dg]:
                table[(g, f)] = f
            elif (g, f) in comp:
                table[(g, f)] = comp[(g, f)]
    for (g, f), h in comp.items():
        for m in (g, f, h):
            if m not in morphisms:
                raise ParseError(f"compose directive references unknown morphism {m!r}")
        table[(g, f)] = h

    C = FinCat(name, tuple(objects), morphisms, identities, table)
    for cname, members in classes.items():
        unknown = members - set(morphisms)
        if unknown:
            raise ParseError(f"class {cname}: unknown morphisms {sorted(unknown)}")
    return C, classes


def serialize_category(C: FinCat, classes: dict[str, set[str]] | None = None) -> str:
    """Canonical form: objects, morphisms, non-identity composites, classes, all sorted."""
    lines = [f"category {C.name}"]
    for x in C.objects:
        lines.append(f"object {x}")
    for m in C.morphisms:
        if not C.is_identity(m):
            d, c = C.morphisms[m]
            lines.append(f"morphism {m} : {d} -> {c}")
    for (g, f), h in sorted(C.comp.items()):
        if C.is_identity(g) or C.is_identity(f):
            continue
        lines.append(f"compose {g} . {f} = {h}")
    for cname in sorted(classes or {}):
        members = " ".join(sorted(classes[cname]))
        lines.append(f"class {cname} = {{ {members} }}")
    return "\n".join(lines) + "\n"


def load_category(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_category(fh.read())
