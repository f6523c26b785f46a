"""Line-oriented text format for finite categories.

::

    category <name>
    object <id>
    mor <id> : <src> -> <tgt>
    comp <g> . <f> = <h>

Identities are implicit and named ``id_<obj>``; so are composites with an
identity factor. ``#`` starts a comment.
"""
from __future__ import annotations

import re
from pathlib import Path

from .category import CategoryDescription, FinCategory, default_identity_name, validate_category
from .errors import ParseError

ID_RE = re.compile(r"^[A-Za-z0-9_]+$")


def _check_id(token: str, lineno: int) -> str:
    if not ID_RE.match(token):
        raise ParseError(f"invalid id {token!r}", lineno)
    return token


def parse_description(text: str) -> CategoryDescription:
    desc = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        head = tokens[0]
        if desc is None:
            if head != "category" or len(tokens) != 2:
                raise ParseError("expected 'category <name>' as first line", lineno)
            desc = CategoryDescription(_check_id(tokens[1], lineno))
            continue
        if head == "object" and len(tokens) == 2:
            desc.objects.append(_check_id(tokens[1], lineno))
        elif head == "mor" and len(tokens) == 6 and tokens[2] == ":" and tokens[4] == "->":
            desc.morphisms.append(tuple(_check_id(tokens[i], lineno) for i in (1, 3, 5)))
        elif head == "comp" and len(tokens) == 6 and tokens[2] == "." and tokens[4] == "=":
            desc.composites.append(tuple(_check_id(tokens[i], lineno) for i in (1, 3, 5)))
        else:
            raise ParseError(f"cannot parse {raw.strip()!r}", lineno)
    if desc is None:
        raise ParseError("empty category file")
    return desc


def parse_category(text: str) -> FinCategory:
    return validate_category(parse_description(text))


def load_category(path) -> FinCategory:
    return parse_category(Path(path).read_text(encoding="utf-8"))


def serialize(C: FinCategory) -> str:
    """Canonical text for ``C``; requires string ids and ``id_<obj>`` identities."""
    for x in C.objects:
        if not isinstance(x, str) or not ID_RE.match(x):
            raise ValueError(f"object id {x!r} is not serializable; use to_named() first")
        if C.identity[x] != default_identity_name(x):
            raise ValueError(f"identity of {x} must be named {default_identity_name(x)}")
    nonid = sorted(C.non_identity_morphisms())
    for f in nonid:
        if not isinstance(f, str) or not ID_RE.match(f):
            raise ValueError(f"morphism id {f!r} is not serializable; use to_named() first")
    lines = [f"category {C.name}"]
    lines += [f"object {x}" for x in sorted(C.objects)]
    lines += [f"mor {f} : {C.src(f)} -> {C.tgt(f)}" for f in nonid]
    nonid_set = set(nonid)
    pairs = sorted((g, f) for (g, f) in C.table if g in nonid_set and f in nonid_set)
    lines += [f"comp {g} . {f} = {C.table[g, f]}" for g, f in pairs]
    return "\n".join(lines) + "\n"


def _flat(x) -> str:
    if isinstance(x, tuple):
        return "_".join(_flat(y) for y in x)
    return str(x)


def to_named(C: FinCategory, name: str | None = None) -> FinCategory:
    """Relabel ``C`` with serializable string ids.

    Tuple ids are flattened with ``_``; if that produces clashes or invalid
    ids the generic names ``o<i>`` / ``m<j>`` are used instead.
    """
    name = name or _flat(C.name)
    if not ID_RE.match(name):
        name = re.sub(r"[^A-Za-z0-9_]", "_", name)
    obj_map = {x: _flat(x) for x in C.objects}
    if len(set(obj_map.values())) != len(obj_map) or not all(ID_RE.match(v) for v in obj_map.values()):
        obj_map = {x: f"o{i}" for i, x in enumerate(C.objects)}
    mor_map = {C.identity[x]: default_identity_name(obj_map[x]) for x in C.objects}
    for f in C.non_identity_morphisms():
        mor_map[f] = _flat(f)
    names = list(mor_map.values())
    if len(set(names)) != len(names) or not all(ID_RE.match(v) for v in names):
        mor_map = {C.identity[x]: default_identity_name(obj_map[x]) for x in C.objects}
        for j, f in enumerate(C.non_identity_morphisms()):
            mor_map[f] = f"m{j}"
    return C.relabel(obj_map, mor_map, name)
