"""Finite categories given by explicit composition tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (
    AssociativityViolation,
    CategoryValidationError,
    DuplicateId,
    IllTypedComposite,
    MissingComposite,
    UnitLawViolation,
    UnknownObject,
)

Id = Hashable


def sort_key(x):
    """Total order on the ids used by this package (ints, strings, nested tuples)."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(sort_key(y) for y in x))
    return (3, repr(x))


def default_identity_name(obj) -> str:
    return f"id_{obj}"


@dataclass
class CategoryDescription:
    """Unvalidated category data, as read from a file.

    Identities are implicit; ``identities`` only overrides their names.
    Composites with an identity factor may be omitted.
    """

    name: str
    objects: list = field(default_factory=list)
    morphisms: list = field(default_factory=list)  # (id, src, tgt), non-identity
    composites: list = field(default_factory=list)  # (g, f, h) meaning g . f = h
    identities: dict | None = None


class FinCategory:
    """A finite category with a total composition table.

    ``arrows`` maps every morphism id (identities included) to its
    ``(source, target)``; ``table[(g, f)]`` is ``g . f`` and is defined exactly
    on composable pairs. Instances are treated as immutable.
    """

    __slots__ = ("name", "objects", "arrows", "identity", "table", "_hom", "_ids", "_obj_index", "_mor_index")

    def __init__(self, name: str, objects: Sequence, arrows: Mapping, identity: Mapping, table: Mapping):
        self.name = name
        self.objects = tuple(objects)
        self.arrows = dict(arrows)
        self.identity = dict(identity)
        self.table = dict(table)
        hom = {(x, y): [] for x in self.objects for y in self.objects}
        for f, (s, t) in self.arrows.items():
            hom[s, t].append(f)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._ids = frozenset(self.identity.values())
        self._obj_index = {x: i for i, x in enumerate(self.objects)}
        self._mor_index = {f: i for i, f in enumerate(self.arrows)}

    # -- basic structure -------------------------------------------------
    @property
    def morphisms(self) -> tuple:
        return tuple(self.arrows)

    def src(self, f):
        return self.arrows[f][0]

    def tgt(self, f):
        return self.arrows[f][1]

    def compose(self, g, f):
        """``g . f`` (first ``f``, then ``g``)."""
        try:
            return self.table[g, f]
        except KeyError:
            raise ValueError(f"{g} . {f} is not composable in {self.name}") from None

    def compose_path(self, path: Sequence):
        """Compose ``path[0]`` first, ``path[-1]`` last."""
        result = path[0]
        for g in path[1:]:
            result = self.table[g, result]
        return result

    def hom(self, x, y) -> tuple:
        return self._hom[x, y]

    def is_identity(self, f) -> bool:
        return f in self._ids

    def non_identity_morphisms(self) -> tuple:
        return tuple(f for f in self.arrows if f not in self._ids)

    def object_index(self, x) -> int:
        return self._obj_index[x]

    def morphism_index(self, f) -> int:
        return self._mor_index[f]

    def inverse(self, f):
        """The two-sided inverse of ``f``, or ``None``."""
        s, t = self.arrows[f]
        for g in self._hom[t, s]:
            if self.table[g, f] == self.identity[s] and self.table[f, g] == self.identity[t]:
                return g
        return None

    def is_iso(self, f) -> bool:
        return self.inverse(f) is not None

    def isomorphisms(self, x, y) -> tuple:
        return tuple(f for f in self._hom[x, y] if self.is_iso(f))

    def is_idempotent(self, f) -> bool:
        s, t = self.arrows[f]
        return s == t and self.table[f, f] == f

    def composable_pairs(self) -> Iterable[tuple]:
        for f, (_, t) in self.arrows.items():
            for g in self.morphisms_from(t):
                yield g, f

    def morphisms_from(self, x) -> tuple:
        return tuple(f for y in self.objects for f in self._hom[x, y])

    def morphisms_to(self, y) -> tuple:
        return tuple(f for x in self.objects for f in self._hom[x, y])

    # -- derived categories ----------------------------------------------
    def full_subcategory(self, objects: Iterable, name: str | None = None) -> "FinCategory":
        keep = [x for x in self.objects if x in set(objects)]
        keep_set = set(keep)
        arrows = {f: st for f, st in self.arrows.items() if st[0] in keep_set and st[1] in keep_set}
        table = {(g, f): h for (g, f), h in self.table.items() if g in arrows and f in arrows}
        identity = {x: self.identity[x] for x in keep}
        return FinCategory(name or f"{self.name}|sub", keep, arrows, identity, table)

    def relabel(self, obj_map: Mapping, mor_map: Mapping, name: str | None = None) -> "FinCategory":
        """Rename objects and morphisms along bijections."""
        arrows = {mor_map[f]: (obj_map[s], obj_map[t]) for f, (s, t) in self.arrows.items()}
        identity = {obj_map[x]: mor_map[i] for x, i in self.identity.items()}
        table = {(mor_map[g], mor_map[f]): mor_map[h] for (g, f), h in self.table.items()}
        return FinCategory(name or self.name, [obj_map[x] for x in self.objects], arrows, identity, table)

    def sorted(self) -> "FinCategory":
        """Same category with objects and morphisms listed in id order
        (identities first, in object order)."""
        objs = sorted(self.objects, key=sort_key)
        ids = [self.identity[x] for x in objs]
        rest = sorted(self.non_identity_morphisms(), key=sort_key)
        arrows = {f: self.arrows[f] for f in ids + rest}
        table = {k: self.table[k] for k in sorted(self.table, key=sort_key)}
        return FinCategory(self.name, objs, arrows, self.identity, table)

    # -- dunder ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self.name == other.name
            and set(self.objects) == set(other.objects)
            and len(self.objects) == len(other.objects)
            and self.arrows == other.arrows
            and self.identity == other.identity
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.name, frozenset(self.objects), len(self.arrows), len(self.table)))

    def __repr__(self):
        return f"FinCategory({self.name!r}, {len(self.objects)} objects, {len(self.arrows)} morphisms)"

    def __len__(self):
        return len(self.arrows)


def check_laws(C: FinCategory) -> list:
    """All category-law violations of a fully tabulated category."""
    violations = []
    for x in C.objects:
        i = C.identity.get(x)
        if i is None or C.arrows.get(i) != (x, x):
            violations.append(UnitLawViolation(i, f"identity of {x} missing or ill-typed"))
    if violations:
        return violations
    for f, (s, t) in C.arrows.items():
        for g in C.morphisms_from(t):
            h = C.table.get((g, f))
            if h is None:
                violations.append(MissingComposite(g, f))
            elif C.arrows.get(h) != (s, C.tgt(g)):
                violations.append(IllTypedComposite(g, f, h, "composite has wrong source/target"))
    composable = {(g, f) for g, f in C.composable_pairs()}
    for key, h in C.table.items():
        if key not in composable:
            violations.append(IllTypedComposite(key[0], key[1], h, "pair is not composable"))
    if violations:
        return violations
    for f, (s, t) in C.arrows.items():
        if C.table[C.identity[t], f] != f:
            violations.append(UnitLawViolation(f, "left"))
        if C.table[f, C.identity[s]] != f:
            violations.append(UnitLawViolation(f, "right"))
    if violations:
        return violations
    return _associativity_violations(C)


def _associativity_violations(C: FinCategory) -> list:
    out = []
    table = C.table
    for f, (_, t) in C.arrows.items():
        for g in C.morphisms_from(t):
            gf = table[g, f]
            for h in C.morphisms_from(C.tgt(g)):
                if table[h, gf] != table[table[h, g], f]:
                    out.append(AssociativityViolation(h, g, f))
    return out


def validate_category(raw: CategoryDescription) -> FinCategory:
    """Build a :class:`FinCategory` from a description or raise
    :class:`CategoryValidationError` listing every violation."""
    violations = []
    seen_objects = set()
    for x in raw.objects:
        if x in seen_objects:
            violations.append(DuplicateId(x))
        seen_objects.add(x)
    names = dict(raw.identities or {})
    identity = {x: names.get(x, default_identity_name(x)) for x in raw.objects}
    arrows = {}
    for x in raw.objects:
        i = identity[x]
        if i in arrows:
            violations.append(DuplicateId(i))
        arrows[i] = (x, x)
    for f, s, t in raw.morphisms:
        if f in arrows:
            violations.append(DuplicateId(f))
            continue
        for end in (s, t):
            if end not in seen_objects:
                violations.append(UnknownObject(f, end))
        arrows[f] = (s, t)
    if violations:
        raise CategoryValidationError(violations)

    id_set = set(identity.values())
    table = {}
    for f, (s, t) in arrows.items():
        table[identity[t], f] = f
        table[f, identity[s]] = f
    explicit = {}
    for g, f, h in raw.composites:
        if g not in arrows or f not in arrows or h not in arrows:
            missing = [m for m in (g, f, h) if m not in arrows]
            violations.append(IllTypedComposite(g, f, h, f"unknown morphism {missing[0]}"))
            continue
        if arrows[g][0] != arrows[f][1]:
            violations.append(IllTypedComposite(g, f, h, "pair is not composable"))
            continue
        if arrows[h] != (arrows[f][0], arrows[g][1]):
            violations.append(IllTypedComposite(g, f, h, "composite has wrong source/target"))
            continue
        if g in id_set or f in id_set:
            if table[g, f] != h:
                violations.append(UnitLawViolation(f if g in id_set else g, "left" if g in id_set else "right"))
            continue
        if (g, f) in explicit and explicit[g, f] != h:
            violations.append(IllTypedComposite(g, f, h, f"conflicts with {explicit[g, f]}"))
            continue
        explicit[g, f] = h
    table.update(explicit)
    for f, (_, t) in arrows.items():
        if f in id_set:
            continue
        for g, (s2, _) in arrows.items():
            if s2 == t and g not in id_set and (g, f) not in table:
                violations.append(MissingComposite(g, f))
    if violations:
        raise CategoryValidationError(violations)
    C = FinCategory(raw.name, raw.objects, arrows, identity, table)
    violations = _associativity_violations(C)
    if violations:
        raise CategoryValidationError(violations)
    return C


def from_table(name: str, objects: Sequence, morphisms: Sequence, composites: Iterable = ()) -> FinCategory:
    """Convenience constructor: ``morphisms`` are ``(id, src, tgt)`` triples of
    non-identity arrows and ``composites`` are ``(g, f, h)`` triples."""
    return validate_category(CategoryDescription(name, list(objects), list(morphisms), list(composites)))


def monoid(name: str, elements: Sequence, mult, obj="*") -> FinCategory:
    """One-object category from a monoid; ``elements[0]`` is the unit and
    ``mult(g, f)`` is ``g . f``."""
    unit, *rest = elements
    comps = [(g, f, mult(g, f)) for g, f in cartesian(rest, rest)]
    rename = {unit: default_identity_name(obj)}
    comps = [(g, f, rename.get(h, h)) for g, f, h in comps]
    return from_table(name, [obj], [(e, obj, obj) for e in rest], comps)
