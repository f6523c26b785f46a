"""Fixture catalog, canonical forms and exhaustive generation of small categories."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product as cartesian
from typing import Iterator

from .category import FinCategory, default_identity_name, from_table, monoid
from .errors import CategoryValidationError, SizeLimitExceeded
from .fileformat import parse_category, serialize

CANONICAL_MOR_CAP = 8
ENUMERATION_CAP = 5


@dataclass(frozen=True)
class Fixture:
    name: str
    category: FinCategory
    strictly_well_founded: bool
    well_founded: bool

    def __post_init__(self):
        if self.strictly_well_founded and not self.well_founded:
            raise ValueError(f"inconsistent labels for {self.name}")


def _chain(name: str, n: int) -> FinCategory:
    objs = [chr(ord("a") + i) for i in range(n)]
    steps = [f"f{i}" for i in range(n - 1)]
    morphisms, names = [], {}
    for i in range(n):
        for j in range(i + 1, n):
            m = steps[i] if j == i + 1 else "f" + "".join(str(k) for k in range(i, j))
            names[i, j] = m
            morphisms.append((m, objs[i], objs[j]))
    comps = [(names[j, k], names[i, j], names[i, k])
             for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)]
    return from_table(name, objs, morphisms, comps)


def _cyclic(name: str, n: int) -> FinCategory:
    elems = ["e"] + (["sigma"] if n == 2 else [f"r{i}" for i in range(1, n)])
    return monoid(name, elems, lambda g, f: elems[(elems.index(g) + elems.index(f)) % n], obj="o")


def catalog() -> list[Fixture]:
    """Named test categories with hand-derived SW / W labels."""
    fx = []

    def add(cat, sw, w):
        fx.append(Fixture(cat.name, cat, sw, w))

    add(from_table("terminal", ["pt"], []), True, True)
    add(from_table("discrete2", ["a", "b"], []), True, True)
    add(from_table("walking_arrow", ["a", "b"], [("f", "a", "b")]), True, True)
    add(from_table("parallel_pair", ["a", "b"], [("f", "a", "b"), ("g", "a", "b")]), True, True)
    add(from_table("span", ["s", "a", "b"], [("p", "s", "a"), ("q", "s", "b")]), True, True)
    add(from_table("cospan", ["a", "b", "t"], [("i", "a", "t"), ("j", "b", "t")]), True, True)
    add(from_table(
        "square", ["a", "b", "c", "d"],
        [("f", "a", "b"), ("g", "a", "c"), ("h", "b", "d"), ("k", "c", "d"), ("diag", "a", "d")],
        [("h", "f", "diag"), ("k", "g", "diag")],
    ), True, True)
    add(_chain("chain3", 3), True, True)
    add(_chain("chain4", 4), True, True)
    add(from_table(
        "walking_iso", ["a", "b"], [("f", "a", "b"), ("finv", "b", "a")],
        [("finv", "f", "id_a"), ("f", "finv", "id_b")],
    ), False, True)
    add(monoid("walking_idempotent", ["e0", "e"], lambda g, f: "e", obj="o"), False, False)
    add(_cyclic("z2", 2), False, False)
    add(_cyclic("z3", 3), False, False)
    # unit adjoined to the left-zero band {a, b}: g . f = g
    add(monoid("idempotent_monoid_2", ["u", "a", "b"], lambda g, f: g, obj="o"), False, False)
    return fx


def fixture(name: str) -> FinCategory:
    for f in catalog():
        if f.name == name:
            return f.category
    raise KeyError(name)


# -- canonical forms -----------------------------------------------------------

def canonical_form(C: FinCategory) -> bytes:
    """Least serialization over all relabelings by ``o<i>`` / ``m<j>``.

    Morphism names are only tried in hom-block order (blocks sorted by their
    relabelled endpoints): any smaller ``mor`` section forces that order, and
    ``mor`` lines precede ``comp`` lines.
    """
    if len(C.arrows) > CANONICAL_MOR_CAP:
        raise SizeLimitExceeded("canonical_form morphism count", CANONICAL_MOR_CAP)
    best = None
    objs = C.objects
    for perm in permutations(range(len(objs))):
        obj_map = {x: f"o{perm[i]}" for i, x in enumerate(objs)}
        blocks = {}
        for f in C.non_identity_morphisms():
            s, t = C.arrows[f]
            blocks.setdefault((obj_map[s], obj_map[t]), []).append(f)
        keys = sorted(blocks)
        for choice in cartesian(*(permutations(blocks[k]) for k in keys)):
            mor_map = {C.identity[x]: default_identity_name(obj_map[x]) for x in objs}
            j = 0
            for block in choice:
                for f in block:
                    mor_map[f] = f"m{j}"
                    j += 1
            text = serialize(C.relabel(obj_map, mor_map, "canon")).encode()
            if best is None or text < best:
                best = text
    return best


def canonical_category(C: FinCategory, name: str = "canon") -> FinCategory:
    D = parse_category(canonical_form(C).decode())
    return D.relabel({x: x for x in D.objects}, {f: f for f in D.morphisms}, name)


# -- exhaustive enumeration ------------------------------------------------------

def _hom_matrices(k: int, budget: int) -> Iterator[tuple]:
    """Non-identity hom-set sizes (row-major ``k x k``) closed under
    composition typing: ``i -> j -> l`` with ``i != l`` forces ``Hom(i, l)``."""
    cells = k * k
    for counts in cartesian(range(budget + 1), repeat=cells):
        if sum(counts) > budget:
            continue
        c = lambda i, j: counts[i * k + j]
        ok = all(
            c(i, l) > 0
            for i in range(k) for j in range(k) for l in range(k)
            if len({i, j, l}) == 3 and c(i, j) > 0 and c(j, l) > 0
        )
        if ok:
            yield counts


def _tables(k: int, counts: tuple) -> Iterator[FinCategory]:
    objs = [f"o{i}" for i in range(k)]
    morphisms = []
    for i in range(k):
        for j in range(k):
            for _ in range(counts[i * k + j]):
                morphisms.append((f"m{len(morphisms)}", objs[i], objs[j]))
    typing = {m: (s, t) for m, s, t in morphisms}
    ident = {x: default_identity_name(x) for x in objs}
    id_set = set(ident.values())
    for x in objs:
        typing[ident[x]] = (x, x)
    cells = [(g, f) for f, _, tf in morphisms for g, sg, _ in morphisms if sg == tf]
    options = {}
    for g, f in cells:
        s, t = typing[f][0], typing[g][1]
        options[g, f] = [h for h, st in typing.items() if st == (s, t) and (h not in id_set or h == ident[s])]
    table = {}

    def comp(g, f):
        if g in id_set:
            return f
        if f in id_set:
            return g
        return table.get((g, f))

    triples = [(h, g, f) for g, f in cells for h, sh, _ in morphisms if sh == typing[g][1]]

    def consistent():
        for h, g, f in triples:
            gf, hg = comp(g, f), comp(h, g)
            if gf is None or hg is None:
                continue
            left, right = comp(h, gf), comp(hg, f)
            if left is not None and right is not None and left != right:
                return False
        return True

    def rec(i):
        if i == len(cells):
            yield dict(table)
            return
        cell = cells[i]
        for h in options[cell]:
            table[cell] = h
            if consistent():
                yield from rec(i + 1)
        table.pop(cell, None)

    for tab in rec(0):
        try:
            yield from_table("enum", objs, morphisms, [(g, f, h) for (g, f), h in tab.items()])
        except CategoryValidationError:
            continue


def enumerate_categories(max_mor: int) -> Iterator[FinCategory]:
    """One category per isomorphism class with ``1 <= |Mor| <= max_mor``,
    canonically labelled, in generation order (object count, then hom sizes,
    then composition table)."""
    if max_mor > ENUMERATION_CAP:
        raise SizeLimitExceeded("enumerate_categories max_mor", ENUMERATION_CAP)
    seen = set()
    for k in range(1, max_mor + 1):
        for counts in _hom_matrices(k, max_mor - k):
            for C in _tables(k, counts):
                form = canonical_form(C)
                if form in seen:
                    continue
                seen.add(form)
                D = parse_category(form.decode())
                yield D.relabel({x: x for x in D.objects}, {f: f for f in D.morphisms}, f"enum{len(seen)}")
