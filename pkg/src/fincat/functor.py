"""Functors, natural transformations and exhaustive search over both."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator, Mapping, Sequence

from .caps import check_functor_count
from .category import FinCategory


@dataclass(frozen=True)
class Decision:
    """A yes/no answer together with whatever certifies it."""

    holds: bool
    witness: Any = None

    def __bool__(self):
        return self.holds


class Functor:
    __slots__ = ("source", "target", "object_map", "morphism_map", "_key")

    def __init__(self, source: FinCategory, target: FinCategory, object_map: Mapping, morphism_map: Mapping):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.morphism_map = dict(morphism_map)
        self._key = (
            tuple(self.object_map[x] for x in source.objects),
            tuple(self.morphism_map[f] for f in source.morphisms),
        )

    def ob(self, x):
        return self.object_map[x]

    def mor(self, f):
        return self.morphism_map[f]

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Functor({self.source.name} -> {self.target.name}, {self.object_map})"


class NatTransformation:
    __slots__ = ("source_functor", "target_functor", "components", "_key")

    def __init__(self, source_functor: Functor, target_functor: Functor, components: Mapping):
        self.source_functor = source_functor
        self.target_functor = target_functor
        self.components = dict(components)
        self._key = tuple(self.components[x] for x in source_functor.source.objects)

    def __getitem__(self, x):
        return self.components[x]

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        if not isinstance(other, NatTransformation):
            return NotImplemented
        return (
            self.source_functor == other.source_functor
            and self.target_functor == other.target_functor
            and self._key == other._key
        )

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"NatTransformation({self.components})"


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, {x: x for x in C.objects}, {f: f for f in C.morphisms})


def inclusion_functor(sub: FinCategory, C: FinCategory) -> Functor:
    return Functor(sub, C, {x: x for x in sub.objects}, {f: f for f in sub.morphisms})


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G . F``."""
    return Functor(
        F.source,
        G.target,
        {x: G.object_map[F.object_map[x]] for x in F.source.objects},
        {f: G.morphism_map[F.morphism_map[f]] for f in F.source.morphisms},
    )


def functor_violations(F: Functor) -> list[str]:
    C, D = F.source, F.target
    out = []
    targets = set(D.objects)
    for x in C.objects:
        if F.object_map.get(x) not in targets:
            out.append(f"object {x} maps outside {D.name}")
    if out:
        return out
    for f, (s, t) in C.arrows.items():
        Ff = F.morphism_map.get(f)
        if Ff not in D.arrows or D.arrows[Ff] != (F.object_map[s], F.object_map[t]):
            out.append(f"{f} is not sent to a morphism {F.object_map[s]} -> {F.object_map[t]}")
    if out:
        return out
    for x in C.objects:
        if F.morphism_map[C.identity[x]] != D.identity[F.object_map[x]]:
            out.append(f"identity of {x} not preserved")
    for (g, f), h in C.table.items():
        if D.table[F.morphism_map[g], F.morphism_map[f]] != F.morphism_map[h]:
            out.append(f"composite {g} . {f} not preserved")
    return out


def is_functor(F: Functor) -> bool:
    return not functor_violations(F)


def identity_transformation(F: Functor) -> NatTransformation:
    D = F.target
    return NatTransformation(F, F, {x: D.identity[F.object_map[x]] for x in F.source.objects})


def vertical_compose(beta: NatTransformation, alpha: NatTransformation) -> NatTransformation:
    """``beta . alpha`` for ``alpha: F => G`` and ``beta: G => H``."""
    D = alpha.source_functor.target
    comps = {x: D.compose(beta.components[x], alpha.components[x]) for x in alpha.components}
    return NatTransformation(alpha.source_functor, beta.target_functor, comps)


def is_natural(eta: NatTransformation) -> bool:
    F, G = eta.source_functor, eta.target_functor
    C, D = F.source, F.target
    for f, (x, y) in C.arrows.items():
        if D.table[G.morphism_map[f], eta.components[x]] != D.table[eta.components[y], F.morphism_map[f]]:
            return False
    return True


# -- enumeration -------------------------------------------------------------

def iter_functors(
    C: FinCategory,
    D: FinCategory,
    object_candidates: Mapping | None = None,
) -> Iterator[Functor]:
    """All functors ``C -> D`` in lexicographic order of (object map,
    morphism map), positions ordered as in ``C`` and values as in ``D``.

    ``object_candidates`` optionally restricts the image of each object.
    """
    objs = C.objects
    n_obj = len(objs)
    obj_pos = {x: i for i, x in enumerate(objs)}
    cands = []
    for x in objs:
        allowed = D.objects if object_candidates is None else object_candidates.get(x, D.objects)
        allowed = set(allowed)
        cands.append([y for y in D.objects if y in allowed])

    nonid = C.non_identity_morphisms()
    # morphisms whose endpoints are both fixed once object position i is assigned
    hom_checks = [[] for _ in range(n_obj)]
    for f in nonid:
        s, t = C.arrows[f]
        hom_checks[max(obj_pos[s], obj_pos[t])].append((s, t))
    mor_pos = {f: k for k, f in enumerate(nonid)}
    # composites g.f = h (g, f non-identity) checkable once position k is assigned
    comp_checks = [[] for _ in range(len(nonid))]
    for (g, f), h in C.table.items():
        if g in mor_pos and f in mor_pos:
            last = max(mor_pos[g], mor_pos[f], mor_pos.get(h, -1))
            comp_checks[last].append((g, f, h))

    omap: dict = {}
    mmap: dict = {}
    Dtable = D.table
    Dhom = D.hom

    def assign_morphisms(k):
        if k == len(nonid):
            yield Functor(C, D, omap, mmap)
            return
        f = nonid[k]
        s, t = C.arrows[f]
        for cand in Dhom(omap[s], omap[t]):
            mmap[f] = cand
            if all(Dtable[mmap[g], mmap[ff]] == mmap[h] for g, ff, h in comp_checks[k]):
                yield from assign_morphisms(k + 1)
        mmap.pop(f, None)

    def assign_objects(i):
        if i == n_obj:
            for x in objs:
                mmap[C.identity[x]] = D.identity[omap[x]]
            yield from assign_morphisms(0)
            for x in objs:
                del mmap[C.identity[x]]
            return
        x = objs[i]
        for y in cands[i]:
            omap[x] = y
            if all(Dhom(omap[s], omap[t]) for s, t in hom_checks[i]):
                yield from assign_objects(i + 1)
        omap.pop(x, None)

    if n_obj == 0:
        yield Functor(C, D, {}, {})
        return
    yield from assign_objects(0)


def enumerate_functors(C: FinCategory, D: FinCategory, object_candidates: Mapping | None = None) -> list[Functor]:
    """Materialised :func:`iter_functors`; raises ``SizeLimitExceeded`` past the cap."""
    out = []
    for F in iter_functors(C, D, object_candidates):
        out.append(F)
        check_functor_count(len(out))
    return out


def iter_natural_transformations(
    F: Functor,
    G: Functor,
    component_candidates: Mapping | None = None,
) -> Iterator[NatTransformation]:
    C, D = F.source, F.target
    objs = C.objects
    pos = {x: i for i, x in enumerate(objs)}
    checks = [[] for _ in objs]
    for f in C.non_identity_morphisms():
        x, y = C.arrows[f]
        checks[max(pos[x], pos[y])].append((f, x, y))
    comps: dict = {}
    table = D.table

    def rec(i):
        if i == len(objs):
            yield NatTransformation(F, G, comps)
            return
        x = objs[i]
        options = D.hom(F.object_map[x], G.object_map[x])
        if component_candidates is not None and x in component_candidates:
            allowed = set(component_candidates[x])
            options = [c for c in options if c in allowed]
        for c in options:
            comps[x] = c
            if all(
                table[G.morphism_map[f], comps[a]] == table[comps[b], F.morphism_map[f]]
                for f, a, b in checks[i]
            ):
                yield from rec(i + 1)
        comps.pop(x, None)

    if not objs:
        yield NatTransformation(F, G, {})
        return
    yield from rec(0)


def natural_transformations(F: Functor, G: Functor) -> list[NatTransformation]:
    return list(iter_natural_transformations(F, G))


def natural_isomorphisms(F: Functor, G: Functor) -> Iterator[NatTransformation]:
    D = F.target
    cands = {x: D.isomorphisms(F.object_map[x], G.object_map[x]) for x in F.source.objects}
    return iter_natural_transformations(F, G, cands)


# -- properties of functors -------------------------------------------------

def is_identity_reflecting(F: Functor) -> Decision:
    C, D = F.source, F.target
    for f in C.non_identity_morphisms():
        if D.is_identity(F.morphism_map[f]):
            return Decision(False, f)
    return Decision(True)


def is_conservative(F: Functor) -> Decision:
    C, D = F.source, F.target
    for f in C.morphisms:
        if D.is_iso(F.morphism_map[f]) and not C.is_iso(f):
            return Decision(False, f)
    return Decision(True)


def is_faithful(F: Functor) -> Decision:
    C = F.source
    for x in C.objects:
        for y in C.objects:
            images = [F.morphism_map[f] for f in C.hom(x, y)]
            if len(set(images)) != len(images):
                return Decision(False, (x, y))
    return Decision(True)


def is_full(F: Functor) -> Decision:
    C, D = F.source, F.target
    for x in C.objects:
        for y in C.objects:
            images = {F.morphism_map[f] for f in C.hom(x, y)}
            if images != set(D.hom(F.object_map[x], F.object_map[y])):
                return Decision(False, (x, y))
    return Decision(True)


def is_equivalence(F: Functor) -> Decision:
    """Fully faithful and essentially surjective.

    On success the witness is a quasi-inverse functor; on failure it is
    ``("not faithful" | "not full", x, y)`` or ``("not essentially surjective", d)``.
    """
    C, D = F.source, F.target
    faithful = is_faithful(F)
    if not faithful:
        return Decision(False, ("not faithful",) + faithful.witness)
    full = is_full(F)
    if not full:
        return Decision(False, ("not full",) + full.witness)
    choice = {}
    for d in D.objects:
        exact = [c for c in C.objects if F.object_map[c] == d]
        if exact:
            choice[d] = (exact[0], D.identity[d])
            continue
        for c in C.objects:
            isos = D.isomorphisms(F.object_map[c], d)
            if isos:
                choice[d] = (c, isos[0])
                break
        else:
            return Decision(False, ("not essentially surjective", d))
    omap = {d: choice[d][0] for d in D.objects}
    mmap = {}
    for g, (d1, d2) in D.arrows.items():
        c1, th1 = choice[d1]
        c2, th2 = choice[d2]
        wanted = D.compose(D.inverse(th2), D.compose(g, th1))
        (h,) = [h for h in C.hom(c1, c2) if F.morphism_map[h] == wanted]
        mmap[g] = h
    return Decision(True, Functor(D, C, omap, mmap))


def is_isomorphism(F: Functor) -> bool:
    return (
        len(set(F.object_map.values())) == len(F.source.objects) == len(F.target.objects)
        and len(set(F.morphism_map.values())) == len(F.source.arrows) == len(F.target.arrows)
    )


def find_isomorphism(C: FinCategory, D: FinCategory) -> Functor | None:
    """First isomorphism ``C -> D`` in enumeration order, or ``None``."""
    if len(C.objects) != len(D.objects) or len(C.arrows) != len(D.arrows):
        return None
    for F in iter_functors(C, D):
        if is_isomorphism(F):
            return F
    return None


def are_isomorphic(C: FinCategory, D: FinCategory) -> bool:
    return find_isomorphism(C, D) is not None


def are_equivalent(C: FinCategory, D: FinCategory) -> bool:
    """Compare skeleta up to isomorphism."""
    from .constructions import skeleton

    return are_isomorphic(skeleton(C)[0], skeleton(D)[0])
