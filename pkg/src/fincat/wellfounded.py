"""Staged categories ``I^(n)`` and the strict / weak well-foundedness deciders.

Stages are the finite ordinals ``0 < 1 < ... < n-1``; arrows of ``I^(n)``
strictly raise the stage (apart from identities), so ``I^(n)`` never has
non-identity endomorphisms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .caps import check_morphism_count
from .category import FinCategory
from .constructions import ordinal, posetal_reflection, skeleton
from .functor import (
    Decision,
    Functor,
    NatTransformation,
    compose_functors,
    identity_functor,
    is_conservative,
    is_equivalence,
    is_identity_reflecting,
    iter_functors,
    natural_isomorphisms,
)


@dataclass
class StagedCategory:
    base: FinCategory
    stage_count: int
    category: FinCategory
    projection: Functor

    def stage_objects(self, upto: int) -> list:
        """Objects ``(x, b)`` with ``b <= upto``."""
        return [o for o in self.category.objects if o[1] <= upto]


def build_I_alpha(I: FinCategory, n: int) -> StagedCategory:
    """``I^(n)``: objects ``(x, b)`` for ``b < n`` (stage-major order);
    morphisms ``(f, b, c)`` for ``f: x -> y`` in ``I`` and ``b < c``, plus
    identities ``(id_x, b, b)``."""
    if n < 1:
        raise ValueError("stage count must be >= 1")
    objects = [(x, b) for b in range(n) for x in I.objects]
    arrows = {}
    for (x, b) in objects:
        arrows[I.identity[x], b, b] = ((x, b), (x, b))
    for b in range(n):
        for c in range(b + 1, n):
            for f, (x, y) in I.arrows.items():
                arrows[f, b, c] = ((x, b), (y, c))
    check_morphism_count(len(arrows))
    identity = {(x, b): (I.identity[x], b, b) for (x, b) in objects}
    by_source = {}
    for m, (s, _) in arrows.items():
        by_source.setdefault(s, []).append(m)
    table = {}
    for m, (s, t) in arrows.items():
        f, b, c = m
        for m2 in by_source[t]:
            g, _, d = m2
            table[m2, m] = (I.table[g, f], b, d)
    cat = FinCategory(f"{I.name}_stage{n}", objects, arrows, identity, table)
    proj = Functor(cat, I, {o: o[0] for o in objects}, {m: m[0] for m in arrows})
    return StagedCategory(I, n, cat, proj)


def stage_inclusion(small: StagedCategory, large: StagedCategory) -> Functor:
    """The stage-preserving inclusion ``I^(n) -> I^(m)`` for ``n <= m``."""
    return Functor(small.category, large.category,
                   {o: o for o in small.category.objects},
                   {m: m for m in small.category.morphisms})


# -- strict well-foundedness ------------------------------------------------

@dataclass(frozen=True)
class RankFunction:
    assignment: dict

    def __getitem__(self, x):
        return self.assignment[x]

    def is_valid_on(self, I: FinCategory) -> bool:
        return all(self.assignment[s] < self.assignment[t]
                   for f, (s, t) in I.arrows.items() if not I.is_identity(f))

    def as_functor(self, I: FinCategory) -> Functor:
        """The rank as a functor into the chain ``ord(max + 1)``."""
        top = max(self.assignment.values(), default=0) + 1
        chain = ordinal(top)
        v = self.assignment
        return Functor(I, chain, v, {f: ("le", v[s], v[t]) for f, (s, t) in I.arrows.items()})


def find_cycle(I: FinCategory) -> list | None:
    """A cycle of non-identity morphisms in the relation ``x < y``; a single
    non-identity endomorphism is preferred when one exists."""
    for f in I.non_identity_morphisms():
        if I.src(f) == I.tgt(f):
            return [f]
    succ = {x: [] for x in I.objects}
    for f in I.non_identity_morphisms():
        succ[I.src(f)].append(f)
    color = {x: 0 for x in I.objects}
    for root in I.objects:
        if color[root]:
            continue
        color[root] = 1
        stack = [(root, iter(succ[root]))]
        path: list = []
        while stack:
            x, it = stack[-1]
            f = next(it, None)
            if f is None:
                color[x] = 2
                stack.pop()
                if path:
                    path.pop()
                continue
            y = I.tgt(f)
            if color[y] == 1:
                start = next(i for i, (z, _) in enumerate(stack) if z == y)
                return path[start:] + [f]
            if color[y] == 0:
                color[y] = 1
                path.append(f)
                stack.append((y, iter(succ[y])))
    return None


def decide_strictly_well_founded(I: FinCategory) -> Decision:
    """The relation "a non-identity arrow ``x -> y`` exists" is well-founded,
    i.e. (for finite ``I``) acyclic. Witness: a cycle, or a topological rank.

    Descending chains ``omega^op -> I`` that reflect identities exist exactly
    when this relation has a cycle, so the same answer decides that form."""
    cycle = find_cycle(I)
    if cycle is not None:
        return Decision(False, cycle)
    indeg = {x: 0 for x in I.objects}
    succ = {x: set() for x in I.objects}
    for f in I.non_identity_morphisms():
        s, t = I.arrows[f]
        if t not in succ[s]:
            succ[s].add(t)
            indeg[t] += 1
    rank = {x: 0 for x in I.objects}
    ready = [x for x in I.objects if indeg[x] == 0]
    while ready:
        x = ready.pop(0)
        for y in sorted(succ[x], key=I.object_index):
            rank[y] = max(rank[y], rank[x] + 1)
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
    return Decision(True, RankFunction(rank))


def rank_function(I: FinCategory) -> RankFunction | None:
    """Least rank with ``rank(x) < rank(y)`` along non-identity arrows,
    i.e. ``v(y) = max(v(x) + 1 for x < y)``, by iterated relaxation."""
    v = {x: 0 for x in I.objects}
    edges = [I.arrows[f] for f in I.non_identity_morphisms()]
    for _ in range(len(I.objects) + 1):
        changed = False
        for s, t in edges:
            if v[t] < v[s] + 1:
                v[t] = v[s] + 1
                changed = True
        if not changed:
            return RankFunction(v)
    return None


def _has_nonidentity_endo(I: FinCategory):
    for f in I.non_identity_morphisms():
        if I.src(f) == I.tgt(f):
            return f
    return None


def _has_nonidentity_iso(I: FinCategory):
    for f in I.non_identity_morphisms():
        if I.is_iso(f):
            return f
    return None


def _poset_is_well_founded(P: FinCategory) -> bool:
    """Peel off minimal elements of the strict order until none remain."""
    remaining = set(P.objects)
    below = {x: {P.src(f) for f in P.morphisms_to(x) if P.src(f) != x} for x in P.objects}
    while remaining:
        minimal = [x for x in remaining if not (below[x] & remaining)]
        if not minimal:
            return False
        remaining.difference_update(minimal)
    return True


def sw3(I: FinCategory) -> Decision:
    """No non-identity isomorphisms or endomorphisms, and a well-founded
    posetal reflection."""
    bad = _has_nonidentity_endo(I) or _has_nonidentity_iso(I)
    if bad is not None:
        return Decision(False, bad)
    refl = posetal_reflection(I)
    if not _poset_is_well_founded(refl.poset):
        return Decision(False, "posetal reflection not well-founded")
    if not is_identity_reflecting(refl.quotient):
        return Decision(False, "quotient not identity-reflecting")
    return Decision(True, refl)


def sw4(I: FinCategory) -> Decision:
    """An identity-reflecting functor into an ordinal chain."""
    rank = rank_function(I)
    if rank is None:
        return Decision(False)
    F = rank.as_functor(I)
    if not is_identity_reflecting(F):
        return Decision(False, F)
    return Decision(True, rank)


def strict_section(I: FinCategory, n: int) -> Functor | None:
    """A functor ``s: I -> I^(n)`` with ``pi . s = Id`` on the nose, by
    exhaustive search over functors whose object map lies over the identity."""
    staged = build_I_alpha(I, n)
    over = {x: [(x, b) for b in range(n)] for x in I.objects}
    pi = staged.projection
    for s in iter_functors(I, staged.category, over):
        if all(pi.morphism_map[s.morphism_map[f]] == f for f in I.morphisms):
            return s
    return None


# -- weak well-foundedness ---------------------------------------------------

@dataclass
class Verdict:
    """Whether ``Ind(C^I) ≃ Ind(C)^I`` for every ``C``, and for every ``C``
    with finite colimits (always, for finite ``I``)."""

    holds_for_all: bool
    witness: object  # RankFunction on the skeleton, or a list of morphisms
    skeleton: FinCategory
    holds_with_finite_colimits: bool = True
    colimits_note: str = "finite index category: equivalent to a finite (omega-small) category"

    @property
    def is_rank(self) -> bool:
        return isinstance(self.witness, RankFunction)


def decide_well_founded(I: FinCategory) -> Verdict:
    """Well-founded iff some (every) skeleton is strictly well-founded.

    The skeleton is the full subcategory on representatives, so witnesses
    are already expressed with the morphisms of ``I``."""
    S, _ = skeleton(I)
    d = decide_strictly_well_founded(S)
    if d:
        return Verdict(True, rank_function(S), S)
    return Verdict(False, d.witness, S)


def w1(I: FinCategory) -> Decision:
    """No non-identity endomorphisms and a conservative functor into the
    chain ``ord(|Ob I|)`` (exhaustive search)."""
    bad = _has_nonidentity_endo(I)
    if bad is not None:
        return Decision(False, bad)
    chain = ordinal(max(len(I.objects), 1))
    for F in iter_functors(I, chain):
        if is_conservative(F):
            return Decision(True, F)
    return Decision(False)


def w2(I: FinCategory) -> Decision:
    bad = _has_nonidentity_endo(I)
    if bad is not None:
        return Decision(False, bad)
    if not _poset_is_well_founded(posetal_reflection(I).poset):
        return Decision(False, "posetal reflection not well-founded")
    return Decision(True)


def w3(I: FinCategory) -> Decision:
    S, _ = skeleton(I)
    d = decide_strictly_well_founded(S)
    return Decision(d.holds, d.witness)


def w4(I: FinCategory) -> Decision:
    """Equivalent to a strictly well-founded category; the skeleton is the
    candidate, and the equivalence is verified explicitly."""
    S, F = skeleton(I)
    if not decide_strictly_well_founded(S):
        return Decision(False)
    eq = is_equivalence(F)
    return Decision(eq.holds, S if eq else eq.witness)


def _isomorphic_objects(I: FinCategory, x) -> set:
    return {y for y in I.objects if I.isomorphisms(y, x)}


def _retract_sources(I: FinCategory, x) -> set:
    """Objects ``y`` of which ``x`` is a retract."""
    ident = I.identity[x]
    out = set()
    for y in I.objects:
        if any(I.table[e, h] == ident for h in I.hom(x, y) for e in I.hom(y, x)):
            out.add(y)
    return out


@dataclass
class IsoSection:
    lift: Functor
    iso: NatTransformation  # pi . lift => Id, componentwise invertible


def section_up_to_iso(I: FinCategory, n: int) -> IsoSection | None:
    """``s: I -> I^(n)`` with a natural isomorphism ``pi . s => Id``.

    Only object maps with ``pi s(x) ≅ x`` can carry such an isomorphism, so
    the functor search is restricted to those."""
    staged = build_I_alpha(I, n)
    pi = staged.projection
    ident = identity_functor(I)
    over = {x: [(y, b) for b in range(n) for y in I.objects if y in _isomorphic_objects(I, x)]
            for x in I.objects}
    for s in iter_functors(I, staged.category, over):
        P = compose_functors(pi, s)
        for phi in natural_isomorphisms(P, ident):
            return IsoSection(s, phi)
    return None


@dataclass
class RetractCertificate:
    stage: int
    lift: Functor
    unit: NatTransformation  # Id => pi . lift
    counit: NatTransformation  # pi . lift => Id

    def verify(self, I: FinCategory) -> bool:
        from .functor import is_natural

        return (
            is_natural(self.unit)
            and is_natural(self.counit)
            and all(I.table[self.counit[x], self.unit[x]] == I.identity[x] for x in I.objects)
        )


def _retractions(I: FinCategory, P: Functor) -> Iterator[tuple[dict, dict]]:
    """Pairs (unit, counit) of natural transformations ``Id => P => Id``
    composing to the identity, in lexicographic order."""
    objs = I.objects
    pos = {x: i for i, x in enumerate(objs)}
    checks = [[] for _ in objs]
    for f in I.non_identity_morphisms():
        x, y = I.arrows[f]
        checks[max(pos[x], pos[y])].append((f, x, y))
    pairs = []
    for x in objs:
        px = P.object_map[x]
        pairs.append([(h, e) for h in I.hom(x, px) for e in I.hom(px, x)
                      if I.table[e, h] == I.identity[x]])
    unit, counit = {}, {}
    T = I.table

    def rec(i):
        if i == len(objs):
            yield dict(unit), dict(counit)
            return
        x = objs[i]
        for h, e in pairs[i]:
            unit[x], counit[x] = h, e
            ok = True
            for f, a, b in checks[i]:
                Pf = P.morphism_map[f]
                if T[Pf, unit[a]] != T[unit[b], f] or T[f, counit[a]] != T[counit[b], Pf]:
                    ok = False
                    break
            if ok:
                yield from rec(i + 1)
        unit.pop(x, None)
        counit.pop(x, None)

    yield from rec(0)


def retract_through_stage(I: FinCategory, n: int) -> RetractCertificate | None:
    """``Id_I`` as a retract of ``pi . s`` for some ``s: I -> I^(n)``.

    The object map of ``s`` is restricted to objects over some ``y`` having
    ``x`` as a retract, which every certificate must satisfy."""
    staged = build_I_alpha(I, n)
    pi = staged.projection
    ident = identity_functor(I)
    sources = {x: _retract_sources(I, x) for x in I.objects}
    over = {x: [(y, b) for b in range(n) for y in I.objects if y in sources[x]] for x in I.objects}
    for s in iter_functors(I, staged.category, over):
        P = compose_functors(pi, s)
        for unit, counit in _retractions(I, P):
            return RetractCertificate(n, s, NatTransformation(ident, P, unit), NatTransformation(P, ident, counit))
    return None


def raise_certificate(cert: RetractCertificate, I: FinCategory, n: int) -> RetractCertificate:
    """Transport a certificate at stage ``cert.stage`` to a stage ``n`` above it
    along the stage-preserving inclusion."""
    if n < cert.stage:
        raise ValueError("can only raise to a higher stage")
    big = build_I_alpha(I, n)
    lift = Functor(I, big.category, cert.lift.object_map, cert.lift.morphism_map)
    P = compose_functors(big.projection, lift)
    ident = identity_functor(I)
    return RetractCertificate(n, lift, NatTransformation(ident, P, cert.unit.components),
                              NatTransformation(P, ident, cert.counit.components))


# -- concordance ---------------------------------------------------------------

@dataclass
class CrosscheckReport:
    category: FinCategory
    sw: dict = field(default_factory=dict)
    w: dict = field(default_factory=dict)
    stages: dict = field(default_factory=dict)
    skeleton_sw: bool | None = None

    @property
    def discrepancy(self) -> tuple | None:
        for group in (self.sw, self.w):
            names = list(group)
            for a in names[1:]:
                if group[a] != group[names[0]]:
                    return names[0], a
        if self.w and self.skeleton_sw is not None and self.w["W3"] != self.skeleton_sw:
            return "W", "SW(skeleton)"
        return None

    @property
    def concordant(self) -> bool:
        return self.discrepancy is None

    def lines(self) -> list[str]:
        out = []
        for name, value in list(self.sw.items()) + list(self.w.items()):
            text = f"{name}: {str(value).lower()}"
            if name in self.stages:
                text += f" (stage {self.stages[name]})"
            out.append(text)
        d = self.discrepancy
        out.append("CONCORDANT" if d is None else f"DISCREPANCY: {d[0]} {d[1]}")
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def crosscheck_characterizations(I: FinCategory, sw_stage: int | None = None,
                                 w_stage: int | None = None) -> CrosscheckReport:
    """Evaluate every strict (SW) and weak (W) characterisation independently.

    Defaults: the strict section is searched at ``|Ob I|`` stages, the weak
    section and retract at ``|Ob I| + 1``."""
    n_obj = len(I.objects)
    sw_stage = sw_stage or max(n_obj, 1)
    w_stage = w_stage or n_obj + 1
    rep = CrosscheckReport(I)
    rep.sw["SW2"] = decide_strictly_well_founded(I).holds
    rep.sw["SW3"] = sw3(I).holds
    rep.sw["SW4"] = sw4(I).holds
    rep.sw["SW5"] = strict_section(I, sw_stage) is not None
    rep.stages["SW5"] = sw_stage
    rep.w["W1"] = w1(I).holds
    rep.w["W2"] = w2(I).holds
    rep.w["W3"] = w3(I).holds
    rep.w["W4"] = w4(I).holds
    rep.w["W5"] = section_up_to_iso(I, w_stage) is not None
    rep.w["W6"] = retract_through_stage(I, w_stage) is not None
    rep.stages["W5"] = rep.stages["W6"] = w_stage
    rep.skeleton_sw = decide_strictly_well_founded(skeleton(I)[0]).holds
    return rep
