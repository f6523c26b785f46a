"""Standard constructions on finite categories."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from .caps import check_morphism_count
from .category import FinCategory, from_table, sort_key
from .functor import (
    Decision,
    Functor,
    NatTransformation,
    enumerate_functors,
    identity_transformation,
    natural_transformations,
)


# -- small named categories ---------------------------------------------------

def discrete(objects, name: str | None = None) -> FinCategory:
    if isinstance(objects, int):
        objects = [f"x{i}" for i in range(objects)]
    return from_table(name or f"discrete{len(objects)}", objects, [])


def terminal(name: str = "terminal") -> FinCategory:
    return from_table(name, ["pt"], [])


def ordinal(n: int) -> FinCategory:
    """The chain ``0 -> 1 -> ... -> n-1`` with ``("le", i, j)`` for ``i <= j``."""
    objects = list(range(n))
    arrows = {("le", i, j): (i, j) for i in objects for j in objects if i <= j}
    identity = {i: ("le", i, i) for i in objects}
    table = {
        (("le", j, k), ("le", i, j)): ("le", i, k)
        for i in objects for j in objects for k in objects if i <= j <= k
    }
    return FinCategory(f"ord{n}", objects, arrows, identity, table)


def finset_category(max_size: int) -> FinCategory:
    """Skeletal category of finite sets ``{0..k-1}``, ``k <= max_size``;
    morphisms ``("fn", k, l, values)``."""
    objects = list(range(max_size + 1))
    arrows = {}
    for k in objects:
        for l in objects:
            for values in cartesian(range(l), repeat=k):
                arrows[("fn", k, l, values)] = (k, l)
    identity = {k: ("fn", k, k, tuple(range(k))) for k in objects}
    table = {}
    for f, (k, l) in arrows.items():
        for g, (l2, m) in arrows.items():
            if l2 == l:
                table[g, f] = ("fn", k, m, tuple(g[3][i] for i in f[3]))
    return FinCategory(f"finset{max_size}", objects, arrows, identity, table)


# -- duality and products -----------------------------------------------------

def opposite(C: FinCategory) -> FinCategory:
    name = C.name[:-3] if C.name.endswith("_op") else C.name + "_op"
    arrows = {f: (t, s) for f, (s, t) in C.arrows.items()}
    table = {(f, g): h for (g, f), h in C.table.items()}
    return FinCategory(name, C.objects, arrows, C.identity, table)


def product(C: FinCategory, D: FinCategory) -> FinCategory:
    check_morphism_count(len(C.arrows) * len(D.arrows))
    objects = [(c, d) for c in C.objects for d in D.objects]
    arrows = {
        (f, g): ((cs, ds), (ct, dt))
        for f, (cs, ct) in C.arrows.items()
        for g, (ds, dt) in D.arrows.items()
    }
    identity = {(c, d): (C.identity[c], D.identity[d]) for c, d in objects}
    table = {
        ((g1, g2), (f1, f2)): (h1, h2)
        for (g1, f1), h1 in C.table.items()
        for (g2, f2), h2 in D.table.items()
    }
    return FinCategory(f"{C.name}_x_{D.name}", objects, arrows, identity, table)


def projection(P: FinCategory, C: FinCategory, D: FinCategory, side: int) -> Functor:
    """Projection of ``product(C, D)`` onto its ``side``-th factor."""
    target = (C, D)[side]
    return Functor(P, target, {x: x[side] for x in P.objects}, {f: f[side] for f in P.morphisms})


# -- functor categories -------------------------------------------------------

class FunctorCategory(FinCategory):
    """``C^I``: objects are indices into ``functors``; the morphism ``(i, j, k)``
    is the ``k``-th natural transformation ``functors[i] => functors[j]``."""

    def __init__(self, name, objects, arrows, identity, table, index, base, functors, transformations, nats):
        super().__init__(name, objects, arrows, identity, table)
        self.index = index
        self.base = base
        self.functors = functors
        self.transformations = transformations
        self._nats = nats

    def functor_id(self, F: Functor):
        return self.functors.index(F)

    def transformation_id(self, eta: NatTransformation):
        i = self.functors.index(eta.source_functor)
        j = self.functors.index(eta.target_functor)
        for k, cand in enumerate(self._nats[i, j]):
            if cand.key == eta.key:
                return (i, j, k)
        raise KeyError(eta)


def functor_category(I: FinCategory, C: FinCategory) -> FunctorCategory:
    functors = enumerate_functors(I, C)
    nats = {}
    total = 0
    for i, F in enumerate(functors):
        for j, G in enumerate(functors):
            nats[i, j] = natural_transformations(F, G)
            total += len(nats[i, j])
            check_morphism_count(total)
    objects = list(range(len(functors)))
    arrows, transformations = {}, {}
    lookup = {}
    for (i, j), etas in nats.items():
        for k, eta in enumerate(etas):
            arrows[i, j, k] = (i, j)
            transformations[i, j, k] = eta
            lookup[i, j, eta.key] = (i, j, k)
    identity = {i: lookup[i, i, identity_transformation(F).key] for i, F in enumerate(functors)}
    objs_I = I.objects
    table = {}
    for (i, j, k), alpha in transformations.items():
        for l in objects:
            for m, beta in enumerate(nats[j, l]):
                key = tuple(C.table[beta.components[x], alpha.components[x]] for x in objs_I)
                table[(j, l, m), (i, j, k)] = lookup[i, l, key]
    return FunctorCategory(f"{C.name}^{I.name}", objects, arrows, identity, table, I, C, functors, transformations, nats)


def restriction_functor(B: FinCategory, A_objects, C: FinCategory,
                        CB: FunctorCategory | None = None, CA: FunctorCategory | None = None):
    """The restriction ``C^B -> C^A`` along the full inclusion ``A ⊆ B``.

    Returns ``(functor, CB, CA, A)``.
    """
    A = B.full_subcategory(A_objects, name=f"{B.name}|{'_'.join(map(str, A_objects))}")
    CB = CB or functor_category(B, C)
    CA = CA or functor_category(A, C)
    func_index = {F.key: i for i, F in enumerate(CA.functors)}
    omap = {}
    for i, F in enumerate(CB.functors):
        restricted = Functor(A, C, {x: F.object_map[x] for x in A.objects},
                             {f: F.morphism_map[f] for f in A.morphisms})
        omap[i] = func_index[restricted.key]
    nat_index = {}
    for (i, j, k), eta in CA.transformations.items():
        nat_index[i, j, eta.key] = (i, j, k)
    mmap = {}
    for (i, j, k), eta in CB.transformations.items():
        key = tuple(eta.components[x] for x in A.objects)
        mmap[i, j, k] = nat_index[omap[i], omap[j], key]
    return Functor(CB, CA, omap, mmap), CB, CA, A


# -- skeleta, reflections, completions ---------------------------------------

def iso_classes(C: FinCategory) -> list[list]:
    classes = []
    seen = set()
    for x in C.objects:
        if x in seen:
            continue
        cls = [y for y in C.objects if y == x or C.isomorphisms(x, y)]
        seen.update(cls)
        classes.append(cls)
    return classes


def skeleton(C: FinCategory) -> tuple[FinCategory, Functor]:
    """Full subcategory on the least-id object of each isomorphism class,
    with the comparison functor ``C -> skeleton``."""
    rep, to_rep = {}, {}
    for cls in iso_classes(C):
        r = min(cls, key=sort_key)
        for x in cls:
            rep[x] = r
            to_rep[x] = C.identity[x] if x == r else C.isomorphisms(x, r)[0]
    reps = [x for x in C.objects if rep[x] == x]
    S = C.full_subcategory(reps, name=f"{C.name}_skel")
    mmap = {}
    for f, (s, t) in C.arrows.items():
        mmap[f] = C.compose(to_rep[t], C.compose(f, C.inverse(to_rep[s])))
    return S, Functor(C, S, rep, mmap)


@dataclass(frozen=True)
class PosetReflectionResult:
    poset: FinCategory
    quotient: Functor


def reachability(C: FinCategory) -> dict:
    """``reach[x, y]`` iff ``Hom(x, y)`` is nonempty (already transitive)."""
    return {(x, y): bool(C.hom(x, y)) for x in C.objects for y in C.objects}


def posetal_reflection(C: FinCategory) -> PosetReflectionResult:
    reach = reachability(C)
    rep = {}
    for x in C.objects:
        cls = [y for y in C.objects if reach[x, y] and reach[y, x]]
        rep[x] = min(cls, key=sort_key)
    points = [x for x in C.objects if rep[x] == x]
    arrows = {("le", p, q): (p, q) for p in points for q in points if reach[p, q]}
    identity = {p: ("le", p, p) for p in points}
    table = {}
    for (_, p, q) in arrows:
        for (_, q2, r) in arrows:
            if q2 == q:
                table[("le", q, r), ("le", p, q)] = ("le", p, r)
    poset = FinCategory(f"{C.name}_pos", points, arrows, identity, table)
    mmap = {f: ("le", rep[s], rep[t]) for f, (s, t) in C.arrows.items()}
    return PosetReflectionResult(poset, Functor(C, poset, rep, mmap))


def idempotents(C: FinCategory) -> list:
    return [f for f in C.morphisms if C.is_idempotent(f)]


def find_splitting(C: FinCategory, e):
    """``(y, r, s)`` with ``s . r = e`` and ``r . s = id_y``, or ``None``."""
    x = C.src(e)
    for y in C.objects:
        for r in C.hom(x, y):
            for s in C.hom(y, x):
                if C.table[s, r] == e and C.table[r, s] == C.identity[y]:
                    return y, r, s
    return None


def is_cauchy_complete(C: FinCategory) -> Decision:
    for e in idempotents(C):
        if find_splitting(C, e) is None:
            return Decision(False, e)
    return Decision(True)


def cauchy_completion(C: FinCategory) -> tuple[FinCategory, Functor]:
    """Karoubi envelope: objects are the idempotents ``e``; a morphism
    ``e -> e'`` is ``(e, f, e')`` with ``e' . f . e = f``."""
    objs = idempotents(C)
    arrows = {}
    for e in objs:
        x = C.src(e)
        for e2 in objs:
            y = C.src(e2)
            for f in C.hom(x, y):
                if C.table[e2, C.table[f, e]] == f:
                    arrows[e, f, e2] = (e, e2)
    check_morphism_count(len(arrows))
    identity = {e: (e, e, e) for e in objs}
    table = {}
    for (e, f, e2) in arrows:
        for (e2b, g, e3) in arrows:
            if e2b == e2:
                table[(e2, g, e3), (e, f, e2)] = (e, C.table[g, f], e3)
    K = FinCategory(f"{C.name}_cc", objs, arrows, identity, table)
    embed = Functor(
        C, K,
        {x: C.identity[x] for x in C.objects},
        {f: (C.identity[s], f, C.identity[t]) for f, (s, t) in C.arrows.items()},
    )
    return K, embed


# -- twisted arrows -----------------------------------------------------------

def twisted_arrow(C: FinCategory) -> tuple[FinCategory, Functor]:
    """Objects are the morphisms of ``C``; ``(f, u, v): f -> v.f.u``.

    Returns the category and its projection to ``product(opposite(C), C)``.
    """
    arrows = {}
    for f, (a, b) in C.arrows.items():
        for u in C.morphisms_to(a):
            fu = C.table[f, u]
            for v in C.morphisms_from(b):
                arrows[f, u, v] = (f, C.table[v, fu])
    check_morphism_count(len(arrows))
    identity = {f: (f, C.identity[a], C.identity[b]) for f, (a, b) in C.arrows.items()}
    out_of = {}
    for m, (s, _) in arrows.items():
        out_of.setdefault(s, []).append(m)
    table = {}
    for m, (f, g) in arrows.items():
        _, u, v = m
        for m2 in out_of.get(g, ()):
            _, u2, v2 = m2
            table[m2, m] = (f, C.table[u, u2], C.table[v2, v])
    Tw = FinCategory(f"tw_{C.name}", C.morphisms, arrows, identity, table)
    target = product(opposite(C), C)
    proj = Functor(
        Tw, target,
        {f: C.arrows[f] for f in C.morphisms},
        {(f, u, v): (u, v) for (f, u, v) in arrows},
    )
    return Tw, proj
