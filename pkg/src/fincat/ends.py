"""Set-valued functors, finite limits, and ends.

An end of a bifunctor ``H: C^op x C -> Set`` is computed two ways: as the
subset of ``prod_c H(c, c)`` cut out by the wedge condition, and as the
limit of ``H`` pulled back to the twisted arrow category. The two results
are compared element by element in :func:`compare_end_algorithms`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .category import FinCategory
from .constructions import opposite, product, twisted_arrow
from .functor import Decision, Functor, identity_functor


@dataclass
class SetFunctor:
    """A functor ``category -> FinSet``: ``value[x]`` is a tuple of hashable
    elements, ``action[f]`` a dict from ``value[src f]`` to ``value[tgt f]``."""

    category: FinCategory
    value: Mapping
    action: Mapping

    def apply(self, f, element):
        return self.action[f][element]


def set_functor_violations(V: SetFunctor) -> list[str]:
    C = V.category
    out = []
    for f, (s, t) in C.arrows.items():
        act = V.action.get(f)
        if act is None or set(act) != set(V.value[s]) or not set(act.values()) <= set(V.value[t]):
            out.append(f"action of {f} is not a function {s} -> {t}")
    if out:
        return out
    for x in C.objects:
        if any(V.action[C.identity[x]][a] != a for a in V.value[x]):
            out.append(f"identity of {x} does not act trivially")
    for (g, f), h in C.table.items():
        ag, af, ah = V.action[g], V.action[f], V.action[h]
        if any(ag[af[a]] != ah[a] for a in V.value[C.src(f)]):
            out.append(f"action of {g} . {f} is not the composite action")
    return out


@dataclass
class FinBifunctor:
    """``H: C^op x C -> FinSet`` on the objects/morphisms of
    ``product(opposite(C), C)``; a morphism ``(u, v): (a, b) -> (a', b')``
    has ``u: a' -> a`` and ``v: b -> b'`` in ``C``."""

    base: FinCategory
    value: Mapping
    action: Mapping

    def as_set_functor(self) -> SetFunctor:
        return SetFunctor(product(opposite(self.base), self.base), self.value, self.action)


def functor_hom_bifunctor(F: Functor, G: Functor) -> FinBifunctor:
    """``(i, j) |-> Hom(F i, G j)`` with ``(u, v)`` acting by ``G v . - . F u``."""
    I, C = F.source, F.target
    value = {(a, b): C.hom(F.object_map[a], G.object_map[b]) for a in I.objects for b in I.objects}
    action = {}
    for u, (a2, a) in I.arrows.items():
        Fu = F.morphism_map[u]
        for v, (b, b2) in I.arrows.items():
            Gv = G.morphism_map[v]
            action[u, v] = {h: C.table[Gv, C.table[h, Fu]] for h in value[a, b]}
    return FinBifunctor(I, value, action)


def hom_bifunctor(C: FinCategory) -> FinBifunctor:
    ident = identity_functor(C)
    return functor_hom_bifunctor(ident, ident)


# -- limits -------------------------------------------------------------------

def limit_of_set_functor(V: SetFunctor) -> list[tuple]:
    """Compatible families ``(y_x)`` ordered as ``V.category.objects``; the
    ``x``-th projection is position ``x`` in each tuple."""
    J = V.category
    objs = J.objects
    pos = {x: i for i, x in enumerate(objs)}
    checks = [[] for _ in objs]
    for f in J.non_identity_morphisms():
        s, t = J.arrows[f]
        checks[max(pos[s], pos[t])].append((V.action[f], pos[s], pos[t]))
    chosen = [None] * len(objs)
    out = []

    def rec(i):
        if i == len(objs):
            out.append(tuple(chosen))
            return
        for y in V.value[objs[i]]:
            chosen[i] = y
            if all(act[chosen[s]] == chosen[t] for act, s, t in checks[i]):
                rec(i + 1)
        chosen[i] = None

    rec(0)
    return out


@dataclass
class EndResult:
    base: FinCategory
    elements: list  # tuples indexed like base.objects

    def __len__(self):
        return len(self.elements)

    def projection(self, c):
        i = self.base.objects.index(c)
        return {e: e[i] for e in self.elements}


def end_of_bifunctor(C: FinCategory, H: FinBifunctor) -> EndResult:
    """Families ``(x_c in H(c, c))`` with ``H(c, f) x_c = H(f, c') x_c'`` for
    every ``f: c -> c'``."""
    objs = C.objects
    pos = {c: i for i, c in enumerate(objs)}
    checks = [[] for _ in objs]
    for f in C.non_identity_morphisms():
        c, c2 = C.arrows[f]
        push = H.action[C.identity[c], f]
        pull = H.action[f, C.identity[c2]]
        checks[max(pos[c], pos[c2])].append((push, pull, pos[c], pos[c2]))
    chosen = [None] * len(objs)
    out = []

    def rec(i):
        if i == len(objs):
            out.append(tuple(chosen))
            return
        c = objs[i]
        for x in H.value[c, c]:
            chosen[i] = x
            if all(push[chosen[a]] == pull[chosen[b]] for push, pull, a, b in checks[i]):
                rec(i + 1)
        chosen[i] = None

    rec(0)
    return EndResult(C, out)


def end_via_twisted_arrow(C: FinCategory, H: FinBifunctor) -> tuple[FinCategory, list[tuple]]:
    """The limit of ``Tw(C) -> C^op x C -> Set``; families are indexed by the
    morphisms of ``C``."""
    Tw, proj = twisted_arrow(C)
    value = {f: H.value[proj.object_map[f]] for f in Tw.objects}
    action = {m: H.action[proj.morphism_map[m]] for m in Tw.morphisms}
    return Tw, limit_of_set_functor(SetFunctor(Tw, value, action))


def compare_end_algorithms(C: FinCategory, H: FinBifunctor) -> Decision:
    """Check that ``x |-> (H(id, f) x_src(f))_f`` is a bijection from the
    wedge-condition end onto the twisted-arrow limit, commuting with the
    projections to ``H(c, c)``. Witness: the bijection, or a reason."""
    end = end_of_bifunctor(C, H)
    Tw, lim = end_via_twisted_arrow(C, H)
    pos = {c: i for i, c in enumerate(C.objects)}
    tw_pos = {f: i for i, f in enumerate(Tw.objects)}
    lim_set = set(lim)
    mapping = {}
    for x in end.elements:
        y = tuple(H.action[C.identity[C.src(f)], f][x[pos[C.src(f)]]] for f in Tw.objects)
        if y not in lim_set:
            return Decision(False, ("image not in limit", x, y))
        for c in C.objects:
            if y[tw_pos[C.identity[c]]] != x[pos[c]]:
                return Decision(False, ("projection mismatch", x, c))
        mapping[x] = y
    if len(set(mapping.values())) != len(mapping) or len(mapping) != len(lim):
        return Decision(False, ("not bijective", len(end.elements), len(lim)))
    return Decision(True, mapping)
