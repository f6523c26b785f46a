"""Ind-objects presented by eventually periodic chains, and their hom-sets.

``Hom(colim_i X_i, colim_j Y_j) = lim_i colim_j Hom(X_i, Y_j)``: for each
source index the hom-sets into ``Y`` form a :class:`FinSetChain`; their
colimits, under precomposition with ``X``'s connecting maps, form an
:class:`InverseFinSetChain` whose limit is the answer.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .category import FinCategory
from .chains import FinSetChain, InverseFinSetChain, colim_of_chain, lim_of_inverse_chain
from .constructions import FunctorCategory, functor_category
from .ends import FinBifunctor, end_of_bifunctor
from .wellfounded import build_I_alpha, retract_through_stage


@dataclass(frozen=True)
class PeriodicChain:
    """``X_0 -> X_1 -> ...``: entries are ``(object, morphism to next)``; the
    last cycle morphism returns to the first cycle object."""

    category: FinCategory
    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(tuple(e) for e in self.prefix))
        object.__setattr__(self, "cycle", tuple(tuple(e) for e in self.cycle))
        if not self.cycle:
            raise ValueError("cycle must be nonempty")
        entries = self.prefix + self.cycle + self.cycle[:1]
        for (x, f), (y, _) in zip(entries, entries[1:]):
            if self.category.arrows.get(f) != (x, y):
                raise ValueError(f"{f} is not a morphism {x} -> {y} in {self.category.name}")

    @property
    def start(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return len(self.cycle)

    def entry(self, i: int) -> tuple:
        m = len(self.prefix)
        return self.prefix[i] if i < m else self.cycle[(i - m) % len(self.cycle)]

    def obj(self, i: int):
        return self.entry(i)[0]

    def step(self, i: int):
        return self.entry(i)[1]

    def unroll(self, depth: int) -> list:
        return [self.entry(i) for i in range(depth)]

    def __eq__(self, other):
        if not isinstance(other, PeriodicChain):
            return NotImplemented
        return self.category is other.category and self.prefix == other.prefix and self.cycle == other.cycle

    def __hash__(self):
        return hash((self.prefix, self.cycle))


def canonicalize(X: PeriodicChain) -> PeriodicChain:
    """Minimal period, then minimal prefix (absorbing prefix entries that
    repeat the end of the cycle)."""
    cycle = list(X.cycle)
    p = len(cycle)
    for d in range(1, p + 1):
        if p % d == 0 and all(cycle[k] == cycle[k % d] for k in range(p)):
            cycle = cycle[:d]
            break
    prefix = list(X.prefix)
    while prefix and prefix[-1] == cycle[-1]:
        cycle = [prefix.pop()] + cycle[:-1]
    return PeriodicChain(X.category, tuple(prefix), tuple(cycle))


def constant_chain(C: FinCategory, x) -> PeriodicChain:
    return PeriodicChain(C, (), ((x, C.identity[x]),))


def random_periodic_chain(C: FinCategory, rng: random.Random, max_prefix: int = 2,
                          max_period: int = 3, attempts: int = 50) -> PeriodicChain:
    """A random chain whose connecting morphisms exist in ``C``."""
    objs = C.objects
    cycle = None
    for _ in range(attempts):
        p = rng.randint(1, max_period)
        xs = [rng.choice(objs) for _ in range(p)]
        homs = [C.hom(xs[k], xs[(k + 1) % p]) for k in range(p)]
        if all(homs):
            cycle = [(xs[k], rng.choice(homs[k])) for k in range(p)]
            break
    if cycle is None:
        x = rng.choice(objs)
        cycle = [(x, C.identity[x])]
    prefix = []
    nxt = cycle[0][0]
    for _ in range(rng.randint(0, max_prefix)):
        sources = [y for y in objs if C.hom(y, nxt)]
        y = rng.choice(sources)
        prefix.insert(0, (y, rng.choice(C.hom(y, nxt))))
        nxt = y
    return PeriodicChain(C, tuple(prefix), tuple(cycle))


# -- hom-sets between ind-objects ------------------------------------------------

def hom_chain(X: PeriodicChain, i: int, Y: PeriodicChain) -> FinSetChain:
    """``j |-> Hom(X_i, Y_j)`` under postcomposition."""
    C = X.category
    x = X.obj(i)

    def entry(j):
        s = C.hom(x, Y.obj(j))
        return s, {h: C.table[Y.step(j), h] for h in s}

    return FinSetChain(
        tuple(entry(j) for j in range(Y.start)),
        tuple(entry(j) for j in range(Y.start, Y.start + Y.period)),
    )


@dataclass
class IndHom:
    """Elements are threads, each represented by its component at source
    index ``X.start``: a morphism ``X_{X.start} -> Y_{Y.start}`` in the
    eventual image of that index's hom chain."""

    X: PeriodicChain
    Y: PeriodicChain
    colimits: list = field(repr=False)
    limit: object = field(repr=False)

    @property
    def elements(self) -> tuple:
        return self.limit.elements

    def __len__(self):
        return len(self.limit.elements)

    def normalize(self, i: int, h):
        """Class of ``h: X_i -> Y_j`` (given at ``j = Y.start``) in the colimit
        at source index ``i``; ``i`` is reduced into one period."""
        return self.colimits[self._reduce(i)].cocone(self.Y.start, h)

    def component(self, element, i: int):
        return self.limit.projection(element, i)

    def _reduce(self, i):
        m, p = self.X.start, self.X.period
        return i if i < m else m + (i - m) % p


def ind_hom(X: PeriodicChain, Y: PeriodicChain) -> IndHom:
    if X.category is not Y.category and X.category != Y.category:
        raise ValueError("chains live in different categories")
    C = X.category
    m, p = X.start, X.period
    colims = [colim_of_chain(hom_chain(X, i, Y)) for i in range(m + p)]
    mY = Y.start

    def entry(i):
        nxt = colims[m if i + 1 == m + p else i + 1]
        xi = X.step(i)
        return colims[i].elements, {e: colims[i].cocone(mY, C.table[e, xi]) for e in nxt.elements}

    inverse = InverseFinSetChain(
        tuple(entry(i) for i in range(m)),
        tuple(entry(i) for i in range(m, m + p)),
    )
    return IndHom(X, Y, colims, lim_of_inverse_chain(inverse))


# -- chains of functors and their evaluations ---------------------------------

@dataclass
class ChainFamily:
    """``i |-> U_i`` over an index category, all with one prefix length and
    period; ``maps[u, k]`` is the level-``k`` morphism ``U_src(u) -> U_tgt(u)``
    for ``k < start + period``."""

    index: FinCategory
    chains: dict
    maps: dict

    @property
    def start(self):
        return next(iter(self.chains.values())).start

    @property
    def period(self):
        return next(iter(self.chains.values())).period


def apply_E(X: PeriodicChain, C: FinCategory | None = None) -> ChainFamily:
    """Evaluate a chain in ``C^I`` at every object of ``I``."""
    FC = X.category
    if not isinstance(FC, FunctorCategory):
        raise TypeError("apply_E expects a chain in a functor category")
    I, C = FC.index, FC.base
    levels = X.start + X.period

    def evaluated(i, entries):
        return tuple((FC.functors[obj].object_map[i], FC.transformations[mor].components[i])
                     for obj, mor in entries)

    chains = {i: PeriodicChain(C, evaluated(i, X.prefix), evaluated(i, X.cycle)) for i in I.objects}
    maps = {(u, k): FC.functors[X.obj(k)].morphism_map[u] for u in I.morphisms for k in range(levels)}
    return ChainFamily(I, chains, maps)


def family_bifunctor(U: ChainFamily, V: ChainFamily) -> tuple[FinBifunctor, dict]:
    """``(i, j) |-> Hom_Ind(U_i, V_j)`` acting by pre/postcomposition."""
    I = U.index
    homs = {(i, j): ind_hom(U.chains[i], V.chains[j]) for i in I.objects for j in I.objects}
    mX, mY = U.start, V.start
    value = {k: h.elements for k, h in homs.items()}
    C = next(iter(U.chains.values())).category
    action = {}
    for u, (i2, i) in I.arrows.items():
        Uu = U.maps[u, mX]
        for v, (j, j2) in I.arrows.items():
            Vv = V.maps[v, mY]
            target = homs[i2, j2]
            action[u, v] = {e: target.normalize(mX, C.table[Vv, C.table[e, Uu]]) for e in value[i, j]}
    return FinBifunctor(I, value, action), homs


def hom_in_functor_ind(I: FinCategory, U: ChainFamily, V: ChainFamily):
    """The end over ``I`` of the componentwise ind-hom sets."""
    H, homs = family_bifunctor(U, V)
    return end_of_bifunctor(I, H), homs


@dataclass
class FaithfulnessCase:
    left: int
    right: int
    bijective: bool
    detail: str = ""


def compare_E_hom(X: PeriodicChain, Y: PeriodicChain) -> FaithfulnessCase:
    """Compare ``Hom(X, Y)`` in ``Ind(C^I)`` with ``Hom(E X, E Y)`` in
    ``Ind(C)^I`` along the map taking a transformation to its components."""
    FC = X.category
    I = FC.index
    left = ind_hom(X, Y)
    U, V = apply_E(X), apply_E(Y)
    end, homs = hom_in_functor_ind(I, U, V)
    end_set = set(end.elements)
    images = []
    for alpha in left.elements:
        comps = FC.transformations[alpha].components
        image = tuple(homs[i, i].normalize(X.start, comps[i]) for i in I.objects)
        if image not in end_set:
            return FaithfulnessCase(len(left), len(end), False, f"{alpha} does not land in the end")
        images.append(image)
    bij = len(set(images)) == len(images) == len(end)
    return FaithfulnessCase(len(left), len(end), bij, "" if bij else "comparison not bijective")


@dataclass
class FaithfulnessReport:
    category: str
    index: str
    cases: list

    @property
    def all_bijective(self) -> bool:
        return all(c.bijective for c in self.cases)

    def lines(self) -> list[str]:
        out = [f"full faithfulness {self.category}^{self.index}: {len(self.cases)} samples"]
        for k, c in enumerate(self.cases):
            status = "bijective" if c.bijective else f"FAILED ({c.detail})"
            out.append(f"sample {k}: |Hom_Ind(C^I)| = {c.left}, |Hom_Ind(C)^I| = {c.right}: {status}")
        out.append("ALL BIJECTIVE" if self.all_bijective else "FAILURE")
        return out


def check_full_faithfulness(C: FinCategory, I: FinCategory, samples=None, count: int = 50,
                            seed: int = 0, FC: FunctorCategory | None = None) -> FaithfulnessReport:
    """Run :func:`compare_E_hom` on the given chain pairs in ``C^I``, or on
    ``count`` seeded random pairs."""
    FC = FC or functor_category(I, C)
    if samples is None:
        rng = random.Random(seed)
        samples = [(random_periodic_chain(FC, rng), random_periodic_chain(FC, rng)) for _ in range(count)]
    return FaithfulnessReport(C.name, I.name, [compare_E_hom(X, Y) for X, Y in samples])


# -- the staged counterexample ----------------------------------------------------

@dataclass
class StageReport:
    stage: int
    presheaf_checks: int
    presheaf_ok: bool
    certificate: object


@dataclass
class CounterexampleReport:
    category: FinCategory
    stages: list

    @property
    def first_certificate(self) -> int | None:
        for s in self.stages:
            if s.certificate is not None:
                return s.stage
        return None

    @property
    def presheaf_ok(self) -> bool:
        return all(s.presheaf_ok for s in self.stages)

    @property
    def monotone(self) -> bool:
        seen = False
        for s in self.stages:
            if seen and s.certificate is None:
                return False
            seen = seen or s.certificate is not None
        return True

    def lines(self) -> list[str]:
        out = [f"counterexample {self.category.name}: stages 1..{len(self.stages)}"]
        for s in self.stages:
            ok = "ok" if s.presheaf_ok else "FAILED"
            out.append(f"stage {s.stage}: presheaf E_x(y,b) = Hom_I(y,x): {ok} ({s.presheaf_checks} checks)")
            out.append(f"stage {s.stage}: retract certificate: {'present' if s.certificate else 'absent'}")
        first = self.first_certificate
        out.append("first certificate: " + (f"stage {first}" if first else f"none up to stage {len(self.stages)}"))
        out.append("note: essential surjectivity is not tested directly; "
                   "its failure is certified through the absence of retract certificates")
        return out


def truncated_presheaf_check(I: FinCategory, n: int) -> tuple[int, bool]:
    """For the chain ``(x,0) -> (x,1) -> ...`` in ``I^(n)``, check that every
    available ``Hom((y,b), (x,k))`` with ``k > b`` projects bijectively onto
    ``Hom_I(y, x)`` compatibly with the connecting maps."""
    staged = build_I_alpha(I, n)
    S = staged.category
    pi = staged.projection
    checks, ok = 0, True
    for x in I.objects:
        steps = [(I.identity[x], k, k + 1) for k in range(n - 1)]
        for y in I.objects:
            target = set(I.hom(y, x))
            for b in range(n - 1):
                for k in range(b + 1, n):
                    hom = S.hom((y, b), (x, k))
                    proj = [pi.morphism_map[h] for h in hom]
                    checks += 1
                    if len(set(proj)) != len(proj) or set(proj) != target:
                        ok = False
                    if k + 1 < n:
                        moved = [pi.morphism_map[S.table[steps[k], h]] for h in hom]
                        if moved != proj:
                            ok = False
    return checks, ok


def counterexample_report(I: FinCategory, n_max: int) -> CounterexampleReport:
    stages = []
    for n in range(1, n_max + 1):
        checks, ok = truncated_presheaf_check(I, n)
        stages.append(StageReport(n, checks, ok, retract_through_stage(I, n)))
    return CounterexampleReport(I, stages)
