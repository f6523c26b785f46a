import itertools

import pytest

from fincat.constructions import finset_category, product, opposite, terminal
from fincat.ends import (
    FinBifunctor, SetFunctor, compare_end_algorithms, end_of_bifunctor, end_via_twisted_arrow,
    functor_hom_bifunctor, hom_bifunctor, limit_of_set_functor, set_functor_violations,
)
from fincat.enumerator import catalog, fixture
from fincat.functor import enumerate_functors

SMALL = [f for f in catalog() if len(f.category.arrows) <= 6]


def brute_nat_count(F, G):
    C, D = F.source, F.target
    choices = [D.hom(F.object_map[x], G.object_map[x]) for x in C.objects]
    n = 0
    for comps in itertools.product(*choices):
        c = dict(zip(C.objects, comps))
        n += all(D.table[G.morphism_map[f], c[C.src(f)]] == D.table[c[C.tgt(f)], F.morphism_map[f]]
                 for f in C.morphisms)
    return n


def test_end_over_terminal_is_the_set():
    T = terminal()
    H = FinBifunctor(T, {("pt", "pt"): ("x", "y", "z")}, {("id_pt", "id_pt"): {v: v for v in "xyz"}})
    assert sorted(e[0] for e in end_of_bifunctor(T, H).elements) == ["x", "y", "z"]


def test_hom_ends():
    assert len(end_of_bifunctor(fixture("z2"), hom_bifunctor(fixture("z2")))) == 2
    assert len(end_of_bifunctor(fixture("z3"), hom_bifunctor(fixture("z3")))) == 3
    assert len(end_of_bifunctor(fixture("walking_arrow"), hom_bifunctor(fixture("walking_arrow")))) == 1
    assert len(end_of_bifunctor(fixture("walking_idempotent"),
                                hom_bifunctor(fixture("walking_idempotent")))) == 2


@pytest.mark.parametrize("fx", catalog(), ids=lambda f: f.name)
def test_hom_bifunctor_is_a_functor(fx):
    H = hom_bifunctor(fx.category)
    assert set_functor_violations(H.as_set_functor()) == []
    assert compare_end_algorithms(fx.category, H).holds


@pytest.mark.parametrize("fx", SMALL, ids=lambda f: f.name)
def test_end_counts_natural_transformations(fx):
    C = fx.category
    Fs = enumerate_functors(C, finset_category(2))
    for F, G in itertools.product(Fs[:8], repeat=2):
        H = functor_hom_bifunctor(F, G)
        assert len(end_of_bifunctor(C, H)) == brute_nat_count(F, G)
        assert compare_end_algorithms(C, H).holds


def test_twisted_limit_is_indexed_by_morphisms():
    C = fixture("walking_arrow")
    Tw, lim = end_via_twisted_arrow(C, hom_bifunctor(C))
    assert list(Tw.objects) == list(C.morphisms) or set(Tw.objects) == set(C.morphisms)
    assert len(lim) == 1


def test_limit_of_set_functor_on_cospan():
    # pullback of {0,1} -> {0} <- {0,1,2}
    C = fixture("cospan")
    V = SetFunctor(C, {"a": (0, 1), "b": (0, 1, 2), "t": (0,)},
                   {"id_a": {0: 0, 1: 1}, "id_b": {0: 0, 1: 1, 2: 2}, "id_t": {0: 0},
                    "i": {0: 0, 1: 0}, "j": {0: 0, 1: 0, 2: 0}})
    assert set_functor_violations(V) == []
    assert len(limit_of_set_functor(V)) == 6


def test_broken_set_functor_is_reported():
    C = fixture("z2")
    V = SetFunctor(C, {"o": (0, 1)}, {"id_o": {0: 0, 1: 1}, "sigma": {0: 1, 1: 1}})
    assert set_functor_violations(V)
