import itertools

import pytest

from fincat.caps import size_caps
from fincat.constructions import discrete, finset_category, posetal_reflection, terminal
from fincat.enumerator import fixture
from fincat.errors import SizeLimitExceeded
from fincat.functor import (
    Functor, enumerate_functors, identity_functor, identity_transformation, inclusion_functor,
    is_conservative, is_equivalence, is_identity_reflecting, is_natural, natural_transformations,
)

SMALL = ["terminal", "discrete2", "walking_arrow", "parallel_pair", "walking_iso",
         "walking_idempotent", "z2", "z3", "span"]


def brute_functors(C, D):
    """Every assignment of objects and morphisms, filtered by the functor laws."""
    out = []
    for objs in itertools.product(D.objects, repeat=len(C.objects)):
        om = dict(zip(C.objects, objs))
        choices = [D.hom(om[C.src(f)], om[C.tgt(f)]) for f in C.morphisms]
        for mors in itertools.product(*choices):
            mm = dict(zip(C.morphisms, mors))
            if any(mm[C.identity[x]] != D.identity[om[x]] for x in C.objects):
                continue
            if all(D.table[mm[g], mm[f]] == mm[h] for (g, f), h in C.table.items()):
                out.append((tuple(objs), tuple(mors)))
    return out


def brute_nats(F, G):
    C, D = F.source, F.target
    choices = [D.hom(F.object_map[x], G.object_map[x]) for x in C.objects]
    count = 0
    for comps in itertools.product(*choices):
        c = dict(zip(C.objects, comps))
        if all(D.table[G.morphism_map[f], c[C.src(f)]] == D.table[c[C.tgt(f)], F.morphism_map[f]]
               for f in C.morphisms):
            count += 1
    return count


@pytest.mark.parametrize("src", SMALL)
@pytest.mark.parametrize("tgt", ["walking_arrow", "z2", "walking_idempotent", "span"])
def test_functor_enumeration_matches_brute_force(src, tgt):
    C, D = fixture(src), fixture(tgt)
    assert len(enumerate_functors(C, D)) == len(brute_functors(C, D))


def test_named_functor_counts():
    assert len(enumerate_functors(fixture("span"), terminal())) == 1
    assert len(enumerate_functors(fixture("z2"), fixture("z2"))) == 2
    assert len(enumerate_functors(fixture("walking_arrow"), fixture("z2"))) == 2


def test_natural_transformations_match_brute_force():
    C, D = fixture("span"), finset_category(2)
    Fs = enumerate_functors(C, D)
    for F in Fs[:12]:
        for G in Fs[:12]:
            assert len(natural_transformations(F, G)) == brute_nats(F, G)


def test_center_counts():
    z2 = identity_functor(fixture("z2"))
    assert len(natural_transformations(z2, z2)) == 2
    wa = identity_functor(fixture("walking_arrow"))
    assert len(natural_transformations(wa, wa)) == 1
    eta = identity_transformation(wa)
    assert is_natural(eta)


def test_equivalence_examples():
    wi, T = fixture("walking_iso"), terminal()
    collapse = enumerate_functors(wi, T)[0]
    assert is_equivalence(collapse).holds
    assert is_equivalence(identity_functor(wi)).holds
    assert not is_equivalence(enumerate_functors(fixture("z2"), T)[0]).holds


def test_identity_reflection_and_conservativity():
    wi = fixture("walking_iso")
    R = posetal_reflection(wi)
    assert not is_identity_reflecting(R.quotient).holds
    wa = fixture("walking_arrow")
    to_pt = enumerate_functors(wa, terminal())[0]
    d = is_conservative(to_pt)
    assert not d.holds and d.witness == "f"
    assert is_conservative(identity_functor(wa)).holds
    sub = wa.full_subcategory(["a"], "sub")
    assert is_identity_reflecting(inclusion_functor(sub, wa)).holds


def test_functor_cap_is_enforced():
    with size_caps(functors=3):
        with pytest.raises(SizeLimitExceeded):
            enumerate_functors(discrete(3), discrete(2))
    assert len(enumerate_functors(discrete(3), discrete(2))) == 8


def test_functor_equality_is_structural():
    wa = fixture("walking_arrow")
    F = identity_functor(wa)
    G = Functor(wa, wa, dict(F.object_map), dict(F.morphism_map))
    assert F == G and hash(F) == hash(G)
