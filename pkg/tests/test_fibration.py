import itertools

import pytest

from fincat.constructions import opposite, product, projection, restriction_functor, terminal, twisted_arrow
from fincat.enumerator import catalog, fixture
from fincat.fibration import cartesian_lift, is_cartesian_fibration, is_sieve
from fincat.functor import Functor, compose_functors, identity_functor
from fincat.wellfounded import build_I_alpha


def test_sieve_examples():
    wa = fixture("walking_arrow")
    assert is_sieve(wa, ["a", "b"]).holds
    assert is_sieve(wa, ["a"]).holds
    d = is_sieve(wa, ["b"])
    assert not d.holds and d.witness == "f"
    for name in ("z2", "square", "walking_iso"):
        staged = build_I_alpha(fixture(name), 2)
        assert is_sieve(staged.category, staged.stage_objects(0)).holds


def test_identity_is_a_fibration():
    for fx in catalog():
        assert is_cartesian_fibration(identity_functor(fx.category)).holds


def test_anything_to_terminal_is_a_fibration():
    wa = fixture("walking_arrow")
    P = Functor(wa, terminal(), {"a": "pt", "b": "pt"}, {m: "id_pt" for m in wa.morphisms})
    assert is_cartesian_fibration(P).holds


def test_codomain_of_twisted_arrow_is_not_a_fibration():
    wa = fixture("walking_arrow")
    Tw, proj = twisted_arrow(wa)
    P = product(opposite(wa), wa)
    cod = compose_functors(projection(P, opposite(wa), wa, 1), proj)
    d = is_cartesian_fibration(cod)
    assert not d.holds
    assert d.witness == ("id_b", "f")
    assert cartesian_lift(cod, "id_b", "f") is None


@pytest.mark.parametrize("fx", [f for f in catalog() if len(f.category.objects) <= 4], ids=lambda f: f.name)
def test_sieve_restrictions_are_fibrations(fx):
    B = fx.category
    C = fixture("walking_arrow")
    for r in range(1, len(B.objects) + 1):
        for A in itertools.combinations(B.objects, r):
            if is_sieve(B, A).holds:
                P, *_ = restriction_functor(B, A, C)
                assert is_cartesian_fibration(P).holds, A


def test_non_sieve_restriction_lacks_a_lift():
    B, C = fixture("walking_arrow"), fixture("parallel_pair")
    P, CB, CA, _ = restriction_functor(B, ["b"], C)
    d = is_cartesian_fibration(P)
    assert not d.holds
    e, f = d.witness
    # e is the functor sending the arrow to f; the missing lift is over b's g
    assert CB.functors[e].morphism_map["f"] == "f"
    assert CA.transformations[f].components["b"] == "g"
