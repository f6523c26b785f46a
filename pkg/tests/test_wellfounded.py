import itertools

import networkx as nx
import pytest

from fincat.constructions import discrete, iso_classes, ordinal
from fincat.enumerator import catalog, enumerate_categories, fixture
from fincat.functor import compose_functors, is_faithful, is_functor, is_identity_reflecting, iter_functors
from fincat.wellfounded import (
    RankFunction, build_I_alpha, crosscheck_characterizations, decide_strictly_well_founded,
    decide_well_founded, find_cycle, raise_certificate, rank_function, retract_through_stage,
    section_up_to_iso, strict_section, sw3, sw4, w1, w2, w3, w4,
)

FIXTURES = catalog()


def sw_oracle(I):
    g = nx.DiGraph()
    g.add_nodes_from(I.objects)
    g.add_edges_from(I.arrows[f] for f in I.non_identity_morphisms())
    return nx.is_directed_acyclic_graph(g)


def w_oracle(I):
    """No non-identity endomorphisms, and the non-iso arrows between iso
    classes form an acyclic relation."""
    if any(len(I.hom(x, x)) > 1 for x in I.objects):
        return False
    cls = {}
    for k, c in enumerate(iso_classes(I)):
        for x in c:
            cls[x] = k
    g = nx.DiGraph()
    g.add_nodes_from(set(cls.values()))
    g.add_edges_from((cls[s], cls[t]) for f, (s, t) in I.arrows.items() if cls[s] != cls[t])
    return nx.is_directed_acyclic_graph(g)


def brute_retract_exists(I, n):
    """Every functor into I^(n) and every unit/counit pair, unpruned."""
    staged = build_I_alpha(I, n)
    for s in iter_functors(I, staged.category):
        P = compose_functors(staged.projection, s)
        units = [I.hom(x, P.object_map[x]) for x in I.objects]
        counits = [I.hom(P.object_map[x], x) for x in I.objects]
        for us in itertools.product(*units):
            u = dict(zip(I.objects, us))
            if any(I.table[P.morphism_map[f], u[a]] != I.table[u[b], f] for f, (a, b) in I.arrows.items()):
                continue
            for cs in itertools.product(*counits):
                c = dict(zip(I.objects, cs))
                if any(I.table[c[x], u[x]] != I.identity[x] for x in I.objects):
                    continue
                if all(I.table[f, c[a]] == I.table[c[b], P.morphism_map[f]] for f, (a, b) in I.arrows.items()):
                    return True
    return False


def test_staged_category_sizes():
    wa = fixture("walking_arrow")
    S1 = build_I_alpha(fixture("square"), 1).category
    assert len(S1.non_identity_morphisms()) == 0 and len(S1.objects) == 4
    S = build_I_alpha(wa, 2)
    assert (len(S.category.objects), len(S.category.morphisms)) == (4, 7)


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_projection_is_faithful_and_sections_reflect_identities(fx):
    for n in (1, 2, 3):
        staged = build_I_alpha(fx.category, n)
        pi = staged.projection
        assert is_functor(pi) and is_faithful(pi).holds
        if n > 1:
            # (id_x, 0, 1) lies over an identity
            assert not is_identity_reflecting(pi).holds
    s = strict_section(fx.category, len(fx.category.objects))
    assert (s is not None) == fx.strictly_well_founded
    if s is not None:
        assert is_identity_reflecting(s).holds


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_labels_match_deciders_and_oracles(fx):
    I = fx.category
    assert decide_strictly_well_founded(I).holds == fx.strictly_well_founded == sw_oracle(I)
    assert decide_well_founded(I).holds_for_all == fx.well_founded == w_oracle(I)


def test_enumerated_categories_match_oracles():
    for I in enumerate_categories(4):
        assert decide_strictly_well_founded(I).holds == sw_oracle(I)
        assert decide_well_founded(I).holds_for_all == w_oracle(I)


def test_cycle_witnesses():
    assert decide_strictly_well_founded(fixture("z2")).witness == ["sigma"]
    cyc = decide_strictly_well_founded(fixture("walking_iso")).witness
    assert sorted(cyc) == ["f", "finv"]
    assert find_cycle(fixture("square")) is None
    assert decide_well_founded(fixture("z2")).witness == ["sigma"]


def test_rank_functions():
    assert rank_function(fixture("chain3")).assignment == {"a": 0, "b": 1, "c": 2}
    assert set(rank_function(discrete(3)).assignment.values()) == {0}
    assert rank_function(fixture("z2")) is None
    v = decide_well_founded(fixture("square"))
    assert v.is_rank and v.witness.assignment == {"a": 0, "b": 1, "c": 1, "d": 2}
    r = rank_function(fixture("chain4"))
    assert r.is_valid_on(fixture("chain4"))
    assert is_functor(r.as_functor(fixture("chain4")))
    assert not RankFunction({"a": 0, "b": 0}).is_valid_on(fixture("walking_arrow"))


def test_strict_sections():
    c3 = fixture("chain3")
    assert strict_section(c3, 2) is None
    s = strict_section(c3, 3)
    assert s.object_map == {"a": ("a", 0), "b": ("b", 1), "c": ("c", 2)}
    for n in (1, 2, 3, 4):
        assert strict_section(fixture("walking_idempotent"), n) is None


def test_walking_iso_sections_up_to_iso():
    wi = fixture("walking_iso")
    # both objects collapse onto (a, 0), with components id_a and f
    sec = section_up_to_iso(wi, 1)
    assert sec is not None
    assert sec.lift.object_map == {"a": ("a", 0), "b": ("a", 0)}
    assert sec.iso.components == {"a": "id_a", "b": "f"}
    assert strict_section(wi, 4) is None


@pytest.mark.parametrize("name", ["z2", "z3", "walking_idempotent", "idempotent_monoid_2"])
def test_non_well_founded_have_no_retracts(name):
    I = fixture(name)
    for n in (1, 2, 3, 4):
        assert section_up_to_iso(I, n) is None
        assert retract_through_stage(I, n) is None


@pytest.mark.parametrize("name", ["z2", "walking_idempotent", "walking_arrow", "walking_iso", "idempotent_monoid_2"])
def test_retract_search_matches_brute_force(name):
    I = fixture(name)
    for n in (1, 2, 3):
        assert (retract_through_stage(I, n) is not None) == brute_retract_exists(I, n)


def test_square_certificate_and_raising():
    sq = fixture("square")
    assert retract_through_stage(sq, 2) is None
    cert = retract_through_stage(sq, 3)
    assert cert is not None and cert.verify(sq)
    higher = raise_certificate(cert, sq, 5)
    assert higher.stage == 5 and higher.verify(sq)
    with pytest.raises(ValueError):
        raise_certificate(cert, sq, 2)


def test_individual_characterizations():
    wi = fixture("walking_iso")
    assert not sw3(wi).holds and not sw4(wi).holds
    assert w1(wi).holds and w2(wi).holds and w3(wi).holds and w4(wi).holds
    assert not w1(fixture("z2")).holds


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_crosscheck_report(fx):
    rep = crosscheck_characterizations(fx.category)
    assert rep.concordant
    assert rep.sw["SW2"] == fx.strictly_well_founded
    assert rep.w["W3"] == fx.well_founded
    assert rep.lines()[-1] == "CONCORDANT"
