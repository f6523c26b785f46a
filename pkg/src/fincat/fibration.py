"""Sieves and cartesian fibrations between finite categories."""
from __future__ import annotations

from .category import FinCategory
from .functor import Decision, Functor


def is_sieve(B: FinCategory, A) -> Decision:
    """``A`` (a set of objects, read as a full subcategory) is closed under
    incoming arrows. Witness on failure: an arrow ``b -> a`` leaving the
    complement."""
    A = set(A)
    for f, (b, a) in B.arrows.items():
        if a in A and b not in A:
            return Decision(False, f)
    return Decision(True)


def is_cartesian(P: Functor, phi) -> bool:
    """Whether ``phi: e1 -> e`` is ``P``-cartesian: every ``psi: e2 -> e`` with
    ``P psi = P phi . g`` factors as ``phi . chi`` with ``P chi = g`` for a
    unique ``chi``."""
    E, B = P.source, P.target
    e1, e = E.arrows[phi]
    Pphi = P.morphism_map[phi]
    for e2 in E.objects:
        homs = E.hom(e2, e1)
        for psi in E.hom(e2, e):
            Ppsi = P.morphism_map[psi]
            for g in B.hom(P.object_map[e2], P.object_map[e1]):
                if B.table[Pphi, g] != Ppsi:
                    continue
                lifts = [chi for chi in homs if P.morphism_map[chi] == g and E.table[phi, chi] == psi]
                if len(lifts) != 1:
                    return False
    return True


def cartesian_lift(P: Functor, e, f):
    """A cartesian ``phi`` into ``e`` with ``P phi = f``, or ``None``."""
    E = P.source
    for e1 in E.objects:
        if P.object_map[e1] != P.target.src(f):
            continue
        for phi in E.hom(e1, e):
            if P.morphism_map[phi] == f and is_cartesian(P, phi):
                return phi
    return None


def is_cartesian_fibration(P: Functor) -> Decision:
    """Every ``f: b -> P e`` has a cartesian lift ending at ``e``.

    Witness: ``(e, f)`` without a lift on failure, else ``{(e, f): lift}``.
    """
    E, B = P.source, P.target
    lifts = {}
    for e in E.objects:
        for f in B.morphisms_to(P.object_map[e]):
            phi = cartesian_lift(P, e, f)
            if phi is None:
                return Decision(False, (e, f))
            lifts[e, f] = phi
    return Decision(True, lifts)
