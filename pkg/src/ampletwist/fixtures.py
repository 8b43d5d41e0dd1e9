"""The fixture corpus: small groupoids, twists and one non-central extension."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .gpdkit import (
    FiniteGroupoid,
    GroupoidFunctor,
    bundle_over_units,
    check_functor,
    group_groupoid,
    pair_groupoid,
    unit_groupoid,
)
from .twistkit import FiniteAbelianGroup, TwistExtension, twist_from_groupoid_cocycle, validate_twist


@lru_cache(maxsize=None)
def G1() -> FiniteGroupoid:
    """One unit, no other arrows."""
    return unit_groupoid(1, ["x"])


@lru_cache(maxsize=None)
def G2() -> FiniteGroupoid:
    """Z/2 as a one-object groupoid with arrows e, g."""
    return group_groupoid([[0, 1], [1, 0]], 0, ["e", "g"])


@lru_cache(maxsize=None)
def G3() -> FiniteGroupoid:
    """Two isolated units."""
    return unit_groupoid(2, ["x", "y"])


@lru_cache(maxsize=None)
def G4() -> FiniteGroupoid:
    """The pair groupoid on {1, 2}."""
    return pair_groupoid([1, 2])


@lru_cache(maxsize=None)
def Z2() -> FiniteAbelianGroup:
    return FiniteAbelianGroup.cyclic(2)


@lru_cache(maxsize=None)
def TW1() -> TwistExtension:
    """The trivial Z/2-twist over G4."""
    return twist_from_groupoid_cocycle(G4(), Z2(), lambda g, h: 0)


@lru_cache(maxsize=None)
def TW0() -> TwistExtension:
    """The trivial Z/2-twist over G2."""
    return twist_from_groupoid_cocycle(G2(), Z2(), lambda g, h: 0)


@lru_cache(maxsize=None)
def TW2() -> TwistExtension:
    """The Z/2-twist over G2 with sigma(g, g) = a; Sigma is cyclic of order 4."""
    return twist_from_groupoid_cocycle(G2(), Z2(), lambda g, h: 1 if (g, h) == (1, 1) else 0)


@lru_cache(maxsize=None)
def trivial_twist_G1() -> TwistExtension:
    return twist_from_groupoid_cocycle(G1(), Z2(), lambda g, h: 0)


@lru_cache(maxsize=None)
def noncentral_S3() -> TwistExtension:
    """Z/3 -> S3 -> Z/2: the reflection acts on the rotations by inversion.

    Sigma is S3 as a one-object groupoid, G is G2.  Validated without the
    centrality requirement.
    """
    # odd permutations (the reflections) first, then the rotations
    perms = sorted(permutations(range(3)), key=lambda p: (_sign(p), p))
    idx = {p: i for i, p in enumerate(perms)}
    mult = [[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    Sig = group_groupoid(mult, idx[(0, 1, 2)], ["".join(map(str, p)) for p in perms])
    rot = [idx[(0, 1, 2)], idx[(1, 2, 0)], idx[(2, 0, 1)]]
    A = FiniteAbelianGroup(["1", "r", "r^2"], [[(i + j) % 3 for j in range(3)] for i in range(3)], 0)
    G = G2()
    bundle = bundle_over_units(A, G)
    iota = GroupoidFunctor(bundle, Sig, tuple(rot))
    phi = GroupoidFunctor(Sig, G, tuple(0 if _sign(p) == 1 else 1 for p in perms))
    check_functor(iota)
    check_functor(phi)
    T = TwistExtension(A, G, Sig, iota, phi)
    validate_twist(T, require_central=False)
    return T


def _sign(p) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return 1 if inv % 2 == 0 else -1


@lru_cache(maxsize=None)
def collapse_G2_G1() -> GroupoidFunctor:
    return GroupoidFunctor(G2(), G1(), (0, 0))


@lru_cache(maxsize=None)
def unit_inclusion_G3_G4() -> GroupoidFunctor:
    """The units of the pair groupoid as a subgroupoid."""
    G3_, G4_ = G3(), G4()
    return GroupoidFunctor(G3_, G4_, tuple(G4_.units))


@lru_cache(maxsize=None)
def swap_G4() -> GroupoidFunctor:
    """The automorphism of G4 swapping the two points."""
    G = G4()
    return GroupoidFunctor(G, G, tuple(G.index(f"({3 - int(n[1])},{3 - int(n[3])})") for n in G.names))


def groupoids() -> dict:
    return {"G1": G1(), "G2": G2(), "G3": G3(), "G4": G4()}


def twists() -> dict:
    return {"TW1": TW1(), "TW2": TW2()}


def iso_unital_functors() -> dict:
    """Every iso-unital functor of the corpus, by name."""
    out = {
        "collapse G2->G1": collapse_G2_G1(),
        "swap G4": swap_G4(),
        "id G2": GroupoidFunctor(G2(), G2(), (0, 1)),
    }
    for name, T in (("TW1", TW1()), ("TW2", TW2()), ("TW0", TW0())):
        out[f"{name} projection"] = T.phi
        out[f"{name} kernel"] = T.iota
    return out


def all_functors() -> dict:
    out = iso_unital_functors()
    out["units G3->G4"] = unit_inclusion_G3_G4()
    return out

