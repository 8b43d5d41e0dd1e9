"""
Finite groupoids with the discrete topology.

Arrows are integers ``0..m-1``.  ``comp[g][h]`` is the product ``gh`` (first
``h``, then ``g``) and is ``None`` unless ``dom[g] == ran[h]``.  Every
subset is compact open, so a bisection is any set on which ``dom`` and
``ran`` are injective.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Sequence

from .errors import InconsistentVerdict, ValidationError


class BadComposability(ValidationError):
    pass


class GroupoidNotAssociative(ValidationError):
    pass


class BadInverse(ValidationError):
    pass


class NotAFunctor(ValidationError):
    pass


class FiniteGroupoid:
    def __init__(self, names, dom, ran, comp, inv, units):
        self.names = tuple(names)
        self.dom = tuple(dom)
        self.ran = tuple(ran)
        self.comp = comp
        self.inv = tuple(inv)
        self.units = tuple(units)
        self.n = len(self.names)
        self._index = {x: i for i, x in enumerate(self.names)}
        self._units = frozenset(self.units)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"<FiniteGroupoid arrows={self.n} units={len(self.units)}>"

    def index(self, name):
        return self._index[name]

    def is_unit(self, g):
        return g in self._units

    def compose(self, g, h):
        return self.comp[g][h]

    def set_product(self, U: Iterable[int], V: Iterable[int]) -> frozenset:
        V = tuple(V)
        return frozenset(self.comp[g][h] for g in U for h in V if self.dom[g] == self.ran[h])

    def set_inverse(self, U) -> frozenset:
        return frozenset(self.inv[g] for g in U)

    def isotropy_only(self):
        return all(self.dom[g] == self.ran[g] for g in range(self.n))


def validate_groupoid(names, dom, ran, comp, inv, units=None) -> FiniteGroupoid:
    """Check the groupoid axioms exhaustively.

    ``dom``/``ran``/``inv`` are index tables, ``comp`` a square table with
    ``None`` for undefined products.  ``units`` when given must match the
    set of arrows ``g`` with ``dom(g) == g``.
    """
    n = len(names)
    if len(set(names)) != n:
        raise ValidationError("arrow names must be distinct")
    dom, ran, inv = tuple(dom), tuple(ran), tuple(inv)
    comp = tuple(tuple(row) for row in comp)
    if any(len(t) != n for t in (dom, ran, inv)) or len(comp) != n:
        raise ValidationError("tables do not match the number of arrows")
    derived_units = tuple(g for g in range(n) if dom[g] == g)
    if units is not None and set(units) != set(derived_units):
        raise ValidationError(f"declared units {sorted(units)} differ from derived {list(derived_units)}")
    for u in derived_units:
        if ran[u] != u:
            raise ValidationError(f"unit {names[u]} has range {names[ran[u]]}", (u,))
    for g in range(n):
        if dom[g] not in derived_units or ran[g] not in derived_units:
            raise ValidationError(f"arrow {names[g]} has a non-unit endpoint", (g,))
    for g in range(n):
        if len(comp[g]) != n:
            raise ValidationError(f"composition row {g} has the wrong length", (g,))
        for h in range(n):
            x = comp[g][h]
            if (x is not None) != (dom[g] == ran[h]):
                raise BadComposability(f"{names[g]}*{names[h]} definedness is wrong", (g, h))
            if x is not None and (dom[x] != dom[h] or ran[x] != ran[g]):
                raise BadComposability(f"{names[g]}*{names[h]} has wrong endpoints", (g, h))
    for g in range(n):
        if comp[g][dom[g]] != g or comp[ran[g]][g] != g:
            raise BadComposability(f"units do not act as identities on {names[g]}", (g,))
    for g, h, k in product(range(n), repeat=3):
        gh = comp[g][h]
        hk = comp[h][k]
        if gh is None or hk is None:
            continue
        if comp[gh][k] != comp[g][hk]:
            raise GroupoidNotAssociative(f"({names[g]}{names[h]}){names[k]}", (g, h, k))
    for g in range(n):
        i = inv[g]
        if not 0 <= i < n or inv[i] != g or comp[i][g] != dom[g] or comp[g][i] != ran[g]:
            raise BadInverse(f"bad inverse for {names[g]}", (g,))
    return FiniteGroupoid(names, dom, ran, comp, inv, derived_units)


def groupoid_from_function(
    arrows: Sequence,
    dom: Callable,
    ran: Callable,
    compose: Callable,
    inverse: Callable,
    names: Sequence[str] | None = None,
) -> FiniteGroupoid:
    """Tabulate a groupoid given on hashable arrow values."""
    idx = {a: i for i, a in enumerate(arrows)}
    n = len(arrows)
    d = [idx[dom(a)] for a in arrows]
    r = [idx[ran(a)] for a in arrows]
    comp = [[None] * n for _ in range(n)]
    for i, g in enumerate(arrows):
        for j, h in enumerate(arrows):
            if d[i] == r[j]:
                comp[i][j] = idx[compose(g, h)]
    inv = [idx[inverse(a)] for a in arrows]
    if names is None:
        names = [str(a) for a in arrows]
    return validate_groupoid(names, d, r, comp, inv)


def is_bisection(G: FiniteGroupoid, U: Iterable[int]) -> bool:
    U = list(U)
    return len({G.dom[g] for g in U}) == len(U) == len({G.ran[g] for g in U})


@dataclass(frozen=True)
class GroupoidFunctor:
    source: FiniteGroupoid
    target: FiniteGroupoid
    map: tuple

    def __call__(self, g):
        return self.map[g]

    def image(self, U) -> frozenset:
        return frozenset(self.map[g] for g in U)

    def compose(self, other: "GroupoidFunctor") -> "GroupoidFunctor":
        """self after other"""
        return GroupoidFunctor(other.source, self.target, tuple(self.map[x] for x in other.map))


@dataclass(frozen=True)
class FunctorFlags:
    is_functor: bool
    iso_unital: bool
    injective: bool
    surjective: bool
    witness: tuple = ()


def check_functor(F: GroupoidFunctor, strict: bool = True) -> FunctorFlags:
    G, H, f = F.source, F.target, F.map
    if len(f) != G.n or any(not 0 <= x < H.n for x in f):
        raise ValidationError("functor table is not total source -> target")
    witness = ()
    for u in G.units:
        if not H.is_unit(f[u]):
            witness = (u,)
            break
    if not witness:
        for g in range(G.n):
            for h in range(G.n):
                gh = G.comp[g][h]
                if gh is None:
                    continue
                if H.comp[f[g]][f[h]] != f[gh]:
                    witness = (g, h)
                    break
            if witness:
                break
    if witness and strict:
        raise NotAFunctor(f"functor condition fails at {witness}", witness)
    unit_img = [f[u] for u in G.units]
    iso_unital = len(set(unit_img)) == len(unit_img) and set(unit_img) == set(H.units)
    injective = len(set(f)) == G.n
    surjective = set(f) == set(range(H.n))
    flags = FunctorFlags(not witness, iso_unital, injective, surjective, witness)
    if flags.is_functor and iso_unital:
        pre_units = {g for g in range(G.n) if H.is_unit(f[g])}
        if injective != (pre_units == set(G.units)):
            raise InconsistentVerdict("unit-preimage criterion disagrees with injectivity")
    return flags


def identity_functor(G: FiniteGroupoid) -> GroupoidFunctor:
    return GroupoidFunctor(G, G, tuple(range(G.n)))


def search_functor(G: FiniteGroupoid, H: FiniteGroupoid, candidates: Sequence[Sequence[int]], bijective=True):
    """Backtracking search for a functor with ``map[g] in candidates[g]``; None when exhausted."""
    n = G.n
    order = sorted(range(n), key=lambda g: (len(candidates[g]), g))
    f = [None] * n
    used = set()

    def ok(g):
        fg = f[g]
        fd, fr = f[G.dom[g]], f[G.ran[g]]
        if fd is not None and H.dom[fg] != fd:
            return False
        if fr is not None and H.ran[fg] != fr:
            return False
        if f[G.inv[g]] is not None and H.inv[fg] != f[G.inv[g]]:
            return False
        for h in range(n):
            fh = f[h]
            if fh is None:
                continue
            gh = G.comp[g][h]
            if gh is not None and f[gh] is not None and H.comp[fg][fh] != f[gh]:
                return False
            hg = G.comp[h][g]
            if hg is not None and f[hg] is not None and H.comp[fh][fg] != f[hg]:
                return False
            for a in range(n):
                if f[a] is None:
                    continue
                if G.comp[a][h] == g and H.comp[f[a]][fh] != fg:
                    return False
        return True

    def go(i):
        if i == n:
            return True
        g = order[i]
        for c in candidates[g]:
            if bijective and c in used:
                continue
            f[g] = c
            used.add(c)
            if ok(g) and go(i + 1):
                return True
            used.discard(c)
        f[g] = None
        return False

    if go(0):
        F = GroupoidFunctor(G, H, tuple(f))
        check_functor(F)
        return F
    return None


def unit_groupoid(n_units: int, names=None) -> FiniteGroupoid:
    """The groupoid with ``n_units`` units and no other arrows."""
    names = names or [f"x{i}" for i in range(n_units)]
    idx = list(range(n_units))
    comp = [[i if i == j else None for j in idx] for i in idx]
    return validate_groupoid(names, idx, idx, comp, idx)


def group_groupoid(mult: Sequence[Sequence[int]], identity: int, names=None) -> FiniteGroupoid:
    """A group as a one-object groupoid."""
    n = len(mult)
    names = names or [str(i) for i in range(n)]
    inv = []
    for g in range(n):
        hs = [h for h in range(n) if mult[g][h] == identity]
        if not hs:
            raise BadInverse(f"{names[g]} has no inverse", (g,))
        inv.append(hs[0])
    return validate_groupoid(names, [identity] * n, [identity] * n, mult, inv)


def pair_groupoid(points: Sequence) -> FiniteGroupoid:
    arrows = [(i, j) for i in points for j in points]
    return groupoid_from_function(
        arrows,
        dom=lambda a: (a[1], a[1]),
        ran=lambda a: (a[0], a[0]),
        compose=lambda g, h: (g[0], h[1]),
        inverse=lambda a: (a[1], a[0]),
        names=[f"({i},{j})" for i, j in arrows],
    )


def bundle_over_units(A, G: FiniteGroupoid) -> FiniteGroupoid:
    """The group bundle A x G0; arrow (a, x) sits at index a*len(units)+i."""
    m = len(G.units)
    arrows = [(a, x) for a in range(A.n) for x in range(m)]
    return groupoid_from_function(
        arrows,
        dom=lambda t: (A.identity, t[1]),
        ran=lambda t: (A.identity, t[1]),
        compose=lambda g, h: (A.mult[g[0]][h[0]], g[1]),
        inverse=lambda t: (A.inv[t[0]], t[1]),
        names=[f"({A.names[a]},{G.names[G.units[x]]})" for a, x in arrows],
    )
