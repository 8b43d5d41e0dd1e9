"""
Finite inverse semigroups given by multiplication tables.

Elements are the integers ``0..n-1``.  Everything derived from the table
(involution, idempotents, natural order, zero) is computed once by
:func:`validate_inverse_semigroup` and stored on the returned object.

>>> S = validate_inverse_semigroup([[0, 0, 0], [0, 1, 2], [0, 2, 1]], names=["0", "e", "g"])
>>> S.star[2], S.idempotents, S.zero
(2, (0, 1), 0)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Sequence

from .errors import InconsistentVerdict, ValidationError


class NotAssociative(ValidationError):
    pass


class NoPseudoInverse(ValidationError):
    pass


class IdempotentsDontCommute(ValidationError):
    pass


class NotAHomomorphism(ValidationError):
    pass


class NotBoolean(Exception):
    def __init__(self, reason):
        super().__init__(str(reason))
        self.reason = reason


class FiniteInverseSemigroup:
    """A validated finite inverse semigroup. Build with :func:`validate_inverse_semigroup`."""

    def __init__(self, mult, star, names, zero):
        self.mult = mult
        self.star = star
        self.names = names
        self.zero = zero
        n = len(mult)
        self.n = n
        self.idempotents = tuple(s for s in range(n) if mult[s][s] == s)
        self._idem = frozenset(self.idempotents)
        # below[t] = {s : s <= t}
        self.below = tuple(
            frozenset(s for s in range(n) if mult[t][mult[star[s]][s]] == s) for t in range(n)
        )
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"<FiniteInverseSemigroup n={self.n} |E|={len(self.idempotents)}>"

    def mul(self, s, t):
        return self.mult[s][t]

    def prod(self, *elements):
        it = iter(elements)
        acc = next(it)
        for x in it:
            acc = self.mult[acc][x]
        return acc

    def is_idempotent(self, s):
        return s in self._idem

    def dom(self, s):
        """s*s"""
        return self.mult[self.star[s]][s]

    def ran(self, s):
        """ss*"""
        return self.mult[s][self.star[s]]

    def leq(self, s, t):
        return s in self.below[t]

    def index(self, name):
        return self._index[name]

    def name(self, s):
        return self.names[s]

    def is_commutative(self):
        m = self.mult
        return all(m[s][t] == m[t][s] for s in range(self.n) for t in range(s))

    def idempotent_below(self, s):
        return [e for e in self.idempotents if e in self.below[s]]


def validate_inverse_semigroup(mult: Sequence[Sequence[int]], names: Sequence[str] | None = None):
    """Check the inverse-semigroup axioms exhaustively and derive the structure.

    Raises :class:`NotAssociative`, :class:`IdempotentsDontCommute` or
    :class:`NoPseudoInverse` carrying the first witness found.
    """
    n = len(mult)
    if n == 0:
        raise ValidationError("empty table")
    rows = tuple(tuple(int(x) for x in row) for row in mult)
    for s, row in enumerate(rows):
        if len(row) != n or any(not 0 <= x < n for x in row):
            raise ValidationError(f"row {s} is not a total row over {n} elements", (s,))
    names = tuple(str(x) for x in names) if names is not None else tuple(str(i) for i in range(n))
    if len(names) != n or len(set(names)) != n:
        raise ValidationError("element names must be distinct and match the table size")

    for s in range(n):
        rs = rows[s]
        for t in range(n):
            st = rs[t]
            rst = rows[st]
            rt = rows[t]
            for u in range(n):
                if rst[u] != rs[rt[u]]:
                    raise NotAssociative(f"({s}{t}){u} != {s}({t}{u})", (s, t, u))

    idem = [e for e in range(n) if rows[e][e] == e]
    for e in idem:
        for f in idem:
            if rows[e][f] != rows[f][e]:
                raise IdempotentsDontCommute(f"{names[e]}{names[f]} != {names[f]}{names[e]}", (e, f))

    star = []
    for s in range(n):
        cands = [t for t in range(n) if rows[rows[s][t]][s] == s and rows[rows[t][s]][t] == t]
        if len(cands) != 1:
            raise NoPseudoInverse(f"{names[s]} has {len(cands)} inverses", (s,))
        star.append(cands[0])

    zero = None
    for z in range(n):
        if all(rows[z][s] == z and rows[s][z] == z for s in range(n)):
            zero = z
            break
    return FiniteInverseSemigroup(rows, tuple(star), names, zero)


def semigroup_from_function(elements: Sequence, mul: Callable, names: Sequence[str] | None = None):
    """Tabulate ``mul`` over ``elements`` (hashable values) and validate."""
    index = {x: i for i, x in enumerate(elements)}
    table = []
    for x in elements:
        row = []
        for y in elements:
            z = mul(x, y)
            if z not in index:
                raise ValidationError(f"product {x!r}*{y!r} = {z!r} leaves the element set")
            row.append(index[z])
        table.append(row)
    if names is None:
        names = [str(x) for x in elements]
    return validate_inverse_semigroup(table, names)


# -- Boolean structure -------------------------------------------------------


@dataclass(frozen=True)
class Reason:
    """Why a semigroup is not Boolean. Falsy, so ``if is_boolean(S)`` reads naturally."""

    kind: str
    witness: tuple = ()

    def __bool__(self):
        return False

    def __str__(self):
        return f"{self.kind}{self.witness}"


@dataclass
class BooleanStructure:
    base: FiniteInverseSemigroup
    join_E: dict
    complement: dict
    join_orth: dict
    atoms: tuple = field(default=())

    def join(self, s, t):
        return self.join_orth[(s, t)]

    def join_all(self, elements: Iterable[int]):
        acc = self.base.zero
        for x in elements:
            acc = self.join_orth[(acc, x)]
        return acc


def _least_upper_bound(S, xs, pool):
    ups = [u for u in pool if all(x in S.below[u] for x in xs)]
    least = [u for u in ups if all(u in S.below[v] for v in ups)]
    return least[0] if least else None


def orthogonal(S, s, t):
    z = S.zero
    return S.mult[s][S.star[t]] == z and S.mult[S.star[s]][t] == z


def is_boolean(S: FiniteInverseSemigroup):
    """Return the Boolean structure of ``S`` or a falsy :class:`Reason`."""
    if S.zero is None:
        return Reason("NoZero")
    m, z = S.mult, S.zero
    E = S.idempotents
    join_E = {}
    for e in E:
        for f in E:
            j = _least_upper_bound(S, (e, f), E)
            if j is None:
                return Reason("MissingJoin", (e, f))
            join_E[(e, f)] = j
    for e, f, g in product(E, repeat=3):
        if m[e][join_E[(f, g)]] != join_E[(m[e][f], m[e][g])]:
            return Reason("NotDistributive", (e, f, g))
    complement = {}
    for e in E:
        for f in E:
            if f not in S.below[e]:
                continue
            xs = [x for x in E if m[f][x] == z and join_E[(f, x)] == e]
            if not xs:
                return Reason("MissingComplement", (e, f))
            complement[(e, f)] = xs[0]
    join_orth = {}
    for s in range(S.n):
        for t in range(S.n):
            if not orthogonal(S, s, t):
                continue
            j = _least_upper_bound(S, (s, t), range(S.n))
            if j is None:
                return Reason("MissingJoin", (s, t))
            join_orth[(s, t)] = j
    atoms = tuple(
        a for a in E if a != z and not any(b not in (z, a) and b in S.below[a] for b in E)
    )
    return BooleanStructure(S, join_E, complement, join_orth, atoms)


def boolean_structure(S: FiniteInverseSemigroup) -> BooleanStructure:
    B = is_boolean(S)
    if not B:
        raise NotBoolean(B)
    return B


def check_boolean_invariants(B: BooleanStructure):
    """Exhaustively check the orthogonal-join identities; returns violations."""
    S = B.base
    m, st = S.mult, S.star
    bad = []
    for (s, t), j in B.join_orth.items():
        if S.ran(j) != B.join_E[(S.ran(s), S.ran(t))]:
            bad.append(("range", s, t))
        if S.dom(j) != B.join_E[(S.dom(s), S.dom(t))]:
            bad.append(("domain", s, t))
        for u in range(S.n):
            if m[u][j] != B.join_orth.get((m[u][s], m[u][t])):
                bad.append(("left-distributive", u, s, t))
            if m[j][u] != B.join_orth.get((m[s][u], m[t][u])):
                bad.append(("right-distributive", u, s, t))
    for (e, f), x in B.complement.items():
        if m[f][x] != S.zero or B.join_E[(f, x)] != e:
            bad.append(("complement", e, f))
    del st
    return bad


# -- homomorphisms -------------------------------------------------------------


@dataclass(frozen=True)
class SemigroupHom:
    source: FiniteInverseSemigroup
    target: FiniteInverseSemigroup
    map: tuple

    def __call__(self, s):
        return self.map[s]

    def compose(self, other: "SemigroupHom") -> "SemigroupHom":
        """self after other"""
        return SemigroupHom(other.source, self.target, tuple(self.map[x] for x in other.map))


@dataclass(frozen=True)
class HomFlags:
    is_hom: bool
    idempotent_separating: bool
    idempotent_bijective: bool
    additive: bool | None
    injective: bool
    surjective: bool
    witness: tuple = ()


def check_hom(h: SemigroupHom, strict: bool = True) -> HomFlags:
    S, T, f = h.source, h.target, h.map
    if len(f) != S.n or any(not 0 <= x < T.n for x in f):
        raise ValidationError("map is not a total table source -> target")
    witness = ()
    for s in range(S.n):
        for t in range(S.n):
            if f[S.mult[s][t]] != T.mult[f[s]][f[t]]:
                witness = (s, t)
                break
        if witness:
            break
    if witness and strict:
        raise NotAHomomorphism(f"map({witness[0]}*{witness[1]}) != map*map", witness)
    img_E = [f[e] for e in S.idempotents]
    sep = len(set(img_E)) == len(img_E)
    bij = sep and set(img_E) == set(T.idempotents)
    injective = len(set(f)) == S.n
    surjective = set(f) == set(range(T.n))
    additive = None
    BS, BT = is_boolean(S), is_boolean(T)
    if BS and BT and not witness:
        additive = all(
            f[j] == BT.join_E[(f[e], f[g])]
            for (e, g), j in BS.join_E.items()
            if S.mult[e][g] == S.zero
        )
    flags = HomFlags(not witness, sep, bij, additive, injective, surjective, witness)
    if flags.is_hom and bij:
        # injective <=> kernel is exactly E(source)
        if injective != (kernel(h, flags) == frozenset(S.idempotents)):
            raise InconsistentVerdict("kernel criterion disagrees with injectivity")
    return flags


def kernel(h: SemigroupHom, flags: HomFlags | None = None) -> frozenset:
    """The preimage of the idempotents of the target, checked to be a normal inverse subsemigroup."""
    S, T, f = h.source, h.target, h.map
    if flags is None:
        flags = check_hom(h)
    if not (flags.is_hom and flags.idempotent_bijective):
        raise ValueError("kernel needs an idempotent-bijective homomorphism")
    K = frozenset(s for s in range(S.n) if T.is_idempotent(f[s]))
    if not set(S.idempotents) <= K:
        raise InconsistentVerdict("kernel misses an idempotent")
    for k in K:
        if S.star[k] not in K:
            raise InconsistentVerdict(f"kernel not closed under star at {k}")
        for k2 in K:
            if S.mult[k][k2] not in K:
                raise InconsistentVerdict(f"kernel not closed at {k},{k2}")
        for s in range(S.n):
            if S.prod(s, k, S.star[s]) not in K:
                raise InconsistentVerdict(f"kernel not normal at {s},{k}")
    return K


def identity_hom(S: FiniteInverseSemigroup) -> SemigroupHom:
    return SemigroupHom(S, S, tuple(range(S.n)))


# -- searches ------------------------------------------------------------------


class NotFound(Exception):
    def __init__(self, message, nodes, exhausted=True):
        super().__init__(message)
        self.nodes = nodes
        self.exhausted = exhausted


@dataclass(frozen=True)
class Section:
    map: tuple
    nodes: int


def find_oip_section(h: SemigroupHom, flags: HomFlags | None = None) -> Section:
    """Search for an order- and idempotent-preserving section of a surjective,
    idempotent-bijective homomorphism.

    Raises :class:`NotFound` after an exhaustive search.  On success the two
    multiplicative characterisations of such sections are asserted.
    """
    S, T, f = h.source, h.target, h.map
    flags = flags or check_hom(h)
    if not (flags.surjective and flags.idempotent_bijective):
        raise ValueError("section search needs a surjective idempotent-bijective hom")
    pre = {t: [s for s in range(S.n) if f[s] == t] for t in range(T.n)}
    for e in T.idempotents:
        pre[e] = [s for s in pre[e] if S.is_idempotent(s)]
    order = sorted(range(T.n), key=lambda t: (-len(T.below[t]), t))
    j = [None] * T.n
    nodes = 0

    def consistent(t):
        x = j[t]
        for u in range(T.n):
            y = j[u]
            if y is None or u == t:
                continue
            if u in T.below[t] and y not in S.below[x]:
                return False
            if t in T.below[u] and x not in S.below[y]:
                return False
        return True

    def go(i):
        nonlocal nodes
        if i == len(order):
            return True
        t = order[i]
        for cand in pre[t]:
            nodes += 1
            j[t] = cand
            if consistent(t) and go(i + 1):
                return True
        j[t] = None
        return False

    if not go(0):
        raise NotFound("no order- and idempotent-preserving section", nodes)
    jm = tuple(j)
    for t in range(T.n):
        for e in T.idempotents:
            if jm[T.mult[t][e]] != S.mult[jm[t]][jm[e]] or jm[T.mult[e][t]] != S.mult[jm[e]][jm[t]]:
                raise InconsistentVerdict(f"section fails j(te)=j(t)j(e) at {t},{e}")
    return Section(jm, nodes)


def find_hom(
    source: FiniteInverseSemigroup,
    target: FiniteInverseSemigroup,
    candidates: Sequence[Sequence[int]],
    bijective: bool = False,
):
    """Backtracking search for a homomorphism with ``map[s] in candidates[s]``.

    Returns the map as a tuple, or ``None`` once the search space is exhausted.
    """
    n = source.n
    m, mt = source.mult, target.mult
    producers = [[] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            producers[m[a][b]].append((a, b))
    order = sorted(range(n), key=lambda s: (len(candidates[s]), s))
    f = [None] * n
    used = set()

    def ok(x):
        fx = f[x]
        for y in range(n):
            fy = f[y]
            if fy is None:
                continue
            p = f[m[x][y]]
            if p is not None and p != mt[fx][fy]:
                return False
            p = f[m[y][x]]
            if p is not None and p != mt[fy][fx]:
                return False
        for a, b in producers[x]:
            if f[a] is not None and f[b] is not None and mt[f[a]][f[b]] != fx:
                return False
        return True

    def go(i):
        if i == n:
            return True
        s = order[i]
        for c in candidates[s]:
            if bijective and c in used:
                continue
            f[s] = c
            used.add(c)
            if ok(s) and go(i + 1):
                return True
            used.discard(c)
        f[s] = None
        return False

    if go(0):
        return tuple(f)
    return None


def find_multiplicative_section(h: SemigroupHom):
    """A homomorphism j with h o j = id, or None."""
    S, T = h.source, h.target
    cands = [[s for s in range(S.n) if h.map[s] == t] for t in range(T.n)]
    return find_hom(T, S, cands)
