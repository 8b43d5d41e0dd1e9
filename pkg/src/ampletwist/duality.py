"""
The passage between finite groupoids and finite Boolean inverse semigroups.

``gamma_c`` builds the semigroup of bisections, ``germ_groupoid`` goes back,
and ``eta``/``epsilon`` are the comparison isomorphisms.  Characters of a
finite Boolean algebra are represented by the atoms they are supported on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InconsistentVerdict, NotIso, SizeLimitExceeded
from .gpdkit import (
    FiniteGroupoid,
    GroupoidFunctor,
    check_functor,
    validate_groupoid,
)
from .iskit import (
    BooleanStructure,
    FiniteInverseSemigroup,
    SemigroupHom,
    boolean_structure,
    check_hom,
    find_oip_section,
    NotFound,
    validate_inverse_semigroup,
)

DEFAULT_CAP = 2**20


@dataclass
class BisectionSemigroup:
    """Gamma_c(G): element i is the bisection ``labels[i]`` of ``groupoid``."""

    groupoid: FiniteGroupoid
    semigroup: FiniteInverseSemigroup
    boolean: BooleanStructure
    labels: tuple
    index: dict

    @property
    def n(self):
        return self.semigroup.n

    def of(self, U) -> int:
        return self.index[frozenset(U)]

    def label(self, s) -> frozenset:
        return self.labels[s]

    def unit_part(self, s) -> int:
        """Index of label(s) intersected with the unit space."""
        G = self.groupoid
        return self.index[frozenset(g for g in self.labels[s] if G.is_unit(g))]

    def ran_set(self, s) -> frozenset:
        return frozenset(self.groupoid.ran[g] for g in self.labels[s])

    def dom_set(self, s) -> frozenset:
        return frozenset(self.groupoid.dom[g] for g in self.labels[s])


def enumerate_bisections(G: FiniteGroupoid, cap: int = DEFAULT_CAP) -> list:
    """All bisections, ordered by size then sorted arrow tuple (so index 0 is empty).

    Supersets of non-bisections are never visited; ``cap`` bounds the number
    of search nodes.
    """
    found = []
    nodes = 0

    def go(g, chosen, doms, rans):
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise SizeLimitExceeded("bisection enumeration", nodes, cap)
        if g == G.n:
            found.append(tuple(chosen))
            return
        go(g + 1, chosen, doms, rans)
        d, r = G.dom[g], G.ran[g]
        if d not in doms and r not in rans:
            chosen.append(g)
            doms.add(d)
            rans.add(r)
            go(g + 1, chosen, doms, rans)
            chosen.pop()
            doms.discard(d)
            rans.discard(r)

    go(0, [], set(), set())
    found.sort(key=lambda t: (len(t), t))
    return [frozenset(t) for t in found]


def _set_name(G, U):
    return "{" + ",".join(G.names[g] for g in sorted(U)) + "}"


def gamma_c(G: FiniteGroupoid, cap: int = DEFAULT_CAP) -> BisectionSemigroup:
    labels = enumerate_bisections(G, cap)
    index = {U: i for i, U in enumerate(labels)}
    table = []
    for U in labels:
        row = []
        for V in labels:
            W = G.set_product(U, V)
            if W not in index:
                raise InconsistentVerdict(f"product of bisections is not a bisection: {sorted(W)}")
            row.append(index[W])
        table.append(row)
    S = validate_inverse_semigroup(table, [_set_name(G, U) for U in labels])
    for i, U in enumerate(labels):
        if labels[S.star[i]] != G.set_inverse(U):
            raise InconsistentVerdict(f"star of {S.names[i]} is not the inverse set")
    return BisectionSemigroup(G, S, boolean_structure(S), tuple(labels), index)


def gamma_c_on_functor(F: GroupoidFunctor, source: BisectionSemigroup, target: BisectionSemigroup) -> SemigroupHom:
    flags = check_functor(F)
    if not flags.iso_unital:
        raise ValueError("gamma_c acts on iso-unital functors only")
    m = tuple(target.of(F.image(U)) for U in source.labels)
    h = SemigroupHom(source.semigroup, target.semigroup, m)
    hf = check_hom(h)
    if not hf.idempotent_bijective:
        raise InconsistentVerdict("image of an iso-unital functor is not idempotent bijective")
    return h


# -- Stone duality and germs ---------------------------------------------------


@dataclass
class StoneSpace:
    points: tuple  # atoms of E(S)
    D: dict  # idempotent -> frozenset of atoms below it


def stone_spec(B: BooleanStructure) -> StoneSpace:
    S = B.base
    atoms = B.atoms
    D = {e: frozenset(a for a in atoms if S.leq(a, e)) for e in S.idempotents}
    # e -> D(e) must be a Boolean algebra isomorphism onto the power set of the atoms
    if len(set(D.values())) != len(D) or len(D) != 2 ** len(atoms):
        raise InconsistentVerdict("idempotents are not the power set of the atoms")
    for (e, f), j in B.join_E.items():
        if D[j] != D[e] | D[f] or D[S.mult[e][f]] != D[e] & D[f]:
            raise InconsistentVerdict(f"D does not preserve lattice operations at {e},{f}")
    return StoneSpace(atoms, D)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class GermGroupoid:
    semigroup: BooleanStructure
    groupoid: FiniteGroupoid
    germ_of: dict  # (s, atom) -> arrow
    D: tuple  # s -> frozenset of arrows
    stone: StoneSpace
    rep: tuple = field(default=())  # arrow -> canonical (s, atom)


def germ_groupoid(B: BooleanStructure) -> GermGroupoid:
    S = B.base
    st = stone_spec(B)
    m, star = S.mult, S.star
    pairs = [(s, a) for s in range(S.n) for a in st.points if S.leq(a, S.dom(s))]
    uf = _UnionFind(pairs)
    by_atom = {}
    for s, a in pairs:
        by_atom.setdefault(a, []).append(s)
    for a, ss in by_atom.items():
        for i, s in enumerate(ss):
            for t in ss[i + 1:]:
                if any(S.leq(a, S.dom(u)) for u in S.below[s] & S.below[t]):
                    uf.union((s, a), (t, a))
    roots = sorted({uf.find(p) for p in pairs})
    arrow_of_root = {r: i for i, r in enumerate(roots)}
    germ_of = {p: arrow_of_root[uf.find(p)] for p in pairs}
    n = len(roots)

    def conj(s, a):
        return S.prod(s, a, star[s])

    dom = [germ_of[(a, a)] for _, a in roots]
    ran = [germ_of[(conj(s, a), conj(s, a))] for s, a in roots]
    inv = [germ_of[(star[s], conj(s, a))] for s, a in roots]
    comp = [[None] * n for _ in range(n)]
    for i, (s, b) in enumerate(roots):
        for k, (t, a) in enumerate(roots):
            if conj(t, a) == b:
                comp[i][k] = germ_of[(m[s][t], a)]
    names = [f"[{S.names[s]},{S.names[a]}]" for s, a in roots]
    G = validate_groupoid(names, dom, ran, comp, inv)
    # composition must not depend on representatives
    for (s, b), g in germ_of.items():
        for (t, a), h in germ_of.items():
            if conj(t, a) == b and germ_of[(m[s][t], a)] != comp[g][h]:
                raise InconsistentVerdict("germ composition depends on representatives")
    D = tuple(frozenset(germ_of[(s, a)] for a in st.points if S.leq(a, S.dom(s))) for s in range(S.n))
    return GermGroupoid(B, G, germ_of, D, st, tuple(roots))


def germ_on_hom(h: SemigroupHom, source: GermGroupoid, target: GermGroupoid) -> GroupoidFunctor:
    """[s, a] -> [h(s), h(a)] between germ groupoids."""
    flags = check_hom(h)
    if not flags.idempotent_bijective:
        raise ValueError("germ functor needs an idempotent-bijective homomorphism")
    m = [None] * source.groupoid.n
    for (s, a), g in source.germ_of.items():
        img = target.germ_of[(h.map[s], h.map[a])]
        if m[g] is None:
            m[g] = img
        elif m[g] != img:
            raise InconsistentVerdict(f"germ functor not well defined at {(s, a)}")
    F = GroupoidFunctor(source.groupoid, target.groupoid, tuple(m))
    ff = check_functor(F)
    if not ff.iso_unital:
        raise InconsistentVerdict("germ functor is not iso-unital")
    for s in range(h.source.n):
        if F.image(source.D[s]) != target.D[h.map[s]]:
            raise InconsistentVerdict(f"image of D({s}) is not D(h({s}))")
    return F


def eta(G: FiniteGroupoid, BS: BisectionSemigroup | None = None, GG: GermGroupoid | None = None) -> GroupoidFunctor:
    """h -> [U, d(h)] for any bisection U containing h."""
    BS = BS or gamma_c(G)
    GG = GG or germ_groupoid(BS.boolean)
    m = []
    for h in range(G.n):
        a = BS.of({G.dom[h]})
        vals = {GG.germ_of[(s, a)] for s, U in enumerate(BS.labels) if h in U}
        if len(vals) != 1:
            raise NotIso(f"germ of arrow {G.names[h]} depends on the bisection", (h,))
        m.append(vals.pop())
    F = GroupoidFunctor(G, GG.groupoid, tuple(m))
    ff = check_functor(F, strict=False)
    if not (ff.is_functor and ff.injective and ff.surjective):
        raise NotIso("eta is not a bijective functor", ff.witness)
    return F


def epsilon(B: BooleanStructure, GG: GermGroupoid | None = None, target: BisectionSemigroup | None = None) -> SemigroupHom:
    """s -> D(s) inside Gamma_c of the germ groupoid."""
    GG = GG or germ_groupoid(B)
    target = target or gamma_c(GG.groupoid)
    h = SemigroupHom(B.base, target.semigroup, tuple(target.of(GG.D[s]) for s in range(B.base.n)))
    flags = check_hom(h, strict=False)
    if not (flags.is_hom and flags.injective and flags.surjective):
        raise NotIso("epsilon is not a bijective homomorphism", flags.witness)
    return h


# -- extensions -----------------------------------------------------------------


@dataclass
class ExtensionReport:
    conditions: list  # (name, passed, witness)
    abelian: bool | None = None

    @property
    def ok(self):
        return all(p for _, p, _ in self.conditions)

    def failures(self):
        return [(n, w) for n, p, w in self.conditions if not p]


def check_extension_semigroups(iota: SemigroupHom, phi: SemigroupHom) -> ExtensionReport:
    conds = []
    conds.append(("composable", iota.target is phi.source, ()))
    fi = check_hom(iota, strict=False)
    fp = check_hom(phi, strict=False)
    conds.append(("iota homomorphism", fi.is_hom, fi.witness))
    conds.append(("phi homomorphism", fp.is_hom, fp.witness))
    conds.append(("iota injective", fi.injective, ()))
    conds.append(("iota idempotent bijective", fi.idempotent_bijective, ()))
    conds.append(("phi surjective", fp.surjective, tuple(set(range(phi.target.n)) - set(phi.map))[:1]))
    conds.append(("phi idempotent bijective", fp.idempotent_bijective, ()))
    img = set(iota.map)
    ker = {t for t in range(phi.source.n) if phi.target.is_idempotent(phi.map[t])}
    diff = sorted(img ^ ker)
    conds.append(("image of iota is kernel of phi", not diff, tuple(diff[:1])))
    return ExtensionReport(conds, iota.source.is_commutative())


def check_extension_groupoids(iota: GroupoidFunctor, phi: GroupoidFunctor) -> ExtensionReport:
    conds = []
    conds.append(("composable", iota.target is phi.source, ()))
    fi = check_functor(iota, strict=False)
    fp = check_functor(phi, strict=False)
    conds.append(("iota functor", fi.is_functor, fi.witness))
    conds.append(("phi functor", fp.is_functor, fp.witness))
    conds.append(("iota injective", fi.injective, ()))
    conds.append(("iota iso-unital", fi.iso_unital, ()))
    conds.append(("phi surjective", fp.surjective, tuple(set(range(phi.target.n)) - set(phi.map))[:1]))
    conds.append(("phi iso-unital", fp.iso_unital, ()))
    H, G = phi.source, phi.target
    img = set(iota.map)
    ker = {h for h in range(H.n) if G.is_unit(phi.map[h])}
    diff = sorted(img ^ ker)
    conds.append(("image of iota is phi-preimage of units", not diff, tuple(diff[:1])))
    K = iota.source
    abelian = K.isotropy_only() and all(
        K.comp[g][h] == K.comp[h][g] for g in range(K.n) for h in range(K.n) if K.comp[g][h] is not None
    )
    return ExtensionReport(conds, abelian)


@dataclass
class SemigroupExtensionTransfer:
    K: BisectionSemigroup
    T: BisectionSemigroup
    S: BisectionSemigroup
    iota: SemigroupHom
    phi: SemigroupHom
    report: ExtensionReport


def transfer_to_semigroups(iota: GroupoidFunctor, phi: GroupoidFunctor, cap: int = DEFAULT_CAP) -> SemigroupExtensionTransfer:
    """Apply Gamma_c to a groupoid extension; asserts the image is an extension when the input is."""
    before = check_extension_groupoids(iota, phi)
    K, T, S = gamma_c(iota.source, cap), gamma_c(iota.target, cap), gamma_c(phi.target, cap)
    gi = gamma_c_on_functor(iota, K, T)
    gp = gamma_c_on_functor(phi, T, S)
    after = check_extension_semigroups(gi, gp)
    if before.ok != after.ok:
        raise InconsistentVerdict("Gamma_c changed the exactness verdict")
    return SemigroupExtensionTransfer(K, T, S, gi, gp, after)


@dataclass
class GroupoidExtensionTransfer:
    K: GermGroupoid
    T: GermGroupoid
    S: GermGroupoid
    iota: GroupoidFunctor
    phi: GroupoidFunctor
    report: ExtensionReport


def transfer_to_groupoids(iota: SemigroupHom, phi: SemigroupHom) -> GroupoidExtensionTransfer:
    """Apply the germ functor to an extension of Boolean inverse semigroups."""
    before = check_extension_semigroups(iota, phi)
    K = germ_groupoid(boolean_structure(iota.source))
    T = germ_groupoid(boolean_structure(iota.target))
    S = germ_groupoid(boolean_structure(phi.target))
    gi = germ_on_hom(iota, K, T)
    gp = germ_on_hom(phi, T, S)
    after = check_extension_groupoids(gi, gp)
    if before.ok != after.ok:
        raise InconsistentVerdict("germ functor changed the exactness verdict")
    return GroupoidExtensionTransfer(K, T, S, gi, gp, after)


# -- order structure ------------------------------------------------------------


def max_idempotent_below(S: FiniteInverseSemigroup, s: int):
    below = [e for e in S.idempotents if S.leq(e, s)]
    tops = [e for e in below if all(S.leq(f, e) for f in below)]
    return tops[0] if tops else None


def unit_preserving_section(phi: GroupoidFunctor):
    """A set map p with phi(p(g)) = g and p(units) inside units, or None."""
    H, G = phi.source, phi.target
    p = []
    for g in range(G.n):
        pre = [h for h in range(H.n) if phi.map[h] == g and (H.is_unit(h) or not G.is_unit(g))]
        if not pre:
            return None
        p.append(pre[0])
    return tuple(p)


def oip_section_iff_unit_section(phi: GroupoidFunctor, cap: int = DEFAULT_CAP) -> bool:
    """Decide section existence on both sides of the duality and insist they agree."""
    H, G = gamma_c(phi.source, cap), gamma_c(phi.target, cap)
    groupoid_side = unit_preserving_section(phi) is not None
    flags = check_functor(phi)
    semigroup_side = False
    if flags.surjective and flags.iso_unital:
        h = gamma_c_on_functor(phi, H, G)
        try:
            find_oip_section(h)
            semigroup_side = True
        except NotFound:
            semigroup_side = False
    if groupoid_side != semigroup_side:
        raise InconsistentVerdict(f"unit section {groupoid_side} vs semigroup section {semigroup_side}")
    return groupoid_side
