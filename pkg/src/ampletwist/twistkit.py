"""
Discrete A-twists over finite groupoids.

A twist is a groupoid extension ``A x G0 --iota--> Sigma --phi--> G``.  The
module ``tilde A`` of maps G0 -> A u {0} carries the classifying cocycle,
computed by passing the twist through Gamma_c and choosing an
idempotent-preserving section.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .duality import (
    BisectionSemigroup,
    check_extension_groupoids,
    eta,
    gamma_c,
    gamma_c_on_functor,
    germ_groupoid,
    germ_on_hom,
)
from .errors import InconsistentVerdict, ValidationError
from .gpdkit import (
    FiniteGroupoid,
    GroupoidFunctor,
    bundle_over_units,
    check_functor,
    search_functor,
    validate_groupoid,
)
from .iskit import SemigroupHom, check_hom, semigroup_from_function
from .lausch import (
    Extension,
    LauschModule,
    any_section,
    cocycle_from_extension,
    extension_from_cocycle,
    module_from_extension,
    validate_cocycle,
)


class NotACocycle(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class FiniteAbelianGroup:
    def __init__(self, names, mult, identity=None):
        self.names = tuple(str(x) for x in names)
        self.mult = tuple(tuple(r) for r in mult)
        n = self.n = len(self.names)
        if len(self.mult) != n or any(len(r) != n for r in self.mult):
            raise ValidationError("group table has the wrong shape")
        ids = [e for e in range(n) if all(self.mult[e][x] == x for x in range(n))]
        if not ids:
            raise ValidationError("group table has no identity")
        self.identity = ids[0] if identity is None else identity
        if self.identity not in ids:
            raise ValidationError("declared identity is not an identity")
        inv = []
        for x in range(n):
            ys = [y for y in range(n) if self.mult[x][y] == self.identity]
            if len(ys) != 1:
                raise ValidationError(f"{self.names[x]} has no unique inverse", (x,))
            inv.append(ys[0])
        self.inv = tuple(inv)
        m = self.mult
        for x in range(n):
            for y in range(n):
                if m[x][y] != m[y][x]:
                    raise ValidationError("group is not abelian", (x, y))
                for z in range(n):
                    if m[m[x][y]][z] != m[x][m[y][z]]:
                        raise ValidationError("group is not associative", (x, y, z))
        self._index = {x: i for i, x in enumerate(self.names)}

    def __repr__(self):
        return f"<FiniteAbelianGroup order={self.n}>"

    def index(self, name):
        return self._index[name]

    def mul(self, *xs):
        acc = self.identity
        for x in xs:
            acc = self.mult[acc][x]
        return acc

    @classmethod
    def cyclic(cls, n: int, gen: str = "a"):
        names = ["1"] + [gen if k == 1 else f"{gen}^{k}" for k in range(1, n)]
        return cls(names, [[(i + j) % n for j in range(n)] for i in range(n)], 0)


# -- tilde A ----------------------------------------------------------------------

ZERO = -1  # value of a map G0 -> A u {0} outside its support


@dataclass
class TildeA:
    """The maps G0 -> A u {0}; ``values[i][x]`` is an A-index or ZERO."""

    A: FiniteAbelianGroup
    G: FiniteGroupoid
    semigroup: object
    values: tuple
    index: dict
    bundle: FiniteGroupoid
    bundle_gamma: BisectionSemigroup
    gamma: SemigroupHom

    def support(self, f) -> frozenset:
        return frozenset(self.G.units[i] for i, v in enumerate(self.values[f]) if v != ZERO)

    def of_values(self, vals) -> int:
        return self.index[tuple(vals)]

    def constant(self, a, units=None):
        units = set(self.G.units if units is None else units)
        return self.index[tuple(a if u in units else ZERO for u in self.G.units)]


def tilde_A(G: FiniteGroupoid, A: FiniteAbelianGroup) -> TildeA:
    m = len(G.units)
    vals = sorted(product([ZERO] + list(range(A.n)), repeat=m))

    def mul(f, g):
        return tuple(ZERO if a == ZERO or b == ZERO else A.mult[a][b] for a, b in zip(f, g))

    def show(f):
        return "(" + ",".join("0" if a == ZERO else A.names[a] for a in f) + ")"

    S = semigroup_from_function(vals, mul, [show(f) for f in vals])
    index = {f: i for i, f in enumerate(vals)}
    bundle = bundle_over_units(A, G)
    BG = gamma_c(bundle)
    gmap = tuple(BG.of({a * m + i for i, a in enumerate(f) if a != ZERO}) for f in vals)
    gam = SemigroupHom(S, BG.semigroup, gmap)
    fl = check_hom(gam)
    if not (fl.injective and fl.surjective):
        raise InconsistentVerdict("f -> U_f is not a bijection onto Gamma_c(A x G0)")
    return TildeA(A, G, S, tuple(vals), index, bundle, BG, gam)


def module_tilde_A(BS: BisectionSemigroup, A: FiniteAbelianGroup, TA: TildeA | None = None):
    """The Gamma_c(G)-module tilde A; returns (module, TildeA)."""
    G = BS.groupoid
    TA = TA or tilde_A(G, A)
    upos = {u: i for i, u in enumerate(G.units)}
    p = tuple(BS.of(TA.support(f)) for f in range(len(TA.values)))
    act = []
    for s in range(BS.n):
        by_ran = {G.ran[g]: g for g in BS.labels[s]}
        row = []
        for f in TA.values:
            new = []
            for u in G.units:
                g = by_ran.get(u)
                new.append(ZERO if g is None else f[upos[G.dom[g]]])
            row.append(TA.index[tuple(new)])
        act.append(tuple(row))
    return LauschModule(BS.semigroup, TA.semigroup, p, act), TA


# -- twists ------------------------------------------------------------------------


@dataclass
class TwistExtension:
    A: FiniteAbelianGroup
    G: FiniteGroupoid
    Sigma: FiniteGroupoid
    iota: GroupoidFunctor  # from bundle_over_units(A, G)
    phi: GroupoidFunctor

    def __post_init__(self):
        G, Sig = self.G, self.Sigma
        m = len(G.units)
        upos = {u: i for i, u in enumerate(G.units)}
        # a.s = iota(a, r(phi(s))) s
        self.a_action = tuple(
            tuple(Sig.comp[self.iota.map[a * m + upos[G.ran[self.phi.map[s]]]]][s] for s in range(Sig.n))
            for a in range(self.A.n)
        )
        self._upos = upos

    @property
    def bundle(self):
        return self.iota.source

    def kernel_arrow(self, a, unit):
        return self.iota.map[a * len(self.G.units) + self._upos[unit]]

    def coefficient(self, s, t):
        """The a in A with t = a.s, for s, t in the same phi-fiber."""
        for a in range(self.A.n):
            if self.a_action[a][s] == t:
                return a
        raise ValueError("arrows are not in the same fiber")


def validate_twist(T: TwistExtension, require_central: bool = True) -> None:
    """Extension checks, free A-action, and (for a genuine twist) the
    compatibility (as)(bt) = (ab)(st) that only central extensions satisfy."""
    rep = check_extension_groupoids(T.iota, T.phi)
    if not rep.ok:
        raise ValidationError(f"not an extension: {rep.failures()}")
    m = len(T.G.units)
    for a in range(T.A.n):
        for i, x in enumerate(T.G.units):
            if T.phi.map[T.iota.map[a * m + i]] != x:
                raise ValidationError("phi(iota(a,x)) != x", (a, x))
    Sig = T.Sigma
    act = T.a_action
    for a in range(T.A.n):
        if len(set(act[a])) != Sig.n:
            raise ValidationError("A does not act by bijections", (a,))
        for s in range(Sig.n):
            if a != T.A.identity and act[a][s] == s:
                raise ValidationError("A-action is not free", (a, s))
    if not require_central:
        return
    for a, b in product(range(T.A.n), repeat=2):
        for s in range(Sig.n):
            for t in range(Sig.n):
                st = Sig.comp[s][t]
                if st is None:
                    continue
                ab = T.A.mult[a][b]
                if Sig.comp[act[a][s]][act[b][t]] != act[ab][st]:
                    raise ValidationError("(as)(bt) != (ab)(st)", (a, s, b, t))


def central_witness(T: TwistExtension):
    """First (a, s) with iota(a, r) s != s iota(a, d), or None."""
    Sig, G = T.Sigma, T.G
    for a in range(T.A.n):
        for s in range(Sig.n):
            g = T.phi.map[s]
            left = Sig.comp[T.kernel_arrow(a, G.ran[g])][s]
            right = Sig.comp[s][T.kernel_arrow(a, G.dom[g])]
            if left != right:
                return (a, s)
    return None


def is_central(T: TwistExtension, gamma_data=None) -> bool:
    """Direct check, cross-checked against equivariance of f -> U_f."""
    direct = central_witness(T) is None
    data = gamma_data or gamma_pipeline(T)
    Mext = module_from_extension(data.ext)
    Mt, TA = data.module, data.TA
    equivariant = all(
        TA.gamma.map[Mt.act[s][f]] == Mext.act[s][TA.gamma.map[f]]
        for s in range(Mt.S.n)
        for f in range(Mt.K.n)
    )
    if direct != equivariant:
        raise InconsistentVerdict(f"central {direct} but module criterion {equivariant}")
    return direct


def twist_from_groupoid_cocycle(G: FiniteGroupoid, A: FiniteAbelianGroup, sigma) -> TwistExtension:
    """Sigma = A x G with (a,g)(b,h) = (ab sigma(g,h), gh).

    ``sigma`` is a callable or a square table indexed by arrows (entries on
    non-composable pairs are ignored).
    """
    sg = sigma if callable(sigma) else (lambda g, h: sigma[g][h])
    comp = G.comp
    for x in G.units:
        if sg(x, x) != A.identity:
            raise NotNormalized(f"sigma({G.names[x]},{G.names[x]}) is not the identity", (x,))
    for g, h, k in product(range(G.n), repeat=3):
        if comp[g][h] is None or comp[h][k] is None:
            continue
        if A.mul(sg(h, k), sg(g, comp[h][k])) != A.mul(sg(g, h), sg(comp[g][h], k)):
            raise NotACocycle(f"cocycle identity fails at ({G.names[g]},{G.names[h]},{G.names[k]})", (g, h, k))
    n = G.n

    def idx(a, g):
        return a * n + g

    N = A.n * n
    names = [f"({A.names[a]},{G.names[g]})" for a in range(A.n) for g in range(n)]
    dom = [idx(A.identity, G.dom[g]) for a in range(A.n) for g in range(n)]
    ran = [idx(A.identity, G.ran[g]) for a in range(A.n) for g in range(n)]
    table = [[None] * N for _ in range(N)]
    inv = [None] * N
    for a in range(A.n):
        for g in range(n):
            gi = G.inv[g]
            inv[idx(a, g)] = idx(A.mul(A.inv[a], A.inv[sg(g, gi)]), gi)
            for b in range(A.n):
                for h in range(n):
                    gh = comp[g][h]
                    if gh is not None:
                        table[idx(a, g)][idx(b, h)] = idx(A.mul(a, b, sg(g, h)), gh)
    Sig = validate_groupoid(names, dom, ran, table, inv)
    bundle = bundle_over_units(A, G)
    m = len(G.units)
    iota = GroupoidFunctor(bundle, Sig, tuple(idx(a, G.units[i]) for a in range(A.n) for i in range(m)))
    phi = GroupoidFunctor(Sig, G, tuple(g for a in range(A.n) for g in range(n)))
    T = TwistExtension(A, G, Sig, iota, phi)
    validate_twist(T)
    if central_witness(T) is not None:
        raise InconsistentVerdict("twist built from a groupoid cocycle is not central")
    return T


def trivial_twist(G: FiniteGroupoid, A: FiniteAbelianGroup) -> TwistExtension:
    return twist_from_groupoid_cocycle(G, A, lambda g, h: A.identity)


# -- classification ------------------------------------------------------------------


@dataclass
class GammaPipeline:
    twist: TwistExtension
    K: BisectionSemigroup
    T: BisectionSemigroup
    S: BisectionSemigroup
    ext: Extension
    TA: TildeA
    module: LauschModule


def gamma_pipeline(T: TwistExtension, S: BisectionSemigroup | None = None) -> GammaPipeline:
    Kb = gamma_c(T.bundle)
    Tb = gamma_c(T.Sigma)
    Sb = S or gamma_c(T.G)
    ext = Extension(gamma_c_on_functor(T.iota, Kb, Tb), gamma_c_on_functor(T.phi, Tb, Sb))
    M, TA = module_tilde_A(Sb, T.A)
    if TA.bundle_gamma.labels != Kb.labels:
        raise InconsistentVerdict("bisection orderings of A x G0 disagree")
    return GammaPipeline(T, Kb, Tb, Sb, ext, TA, M)


@dataclass
class TwistClass:
    pipeline: GammaPipeline
    section: tuple
    cocycle: tuple  # over pipeline.module

    @property
    def module(self):
        return self.pipeline.module


def twist_class_cocycle(T: TwistExtension, section=None, S: BisectionSemigroup | None = None) -> TwistClass:
    """The normalized Lausch cocycle of a central twist, over the tilde A module."""
    data = gamma_pipeline(T, S)
    if not is_central(T, data):
        raise ValidationError("twist is not central", central_witness(T))
    j = section or any_section(data.ext)
    cK = cocycle_from_extension(data.ext, j)
    ginv = {k: f for f, k in enumerate(data.TA.gamma.map)}
    c = tuple(tuple(ginv[x] for x in row) for row in cK)
    chk = validate_cocycle(data.module, c)
    if not chk.ok:
        raise InconsistentVerdict(f"classifying cocycle fails: {chk.violations[:3]}")
    return TwistClass(data, tuple(j), c)


def twists_equivalent(T1: TwistExtension, T2: TwistExtension):
    """An isomorphism Sigma1 -> Sigma2 over iota and phi, or None."""
    S1, S2 = T1.Sigma, T2.Sigma
    if S1.n != S2.n or T1.A.n != T2.A.n or T1.G.n != T2.G.n:
        return None
    fixed = {T1.iota.map[k]: T2.iota.map[k] for k in range(T1.bundle.n)}
    cands = []
    for s in range(S1.n):
        if s in fixed:
            cands.append([fixed[s]])
        else:
            g = T1.phi.map[s]
            cands.append([x for x in range(S2.n) if T2.phi.map[x] == g])
    return search_functor(S1, S2, cands, bijective=True)


def baer_sum(T1: TwistExtension, T2: TwistExtension) -> TwistExtension:
    """Pullback over G modulo (a^-1 s, a s'); classes are named by the pair with
    first coordinate on a fixed section of phi1."""
    G, A = T1.G, T1.A
    if T2.G is not G or T2.A.n != A.n:
        raise ValueError("Baer sum needs twists over the same groupoid and group")
    S1, S2 = T1.Sigma, T2.Sigma
    pairs = [(s, t) for s in range(S1.n) for t in range(S2.n) if T1.phi.map[s] == T2.phi.map[t]]
    # pullback groupoid, checked exhaustively
    pidx = {x: i for i, x in enumerate(pairs)}
    P = validate_groupoid(
        [f"{S1.names[s]}|{S2.names[t]}" for s, t in pairs],
        [pidx[(S1.dom[s], S2.dom[t])] for s, t in pairs],
        [pidx[(S1.ran[s], S2.ran[t])] for s, t in pairs],
        [
            [pidx[(S1.comp[s][s2], S2.comp[t][t2])] if S1.dom[s] == S1.ran[s2] else None for s2, t2 in pairs]
            for s, t in pairs
        ],
        [pidx[(S1.inv[s], S2.inv[t])] for s, t in pairs],
    )
    section = any_section_groupoid(T1)

    def canon(s, t):
        g = T1.phi.map[s]
        a = T1.coefficient(section[g], s)  # s = a.p(g)
        return (section[g], T2.a_action[a][t])

    classes = sorted({canon(s, t) for s, t in pairs})
    cidx = {x: i for i, x in enumerate(classes)}
    # the antidiagonal orbit of (s,t) must be exactly the set mapping to its class
    for s, t in pairs:
        orbit = {(T1.a_action[A.inv[a]][s], T2.a_action[a][t]) for a in range(A.n)}
        if {canon(*x) for x in orbit} != {canon(s, t)} or len(orbit) != A.n:
            raise InconsistentVerdict("canonical representative is not constant on orbits")
    n = len(classes)
    comp = [[None] * n for _ in range(n)]
    for i, (s, t) in enumerate(classes):
        for k, (s2, t2) in enumerate(classes):
            if S1.dom[s] == S1.ran[s2]:
                comp[i][k] = cidx[canon(S1.comp[s][s2], S2.comp[t][t2])]
    # well defined on every pair of orbit members
    for x in pairs:
        for y in pairs:
            xy = P.comp[pidx[x]][pidx[y]]
            if xy is not None and cidx[canon(*pairs[xy])] != comp[cidx[canon(*x)]][cidx[canon(*y)]]:
                raise InconsistentVerdict("Baer-sum composition depends on representatives")
    dom = [cidx[canon(S1.dom[s], S2.dom[t])] for s, t in classes]
    ran = [cidx[canon(S1.ran[s], S2.ran[t])] for s, t in classes]
    inv = [cidx[canon(S1.inv[s], S2.inv[t])] for s, t in classes]
    names = [f"[{S1.names[s]}|{S2.names[t]}]" for s, t in classes]
    Sig = validate_groupoid(names, dom, ran, comp, inv)
    m = len(G.units)
    kappa = []
    for a in range(A.n):
        for i, x in enumerate(G.units):
            u1 = T1.kernel_arrow(A.identity, x)
            u2 = T2.kernel_arrow(a, x)
            kappa.append(cidx[canon(u1, u2)])
    iota = GroupoidFunctor(T1.bundle, Sig, tuple(kappa))
    phi = GroupoidFunctor(Sig, G, tuple(T1.phi.map[s] for s, _ in classes))
    out = TwistExtension(A, G, Sig, iota, phi)
    validate_twist(out)
    del m
    return out


def any_section_groupoid(T: TwistExtension):
    """First-index preimage of each arrow, units to units."""
    Sig, G = T.Sigma, T.G
    out = []
    for g in range(G.n):
        pre = [s for s in range(Sig.n) if T.phi.map[s] == g and (Sig.is_unit(s) or not G.is_unit(g))]
        out.append(pre[0])
    return tuple(out)


def twist_from_class(M: LauschModule, c, S: BisectionSemigroup, TA: TildeA) -> TwistExtension:
    """Realize a normalized cocycle over tilde A as a twist via the germ groupoid."""
    ext = extension_from_cocycle(M, c)
    from .iskit import boolean_structure

    GK = germ_groupoid(boolean_structure(ext.K))
    GT = germ_groupoid(boolean_structure(ext.T))
    GS = germ_groupoid(S.boolean)
    g_iota = germ_on_hom(ext.iota, GK, GT)
    g_phi = germ_on_hom(ext.phi, GT, GS)
    G = S.groupoid
    eta_G = eta(G, S, GS)
    eta_inv = {y: x for x, y in enumerate(eta_G.map)}
    phi = GroupoidFunctor(GT.groupoid, G, tuple(eta_inv[y] for y in g_phi.map))
    # bundle -> Germ(Gamma_c(bundle)) -> Germ(tilde A) -> Germ(T)
    BG = TA.bundle_gamma
    GB = germ_groupoid(BG.boolean)
    eta_B = eta(TA.bundle, BG, GB)
    gam_inv = SemigroupHom(BG.semigroup, TA.semigroup, tuple(
        {k: f for f, k in enumerate(TA.gamma.map)}[k] for k in range(BG.n)
    ))
    g_gam_inv = germ_on_hom(gam_inv, GB, GK)
    iota = GroupoidFunctor(TA.bundle, GT.groupoid, tuple(g_iota.map[g_gam_inv.map[eta_B.map[x]]] for x in range(TA.bundle.n)))
    check_functor(iota)
    T = TwistExtension(TA.A, G, GT.groupoid, iota, phi)
    validate_twist(T)
    return T
