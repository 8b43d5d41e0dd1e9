"""
Twisted Steinberg algebras of finite twists, and their isomorphism with the
crossed product.

Functions on Sigma are anti-equivariant: f(a.s) = emb(a)^-1 f(s).  An element
is stored by its values on a section p of phi (one value per arrow of G);
``full`` recovers the whole function on Sigma.
"""

from __future__ import annotations

from .crossed import CrossedProduct, StructureAlgebra, UniversalMap, canonical_covariant, is_algebra_hom, universal_extend
from .duality import BisectionSemigroup, gamma_c
from .errors import InconsistentVerdict, NotIso, ValidationError
from .gpdkit import is_bisection
from .ringkit import rank, units_and_embedding
from .twistkit import TwistExtension, any_section_groupoid


class NoEmbedding(ValidationError):
    pass


class NotABisection(ValidationError):
    pass


class TwistedSteinbergAlgebra:
    def __init__(self, T: TwistExtension, F, emb=None, section=None, check: bool = True):
        self.T = T
        self.F = F
        self.G, self.Sigma, self.A = T.G, T.Sigma, T.A
        if emb is None:
            emb = units_and_embedding(F, T.A)
            if emb is None:
                raise NoEmbedding(f"no embedding of A (order {T.A.n}) into the units of {F!r}")
        self.emb = tuple(emb)
        self.emb_inv = tuple(F.inv(x) for x in self.emb)
        self.section = tuple(section) if section is not None else any_section_groupoid(T)
        for g, s in enumerate(self.section):
            if T.phi.map[s] != g:
                raise ValidationError("section is not a section of phi", (g,))
        n = self.G.n
        self.dim = n
        self.algebra = StructureAlgebra(F, self._table(self.section), [f"f_{x}" for x in self.G.names])
        if check:
            self.verify()

    # functions on Sigma
    def decompose(self, s, section=None):
        """(a, g) with s = a.p(g)."""
        p = section or self.section
        g = self.T.phi.map[s]
        return self.T.coefficient(p[g], s), g

    def full(self, values, section=None):
        out = []
        for s in range(self.Sigma.n):
            a, g = self.decompose(s, section)
            out.append(self.F.mul(self.emb_inv[a], values[g]))
        return tuple(out)

    def values(self, full, section=None):
        p = section or self.section
        return tuple(full[p[g]] for g in range(self.G.n))

    def is_anti_equivariant(self, full) -> bool:
        act = self.T.a_action
        return all(
            full[act[a][s]] == self.F.mul(self.emb_inv[a], full[s])
            for a in range(self.A.n) for s in range(self.Sigma.n)
        )

    def convolve_full(self, f, f2, section=None):
        """f*f'(s) = sum over r(g) = r(phi(s)) of f(p(g)) f'(p(g)^-1 s)."""
        p = section or self.section
        G, Sig, F = self.G, self.Sigma, self.F
        out = []
        for s in range(Sig.n):
            x = G.ran[self.T.phi.map[s]]
            acc = F.zero
            for g in range(G.n):
                if G.ran[g] != x:
                    continue
                a = f[p[g]]
                if a == 0:
                    continue
                t = Sig.comp[Sig.inv[p[g]]][s]
                acc = F.add(acc, F.mul(a, f2[t]))
            out.append(acc)
        return tuple(out)

    def basis_full(self, g, section=None):
        v = [self.F.zero] * self.G.n
        v[g] = self.F.one
        return self.full(v, section)

    def _table(self, p):
        n = self.G.n
        fulls = [self.basis_full(g, p) for g in range(n)]
        return [[self.values(self.convolve_full(fulls[g], fulls[h], p), p) for h in range(n)] for g in range(n)]

    def second_section(self):
        """Shift the section by a non-identity element of A wherever possible."""
        A = self.A
        a = next((x for x in range(A.n) if x != A.identity), A.identity)
        return tuple(
            s if self.G.is_unit(g) else self.T.a_action[a][s] for g, s in enumerate(self.section)
        )

    def verify(self, other_section=None):
        p2 = other_section or self.second_section()
        n = self.G.n
        fulls = [self.basis_full(g) for g in range(n)]
        for f in fulls:
            if not self.is_anti_equivariant(f):
                raise InconsistentVerdict("basis function is not anti-equivariant")
        for g in range(n):
            for h in range(n):
                c1 = self.convolve_full(fulls[g], fulls[h])
                c2 = self.convolve_full(fulls[g], fulls[h], p2)
                if c1 != c2:
                    raise InconsistentVerdict(f"convolution depends on the section at {g},{h}")
                if not self.is_anti_equivariant(c1):
                    raise InconsistentVerdict("convolution left the anti-equivariant functions")
        bad = self.algebra.check_associative()
        if bad is not None:
            raise InconsistentVerdict(f"convolution is not associative at {bad}")
        return True

    def element_from_full(self, full):
        if not self.is_anti_equivariant(full):
            raise ValidationError("function is not anti-equivariant")
        return self.values(full)

    def tilde_one(self, V):
        """s -> emb(t) where t.s lies in V, zero off A.V."""
        V = frozenset(V)
        if not is_bisection(self.Sigma, V):
            raise NotABisection("not a bisection of Sigma", tuple(sorted(V)))
        phi, act = self.T.phi.map, self.T.a_action
        by_arrow = {phi[v]: v for v in V}
        if len(by_arrow) != len(V):
            raise NotABisection("two points of V over one arrow of G", tuple(sorted(V)))
        out = []
        for s in range(self.Sigma.n):
            v = by_arrow.get(phi[s])
            if v is None:
                out.append(self.F.zero)
            else:
                t = self.T.coefficient(s, v)
                out.append(self.emb[t])
        return self.element_from_full(tuple(out))

    def tilde_one_rank(self, TB: BisectionSemigroup | None = None) -> int:
        TB = TB or gamma_c(self.Sigma)
        return rank(self.F, [self.tilde_one(V) for V in TB.labels])

    def mul(self, u, v):
        return self.algebra.mul(u, v)


def build_steinberg(T: TwistExtension, F, emb=None, section=None) -> TwistedSteinbergAlgebra:
    return TwistedSteinbergAlgebra(T, F, emb, section)


def f_aU(alg: TwistedSteinbergAlgebra, a, U_arrows, jU):
    """f_{a,U}(s) = a(r(phi(s))) t with t.s in j(U), for phi(s) in U; else 0."""
    G = alg.G
    upos = {u: i for i, u in enumerate(G.units)}
    base = alg.tilde_one(jU)
    return tuple(
        alg.F.mul(a[upos[G.ran[g]]], base[g]) if g in U_arrows else alg.F.zero
        for g in range(G.n)
    )


def iso_psi(cp: CrossedProduct, alg: TwistedSteinbergAlgebra, section, TB: BisectionSemigroup) -> UniversalMap:
    """a delta_U + I -> f_{a,U}, checked to be a bijective ring homomorphism.

    ``section`` maps Gamma_c(G) indices to Gamma_c(Sigma) indices (labels in
    ``TB``) and must be the section the cocycle of ``cp`` was computed with.
    """
    act = cp.action
    BS = act.BS
    if BS.groupoid is not alg.G:
        raise ValidationError("crossed product and Steinberg algebra use different groupoids")

    def amb_image(v):
        out = alg.algebra.zero()
        for s, r in cp.blocks(v).items():
            out = alg.algebra.add(out, f_aU(alg, r, BS.labels[s], TB.labels[section[s]]))
        return out

    for g in cp.Q.basis:
        img = amb_image(g)
        if any(img):
            raise NotIso("an element of I does not map to zero", (g, img))
    matrix = [amb_image(cp.Q.lift(cp.unit_coords(k))) for k in range(cp.dim)]
    if cp.dim != alg.dim or rank(alg.F, matrix) != alg.dim:
        raise NotIso("map is not bijective", (cp.dim, alg.dim))
    bad = is_algebra_hom(cp.algebra, alg.algebra, matrix)
    if bad is not None:
        raise NotIso("map is not multiplicative", bad)
    return UniversalMap(matrix, alg.algebra)


def check_universality(cp: CrossedProduct, alg: TwistedSteinbergAlgebra, iso: UniversalMap) -> bool:
    """The iso composed with the canonical pair is covariant and universal_extend gives the iso back."""
    rho, psi = canonical_covariant(cp)
    pi = universal_extend(cp, alg.algebra, [iso(r) for r in rho], [iso(p) for p in psi])
    return [tuple(r) for r in pi.matrix] == [tuple(r) for r in iso.matrix]
