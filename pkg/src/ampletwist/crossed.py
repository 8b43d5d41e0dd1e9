"""
The crossed product of the function ring of G0 by Gamma_c(G).

Ring elements are vectors of values on the units of G (in ``G.units``
order).  The ambient free module has coordinate ``s * n0 + x`` for the
element ``e_x delta_s``; the quotient by the ideal I is computed exactly by
row reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .duality import BisectionSemigroup
from .errors import InconsistentVerdict, SizeLimitExceeded, ValidationError
from .gpdkit import FiniteGroupoid
from .lausch import LauschModule
from .ringkit import PrimeField, VectorSpaceQuotient, rank
from .twistkit import ZERO, FiniteAbelianGroup, module_tilde_A

DEFAULT_AMBIENT_CAP = 20000


class NotCovariant(ValidationError):
    def __init__(self, axiom, witness=()):
        super().__init__(f"{axiom} fails at {witness}", witness)
        self.axiom = axiom


# -- the action ------------------------------------------------------------------------


class FunctionRingAction:
    """alpha_U(f)(x) = f(d(g)) for the arrow g of U with r(g) = x, else 0."""

    def __init__(self, BS: BisectionSemigroup, F):
        self.BS = BS
        self.S = BS.semigroup
        self.G: FiniteGroupoid = BS.groupoid
        self.F = F
        G = self.G
        self.units = G.units
        self.n0 = len(G.units)
        self.upos = {u: i for i, u in enumerate(G.units)}
        tr = []
        for s in range(self.S.n):
            by_ran = {G.ran[g]: g for g in BS.labels[s]}
            tr.append(tuple(
                self.upos[G.dom[by_ran[u]]] if u in by_ran else None for u in G.units
            ))
        self.transport = tuple(tr)

    def zero(self):
        return (self.F.zero,) * self.n0

    def basis(self, x):
        v = [self.F.zero] * self.n0
        v[x] = self.F.one
        return tuple(v)

    def alpha(self, s, r):
        return tuple(self.F.zero if y is None else r[y] for y in self.transport[s])

    def one(self, e):
        """Indicator of the unit set labelling the idempotent e."""
        lab = self.BS.labels[e]
        return tuple(self.F.one if u in lab else self.F.zero for u in self.units)

    def ran_indicator(self, s):
        return self.one(self.S.ran(s))

    def mul(self, r, r2):
        return tuple(self.F.mul(a, b) for a, b in zip(r, r2))

    def add(self, r, r2):
        return tuple(self.F.add(a, b) for a, b in zip(r, r2))

    def star(self, r):
        """Pointwise inverse on the support (the inverse in the unit sheaf)."""
        return tuple(self.F.zero if a == 0 else self.F.inv(a) for a in r)

    def support(self, r):
        return frozenset(self.units[i] for i, a in enumerate(r) if a != 0)

    def verify(self):
        """Check that alpha is a zero-preserving, non-degenerate action by proper endomorphisms."""
        S, F = self.S, self.F
        basis = [self.basis(x) for x in range(self.n0)]
        for s in range(S.n):
            for t in range(S.n):
                st = S.mult[s][t]
                for b in basis:
                    if self.alpha(st, b) != self.alpha(s, self.alpha(t, b)):
                        raise InconsistentVerdict(f"alpha is not an action at {s},{t}")
            img = rank(F, [self.alpha(s, b) for b in basis]) if basis else 0
            if img != len(self.S_ran_units(s)):
                raise InconsistentVerdict(f"image of alpha_{s} is not R 1_(ss*)")
            for b in basis:
                if self.mul(self.alpha(s, b), self.ran_indicator(s)) != self.alpha(s, b):
                    raise InconsistentVerdict(f"image of alpha_{s} leaves R 1_(ss*)")
                for b2 in basis:
                    if self.alpha(s, self.mul(b, b2)) != self.mul(self.alpha(s, b), self.alpha(s, b2)):
                        raise InconsistentVerdict(f"alpha_{s} is not multiplicative")
        for e in S.idempotents:
            for b in basis:
                if self.alpha(e, b) != self.mul(b, self.one(e)):
                    raise InconsistentVerdict(f"alpha_{e} is not multiplication by 1_e")
        if S.zero is not None and any(any(self.alpha(S.zero, b)) for b in basis):
            raise InconsistentVerdict("alpha is not zero preserving")
        top = max(S.idempotents, key=lambda e: len(self.BS.labels[e]))
        if self.one(top) != (F.one,) * self.n0:
            raise InconsistentVerdict("the idempotent indicators do not cover R")
        return True

    def S_ran_units(self, s):
        return [x for x in self.transport[s] if x is not None]


def build_action(G_or_BS, F) -> FunctionRingAction:
    from .duality import gamma_c

    BS = G_or_BS if isinstance(G_or_BS, BisectionSemigroup) else gamma_c(G_or_BS)
    act = FunctionRingAction(BS, F)
    act.verify()
    return act


# -- the unit sheaf ------------------------------------------------------------------


def unit_group(F: PrimeField) -> FiniteAbelianGroup:
    """F^x as an abelian group; element i is the residue i + 1."""
    p = F.p
    return FiniteAbelianGroup([str(v) for v in range(1, p)],
                              [[(a * b) % p - 1 for b in range(1, p)] for a in range(1, p)], 0)


def unit_sheaf(action: FunctionRingAction) -> LauschModule:
    """Maps G0 -> F supported exactly on an idempotent with unit values.

    For a prime field this is every vector, ordered lexicographically; the
    module is cross-checked table for table against the tilde A module of F^x.
    """
    F = action.F
    if not isinstance(F, PrimeField):
        raise ValueError("the unit sheaf is only finite over a prime field")
    from .iskit import semigroup_from_function

    vecs = sorted(product(range(F.p), repeat=action.n0))
    K = semigroup_from_function(vecs, action.mul)
    idx = {v: i for i, v in enumerate(vecs)}
    BS = action.BS
    p = tuple(BS.of(action.support(v)) for v in vecs)
    act = tuple(tuple(idx[action.alpha(s, v)] for v in vecs) for s in range(action.S.n))
    M = LauschModule(action.S, K, p, act)
    Mt, _ = module_tilde_A(BS, unit_group(F))
    if Mt.K.mult != K.mult or Mt.p != M.p or Mt.act != M.act:
        raise InconsistentVerdict("unit sheaf differs from the tilde A module of the unit group")
    M.vectors = tuple(vecs)
    return M


def check_embedded_module(action: FunctionRingAction, M: LauschModule, TA, emb) -> bool:
    """f -> emb o f is an injective module map from tilde A into the unit sheaf."""
    vec = [tilde_to_vector(action.F, TA, f, emb) for f in range(M.K.n)]
    if len(set(vec)) != len(vec):
        return False
    for s in range(M.S.n):
        for f in range(M.K.n):
            if vec[M.act[s][f]] != action.alpha(s, vec[f]):
                return False
    return all(vec[M.K.mult[f][g]] == action.mul(vec[f], vec[g]) for f in range(M.K.n) for g in range(M.K.n))


def tilde_to_vector(F, TA, f, emb):
    return tuple(F.zero if a == ZERO else emb[a] for a in TA.values[f])


def cocycle_vectors(action: FunctionRingAction, TA, c, emb):
    """Transport a cocycle over tilde A to ring-valued form along emb: A -> F^x."""
    return tuple(tuple(tilde_to_vector(action.F, TA, k, emb) for k in row) for row in c)


def trivial_cocycle_vectors(action: FunctionRingAction):
    S = action.S
    return tuple(tuple(action.one(S.ran(S.mult[s][t])) for t in range(S.n)) for s in range(S.n))


# -- algebras given by structure constants -----------------------------------------------


class StructureAlgebra:
    """A finite-dimensional algebra: ``mult[i][j]`` is the coordinate vector of b_i b_j."""

    def __init__(self, F, mult, names=None):
        self.F = F
        self.mult = tuple(tuple(tuple(v) for v in row) for row in mult)
        self.dim = len(self.mult)
        self.names = names or [f"b{i}" for i in range(self.dim)]

    def zero(self):
        return (self.F.zero,) * self.dim

    def basis(self, i):
        v = [self.F.zero] * self.dim
        v[i] = self.F.one
        return tuple(v)

    def add(self, u, v):
        return tuple(self.F.add(a, b) for a, b in zip(u, v))

    def sub(self, u, v):
        return tuple(self.F.sub(a, b) for a, b in zip(u, v))

    def scale(self, a, v):
        return tuple(self.F.mul(a, x) for x in v)

    def mul(self, u, v):
        F = self.F
        out = [F.zero] * self.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                ab = F.mul(a, b)
                for k, m in enumerate(self.mult[i][j]):
                    if m != 0:
                        out[k] = F.add(out[k], F.mul(ab, m))
        return tuple(out)

    def check_associative(self):
        for i, j, k in product(range(self.dim), repeat=3):
            bi, bj, bk = self.basis(i), self.basis(j), self.basis(k)
            if self.mul(self.mul(bi, bj), bk) != self.mul(bi, self.mul(bj, bk)):
                return (i, j, k)
        return None

    def in_basis(self, new_basis):
        """Structure constants with respect to another basis (list of vectors)."""
        F = self.F
        cols = [list(v) for v in new_basis]
        if rank(F, cols) != self.dim or len(cols) != self.dim:
            raise ValueError("not a basis")
        from .ringkit import solve

        def coords(v):
            x = solve(F, cols, v)
            if x is None:
                raise InconsistentVerdict("vector outside the span of a basis")
            return x

        return StructureAlgebra(F, [[coords(self.mul(u, v)) for v in new_basis] for u in new_basis])


def is_algebra_hom(A: StructureAlgebra, B: StructureAlgebra, matrix):
    """``matrix[i]`` is the image of basis i of A. Returns the first failing pair or None."""

    def img(v):
        out = B.zero()
        for a, row in zip(v, matrix):
            if a != 0:
                out = B.add(out, B.scale(a, row))
        return out

    for i in range(A.dim):
        for j in range(A.dim):
            if img(A.mult[i][j]) != B.mul(matrix[i], matrix[j]):
                return (i, j)
    return None


# -- the crossed product ------------------------------------------------------------------


class CrossedProduct:
    def __init__(self, action: FunctionRingAction, c, cap: int = DEFAULT_AMBIENT_CAP, check: bool = True):
        self.action = action
        self.c = tuple(tuple(tuple(v) for v in row) for row in c)
        S, n0, F = action.S, action.n0, action.F
        self.F = F
        self.S = S
        self.n0 = n0
        self.amb_dim = S.n * n0
        if self.amb_dim > cap:
            raise SizeLimitExceeded("crossed product ambient dimension", self.amb_dim, cap)
        self._check_cocycle_shape()
        gens = self.ideal_generators()
        self.Q = VectorSpaceQuotient(F, self.amb_dim, gens)
        self.dim = self.Q.quotient_dim
        self.basis_labels = [(i // n0, i % n0) for i in self.Q.free]
        lifts = [self.Q.lift(self.unit_coords(k)) for k in range(self.dim)]
        mult = [[self.Q.coords(self.amb_mul(u, v)) for v in lifts] for u in lifts]
        names = [f"e{x}d{S.names[s]}" for s, x in self.basis_labels]
        self.algebra = StructureAlgebra(F, mult, names)
        if check:
            self.verify()

    # ambient arithmetic
    def idx(self, s, x):
        return s * self.n0 + x

    def unit_coords(self, k):
        v = [self.F.zero] * self.dim
        v[k] = self.F.one
        return v

    def element(self, s, r):
        """The ambient vector of r delta_s."""
        v = [self.F.zero] * self.amb_dim
        for x, a in enumerate(r):
            v[self.idx(s, x)] = self.F(a)
        return tuple(v)

    def blocks(self, v):
        n0 = self.n0
        return {s: tuple(v[s * n0:(s + 1) * n0]) for s in range(self.S.n) if any(v[s * n0:(s + 1) * n0])}

    def amb_mul(self, u, v):
        """(r delta_s)(r' delta_t) = r (s.r') c(s,t) delta_st on ambient vectors."""
        F, act, S = self.F, self.action, self.S
        out = [F.zero] * self.amb_dim
        bu, bv = self.blocks(u), self.blocks(v)
        for s, r in bu.items():
            for t, r2 in bv.items():
                w = act.mul(act.mul(r, act.alpha(s, r2)), self.c[s][t])
                base = S.mult[s][t] * self.n0
                for x, a in enumerate(w):
                    if a != 0:
                        out[base + x] = F.add(out[base + x], a)
        return tuple(out)

    def amb_add(self, u, v):
        return tuple(self.F.add(a, b) for a, b in zip(u, v))

    def amb_sub(self, u, v):
        return tuple(self.F.sub(a, b) for a, b in zip(u, v))

    def _check_cocycle_shape(self):
        S, act = self.S, self.action
        for s in range(S.n):
            for t in range(S.n):
                v = self.c[s][t]
                if act.support(v) != act.BS.labels[S.ran(S.mult[s][t])]:
                    raise ValidationError("cocycle value has the wrong support", (s, t))

    def ideal_generators(self):
        S, act = self.S, self.action
        gens = []
        for t in range(S.n):
            for s in S.below[t]:
                cc = act.star(self.c[t][S.dom(s)])
                for x in range(self.n0):
                    ex = act.basis(x)
                    gens.append(self.amb_sub(self.element(s, ex), self.element(t, act.mul(ex, cc))))
        if S.zero is not None:
            for x in range(self.n0):
                gens.append(self.element(S.zero, act.basis(x)))
        return gens

    def verify(self):
        """Ring axioms on the quotient and two-sidedness of I, exhaustively on bases."""
        amb = [self.element(s, self.action.basis(x)) for s in range(self.S.n) for x in range(self.n0)]
        for g in self.Q.basis:
            for b in amb:
                if not self.Q.contains(self.amb_mul(b, g)) or not self.Q.contains(self.amb_mul(g, b)):
                    raise InconsistentVerdict("I is not a two-sided ideal")
        bad = self.algebra.check_associative()
        if bad is not None:
            raise InconsistentVerdict(f"crossed product is not associative at {bad}")
        return True

    def check_ambient_associative(self):
        amb = [self.element(s, self.action.basis(x)) for s in range(self.S.n) for x in range(self.n0)]
        for u, v, w in product(amb, repeat=3):
            if self.amb_mul(self.amb_mul(u, v), w) != self.amb_mul(u, self.amb_mul(v, w)):
                return False
        return True

    # quotient arithmetic
    def reduce(self, v):
        return self.Q.coords(v)

    def mul(self, a, b):
        return self.algebra.mul(a, b)

    def psi(self, s):
        """1_(ss*) delta_s + I"""
        return self.reduce(self.element(s, self.action.ran_indicator(s)))

    def rho_amb(self, r):
        """sum_x r_x e_x delta_{x}"""
        v = [self.F.zero] * self.amb_dim
        BS = self.action.BS
        for x, a in enumerate(r):
            if a != 0:
                v[self.idx(BS.of({self.action.units[x]}), x)] = a
        return tuple(v)

    def rho(self, r):
        return self.reduce(self.rho_amb(r))

    def arrow_basis(self):
        """b_g = e_r(g) delta_{g} + I for every arrow g of G, as quotient coordinates."""
        G, BS = self.action.G, self.action.BS
        return [self.reduce(self.element(BS.of({g}), self.action.basis(self.action.upos[G.ran[g]])))
                for g in range(G.n)]


def build_crossed_product(action: FunctionRingAction, c, cap: int = DEFAULT_AMBIENT_CAP) -> CrossedProduct:
    return CrossedProduct(action, c, cap)


# -- tau and rho --------------------------------------------------------------------------


def tau_amb(cp: CrossedProduct, v):
    """tau'(r delta_s) = r c(s, e(s)) with e(s) the largest idempotent below s."""
    act, BS = cp.action, cp.action.BS
    out = act.zero()
    for s, r in cp.blocks(v).items():
        e = BS.unit_part(s)
        out = act.add(out, act.mul(r, cp.c[s][e]))
    return out


def tau(cp: CrossedProduct, coords):
    for g in cp.Q.basis:
        if any(tau_amb(cp, g)):
            raise InconsistentVerdict("tau does not vanish on I")
    return tau_amb(cp, cp.Q.lift(coords))


def rho_embed(cp: CrossedProduct, r):
    return cp.rho(r)


def check_tau_rho(cp: CrossedProduct):
    """tau o rho = id on every basis vector and every product of two; returns failures."""
    act = cp.action
    bad = []
    for x in range(cp.n0):
        r = act.basis(x)
        if tau(cp, cp.rho(r)) != r:
            bad.append(("tau rho", x))
        for y in range(cp.n0):
            r2 = act.basis(y)
            if cp.rho(act.mul(r, r2)) != cp.mul(cp.rho(r), cp.rho(r2)):
                bad.append(("rho multiplicative", x, y))
    return bad


# -- normal form ------------------------------------------------------------------------------


def _support_step(cp, a, s):
    """a delta_s = a c(s, d(VU)) delta_VU with V = supp(a) n r(U)."""
    act, BS, S = cp.action, cp.action.BS, cp.S
    G = act.G
    V = act.support(a) & BS.ran_set(s)
    VU = BS.of(G.set_product(V, BS.labels[s]))
    return act.mul(a, cp.c[s][S.dom(VU)]), VU


def normal_form(cp: CrossedProduct, v):
    """Terms (a_i, U_i) with pairwise disjoint non-empty U_i and supp(a_i) = r(U_i)."""
    act, BS, S = cp.action, cp.action.BS, cp.S
    terms = []
    for s, a in cp.blocks(v).items():
        a2, U = _support_step(cp, a, s)
        if BS.labels[U]:
            terms.append((a2, U))
    # atoms of the Boolean algebra generated by the U's
    sets = [BS.labels[U] for _, U in terms]
    everything = frozenset().union(*sets) if sets else frozenset()
    sig = {}
    for g in everything:
        sig.setdefault(tuple(g in X for X in sets), set()).add(g)
    atoms = [BS.of(W) for W in sig.values()]
    acc = {}
    for a, U in terms:
        for W in atoms:
            if BS.labels[W] <= BS.labels[U]:
                piece = act.mul(a, cp.c[U][S.dom(W)])
                acc[W] = act.add(acc.get(W, act.zero()), piece)
    out = []
    for W in atoms:
        d = acc.get(W)
        if d is None or not any(d):
            continue
        a2, U = _support_step(cp, d, W)
        if BS.labels[U]:
            out.append((a2, U))
    total = tuple([cp.F.zero] * cp.amb_dim)
    for a, U in out:
        total = cp.amb_add(total, cp.element(U, a))
    if not cp.Q.contains(cp.amb_sub(total, v)):
        raise InconsistentVerdict("normal form differs from the input modulo I")
    for i, (a, U) in enumerate(out):
        if act.support(a) != BS.ran_set(U):
            raise InconsistentVerdict("normal form coefficient has the wrong support")
        for b, W in out[i + 1:]:
            if BS.labels[U] & BS.labels[W]:
                raise InconsistentVerdict("normal form bisections overlap")
    return out


# -- covariant representations ------------------------------------------------------------------


@dataclass
class UniversalMap:
    matrix: list  # image of each quotient basis vector
    target: StructureAlgebra

    def __call__(self, coords):
        out = self.target.zero()
        for a, row in zip(coords, self.matrix):
            if a != 0:
                out = self.target.add(out, self.target.scale(a, row))
        return out


def _lin(B: StructureAlgebra, images, r):
    out = B.zero()
    for a, row in zip(r, images):
        if a != 0:
            out = B.add(out, B.scale(a, row))
    return out


def check_covariant(cp: CrossedProduct, B: StructureAlgebra, rho_images, psi_images):
    """``rho_images[x]`` is rho'(e_x); ``psi_images[s]`` is psi'(s).  Raises NotCovariant."""
    act, S = cp.action, cp.S
    basis = [act.basis(x) for x in range(cp.n0)]
    rho = [tuple(v) for v in rho_images]
    for x in range(cp.n0):
        for y in range(cp.n0):
            want = rho[x] if x == y else B.zero()
            if B.mul(rho[x], rho[y]) != want:
                raise NotCovariant("rho multiplicative", (x, y))
    for s in range(S.n):
        for x, r in enumerate(basis):
            if B.mul(psi_images[s], rho[x]) != B.mul(_lin(B, rho, act.alpha(s, r)), psi_images[s]):
                raise NotCovariant("C1", (s, x))
    for e in S.idempotents:
        if _lin(B, rho, act.one(e)) != tuple(psi_images[e]):
            raise NotCovariant("C2", (e,))
    for s in range(S.n):
        for t in range(S.n):
            lhs = B.mul(psi_images[s], psi_images[t])
            rhs = B.mul(_lin(B, rho, cp.c[s][t]), psi_images[S.mult[s][t]])
            if lhs != rhs:
                raise NotCovariant("C3", (s, t))
    for s in range(S.n):
        if B.mul(psi_images[S.ran(s)], psi_images[s]) != tuple(psi_images[s]):
            raise NotCovariant("C4", (s,))
    return True


def canonical_covariant(cp: CrossedProduct):
    rho = [cp.rho(cp.action.basis(x)) for x in range(cp.n0)]
    psi = [cp.psi(s) for s in range(cp.S.n)]
    return rho, psi


def universal_extend(cp: CrossedProduct, B: StructureAlgebra, rho_images, psi_images) -> UniversalMap:
    """pi(r delta_s + I) = rho'(r) psi'(s), with all the checks that make it the unique such map."""
    check_covariant(cp, B, rho_images, psi_images)

    def amb_image(v):
        out = B.zero()
        for s, r in cp.blocks(v).items():
            out = B.add(out, B.mul(_lin(B, rho_images, r), psi_images[s]))
        return out

    for g in cp.Q.basis:
        if any(amb_image(g)):
            raise InconsistentVerdict("pi does not vanish on I")
    matrix = [amb_image(cp.Q.lift(cp.unit_coords(k))) for k in range(cp.dim)]
    bad = is_algebra_hom(cp.algebra, B, matrix)
    if bad is not None:
        raise InconsistentVerdict(f"pi is not multiplicative at {bad}")
    pi = UniversalMap(matrix, B)
    rho0, psi0 = canonical_covariant(cp)
    for x in range(cp.n0):
        if pi(rho0[x]) != tuple(rho_images[x]):
            raise InconsistentVerdict("pi o rho != rho'")
    for s in range(cp.S.n):
        if pi(psi0[s]) != tuple(psi_images[s]):
            raise InconsistentVerdict("pi o psi != psi'")
    # uniqueness: the products rho(e_x) psi(s) span the crossed product
    spans = [cp.mul(rho0[x], psi0[s]) for x in range(cp.n0) for s in range(cp.S.n)]
    if rank(cp.F, spans) != cp.dim:
        raise InconsistentVerdict("rho(R) psi(S) does not span the crossed product")
    return pi


# -- cohomologous cocycles --------------------------------------------------------------------------


def same_crossed_iso(action: FunctionRingAction, cp: CrossedProduct, cp2: CrossedProduct, Fvec):
    """Given c2 = c . dF, the map r delta_s + I -> r F(s)* delta_s + I' from cp to cp2.

    The reverse map r delta_s -> r F(s) delta_s is built too and both
    composites are checked to be the identity.  Returns (forward, backward)
    as matrices on quotient bases.
    """
    S = action.S
    for s in range(S.n):
        for t in range(S.n):
            dF = action.mul(action.mul(Fvec[s], action.alpha(s, Fvec[t])), action.star(Fvec[S.mult[s][t]]))
            if cp2.c[s][t] != action.mul(cp.c[s][t], dF):
                raise ValidationError("c2 is not c times the coboundary of F", (s, t))

    def build(src, dst, use_star):
        def amb(v):
            out = tuple([dst.F.zero] * dst.amb_dim)
            for s, r in src.blocks(v).items():
                f = action.star(Fvec[s]) if use_star else Fvec[s]
                out = dst.amb_add(out, dst.element(s, action.mul(r, f)))
            return out

        for g in src.Q.basis:
            if not dst.Q.contains(amb(g)):
                raise InconsistentVerdict("iso does not carry I into I'")
        return [dst.reduce(amb(src.Q.lift(src.unit_coords(k)))) for k in range(src.dim)]

    fwd = build(cp, cp2, True)
    bwd = build(cp2, cp, False)
    for M, A, B in ((fwd, cp.algebra, cp2.algebra), (bwd, cp2.algebra, cp.algebra)):
        bad = is_algebra_hom(A, B, M)
        if bad is not None:
            raise InconsistentVerdict(f"same_crossed_iso is not multiplicative at {bad}")
    comp = UniversalMap(bwd, cp.algebra)
    for k in range(cp.dim):
        if comp(fwd[k]) != tuple(cp.unit_coords(k)):
            raise InconsistentVerdict("backward o forward is not the identity")
    comp2 = UniversalMap(fwd, cp2.algebra)
    for k in range(cp2.dim):
        if comp2(bwd[k]) != tuple(cp2.unit_coords(k)):
            raise InconsistentVerdict("forward o backward is not the identity")
    return fwd, bwd


def groupoid_algebra(G: FiniteGroupoid, F) -> StructureAlgebra:
    """The untwisted convolution algebra: 1_g * 1_h = 1_gh when composable."""
    n = G.n
    mult = []
    for g in range(n):
        row = []
        for h in range(n):
            v = [F.zero] * n
            gh = G.comp[g][h]
            if gh is not None:
                v[gh] = F.one
            row.append(tuple(v))
        mult.append(row)
    return StructureAlgebra(F, mult, list(G.names))


def field_units_for(F, A: FiniteAbelianGroup):
    from .ringkit import units_and_embedding

    return units_and_embedding(F, A)

