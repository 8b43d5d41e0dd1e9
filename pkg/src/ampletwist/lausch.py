"""
Modules over inverse semigroups, 2-cocycles and the second cohomology group.

A cocycle is a tuple of tuples ``c[s][t]`` of elements of K.  All products
in K go through ``K.mult``; the action of S on K is the table ``act[s][k]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import prod as iprod

from .errors import InconsistentVerdict, SizeLimitExceeded, ValidationError
from .iskit import (
    FiniteInverseSemigroup,
    SemigroupHom,
    check_hom,
    find_hom,
    is_boolean,
    validate_inverse_semigroup,
)

DEFAULT_CAP = 10**7


class ModuleError(ValidationError):
    pass


class NotAbelian(ValidationError):
    pass


class BadSection(ValidationError):
    pass


class InvalidCocycle(ValidationError):
    pass


class LauschModule:
    """K with p: K -> E(S) and an action of S; all axioms are checked on construction."""

    def __init__(self, S: FiniteInverseSemigroup, K: FiniteInverseSemigroup, p, act, check=True):
        self.S = S
        self.K = K
        self.p = tuple(p)
        self.act = tuple(tuple(r) for r in act)
        self.unit_over = {}
        for k in K.idempotents:
            self.unit_over[self.p[k]] = k
        self.fibers = {e: tuple(k for k in range(K.n) if self.p[k] == e) for e in S.idempotents}
        if check:
            self._validate()

    def __repr__(self):
        return f"<LauschModule |S|={self.S.n} |K|={self.K.n}>"

    def _validate(self):
        S, K, p, act = self.S, self.K, self.p, self.act
        if not K.is_commutative():
            raise NotAbelian("K is not commutative")
        if len(p) != K.n or any(not S.is_idempotent(x) for x in p):
            raise ModuleError("p must map K into E(S)")
        for k in range(K.n):
            for k2 in range(K.n):
                if p[K.mult[k][k2]] != S.mult[p[k]][p[k2]]:
                    raise ModuleError("p is not a homomorphism", (k, k2))
        if sorted(self.unit_over) != sorted(S.idempotents) or len(self.unit_over) != len(K.idempotents):
            raise ModuleError("p is not idempotent bijective")
        if len(act) != S.n or any(len(r) != K.n for r in act):
            raise ModuleError("action table has the wrong shape")
        for s in range(S.n):
            for k in range(K.n):
                sk = act[s][k]
                if p[sk] != S.prod(s, p[k], S.star[s]):
                    raise ModuleError("p(sk) != s p(k) s*", (s, k))
            for t in range(S.n):
                st = S.mult[s][t]
                for k in range(K.n):
                    if act[s][act[t][k]] != act[st][k]:
                        raise ModuleError("action is not associative", (s, t, k))
            for k in range(K.n):
                for k2 in range(K.n):
                    if act[s][K.mult[k][k2]] != K.mult[act[s][k]][act[s][k2]]:
                        raise ModuleError("action is not by endomorphisms", (s, k, k2))
        for k in range(K.n):
            if act[p[k]][k] != k:
                raise ModuleError("p(k)k != k", (k,))
        for e, fib in self.fibers.items():
            u = self.unit_over[e]
            for k in fib:
                if K.mult[u][k] != k or K.mult[k][K.star[k]] != u:
                    raise ModuleError(f"fiber over {S.names[e]} is not a group", (k,))

    # arithmetic helpers
    def kmul(self, *ks):
        return self.K.prod(*ks)

    def kstar(self, k):
        return self.K.star[k]

    def apply(self, s, k):
        return self.act[s][k]

    def is_cochain(self, F) -> bool:
        S = self.S
        return len(F) == S.n and all(self.p[F[s]] == S.ran(s) for s in range(S.n))

    def identity_cochain(self):
        return tuple(self.unit_over[self.S.ran(s)] for s in range(self.S.n))

    def trivial_cocycle(self):
        S = self.S
        return tuple(
            tuple(self.unit_over[S.ran(S.mult[s][t])] for t in range(S.n)) for s in range(S.n)
        )

    def cell_fiber(self, s, t):
        """The fiber c(s,t) must lie in: over st(st)*."""
        return self.fibers[self.S.ran(self.S.mult[s][t])]

    def pointwise(self, c, d):
        m = self.K.mult
        return tuple(tuple(m[a][b] for a, b in zip(r1, r2)) for r1, r2 in zip(c, d))

    def pointwise_inverse(self, c):
        st = self.K.star
        return tuple(tuple(st[a] for a in r) for r in c)


# -- cocycles ------------------------------------------------------------------


@dataclass
class CocycleCheck:
    ok: bool
    violations: list

    def __bool__(self):
        return self.ok


def _as_table(c):
    return tuple(tuple(int(x) for x in row) for row in c)


def validate_cocycle(M: LauschModule, c) -> CocycleCheck:
    S, K, p, act = M.S, M.K, M.p, M.act
    c = _as_table(c)
    if len(c) != S.n or any(len(r) != S.n for r in c):
        return CocycleCheck(False, [("shape",)])
    bad = []
    for s in range(S.n):
        for t in range(S.n):
            if p[c[s][t]] != S.ran(S.mult[s][t]):
                bad.append(("fiber", s, t))
    km = K.mult
    for s in range(S.n):
        for t in range(S.n):
            st = S.mult[s][t]
            for u in range(S.n):
                tu = S.mult[t][u]
                lhs = km[act[s][c[t][u]]][c[s][tu]]
                rhs = km[c[s][t]][c[st][u]]
                if lhs != rhs:
                    bad.append(("identity", s, t, u))
    return CocycleCheck(not bad, bad)


def is_normalized(M: LauschModule, c) -> bool:
    return all(M.K.is_idempotent(c[e][e]) for e in M.S.idempotents)


def coboundary(M: LauschModule, F) -> tuple:
    """(dF)(s,t) = F(s) (s F(t)) F(st)*"""
    if not M.is_cochain(F):
        raise ValidationError("not a 1-cochain: p(F(s)) must be ss*")
    S, K = M.S, M.K
    return tuple(
        tuple(K.prod(F[s], M.act[s][F[t]], K.star[F[S.mult[s][t]]]) for t in range(S.n))
        for s in range(S.n)
    )


def normalize_cocycle(M: LauschModule, c):
    """Return (c', F) with c' = c . dF normalized."""
    S, K = M.S, M.K
    F = tuple(K.star[c[S.ran(s)][S.ran(s)]] for s in range(S.n))
    c2 = M.pointwise(c, coboundary(M, F))
    if not is_normalized(M, c2):
        raise InconsistentVerdict("normalization did not produce a normalized cocycle")
    return c2, F


def iter_cochains(M: LauschModule, normalized=False, cap=DEFAULT_CAP):
    S = M.S
    choices = []
    for s in range(S.n):
        if normalized and S.is_idempotent(s):
            choices.append((M.unit_over[s],))
        else:
            choices.append(M.fibers[S.ran(s)])
    size = iprod(len(ch) for ch in choices)
    if size > cap:
        raise SizeLimitExceeded("1-cochains", size, cap)
    return product(*choices)


def cohomologous(M: LauschModule, c, c2, cap=DEFAULT_CAP):
    """A cochain F with c2 = c . dF, or None after exhausting all cochains."""
    c, c2 = _as_table(c), _as_table(c2)
    for F in iter_cochains(M, cap=cap):
        if M.pointwise(c, coboundary(M, F)) == c2:
            return F
    return None


# -- the eleven identities for normalized cocycles ----------------------------


def check_normalized_identities(M: LauschModule, c) -> dict:
    """Map item number -> list of witnesses where the identity fails."""
    S, K, act = M.S, M.K, M.act
    m, st = S.mult, S.star
    km, kst = K.mult, K.star
    isE = K.is_idempotent
    E = S.idempotents
    N = range(S.n)
    out = {i: [] for i in range(1, 12)}
    for s in N:
        a, b = c[s][S.dom(s)], c[S.ran(s)][s]
        if not (a == b and isE(a)):
            out[1].append((s,))
        if c[s][st[s]] != act[s][c[st[s]][s]]:
            out[2].append((s,))
    for e in E:
        for f in E:
            ef = m[e][f]
            if not (c[e][ef] == c[ef][e] and isE(c[e][ef])):
                out[3].append((e, f))
            if not isE(c[e][f]):
                out[4].append((e, f))
    for s in N:
        for e in E:
            if c[s][e] != c[s][S.prod(st[s], s, e)]:
                out[5].append((s, e))
            if c[e][s] != c[S.prod(e, s, st[s])][s]:
                out[6].append((e, s))
            if not (isE(c[e][m[e][s]]) and isE(c[m[s][e]][e])):
                out[7].append((e, s))
            if c[e][s] != c[s][S.prod(st[s], e, s)]:
                out[8].append((e, s))
            if c[s][e] != c[S.prod(s, e, st[s])][s]:
                out[9].append((s, e))
    for t in N:
        for s in S.below[t]:
            ss = S.dom(s)
            for u in N:
                lhs = km[c[u][s]][kst[c[m[u][t]][S.prod(st[s], st[u], u, s)]]]
                rhs = km[act[u][kst[c[t][ss]]]][c[u][t]]
                if lhs != rhs:
                    out[10].append((s, t, u))
                lhs = km[c[s][u]][kst[c[m[t][u]][S.prod(st[u], st[s], s, u)]]]
                rhs = km[kst[c[t][ss]]][c[t][u]]
                if lhs != rhs:
                    out[11].append((s, t, u))
    return out


# -- enumeration of Z^2 and H^2 -------------------------------------------------


@dataclass
class H2Report:
    module: LauschModule
    mode: str
    cocycles: list  # every enumerated cocycle
    coboundaries: list
    order: int
    representatives: list  # canonical normalized representative per class
    class_of: dict = field(default_factory=dict)  # canonical rep -> class index
    group_table: tuple = ()
    nodes: int = 0

    @property
    def n_cocycles(self):
        return len(self.cocycles)

    def class_index(self, c) -> int:
        c = _as_table(c)
        if not is_normalized(self.module, c):
            c, _ = normalize_cocycle(self.module, c)
        return self.class_of[_canonical(self.module, c, self._bn)]


def _canonical(M, c, boundaries):
    return min(M.pointwise(c, b) for b in boundaries)


def _cells(M):
    S = M.S
    return [(s, t) for s in range(S.n) for t in range(S.n)]


def enumerate_cocycles(M: LauschModule, force: str = "theorem", cap: int = DEFAULT_CAP):
    """All normalized cocycles by backtracking with cocycle-identity pruning.

    ``force="definition"`` fixes only c(e,e); ``force="theorem"`` also fixes
    the entries that a normalized cocycle is known to take idempotent values on
    (c(e,f), c(s,s*s), c(ss*,s), c(e,es), c(se,e)).  Returns (cocycles, nodes).
    """
    S, K, act = M.S, M.K, M.act
    km = K.mult
    n = S.n
    forced = {}
    for e in S.idempotents:
        forced[(e, e)] = M.unit_over[e]
    if force == "theorem":
        for e in S.idempotents:
            for f in S.idempotents:
                forced[(e, f)] = M.unit_over[S.mult[e][f]]
        for s in range(n):
            forced[(s, S.dom(s))] = M.unit_over[S.ran(s)]
            forced[(S.ran(s), s)] = M.unit_over[S.ran(s)]
            for e in S.idempotents:
                es, se = S.mult[e][s], S.mult[s][e]
                forced[(e, es)] = M.unit_over[S.ran(es)]
                forced[(se, e)] = M.unit_over[S.ran(se)]
    elif force != "definition":
        raise ValueError(force)
    cells = _cells(M)
    pos = {cell: i for i, cell in enumerate(cells)}
    space = 1
    for cell in cells:
        if cell not in forced:
            space *= len(M.cell_fiber(*cell))
    if space > cap * 1000:
        raise SizeLimitExceeded("cocycle table space", space, cap * 1000)
    # attach each triple to the latest cell it reads
    checks = [[] for _ in cells]
    for s in range(n):
        for t in range(n):
            for u in range(n):
                ids = [pos[(t, u)], pos[(s, S.mult[t][u])], pos[(s, t)], pos[(S.mult[s][t], u)]]
                checks[max(ids)].append((s, t, u))
    table = [[None] * n for _ in range(n)]
    out = []
    nodes = 0

    def go(i):
        nonlocal nodes
        if i == len(cells):
            out.append(tuple(tuple(r) for r in table))
            return
        s, t = cells[i]
        opts = (forced[(s, t)],) if (s, t) in forced else M.cell_fiber(s, t)
        for k in opts:
            nodes += 1
            if nodes > cap:
                raise SizeLimitExceeded("cocycle search nodes", nodes, cap)
            table[s][t] = k
            good = True
            for a, b, c_ in checks[i]:
                bc = S.mult[b][c_]
                ab = S.mult[a][b]
                if km[act[a][table[b][c_]]][table[a][bc]] != km[table[a][b]][table[ab][c_]]:
                    good = False
                    break
            if good:
                go(i + 1)
        table[s][t] = None

    go(0)
    return out, nodes


def enumerate_cocycles_unpruned(M: LauschModule, cap: int = DEFAULT_CAP):
    """Every fiber-respecting table, filtered by the full cocycle check."""
    cells = _cells(M)
    options = [M.cell_fiber(*cell) for cell in cells]
    size = iprod(len(o) for o in options)
    if size > cap:
        raise SizeLimitExceeded("fiber-respecting tables", size, cap)
    n = M.S.n
    out = []
    for vals in product(*options):
        c = tuple(tuple(vals[s * n:(s + 1) * n]) for s in range(n))
        if validate_cocycle(M, c).ok:
            out.append(c)
    return out, size


def h2(M: LauschModule, prune: bool = True, cap: int = DEFAULT_CAP, force: str = "theorem") -> H2Report:
    """Second cohomology by exhaustive enumeration.

    With ``prune`` the normalized cocycles are enumerated and divided by the
    coboundaries of normalized cochains.  Without it every fiber-respecting
    table is scanned and divided by all coboundaries.
    """
    if prune:
        cocycles, nodes = enumerate_cocycles(M, force=force, cap=cap)
        bounds = {coboundary(M, F) for F in iter_cochains(M, normalized=True, cap=cap)}
        mode = f"pruned/{force}"
    else:
        cocycles, nodes = enumerate_cocycles_unpruned(M, cap=cap)
        bounds = {coboundary(M, F) for F in iter_cochains(M, normalized=False, cap=cap)}
        mode = "unpruned"
    zset = set(cocycles)
    if not bounds <= zset:
        raise InconsistentVerdict("a coboundary was not enumerated as a cocycle")
    if len(zset) % len(bounds):
        raise InconsistentVerdict("coboundaries do not partition the cocycles evenly")
    order = len(zset) // len(bounds)
    # class representatives, always normalized so reports are comparable across modes
    bn = sorted({coboundary(M, F) for F in iter_cochains(M, normalized=True, cap=cap)})
    reps = set()
    for c in cocycles:
        cn = c if is_normalized(M, c) else normalize_cocycle(M, c)[0]
        reps.add(_canonical(M, cn, bn))
    reps = sorted(reps)
    if len(reps) != order:
        raise InconsistentVerdict(f"{len(reps)} normalized classes but |Z|/|B| = {order}")
    class_of = {r: i for i, r in enumerate(reps)}
    table = tuple(
        tuple(class_of[_canonical(M, M.pointwise(a, b), bn)] for b in reps) for a in reps
    )
    rep = H2Report(M, mode, cocycles, sorted(bounds), order, reps, class_of, table, nodes)
    rep._bn = bn
    return rep


# -- extensions -----------------------------------------------------------------


@dataclass
class Extension:
    """K --iota--> T --phi--> S."""

    iota: SemigroupHom
    phi: SemigroupHom

    @property
    def K(self):
        return self.iota.source

    @property
    def T(self):
        return self.iota.target

    @property
    def S(self):
        return self.phi.target


def _iota_inverse(ext):
    inv = {}
    for k, t in enumerate(ext.iota.map):
        inv[t] = k
    return inv


def any_section(ext: Extension, last=False, idempotent_preserving=True):
    """A set section of phi; idempotents go to idempotents when asked."""
    T, S, f = ext.T, ext.S, ext.phi.map
    j = []
    for s in range(S.n):
        pre = [t for t in range(T.n) if f[t] == s]
        if idempotent_preserving and S.is_idempotent(s):
            pre = [t for t in pre if T.is_idempotent(t)]
        if not pre:
            raise BadSection(f"no preimage for {S.names[s]}")
        j.append(pre[-1] if last else pre[0])
    return tuple(j)


def iter_sections(ext: Extension, idempotent_preserving=True, cap=DEFAULT_CAP):
    T, S, f = ext.T, ext.S, ext.phi.map
    choices = []
    for s in range(S.n):
        pre = [t for t in range(T.n) if f[t] == s]
        if idempotent_preserving and S.is_idempotent(s):
            pre = [t for t in pre if T.is_idempotent(t)]
        choices.append(pre)
    size = iprod(len(c) for c in choices)
    if size > cap:
        raise SizeLimitExceeded("sections", size, cap)
    return product(*choices)


def _check_section(ext, j, need_idempotents):
    T, S = ext.T, ext.S
    for s in range(S.n):
        if ext.phi.map[j[s]] != s:
            raise BadSection(f"phi(j({S.names[s]})) != {S.names[s]}", (s,))
        if need_idempotents and S.is_idempotent(s) and not T.is_idempotent(j[s]):
            raise BadSection(f"j({S.names[s]}) is not idempotent", (s,))


def _module_table(ext, j, inv):
    T, S, K = ext.T, ext.S, ext.K
    io = ext.iota.map
    act = []
    for s in range(S.n):
        js = j[s]
        row = []
        for k in range(K.n):
            x = T.prod(js, io[k], T.star[js])
            if x not in inv:
                raise InconsistentVerdict("conjugate of the kernel left the kernel")
            row.append(inv[x])
        act.append(tuple(row))
    return tuple(act)


def module_from_extension(ext: Extension, j=None, check_independence=True) -> LauschModule:
    """sk = iota^-1(j(s) iota(k) j(s)*), cross-checked against a second section."""
    if not ext.K.is_commutative():
        raise NotAbelian("kernel is not commutative")
    j = j or any_section(ext)
    _check_section(ext, j, False)
    inv = _iota_inverse(ext)
    act = _module_table(ext, j, inv)
    if check_independence:
        j2 = any_section(ext, last=True)
        if _module_table(ext, j2, inv) != act:
            raise InconsistentVerdict("module action depends on the section")
    p = tuple(ext.phi.map[ext.iota.map[k]] for k in range(ext.K.n))
    return LauschModule(ext.S, ext.K, p, act)


def cocycle_from_extension(ext: Extension, j=None) -> tuple:
    """c(s,s') = iota^-1(j(s) j(s') j(ss')*) for an idempotent-preserving section j."""
    j = j or any_section(ext)
    _check_section(ext, j, True)
    T, S = ext.T, ext.S
    inv = _iota_inverse(ext)
    c = []
    for s in range(S.n):
        row = []
        for t in range(S.n):
            x = T.prod(j[s], j[t], T.star[j[S.mult[s][t]]])
            row.append(inv[x])
        c.append(tuple(row))
    return tuple(c)


def section_difference(ext: Extension, j1, j2) -> tuple:
    """The cochain F(s) = iota^-1(j2(s) j1(s)*), so that the j2 cocycle is the j1 cocycle times dF."""
    T, S = ext.T, ext.S
    inv = _iota_inverse(ext)
    F = []
    for s in range(S.n):
        x = T.mult[j2[s]][T.star[j1[s]]]
        if x not in inv:
            raise BadSection(f"j1 and j2 differ outside the kernel at {S.names[s]}", (s,))
        F.append(inv[x])
    return tuple(F)


def extension_from_cocycle(M: LauschModule, c) -> Extension:
    """The extension T = {(k,s) : p(k) = ss*} with the cocycle-twisted product."""
    c = _as_table(c)
    chk = validate_cocycle(M, c)
    if not chk.ok:
        raise InvalidCocycle("not a cocycle", chk.violations[0])
    if not is_normalized(M, c):
        raise InvalidCocycle("cocycle is not normalized")
    S, K, act = M.S, M.K, M.act
    elems = [(k, s) for s in range(S.n) for k in M.fibers[S.ran(s)]]
    idx = {x: i for i, x in enumerate(elems)}
    table = []
    for k, s in elems:
        row = []
        for k2, s2 in elems:
            row.append(idx[(K.prod(k, act[s][k2], c[s][s2]), S.mult[s][s2])])
        table.append(row)
    names = [f"({K.names[k]},{S.names[s]})" for k, s in elems]
    T = validate_inverse_semigroup(table, names)
    for i, (k, s) in enumerate(elems):
        ss = S.star[s]
        expect = idx[(K.mult[act[ss][K.star[k]]][K.star[c[s][ss]]], ss)]
        if T.star[i] != expect:
            raise InconsistentVerdict(f"inverse formula fails at {names[i]}")
    iota = SemigroupHom(K, T, tuple(idx[(k, M.p[k])] for k in range(K.n)))
    phi = SemigroupHom(T, S, tuple(s for _, s in elems))
    ext = Extension(iota, phi)
    if is_boolean(S) and is_boolean(K) and not is_boolean(T):
        raise InconsistentVerdict(f"extension of Boolean semigroups is not Boolean: {is_boolean(T)}")
    return ext


def extensions_equivalent(e1: Extension, e2: Extension):
    """An isomorphism T1 -> T2 commuting with iota and phi, or None."""
    T1, T2 = e1.T, e2.T
    if T1.n != T2.n:
        return None
    fixed = {e1.iota.map[k]: e2.iota.map[k] for k in range(e1.K.n)}
    cands = []
    for t in range(T1.n):
        if t in fixed:
            cands.append([fixed[t]])
        else:
            s = e1.phi.map[t]
            cands.append([x for x in range(T2.n) if e2.phi.map[x] == s])
    return find_hom(T1, T2, cands, bijective=True)


def split_extension(M: LauschModule) -> Extension:
    return extension_from_cocycle(M, M.trivial_cocycle())
