"""
The verification suite: thirteen end-to-end checks over the fixture corpus.

Every check returns a :class:`Result`; ``run_all`` runs them in order.  The
CLI ``verify-all`` verb and ``tests/test_acceptance.py`` both use this module.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from . import fixtures as fx
from .crossed import (
    build_action,
    build_crossed_product,
    check_tau_rho,
    cocycle_vectors,
    groupoid_algebra,
    same_crossed_iso,
    tilde_to_vector,
    trivial_cocycle_vectors,
)
from .duality import (
    check_extension_groupoids,
    check_extension_semigroups,
    epsilon,
    eta,
    gamma_c,
    gamma_c_on_functor,
    germ_groupoid,
    germ_on_hom,
    oip_section_iff_unit_section,
    transfer_to_groupoids,
    transfer_to_semigroups,
)
from .gpdkit import check_functor
from .iskit import check_hom
from .lausch import (
    check_normalized_identities,
    cocycle_from_extension,
    coboundary,
    cohomologous,
    enumerate_cocycles,
    enumerate_cocycles_unpruned,
    h2,
    iter_sections,
    normalize_cocycle,
    section_difference,
)
from .ringkit import PrimeField, Rationals, rank, units_and_embedding
from .steinberg import build_steinberg, check_universality, iso_psi
from .twistkit import baer_sum, module_tilde_A, twist_class_cocycle, twist_from_class, twists_equivalent

FIELDS = (PrimeField(5), Rationals())


@dataclass
class Result:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.title}: {self.detail} ({self.seconds:.2f}s)"


def _timed(number, title, budget=None):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as e:  # a crash is a failure of the criterion, reported with its message
                ok, detail = False, f"{type(e).__name__}: {e}"
            dt = time.perf_counter() - t0
            if budget is not None and dt >= budget:
                ok, detail = False, f"{detail}; took {dt:.1f}s, budget {budget}s"
            return Result(number, title, ok, detail, dt)

        run.number = number
        run.title = title
        return run

    return wrap


def _duality_groupoids():
    out = dict(fx.groupoids())
    out["Sigma(TW1)"] = fx.TW1().Sigma
    out["Sigma(TW2)"] = fx.TW2().Sigma
    return out


@_timed(1, "duality round trips", budget=10)
def duality_round_trips():
    checked = []
    for name, G in _duality_groupoids().items():
        BS = gamma_c(G)
        GG = germ_groupoid(BS.boolean)
        F = eta(G, BS, GG)
        fl = check_functor(F)
        # exact table equality: eta carries the composition table onto the germ table
        same = all(
            (G.comp[g][h] is None) == (GG.groupoid.comp[F.map[g]][F.map[h]] is None)
            for g in range(G.n) for h in range(G.n)
        )
        h = epsilon(BS.boolean, GG)
        hf = check_hom(h)
        ok = fl.injective and fl.surjective and same and hf.injective and hf.surjective
        if not ok:
            return False, f"{name} fails"
        checked.append(name)
    return True, f"eta and epsilon isomorphisms for {', '.join(checked)}"


@_timed(2, "naturality of eta")
def naturality():
    count = 0
    for name, F in fx.iso_unital_functors().items():
        G, H = F.source, F.target
        BG, BH = gamma_c(G), gamma_c(H)
        GG, GH = germ_groupoid(BG.boolean), germ_groupoid(BH.boolean)
        eG, eH = eta(G, BG, GG), eta(H, BH, GH)
        gF = germ_on_hom(gamma_c_on_functor(F, BG, BH), GG, GH)
        for g in range(G.n):
            if gF.map[eG.map[g]] != eH.map[F.map[g]]:
                return False, f"square fails for {name} at arrow {G.names[g]}"
        count += 1
    return True, f"{count} iso-unital functors, all squares commute"


@_timed(3, "mono/epi preservation")
def mono_epi():
    seen = set()
    for name, F in fx.all_functors().items():
        ff = check_functor(F)
        BG, BH = gamma_c(F.source), gamma_c(F.target)
        h = gamma_c_on_functor(F, BG, BH)
        hf = check_hom(h)
        if (ff.injective, ff.surjective) != (hf.injective, hf.surjective):
            return False, f"{name}: functor {ff.injective, ff.surjective} vs Gamma_c {hf.injective, hf.surjective}"
        gh = germ_on_hom(h, germ_groupoid(BG.boolean), germ_groupoid(BH.boolean))
        gf = check_functor(gh)
        if (gf.injective, gf.surjective) != (hf.injective, hf.surjective):
            return False, f"{name}: germ direction disagrees"
        seen.add((ff.injective, ff.surjective))
    missing = {(True, False), (False, True), (True, True)} - seen
    if missing:
        return False, f"corpus lacks functor kinds {sorted(missing)}"
    return True, f"{len(fx.all_functors())} functors, injective/surjective flags agree on both sides"


@_timed(4, "extension exactness transfer")
def extension_transfer():
    names = []
    for name, T in (("TW0", fx.TW0()), ("TW1", fx.TW1()), ("TW2", fx.TW2()), ("non-central", fx.noncentral_S3())):
        if not check_extension_groupoids(T.iota, T.phi).ok:
            return False, f"{name} is not a groupoid extension"
        sem = transfer_to_semigroups(T.iota, T.phi)
        if not sem.report.ok or not check_extension_semigroups(sem.iota, sem.phi).ok:
            return False, f"Gamma_c of {name}: {sem.report.failures()}"
        back = transfer_to_groupoids(sem.iota, sem.phi)
        if not back.report.ok:
            return False, f"germs of Gamma_c of {name}: {back.report.failures()}"
        names.append(name)
    return True, f"both directions exact for {', '.join(names)}"


@_timed(5, "normalized-cocycle identities")
def normalized_identities():
    details = []
    for gname, G in (("G2", fx.G2()), ("G4", fx.G4())):
        M, _ = module_tilde_A(gamma_c(G), fx.Z2())
        if gname == "G2":
            raw, _ = enumerate_cocycles_unpruned(M)
            cocycles = {normalize_cocycle(M, c)[0] for c in raw}
            label = f"{len(raw)} cocycles normalized"
        else:
            cocycles, _ = enumerate_cocycles(M, force="definition")
            label = f"{len(cocycles)} normalized cocycles"
        violations = 0
        for c in cocycles:
            violations += sum(len(v) for v in check_normalized_identities(M, c).values())
        if violations:
            return False, f"{gname}: {violations} violations"
        details.append(f"{gname}: {label}, 0 violations")
    return True, "; ".join(details)


@_timed(6, "H^2 count for (Gamma_c(G2), Z/2)", budget=60)
def cohomology_count():
    M, _ = module_tilde_A(gamma_c(fx.G2()), fx.Z2())
    pruned = h2(M, prune=True)
    brute = h2(M, prune=False)
    ok = pruned.order == brute.order == 2
    return ok, f"pruned {pruned.order}, brute force {brute.order} ({brute.n_cocycles} tables)"


@_timed(7, "twist classification over G2")
def twist_classification():
    BS = gamma_c(fx.G2())
    M, TA = module_tilde_A(BS, fx.Z2())
    rep = h2(M)
    realized = [twist_from_class(M, c, BS, TA) for c in rep.representatives]
    for i, j in combinations(range(len(realized)), 2):
        if twists_equivalent(realized[i], realized[j]) is not None:
            return False, f"classes {i} and {j} give equivalent twists"
    for i, T in enumerate(realized):
        if rep.class_index(twist_class_cocycle(T, S=BS).cocycle) != i:
            return False, f"class {i} realized by a twist of another class"
    for name, T in (("TW0", fx.TW0()), ("TW2", fx.TW2())):
        k = rep.class_index(twist_class_cocycle(T, S=BS).cocycle)
        matches = [i for i, R in enumerate(realized) if twists_equivalent(T, R) is not None]
        if matches != [k]:
            return False, f"{name} in class {k} but equivalent to realized {matches}"
    return True, f"{rep.order} classes <-> {len(realized)} inequivalent twists"


@_timed(8, "Baer-sum group law")
def baer_law():
    BS = gamma_c(fx.G2())
    M, _ = module_tilde_A(BS, fx.Z2())
    rep = h2(M)
    twists = {"trivial": fx.TW0(), "TW2": fx.TW2()}
    cls = {n: rep.class_index(twist_class_cocycle(T, S=BS).cocycle) for n, T in twists.items()}
    for a, Ta in twists.items():
        for b, Tb in twists.items():
            k = rep.class_index(twist_class_cocycle(baer_sum(Ta, Tb), S=BS).cocycle)
            if k != rep.group_table[cls[a]][cls[b]]:
                return False, f"class({a}+{b}) = {k}"
    if twists_equivalent(baer_sum(fx.TW2(), fx.TW2()), fx.TW0()) is None:
        return False, "TW2 + TW2 is not equivalent to the trivial twist"
    return True, "class(T+T') = class(T)class(T') on all 4 pairs; TW2+TW2 ~ trivial"


def crossed_and_steinberg(T, F, section=None):
    """Crossed product and Steinberg algebra for a twist from one section, with the iso."""
    tc = twist_class_cocycle(T, section=section)
    emb = units_and_embedding(F, T.A)
    if emb is None:
        return None
    act = build_action(tc.pipeline.S, F)
    cp = build_crossed_product(act, cocycle_vectors(act, tc.pipeline.TA, tc.cocycle, emb))
    alg = build_steinberg(T, F, emb)
    iso = iso_psi(cp, alg, tc.section, tc.pipeline.T)
    return cp, alg, iso


@_timed(9, "crossed product = twisted Steinberg algebra", budget=60)
def crossed_vs_steinberg():
    cases = (("G1", fx.trivial_twist_G1()), ("G2", fx.TW0()), ("TW2", fx.TW2()), ("G4", fx.TW1()))
    done = []
    for F in FIELDS:
        for name, T in cases:
            out = crossed_and_steinberg(T, F)
            if out is None:
                continue
            cp, alg, iso = out
            if not (cp.dim == alg.dim == T.G.n):
                return False, f"{name} over {F!r}: dims {cp.dim}, {alg.dim}, |G| = {T.G.n}"
            if not check_universality(cp, alg, iso):
                return False, f"{name} over {F!r}: universal map differs from the iso"
            done.append(f"{name}/{F!r}")
    return len(done) == 8, f"isomorphisms verified for {', '.join(done)}"


@_timed(10, "cohomologous cocycles give isomorphic crossed products")
def cohomologous_invariance():
    T = fx.TW2()
    data = twist_class_cocycle(T).pipeline
    M, TA = data.module, data.TA
    sections = [tuple(j) for j in iter_sections(data.ext)]
    ginv = {k: f for f, k in enumerate(TA.gamma.map)}

    def cocycle(j):
        return tuple(tuple(ginv[x] for x in row) for row in cocycle_from_extension(data.ext, j))

    pairs = 0
    nontrivial = 0
    for j1, j2 in combinations(sections, 2):
        c1, c2 = cocycle(j1), cocycle(j2)
        if cohomologous(M, c1, c2) is None:
            return False, f"sections {j1}, {j2} give non-cohomologous cocycles"
        # the witness read off from the two sections, in tilde A coordinates
        Fc = tuple(ginv[k] for k in section_difference(data.ext, j1, j2))
        if M.pointwise(c1, coboundary(M, Fc)) != c2:
            return False, "section difference is not a coboundary witness"
        nontrivial += Fc != M.identity_cochain()
        for F in FIELDS:
            emb = units_and_embedding(F, T.A)
            act = build_action(data.S, F)
            cp1 = build_crossed_product(act, cocycle_vectors(act, TA, c1, emb))
            cp2 = build_crossed_product(act, cocycle_vectors(act, TA, c2, emb))
            same_crossed_iso(act, cp1, cp2, [tilde_to_vector(F, TA, f, emb) for f in Fc])
            pairs += 1
    ok = pairs > 0 and nontrivial > 0
    return ok, f"{len(sections)} sections, {nontrivial} non-identity witnesses, {pairs} verified isos over F5 and Q"


@_timed(11, "trivial cocycle gives the groupoid algebra")
def skew_degeneration():
    done = []
    for name, G in (("G2", fx.G2()), ("G4", fx.G4())):
        for F in FIELDS:
            act = build_action(G, F)
            cp = build_crossed_product(act, trivial_cocycle_vectors(act))
            mine = cp.algebra.in_basis(cp.arrow_basis()).mult
            if mine != groupoid_algebra(G, F).mult:
                return False, f"{name} over {F!r}: structure constants differ"
            done.append(f"{name}/{F!r}")
    return True, f"structure constants equal for {', '.join(done)}"


@_timed(12, "tau o rho = id")
def tau_rho():
    F = PrimeField(5)
    cps = []
    for name, G in fx.groupoids().items():
        act = build_action(G, F)
        cps.append((name, build_crossed_product(act, trivial_cocycle_vectors(act))))
    for name, T in (("TW1", fx.TW1()), ("TW2", fx.TW2()), ("Sigma(TW2)", None)):
        if T is None:
            act = build_action(fx.TW2().Sigma, F)
            cps.append((name, build_crossed_product(act, trivial_cocycle_vectors(act))))
        else:
            cps.append((name, crossed_and_steinberg(T, F)[0]))
    for name, cp in cps:
        bad = check_tau_rho(cp)
        if bad:
            return False, f"{name}: {bad[:3]}"
        if rank(F, [cp.rho(cp.action.basis(x)) for x in range(cp.n0)]) != cp.n0:
            return False, f"{name}: rho is not injective"
    return True, f"tau rho = id and rho injective for {', '.join(n for n, _ in cps)}"


@_timed(13, "section existence on both sides")
def section_equivalence():
    out = []
    for name, T in (("TW1", fx.TW1()), ("TW2", fx.TW2())):
        if not oip_section_iff_unit_section(T.phi):
            return False, f"{name}: no section"
        out.append(name)
    return True, f"sections exist on both sides for {', '.join(out)}"


CRITERIA = (
    duality_round_trips,
    naturality,
    mono_epi,
    extension_transfer,
    normalized_identities,
    cohomology_count,
    twist_classification,
    baer_law,
    crossed_vs_steinberg,
    cohomologous_invariance,
    skew_degeneration,
    tau_rho,
    section_equivalence,
)


def run_all(only=None) -> list[Result]:
    return [c() for c in CRITERIA if only is None or c.number in only]
