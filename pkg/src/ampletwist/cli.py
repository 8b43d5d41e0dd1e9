"""
Compute with twists of ample groupoids and their algebras from a YAML document.

    ampletwist VERB [--doc FILE] [--target NAME] [--group NAME] [--other NAME]
               [--field p|Q] [--cap N] [--seed N] [--format human|machine]

Without ``--doc`` the bundled fixture document is used.  The exit status is
nonzero exactly when the report records a failure.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field

from . import acceptance
from .crossed import (
    build_action,
    build_crossed_product,
    cocycle_vectors,
    same_crossed_iso,
    tilde_to_vector,
    trivial_cocycle_vectors,
)
from .document import Document, ModuleRecord, ParseError, UnresolvedReference, bundled_document, load_document
from .duality import DEFAULT_CAP, epsilon, eta, gamma_c, germ_groupoid
from .errors import NotIso, SizeLimitExceeded, ValidationError
from .gpdkit import FiniteGroupoid
from .iskit import boolean_structure
from .lausch import DEFAULT_CAP as COCHAIN_CAP
from .lausch import coboundary, h2, iter_cochains
from .ringkit import make_field, units_and_embedding
from .steinberg import build_steinberg, check_universality, iso_psi
from .twistkit import (
    FiniteAbelianGroup,
    TwistExtension,
    baer_sum,
    module_tilde_A,
    trivial_twist,
    twist_class_cocycle,
    twist_from_class,
    twists_equivalent,
)

VERBS = (
    "gamma-c",
    "germ",
    "eta-eps",
    "h2",
    "classify-twists",
    "baer",
    "crossed",
    "steinberg",
    "iso-check",
    "verify-all",
)


class UnknownVerb(Exception):
    pass


@dataclass
class Report:
    verb: str
    summary: str = ""
    items: list = field(default_factory=list)  # (key, value)
    failures: list = field(default_factory=list)

    def add(self, key, value):
        self.items.append((key, value))

    def fail(self, message):
        self.failures.append(message)

    @property
    def ok(self):
        return not self.failures

    def render(self, fmt: str = "human") -> str:
        if fmt == "machine":
            lines = [f"verb={self.verb}"]
            lines += [f"{k}={v}" for k, v in self.items]
            lines += [f"failure={f}" for f in self.failures]
            lines.append(f"status={'ok' if self.ok else 'fail'}")
        else:
            lines = [self.summary] if self.summary else []
            lines += [f"  {k}: {v}" for k, v in self.items]
            lines += [f"  FAILURE: {f}" for f in self.failures]
        return "\n".join(lines)


@dataclass
class Options:
    target: str | None = None
    group: str | None = None
    other: str | None = None
    field: str = "5"
    cap: int | None = None
    seed: int = 0


# -- helpers ---------------------------------------------------------------------------------


def _need(opts, attr, verb):
    v = getattr(opts, attr)
    if v is None:
        raise ValueError(f"{verb} needs --{attr}")
    return v


def _groupoid(doc: Document, name) -> FiniteGroupoid:
    obj = doc.get(name)
    if isinstance(obj, TwistExtension):
        return obj.Sigma
    if not isinstance(obj, FiniteGroupoid):
        raise ValueError(f"{name!r} is not a groupoid record")
    return obj


def _group(doc: Document, name) -> FiniteAbelianGroup:
    obj = doc.get(name)
    if not isinstance(obj, FiniteAbelianGroup):
        raise ValueError(f"{name!r} is not an abelian_group record")
    return obj


def _twist(doc: Document, name, opts) -> TwistExtension:
    obj = doc.get(name)
    if isinstance(obj, TwistExtension):
        return obj
    if isinstance(obj, FiniteGroupoid):
        A = _group(doc, opts.group) if opts.group else FiniteAbelianGroup.cyclic(2)
        return trivial_twist(obj, A)
    raise ValueError(f"{name!r} is neither a twist nor a groupoid")


def _cap(opts, default):
    return opts.cap if opts.cap is not None else default


def _table_lines(report, key, mult, F):
    for i, row in enumerate(mult):
        for j, v in enumerate(row):
            if any(v):
                report.add(f"{key}[{i}][{j}]", " ".join(F.render(x) for x in v))


# -- verbs -----------------------------------------------------------------------------------


def cmd_gamma_c(doc, opts):
    name = _need(opts, "target", "gamma-c")
    G = _groupoid(doc, name)
    BS = gamma_c(G, _cap(opts, DEFAULT_CAP))
    S = BS.semigroup
    r = Report("gamma-c", f"Gamma_c({name}): {S.n} elements")
    r.add("elements", S.n)
    r.add("idempotents", len(S.idempotents))
    r.add("names", " ".join(S.names))
    r.add("boolean", bool(BS.boolean))
    return r


def _semigroup_boolean(doc, name, opts):
    obj = doc.get(name)
    if isinstance(obj, FiniteGroupoid):
        return gamma_c(obj, _cap(opts, DEFAULT_CAP)).boolean
    base = getattr(obj, "semigroup", obj)
    return boolean_structure(base)


def cmd_germ(doc, opts):
    name = _need(opts, "target", "germ")
    B = _semigroup_boolean(doc, name, opts)
    GG = germ_groupoid(B)
    H = GG.groupoid
    r = Report("germ", f"germ groupoid of {name}: {H.n} arrows, {len(H.units)} units")
    r.add("arrows", H.n)
    r.add("units", len(H.units))
    r.add("names", " ".join(H.names))
    return r


def cmd_eta_eps(doc, opts):
    name = _need(opts, "target", "eta-eps")
    G = _groupoid(doc, name)
    BS = gamma_c(G, _cap(opts, DEFAULT_CAP))
    GG = germ_groupoid(BS.boolean)
    r = Report("eta-eps", f"eta and epsilon for {name}")
    try:
        e = eta(G, BS, GG)
        r.add("eta", "isomorphism")
        r.add("eta_map", " ".join(f"{G.names[g]}->{GG.groupoid.names[e.map[g]]}" for g in range(G.n)))
    except NotIso as exc:
        r.fail(f"eta: {exc}")
    try:
        epsilon(BS.boolean, GG)
        r.add("epsilon", "isomorphism")
    except NotIso as exc:
        r.fail(f"epsilon: {exc}")
    return r


def _module(doc, opts, verb):
    name = _need(opts, "target", verb)
    obj = doc.get(name)
    if isinstance(obj, ModuleRecord):
        return obj.module, obj.TA, obj.BS, name
    G = _groupoid(doc, name)
    A = _group(doc, _need(opts, "group", verb))
    BS = gamma_c(G, _cap(opts, DEFAULT_CAP))
    M, TA = module_tilde_A(BS, A)
    return M, TA, BS, f"tilde {opts.group} over Gamma_c({name})"


def cmd_h2(doc, opts):
    M, _, _, label = _module(doc, opts, "h2")
    cap = _cap(opts, COCHAIN_CAP)
    rep = h2(M, cap=cap)
    r = Report("h2", f"H^2 of {label}: classes: {rep.order}")
    r.add("classes", rep.order)
    r.add("normalized_cocycles", rep.n_cocycles)
    r.add("coboundaries", len(rep.coboundaries))
    r.add("search_nodes", rep.nodes)
    try:
        brute = h2(M, prune=False, cap=cap)
        r.add("unpruned_classes", brute.order)
        if brute.order != rep.order:
            r.fail(f"pruned {rep.order} != unpruned {brute.order}")
    except SizeLimitExceeded as exc:
        r.add("unpruned_classes", f"skipped ({exc})")
    return r


def cmd_classify(doc, opts):
    M, TA, BS, label = _module(doc, opts, "classify-twists")
    if TA is None:
        raise ValueError("classify-twists needs a tilde A module")
    rep = h2(M, cap=_cap(opts, COCHAIN_CAP))
    realized = [twist_from_class(M, c, BS, TA) for c in rep.representatives]
    r = Report("classify-twists", f"twists of {label}: {rep.order} classes")
    r.add("classes", rep.order)
    for i, T in enumerate(realized):
        r.add(f"class[{i}]", f"Sigma with {T.Sigma.n} arrows")
        for j in range(i):
            if twists_equivalent(T, realized[j]) is not None:
                r.fail(f"classes {j} and {i} realize equivalent twists")
    for name in doc.names("twist"):
        T = doc.get(name)
        if T.G is not BS.groupoid and T.G.names != BS.groupoid.names:
            continue
        if T.A.n != TA.A.n:
            continue
        try:
            tc = twist_class_cocycle(T, S=BS)
        except ValidationError as exc:
            r.add(f"twist[{name}]", f"not classified ({exc})")
            continue
        r.add(f"twist[{name}]", f"class {rep.class_index(tc.cocycle)}")
    return r


def cmd_baer(doc, opts):
    a, b = _need(opts, "target", "baer"), _need(opts, "other", "baer")
    T1, T2 = _twist(doc, a, opts), _twist(doc, b, opts)
    BS = gamma_c(T1.G)
    M, _ = module_tilde_A(BS, T1.A)
    rep = h2(M, cap=_cap(opts, COCHAIN_CAP))
    c1 = rep.class_index(twist_class_cocycle(T1, S=BS).cocycle)
    c2 = rep.class_index(twist_class_cocycle(T2, S=BS).cocycle)
    Tsum = baer_sum(T1, T2)
    cs = rep.class_index(twist_class_cocycle(Tsum, S=BS).cocycle)
    r = Report("baer", f"class({a} + {b}) = {cs}")
    r.add("class_left", c1)
    r.add("class_right", c2)
    r.add("class_sum", cs)
    r.add("sum_arrows", Tsum.Sigma.n)
    if cs != rep.group_table[c1][c2]:
        r.fail(f"class of the sum is {cs}, group law gives {rep.group_table[c1][c2]}")
    return r


def _crossed_for(doc, opts):
    name = _need(opts, "target", "crossed")
    F = make_field(opts.field)
    obj = doc.get(name)
    if isinstance(obj, FiniteGroupoid):
        act = build_action(gamma_c(obj, _cap(opts, DEFAULT_CAP)), F)
        return name, F, build_crossed_product(act, trivial_cocycle_vectors(act))
    T = _twist(doc, name, opts)
    tc = twist_class_cocycle(T)
    emb = units_and_embedding(F, T.A)
    if emb is None:
        raise ValueError(f"A of order {T.A.n} does not embed in the units of {F!r}")
    act = build_action(tc.pipeline.S, F)
    return name, F, build_crossed_product(act, cocycle_vectors(act, tc.pipeline.TA, tc.cocycle, emb))


def cmd_crossed(doc, opts):
    name, F, cp = _crossed_for(doc, opts)
    r = Report("crossed", f"crossed product for {name} over {F!r}: dim {cp.dim}")
    r.add("dim", cp.dim)
    r.add("ambient_dim", cp.amb_dim)
    r.add("basis", " ".join(cp.algebra.names))
    _table_lines(r, "mult", cp.algebra.mult, F)
    return r


def cmd_steinberg(doc, opts):
    name = _need(opts, "target", "steinberg")
    F = make_field(opts.field)
    T = _twist(doc, name, opts)
    alg = build_steinberg(T, F)
    r = Report("steinberg", f"twisted Steinberg algebra of {name} over {F!r}: dim {alg.dim}")
    r.add("dim", alg.dim)
    r.add("embedding", " ".join(F.render(x) for x in alg.emb))
    r.add("basis", " ".join(alg.algebra.names))
    _table_lines(r, "mult", alg.algebra.mult, F)
    return r


def cmd_iso_check(doc, opts):
    name = _need(opts, "target", "iso-check")
    F = make_field(opts.field)
    T = _twist(doc, name, opts)
    out = acceptance.crossed_and_steinberg(T, F)
    if out is None:
        raise ValueError(f"A of order {T.A.n} does not embed in the units of {F!r}")
    cp, alg, iso = out
    r = Report("iso-check", f"isomorphism verified, dim {cp.dim}")
    r.add("dim", cp.dim)
    r.add("arrows", T.G.n)
    r.add("universal", check_universality(cp, alg, iso))
    if cp.dim != T.G.n:
        r.fail(f"dimension {cp.dim} differs from the number of arrows {T.G.n}")
    return r


def random_cohomologous_sweep(seed: int, trials: int = 20) -> tuple[bool, str]:
    """Perturb the TW2 cocycle by random coboundaries and check same_crossed_iso each time."""
    from . import fixtures as fx

    rng = random.Random(seed)
    T = fx.TW2()
    tc = twist_class_cocycle(T)
    M, TA = tc.module, tc.pipeline.TA
    cochains = list(iter_cochains(M, normalized=True))
    F = make_field(5)
    emb = units_and_embedding(F, T.A)
    act = build_action(tc.pipeline.S, F)
    cp = build_crossed_product(act, cocycle_vectors(act, TA, tc.cocycle, emb))
    for _ in range(trials):
        Fc = rng.choice(cochains)
        c2 = M.pointwise(tc.cocycle, coboundary(M, Fc))
        cp2 = build_crossed_product(act, cocycle_vectors(act, TA, c2, emb))
        same_crossed_iso(act, cp, cp2, [tilde_to_vector(F, TA, f, emb) for f in Fc])
    return True, f"{trials} random coboundary perturbations of TW2 (seed {seed})"


def cmd_verify_all(doc, opts):
    results = acceptance.run_all()
    passed = sum(r.passed for r in results)
    r = Report("verify-all", f"acceptance: {passed}/{len(results)} passed")
    for res in results:
        r.add(f"criterion[{res.number}]", f"{'pass' if res.passed else 'fail'} {res.title}: {res.detail}")
        if not res.passed:
            r.fail(f"criterion {res.number}: {res.detail}")
    ok, detail = random_cohomologous_sweep(opts.seed)
    r.add("random_sweep", detail)
    if not ok:
        r.fail(detail)
    return r


COMMANDS = {
    "gamma-c": cmd_gamma_c,
    "germ": cmd_germ,
    "eta-eps": cmd_eta_eps,
    "h2": cmd_h2,
    "classify-twists": cmd_classify,
    "baer": cmd_baer,
    "crossed": cmd_crossed,
    "steinberg": cmd_steinberg,
    "iso-check": cmd_iso_check,
    "verify-all": cmd_verify_all,
}


def run_command(verb: str, args: Options | None, doc: Document) -> Report:
    if verb not in COMMANDS:
        raise UnknownVerb(verb)
    return COMMANDS[verb](doc, args or Options())


def build_parser():
    p = argparse.ArgumentParser(prog="ampletwist", description=__doc__.strip().splitlines()[0])
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--doc", help="document file (default: the bundled fixtures)")
    p.add_argument("--target", help="record name the verb acts on")
    p.add_argument("--group", help="abelian_group record for h2 and classify-twists")
    p.add_argument("--other", help="second twist for baer")
    p.add_argument("--field", default="5", help="a prime p or Q (default 5)")
    p.add_argument("--cap", type=int, help="enumeration cap")
    p.add_argument("--seed", type=int, default=0, help="seed for the randomized sweep in verify-all")
    p.add_argument("--format", choices=("human", "machine"), default="human")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = Options(args.target, args.group, args.other, args.field, args.cap, args.seed)
    try:
        doc = load_document(args.doc) if args.doc else bundled_document()
        report = run_command(args.verb, opts, doc)
    except (ParseError, UnresolvedReference, ValidationError, SizeLimitExceeded, NotIso, ValueError) as exc:
        print(f"error ({args.verb}): {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(report.render(args.format))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
