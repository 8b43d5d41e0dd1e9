"""
The declarative input format.

A document is a YAML list of records.  Every record has ``kind`` and
``name``; the other keys depend on the kind (see README).  Records may refer
to each other by name in any order.  Resolution is lazy and memoized, and
each record is validated through the module that owns its kind.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

import yaml

from . import gpdkit, iskit, lausch, twistkit
from .duality import gamma_c
from .errors import ValidationError
from .gpdkit import GroupoidFunctor, bundle_over_units
from .iskit import SemigroupHom
from .ringkit import make_field

KINDS = (
    "groupoid",
    "abelian_group",
    "semigroup",
    "module",
    "cocycle",
    "groupoid_cocycle",
    "twist",
    "crossed_product",
    "steinberg",
    "extension",
)


class ParseError(Exception):
    def __init__(self, message, line=None, col=None):
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.col = col


class UnresolvedReference(Exception):
    def __init__(self, name, where=None):
        super().__init__(f"unresolved reference {name!r}" + (f" in record {where!r}" if where else ""))
        self.name = name


@dataclass
class Document:
    records: list = field(default_factory=list)  # raw record dicts, in file order
    positions: dict = field(default_factory=dict)  # name -> (line, col)

    def __post_init__(self):
        self._cache = {}
        self._resolving = set()

    def __eq__(self, other):
        return isinstance(other, Document) and self.records == other.records

    def names(self, kind=None):
        return [r["name"] for r in self.records if kind is None or r["kind"] == kind]

    def record(self, name, where=None):
        for r in self.records:
            if r["name"] == name:
                return r
        raise UnresolvedReference(name, where)

    def get(self, name, where=None):
        """The validated object for a record."""
        if name in self._cache:
            return self._cache[name]
        rec = self.record(name, where)
        if name in self._resolving:
            raise ParseError(f"circular reference through {name!r}", *self.positions.get(name, (None, None)))
        self._resolving.add(name)
        try:
            obj = _BUILDERS[rec["kind"]](self, rec)
        except (ValidationError, ValueError, KeyError, IndexError, TypeError) as e:
            line, col = self.positions.get(name, (None, None))
            raise ParseError(f"record {name!r}: {type(e).__name__}: {e}", line, col) from e
        finally:
            self._resolving.discard(name)
        self._cache[name] = obj
        return obj

    def resolve_all(self):
        for n in self.names():
            self.get(n)
        return self


def _mark(node):
    return node.start_mark.line + 1, node.start_mark.column + 1


def parse_document(text: str, resolve: bool = True) -> Document:
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as e:
        m = e.problem_mark
        raise ParseError(e.problem or str(e), m.line + 1 if m else None, m.column + 1 if m else None) from e
    if data is None:
        return Document()
    if not isinstance(data, list):
        raise ParseError("a document is a list of records", *_mark(root))
    doc = Document()
    seen = set()
    for node, rec in zip(root.value, data):
        pos = _mark(node)
        if not isinstance(rec, dict):
            raise ParseError("record must be a mapping", *pos)
        for key in ("kind", "name"):
            if key not in rec:
                raise ParseError(f"record is missing {key!r}", *pos)
        if rec["kind"] not in KINDS:
            raise ParseError(f"unknown record kind {rec['kind']!r}", *pos)
        name = str(rec["name"])
        if name in seen:
            raise ParseError(f"duplicate record name {name!r}", *pos)
        seen.add(name)
        rec["name"] = name
        doc.records.append(rec)
        doc.positions[name] = pos
    if resolve:
        doc.resolve_all()
    return doc


def render_document(doc: Document) -> str:
    if not doc.records:
        return ""
    return yaml.safe_dump(doc.records, sort_keys=False, default_flow_style=None, allow_unicode=True)


def load_document(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def bundled_text(filename: str = "fixtures.yaml") -> str:
    return resources.files("ampletwist").joinpath("data", filename).read_text(encoding="utf-8")


def bundled_document(filename: str = "fixtures.yaml") -> Document:
    return parse_document(bundled_text(filename))


# -- builders ------------------------------------------------------------------------------------


def _names_index(names, what):
    idx = {str(x): i for i, x in enumerate(names)}
    if len(idx) != len(names):
        raise ValidationError(f"{what} names are not distinct")
    return idx


def _lookup(idx, key, what):
    key = str(key)
    if key not in idx:
        raise ValidationError(f"unknown {what} {key!r}")
    return idx[key]


def _build_groupoid(doc, rec):
    if "group" in rec:
        g = rec["group"]
        names = [str(x) for x in g["elements"]]
        idx = _names_index(names, "group element")
        table = [[_lookup(idx, x, "group element") for x in row] for row in g["table"]]
        ident = next((i for i in range(len(names)) if all(table[i][j] == j for j in range(len(names)))), None)
        if ident is None:
            raise ValidationError("group table has no identity")
        return gpdkit.group_groupoid(table, ident, names)
    if "units_only" in rec:
        names = [str(x) for x in rec["units_only"]]
        return gpdkit.unit_groupoid(len(names), names)
    if "pair" in rec:
        return gpdkit.pair_groupoid(list(rec["pair"]))
    names = [str(x) for x in rec["arrows"]]
    idx = _names_index(names, "arrow")
    dom = [_lookup(idx, x, "arrow") for x in rec["dom"]]
    ran = [_lookup(idx, x, "arrow") for x in rec["ran"]]
    inv = [_lookup(idx, x, "arrow") for x in rec["inv"]]
    comp = [[None if x is None else _lookup(idx, x, "arrow") for x in row] for row in rec["compose"]]
    return gpdkit.validate_groupoid(names, dom, ran, comp, inv)


def _build_group(doc, rec):
    if "cyclic" in rec:
        return twistkit.FiniteAbelianGroup.cyclic(int(rec["cyclic"]), str(rec.get("generator", "a")))
    names = [str(x) for x in rec["elements"]]
    idx = _names_index(names, "group element")
    table = [[_lookup(idx, x, "group element") for x in row] for row in rec["table"]]
    return twistkit.FiniteAbelianGroup(names, table)


def _build_semigroup(doc, rec):
    """Returns the validated FiniteInverseSemigroup (for ``gamma_c`` records, the BisectionSemigroup)."""
    if "gamma_c" in rec:
        return gamma_c(doc.get(rec["gamma_c"], rec["name"]))
    names = [str(x) for x in rec["elements"]]
    idx = _names_index(names, "element")
    table = [[_lookup(idx, x, "element") for x in row] for row in rec["table"]]
    return iskit.validate_inverse_semigroup(table, names)


def _semigroup_of(obj):
    return getattr(obj, "semigroup", obj)


def _build_module(doc, rec):
    """``tilde: {groupoid, group}`` gives the tilde A module; returns (module, TildeA, BisectionSemigroup)."""
    if "tilde" in rec:
        G = doc.get(rec["tilde"]["groupoid"], rec["name"])
        A = doc.get(rec["tilde"]["group"], rec["name"])
        BS = gamma_c(G)
        M, TA = twistkit.module_tilde_A(BS, A)
        return ModuleRecord(M, TA, BS)
    if "extension" in rec:
        ext = doc.get(rec["extension"], rec["name"])
        return ModuleRecord(lausch.module_from_extension(ext), None, None)
    raise ValidationError("module record needs 'tilde' or 'extension'")


@dataclass
class ModuleRecord:
    module: lausch.LauschModule
    TA: object
    BS: object


def _build_cocycle(doc, rec):
    mr = doc.get(rec["module"], rec["name"])
    M = mr.module
    S, K = M.S, M.K
    sidx = _names_index(S.names, "semigroup element")
    kidx = _names_index(K.names, "module element")
    c = [list(row) for row in M.trivial_cocycle()]
    for s, t, k in rec.get("entries", []):
        c[_lookup(sidx, s, "semigroup element")][_lookup(sidx, t, "semigroup element")] = _lookup(kidx, k, "module element")
    c = tuple(tuple(r) for r in c)
    chk = lausch.validate_cocycle(M, c)
    if not chk.ok:
        raise ValidationError(f"not a 2-cocycle: {chk.violations[0]}")
    return c


def _build_groupoid_cocycle(doc, rec):
    G = doc.get(rec["groupoid"], rec["name"])
    A = doc.get(rec["group"], rec["name"])
    gidx = _names_index(G.names, "arrow")
    aidx = _names_index(A.names, "group element")
    table = [[A.identity] * G.n for _ in range(G.n)]
    for g, h, a in rec.get("entries", []):
        table[_lookup(gidx, g, "arrow")][_lookup(gidx, h, "arrow")] = _lookup(aidx, a, "group element")
    return GroupoidCocycle(G, A, tuple(tuple(r) for r in table))


@dataclass
class GroupoidCocycle:
    G: object
    A: object
    table: tuple


def _build_twist(doc, rec):
    if "cocycle" in rec:
        gc = doc.get(rec["cocycle"], rec["name"])
        return twistkit.twist_from_groupoid_cocycle(gc.G, gc.A, gc.table)
    A = doc.get(rec["group"], rec["name"])
    G = doc.get(rec["base"], rec["name"])
    Sig = doc.get(rec["total"], rec["name"])
    bundle = bundle_over_units(A, G)
    sidx = _names_index(Sig.names, "arrow")
    gidx = _names_index(G.names, "arrow")
    iota_in = rec["iota"]
    if len(iota_in) != bundle.n:
        raise ValidationError(f"iota needs {bundle.n} entries, in bundle order {list(bundle.names)}")
    iota = GroupoidFunctor(bundle, Sig, tuple(_lookup(sidx, x, "arrow") for x in iota_in))
    phi = GroupoidFunctor(Sig, G, tuple(_lookup(gidx, x, "arrow") for x in rec["phi"]))
    gpdkit.check_functor(iota)
    gpdkit.check_functor(phi)
    T = twistkit.TwistExtension(A, G, Sig, iota, phi)
    twistkit.validate_twist(T, require_central=bool(rec.get("central", True)))
    return T


def _build_crossed(doc, rec):
    from .crossed import build_action, build_crossed_product, cocycle_vectors, trivial_cocycle_vectors

    F = make_field(rec.get("field", 5))
    if "twist" in rec:
        T = doc.get(rec["twist"], rec["name"])
        tc = twistkit.twist_class_cocycle(T)
        act = build_action(tc.pipeline.S, F)
        emb = _embedding(F, T.A, rec.get("embedding"))
        return build_crossed_product(act, cocycle_vectors(act, tc.pipeline.TA, tc.cocycle, emb))
    G = doc.get(rec["groupoid"], rec["name"])
    act = build_action(G, F)
    return build_crossed_product(act, trivial_cocycle_vectors(act))


def _embedding(F, A, given):
    from .ringkit import units_and_embedding

    if given is None:
        emb = units_and_embedding(F, A)
        if emb is None:
            raise ValidationError(f"A of order {A.n} does not embed in the units of {F.label}")
        return emb
    emb = tuple(F.parse(str(x)) for x in given)
    if len(emb) != A.n or len(set(emb)) != A.n:
        raise ValidationError("embedding must list distinct field units, one per element of A")
    for a in range(A.n):
        for b in range(A.n):
            if F.mul(emb[a], emb[b]) != emb[A.mult[a][b]]:
                raise ValidationError("embedding is not a homomorphism", (a, b))
    return emb


def _build_steinberg(doc, rec):
    from .steinberg import build_steinberg

    F = make_field(rec.get("field", 5))
    T = doc.get(rec["twist"], rec["name"])
    return build_steinberg(T, F, _embedding(F, T.A, rec.get("embedding")))


def _build_extension(doc, rec):
    K = _semigroup_of(doc.get(rec["kernel"], rec["name"]))
    T = _semigroup_of(doc.get(rec["middle"], rec["name"]))
    S = _semigroup_of(doc.get(rec["quotient"], rec["name"]))
    tidx = _names_index(T.names, "element")
    sidx = _names_index(S.names, "element")
    iota = SemigroupHom(K, T, tuple(_lookup(tidx, x, "element") for x in rec["iota"]))
    phi = SemigroupHom(T, S, tuple(_lookup(sidx, x, "element") for x in rec["phi"]))
    iskit.check_hom(iota)
    iskit.check_hom(phi)
    return lausch.Extension(iota, phi)


_BUILDERS = {
    "groupoid": _build_groupoid,
    "abelian_group": _build_group,
    "semigroup": _build_semigroup,
    "module": _build_module,
    "cocycle": _build_cocycle,
    "groupoid_cocycle": _build_groupoid_cocycle,
    "twist": _build_twist,
    "crossed_product": _build_crossed,
    "steinberg": _build_steinberg,
    "extension": _build_extension,
}
