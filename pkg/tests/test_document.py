import pytest
from hypothesis import given, settings, strategies as st

from ampletwist import fixtures as fx
from ampletwist.document import (
    Document,
    ParseError,
    UnresolvedReference,
    bundled_document,
    bundled_text,
    parse_document,
    render_document,
)


def test_empty_document():
    assert parse_document("") == Document()
    assert render_document(Document()) == ""


def test_bundled_fixtures_match_python_fixtures():
    doc = bundled_document()
    for name in ("G1", "G2", "G3", "G4"):
        G, H = doc.get(name), getattr(fx, name)()
        assert (G.names, G.dom, G.ran, G.comp) == (H.names, H.dom, H.ran, H.comp)
    for name in ("TW1", "TW2"):
        T, U = doc.get(name), getattr(fx, name)()
        assert T.Sigma.comp == U.Sigma.comp and T.iota.map == U.iota.map and T.phi.map == U.phi.map
    nc, ref = doc.get("NC"), fx.noncentral_S3()
    assert nc.Sigma.comp == ref.Sigma.comp and nc.phi.map == ref.phi.map


def test_bundled_records_validate():
    doc = bundled_document()
    assert doc.get("CP_TW2_F5").algebra.mult == doc.get("ST_TW2_F5").algebra.mult
    assert doc.get("CP_G4_Q").dim == 4
    assert doc.get("E_TW2").T.n == 1 + 4  # empty set plus the singletons of a group


def test_round_trip_bundled():
    doc = bundled_document()
    assert parse_document(render_document(doc)) == doc


def test_dangling_reference():
    text = "- {kind: twist, name: T, cocycle: missing}\n"
    with pytest.raises(UnresolvedReference):
        parse_document(text)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as err:
        parse_document("- kind: groupoid\n  name: [unclosed\n")
    assert err.value.line is not None


def test_validation_error_is_positioned():
    text = (
        "- {kind: groupoid, name: ok, units_only: [x]}\n"
        "- kind: groupoid\n"
        "  name: bad\n"
        "  group: {elements: [e, g], table: [[e, g], [g, g]]}\n"
    )
    with pytest.raises(ParseError) as err:
        parse_document(text)
    assert err.value.line == 2


def test_unknown_kind_and_duplicates():
    with pytest.raises(ParseError):
        parse_document("- {kind: banana, name: x}\n")
    with pytest.raises(ParseError):
        parse_document("- {kind: abelian_group, name: x, cyclic: 2}\n- {kind: abelian_group, name: x, cyclic: 3}\n")


def test_bundled_text_is_yaml_list():
    assert bundled_text().lstrip().startswith("#")


names = st.from_regex(r"[A-Za-z][A-Za-z0-9_]{0,6}", fullmatch=True)


@st.composite
def documents(draw):
    recs = []
    used = set()
    for _ in range(draw(st.integers(0, 4))):
        n = draw(names.filter(lambda x: x not in used))
        used.add(n)
        kind = draw(st.sampled_from(["cyclic", "units", "pair"]))
        if kind == "cyclic":
            recs.append({"kind": "abelian_group", "name": n, "cyclic": draw(st.integers(1, 4))})
        elif kind == "units":
            k = draw(st.integers(1, 3))
            recs.append({"kind": "groupoid", "name": n, "units_only": [f"u{i}" for i in range(k)]})
        else:
            recs.append({"kind": "groupoid", "name": n, "pair": list(range(1, draw(st.integers(1, 3)) + 1))})
    return recs


@given(documents())
@settings(max_examples=40, deadline=None)
def test_parse_render_round_trip(recs):
    doc = Document(records=recs)
    again = parse_document(render_document(doc))
    assert again == doc
    assert parse_document(render_document(again)) == again
