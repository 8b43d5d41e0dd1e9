import pytest

from ampletwist import fixtures as fx
from ampletwist.duality import (
    epsilon,
    eta,
    gamma_c,
    gamma_c_on_functor,
    germ_groupoid,
    max_idempotent_below,
    oip_section_iff_unit_section,
    transfer_to_semigroups,
)
from ampletwist.errors import SizeLimitExceeded
from ampletwist.iskit import check_hom


def test_gamma_c_sizes():
    # frozen from subset enumeration (see test_gpdkit.test_bisections_brute_force)
    assert [gamma_c(G).n for G in fx.groupoids().values()] == [2, 3, 4, 7]


def test_gamma_c_g2_table():
    BS = gamma_c(fx.G2())
    S = BS.semigroup
    assert S.names == ("{}", "{e}", "{g}")
    g = S.index("{g}")
    assert S.names[S.mult[g][g]] == "{e}"


def test_gamma_c_cap():
    with pytest.raises(SizeLimitExceeded):
        gamma_c(fx.G4(), cap=3)


def test_germ_of_s1_is_g2():
    GG = germ_groupoid(gamma_c(fx.G2()).boolean)
    assert GG.groupoid.n == 2 and len(GG.groupoid.units) == 1


@pytest.mark.parametrize("name", ["G1", "G2", "G3", "G4"])
def test_eta_epsilon_isos(name):
    G = fx.groupoids()[name]
    BS = gamma_c(G)
    e = eta(G, BS)
    assert sorted(e.map) == list(range(G.n))
    h = epsilon(BS.boolean)
    f = check_hom(h)
    assert f.injective and f.surjective


def test_collapse_image():
    F = fx.collapse_G2_G1()
    h = gamma_c_on_functor(F, gamma_c(F.source), gamma_c(F.target))
    S, T = h.source, h.target
    assert T.names[h.map[S.index("{g}")]] == "{x}"


def test_unit_part_is_max_idempotent_below():
    BS = gamma_c(fx.G4())
    for s in range(BS.n):
        assert max_idempotent_below(BS.semigroup, s) == BS.unit_part(s)


def test_tw1_extension_transfer():
    T = fx.TW1()
    tr = transfer_to_semigroups(T.iota, T.phi)
    assert tr.report.ok and tr.report.abelian


def test_section_equivalence_fixtures():
    assert oip_section_iff_unit_section(fx.TW1().phi)
    assert oip_section_iff_unit_section(fx.TW2().phi)


@pytest.mark.parametrize("G", [fx.G1(), fx.G2(), fx.G3(), fx.G4(), fx.TW1().Sigma, fx.TW2().Sigma])
def test_hausdorff_criterion(G):
    BS = gamma_c(G)
    for s in range(BS.n):
        e = max_idempotent_below(BS.semigroup, s)
        assert e is not None
        assert BS.label(e) == BS.label(s) & set(G.units)


def test_stone_spec_points():
    from ampletwist.duality import stone_spec

    assert len(stone_spec(gamma_c(fx.G1()).boolean).points) == 1
    assert len(stone_spec(gamma_c(fx.G4()).boolean).points) == 2
