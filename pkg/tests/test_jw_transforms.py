import json

import pytest

from src.exceptions import InvalidSiteError, LayoutMismatchError
from src.models.jw_transforms import (
    FermionFamily,
    JWVariant,
    fermion_op,
    klein_eta,
    spiral_bilinear,
    spiral_quadraticity_probe,
    verify_car,
    verify_eta_relations,
)
from src.operators.pauli_core import OperatorSum
from src.operators.star_graph import AUX, SiteId, StarLayout, site_op, z_string


class TestFamilies:
    def test_aux_requirement(self):
        with pytest.raises(LayoutMismatchError):
            FermionFamily(JWVariant.KLEIN, StarLayout(1))
        with pytest.raises(LayoutMismatchError):
            FermionFamily(JWVariant.SPIRAL, StarLayout(1, with_aux=True))

    def test_klein_mode_expansion(self):
        c = fermion_op(FermionFamily.create("klein", 1), 1, 1)
        expected = OperatorSum.from_label("XXZZ", 0.5) + OperatorSum.from_label("XYZZ", -0.5j)
        assert (c - expected).is_zero

    def test_aux_mode_expansion(self):
        family = FermionFamily.create("aux", 1)
        layout = family.layout
        expected = site_op(layout, AUX, "y") * site_op(layout, SiteId(2, 1), "minus")
        assert (fermion_op(family, 2, 1) - expected).is_zero

    def test_spiral_index(self):
        family = FermionFamily.create("spiral", 2)
        layout = family.layout
        string = z_string(layout, [SiteId(1, 1), SiteId(2, 1), SiteId(3, 1)])
        expected = string * site_op(layout, SiteId(1, 2), "minus")
        assert (fermion_op(family, 4) - expected).is_zero
        assert (fermion_op(family, 1, 2) - expected).is_zero

    @pytest.mark.parametrize("variant", list(JWVariant))
    def test_two_strings_per_mode(self, variant):
        family = FermionFamily.create(variant, 2)
        for mode in family.modes():
            op = family.annihilator(mode)
            assert op.num_terms == 2
            assert all(abs(abs(c) - 0.5) < 1e-15 for _, c in op.items())

    def test_out_of_range(self):
        with pytest.raises(InvalidSiteError):
            fermion_op(FermionFamily.create("spiral", 1), 4)
        with pytest.raises(InvalidSiteError):
            fermion_op(FermionFamily.create("klein", 1), 1, 2)
        with pytest.raises(InvalidSiteError):
            fermion_op(FermionFamily.create("aux", 1), 1)

    @pytest.mark.parametrize("alpha, j", [(4, 1), (0, 2), (1, 3)])
    def test_spiral_rejects_bad_site(self, alpha, j):
        with pytest.raises(InvalidSiteError):
            fermion_op(FermionFamily.create("spiral", 2), alpha, j)

    def test_spiral_mode_order(self):
        modes = FermionFamily.create("spiral", 2).modes()
        assert [(m.leg, m.pos) for m in modes] == [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2)]


class TestKleinFactors:
    def test_eta_x_expansion(self):
        eta = klein_eta("x", StarLayout(1, with_aux=True))
        assert eta.terms == OperatorSum.from_label("XIZZ").terms

    def test_needs_aux(self):
        with pytest.raises(LayoutMismatchError):
            klein_eta("x", StarLayout(1))

    @pytest.mark.parametrize("L", [1, 2, 3])
    def test_single_string_squaring_to_identity(self, L):
        layout = StarLayout(L, with_aux=True)
        for a in "xyz":
            eta = klein_eta(a, layout)
            assert eta.num_terms == 1
            assert (eta * eta - OperatorSum.identity(layout.total_sites)).is_zero

    @pytest.mark.parametrize("L", [1, 2, 3, 4])
    def test_relations(self, L):
        report = verify_eta_relations(StarLayout(L, with_aux=True))
        assert report.ok
        for name in ("eta_hermitian", "eta_anticommutator", "eta_product", "eta_fermion_commutator"):
            assert report.relations[name].max_residual == 0.0

    def test_leg_strings(self):
        report = verify_eta_relations(StarLayout(2, with_aux=True))
        assert report.relations["eta_x_leg1_string_commutator"].passed
        assert report.relations["eta_x_leg2_string_anticommutator"].passed
        leg2 = report.relations["eta_x_leg2_string_commutator"]
        assert not leg2.passed and not leg2.expected
        assert leg2.max_residual == pytest.approx(1.0)


class TestAnticommutation:
    @pytest.mark.parametrize("variant", ["klein", "aux", "spiral"])
    @pytest.mark.parametrize("L", [1, 2, 3, 4])
    def test_fermionic_families(self, variant, L):
        report = verify_car(FermionFamily.create(variant, L))
        assert report.ok
        assert all(r.max_residual == 0.0 for r in report.relations.values())

    def test_naive_is_hardcore_bosons(self):
        report = verify_car(FermionFamily.create("naive", 1))
        assert report.ok
        cross = report.relations["anticommutator_c_c.cross_leg"]
        assert not cross.passed and not cross.expected
        assert cross.max_residual == pytest.approx(0.5)
        assert report.relations["commutator_c_c.cross_leg"].max_residual == 0.0
        assert report.relations["commutator_c_cdag.cross_leg"].max_residual == 0.0
        assert report.relations["anticommutator_c_cdag.same_leg"].max_residual == 0.0

    def test_report_json(self):
        report = verify_car(FermionFamily.create("klein", 1))
        doc = json.loads(report.to_json())
        assert doc["schema"] == 1
        assert doc["family"] == "klein"
        assert doc["relations"]["anticommutator_c_cdag.cross_leg"]["pass"] is True


class TestSpiralProbe:
    def test_bulk_term_needs_string(self):
        layout = StarLayout(2)
        hop = site_op(layout, SiteId(1, 1), "plus") * site_op(layout, SiteId(1, 2), "minus")
        assert (hop - spiral_bilinear(layout, 1, 4)).max_abs_coeff() > 0.1
        assert (hop + spiral_bilinear(layout, 1, 4, with_string=True)).is_zero

    def test_vertex_bonds(self):
        layout = StarLayout(2)
        hop = site_op(layout, SiteId(1, 1), "plus") * site_op(layout, SiteId(2, 1), "minus")
        assert (hop + spiral_bilinear(layout, 1, 2)).is_zero

    @pytest.mark.parametrize("L", [2, 3])
    def test_probe_report(self, L):
        report = spiral_quadraticity_probe(StarLayout(L))
        assert report.ok
        assert report.relations["vertex[1-2].plain"].passed
        assert report.relations["vertex[2-3].plain"].passed
        assert not report.relations["vertex[3-1].plain"].passed
        for leg in (1, 2, 3):
            for j in range(1, L):
                assert report.relations[f"bulk[leg={leg},j={j}].plain"].max_residual == pytest.approx(0.25)
        for name, result in report.relations.items():
            if name.endswith(".with_string"):
                assert result.max_residual == 0.0
                assert result.sign == -1

    def test_probe_needs_bulk(self):
        with pytest.raises(LayoutMismatchError):
            spiral_quadraticity_probe(StarLayout(1))
