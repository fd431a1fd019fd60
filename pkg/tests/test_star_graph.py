import pytest

from src.exceptions import InvalidSiteError
from src.operators.pauli_core import OperatorSum, commutator
from src.operators.star_graph import (
    AUX,
    OpKind,
    SiteId,
    StarLayout,
    next_leg,
    qubit_index,
    site_op,
    z_string,
)


class TestStarLayout:
    @pytest.mark.parametrize(
        "site, expected",
        [(AUX, 0), (SiteId(1, 1), 1), (SiteId(3, 2), 6)],
    )
    def test_qubit_index_with_aux(self, site, expected):
        assert qubit_index(StarLayout(2, with_aux=True), site) == expected

    @pytest.mark.parametrize("L, with_aux", [(1, False), (2, True), (4, False), (5, True)])
    def test_round_trip(self, L, with_aux):
        layout = StarLayout(L, with_aux=with_aux)
        assert layout.total_sites == 3 * L + int(with_aux)
        for q in range(layout.total_sites):
            assert layout.qubit_index(layout.site_of(q)) == q
        assert len(set(layout.sites())) == layout.total_sites

    def test_leg_major_order(self):
        layout = StarLayout(3)
        assert [layout.qubit_index(s) for s in layout.leg_sites(2)] == [3, 4, 5]

    @pytest.mark.parametrize(
        "site",
        [SiteId(0, 1), SiteId(4, 1), SiteId(1, 0), SiteId(1, 3), AUX],
    )
    def test_invalid_sites(self, site):
        with pytest.raises(InvalidSiteError):
            StarLayout(2).qubit_index(site)

    def test_invalid_leg_length(self):
        with pytest.raises(InvalidSiteError):
            StarLayout(0)

    def test_cyclic_legs(self):
        assert [next_leg(a) for a in (1, 2, 3)] == [2, 3, 1]


class TestSiteOperators:
    def test_z_on_first_leg(self):
        op = site_op(StarLayout(1), SiteId(1, 1), "z")
        assert op.terms == OperatorSum.from_label("ZII").terms

    def test_plus_minus_adjoint(self):
        layout = StarLayout(2, with_aux=True)
        for site in layout.sites():
            assert (site_op(layout, site, OpKind.PLUS).adjoint() - site_op(layout, site, OpKind.MINUS)).is_zero

    def test_projector(self):
        layout = StarLayout(1)
        s = SiteId(2, 1)
        product = site_op(layout, s, "plus") * site_op(layout, s, "minus")
        expected = (OperatorSum.identity(3) + site_op(layout, s, "z")).scale(0.5)
        assert (product - expected).is_zero

    def test_y_is_i_x_z(self):
        layout = StarLayout(1, with_aux=True)
        y = site_op(layout, AUX, "y")
        assert (y - (site_op(layout, AUX, "x") * site_op(layout, AUX, "z")).scale(1j)).is_zero

    def test_distinct_sites_commute(self):
        layout = StarLayout(1, with_aux=True)
        sites = layout.sites()
        for i, s in enumerate(sites):
            for t in sites[i + 1:]:
                for kind in OpKind:
                    for other in OpKind:
                        assert commutator(site_op(layout, s, kind), site_op(layout, t, other)).is_zero

    def test_empty_z_string_is_identity(self):
        layout = StarLayout(2)
        assert z_string(layout, []).terms == {(0, 0): 1}
