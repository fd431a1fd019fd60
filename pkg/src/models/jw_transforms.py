"""
Jordan-Wigner fermion families on the three-leg star graph

Four candidate families are built as OperatorSums:

* ``klein``  - leg-wise JW strings dressed with the Klein factors eta^a,
               which combine sigma^a on the auxiliary site with the full
               Z-strings of the two other legs (needs the auxiliary site);
* ``aux``    - leg-wise JW strings dressed with sigma^x(0), sigma^y(0),
               sigma^z(0) for legs 1, 2, 3 (needs the auxiliary site);
* ``naive``  - leg-wise JW strings with no prefactor (hardcore bosons
               across legs);
* ``spiral`` - a single JW string that winds through the legs,
               c_{3(j-1)+alpha} with spiral order (1,1), (2,1), (3,1), (1,2), ...

Relation checks never raise on failure: they return an AlgebraReport.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from src.exceptions import InvalidSiteError, LayoutMismatchError
from src.operators.pauli_core import (
    PRUNE_EPS,
    OperatorSum,
    anticommutator,
    commutator,
)
from src.operators.star_graph import (
    AUX,
    LEGS,
    SiteId,
    StarLayout,
    next_leg,
    site_op,
    z_string,
)

logger = logging.getLogger(__name__)

REPORT_SCHEMA = 1

# eta^a carries the Z-strings of the two legs other than ``_ETA_OWN_LEG[a]``
_ETA_OWN_LEG = {"x": 1, "y": 2, "z": 3}
# prefactor attached to the modes of each leg
LEG_PREFACTOR = {1: "x", 2: "y", 3: "z"}


class JWVariant(str, Enum):
    KLEIN = "klein"
    AUX = "aux"
    NAIVE = "naive"
    SPIRAL = "spiral"

    @property
    def needs_aux(self) -> bool:
        return self in (JWVariant.KLEIN, JWVariant.AUX)


class Mode(NamedTuple):
    leg: int
    pos: int


@dataclass(frozen=True)
class FermionFamily:
    variant: JWVariant
    layout: StarLayout

    def __post_init__(self):
        variant = JWVariant(self.variant)
        object.__setattr__(self, "variant", variant)
        if variant.needs_aux != self.layout.with_aux:
            need = "requires" if variant.needs_aux else "must not have"
            raise LayoutMismatchError(f"the {variant.value} family {need} an auxiliary site")

    @classmethod
    def create(cls, variant: Union[JWVariant, str], leg_length: int) -> "FermionFamily":
        variant = JWVariant(variant)
        return cls(variant, StarLayout(leg_length, with_aux=variant.needs_aux))

    @property
    def name(self) -> str:
        return self.variant.value

    def modes(self) -> List[Mode]:
        """Report order: spiral index ascending for the spiral family, else leg-major."""
        L = self.layout.leg_length
        if self.variant is JWVariant.SPIRAL:
            return [Mode(leg, j) for j in range(1, L + 1) for leg in range(1, LEGS + 1)]
        return [Mode(leg, j) for leg in range(1, LEGS + 1) for j in range(1, L + 1)]

    def annihilator(self, mode: Mode) -> OperatorSum:
        return fermion_op(self, mode.leg, mode.pos)

    def creator(self, mode: Mode) -> OperatorSum:
        return fermion_op(self, mode.leg, mode.pos, dagger=True)


class RelationResult(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    max_residual: float
    passed: bool = Field(alias="pass")
    expected: bool = True
    sign: Optional[int] = None

    @property
    def as_expected(self) -> bool:
        return self.passed == self.expected


class AlgebraReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(REPORT_SCHEMA, alias="schema")
    family: str
    leg_length: int
    tolerance: float = PRUNE_EPS
    relations: Dict[str, RelationResult] = Field(default_factory=dict)

    def record(self, name: str, residual: float, expected: bool = True, sign: Optional[int] = None) -> None:
        previous = self.relations.get(name)
        if previous is not None:
            residual = max(residual, previous.max_residual)
        self.relations[name] = RelationResult(
            max_residual=residual,
            passed=residual <= self.tolerance,
            expected=expected,
            sign=sign,
        )

    @property
    def ok(self) -> bool:
        return all(r.as_expected for r in self.relations.values())

    def failures(self) -> List[str]:
        return [name for name, r in self.relations.items() if not r.as_expected]

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)


# Operator construction

def _require_aux(layout: StarLayout) -> None:
    if not layout.with_aux:
        raise LayoutMismatchError("Klein factors need the auxiliary site 0")


def jw_tail(layout: StarLayout, leg: int, j: int) -> OperatorSum:
    """prod_{k<j} sigma^z_leg(k) sigma^-_leg(j), the leg-wise JW string."""
    string = z_string(layout, [SiteId(leg, k) for k in range(1, j)])
    return string * site_op(layout, SiteId(leg, j), "minus")


def klein_eta(a: str, layout: StarLayout) -> OperatorSum:
    _require_aux(layout)
    if a not in _ETA_OWN_LEG:
        raise ValueError(f"eta component must be one of x, y, z, got {a!r}")
    own = _ETA_OWN_LEG[a]
    others = [s for leg in range(1, LEGS + 1) if leg != own for s in layout.leg_sites(leg)]
    return site_op(layout, AUX, a) * z_string(layout, others)


def spiral_index(leg: int, j: int) -> int:
    return LEGS * (j - 1) + leg


def spiral_site(index: int) -> SiteId:
    j, leg = divmod(index - 1, LEGS)
    return SiteId(leg + 1, j + 1)


def fermion_op(
    family: FermionFamily,
    alpha: int,
    j: Optional[int] = None,
    dagger: bool = False,
) -> OperatorSum:
    """
    Mode operator c_alpha(j) of ``family`` (or its adjoint).

    For the spiral family ``j`` may be omitted, in which case ``alpha`` is
    the spiral index 1..3L.
    """
    layout = family.layout
    L = layout.leg_length

    if family.variant is JWVariant.SPIRAL:
        if j is None:
            index = alpha
        else:
            layout.validate(SiteId(alpha, j))
            index = spiral_index(alpha, j)
        if not 1 <= index <= LEGS * L:
            raise InvalidSiteError(f"spiral index must lie in 1..{LEGS * L}, got {index}")
        site = spiral_site(index)
        layout.validate(site)
        before = [spiral_site(k) for k in range(1, index)]
        op = z_string(layout, before) * site_op(layout, site, "minus")
    else:
        if j is None:
            raise InvalidSiteError("position j is required outside the spiral family")
        layout.validate(SiteId(alpha, j))
        op = jw_tail(layout, alpha, j)
        if family.variant is JWVariant.KLEIN:
            op = klein_eta(LEG_PREFACTOR[alpha], layout) * op
        elif family.variant is JWVariant.AUX:
            op = site_op(layout, AUX, LEG_PREFACTOR[alpha]) * op

    return op.adjoint() if dagger else op


# Relation checks

def _defect(op: OperatorSum) -> float:
    return op.max_abs_coeff()


def verify_car(family: FermionFamily, tol: float = PRUNE_EPS) -> AlgebraReport:
    """
    Canonical anticommutation relations over every mode pair, split into
    same-leg and cross-leg classes. The naive family is expected to fail
    the cross-leg classes and is additionally checked for cross-leg
    commutation (hardcore bosons).
    """
    layout = family.layout
    report = AlgebraReport(family=family.name, leg_length=layout.leg_length, tolerance=tol)
    naive = family.variant is JWVariant.NAIVE

    modes = family.modes()
    ann = [family.annihilator(m) for m in modes]
    cre = [c.adjoint() for c in ann]
    identity = OperatorSum.identity(layout.total_sites)

    for scope in ("same_leg", "cross_leg"):
        expected = not (naive and scope == "cross_leg")
        for name in ("c_c", "cdag_cdag", "c_cdag"):
            report.record(f"anticommutator_{name}.{scope}", 0.0, expected=expected)
    if naive:
        report.record("commutator_c_c.cross_leg", 0.0)
        report.record("commutator_c_cdag.cross_leg", 0.0)

    for i, mi in enumerate(modes):
        for k in range(i, len(modes)):
            mk = modes[k]
            scope = "same_leg" if mi.leg == mk.leg else "cross_leg"
            expected = not (naive and scope == "cross_leg")
            delta = identity if i == k else identity.scale(0)

            report.record(f"anticommutator_c_c.{scope}", _defect(anticommutator(ann[i], ann[k])), expected)
            report.record(f"anticommutator_cdag_cdag.{scope}", _defect(anticommutator(cre[i], cre[k])), expected)
            report.record(f"anticommutator_c_cdag.{scope}", _defect(anticommutator(ann[i], cre[k]) - delta), expected)
            if naive and scope == "cross_leg":
                report.record("commutator_c_c.cross_leg", _defect(commutator(ann[i], ann[k])))
                report.record("commutator_c_cdag.cross_leg", _defect(commutator(ann[i], cre[k])))

    logger.info("CAR check for %s family at L=%d: ok=%s", family.name, layout.leg_length, report.ok)
    return report


def verify_eta_relations(layout: StarLayout, tol: float = PRUNE_EPS) -> AlgebraReport:
    """Pauli algebra of the Klein factors and their commutation with the Klein fermions."""
    _require_aux(layout)
    report = AlgebraReport(family="eta", leg_length=layout.leg_length, tolerance=tol)
    n = layout.total_sites
    identity = OperatorSum.identity(n)
    eta = {a: klein_eta(a, layout) for a in "xyz"}

    report.record("eta_hermitian", max(_defect(e - e.adjoint()) for e in eta.values()))

    residual = 0.0
    for a in "xyz":
        for b in "xyz":
            target = identity.scale(2) if a == b else OperatorSum.zero(n)
            residual = max(residual, _defect(anticommutator(eta[a], eta[b]) - target))
    report.record("eta_anticommutator", residual)

    residual = max(
        _defect(eta[a] * eta[b] - eta[c].scale(1j))
        for a, b, c in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y"))
    )
    report.record("eta_product", residual)

    family = FermionFamily(JWVariant.KLEIN, layout)
    residual = 0.0
    for mode in family.modes():
        c = family.annihilator(mode)
        for e in eta.values():
            residual = max(residual, _defect(commutator(e, c)), _defect(commutator(e, c.adjoint())))
    report.record("eta_fermion_commutator", residual)

    leg1 = leg2_anti = leg2_comm = 0.0
    for j in range(1, layout.leg_length + 1):
        tail1 = jw_tail(layout, 1, j)
        tail2 = jw_tail(layout, 2, j)
        leg1 = max(leg1, _defect(commutator(eta["x"], tail1)))
        leg2_anti = max(leg2_anti, _defect(anticommutator(eta["x"], tail2)))
        leg2_comm = max(leg2_comm, _defect(commutator(eta["x"], tail2)))
    report.record("eta_x_leg1_string_commutator", leg1)
    report.record("eta_x_leg2_string_anticommutator", leg2_anti)
    report.record("eta_x_leg2_string_commutator", leg2_comm, expected=False)

    logger.info("eta relations at L=%d: ok=%s", layout.leg_length, report.ok)
    return report


def spiral_bilinear(layout: StarLayout, m: int, n: int, with_string: bool = False) -> OperatorSum:
    """c_m^dagger (prod of sigma^z strictly between m and n) c_n in spiral indices."""
    family = FermionFamily(JWVariant.SPIRAL, layout)
    middle = OperatorSum.identity(layout.total_sites)
    if with_string:
        lo, hi = sorted((m, n))
        middle = z_string(layout, [spiral_site(k) for k in range(lo + 1, hi)])
    return fermion_op(family, m, dagger=True) * middle * fermion_op(family, n)


def _best_sign(target: OperatorSum, candidate: OperatorSum):
    plus = _defect(target - candidate)
    minus = _defect(target + candidate)
    return (1, plus) if plus <= minus else (-1, minus)


def spiral_quadraticity_probe(layout: StarLayout, tol: float = PRUNE_EPS) -> AlgebraReport:
    """
    Compare every hopping bond sigma^+ sigma^- of the star with spiral bilinears,
    once plain and once with the spiral Z-string between the two modes.
    A bond is quadratic only when its two sites are neighbours in spiral order.
    """
    if layout.with_aux:
        raise LayoutMismatchError("the spiral family lives on the layout without auxiliary site")
    if layout.leg_length < 2:
        raise LayoutMismatchError("the spiral probe needs L >= 2 to have bulk bonds")

    report = AlgebraReport(family="spiral_probe", leg_length=layout.leg_length, tolerance=tol)

    bonds = []
    for leg in range(1, LEGS + 1):
        bonds.append((f"vertex[{leg}-{next_leg(leg)}]", SiteId(leg, 1), SiteId(next_leg(leg), 1)))
    for leg in range(1, LEGS + 1):
        for j in range(1, layout.leg_length):
            bonds.append((f"bulk[leg={leg},j={j}]", SiteId(leg, j), SiteId(leg, j + 1)))

    for label, src, dst in bonds:
        hop = site_op(layout, src, "plus") * site_op(layout, dst, "minus")
        m, n = spiral_index(src.leg, src.pos), spiral_index(dst.leg, dst.pos)
        adjacent = abs(m - n) == 1

        sign, residual = _best_sign(hop, spiral_bilinear(layout, m, n))
        report.record(f"{label}.plain", residual, expected=adjacent, sign=sign)
        sign, residual = _best_sign(hop, spiral_bilinear(layout, m, n, with_string=True))
        report.record(f"{label}.with_string", residual, sign=sign)

    logger.info("spiral probe at L=%d: ok=%s", layout.leg_length, report.ok)
    return report
