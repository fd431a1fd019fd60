"""
Hamiltonians on the three-leg star graph

Spin side (built from single-site factories):
    build_xx_spin        XX hopping with vertex coupling rho
    build_qf_spin        spin chain with three-spin vertex terms

Fermion side (built by composing Jordan-Wigner families):
    build_kondo_fermionic  Klein-fermion Kondo form
    build_kondo_compact    the same with the spin-1 generators (real rho)
    build_qf_fermionic     quadratic fermionic Hamiltonian with pairing

The spin/fermion identities are checked with operator_equal, never assumed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple, Union

import numpy as np

from src.exceptions import LayoutMismatchError, NonHermitianError
from src.models.jw_transforms import FermionFamily, JWVariant, fermion_op, klein_eta
from src.operators.pauli_core import PRUNE_EPS, OperatorSum, commutator
from src.operators.star_graph import (
    AUX,
    LEGS,
    SiteId,
    StarLayout,
    next_leg,
    site_op,
)

logger = logging.getLogger(__name__)

# vertex bond alpha -> (alpha + 1) carries eta^a / sigma^a(0) with epsilon_{a, alpha, alpha+1} = 1
VERTEX_AUX = {1: "z", 2: "x", 3: "y"}

Couplings = Tuple[complex, complex, complex]


@dataclass(frozen=True)
class XXParams:
    L: int
    rho: complex = 1.0

    def __post_init__(self):
        StarLayout(self.L)


@dataclass(frozen=True)
class QFParams:
    L: int
    gamma: float = 0.0
    a: Couplings = (0.0, 0.0, 0.0)
    b: Couplings = (0.0, 0.0, 0.0)

    def __post_init__(self):
        StarLayout(self.L)
        for name in ("a", "b"):
            values = tuple(complex(v) for v in getattr(self, name))
            if len(values) != LEGS:
                raise ValueError(f"{name} needs one coupling per leg, got {len(values)}")
            object.__setattr__(self, name, values)

    @classmethod
    def uniform(cls, L: int, a: float, gamma: float = 0.0, b: complex = 0.0) -> "QFParams":
        return cls(L, gamma, (a, a, a), (b, b, b))

    @property
    def is_particle_conserving(self) -> bool:
        return self.gamma == 0 and all(v == 0 for v in self.b)


@dataclass(frozen=True)
class Spin1Generators:
    """su(2) generators in the 3-dimensional representation, (S^a)_{bc} = -i eps_{abc}."""

    sx: np.ndarray = field(repr=False)
    sy: np.ndarray = field(repr=False)
    sz: np.ndarray = field(repr=False)

    def __getitem__(self, a: str) -> np.ndarray:
        return {"x": self.sx, "y": self.sy, "z": self.sz}[a]

    def check(self) -> float:
        """Largest deviation from [S^a, S^b] = i S^c, Hermiticity and spectrum {-1, 0, 1}."""
        residual = 0.0
        for a, b, c in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")):
            sa, sb, sc = self[a], self[b], self[c]
            residual = max(residual, np.abs(sa @ sb - sb @ sa - 1j * sc).max())
        for a in "xyz":
            s = self[a]
            residual = max(residual, np.abs(s - s.conj().T).max())
            residual = max(residual, np.abs(np.linalg.eigvalsh(s) - [-1.0, 0.0, 1.0]).max())
        return float(residual)


def spin1_generators() -> Spin1Generators:
    mats = []
    for a in range(3):
        s = np.zeros((3, 3), dtype=complex)
        b, c = (a + 1) % 3, (a + 2) % 3
        s[b, c] = -1j
        s[c, b] = 1j
        mats.append(s)
    return Spin1Generators(*mats)


@dataclass(frozen=True)
class OperatorComparison:
    equal: bool
    max_residual: float


def operator_equal(A: OperatorSum, B: OperatorSum, tol: float = PRUNE_EPS) -> OperatorComparison:
    diff = A - B
    return OperatorComparison(diff.prune(tol).is_zero, diff.max_abs_coeff())


def kondo_channel_count(j: Union[int, float, str, Fraction]) -> int:
    """Number of channels 2j(j+1)(2j+1)/3 of the equivalent Kondo model."""
    n = 2 * Fraction(j)
    if n.denominator != 1 or n <= 0:
        raise ValueError(f"j must be a positive half-integer, got {j!r}")
    n = int(n)
    return n * (n + 1) * (n + 2) // 6


def total_magnetization(layout: StarLayout, include_aux: bool = True) -> OperatorSum:
    total = OperatorSum.zero(layout.total_sites)
    for site in layout.sites():
        if site.is_aux and not include_aux:
            continue
        total = total + site_op(layout, site, "z")
    return total


# Spin side

def _bulk_bonds(L: int):
    for leg in range(1, LEGS + 1):
        for j in range(1, L):
            yield SiteId(leg, j), SiteId(leg, j + 1)


def _hop(layout: StarLayout, src: SiteId, dst: SiteId) -> OperatorSum:
    return site_op(layout, src, "plus") * site_op(layout, dst, "minus")


def _pair(layout: StarLayout, src: SiteId, dst: SiteId) -> OperatorSum:
    return site_op(layout, src, "minus") * site_op(layout, dst, "minus")


def _with_hc(T: OperatorSum) -> OperatorSum:
    return T + T.adjoint()


def build_xx_spin(p: XXParams, with_aux: bool = False) -> OperatorSum:
    layout = StarLayout(p.L, with_aux=with_aux)
    T = OperatorSum.zero(layout.total_sites)
    for src, dst in _bulk_bonds(p.L):
        T = T + _hop(layout, src, dst)
    for leg in range(1, LEGS + 1):
        T = T + _hop(layout, SiteId(leg, 1), SiteId(next_leg(leg), 1)).scale(p.rho)
    return _with_hc(T)


def build_qf_spin(p: QFParams) -> OperatorSum:
    layout = StarLayout(p.L, with_aux=True)
    T = OperatorSum.zero(layout.total_sites)
    for src, dst in _bulk_bonds(p.L):
        T = T - _hop(layout, src, dst) - _pair(layout, src, dst).scale(p.gamma)

    H_V = OperatorSum.zero(layout.total_sites)
    for leg in range(1, LEGS + 1):
        src, dst = SiteId(leg, 1), SiteId(next_leg(leg), 1)
        bond = _hop(layout, src, dst).scale(p.a[leg - 1]) + _pair(layout, src, dst).scale(p.b[leg - 1])
        H_V = H_V + site_op(layout, AUX, VERTEX_AUX[leg]) * bond

    # h.c. is taken term by term, aux factors included
    return _with_hc(T - H_V)


# Fermion side

def _kondo_bulk(family: FermionFamily, L: int) -> OperatorSum:
    T = OperatorSum.zero(family.layout.total_sites)
    for src, dst in _bulk_bonds(L):
        cd = fermion_op(family, src.leg, src.pos, dagger=True)
        T = T - cd * fermion_op(family, dst.leg, dst.pos)
    return T


def build_kondo_fermionic(p: XXParams) -> OperatorSum:
    family = FermionFamily.create(JWVariant.KLEIN, p.L)
    layout = family.layout
    T = _kondo_bulk(family, p.L)
    for leg in range(1, LEGS + 1):
        eta = klein_eta(VERTEX_AUX[leg], layout)
        cd = fermion_op(family, leg, 1, dagger=True)
        c = fermion_op(family, next_leg(leg), 1)
        T = T + (eta * cd * c).scale(1j * p.rho)
    return _with_hc(T)


def build_kondo_compact(p: XXParams) -> OperatorSum:
    """-sum c^dag c + h.c. - rho * sum_a eta^a c(1)^dag S^a c(1); rho must be real."""
    if complex(p.rho).imag != 0:
        raise NonHermitianError(f"the spin-1 form needs a real rho, got {p.rho!r}")
    rho = complex(p.rho).real

    family = FermionFamily.create(JWVariant.KLEIN, p.L)
    layout = family.layout
    S = spin1_generators()

    vertex = OperatorSum.zero(layout.total_sites)
    for a in "xyz":
        eta = klein_eta(a, layout)
        for alpha in range(1, LEGS + 1):
            for beta in range(1, LEGS + 1):
                entry = S[a][alpha - 1, beta - 1]
                if entry == 0:
                    continue
                cd = fermion_op(family, alpha, 1, dagger=True)
                c = fermion_op(family, beta, 1)
                vertex = vertex + (eta * cd * c).scale(entry)

    return _with_hc(_kondo_bulk(family, p.L)) - vertex.scale(rho)


def build_qf_fermionic(p: QFParams, variant: Union[JWVariant, str] = JWVariant.AUX) -> OperatorSum:
    """
    Substitute a fermion family into the quadratic Hamiltonian

        sum (d^dag d - gamma d d) + i sum_alpha (a d^dag_alpha d_{alpha+1} + b d_alpha d_{alpha+1}) + h.c.

    The aux family lives on 3L+1 qubits; the spiral family gives the same
    fermionic operator on 3L qubits.
    """
    variant = JWVariant(variant)
    if variant is JWVariant.NAIVE:
        raise LayoutMismatchError("the naive family is not fermionic across legs")
    family = FermionFamily.create(variant, p.L)

    def d(site: SiteId, dagger: bool = False) -> OperatorSum:
        return fermion_op(family, site.leg, site.pos, dagger=dagger)

    T = OperatorSum.zero(family.layout.total_sites)
    for src, dst in _bulk_bonds(p.L):
        T = T + d(src, True) * d(dst) - (d(src) * d(dst)).scale(p.gamma)
    for leg in range(1, LEGS + 1):
        src, dst = SiteId(leg, 1), SiteId(next_leg(leg), 1)
        T = T + (d(src, True) * d(dst)).scale(1j * p.a[leg - 1])
        T = T + (d(src) * d(dst)).scale(1j * p.b[leg - 1])

    H = _with_hc(T)
    logger.debug("QF fermionic Hamiltonian (%s, L=%d): %d terms", variant.value, p.L, H.num_terms)
    return H


def magnetization_defect(H: OperatorSum, layout: StarLayout, include_aux: bool = True) -> float:
    return commutator(H, total_magnetization(layout, include_aux)).max_abs_coeff()
