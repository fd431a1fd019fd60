"""
Free-fermion solution of the quadratic star-graph Hamiltonian

With uniform vertex hopping a and no pairing the single-particle matrix A
decouples into three chains with end potential mu in {0, +a*sqrt(3), -a*sqrt(3)};
their eigenvalues lambda = 2 cos(theta) solve

    U_L(lambda / 2) + s U_{L-1}(lambda / 2) = 0,    s in {+a*sqrt(3), -a*sqrt(3), 0}.

The general case (gamma, b != 0) goes through the Bogoliubov-de Gennes doubling.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy.optimize import brentq
from scipy.special import eval_chebyu

from src.exceptions import SizeGuardError, SolverError
from src.models.hamiltonians import QFParams
from src.operators.star_graph import LEGS, next_leg
from src.solvers.exact_diag import Spectrum, eig_hermitian

logger = logging.getLogger(__name__)

SQRT3 = np.sqrt(3.0)
MAX_MODES = 12
GRID_PER_ROOT = 16
THRESHOLD_TOL = 1e-12


class RootFamily(str, Enum):
    PLUS = "plus"
    MINUS = "minus"
    CHEBYSHEV = "chebyshev"


@dataclass(frozen=True)
class HoppingMatrix:
    L: int
    a: float
    matrix: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return eig_hermitian(self.matrix).eigenvalues


def mode_index(leg: int, j: int, L: int) -> int:
    """0-based position of d_leg(j) after renumbering d_alpha(j) -> d_{(alpha-1)L+j}."""
    return (leg - 1) * L + (j - 1)


def build_A(L: int, a: float) -> HoppingMatrix:
    if L < 1:
        raise ValueError(f"L must be positive, got {L}")
    a = float(a)
    A = np.zeros((LEGS * L, LEGS * L), dtype=complex)
    for leg in range(1, LEGS + 1):
        for j in range(1, L):
            i = mode_index(leg, j, L)
            A[i, i + 1] = A[i + 1, i] = 1.0
        i, k = mode_index(leg, 1, L), mode_index(next_leg(leg), 1, L)
        A[i, k] = 1j * a
        A[k, i] = -1j * a
    return HoppingMatrix(L, a, A)


def chebyshev_U(n: int, x):
    """Chebyshev polynomial of the second kind; U_{-1} = 0 is accepted."""
    if n < -1:
        raise ValueError(f"order must be >= -1, got {n}")
    if n == -1:
        return np.zeros_like(np.asarray(x, dtype=float))[()]
    return eval_chebyu(n, x)


def family_coupling(family: RootFamily, a: float) -> float:
    return {RootFamily.PLUS: a * SQRT3, RootFamily.MINUS: -a * SQRT3, RootFamily.CHEBYSHEV: 0.0}[family]


def secular_value(L: int, s: float, lam) -> np.ndarray:
    x = np.asarray(lam, dtype=float) / 2
    return chebyshev_U(L, x) + s * chebyshev_U(L - 1, x)


def secular_residual(L: int, s: float, lam) -> np.ndarray:
    x = np.asarray(lam, dtype=float) / 2
    uL, uL1 = chebyshev_U(L, x), chebyshev_U(L - 1, x)
    return np.abs(uL + s * uL1) / (np.abs(uL) + np.abs(s * uL1) + np.abs(uL1))


@dataclass(frozen=True)
class ModeSpectrum:
    """Single-particle eigenvalues of A, ascending, each tagged with its secular family."""

    L: int
    a: float
    lambdas: np.ndarray
    families: Tuple[RootFamily, ...]
    residuals: np.ndarray

    @property
    def out_of_band(self) -> np.ndarray:
        return np.abs(self.lambdas) > 2.0

    def by_family(self, family: Union[RootFamily, str]) -> np.ndarray:
        family = RootFamily(family)
        mask = np.array([f is family for f in self.families], dtype=bool)
        return self.lambdas[mask]

    def count_out_of_band(self, family: Union[RootFamily, str]) -> int:
        return int((np.abs(self.by_family(family)) > 2.0).sum())

    def symmetry_deviation(self) -> float:
        if not len(self.lambdas):
            return 0.0
        return float(np.abs(self.lambdas + self.lambdas[::-1]).max())

    def superposition_gap(self) -> float:
        """Largest distance from an in-band +/- root to the nearest chebyshev-family root."""
        reference = self.by_family(RootFamily.CHEBYSHEV)
        gap = 0.0
        for family in (RootFamily.PLUS, RootFamily.MINUS):
            roots = self.by_family(family)
            roots = roots[np.abs(roots) <= 2.0]
            if len(roots):
                gap = max(gap, float(np.abs(roots[:, None] - reference[None, :]).min(axis=1).max()))
        return gap

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for family in RootFamily:
            for k, lam in enumerate(self.by_family(family), start=1):
                rows.append({"family": family.value, "k": k, "lambda": float(lam)})
        return pd.DataFrame(rows, columns=["family", "k", "lambda"])


def _reduced(L: int, s: float, theta: float) -> float:
    """(sin((L+1)theta) + s sin(L theta)) / sin(theta), continued to the endpoints."""
    if theta <= 0.0:
        return (L + 1) + s * L
    if theta >= np.pi:
        return (-1) ** L * ((L + 1) - s * L)
    return (np.sin((L + 1) * theta) + s * np.sin(L * theta)) / np.sin(theta)


def _in_band_roots(L: int, s: float) -> list:
    grid = np.linspace(0.0, np.pi, GRID_PER_ROOT * (L + 1) + 1)
    values = [_reduced(L, s, t) for t in grid]
    roots = []
    for i in range(len(grid) - 1):
        lo, hi = values[i], values[i + 1]
        if lo == 0.0 and i > 0:
            roots.append(grid[i])
        elif lo * hi < 0:
            roots.append(brentq(lambda t: _reduced(L, s, t), grid[i], grid[i + 1], xtol=1e-15))
    return [2.0 * np.cos(t) for t in roots]


def _edge_ratio(t: float, L: int) -> float:
    # sinh((L+1)t) / sinh(Lt) without overflow
    return np.cosh(t) + np.sinh(t) / np.tanh(L * t)


def _out_of_band_roots(L: int, s: float) -> list:
    threshold = (L + 1) / L
    found = []
    for side in (1, -1):
        target = -s * side
        if abs(target - threshold) <= THRESHOLD_TOL:
            found.append(2.0 * side)
        elif target > threshold:
            t = brentq(lambda t: _edge_ratio(t, L) - target, 1e-14, np.log(target) + 1.0, xtol=1e-15)
            found.append(side * 2.0 * np.cosh(t))
    return found


def family_roots(L: int, a: float, family: Union[RootFamily, str]) -> np.ndarray:
    family = RootFamily(family)
    if family is RootFamily.CHEBYSHEV:
        k = np.arange(1, L + 1)
        return np.sort(2.0 * np.cos(k * np.pi / (L + 1)))

    s = family_coupling(family, a)
    roots = _in_band_roots(L, s)
    if len(roots) < L:
        isolated = _out_of_band_roots(L, s)
        logger.debug("%s family, L=%d: %d in band, %d isolated", family.value, L, len(roots), len(isolated))
        roots += isolated
    if len(roots) != L:
        raise SolverError(f"{family.value} family at L={L}, a={a}: found {len(roots)} roots, expected {L}")
    return np.sort(np.asarray(roots, dtype=float))


def secular_roots(L: int, a: float) -> ModeSpectrum:
    if L < 1:
        raise ValueError(f"L must be positive, got {L}")
    if complex(a).imag != 0:
        raise ValueError(f"the secular equations need a real a, got {a!r}")
    a = float(complex(a).real)

    lambdas, families, residuals = [], [], []
    for family in RootFamily:
        roots = family_roots(L, a, family)
        lambdas.append(roots)
        families.extend([family] * L)
        residuals.append(secular_residual(L, family_coupling(family, a), roots))

    lambdas = np.concatenate(lambdas)
    residuals = np.concatenate(residuals)
    order = np.argsort(lambdas, kind="stable")
    modes = ModeSpectrum(
        L=L,
        a=a,
        lambdas=lambdas[order],
        families=tuple(families[i] for i in order),
        residuals=residuals[order],
    )
    logger.info("secular roots L=%d a=%g: %d roots, %d isolated", L, a, len(order), int(modes.out_of_band.sum()))
    return modes


def eigensolve_deviations(modes: ModeSpectrum) -> np.ndarray:
    """Per-root gap between the ascending secular roots and eig(A)."""
    reference = build_A(modes.L, modes.a).eigenvalues()
    return np.abs(modes.lambdas - reference)


def eigensolve_deviation(modes: ModeSpectrum) -> float:
    return float(eigensolve_deviations(modes).max())


def dispersion_table(L: int, a: float) -> pd.DataFrame:
    return secular_roots(L, a).to_frame()


# Many-body assembly

def _lambdas(modes: Union[ModeSpectrum, Sequence[float]]) -> np.ndarray:
    if isinstance(modes, ModeSpectrum):
        return modes.lambdas
    return np.asarray(modes, dtype=float).ravel()


def _occupations(n: int) -> np.ndarray:
    states = np.arange(1 << n, dtype=np.int64)
    return ((states[:, None] >> np.arange(n)) & 1).astype(float)


def _guard(n: int, max_modes: int) -> None:
    if n > max_modes:
        raise SizeGuardError(f"{n} modes give 2^{n} energies, above the limit of {max_modes} modes")


def occupation_spectrum(modes: Union[ModeSpectrum, Sequence[float]], max_modes: int = MAX_MODES) -> Spectrum:
    lam = _lambdas(modes)
    _guard(len(lam), max_modes)
    return Spectrum(_occupations(len(lam)) @ lam)


def many_body_spectrum(modes: Union[ModeSpectrum, Sequence[float]], max_modes: int = MAX_MODES) -> Spectrum:
    """
    All 2^N energies (1/2) sum_k eps_k |lambda_k| with eps_k = +-1.

    The occupation-number multiset {sum n_k lambda_k} is computed alongside;
    the two agree exactly when sum lambda_k = 0, and the comparison is kept
    in the metadata.
    """
    lam = _lambdas(modes)
    _guard(len(lam), max_modes)
    occ = _occupations(len(lam))
    energies = 0.5 * (2.0 * occ - 1.0) @ np.abs(lam)
    by_occupation = np.sort(occ @ lam)
    deviation = float(np.abs(np.sort(energies) - by_occupation).max())
    metadata: Dict[str, object] = {
        "modes": len(lam),
        "trace_shift": 0.5 * float(lam.sum()),
        "occupation_max_dev": deviation,
        "occupation_agrees": deviation <= 1e-9,
    }
    return Spectrum(energies, metadata)


def ground_energy(modes: Union[ModeSpectrum, Sequence[float]]) -> float:
    return -0.5 * float(np.abs(_lambdas(modes)).sum())


# Bogoliubov-de Gennes

def quadratic_form(p: QFParams) -> Tuple[np.ndarray, np.ndarray]:
    """
    (h, Delta) with H = sum h_ik d_i^dag d_k + 1/2 sum (Delta_ik d_i^dag d_k^dag + h.c.).

    A term D d_i d_k + h.c. enters as Delta_ki = conj(D), Delta_ik = -conj(D).
    """
    L = p.L
    n = LEGS * L
    h = np.zeros((n, n), dtype=complex)
    delta = np.zeros((n, n), dtype=complex)

    def hop(i, k, t):
        h[i, k] += t
        h[k, i] += np.conj(t)

    def pair(i, k, D):
        delta[k, i] += np.conj(D)
        delta[i, k] -= np.conj(D)

    for leg in range(1, LEGS + 1):
        for j in range(1, L):
            i, k = mode_index(leg, j, L), mode_index(leg, j + 1, L)
            hop(i, k, 1.0)
            pair(i, k, -p.gamma)
        i, k = mode_index(leg, 1, L), mode_index(next_leg(leg), 1, L)
        hop(i, k, 1j * p.a[leg - 1])
        pair(i, k, 1j * p.b[leg - 1])
    return h, delta


def bdg_spectrum(p: QFParams, max_modes: int = MAX_MODES) -> Spectrum:
    """
    Many-body spectrum from the doubled matrix [[h, Delta], [Delta^dag, -h^T]].

    H = sum_m eps_m n_m + (Tr h - sum_m eps_m) / 2 with eps_m >= 0 the upper half
    of the BdG eigenvalues.
    """
    h, delta = quadratic_form(p)
    n = h.shape[0]
    _guard(n, max_modes)

    M = np.block([[h, delta], [delta.conj().T, -h.T]])
    eigs = eig_hermitian(M).eigenvalues
    eps = np.abs(eigs[n:])
    constant = 0.5 * (float(np.trace(h).real) - float(eps.sum()))

    energies = _occupations(n) @ eps + constant
    metadata = {
        "quasiparticle_energies": eps.tolist(),
        "constant": constant,
        "convention": "H = sum_m eps_m n_m + (Tr h - sum_m eps_m) / 2",
    }
    logger.info("BdG spectrum L=%d: %d quasiparticles, constant %.6g", p.L, n, constant)
    return Spectrum(energies, metadata)
