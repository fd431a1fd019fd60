"""
Dense exact diagonalization of operator sums
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Sequence, Union

import numpy as np
import pandas as pd
import scipy.linalg

from src.exceptions import DimensionError, NonHermitianError, SizeGuardError
from src.operators.pauli_core import OperatorSum

logger = logging.getLogger(__name__)

MAX_DENSE_QUBITS = 14
SPECTRUM_TOL = 1e-9


def to_matrix(A: OperatorSum, max_qubits: int = MAX_DENSE_QUBITS) -> np.ndarray:
    """
    Dense 2^n x 2^n matrix of ``A``.

    Basis state b has bit k set when site k is spin down. The string X^x Z^z
    sends column b to row b ^ x with sign (-1)^{popcount(b & z)}.
    """
    n = A.n_sites
    if n > max_qubits:
        raise SizeGuardError(f"{n} qubits exceed the dense limit of {max_qubits}")

    dim = 1 << n
    cols = np.arange(dim, dtype=np.int64)
    bits = [(cols >> k) & 1 for k in range(n)]
    M = np.zeros((dim, dim), dtype=complex)

    for (x_mask, z_mask), coeff in A.items():
        parity = np.zeros(dim, dtype=np.int64)
        for k in range(n):
            if z_mask >> k & 1:
                parity ^= bits[k]
        M[cols ^ x_mask, cols] += coeff * (1 - 2 * parity)
    return M


@dataclass(frozen=True)
class Spectrum:
    """Ascending real eigenvalues with free-form provenance metadata."""

    eigenvalues: np.ndarray
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        values = np.sort(np.asarray(self.eigenvalues, dtype=float).ravel())
        values.setflags(write=False)
        object.__setattr__(self, "eigenvalues", values)

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def __len__(self) -> int:
        return self.dim

    @property
    def min(self) -> float:
        return float(self.eigenvalues[0])

    def to_frame(self, value_name: str = "eigenvalue") -> pd.DataFrame:
        return pd.DataFrame({"index": np.arange(self.dim), value_name: self.eigenvalues})


DenseSpectrum = Spectrum


def eig_hermitian(M: np.ndarray, herm_tol: float = 1e-10) -> Spectrum:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    if M.size == 0:
        return Spectrum(np.zeros(0))

    scale = max(1.0, float(np.abs(M).max()))
    asym = float(np.abs(M - M.conj().T).max())
    if asym > herm_tol * scale:
        raise NonHermitianError(f"matrix deviates from Hermitian by {asym:.3e}")

    eigvals = scipy.linalg.eigh(M, eigvals_only=True)
    logger.debug("eigh on %dx%d: [%g, %g]", M.shape[0], M.shape[1], eigvals[0], eigvals[-1])
    return Spectrum(eigvals, {"dim": M.shape[0]})


def spectrum_of(A: OperatorSum, max_qubits: int = MAX_DENSE_QUBITS) -> Spectrum:
    spectrum = eig_hermitian(to_matrix(A, max_qubits))
    spectrum.metadata.update(n_sites=A.n_sites, num_terms=A.num_terms)
    return spectrum


@dataclass(frozen=True)
class SpectrumMatch:
    match: bool
    max_dev: float


def _values(S: Union[Spectrum, Sequence[float]]) -> np.ndarray:
    if isinstance(S, Spectrum):
        return S.eigenvalues
    return np.sort(np.asarray(S, dtype=float).ravel())


def spectra_match(
    S1: Union[Spectrum, Sequence[float]],
    S2: Union[Spectrum, Sequence[float]],
    multiplicity: int = 1,
    tol: float = SPECTRUM_TOL,
) -> SpectrumMatch:
    """Compare S2 against S1 with every S1 entry repeated ``multiplicity`` times."""
    v1, v2 = _values(S1), _values(S2)
    if multiplicity < 1 or len(v2) != multiplicity * len(v1):
        raise DimensionError(
            f"cannot match {len(v2)} values against {len(v1)} x {multiplicity}"
        )
    expanded = np.sort(np.repeat(v1, multiplicity))
    max_dev = float(np.abs(expanded - v2).max()) if len(v2) else 0.0
    return SpectrumMatch(max_dev <= tol, max_dev)
