"""
Exact algebra of Pauli strings and operator sums

A Pauli string on n sites is stored as two n-bit masks and a phase exponent,

    P = i^p * prod_k X_k^{x_k} Z_k^{z_k}

with the X factor to the left of the Z factor on every site and site k held
in bit k. An OperatorSum is a linear combination of canonical strings
(p = 0); the i^p phases are folded into the complex coefficients.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from src.exceptions import DimensionError

MAX_SITES = 64
PRUNE_EPS = 1e-12

Key = Tuple[int, int]
Scalar = Union[int, float, complex]

# i^p for p = 0..3, kept exact so that phase folding never rounds
I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)

_PHASE_PREFIXES = (("-i", 3), ("+i", 1), ("i", 1), ("-", 2), ("+", 0))
_PHASE_LABELS = ("", "i", "-", "-i")


def _check_sites(n_sites: int) -> None:
    if not 0 <= n_sites <= MAX_SITES:
        raise DimensionError(f"n_sites must lie in [0, {MAX_SITES}], got {n_sites}")


def _check_masks(n_sites: int, x_mask: int, z_mask: int) -> None:
    full = (1 << n_sites) - 1
    if x_mask < 0 or z_mask < 0 or x_mask & ~full or z_mask & ~full:
        raise DimensionError(
            f"masks x={x_mask:#x}, z={z_mask:#x} do not fit on {n_sites} sites"
        )


@dataclass(frozen=True)
class PauliString:
    """One tensor product of single-site Paulis with an exact i^p phase."""

    n_sites: int
    x_mask: int
    z_mask: int
    phase_exp: int = 0

    def __post_init__(self):
        _check_sites(self.n_sites)
        _check_masks(self.n_sites, self.x_mask, self.z_mask)
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def identity(cls, n_sites: int) -> "PauliString":
        return cls(n_sites, 0, 0)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse labels such as ``"XIZ"`` or ``"-iYZ"``; the first letter is site 0."""
        label = label.strip()
        phase = 0
        for prefix, exp in _PHASE_PREFIXES:
            if label.startswith(prefix):
                phase = exp
                label = label[len(prefix):]
                break

        x_mask = z_mask = 0
        for site, letter in enumerate(label):
            bit = 1 << site
            if letter == "X":
                x_mask |= bit
            elif letter == "Z":
                z_mask |= bit
            elif letter == "Y":
                # Y = i X Z
                x_mask |= bit
                z_mask |= bit
                phase += 1
            elif letter != "I":
                raise ValueError(f"Unknown Pauli letter {letter!r} in {label!r}")
        return cls(len(label), x_mask, z_mask, phase)

    @property
    def y_count(self) -> int:
        return (self.x_mask & self.z_mask).bit_count()

    @property
    def word(self) -> str:
        """Letters over {I, X, Y, Z}, site 0 first, phase not included."""
        letters = []
        for site in range(self.n_sites):
            bit = 1 << site
            letters.append("IXZY"[bool(self.x_mask & bit) + 2 * bool(self.z_mask & bit)])
        return "".join(letters)

    @property
    def label(self) -> str:
        # X Z = -i Y on every Y site
        return _PHASE_LABELS[(self.phase_exp - self.y_count) % 4] + self.word

    @property
    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    def commutes_with(self, other: "PauliString") -> bool:
        if other.n_sites != self.n_sites:
            raise DimensionError(f"{self.n_sites} vs {other.n_sites} sites")
        flips = (self.x_mask & other.z_mask).bit_count() + (self.z_mask & other.x_mask).bit_count()
        return flips % 2 == 0

    def adjoint(self) -> "PauliString":
        return pauli_adjoint(self)

    def __mul__(self, other: "PauliString") -> "PauliString":
        if not isinstance(other, PauliString):
            return NotImplemented
        return pauli_mul(self, other)


def pauli_mul(p: PauliString, q: PauliString) -> PauliString:
    """Pauli group product; moving q's X factors past p's Z factors costs (-1) each."""
    if p.n_sites != q.n_sites:
        raise DimensionError(f"cannot multiply strings on {p.n_sites} and {q.n_sites} sites")
    phase = p.phase_exp + q.phase_exp + 2 * (p.z_mask & q.x_mask).bit_count()
    return PauliString(p.n_sites, p.x_mask ^ q.x_mask, p.z_mask ^ q.z_mask, phase)


def pauli_adjoint(p: PauliString) -> PauliString:
    phase = -p.phase_exp + 2 * (p.x_mask & p.z_mask).bit_count()
    return PauliString(p.n_sites, p.x_mask, p.z_mask, phase)


class OperatorSum:
    """
    Complex linear combination of canonical Pauli strings.

    Values are immutable. Terms are kept in lexicographic (x_mask, z_mask)
    order and coefficients that merge to exactly zero are dropped.
    """

    __slots__ = ("_n_sites", "_terms")

    def __init__(self, n_sites: int, terms: Optional[Mapping[Key, Scalar]] = None):
        _check_sites(n_sites)
        acc: Dict[Key, complex] = {}
        for (x_mask, z_mask), coeff in (terms or {}).items():
            _check_masks(n_sites, x_mask, z_mask)
            acc[(x_mask, z_mask)] = complex(coeff)
        self._n_sites = n_sites
        self._terms = _canonical(acc)

    @classmethod
    def _wrap(cls, n_sites: int, acc: Dict[Key, complex]) -> "OperatorSum":
        obj = cls.__new__(cls)
        obj._n_sites = n_sites
        obj._terms = _canonical(acc)
        return obj

    # Constructors

    @classmethod
    def zero(cls, n_sites: int) -> "OperatorSum":
        return cls(n_sites)

    @classmethod
    def identity(cls, n_sites: int, coeff: Scalar = 1.0) -> "OperatorSum":
        return cls(n_sites, {(0, 0): coeff})

    @classmethod
    def from_pauli(cls, p: PauliString, coeff: Scalar = 1.0) -> "OperatorSum":
        return cls(p.n_sites, {(p.x_mask, p.z_mask): complex(coeff) * I_POWERS[p.phase_exp]})

    @classmethod
    def from_label(cls, label: str, coeff: Scalar = 1.0) -> "OperatorSum":
        return cls.from_pauli(PauliString.from_label(label), coeff)

    @classmethod
    def from_strings(cls, n_sites: int, pairs: Iterable[Tuple[PauliString, Scalar]]) -> "OperatorSum":
        acc: Dict[Key, complex] = {}
        for p, coeff in pairs:
            if p.n_sites != n_sites:
                raise DimensionError(f"string on {p.n_sites} sites in a {n_sites}-site sum")
            key = (p.x_mask, p.z_mask)
            acc[key] = acc.get(key, 0j) + complex(coeff) * I_POWERS[p.phase_exp]
        return cls._wrap(n_sites, acc)

    # Inspection

    @property
    def n_sites(self) -> int:
        return self._n_sites

    @property
    def terms(self) -> Mapping[Key, complex]:
        return MappingProxyType(self._terms)

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def identity_coeff(self) -> complex:
        return self._terms.get((0, 0), 0j)

    def items(self) -> Iterator[Tuple[Key, complex]]:
        return iter(self._terms.items())

    def strings(self) -> Iterator[Tuple[PauliString, complex]]:
        for (x_mask, z_mask), coeff in self._terms.items():
            yield PauliString(self._n_sites, x_mask, z_mask), coeff

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def prune(self, eps: float = PRUNE_EPS) -> "OperatorSum":
        return OperatorSum._wrap(
            self._n_sites, {k: c for k, c in self._terms.items() if abs(c) >= eps}
        )

    def adjoint(self) -> "OperatorSum":
        return opsum_adjoint(self)

    # Arithmetic

    def _check_same(self, other: "OperatorSum") -> None:
        if other._n_sites != self._n_sites:
            raise DimensionError(
                f"operator sums act on {self._n_sites} and {other._n_sites} sites"
            )

    def scale(self, factor: Scalar) -> "OperatorSum":
        factor = complex(factor)
        return OperatorSum._wrap(self._n_sites, {k: factor * c for k, c in self._terms.items()})

    def __add__(self, other: "OperatorSum") -> "OperatorSum":
        if not isinstance(other, OperatorSum):
            return NotImplemented
        self._check_same(other)
        acc = dict(self._terms)
        for key, coeff in other._terms.items():
            acc[key] = acc.get(key, 0j) + coeff
        return OperatorSum._wrap(self._n_sites, acc)

    def __neg__(self) -> "OperatorSum":
        return OperatorSum._wrap(self._n_sites, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "OperatorSum") -> "OperatorSum":
        if not isinstance(other, OperatorSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, OperatorSum):
            return opsum_mul(self, other)
        if isinstance(other, numbers.Number):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return self.scale(other)
        return NotImplemented

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[PauliString, complex]]:
        return self.strings()

    def __repr__(self) -> str:
        return f"OperatorSum(n_sites={self._n_sites}, terms={len(self._terms)})"

    # Text form

    def to_text(self) -> str:
        """One ``<re> <im> <word>`` line per term, in canonical order."""
        lines = []
        for p, coeff in self.strings():
            coeff *= I_POWERS[(-p.y_count) % 4]
            # + 0.0 turns -0.0 into 0.0
            lines.append(f"{coeff.real + 0.0:.17g} {coeff.imag + 0.0:.17g} {p.word}")
        return "".join(line + "\n" for line in lines)

    @classmethod
    def from_text(cls, text: str, n_sites: Optional[int] = None) -> "OperatorSum":
        pairs = []
        for line in text.splitlines():
            if not line.strip():
                continue
            re_part, im_part, word = line.split()
            pairs.append((PauliString.from_label(word), complex(float(re_part), float(im_part))))
        if n_sites is None:
            if not pairs:
                raise ValueError("cannot infer n_sites from an empty dump")
            n_sites = pairs[0][0].n_sites
        return cls.from_strings(n_sites, pairs)


def _canonical(acc: Dict[Key, complex]) -> Dict[Key, complex]:
    return {key: acc[key] for key in sorted(acc) if acc[key] != 0}


def opsum_mul(a: OperatorSum, b: OperatorSum) -> OperatorSum:
    a._check_same(b)
    acc: Dict[Key, complex] = {}
    for (ax, az), ac in a._terms.items():
        for (bx, bz), bc in b._terms.items():
            key = (ax ^ bx, az ^ bz)
            term = ac * bc
            if (az & bx).bit_count() % 2:
                term = -term
            acc[key] = acc.get(key, 0j) + term
    return OperatorSum._wrap(a._n_sites, acc)


def commutator(a: OperatorSum, b: OperatorSum) -> OperatorSum:
    return opsum_mul(a, b) - opsum_mul(b, a)


def anticommutator(a: OperatorSum, b: OperatorSum) -> OperatorSum:
    return opsum_mul(a, b) + opsum_mul(b, a)


def opsum_adjoint(a: OperatorSum) -> OperatorSum:
    acc = {}
    for (x_mask, z_mask), coeff in a._terms.items():
        # (X^x Z^z)^dagger = Z^z X^x = (-1)^{|x & z|} X^x Z^z
        sign = -1 if (x_mask & z_mask).bit_count() % 2 else 1
        acc[(x_mask, z_mask)] = sign * coeff.conjugate()
    return OperatorSum._wrap(a._n_sites, acc)


def is_hermitian(a: OperatorSum, tol: float = PRUNE_EPS) -> bool:
    return (a - opsum_adjoint(a)).max_abs_coeff() <= tol
