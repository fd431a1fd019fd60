"""
Geometry, site indexing and single-site operators of the three-leg star graph

Qubit order is aux-first, then leg-major: the auxiliary site (when present)
is qubit 0 and site (leg, j) sits at offset + (leg - 1) * L + (j - 1).
Basis bit 0 is the spin-up (sigma^z = +1) state.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Union

from src.exceptions import InvalidSiteError
from src.operators.pauli_core import OperatorSum

LEGS = 3


class OpKind(str, Enum):
    X = "x"
    Y = "y"
    Z = "z"
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class SiteId:
    """Either the auxiliary site (both fields None) or (leg, position)."""

    leg: Optional[int] = None
    pos: Optional[int] = None

    @classmethod
    def aux(cls) -> "SiteId":
        return cls()

    @property
    def is_aux(self) -> bool:
        return self.leg is None and self.pos is None

    def __str__(self) -> str:
        return "aux" if self.is_aux else f"({self.leg},{self.pos})"


AUX = SiteId.aux()


def next_leg(leg: int) -> int:
    """Cyclic leg successor, 3 wraps to 1."""
    return leg % LEGS + 1


@dataclass(frozen=True)
class StarLayout:
    leg_length: int
    with_aux: bool = False
    legs: int = LEGS

    def __post_init__(self):
        if self.legs != LEGS:
            raise InvalidSiteError(f"only {LEGS}-leg stars are supported, got {self.legs}")
        if not isinstance(self.leg_length, int) or self.leg_length < 1:
            raise InvalidSiteError(f"leg length must be a positive integer, got {self.leg_length!r}")

    @property
    def offset(self) -> int:
        return 1 if self.with_aux else 0

    @property
    def total_sites(self) -> int:
        return self.legs * self.leg_length + self.offset

    def validate(self, site: SiteId) -> None:
        if site.is_aux:
            if not self.with_aux:
                raise InvalidSiteError("auxiliary site requested on a layout without one")
            return
        if site.leg is None or not 1 <= site.leg <= self.legs:
            raise InvalidSiteError(f"leg must lie in 1..{self.legs}, got {site.leg}")
        if site.pos is None or not 1 <= site.pos <= self.leg_length:
            raise InvalidSiteError(f"position must lie in 1..{self.leg_length}, got {site.pos}")

    def qubit_index(self, site: SiteId) -> int:
        self.validate(site)
        if site.is_aux:
            return 0
        return self.offset + (site.leg - 1) * self.leg_length + (site.pos - 1)

    def site_of(self, index: int) -> SiteId:
        if not 0 <= index < self.total_sites:
            raise InvalidSiteError(f"qubit {index} outside [0, {self.total_sites})")
        if self.with_aux and index == 0:
            return AUX
        leg, pos = divmod(index - self.offset, self.leg_length)
        return SiteId(leg + 1, pos + 1)

    def sites(self) -> List[SiteId]:
        return [self.site_of(q) for q in range(self.total_sites)]

    def leg_sites(self, leg: int) -> List[SiteId]:
        return [SiteId(leg, j) for j in range(1, self.leg_length + 1)]

    def mask(self, sites: Iterable[SiteId]) -> int:
        m = 0
        for site in sites:
            m |= 1 << self.qubit_index(site)
        return m


def qubit_index(layout: StarLayout, site: SiteId) -> int:
    return layout.qubit_index(site)


def site_op(layout: StarLayout, site: SiteId, kind: Union[OpKind, str]) -> OperatorSum:
    """Single-site sigma^{x,y,z,+,-} at ``site``, identity elsewhere."""
    kind = OpKind(kind)
    bit = 1 << layout.qubit_index(site)
    n = layout.total_sites
    if kind is OpKind.X:
        return OperatorSum(n, {(bit, 0): 1.0})
    if kind is OpKind.Z:
        return OperatorSum(n, {(0, bit): 1.0})
    if kind is OpKind.Y:
        # Y = i X Z
        return OperatorSum(n, {(bit, bit): 1j})
    if kind is OpKind.PLUS:
        return OperatorSum(n, {(bit, 0): 0.5, (bit, bit): -0.5})
    return OperatorSum(n, {(bit, 0): 0.5, (bit, bit): 0.5})


def z_string(layout: StarLayout, sites: Iterable[SiteId]) -> OperatorSum:
    """Product of sigma^z over ``sites`` (identity when empty)."""
    return OperatorSum(layout.total_sites, {(0, layout.mask(sites)): 1.0})
