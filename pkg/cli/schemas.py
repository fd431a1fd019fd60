"""
Pydantic schemas for parsed runs and the JSON reports the commands emit
"""

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.jw_transforms import REPORT_SCHEMA, AlgebraReport


class RunConfig(BaseModel):
    command: Literal["verify-algebra", "verify-kondo", "spectrum", "freefermion"]
    action: Optional[Literal["roots", "dispersion", "compare"]] = None
    L: int = Field(1, ge=1)
    family: Literal["klein", "aux", "naive", "spiral"] = "klein"
    model: Literal["xx", "qf"] = "xx"
    rho: complex = 1.0
    a: float = 1.0
    a_vec: Optional[Tuple[complex, complex, complex]] = None
    b: Tuple[complex, complex, complex] = (0, 0, 0)
    gamma: float = 0.0
    with_aux: bool = False
    check_doubling: bool = False
    out: Optional[str] = None
    format: Literal["csv", "json"] = "csv"
    tol: Optional[float] = Field(None, gt=0)
    force: bool = False
    dump_operator: Optional[str] = None

    @model_validator(mode="after")
    def action_matches_command(self) -> "RunConfig":
        if (self.command == "freefermion") != (self.action is not None):
            raise ValueError("an action is given exactly for the freefermion command")
        return self

    def tolerance(self, default: float) -> float:
        return default if self.tol is None else self.tol

    @property
    def vertex_a(self) -> Tuple[complex, complex, complex]:
        return self.a_vec if self.a_vec is not None else (self.a, self.a, self.a)

    @property
    def uniform_a(self) -> bool:
        return self.a_vec is None or len(set(self.a_vec)) == 1


class _Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(REPORT_SCHEMA, alias="schema")
    command: str
    leg_length: int

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)


class SuiteReport(_Report):
    family: str
    passed: bool = Field(alias="pass")
    reports: Dict[str, AlgebraReport] = Field(default_factory=dict)


class KondoReport(_Report):
    rho_re: float
    rho_im: float
    tolerance: float
    max_residual: float
    compact_residual: Optional[float] = None
    num_terms: int
    passed: bool = Field(alias="pass")


class ComparisonReport(_Report):
    model: str
    reference: str
    multiplicity: int
    dim: int
    tolerance: float
    max_dev: float
    ground_energy: Optional[float] = None
    passed: bool = Field(alias="pass")


class SpectrumReport(_Report):
    model: str
    n_sites: int
    eigenvalues: List[float]
    checks: Dict[str, ComparisonReport] = Field(default_factory=dict)


class RootsReport(_Report):
    a: float
    num_roots: int
    out_of_band: Dict[str, int]
    eigensolve_deviation: float
    symmetry_deviation: float
    trace: float
    max_secular_residual: float
    tolerance: float
    passed: bool = Field(alias="pass")
