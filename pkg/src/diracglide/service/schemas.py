"""Request/response models for the service endpoints.

All physical quantities are in natural units with the mass wave number
k_m as the scale; lengths are 1/k_m, energies are k_m.  Every request
carries a seed so responses are bit-reproducible.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..metric import GridSpec, MetricModel, RadialProfile

DEFAULT_SEED = 42


class _StrictRequest(BaseModel):
    """Base for request bodies: unknown keys are validation errors."""

    model_config = ConfigDict(extra="forbid")


class ProfileSpec(_StrictRequest):
    """One radial profile: kind plus its parameters.

    ``strength``/``range`` parameterize a yukawa, ``strength``/``width``
    a gaussian; a tabulated profile carries inline r/value tables.
    """

    kind: Literal["zero", "yukawa", "gaussian", "tabulated"] = "zero"
    strength: float = 0.0
    range: float | None = None
    width: float | None = None
    r: list[float] | None = None
    values: list[float] | None = None

    @model_validator(mode="after")
    def _check_parameters(self):
        if self.kind == "yukawa" and self.range is None:
            raise ValueError("yukawa profile needs a 'range'")
        if self.kind == "gaussian" and self.width is None:
            raise ValueError("gaussian profile needs a 'width'")
        if self.kind == "tabulated" and (self.r is None or self.values is None):
            raise ValueError("tabulated profile needs 'r' and 'values' tables")
        return self

    def to_profile(self) -> RadialProfile:
        if self.kind == "zero":
            return RadialProfile.zero()
        if self.kind == "yukawa":
            return RadialProfile.yukawa(self.strength, self.range)
        if self.kind == "gaussian":
            return RadialProfile.gaussian(self.strength, self.width)
        return RadialProfile.tabulated(self.r, self.values)


class MetricModelSpec(_StrictRequest):
    """The three distortion profiles; all default to zero (flat)."""

    v1: ProfileSpec = Field(default_factory=ProfileSpec)
    v2: ProfileSpec = Field(default_factory=ProfileSpec)
    v3: ProfileSpec = Field(default_factory=ProfileSpec)

    def to_model(self) -> MetricModel:
        return MetricModel(
            v1=self.v1.to_profile(), v2=self.v2.to_profile(), v3=self.v3.to_profile()
        )


class GridModel(_StrictRequest):
    dimension: Literal["radial-1d", "cartesian-3d"] = "radial-1d"
    extent: float = Field(gt=0)
    points: int = Field(ge=16)

    def to_grid(self) -> GridSpec:
        return GridSpec(dimension=self.dimension, extent=self.extent, points=self.points)


# -- algebra -----------------------------------------------------------------


class AlgebraRequest(_StrictRequest):
    representation: Literal["standard", "chiral"] = "standard"
    seed: int = DEFAULT_SEED


class AlgebraCheck(BaseModel):
    name: str
    max_deviation: float
    tolerance: float
    passed: bool


class AlgebraResponse(BaseModel):
    representation: str
    passed: bool
    checks: list[AlgebraCheck]
    seed: int


# -- plane waves -------------------------------------------------------------


class PlaneWaveRequest(_StrictRequest):
    k1: float = 0.0
    k2: float = 0.0
    k3: float = 0.0
    mass: float = Field(default=1.0, gt=0)
    branch: Literal["spin-up", "spin-down"] = "spin-up"
    representation: Literal["standard", "chiral"] = "standard"
    seed: int = DEFAULT_SEED


class TranslationCheck(BaseModel):
    axis: int
    shift: float
    residual: float


class PlaneWaveResponse(BaseModel):
    momentum: list[float]
    mass: float
    branch: str
    on_shell: bool
    dispersion_residual: float
    spinor_re: list[float]
    spinor_im: list[float]
    translation_checks: list[TranslationCheck]
    skipped_axes: list[int]
    operator_residual: float
    glide_form_residual: float
    residual_tolerance: float
    passed: bool
    seed: int


# -- hydrogen-like spectrum ---------------------------------------------------


class HydrogenRequest(_StrictRequest):
    coupling: float = Field(gt=0)
    count: int = Field(default=1, ge=1)
    kappas: list[int] = Field(default_factory=lambda: [-1])
    mass: float = Field(default=1.0, gt=0)
    grid: GridModel | None = None
    seed: int = DEFAULT_SEED

    @model_validator(mode="after")
    def _check_channels(self):
        if not self.kappas:
            raise ValueError("at least one kappa channel is required")
        if any(k == 0 for k in self.kappas):
            raise ValueError("kappa cannot be 0")
        return self

    def resolved_grid(self) -> GridSpec:
        """The documented converged default: box past the guard threshold."""
        if self.grid is not None:
            return self.grid.to_grid()
        extent = 22.0 * self.count**2 / (self.coupling * self.mass)
        return GridSpec(dimension="radial-1d", extent=extent, points=8000)


class HydrogenRow(BaseModel):
    kappa: int
    n: int
    energy_grid: float
    energy_sommerfeld: float
    rel_error: float


class HydrogenResponse(BaseModel):
    coupling: float
    mass: float
    rows: list[HydrogenRow]
    tolerance: float
    passed: bool
    warnings: list[str]
    grid: GridModel
    seed: int


# -- bound states -------------------------------------------------------------


class BoundStatesRequest(_StrictRequest):
    model: MetricModelSpec = Field(default_factory=MetricModelSpec)
    base_potential: ProfileSpec | None = None
    grid: GridModel
    mass: float = Field(default=1.0, gt=0)
    count: int = Field(default=1, ge=1)
    ordering: Literal["symmetrized"] = "symmetrized"
    energy_convention: Literal["total", "eigenvalue"] = "total"
    seed: int = DEFAULT_SEED


class BoundStatesResponse(BaseModel):
    energies: list[float]
    energy_reference: str
    converged: list[bool]
    iterations: list[int]
    residual_norms: list[float]
    histories: list[list[float]]
    passed: bool
    seed: int


# -- nonrelativistic limit ----------------------------------------------------


class NrLimitRequest(_StrictRequest):
    v1: ProfileSpec
    base_potential: ProfileSpec
    epsilons: list[float] = Field(default_factory=lambda: [0.01, 0.02, 0.04])
    mass: float = Field(default=1.0, gt=0)
    grid: GridModel
    kappa: int = -1
    seed: int = DEFAULT_SEED


class NrLimitResponse(BaseModel):
    epsilons: list[float]
    dirac_shifts: list[float]
    schrodinger_shifts: list[float]
    discrepancies: list[float]
    # None means the discrepancy sat at the numerical floor (exact agreement).
    fitted_exponent: float | None
    signs_match: bool
    passed: bool
    dirac_baseline_total: float
    schrodinger_baseline: float
    seed: int


# -- effective-potential table -------------------------------------------------


class PotentialTableRequest(_StrictRequest):
    model: MetricModelSpec = Field(default_factory=MetricModelSpec)
    base_potential: ProfileSpec | None = None
    energy: float = 0.0
    mass: float = Field(default=1.0, gt=0)
    r_max: float = Field(default=10.0, gt=0)
    samples: int = Field(default=101, ge=2)
    seed: int = DEFAULT_SEED


class PotentialTableRow(BaseModel):
    r: float
    v1: float
    v2: float
    v3: float
    local_potential: float


class PotentialTableResponse(BaseModel):
    rows: list[PotentialTableRow]
    energy: float
    mass: float
    note: str
    seed: int


class HealthResponse(BaseModel):
    status: str
    version: str
