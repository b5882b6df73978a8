"""Pydantic models: the JSON scenario format and the response payloads.

One scenario schema (versioned, unknown keys rejected) serves both the CLI
and the HTTP service; each subcommand consumes the sections it needs.
"""
from __future__ import annotations

from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# --------------------------------------------------------------------- input

class ParabolicSpec(StrictModel):
    kind: Literal["parabolic"]
    C: float = Field(gt=0)
    eps_star: float = Field(gt=0)


class TabulatedSpec(StrictModel):
    kind: Literal["tabulated"]
    samples: list[tuple[float, float]] = Field(min_length=2)
    volume_coupling: Literal["fixed", "proportional"] = "fixed"


class MaxPressureSpec(StrictModel):
    kind: Literal["max_pressure"]
    c3: float
    c4: float
    alpha: float
    beta: float = Field(gt=0)


DosSpec = Annotated[Union[ParabolicSpec, TabulatedSpec, MaxPressureSpec],
                    Field(discriminator="kind")]


class PointParams(StrictModel):
    """Either beta or temperature must be given, not both."""

    alpha: float
    beta: float | None = Field(default=None, gt=0)
    temperature: float | None = Field(default=None, gt=0)
    volume: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def _one_of(self) -> "PointParams":
        if (self.beta is None) == (self.temperature is None):
            raise ValueError("give exactly one of beta or temperature")
        return self


class SweepSpec(StrictModel):
    alpha: float
    t_min: float = Field(gt=0)
    t_max: float = Field(gt=0)
    steps: int = Field(ge=1)
    volume: float = Field(default=1.0, gt=0)


class LevelsSpec(StrictModel):
    eps: list[float]
    weights: list[int]

    @model_validator(mode="after")
    def _aligned(self) -> "LevelsSpec":
        if len(self.eps) != len(self.weights):
            raise ValueError("eps and weights must have equal length")
        return self


CountingModeName = Literal["corrected_boltzmann", "distinguishable"]


class EnumerateSpec(StrictModel):
    n: int = Field(ge=0)
    e: float = Field(ge=0)
    e_tol: float = Field(default=0.0, ge=0)
    mode: CountingModeName = "corrected_boltzmann"
    n_cap: int = Field(default=20, ge=0)
    delta_e: float = Field(default=1.0, gt=0)
    delta_n: int = Field(default=1, ge=1)


class EquilibrateSpec(StrictModel):
    e_total: int = Field(ge=0)
    n_total: int = Field(ge=0)
    levels2: LevelsSpec | None = None   # defaults to the primary levels
    mode: CountingModeName = "corrected_boltzmann"
    n_cap: int = Field(default=20, ge=0)
    tolerance: float = Field(default=1e-9, gt=0)
    pressures: tuple[float, float] | None = None


class GridSpec(StrictModel):
    min: float = 0.0
    max: float = 3.0
    points: int = Field(default=64, ge=2)


class StationaritySpec(StrictModel):
    min: float = 0.0
    max: float = 0.6
    points: int = Field(default=257, ge=16)
    num_perturbations: int = Field(default=8, ge=1)
    scale: float = Field(default=1e-3, gt=0)
    seed: int = 0
    reading: Literal["printed", "uniform"] = "printed"


class OptimizeSpec(StrictModel):
    c1: float = 1.0
    c2: float = 0.0
    c3: float = 1.0
    c4: float = 0.0
    alpha: float = 1.0
    beta: float = Field(default=1.0, gt=0)
    b: float | None = None              # minimum economic volume; no default
    residual_grid: GridSpec = GridSpec()
    stationarity: StationaritySpec = StationaritySpec()
    svg_range: tuple[float, float] | None = None
    svg_points: int = Field(default=200, ge=2)


class Scenario(StrictModel):
    schema_version: Literal[1]
    dos: DosSpec | None = None
    params: PointParams | None = None
    sweep: SweepSpec | None = None
    levels: LevelsSpec | None = None
    enumerate: EnumerateSpec | None = None
    equilibrate: EquilibrateSpec | None = None
    optimize: OptimizeSpec | None = None


# ------------------------------------------------------------------- output

class ObservablesResponse(StrictModel):
    ln_z: float
    U: float
    N: float
    p: float
    T: float
    mu: float | None
    p_derivation_signed: float | None = None  # verbose only: -lnZ/(beta*V)


class SweepRowModel(StrictModel):
    T: float
    ln_z: float
    U: float
    N: float
    p: float


class SweepResponse(StrictModel):
    rows: list[SweepRowModel]


class DistributionModel(StrictModel):
    a: list[int]
    omega: float


class EnumerateResponse(StrictModel):
    infeasible: bool
    distributions: list[DistributionModel]
    most_probable: list[int] | None
    total_omega: float
    temperature_quotient: float | None
    potential_quotient: float | None


class SplitModel(StrictModel):
    e1: int
    n1: int
    omega_log_total: float


class EquilibrateResponse(StrictModel):
    e1: int
    n1: int
    t1: float | None
    mu1: float | None
    t2: float | None
    mu2: float | None
    t_common: float | None
    mu_common: float | None
    omega_log_total: float
    wealth_flow: str | None
    individual_flow: str | None
    invasion: str | None
    splits: list[SplitModel] | None = None  # verbose only


class StationarityModel(StrictModel):
    max_first_order_variation: float
    variations: list[float]
    reading: str
    annihilated_reading: str


class OptimizeResponse(StrictModel):
    c1: float
    c2: float
    c3: float
    c4: float
    alpha: float
    beta: float
    v_at_zero: float
    g_at_zero: float
    eps0: float | None
    level_mass: float | None
    residual_max_v: float
    residual_max_g: float
    stationarity: StationarityModel


class ValidateResponse(StrictModel):
    valid: bool
    violations: list[str]
