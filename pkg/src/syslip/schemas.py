"""Pydantic request/response models for the service wire format."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from .surfaces import RationalRay

MatrixKind = Literal["base", "lifted_root", "lifted_full"]


def parse_ray(text: str) -> RationalRay:
    return RationalRay.parse(text)


class MatrixRequest(BaseModel):
    ray: str = Field(description="ray slope 'p/q' in lowest terms")
    index: int = Field(ge=1, description="twist power / cover degree i")
    kind: MatrixKind = "base"
    include_chain: bool = False
    intersections: list[int] | None = Field(
        default=None, description="override for the adjacent intersection numbers"
    )
    seam: int | None = Field(default=None, description="seam intersection override")

    @field_validator("ray")
    @classmethod
    def _ray_ok(cls, v: str) -> str:
        parse_ray(v)
        return v

    @model_validator(mode="after")
    def _lifted_needs_cover(self) -> "MatrixRequest":
        if self.kind != "base" and self.index < 2:
            raise ValueError("lifted matrices need cover degree >= 2")
        return self


class MatrixResponse(BaseModel):
    dimension: int
    entries: list[str]
    provenance: str
    max_column_sum: str
    column_sum_bound: str
    bound_satisfied: bool
    chain: dict | None = None


class MixingRequest(BaseModel):
    ray: str
    index: int = Field(ge=2)
    cap: int | None = Field(default=None, ge=1)

    @field_validator("ray")
    @classmethod
    def _ray_ok(cls, v: str) -> str:
        parse_ray(v)
        return v


class FractionModel(BaseModel):
    numerator: int
    denominator: int


class MixingResponse(BaseModel):
    dimension: int
    cap: int
    mixing_number: int | None
    within_cap: bool
    translation_lower_bound: FractionModel | None


class DilatationRequest(BaseModel):
    ray: str
    index: int = Field(ge=1)
    kind: Literal["base", "lifted_root"] = "base"
    tol: float = Field(default=1e-9, gt=0)

    @field_validator("ray")
    @classmethod
    def _ray_ok(cls, v: str) -> str:
        parse_ray(v)
        return v

    @model_validator(mode="after")
    def _lifted_needs_cover(self) -> "DilatationRequest":
        if self.kind == "lifted_root" and self.index < 2:
            raise ValueError("root maps need cover degree >= 2")
        return self


class DilatationResponse(BaseModel):
    dimension: int
    lower: float
    upper: float
    iterations: int
    converged: bool
    log_upper: float
    max_column_sum: str
    min_column_sum: str
    column_sum_bound: str
    closed_form_log_bound: float | None = None
    bound_satisfied: bool | None = None


class BoundsRequest(BaseModel):
    ray: str | None = None
    genus: int | None = Field(default=None, ge=2)
    index: int = Field(ge=1, description="cover degree (ray) or puncture count (genus)")
    collar_override: float | None = Field(default=None, gt=0)
    cap: int | None = Field(default=None, ge=1)
    use_computed_mixing: bool = True
    c1: float = Field(default=1.0, gt=0)
    c2: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def _one_family(self) -> "BoundsRequest":
        if (self.ray is None) == (self.genus is None):
            raise ValueError("supply exactly one of ray / genus")
        if self.ray is not None:
            parse_ray(self.ray)
            if self.index < 2:
                raise ValueError("ray bounds need cover degree >= 2")
        return self


class LowerInputsModel(BaseModel):
    log_dilatation_upper: float
    translation_lower: FractionModel | None
    mixing_number: int | None
    mixing_cap: int
    matrix_dimension: int
    certified: bool


class BoundsReportModel(BaseModel):
    family: str
    genus: int
    punctures: int
    abs_chi: int
    collar_constant: float
    k_upper: float | None
    k_upper_additive: float
    k_lower: float | None
    k_upper_log_abs_chi: float | None
    k_lower_log_abs_chi: float | None
    lambda_upper: float | None
    lower_inputs: LowerInputsModel | None
    conditional_constants: list[float] | None
    note: str


class TableRequest(BaseModel):
    ray: str | None = None
    genus: int | None = Field(default=None, ge=2)
    start: int = Field(ge=1)
    stop: int = Field(ge=1)
    collar_override: float | None = Field(default=None, gt=0)
    cap: int | None = Field(default=None, ge=1)
    use_computed_mixing: bool = True
    c1: float = Field(default=1.0, gt=0)
    c2: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def _ok(self) -> "TableRequest":
        if (self.ray is None) == (self.genus is None):
            raise ValueError("supply exactly one of ray / genus")
        if self.stop < self.start:
            raise ValueError("empty index range")
        if self.ray is not None:
            parse_ray(self.ray)
            if self.start < 2:
                raise ValueError("ray tables start at cover degree 2")
        return self


class TableResponse(BaseModel):
    rows: list[BoundsReportModel]
    csv: str
    plot_data: str


class ChainRequest(BaseModel):
    ray: str
    index: int | None = Field(default=None, ge=2, description="lift to this cover degree")
    intersections: list[int] | None = None
    seam: int | None = None

    @field_validator("ray")
    @classmethod
    def _ray_ok(cls, v: str) -> str:
        parse_ray(v)
        return v


class ErrorDetail(BaseModel):
    kind: Literal["math_precondition", "falsification"]
    message: str
