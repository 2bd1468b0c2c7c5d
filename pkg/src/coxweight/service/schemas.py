"""Pydantic request/response models for the HTTP service.

Exact rationals travel as strings "p/q" so that structured output
round-trips without precision loss; decimal renderings are always
accompanied by the exact value.
"""

from __future__ import annotations

from typing import Optional, Union

from pydantic import BaseModel, Field, model_validator

SCHEMA_VERSION = "1"


class SystemSpec(BaseModel):
    """Either a named builtin system or an inline matrix description."""

    builtin: Optional[str] = None
    description: Optional[dict] = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.builtin is None) == (self.description is None):
            raise ValueError(
                "specify exactly one of 'builtin' or 'description'")
        return self


class ComplexSpec(BaseModel):
    """A named builtin mirrored complex or an inline description with
    vertices, facets and per-generator mirror vertex sets."""

    builtin: Optional[str] = None
    description: Optional[dict] = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.builtin is None) == (self.description is None):
            raise ValueError(
                "specify exactly one of 'builtin' or 'description'")
        return self


class GraphSpec(BaseModel):
    vertices: list[str]
    edges: list[list[str]]


QInput = Union[dict[str, str], list[str], str]


class GrowthRequest(BaseModel):
    system: SystemSpec
    series_order: Optional[int] = Field(default=None, ge=0, le=40)


class RhoRequest(BaseModel):
    system: SystemSpec
    precision: int = Field(default=6, ge=1, le=50)


class RegionRequest(BaseModel):
    system: SystemSpec
    q: QInput


class BettiRequest(BaseModel):
    system: SystemSpec
    q: QInput
    complex: Optional[ComplexSpec] = None
    method: str = Field(default="auto", pattern="^(auto|formula|direct)$")
    precision: int = Field(default=6, ge=1, le=50)


class EulerRequest(BaseModel):
    system: SystemSpec
    q: QInput
    complex: Optional[ComplexSpec] = None
    precision: int = Field(default=6, ge=1, le=50)


class BallRequest(BaseModel):
    system: SystemSpec
    max_length: int = Field(ge=0, le=64)
    budget: Optional[int] = Field(default=None, ge=1)
    time_limit: Optional[float] = Field(default=None, gt=0)
    include_elements: bool = False


class NormalFormRequest(BaseModel):
    system: SystemSpec
    word: str


class HeckeCheckRequest(BaseModel):
    systems: Optional[list[str]] = None
    q: Optional[QInput] = None
    seed: int = 0


class HpolyRequest(BaseModel):
    graph: GraphSpec
    n: Optional[int] = None


class ChiRequest(BaseModel):
    graph: GraphSpec


class ExistenceRequest(BaseModel):
    k: int = 4
    m: int = Field(default=10, ge=1)


class VerifyRequest(BaseModel):
    suite: str = "all"


class ScanRequest(BaseModel):
    system: SystemSpec
    q_min: str
    q_max: str
    steps: int = Field(default=20, ge=1, le=2000)


# -- responses ----------------------------------------------------------------------


class ServiceInfo(BaseModel):
    name: str
    schema_version: str
    endpoints: list[str]


class RationalValue(BaseModel):
    exact: str
    decimal: str


class GrowthResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    variables: list[str]
    numerator: str
    denominator: str
    series: Optional[list[dict]] = None


class RhoResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    kind: str  # "infinite-radius" | "root"
    exact: Optional[str] = None
    low: Optional[str] = None
    high: Optional[str] = None
    decimal: Optional[str] = None
    interval_width: Optional[str] = None
    multiplicity: Optional[int] = None
    reciprocal_low: Optional[str] = None
    reciprocal_high: Optional[str] = None
    note: Optional[str] = None


class RegionResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    tag: str
    q: dict[str, str]
    witness: dict


class BettiResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    degrees: dict[str, RationalValue]
    region: str
    method: str
    euler: RationalValue
    cochain_dims: list[str]
    q: dict[str, str]


class EulerResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    value: RationalValue
    q: dict[str, str]


class BallResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    histogram: list[int]
    complete: bool
    total: int
    elements: Optional[list[list[str]]] = None


class NormalFormResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    word: str
    length: int
    descents: list[str]


class CheckRow(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class CheckTableResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    passed: bool
    checks: list[CheckRow]


class HpolyResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    f_coefficients: list[str]
    h_coefficients: list[str]
    identity_holds: bool
    inverse_numerator: str
    inverse_denominator: str


class ChiResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    numerator: str
    denominator: str


class RootRow(BaseModel):
    exact: Optional[str] = None
    low: str
    high: str
    decimal: str
    multiplicity: int


class ExistenceResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    m: int
    half_capped_numerator: list[str]
    glued_numerator: list[str]
    half_capped_roots: list[RootRow]
    glued_roots: list[RootRow]
    chi_glued: str
    chi_half_capped: str


class ScanRow(BaseModel):
    q: str
    region: str
    degrees: Optional[dict[str, str]] = None
    error: Optional[str] = None


class ScanResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    rows: list[ScanRow]


class SystemsResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    systems: list[str]
    complexes: list[str]


class ErrorBody(BaseModel):
    type: str
    message: str
    detail: Optional[dict] = None
