"""Request and response models of the HTTP service.

Rationals travel as ``num/den`` strings so the wire format stays exact;
series exponents travel as integer numerators over the model's common
denominator.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class ProximitySpec(BaseModel):
    """Chain size plus the optional extra proximity of each satellite center."""

    n: int
    satellite: dict[str, int] = Field(default_factory=dict)


class ExplicitModelSpec(BaseModel):
    """Chain plus claimed divisor vectors, for verification of external data."""

    n: int
    satellite: dict[str, int] = Field(default_factory=dict)
    valuation_divisor: Optional[list[int]] = None
    canonical: Optional[list[int]] = None


class ModelSource(BaseModel):
    """Exactly one way of describing the ideal must be present."""

    maximal_contact: Optional[list[int]] = None
    proximity: Optional[ProximitySpec] = None
    model: Optional[ExplicitModelSpec] = None

    def as_input(self) -> dict:
        return self.model_dump(exclude_none=True)


class InfoRequest(BaseModel):
    source: ModelSource


class JumpsRequest(BaseModel):
    source: ModelSource
    bound: str = "3"


class IdealRequest(BaseModel):
    source: ModelSource
    at: str


class SeriesRequest(BaseModel):
    source: ModelSource
    bound: str = "3"
    check: bool = False


class CorpusSpec(BaseModel):
    max_multiplicity: int
    max_terminal: int


class VerifyRequest(BaseModel):
    source: Optional[ModelSource] = None
    corpus: Optional[CorpusSpec] = None
    bound: str = "3"
    threads: Optional[int] = None


class InfoResponse(BaseModel):
    n: int
    maximal_contact: list[int]
    satellite: dict[str, int]
    g: int
    g_star: int
    running_gcds: list[int]
    stage_quotients: list[int]
    valuation_divisor: list[int]
    canonical: list[int]
    multiplicities: list[int]
    intersection_matrix: list[list[int]]
    dual_graph: list[list[int]]
    star_vertices: list[int]
    dead_vertices: list[int]
    subtrees: list[list[int]]
    contributors: list[int]
    log_canonical_threshold: str
    terminal_is_satellite: bool


class WitnessGroup(BaseModel):
    family: int
    tuples: list[list[int]]


class JumpRow(BaseModel):
    value: str
    memberships: list[int]
    witnesses: list[WitnessGroup]
    contributing: list[int]
    dimension: int
    in_omega: bool


class JumpsResponse(BaseModel):
    bound: str
    count: int
    rows: list[JumpRow]


class IdealResponse(BaseModel):
    at: str
    divisor: list[int]
    multiplicities: list[int]
    colength: int


class ClosedFormPayload(BaseModel):
    simple: list[list[int]]
    omega: list[list[int]]


class SeriesCheck(BaseModel):
    equal: bool
    detail: str


class SeriesResponse(BaseModel):
    bound: str
    denominator: int
    closed_form: ClosedFormPayload
    truncation: list[list[int]]
    check: Optional[SeriesCheck] = None


class VerifyCheckRow(BaseModel):
    model: str
    name: str
    passed: bool
    detail: str = ""


class VerifyResponse(BaseModel):
    passed: bool
    models: int
    total_checks: int
    failed_checks: int
    checks: list[VerifyCheckRow]
