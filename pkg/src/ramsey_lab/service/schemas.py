"""Request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator

from ..graphs import Graph, build_graph


class GraphPayload(BaseModel):
    """A graph as a vertex count plus an edge list (0-indexed, u < v)."""

    vertex_count: int = Field(ge=0)
    edges: list[tuple[int, int]] = Field(default_factory=list)

    @classmethod
    def from_graph(cls, g: Graph) -> "GraphPayload":
        return cls(vertex_count=g.vertex_count, edges=g.edges())

    def to_graph(self) -> Graph:
        return build_graph(self.vertex_count, self.edges)


class WitnessPayload(BaseModel):
    core: list[int]
    leaves: list[int]


class SampleRequest(BaseModel):
    vertex_count: int = Field(ge=0, le=65536)
    p: float = Field(ge=0.0, le=1.0)
    seed: int = 0


class SampleResponse(BaseModel):
    graph: GraphPayload
    edge_count: int


class HalveRequest(BaseModel):
    graph: GraphPayload
    seed: int = 0


class HalveResponse(BaseModel):
    red: GraphPayload
    blue: GraphPayload


class ContainmentRequest(BaseModel):
    pattern: Literal["kmn", "book"]
    m: int = Field(ge=1)
    n: int = Field(ge=1)
    graph: GraphPayload


class ContainmentResponse(BaseModel):
    found: bool
    witness: WitnessPayload | None = None


class ArrowRequest(BaseModel):
    mode: Literal["certificate", "exhaustive", "refute"]
    pattern: Literal["kmn", "book"]
    m: int = Field(ge=1)
    n: int = Field(ge=1)
    graph: GraphPayload
    trials: int = Field(default=128, ge=1)
    seed: int = 0


class ArrowResponse(BaseModel):
    verdict: Literal["yes", "no", "unknown"]
    tier: Literal["cert", "exact", "refute"]
    exact: bool
    red_edges: int | None = None
    blue_edges: int | None = None


class ThresholdsRequest(BaseModel):
    c: float = Field(gt=1.0)
    m: int = Field(ge=1)
    n: int = Field(ge=2)
    omega: float | None = Field(default=None, gt=0.0)
    M: float | None = Field(default=None, gt=0.0)


class ThresholdsResponse(BaseModel):
    N: int
    m_min: float
    omega: float
    M: float
    p_upper: float
    p_upper_clamped: bool
    p_lower: float | None
    p_lower_defined: bool


class SweepRequest(BaseModel):
    c: float = Field(gt=1.0)
    m: int = Field(ge=1)
    n: int = Field(ge=1)
    event: str
    pattern: Literal["kmn", "book"] | None = None
    rule: Literal["raw", "halved"] | None = None
    p_grid: list[float]
    trials: int = Field(default=100, ge=1)
    seed: int = 0
    refute_trials: int = Field(default=128, ge=1)
    workers: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _grid_in_range(self):
        if not self.p_grid:
            raise ValueError("p_grid must be non-empty")
        for p in self.p_grid:
            if not 0.0 <= p <= 1.0:
                raise ValueError("grid values must lie in [0, 1]")
        return self


class SweepRowModel(BaseModel):
    p: float
    trials: int
    successes: int
    p_hat: float
    ci_low: float
    ci_high: float
    seed: int


class SweepResponse(BaseModel):
    N: int
    rows: list[SweepRowModel]
    csv: str


class VerifyHalvingRequest(BaseModel):
    vertex_count: int = Field(ge=2)
    p: float = Field(ge=0.0, le=1.0)
    samples: int = Field(ge=1000)
    seed: int = 0
    red_bias: float = Field(default=0.5, ge=0.0, le=1.0)


class VerifyHalvingResponse(BaseModel):
    vertex_count: int
    p: float
    samples: int
    red_bias: float
    statistic: float
    dof: int
    p_value: float
    bin_count: int


class PairModel(BaseModel):
    x: list[int]
    y: list[int]


class DensityRequest(BaseModel):
    graph: GraphPayload
    p: float = Field(ge=0.0, le=1.0)
    pairs: list[PairModel]


class PairDensityModel(BaseModel):
    x_size: int
    y_size: int
    density: float
    passes: bool


class DensityResponse(BaseModel):
    threshold: float
    rows: list[PairDensityModel]
    all_pass: bool
