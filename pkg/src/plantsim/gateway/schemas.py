"""Wire formats shared by the HTTP service and the CLI."""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict

from ..optimizer import FitnessWeights, GAParams

BaseStateName = Literal["initial", "all-true", "all-false"]


class WeightsModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    w1: float = 1.0
    w2: float = 1.0
    w3: float = 1.0

    def to_weights(self) -> FitnessWeights:
        return FitnessWeights(self.w1, self.w2, self.w3)


class GAParamsModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    npop: int = 400
    ngen: int = 200
    indpb: float = 0.7
    tresh: float = 0.4
    nsel: int = 100
    seed: int = 0
    elitism: bool = True

    def to_params(self) -> GAParams:
        return GAParams(npop=self.npop, ngen=self.ngen, indpb=self.indpb,
                        tresh=self.tresh, nsel=self.nsel, seed=self.seed,
                        elitism=self.elitism)


class SimulateRequest(BaseModel):
    """Fixed-state what-if: perturb nodes under an explicit switch state."""

    model_config = ConfigDict(extra="forbid")

    perturb: list[str]
    base_state: BaseStateName = "initial"
    switches: dict[str, bool] = {}
    weights: WeightsModel = WeightsModel()


class ServiceRequest(BaseModel):
    """Service snapshot under a switch state, no fault involved."""

    model_config = ConfigDict(extra="forbid")

    base_state: BaseStateName = "initial"
    switches: dict[str, bool] = {}


class OptimizeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    perturb: list[str]
    mode: Literal["genetic", "exhaustive"] = "genetic"
    weights: WeightsModel = WeightsModel()
    params: GAParamsModel = GAParamsModel()
    cap: int = 20


class UploadResponse(BaseModel):
    graph_id: str
    nodes: int
    edges: int
    switches: list[str]


class JobView(BaseModel):
    job_id: str
    graph_id: str
    status: Literal["queued", "running", "done", "failed", "cancelled"]
    progress: int
    total_generations: int
    best_fitness: float | None = None
    report_id: str | None = None
    error: str | None = None
