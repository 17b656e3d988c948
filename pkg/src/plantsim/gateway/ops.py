"""Orchestration shared by the HTTP handlers and the CLI.

Both front ends funnel through these functions, so identical inputs
produce identical reports down to the byte.
"""
from __future__ import annotations

import json
from typing import Callable

from ..measures import all_pairs_distances, measures
from ..model import PlantGraph, SwitchState, effective_graph
from ..optimizer import EvaluatedState, FaultScenario
from ..runner import run_scenario
from ..service import compute_service
from .schemas import (BaseStateName, OptimizeRequest, ServiceRequest,
                      SimulateRequest)


def build_candidate(graph: PlantGraph, base_state: BaseStateName,
                    switches: dict[str, bool]) -> SwitchState:
    """Resolve a base-state name plus individual overrides to a full state."""
    if base_state == "initial":
        state = graph.initial_switch_state()
    else:
        state = SwitchState.uniform(graph, base_state == "all-true")
    if switches:
        unknown = sorted(set(switches) - set(graph.switch_ids))
        if unknown:
            raise KeyError(f"no switch {unknown[0]!r} in graph")
        state = state.replaced(switches)
    return state


def render_report_json(report: dict) -> str:
    return json.dumps(report, indent=2)


def simulate_report(graph: PlantGraph, request: SimulateRequest) -> dict:
    scenario = FaultScenario(frozenset(request.perturb),
                             graph.initial_switch_state(),
                             request.weights.to_weights())
    candidate = build_candidate(graph, request.base_state, request.switches)
    report = run_scenario(graph, scenario, mode="fixed-state", candidate=candidate)
    return report.to_dict()


def optimize_report(graph: PlantGraph, request: OptimizeRequest,
                    on_generation: Callable[[int, EvaluatedState], None] | None = None,
                    should_stop: Callable[[], bool] | None = None) -> dict:
    scenario = FaultScenario(frozenset(request.perturb),
                             graph.initial_switch_state(),
                             request.weights.to_weights())
    report = run_scenario(graph, scenario, mode=request.mode,
                          params=request.params.to_params(),
                          oracle_cap=request.cap,
                          on_generation=on_generation, should_stop=should_stop)
    return report.to_dict()


def measures_payload(graph: PlantGraph) -> dict:
    """Baseline measures and service under the stored initial state."""
    state = graph.initial_switch_state()
    operated = effective_graph(graph, state)
    mset = measures(operated, all_pairs_distances(operated))
    service = compute_service(graph, graph.id_set, state)
    return {
        "fingerprint": graph.fingerprint(),
        "measures": mset.to_dict(),
        "service": service.to_dict(),
    }


def service_payload(graph: PlantGraph, request: ServiceRequest) -> dict:
    """Service under an arbitrary switch state with nothing broken."""
    state = build_candidate(graph, request.base_state, request.switches)
    service = compute_service(graph, graph.id_set, state)
    return {
        "fingerprint": graph.fingerprint(),
        "state": state.as_mapping(),
        "service": service.to_dict(),
    }
