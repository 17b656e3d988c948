"""Scenario orchestration: one entry point that diagnoses, reconfigures
and reports.

A run always produces the same DiagnosisReport shape regardless of mode
(fixed-state, genetic, exhaustive): baseline measures and service, the
chosen switch configuration with its score, the post-fault picture, and
a step trace of what flipped and what broke.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .measures import MeasureSet, all_pairs_distances, measures
from .model import PlantGraph, SwitchState, effective_graph
from .optimizer import (EvaluatedState, FaultScenario, GAParams,
                        GenerationStat, brute_force_best, evaluate, evolve)
from .propagation import propagate
from .service import ServiceReport, compute_service

REPORT_VERSION = 1
MODES = ("fixed-state", "genetic", "exhaustive")


@dataclass(frozen=True)
class GraphSnapshot:
    service: ServiceReport
    measures: MeasureSet

    def to_dict(self) -> dict:
        return {"service": self.service.to_dict(), "measures": self.measures.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "GraphSnapshot":
        return cls(ServiceReport.from_dict(data["service"]),
                   MeasureSet.from_dict(data["measures"]))


@dataclass(frozen=True)
class PostFaultView(GraphSnapshot):
    broken: tuple[str, ...]
    alive: tuple[str, ...]
    n_alive: int

    def to_dict(self) -> dict:
        out = super().to_dict()
        out.update({"broken": list(self.broken), "alive": list(self.alive),
                    "n_alive": self.n_alive})
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "PostFaultView":
        return cls(ServiceReport.from_dict(data["service"]),
                   MeasureSet.from_dict(data["measures"]),
                   tuple(data["broken"]), tuple(data["alive"]), int(data["n_alive"]))


@dataclass(frozen=True)
class DiagnosisReport:
    report_version: int
    graph_fingerprint: str
    mode: str
    scenario: FaultScenario
    params: GAParams | None
    baseline: GraphSnapshot
    chosen_state: EvaluatedState
    all_best_states: tuple[EvaluatedState, ...] | None
    post: PostFaultView
    ga_log: tuple[GenerationStat, ...] | None
    step_trace: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {
            "report_version": self.report_version,
            "graph_fingerprint": self.graph_fingerprint,
            "mode": self.mode,
            "scenario": {
                "perturbed": sorted(self.scenario.perturbed),
                "initial_state": self.scenario.initial_state.as_mapping(),
                "weights": self.scenario.weights.to_dict(),
            },
            "params": self.params.to_dict() if self.params else None,
            "baseline": self.baseline.to_dict(),
            "chosen_state": self.chosen_state.to_dict(),
            "all_best_states": ([ev.to_dict() for ev in self.all_best_states]
                                if self.all_best_states is not None else None),
            "post": self.post.to_dict(),
            "ga_log": ([g.to_dict() for g in self.ga_log]
                       if self.ga_log is not None else None),
            "step_trace": [dict(ev) for ev in self.step_trace],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DiagnosisReport":
        from .optimizer import FitnessWeights
        sc = data["scenario"]
        scenario = FaultScenario(frozenset(sc["perturbed"]),
                                 SwitchState.from_mapping(sc["initial_state"]),
                                 FitnessWeights.from_dict(sc["weights"]))
        return cls(
            report_version=int(data["report_version"]),
            graph_fingerprint=data["graph_fingerprint"],
            mode=data["mode"],
            scenario=scenario,
            params=GAParams.from_dict(data["params"]) if data.get("params") else None,
            baseline=GraphSnapshot.from_dict(data["baseline"]),
            chosen_state=EvaluatedState.from_dict(data["chosen_state"]),
            all_best_states=(tuple(EvaluatedState.from_dict(d)
                                   for d in data["all_best_states"])
                             if data.get("all_best_states") is not None else None),
            post=PostFaultView.from_dict(data["post"]),
            ga_log=(tuple(GenerationStat(int(g["generation"]), g["best"], g["mean"])
                          for g in data["ga_log"])
                    if data.get("ga_log") is not None else None),
            step_trace=tuple(data["step_trace"]),
        )


def _rank_key(ev: EvaluatedState):
    return (ev.fitness, ev.n_actions, ev.state.values)


def _post_measures(graph: PlantGraph, state: SwitchState,
                   broken: frozenset[str]) -> MeasureSet:
    # same node universe as the baseline; broken nodes just lose all edges
    operated = effective_graph(graph, state)
    kept = [e for e in operated.edges if e.tail not in broken and e.head not in broken]
    damaged = PlantGraph(operated.nodes, kept, check_logic=False)
    return measures(damaged, all_pairs_distances(damaged))


def run_scenario(graph: PlantGraph, scenario: FaultScenario,
                 mode: str = "fixed-state",
                 candidate: SwitchState | None = None,
                 params: GAParams | None = None,
                 oracle_cap: int = 20,
                 on_generation: Callable[[int, EvaluatedState], None] | None = None,
                 should_stop: Callable[[], bool] | None = None) -> DiagnosisReport:
    """Diagnose a fault and (optionally) search for a reconfiguration.

    fixed-state scores `candidate` (default: the initial state);
    genetic runs the GA with `params`; exhaustive enumerates every
    configuration up to `oracle_cap` switches and also reports every
    co-optimal state.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    missing = sorted(scenario.perturbed - graph.id_set)
    if missing:
        raise KeyError(f"no node {missing[0]!r} in graph")

    operated = effective_graph(graph, scenario.initial_state)
    baseline = GraphSnapshot(
        service=compute_service(graph, graph.id_set, scenario.initial_state),
        measures=measures(operated, all_pairs_distances(operated)),
    )

    all_best: tuple[EvaluatedState, ...] | None = None
    ga_log: tuple[GenerationStat, ...] | None = None
    used_params: GAParams | None = None

    if mode == "fixed-state":
        chosen = evaluate(graph, scenario,
                          candidate if candidate is not None else scenario.initial_state)
    elif mode == "genetic":
        used_params = params if params is not None else GAParams()
        outcome = evolve(graph, scenario, used_params,
                         on_generation=on_generation, should_stop=should_stop)
        ga_log = tuple(outcome.log)
        # doing nothing is always available; never report worse than that
        baseline_eval = evaluate(graph, scenario, scenario.initial_state)
        chosen = min((outcome.best, baseline_eval), key=_rank_key)
    else:
        found = brute_force_best(graph, scenario, cap=oracle_cap,
                                 should_stop=should_stop)
        all_best = tuple(found)
        chosen = min(found, key=_rank_key)

    prop = propagate(graph, scenario.perturbed, chosen.state)
    post = PostFaultView(
        service=compute_service(graph, prop.alive, chosen.state),
        measures=_post_measures(graph, chosen.state, prop.broken),
        broken=tuple(sorted(prop.broken)),
        alive=tuple(sorted(prop.alive)),
        n_alive=prop.n_alive,
    )

    trace: list[dict] = []
    step = 0
    initial = scenario.initial_state
    for sid in chosen.state.switch_ids:
        if chosen.state[sid] != initial[sid]:
            trace.append({"step": step, "event": "flip", "switch": sid,
                          "from": initial[sid], "to": chosen.state[sid]})
            step += 1
    for ev in prop.trace:
        entry = ev.to_dict()
        entry["step"] += step
        trace.append(entry)

    return DiagnosisReport(
        report_version=REPORT_VERSION,
        graph_fingerprint=graph.fingerprint(),
        mode=mode,
        scenario=scenario,
        params=used_params,
        baseline=baseline,
        chosen_state=chosen,
        all_best_states=all_best,
        post=post,
        ga_log=ga_log,
        step_trace=tuple(trace),
    )


@dataclass(frozen=True)
class MeasuresDelta:
    """Per-node after-minus-before measure differences."""

    global_efficiency: float
    in_degree: dict[str, int]
    out_degree: dict[str, int]
    closeness: dict[str, float]
    betweenness: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "global_efficiency": self.global_efficiency,
            "in_degree": dict(self.in_degree),
            "out_degree": dict(self.out_degree),
            "closeness": dict(self.closeness),
            "betweenness": dict(self.betweenness),
        }


def compare_measures(before: MeasureSet, after: MeasureSet) -> MeasuresDelta:
    if set(before.in_degree) != set(after.in_degree):
        raise ValueError("measure sets cover different node universes")
    return MeasuresDelta(
        global_efficiency=after.global_efficiency - before.global_efficiency,
        in_degree={k: after.in_degree[k] - before.in_degree[k] for k in before.in_degree},
        out_degree={k: after.out_degree[k] - before.out_degree[k] for k in before.out_degree},
        closeness={k: after.closeness[k] - before.closeness[k] for k in before.closeness},
        betweenness={k: after.betweenness[k] - before.betweenness[k] for k in before.betweenness},
    )


def render_step_trace(trace) -> str:
    """Human-readable rendering of a report's step trace."""
    lines = []
    for ev in trace:
        kind = ev.get("event")
        if kind == "flip":
            lines.append(f"step {ev['step']}: switch {ev['switch']} "
                         f"{ev['from']} -> {ev['to']}")
        elif kind == "perturbed":
            lines.append(f"step {ev['step']}: node {ev['node']} perturbed")
        else:
            via = f" via {ev['via']} ({ev['logic']})" if ev.get("via") else ""
            lines.append(f"step {ev['step']}: node {ev['node']} broken{via}")
    return "\n".join(lines)
