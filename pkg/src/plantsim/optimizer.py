"""Switch reconfiguration search.

A candidate configuration is scored by propagating the fault under it:

    fitness = w1 * n_actions - w2 * s_tot - w3 * n_alive

lower is better; n_actions counts flips away from the pre-fault state.
Two searches are provided: an exhaustive oracle for small switch counts
and a seeded genetic algorithm for the rest.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .model import PlantGraph, SwitchState
from .propagation import propagate
from .service import compute_service


class EvolveCancelled(RuntimeError):
    """Raised when a caller-supplied stop hook interrupts a GA run."""


@dataclass(frozen=True)
class FitnessWeights:
    w1: float = 1.0
    w2: float = 1.0
    w3: float = 1.0

    def __post_init__(self):
        for name in ("w1", "w2", "w3"):
            v = getattr(self, name)
            if v < 0:
                raise ValueError(f"{name} must be non-negative")

    def to_dict(self) -> dict:
        return {"w1": self.w1, "w2": self.w2, "w3": self.w3}

    @classmethod
    def from_dict(cls, data: dict) -> "FitnessWeights":
        return cls(data.get("w1", 1.0), data.get("w2", 1.0), data.get("w3", 1.0))


@dataclass(frozen=True)
class FaultScenario:
    """What broke, what the switches looked like before, and the weights."""

    perturbed: frozenset[str]
    initial_state: SwitchState
    weights: FitnessWeights = FitnessWeights()

    def __post_init__(self):
        object.__setattr__(self, "perturbed", frozenset(self.perturbed))
        if not self.perturbed:
            raise ValueError("empty scenario: at least one perturbed node required")


@dataclass(frozen=True)
class EvaluatedState:
    """One scored switch configuration."""

    state: SwitchState
    n_actions: int
    s_tot: float
    n_alive: int
    fitness: float

    def to_dict(self) -> dict:
        return {
            "state": self.state.as_mapping(),
            "n_actions": self.n_actions,
            "s_tot": self.s_tot,
            "n_alive": self.n_alive,
            "fitness": self.fitness,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvaluatedState":
        return cls(SwitchState.from_mapping(data["state"]), int(data["n_actions"]),
                   data["s_tot"], int(data["n_alive"]), data["fitness"])


@dataclass(frozen=True)
class GAParams:
    npop: int = 400
    ngen: int = 200
    indpb: float = 0.7
    tresh: float = 0.4
    nsel: int = 100
    seed: int = 0
    elitism: bool = True

    def __post_init__(self):
        if self.npop < 1:
            raise ValueError("npop must be >= 1")
        if self.ngen < 0:
            raise ValueError("ngen must be >= 0")
        if not 0 < self.nsel <= self.npop:
            raise ValueError("nsel must satisfy 0 < nsel <= npop")
        if not 0.0 <= self.indpb <= 1.0:
            raise ValueError("indpb must lie in [0, 1]")
        if not 0.0 <= self.tresh <= 1.0:
            raise ValueError("tresh must lie in [0, 1]")

    def to_dict(self) -> dict:
        return {"npop": self.npop, "ngen": self.ngen, "indpb": self.indpb,
                "tresh": self.tresh, "nsel": self.nsel, "seed": self.seed,
                "elitism": self.elitism}

    @classmethod
    def from_dict(cls, data: dict) -> "GAParams":
        return cls(**data)


@dataclass(frozen=True)
class GenerationStat:
    generation: int
    best: float
    mean: float

    def to_dict(self) -> dict:
        return {"generation": self.generation, "best": self.best, "mean": self.mean}


def n_actions(initial: SwitchState, candidate: SwitchState) -> int:
    """Hamming distance between two states over the same switch set."""
    if initial.switch_ids != candidate.switch_ids:
        raise ValueError("states cover different switch sets")
    return sum(a != b for a, b in zip(initial.values, candidate.values))


def evaluate(graph: PlantGraph, scenario: FaultScenario,
             candidate: SwitchState) -> EvaluatedState:
    result = propagate(graph, scenario.perturbed, candidate)
    report = compute_service(graph, result.alive, candidate)
    acts = n_actions(scenario.initial_state, candidate)
    w = scenario.weights
    fitness = w.w1 * acts - w.w2 * report.total - w.w3 * result.n_alive
    return EvaluatedState(candidate, acts, report.total, result.n_alive, fitness)


def _rank_key(ev: EvaluatedState):
    # ties: fewer actions, then lexicographic genome (False before True)
    return (ev.fitness, ev.n_actions, ev.state.values)


def brute_force_best(graph: PlantGraph, scenario: FaultScenario, cap: int = 20,
                     should_stop: Callable[[], bool] | None = None) -> list[EvaluatedState]:
    """Every fitness minimizer, by exhaustive enumeration of 2**k states.

    Returned in ascending genome order.  Refuses to run past `cap`
    switches (2**20 evaluations by default).
    """
    ids = graph.switch_ids
    if len(ids) > cap:
        raise ValueError(f"switch count {len(ids)} exceeds brute-force cap {cap}")
    best: list[EvaluatedState] = []
    best_fit: float | None = None
    for i, values in enumerate(itertools.product((False, True), repeat=len(ids))):
        if should_stop is not None and i % 256 == 0 and should_stop():
            raise EvolveCancelled("exhaustive search cancelled")
        ev = evaluate(graph, scenario, SwitchState(ids, values))
        if best_fit is None or ev.fitness < best_fit:
            best_fit = ev.fitness
            best = [ev]
        elif ev.fitness == best_fit:
            best.append(ev)
    return best


@dataclass
class EvolveResult:
    best: EvaluatedState
    log: list[GenerationStat] = field(default_factory=list)


def evolve(graph: PlantGraph, scenario: FaultScenario, params: GAParams,
           on_generation: Callable[[int, EvaluatedState], None] | None = None,
           should_stop: Callable[[], bool] | None = None) -> EvolveResult:
    """Genetic search over switch configurations.

    Per generation the nsel fittest survive; the population is refilled
    with offspring, each born from a single uniform draw r: crossover of
    two selected parents when r < tresh (both complementary children
    kept), otherwise an indpb-per-gene flip of one selected parent.
    With elitism the survivors stay in the population, so the best state
    found can never be lost.  Fully deterministic for a given seed.
    """
    ids = graph.switch_ids
    if not ids:
        raise ValueError("graph has no switches to evolve")
    rng = random.Random(params.seed)
    length = len(ids)

    cache: dict[tuple[bool, ...], EvaluatedState] = {}

    def score(values: tuple[bool, ...]) -> EvaluatedState:
        ev = cache.get(values)
        if ev is None:
            ev = evaluate(graph, scenario, SwitchState(ids, values))
            cache[values] = ev
        return ev

    population = [tuple(rng.random() < 0.5 for _ in range(length))
                  for _ in range(params.npop)]
    evaluated = [score(v) for v in population]
    best = min(evaluated, key=_rank_key)
    log = [GenerationStat(0, best.fitness,
                          sum(e.fitness for e in evaluated) / len(evaluated))]

    for gen in range(1, params.ngen + 1):
        if should_stop is not None and should_stop():
            raise EvolveCancelled(f"cancelled before generation {gen}")
        evaluated.sort(key=_rank_key)
        selected = [ev.state.values for ev in evaluated[:params.nsel]]

        offspring: list[tuple[bool, ...]] = list(selected) if params.elitism else []
        while len(offspring) < params.npop:
            if rng.random() < params.tresh:
                if len(selected) >= 2:
                    p1, p2 = rng.sample(selected, 2)
                else:
                    p1 = p2 = selected[0]
                mask = [rng.random() < 0.5 for _ in range(length)]
                offspring.append(tuple(a if m else b for a, b, m in zip(p1, p2, mask)))
                if len(offspring) < params.npop:
                    offspring.append(tuple(b if m else a for a, b, m in zip(p1, p2, mask)))
            else:
                parent = selected[rng.randrange(len(selected))]
                offspring.append(tuple(v ^ (rng.random() < params.indpb) for v in parent))

        population = offspring[:params.npop]
        evaluated = [score(v) for v in population]
        gen_best = min(evaluated, key=_rank_key)
        if _rank_key(gen_best) < _rank_key(best):
            best = gen_best
        log.append(GenerationStat(gen, best.fitness,
                                  sum(e.fitness for e in evaluated) / len(evaluated)))
        if on_generation is not None:
            on_generation(gen, best)

    return EvolveResult(best=best, log=log)
