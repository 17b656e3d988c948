"""Random plant synthesis for experiments.

Pipeline: sample a directed G(n, p) skeleton with unit weights, classify
roles from degrees, then derive switch and OR-edge variants.  Everything
is seeded and deterministic; the same recipe always yields byte-identical
documents.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .model import Edge, EdgeLogic, Node, NodeRole, PlantGraph


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class GenerationRecipe:
    """Reproducible description of one synthetic plant family."""

    n: int
    seed: int
    p: float | None = None              # edge probability, defaults to 1/n
    switch_percentages: tuple[float, ...] = field(default_factory=tuple)
    or_fraction: float = 0.0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        p = self.edge_probability
        if not 0.0 < p <= 1.0:
            raise ValueError("p must lie in (0, 1]")
        pcts = tuple(self.switch_percentages)
        if list(pcts) != sorted(pcts):
            raise ValueError("switch_percentages must be ascending")
        for pct in pcts:
            if not 0.0 < pct < 1.0:
                raise ValueError("switch percentages must lie in (0, 1)")
        if not 0.0 <= self.or_fraction <= 1.0:
            raise ValueError("or_fraction must lie in [0, 1]")
        object.__setattr__(self, "switch_percentages", pcts)

    @property
    def edge_probability(self) -> float:
        return self.p if self.p is not None else 1.0 / self.n

    def to_dict(self) -> dict:
        return {"n": self.n, "seed": self.seed, "p": self.p,
                "switch_percentages": list(self.switch_percentages),
                "or_fraction": self.or_fraction}

    @classmethod
    def from_dict(cls, data: dict) -> "GenerationRecipe":
        return cls(n=int(data["n"]), seed=int(data["seed"]), p=data.get("p"),
                   switch_percentages=tuple(data.get("switch_percentages", ())),
                   or_fraction=data.get("or_fraction", 0.0))


def generate_gnp(n: int, p: float, seed: int) -> PlantGraph:
    """Directed G(n, p) skeleton: every node a HUB, unit weights.

    Node ids are zero-padded so lexicographic order matches numeric
    order.  Edge logic falls out of head in-degree (1 -> SINGLE,
    more -> AND).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0.0 < p <= 1.0:
        raise ValueError("p must lie in (0, 1]")
    rng = random.Random(seed)
    width = len(str(n - 1))
    ids = [f"n{i:0{width}d}" for i in range(n)]
    pairs = []
    for tail in ids:
        for head in ids:
            if tail != head and rng.random() < p:
                pairs.append((tail, head))
    indeg: dict[str, int] = {}
    for _, head in pairs:
        indeg[head] = indeg.get(head, 0) + 1
    edges = [Edge(t, h, 1.0,
                  EdgeLogic.SINGLE if indeg[h] == 1 else EdgeLogic.AND)
             for t, h in pairs]
    nodes = [Node(nid, NodeRole.HUB) for nid in ids]
    return PlantGraph(nodes, edges)


def classify_roles(graph: PlantGraph, source_service: float = 1.0) -> PlantGraph:
    """Assign roles from degrees: feeders become sources, sinks users.

    in-degree 0 -> SOURCE (service `source_service`), out-degree 0 ->
    USER, everything else HUB.  Isolated nodes count as sources.
    """
    nodes = []
    for n in graph.nodes:
        if graph.in_degree(n.id) == 0:
            nodes.append(Node(n.id, NodeRole.SOURCE, n.area, n.passive_resistant,
                              source_service))
        elif graph.out_degree(n.id) == 0:
            nodes.append(Node(n.id, NodeRole.USER, n.area, n.passive_resistant))
        else:
            nodes.append(Node(n.id, NodeRole.HUB, n.area, n.passive_resistant))
    return PlantGraph(nodes, graph.edges)


def promote_switches(graph: PlantGraph, percentages: tuple[float, ...] | list[float],
                     seed: int) -> list[PlantGraph]:
    """One graph per percentage, with that share of HUBs promoted to SWITCH.

    A single seeded shuffle of the HUB ids is drawn once and each
    percentage takes a prefix, so smaller selections nest inside larger
    ones.  Promoted switches start True; counts round half-up.
    """
    pct_list = list(percentages)
    if pct_list != sorted(pct_list):
        raise ValueError("percentages must be ascending")
    for pct in pct_list:
        if not 0.0 <= pct <= 1.0:
            raise ValueError("percentages must lie in [0, 1]")
    hubs = [n.id for n in graph.nodes if n.role == NodeRole.HUB]
    rng = random.Random(seed)
    rng.shuffle(hubs)
    out = []
    for pct in pct_list:
        count = _round_half_up(pct * len(hubs))
        chosen = set(hubs[:count])
        nodes = [Node(n.id, NodeRole.SWITCH, n.area, n.passive_resistant,
                      0.0, True) if n.id in chosen else n
                 for n in graph.nodes]
        out.append(PlantGraph(nodes, graph.edges))
    return out


def convert_or_edges(graph: PlantGraph, fraction: float, seed: int) -> PlantGraph:
    """Relabel a seeded random share of the AND edges as OR.

    SINGLE edges are never touched; the sample size is
    round_half_up(fraction * |AND edges|).
    """
    if not 0.0 <= fraction <= 1.0:
        raise ValueError("fraction must lie in [0, 1]")
    and_edges = [e for e in graph.edges if e.logic == EdgeLogic.AND]
    count = _round_half_up(fraction * len(and_edges))
    rng = random.Random(seed)
    chosen = set(rng.sample(range(len(and_edges)), count))
    flagged = {(e.tail, e.head) for i, e in enumerate(and_edges) if i in chosen}
    edges = [Edge(e.tail, e.head, e.weight, EdgeLogic.OR)
             if (e.tail, e.head) in flagged else e
             for e in graph.edges]
    return PlantGraph(graph.nodes, edges)


def build_plants(recipe: GenerationRecipe) -> list[PlantGraph]:
    """Full pipeline for a recipe.

    Returns the classified base graph followed by one switched variant
    per percentage (all sharing the same seed-derived shuffle).
    """
    base = classify_roles(generate_gnp(recipe.n, recipe.edge_probability, recipe.seed))
    if recipe.or_fraction > 0:
        base = convert_or_edges(base, recipe.or_fraction, recipe.seed)
    variants = promote_switches(base, recipe.switch_percentages, recipe.seed)
    return [base, *variants]
