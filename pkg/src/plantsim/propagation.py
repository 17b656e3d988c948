"""Damage propagation across a plant under a given switch configuration.

Break rules, applied to the graph as operated (False switches have no
in-edges):
  * a perturbed node breaks unless it is passive resistant;
  * a node breaks when any SINGLE or AND in-edge has a broken tail;
  * a node with OR in-edges breaks only when every OR tail is broken;
  * passive resistant nodes never break;
  * a True switch breaks like any node, a False switch cannot be
    reached through its removed in-edges.
The result is the least fixed point; the worklist processes node ids in
ascending order so traces are reproducible.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable

from .model import EdgeLogic, NodeRole, PlantGraph, SwitchState, check_state_covers


@dataclass(frozen=True)
class BreakEvent:
    step: int
    node: str
    cause: str            # "perturbed" | "dependency" | "or-exhausted"
    via: str | None = None
    logic: str | None = None

    def to_dict(self) -> dict:
        out = {"step": self.step, "event": self.cause, "node": self.node}
        if self.via is not None:
            out["via"] = self.via
        if self.logic is not None:
            out["logic"] = self.logic
        return out


@dataclass(frozen=True)
class PropagationResult:
    broken: frozenset[str]
    alive: frozenset[str]
    n_alive: int
    trace: tuple[BreakEvent, ...]


def propagate(graph: PlantGraph, scenario_nodes: Iterable[str],
              state: SwitchState) -> PropagationResult:
    """Run the cascade started by perturbing `scenario_nodes`."""
    targets = sorted(set(scenario_nodes))
    if not targets:
        raise ValueError("empty scenario: at least one perturbed node required")
    unknown = [t for t in targets if not graph.has_node(t)]
    if unknown:
        raise KeyError(f"no node {unknown[0]!r} in graph")
    check_state_covers(graph, state)

    off = {sid for sid in graph.switch_ids if not state[sid]}
    # OR in-edge tails per head; in-edge sets are only ever removed whole
    # (False switch), so the static sets are valid for every other head.
    or_tails: dict[str, tuple[str, ...]] = {}
    for nid in graph.node_ids:
        tails = tuple(e.tail for e in graph.predecessors(nid) if e.logic == EdgeLogic.OR)
        if tails:
            or_tails[nid] = tails

    broken: set[str] = set()
    trace: list[BreakEvent] = []
    heap: list[str] = []
    step = 0

    for t in targets:
        if graph.node(t).passive_resistant:
            continue
        broken.add(t)
        trace.append(BreakEvent(step, t, "perturbed"))
        step += 1
        heapq.heappush(heap, t)

    while heap:
        u = heapq.heappop(heap)
        for edge in graph.successors(u):
            v = edge.head
            if v in broken or v in off:
                continue
            if graph.node(v).passive_resistant:
                continue
            event = None
            if edge.logic != EdgeLogic.OR:
                event = BreakEvent(step, v, "dependency", via=u, logic=edge.logic.value)
            elif all(t in broken for t in or_tails[v]):
                event = BreakEvent(step, v, "or-exhausted", via=u, logic=edge.logic.value)
            if event is not None:
                broken.add(v)
                trace.append(event)
                step += 1
                heapq.heappush(heap, v)

    alive = frozenset(graph.id_set - broken)
    return PropagationResult(frozenset(broken), alive, len(alive), tuple(trace))


def broken_roles(graph: PlantGraph, result: PropagationResult) -> dict[str, int]:
    """Broken-node tally per role; convenience for reports."""
    counts = {role.value: 0 for role in NodeRole}
    for nid in result.broken:
        counts[graph.node(nid).role.value] += 1
    return counts
