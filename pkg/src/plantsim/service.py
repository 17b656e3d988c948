"""Residual service accounting.

Every alive source splits its service evenly across the alive users it
can still reach by a directed path in the operated graph; a source with
nobody left to serve contributes nothing.  Arithmetic is exact
(rational) internally and rounded once at the report boundary, so the
conservation law survives the float conversion.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .model import NodeRole, PlantGraph, SwitchState, check_state_covers


@dataclass(frozen=True)
class ServiceReport:
    per_user: dict[str, float]
    total: float
    per_source_user_count: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "per_user": dict(self.per_user),
            "total": self.total,
            "per_source_user_count": dict(self.per_source_user_count),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ServiceReport":
        return cls(dict(data["per_user"]), data["total"],
                   {k: int(v) for k, v in data["per_source_user_count"].items()})


def _reachable_users(graph: PlantGraph, start: str, alive: frozenset[str],
                     off: frozenset[str]) -> list[str]:
    seen = {start}
    queue = deque([start])
    found = []
    while queue:
        u = queue.popleft()
        if graph.node(u).role == NodeRole.USER:
            found.append(u)
        for edge in graph.successors(u):
            v = edge.head
            if v in seen or v not in alive or v in off:
                continue
            seen.add(v)
            queue.append(v)
    return found


def compute_service(graph: PlantGraph, alive: Iterable[str],
                    state: SwitchState) -> ServiceReport:
    """Service received per alive user under `state`, given the alive set."""
    alive_set = frozenset(alive)
    unknown = sorted(alive_set - graph.id_set)
    if unknown:
        raise KeyError(f"no node {unknown[0]!r} in graph")
    check_state_covers(graph, state)

    off = frozenset(sid for sid in graph.switch_ids if not state[sid])
    per_user: dict[str, Fraction] = {
        u.id: Fraction(0) for u in graph.users if u.id in alive_set
    }
    counts: dict[str, int] = {}
    total = Fraction(0)

    for src in graph.sources:
        if src.id not in alive_set:
            counts[src.id] = 0
            continue
        users = _reachable_users(graph, src.id, alive_set, off)
        counts[src.id] = len(users)
        if not users:
            continue
        share = Fraction(src.source_service) / len(users)
        for uid in users:
            per_user[uid] += share
        total += Fraction(src.source_service)

    return ServiceReport(
        per_user={uid: float(v) for uid, v in sorted(per_user.items())},
        total=float(total),
        per_source_user_count=dict(sorted(counts.items())),
    )
