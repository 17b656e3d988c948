"""Shortest paths and structural measures for plant graphs.

Two independent all-pairs routes are kept side by side: repeated
Dijkstra (stdlib heap) and Floyd-Warshall (numpy row relaxation).  They
must agree entrywise and the tests hold them to that.  Efficiency,
closeness and betweenness are all directed and weighted.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .model import PlantGraph

_DENSITY_EXPONENT = 1.5  # Dijkstra below |E| = |N|**1.5, Floyd-Warshall above


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs distances plus predecessor links for path rebuilding.

    order fixes the row/column indexing (ascending node id);
    pred[i, j] is the index of j's predecessor on a shortest i->j path,
    -1 when j is unreachable from i (or i == j).
    """

    order: tuple[str, ...]
    dist: np.ndarray
    pred: np.ndarray

    def index(self, node_id: str) -> int:
        try:
            return self.order.index(node_id)
        except ValueError:
            raise KeyError(f"no node {node_id!r} in matrix") from None

    def distance(self, u: str, v: str) -> float:
        return float(self.dist[self.index(u), self.index(v)])


def _adjacency(graph: PlantGraph) -> tuple[tuple[str, ...], list[list[tuple[int, float]]]]:
    order = graph.node_ids
    idx = {nid: i for i, nid in enumerate(order)}
    adj: list[list[tuple[int, float]]] = []
    for nid in order:
        adj.append([(idx[e.head], e.weight) for e in graph.successors(nid)])
    return order, adj


def dijkstra_all_pairs(graph: PlantGraph) -> DistanceMatrix:
    order, adj = _adjacency(graph)
    n = len(order)
    dist = np.full((n, n), np.inf)
    pred = np.full((n, n), -1, dtype=np.int64)

    for s in range(n):
        drow = dist[s]
        prow = pred[s]
        drow[s] = 0.0
        settled = [False] * n
        heap = [(0.0, s)]
        while heap:
            d, u = heapq.heappop(heap)
            if settled[u]:
                continue
            settled[u] = True
            for v, w in adj[u]:
                if w <= 0:
                    raise ValueError("nonpositive edge weight")
                nd = d + w
                if nd < drow[v]:
                    drow[v] = nd
                    prow[v] = u
                    heapq.heappush(heap, (nd, v))
    return DistanceMatrix(order, dist, pred)


def floyd_warshall(graph: PlantGraph) -> DistanceMatrix:
    order, adj = _adjacency(graph)
    n = len(order)
    dist = np.full((n, n), np.inf)
    pred = np.full((n, n), -1, dtype=np.int64)
    np.fill_diagonal(dist, 0.0)
    for u, row in enumerate(adj):
        for v, w in row:
            if w <= 0:
                raise ValueError("nonpositive edge weight")
            dist[u, v] = w
            pred[u, v] = u

    for k in range(n):
        alt = dist[:, k, None] + dist[None, k, :]
        better = alt < dist
        if better.any():
            dist[better] = alt[better]
            pred[better] = np.broadcast_to(pred[k, :], (n, n))[better]
    return DistanceMatrix(order, dist, pred)


def all_pairs_distances(graph: PlantGraph, algorithm: str = "auto") -> DistanceMatrix:
    """Dispatch between the two routes; `auto` picks by edge density."""
    if algorithm == "auto":
        sparse = graph.edge_count < graph.node_count ** _DENSITY_EXPONENT
        algorithm = "dijkstra" if sparse else "floyd-warshall"
    if algorithm == "dijkstra":
        return dijkstra_all_pairs(graph)
    if algorithm == "floyd-warshall":
        return floyd_warshall(graph)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def shortest_path(matrix: DistanceMatrix, u: str, v: str) -> list[str]:
    """Node sequence of one shortest u->v path (inclusive)."""
    ui, vi = matrix.index(u), matrix.index(v)
    if ui == vi:
        return [u]
    if not np.isfinite(matrix.dist[ui, vi]):
        raise ValueError(f"node {v!r} is unreachable from {u!r}")
    chain = [vi]
    cur = vi
    while cur != ui:
        cur = int(matrix.pred[ui, cur])
        if cur < 0 or len(chain) > len(matrix.order):
            raise RuntimeError("corrupt predecessor chain")
        chain.append(cur)
    chain.reverse()
    return [matrix.order[i] for i in chain]


@dataclass(frozen=True)
class MeasureSet:
    """Structural measures for one graph snapshot.

    pair_efficiency is stored sparsely: pairs with zero efficiency
    (unreachable, or u == v) are simply absent.
    """

    global_efficiency: float
    in_degree: dict[str, int]
    out_degree: dict[str, int]
    closeness: dict[str, float]
    betweenness: dict[str, float]
    pair_efficiency: dict[str, dict[str, float]]

    def efficiency(self, u: str, v: str) -> float:
        return self.pair_efficiency.get(u, {}).get(v, 0.0)

    def to_dict(self) -> dict:
        return {
            "global_efficiency": self.global_efficiency,
            "in_degree": dict(self.in_degree),
            "out_degree": dict(self.out_degree),
            "closeness": dict(self.closeness),
            "betweenness": dict(self.betweenness),
            "pair_efficiency": {u: dict(row) for u, row in self.pair_efficiency.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MeasureSet":
        return cls(
            global_efficiency=data["global_efficiency"],
            in_degree={k: int(v) for k, v in data["in_degree"].items()},
            out_degree={k: int(v) for k, v in data["out_degree"].items()},
            closeness=dict(data["closeness"]),
            betweenness=dict(data["betweenness"]),
            pair_efficiency={u: dict(row) for u, row in data["pair_efficiency"].items()},
        )


def _betweenness(graph: PlantGraph) -> dict[str, float]:
    # Brandes accumulation, weighted and directed.
    order, adj = _adjacency(graph)
    n = len(order)
    score = [0.0] * n
    for s in range(n):
        dist = [np.inf] * n
        sigma = [0] * n
        preds: list[list[int]] = [[] for _ in range(n)]
        dist[s] = 0.0
        sigma[s] = 1
        settled_order: list[int] = []
        done = [False] * n
        heap = [(0.0, s)]
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            settled_order.append(u)
            for v, w in adj[u]:
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    sigma[v] = sigma[u]
                    preds[v] = [u]
                    heapq.heappush(heap, (nd, v))
                elif nd == dist[v]:
                    sigma[v] += sigma[u]
                    preds[v].append(u)
        delta = [0.0] * n
        for v in reversed(settled_order):
            for p in preds[v]:
                delta[p] += sigma[p] / sigma[v] * (1.0 + delta[v])
            if v != s:
                score[v] += delta[v]
    if n > 2:
        norm = (n - 1) * (n - 2)
        score = [x / norm for x in score]
    else:
        score = [0.0] * n
    return {order[i]: score[i] for i in range(n)}


def measures(graph: PlantGraph, matrix: DistanceMatrix | None = None) -> MeasureSet:
    """Full measure set; reuses a precomputed distance matrix when given."""
    if matrix is None:
        matrix = all_pairs_distances(graph)
    order = matrix.order
    if order != graph.node_ids:
        raise ValueError("distance matrix does not match graph")
    n = len(order)
    dist = matrix.dist

    pair_eff: dict[str, dict[str, float]] = {}
    eff_sum = 0.0
    for i in range(n):
        row = {}
        for j in range(n):
            if i == j:
                continue
            d = dist[i, j]
            if np.isfinite(d) and d > 0:
                e = 1.0 / float(d)
                row[order[j]] = e
                eff_sum += e
        if row:
            pair_eff[order[i]] = row
    global_eff = eff_sum / (n * (n - 1)) if n > 1 else 0.0

    closeness = {}
    for i in range(n):
        finite = [float(dist[i, j]) for j in range(n) if j != i and np.isfinite(dist[i, j])]
        closeness[order[i]] = len(finite) / sum(finite) if finite else 0.0

    return MeasureSet(
        global_efficiency=global_eff,
        in_degree={nid: graph.in_degree(nid) for nid in order},
        out_degree={nid: graph.out_degree(nid) for nid in order},
        closeness=closeness,
        betweenness=_betweenness(graph),
        pair_efficiency=pair_eff,
    )
