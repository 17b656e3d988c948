"""Slow reference implementations the fast code is cross-checked against.

Each uses a deliberately different formulation: breakage as whole-graph
sweeps to a fixed point (no worklist, no ordering), distances as
Bellman-Ford relaxation, betweenness by explicit path enumeration.
"""
from math import inf

from plantsim.model import EdgeLogic


def naive_broken(graph, scenario_nodes, state):
    """Fixed point by repeated full sweeps over every node."""
    off = {sid for sid in graph.switch_ids if not state[sid]}
    broken = {t for t in set(scenario_nodes)
              if not graph.node(t).passive_resistant}
    preds = {nid: list(graph.predecessors(nid)) for nid in graph.node_ids}
    while True:
        grew = False
        for nid in graph.node_ids:
            if nid in broken or nid in off or graph.node(nid).passive_resistant:
                continue
            incoming = preds[nid]
            hard = [e for e in incoming if e.logic is not EdgeLogic.OR]
            soft = [e for e in incoming if e.logic is EdgeLogic.OR]
            hit = any(e.tail in broken for e in hard)
            if not hit and soft:
                hit = all(e.tail in broken for e in soft)
            if hit:
                broken.add(nid)
                grew = True
        if not grew:
            return frozenset(broken)


def bellman_ford(graph, source):
    dist = {nid: inf for nid in graph.node_ids}
    dist[source] = 0.0
    for _ in range(len(graph.node_ids)):
        changed = False
        for e in graph.edges:
            alt = dist[e.tail] + e.weight
            if alt < dist[e.head]:
                dist[e.head] = alt
                changed = True
        if not changed:
            break
    return dist


def simple_paths(graph, src, dst):
    """All simple paths src -> dst as (cost, node list); tiny graphs only."""
    succ = {nid: list(graph.successors(nid)) for nid in graph.node_ids}
    found = []

    def walk(at, seen, acc, cost):
        if at == dst:
            found.append((cost, list(acc)))
            return
        for e in succ[at]:
            if e.head not in seen:
                seen.add(e.head)
                acc.append(e.head)
                walk(e.head, seen, acc, cost + e.weight)
                acc.pop()
                seen.remove(e.head)

    walk(src, {src}, [src], 0.0)
    return found


def enumerated_betweenness(graph):
    """Pair-dependency sums from explicit shortest-path lists.

    Assumes integer weights so "same length" is exact.
    """
    ids = graph.node_ids
    n = len(ids)
    score = {nid: 0.0 for nid in ids}
    for s in ids:
        for t in ids:
            if s == t:
                continue
            paths = simple_paths(graph, s, t)
            if not paths:
                continue
            best = min(c for c, _ in paths)
            shortest = [p for c, p in paths if c == best]
            for p in shortest:
                for v in p[1:-1]:
                    score[v] += 1.0 / len(shortest)
    if n <= 2:
        return {nid: 0.0 for nid in ids}
    return {nid: score[nid] / ((n - 1) * (n - 2)) for nid in ids}
