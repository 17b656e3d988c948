import random
from dataclasses import replace

import pytest

from plantsim.fixtures import load_fixture
from plantsim.generator import (classify_roles, convert_or_edges, generate_gnp,
                                promote_switches)
from plantsim.model import Edge, EdgeLogic, Node, NodeRole, PlantGraph


@pytest.fixture
def toy():
    return load_fixture("T")


@pytest.fixture
def line():
    return load_fixture("L")


def node(nid, role, **kw):
    return Node(nid, NodeRole(role), **kw)


def edge(tail, head, logic="SINGLE", weight=1.0):
    return Edge(tail, head, weight, EdgeLogic(logic))


def random_plant(seed, max_nodes=30):
    """Seeded plant with a mix of roles, logic, switches and resistance."""
    rng = random.Random(seed)
    n = rng.randint(2, max_nodes)
    g = classify_roles(generate_gnp(n, rng.uniform(0.05, 0.4), seed))
    if rng.random() < 0.5:
        g = convert_or_edges(g, rng.uniform(0.2, 0.8), seed)
    hubs = [nd for nd in g.nodes if nd.role is NodeRole.HUB]
    if hubs and rng.random() < 0.7:
        g = promote_switches(g, [rng.uniform(0.2, 0.9)], seed)[0]
    if rng.random() < 0.5:
        nodes = [replace(nd, passive_resistant=rng.random() < 0.2) for nd in g.nodes]
        g = PlantGraph(nodes, g.edges)
    return g


def random_scenario(graph, rng):
    """(perturbed ids, switch state) drawn uniformly from the graph."""
    from plantsim.model import SwitchState

    k = rng.randint(1, min(3, len(graph.node_ids)))
    targets = rng.sample(list(graph.node_ids), k)
    state = SwitchState(graph.switch_ids,
                        [rng.random() < 0.5 for _ in graph.switch_ids])
    return targets, state
