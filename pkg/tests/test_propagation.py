import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import edge, node, random_plant, random_scenario
from oracles import naive_broken
from plantsim.model import PlantGraph, SwitchState
from plantsim.propagation import broken_roles, propagate


def or_gate():
    nodes = [node("a", "SOURCE", source_service=1.0),
             node("b", "SOURCE", source_service=1.0),
             node("x", "HUB"), node("u", "USER")]
    edges = [edge("a", "x", "OR"), edge("b", "x", "OR"), edge("x", "u")]
    return PlantGraph(nodes, edges)


def test_single_feed_cascades(toy):
    st_ = toy.initial_switch_state()
    res = propagate(toy, ["1"], st_)
    # both switches closed: the fault runs through them into the user
    assert res.broken == {"1", "2", "3", "18"}
    assert res.n_alive == 1


def test_open_switches_contain_the_fault(toy):
    st_ = toy.initial_switch_state().replaced({"2": False, "3": False})
    res = propagate(toy, ["1"], st_)
    assert res.broken == {"1"}
    assert res.alive == toy.id_set - {"1"}


def test_or_head_survives_one_broken_feed():
    g = or_gate()
    res = propagate(g, ["a"], SwitchState((), ()))
    assert res.broken == {"a"}


def test_or_head_breaks_when_every_feed_is_gone():
    g = or_gate()
    res = propagate(g, ["a", "b"], SwitchState((), ()))
    assert res.broken == {"a", "b", "x", "u"}
    causes = {ev.node: ev.cause for ev in res.trace}
    assert causes["x"] == "or-exhausted"
    assert causes["u"] == "dependency"


def test_passive_resistant_node_never_breaks():
    g = PlantGraph([node("a", "SOURCE", source_service=1.0),
                    node("r", "HUB", passive_resistant=True),
                    node("u", "USER")],
                   [edge("a", "r"), edge("r", "u")])
    res = propagate(g, ["a"], SwitchState((), ()))
    assert res.broken == {"a"}
    # perturbing the resistant node itself is a no-op
    res2 = propagate(g, ["r"], SwitchState((), ()))
    assert res2.broken == frozenset()
    assert res2.trace == ()


def test_directly_hit_open_switch_still_breaks_downstream():
    g = PlantGraph([node("a", "SOURCE", source_service=1.0),
                    node("s", "SWITCH", initial_switch_value=True),
                    node("u", "USER")],
                   [edge("a", "s"), edge("s", "u")])
    off = g.initial_switch_state().replaced({"s": False})
    # upstream fault stops at the open switch
    assert propagate(g, ["a"], off).broken == {"a"}
    # a fault on the switch itself ignores the cut in-edges
    assert propagate(g, ["s"], off).broken == {"s", "u"}


def test_trace_steps_are_dense_and_perturbations_lead(line):
    st_ = line.initial_switch_state()
    res = propagate(line, ["3", "7"], st_)
    steps = [ev.step for ev in res.trace]
    assert steps == list(range(len(res.trace)))
    head = [ev for ev in res.trace if ev.cause == "perturbed"]
    assert [ev.node for ev in head] == ["3", "7"]
    assert all(ev.step < res.trace[len(head)].step for ev in head)
    for ev in res.trace[len(head):]:
        assert ev.via in res.broken


def test_empty_scenario_rejected(line):
    with pytest.raises(ValueError, match="empty scenario"):
        propagate(line, [], line.initial_switch_state())


def test_unknown_target_rejected(line):
    with pytest.raises(KeyError, match="zz"):
        propagate(line, ["zz"], line.initial_switch_state())


def test_state_must_cover_switches(line):
    with pytest.raises(Exception, match="missing switch"):
        propagate(line, ["1"], SwitchState((), ()))


def test_broken_roles_counts(toy):
    res = propagate(toy, ["1"], toy.initial_switch_state())
    roles = broken_roles(toy, res)
    assert roles == {"SOURCE": 1, "HUB": 0, "SWITCH": 2, "USER": 1}


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10_000))
def test_worklist_matches_naive_fixed_point(seed):
    g = random_plant(seed)
    targets, state = random_scenario(g, random.Random(seed + 1))
    fast = propagate(g, targets, state)
    assert fast.broken == naive_broken(g, targets, state)
    assert fast.alive == g.id_set - fast.broken
    assert fast.n_alive == len(fast.alive)


def test_result_is_pure(line):
    st_ = line.initial_switch_state()
    a = propagate(line, ["2"], st_)
    b = propagate(line, ["2"], st_)
    assert a.broken == b.broken and a.trace == b.trace
