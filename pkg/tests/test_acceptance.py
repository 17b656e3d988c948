"""End-to-end acceptance gates for the simulator and the optimizer.

Run with `pytest tests/test_acceptance.py -v -s` to get one verdict line
per criterion, each timed against its budget where one applies.
"""
import random
import time
from contextlib import contextmanager

import numpy as np

from conftest import random_plant, random_scenario
from oracles import naive_broken
from plantsim.fixtures import load_fixture
from plantsim.generator import classify_roles, convert_or_edges, generate_gnp, \
    promote_switches
from plantsim.measures import dijkstra_all_pairs, floyd_warshall
from plantsim.model import SwitchState
from plantsim.optimizer import (FaultScenario, FitnessWeights, GAParams,
                                brute_force_best, evaluate, evolve)
from plantsim.propagation import propagate
from plantsim.runner import run_scenario
from plantsim.service import compute_service

TOY = load_fixture("T")
LINE = load_fixture("L")


@contextmanager
def criterion(name, budget=None):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"\nFAIL  {name}")
        raise
    elapsed = time.perf_counter() - t0
    if budget is not None and elapsed > budget:
        print(f"\nFAIL  {name} ({elapsed:.2f}s, budget {budget:.0f}s)")
        raise AssertionError(f"{name}: {elapsed:.2f}s exceeded the "
                             f"{budget:.0f}s budget")
    print(f"\nPASS  {name} ({elapsed:.2f}s)")


def line_scenario(perturb, weights=FitnessWeights()):
    return FaultScenario(frozenset(perturb), LINE.initial_switch_state(), weights)


def rank(ev):
    return (ev.fitness, ev.n_actions, ev.state.values)


def test_toy_plant_containment_story():
    with criterion("toy plant: service 3 intact, opening both switches "
                   "walls a source fault off at cost 1", budget=1.0):
        baseline = compute_service(TOY, TOY.id_set, TOY.initial_switch_state())
        assert baseline.per_user["18"] == 3.0
        opened = TOY.initial_switch_state().replaced({"2": False, "3": False})
        res = propagate(TOY, ["1"], opened)
        assert res.broken == {"1"}
        after = compute_service(TOY, res.alive, opened)
        assert after.per_user["18"] == 2.0


def test_line_baseline_splits_three_sources_five_ways():
    with criterion("switch line: every user draws exactly 0.6 when intact"):
        rep = compute_service(LINE, LINE.id_set, LINE.initial_switch_state())
        assert rep.per_user == {u: 0.6 for u in ("10", "11", "12", "13", "14")}
        assert rep.total == 3.0


def test_single_fault_oracle_and_ga_agree():
    with criterion("head fault: unique optimum opens S1 at (1, 2, 24), "
                   "fitness -25; seeded GA finds it in 9 of 10 runs",
                   budget=600.0):
        best = brute_force_best(LINE, line_scenario(["1"]))
        assert len(best) == 1
        winner = best[0]
        flips = {sid for sid in LINE.switch_ids
                 if not winner.state[sid]}
        assert flips == {"S1"}
        assert (winner.n_actions, winner.s_tot, winner.n_alive) == (1, 2.0, 24)
        assert winner.fitness == -25.0

        hits = 0
        for seed in range(10):
            t0 = time.perf_counter()
            outcome = evolve(LINE, line_scenario(["1"]), GAParams(seed=seed))
            run_time = time.perf_counter() - t0
            assert run_time < 60.0, f"GA run {seed} took {run_time:.1f}s"
            if outcome.best.fitness == winner.fitness:
                hits += 1
        assert hits >= 9, f"GA matched the oracle in only {hits}/10 runs"


def test_mid_line_fault_needs_two_switches():
    with criterion("mid-line fault: optimum opens S1+S2 at fitness -25 and "
                   "the survivors split 1.0 / 0.5 / 0.5 / 0.5 / 0.5"):
        rep = run_scenario(LINE, line_scenario(["2"]), mode="exhaustive")
        chosen = rep.chosen_state
        flips = {sid for sid in LINE.switch_ids if not chosen.state[sid]}
        assert flips == {"S1", "S2"}
        assert chosen.fitness == 1 * 2 - 1 * 3.0 - 1 * 24 == -25.0
        assert rep.post.service.per_user == {
            "10": 1.0, "11": 0.5, "12": 0.5, "13": 0.5, "14": 0.5}


def test_double_fault_ties_and_action_weighting():
    with criterion("double fault: exactly two co-optima at fitness -23; "
                   "pricier actions (w1=2) leave the 2-flip plan alone"):
        ids = LINE.switch_ids
        rep = run_scenario(LINE, line_scenario(["2", "3"]), mode="exhaustive")
        found = {ev.state.values for ev in rep.all_best_states}
        three_flip = SwitchState(ids, (False, False, False,
                                       True, True, True, True, True))
        two_flip = SwitchState(ids, (False, True, False,
                                     True, True, True, True, True))
        assert found == {three_flip.values, two_flip.values}
        assert {ev.fitness for ev in rep.all_best_states} == {-23.0}

        pricier = run_scenario(
            LINE, line_scenario(["2", "3"], FitnessWeights(2.0, 1.0, 1.0)),
            mode="exhaustive")
        assert [ev.state.values for ev in pricier.all_best_states] == \
            [two_flip.values]
        assert pricier.chosen_state.fitness == -21.0


def test_distance_routes_agree_everywhere():
    with criterion("both all-pairs routes agree entrywise to 1e-9 on the "
                   "fixtures and 20 seeded sparse graphs", budget=30.0):
        graphs = [TOY, LINE] + [generate_gnp(100, 0.01, seed)
                                for seed in range(20)]
        for g in graphs:
            a = dijkstra_all_pairs(g).dist
            b = floyd_warshall(g).dist
            assert np.array_equal(np.isinf(a), np.isinf(b))
            mask = np.isfinite(a)
            assert np.max(np.abs(a[mask] - b[mask]), initial=0.0) <= 1e-9


def test_cascade_engine_matches_naive_fixed_point():
    with criterion("worklist cascade equals the sweep-to-fixed-point oracle "
                   "on 100 seeded plants"):
        for seed in range(100):
            g = random_plant(seed, max_nodes=30)
            targets, state = random_scenario(g, random.Random(seed * 31 + 7))
            assert propagate(g, targets, state).broken == \
                naive_broken(g, targets, state)


def test_switch_coverage_and_weight_sensitivity_properties():
    with criterion("50 seeded plants: denser switching never hurts the "
                   "optimum, reconfiguration never breaks more than bare "
                   "wiring, OR wiring only shrinks cascades, and tenfold "
                   "weights push their own term the right way", budget=600.0):
        pcts = tuple(p / 10 for p in range(1, 10))
        for inst in range(50):
            base = classify_roles(generate_gnp(100, 1 / 100, seed=inst))
            target = min(base.node_ids,
                         key=lambda nid: (-base.out_degree(nid), nid))
            no_switch_broken = propagate(
                base, [target], SwitchState((), ())).broken

            # OR wiring can only interrupt cascades, never extend them
            softened = convert_or_edges(base, 0.5, seed=inst)
            assert propagate(softened, [target],
                             SwitchState((), ())).broken <= no_switch_broken

            variants = promote_switches(base, pcts, seed=inst)

            # with every switch shut the cascade is the bare one
            for v in variants:
                held = propagate(v, [target], v.initial_switch_state()).broken
                assert len(held) <= len(no_switch_broken)

            qualifying = [v for v in variants if len(v.switch_ids) <= 12]
            best_by_variant = []
            for v in qualifying:
                scenario = FaultScenario(frozenset([target]),
                                         v.initial_switch_state())
                best_by_variant.append(
                    (v, min(brute_force_best(v, scenario), key=rank)))

            fitnesses = [ev.fitness for _, ev in best_by_variant]
            assert fitnesses == sorted(fitnesses, reverse=True), \
                f"instance {inst}: denser switching made the optimum worse"

            for v, ev in best_by_variant:
                broken = propagate(v, [target], ev.state).broken
                assert len(broken) <= len(no_switch_broken)

            if best_by_variant:
                v, unit_best = best_by_variant[-1]
                scenario10 = lambda w: FaultScenario(  # noqa: E731
                    frozenset([target]), v.initial_switch_state(), w)
                dear_actions = min(brute_force_best(
                    v, scenario10(FitnessWeights(10.0, 1.0, 1.0))), key=rank)
                assert dear_actions.n_actions <= unit_best.n_actions
                dear_service = min(brute_force_best(
                    v, scenario10(FitnessWeights(1.0, 10.0, 1.0))), key=rank)
                assert dear_service.s_tot >= unit_best.s_tot
                dear_survival = min(brute_force_best(
                    v, scenario10(FitnessWeights(1.0, 1.0, 10.0))), key=rank)
                assert dear_survival.n_alive >= unit_best.n_alive


def test_fitness_is_exactly_the_weighted_three_term_sum():
    with criterion("fitness identity holds bit-for-bit on 10,000 random "
                   "evaluated states"):
        rng = random.Random(424242)
        pool = [LINE,
                promote_switches(classify_roles(generate_gnp(60, 0.05, 1)),
                                 [0.5], seed=1)[0],
                promote_switches(classify_roles(generate_gnp(40, 0.08, 2)),
                                 [0.7], seed=2)[0]]
        for _ in range(10_000):
            g = pool[rng.randrange(len(pool))]
            weights = FitnessWeights(rng.uniform(0, 10), rng.uniform(0, 10),
                                     rng.uniform(0, 10))
            k = rng.randint(1, 2)
            scenario = FaultScenario(
                frozenset(rng.sample(list(g.node_ids), k)),
                g.initial_switch_state(), weights)
            candidate = SwitchState(
                g.switch_ids, [rng.random() < 0.5 for _ in g.switch_ids])
            ev = evaluate(g, scenario, candidate)
            assert ev.fitness == (weights.w1 * ev.n_actions
                                  - weights.w2 * ev.s_tot
                                  - weights.w3 * ev.n_alive)
