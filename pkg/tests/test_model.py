import json

import pytest

from conftest import edge, node
from plantsim.model import (Edge, EdgeLogic, GraphParseError,
                            GraphValidationError, Node, NodeRole, PlantGraph,
                            SwitchState, check_state_covers, effective_graph,
                            load_graph, save_graph)


def two_node(logic="SINGLE"):
    return PlantGraph([node("a", "SOURCE", source_service=1.0), node("b", "USER")],
                      [edge("a", "b", logic)])


class TestValidation:
    def test_empty_node_list_rejected(self):
        with pytest.raises(GraphValidationError, match="no nodes"):
            PlantGraph([], [])

    def test_duplicate_node_id_names_it(self):
        with pytest.raises(GraphValidationError, match="node x: duplicate"):
            PlantGraph([node("x", "HUB"), node("x", "HUB")], [])

    def test_dangling_edge_names_missing_endpoint(self):
        with pytest.raises(GraphValidationError, match="'ghost'"):
            PlantGraph([node("a", "HUB")], [edge("a", "ghost")])

    def test_self_loop_rejected(self):
        with pytest.raises(GraphValidationError, match="self loop"):
            PlantGraph([node("a", "HUB")], [edge("a", "a")])

    def test_duplicate_edge_rejected(self):
        with pytest.raises(GraphValidationError, match="duplicate edge"):
            PlantGraph([node("a", "HUB"), node("b", "HUB")],
                       [edge("a", "b"), edge("a", "b", "AND")])

    @pytest.mark.parametrize("w", [0.0, -1.0, float("inf"), float("nan")])
    def test_bad_weight_rejected(self, w):
        with pytest.raises(GraphValidationError, match="weight"):
            PlantGraph([node("a", "HUB"), node("b", "HUB")],
                       [edge("a", "b", weight=w)])

    def test_switch_needs_initial_value(self):
        with pytest.raises(GraphValidationError, match="initial value"):
            PlantGraph([node("s", "SWITCH")], [])

    def test_switch_value_only_on_switches(self):
        with pytest.raises(GraphValidationError, match="non-SWITCH"):
            PlantGraph([node("h", "HUB", initial_switch_value=True)], [])

    def test_service_only_on_sources(self):
        with pytest.raises(GraphValidationError, match="non-SOURCE"):
            PlantGraph([node("u", "USER", source_service=2.0)], [])

    def test_single_edge_with_siblings_rejected(self):
        nodes = [node("a", "HUB"), node("b", "HUB"), node("c", "HUB")]
        edges = [edge("a", "c", "SINGLE"), edge("b", "c", "AND")]
        with pytest.raises(GraphValidationError):
            PlantGraph(nodes, edges)
        # the damaged-graph path relaxes exactly this rule
        PlantGraph(nodes, edges, check_logic=False)

    def test_multi_logic_on_sole_parent_rejected(self):
        with pytest.raises(GraphValidationError):
            PlantGraph([node("a", "HUB"), node("b", "HUB")], [edge("a", "b", "OR")])

    def test_orphan_flag_is_derived(self):
        g = two_node()
        assert g.node("a").orphan and not g.node("b").orphan


class TestDocuments:
    def test_round_trip_preserves_fingerprint(self, line):
        again = load_graph(save_graph(line))
        assert again.fingerprint() == line.fingerprint()
        assert again.to_document() == line.to_document()

    def test_fingerprint_ignores_input_formatting(self, toy):
        doc = toy.to_document()
        shuffled = json.dumps(doc, indent=7)
        assert load_graph(shuffled).fingerprint() == toy.fingerprint()

    def test_unknown_top_level_key(self):
        with pytest.raises(GraphValidationError, match="unknown top-level key"):
            load_graph({"nodes": [], "edges": [], "extra": 1})

    def test_unknown_node_key_names_node(self):
        doc = {"nodes": [{"id": "a", "role": "HUB", "color": "red"}], "edges": []}
        with pytest.raises(GraphValidationError, match="node a: unknown key"):
            load_graph(doc)

    def test_unknown_edge_key_names_edge(self):
        doc = {"nodes": [{"id": "a", "role": "HUB"}, {"id": "b", "role": "HUB"}],
               "edges": [{"from": "a", "to": "b", "speed": 3}]}
        with pytest.raises(GraphValidationError, match="edge a->b"):
            load_graph(doc)

    def test_malformed_json_is_a_parse_error(self):
        with pytest.raises(GraphParseError, match="malformed"):
            load_graph("{nodes: [")

    def test_orphan_contradiction_rejected(self):
        doc = {"nodes": [{"id": "a", "role": "SOURCE", "service": 1, "orphan": False}],
               "edges": []}
        with pytest.raises(GraphValidationError, match="orphan"):
            load_graph(doc)

    def test_document_omits_irrelevant_fields(self, toy):
        doc = toy.to_document()
        for entry in doc["nodes"]:
            assert ("service" in entry) == (entry["role"] == "SOURCE")
            assert ("switch" in entry) == (entry["role"] == "SWITCH")


class TestSwitchState:
    def test_ids_are_sorted_and_values_follow(self):
        st = SwitchState.from_mapping({"s2": False, "s1": True})
        assert st.switch_ids == ("s1", "s2")
        assert st.values == (True, False)
        assert st["s2"] is False

    def test_replaced_is_a_copy(self):
        st = SwitchState.from_mapping({"s1": True})
        st2 = st.replaced({"s1": False})
        assert st["s1"] and not st2["s1"]

    def test_replacing_unknown_switch_fails(self):
        st = SwitchState.from_mapping({"s1": True})
        with pytest.raises(KeyError):
            st.replaced({"s9": False})

    def test_uniform_covers_graph(self, line):
        st = SwitchState.uniform(line, False)
        assert st.switch_ids == line.switch_ids
        assert not any(st.values)

    def test_coverage_check(self, line):
        check_state_covers(line, line.initial_switch_state())
        with pytest.raises(GraphValidationError, match="missing switch"):
            check_state_covers(line, SwitchState.from_mapping({"S1": True}))
        extra = line.initial_switch_state().as_mapping()
        extra["S99"] = True
        with pytest.raises(GraphValidationError, match="unknown switch"):
            check_state_covers(line, SwitchState.from_mapping(extra))


class TestEffectiveGraph:
    def test_false_switch_loses_in_edges_only(self, line):
        st = line.initial_switch_state().replaced({"S1": False})
        eff = effective_graph(line, st)
        assert not list(eff.predecessors("S1"))
        # out-edges stay; flow is blocked by the node itself, not the wiring
        assert {e.head for e in eff.successors("S1")} == {"1", "2"}

    def test_all_true_changes_nothing(self, line):
        eff = effective_graph(line, line.initial_switch_state())
        assert eff.to_document() == line.to_document()

    def test_idempotent(self, line):
        st = line.initial_switch_state().replaced({"S3": False, "S7": False})
        once = effective_graph(line, st)
        twice = effective_graph(once, st)
        assert once.to_document() == twice.to_document()

    def test_node_set_is_preserved(self, line):
        st = SwitchState.uniform(line, False)
        assert effective_graph(line, st).node_ids == line.node_ids
