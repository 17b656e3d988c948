"""plantsim: plant-network fault simulation and switch reconfiguration."""

from .model import (Edge, EdgeLogic, GraphParseError, GraphValidationError,
                    Node, NodeRole, PlantGraph, SwitchState, effective_graph,
                    load_graph, load_graph_file, save_graph)
from .measures import (DistanceMatrix, MeasureSet, all_pairs_distances,
                       dijkstra_all_pairs, floyd_warshall, measures,
                       shortest_path)
from .optimizer import (EvaluatedState, EvolveCancelled, FaultScenario,
                        FitnessWeights, GAParams, brute_force_best, evaluate,
                        evolve, n_actions)
from .propagation import PropagationResult, propagate
from .runner import (DiagnosisReport, MeasuresDelta, compare_measures,
                     render_step_trace, run_scenario)
from .service import ServiceReport, compute_service
from .generator import (GenerationRecipe, build_plants, classify_roles,
                        convert_or_edges, generate_gnp, promote_switches)

__version__ = "0.1.0"

__all__ = [
    "DiagnosisReport", "DistanceMatrix", "Edge", "EdgeLogic",
    "EvaluatedState", "EvolveCancelled", "FaultScenario", "FitnessWeights",
    "GAParams", "GenerationRecipe", "GraphParseError", "GraphValidationError",
    "MeasureSet", "MeasuresDelta", "Node", "NodeRole", "PlantGraph",
    "PropagationResult", "ServiceReport", "SwitchState",
    "all_pairs_distances", "brute_force_best", "build_plants",
    "classify_roles", "compare_measures", "compute_service",
    "convert_or_edges", "dijkstra_all_pairs", "effective_graph", "evaluate",
    "evolve", "floyd_warshall", "generate_gnp", "load_graph",
    "load_graph_file", "measures", "n_actions", "promote_switches",
    "propagate", "render_step_trace", "run_scenario", "save_graph",
    "shortest_path",
]
