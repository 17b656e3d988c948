"""Plant network data model.

A plant is a weighted directed graph whose nodes play one of four roles
(SOURCE, HUB, SWITCH, USER) and whose edges carry a dependency logic
(SINGLE, AND, OR).  Switches are boolean valves: setting one to False
removes its incoming edges, which is how reconfiguration contains damage.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping


class GraphParseError(ValueError):
    """Raised when a graph document is not structurally readable."""


class GraphValidationError(ValueError):
    """Raised when a readable document violates a model rule."""


class NodeRole(str, Enum):
    SOURCE = "SOURCE"
    HUB = "HUB"
    SWITCH = "SWITCH"
    USER = "USER"


class EdgeLogic(str, Enum):
    SINGLE = "SINGLE"
    AND = "AND"
    OR = "OR"


@dataclass(frozen=True)
class Node:
    """One plant element.

    source_service is meaningful only for SOURCE nodes and
    initial_switch_value only for SWITCH nodes.  orphan is derived from
    topology (no incoming edges) and recomputed on construction.
    """

    id: str
    role: NodeRole
    area: str = ""
    passive_resistant: bool = False
    source_service: float = 0.0
    initial_switch_value: bool | None = None
    orphan: bool = False


@dataclass(frozen=True)
class Edge:
    tail: str
    head: str
    weight: float = 1.0
    logic: EdgeLogic = EdgeLogic.SINGLE


class SwitchState:
    """Boolean assignment over the SWITCH nodes of a graph.

    Canonical gene order is ascending switch id, so a state doubles as
    an optimizer genome.  Instances are immutable and hashable.
    """

    __slots__ = ("switch_ids", "values", "_index")

    def __init__(self, switch_ids: Iterable[str], values: Iterable[bool]):
        ids = tuple(switch_ids)
        vals = tuple(bool(v) for v in values)
        if list(ids) != sorted(ids):
            raise ValueError("switch ids must be in ascending order")
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate switch id")
        if len(ids) != len(vals):
            raise ValueError("switch ids and values differ in length")
        object.__setattr__(self, "switch_ids", ids)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(ids)})

    def __setattr__(self, name, value):
        raise AttributeError("SwitchState is immutable")

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, bool]) -> "SwitchState":
        ids = sorted(mapping)
        return cls(ids, [mapping[s] for s in ids])

    @classmethod
    def uniform(cls, graph: "PlantGraph", value: bool) -> "SwitchState":
        return cls(graph.switch_ids, [value] * len(graph.switch_ids))

    def __getitem__(self, switch_id: str) -> bool:
        try:
            return self.values[self._index[switch_id]]
        except KeyError:
            raise KeyError(f"no switch {switch_id!r} in state") from None

    def __contains__(self, switch_id: str) -> bool:
        return switch_id in self._index

    def __len__(self) -> int:
        return len(self.switch_ids)

    def __iter__(self):
        return iter(self.switch_ids)

    def __eq__(self, other):
        if not isinstance(other, SwitchState):
            return NotImplemented
        return self.switch_ids == other.switch_ids and self.values == other.values

    def __hash__(self):
        return hash((self.switch_ids, self.values))

    def __repr__(self):
        inner = ", ".join(f"{s}={'T' if v else 'F'}" for s, v in zip(self.switch_ids, self.values))
        return f"SwitchState({inner})"

    def as_mapping(self) -> dict[str, bool]:
        return dict(zip(self.switch_ids, self.values))

    def replaced(self, changes: Mapping[str, bool]) -> "SwitchState":
        """Copy with the given switches reassigned."""
        unknown = sorted(set(changes) - set(self.switch_ids))
        if unknown:
            raise KeyError(f"no switch {unknown[0]!r} in state")
        vals = list(self.values)
        for sid, v in changes.items():
            vals[self._index[sid]] = bool(v)
        return SwitchState(self.switch_ids, vals)


_NODE_KEYS = {"id", "role", "area", "passive_resistant", "service", "switch", "orphan"}
_EDGE_KEYS = {"from", "to", "weight", "logic"}


def _number(value, what: str) -> float:
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise GraphValidationError(f"{what} must be a number")
    return float(value)


class PlantGraph:
    """Immutable validated plant graph with adjacency indexes.

    check_logic=False skips the edge-logic/in-degree coherence rule; it
    exists for derived graphs (e.g. a post-fault graph where removing a
    broken tail leaves a lone AND in-edge) and is never used on authored
    input.
    """

    def __init__(self, nodes: Iterable[Node], edges: Iterable[Edge], check_logic: bool = True):
        node_list = list(nodes)
        edge_list = list(edges)
        if not node_list:
            raise GraphValidationError("no nodes")

        by_id: dict[str, Node] = {}
        for n in node_list:
            if not isinstance(n.id, str) or not n.id:
                raise GraphValidationError("node id must be a non-empty string")
            if n.id in by_id:
                raise GraphValidationError(f"node {n.id}: duplicate id")
            by_id[n.id] = n

        seen_pairs: set[tuple[str, str]] = set()
        for e in edge_list:
            name = f"edge {e.tail}->{e.head}"
            if e.tail not in by_id:
                raise GraphValidationError(f"{name}: dangling endpoint {e.tail!r}")
            if e.head not in by_id:
                raise GraphValidationError(f"{name}: dangling endpoint {e.head!r}")
            if e.tail == e.head:
                raise GraphValidationError(f"{name}: self loop")
            if (e.tail, e.head) in seen_pairs:
                raise GraphValidationError(f"{name}: duplicate edge")
            seen_pairs.add((e.tail, e.head))
            if not math.isfinite(e.weight) or e.weight <= 0:
                raise GraphValidationError(f"{name}: weight must be positive and finite")

        pred: dict[str, list[Edge]] = {nid: [] for nid in by_id}
        succ: dict[str, list[Edge]] = {nid: [] for nid in by_id}
        for e in edge_list:
            succ[e.tail].append(e)
            pred[e.head].append(e)

        for n in node_list:
            if n.role == NodeRole.SWITCH:
                if n.initial_switch_value is None:
                    raise GraphValidationError(f"node {n.id}: switch lacks an initial value")
            elif n.initial_switch_value is not None:
                raise GraphValidationError(f"node {n.id}: switch value on non-SWITCH node")
            if n.role != NodeRole.SOURCE and n.source_service > 0:
                raise GraphValidationError(f"node {n.id}: service on non-SOURCE node")
            if n.source_service < 0 or not math.isfinite(n.source_service):
                raise GraphValidationError(f"node {n.id}: service must be finite and non-negative")

        if check_logic:
            for nid, incoming in pred.items():
                if not incoming:
                    continue
                logics = {e.logic for e in incoming}
                if EdgeLogic.SINGLE in logics and len(incoming) > 1:
                    raise GraphValidationError(
                        f"node {nid}: SINGLE in-edge on a head with {len(incoming)} predecessors"
                    )
                if logics - {EdgeLogic.SINGLE} and len(incoming) < 2:
                    raise GraphValidationError(
                        f"node {nid}: {next(iter(logics)).value} in-edge on a head with a single predecessor"
                    )

        # orphan is derived; stored flags are replaced with the truth
        final_nodes = {}
        for n in node_list:
            derived = len(pred[n.id]) == 0
            if n.orphan != derived:
                n = Node(n.id, n.role, n.area, n.passive_resistant,
                         n.source_service, n.initial_switch_value, derived)
            final_nodes[n.id] = n

        order = sorted(by_id)
        self._nodes = {nid: final_nodes[nid] for nid in order}
        self._succ = {nid: tuple(sorted(succ[nid], key=lambda e: e.head)) for nid in order}
        self._pred = {nid: tuple(sorted(pred[nid], key=lambda e: e.tail)) for nid in order}
        self._node_ids = tuple(order)
        self._id_set = frozenset(order)
        self._edges = tuple(sorted(edge_list, key=lambda e: (e.tail, e.head)))
        self._switch_ids = tuple(nid for nid in order if self._nodes[nid].role == NodeRole.SWITCH)
        self._sources = tuple(self._nodes[nid] for nid in order if self._nodes[nid].role == NodeRole.SOURCE)
        self._users = tuple(self._nodes[nid] for nid in order if self._nodes[nid].role == NodeRole.USER)

    # -- accessors ----------------------------------------------------

    @property
    def node_ids(self) -> tuple[str, ...]:
        return self._node_ids

    @property
    def id_set(self) -> frozenset[str]:
        return self._id_set

    @property
    def nodes(self) -> tuple[Node, ...]:
        return tuple(self._nodes.values())

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def switch_ids(self) -> tuple[str, ...]:
        return self._switch_ids

    @property
    def sources(self) -> tuple[Node, ...]:
        return self._sources

    @property
    def users(self) -> tuple[Node, ...]:
        return self._users

    @property
    def node_count(self) -> int:
        return len(self._node_ids)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def node(self, node_id: str) -> Node:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise KeyError(f"no node {node_id!r}") from None

    def has_node(self, node_id: str) -> bool:
        return node_id in self._nodes

    def successors(self, node_id: str) -> tuple[Edge, ...]:
        return self._succ[node_id]

    def predecessors(self, node_id: str) -> tuple[Edge, ...]:
        return self._pred[node_id]

    def in_degree(self, node_id: str) -> int:
        return len(self._pred[node_id])

    def out_degree(self, node_id: str) -> int:
        return len(self._succ[node_id])

    def initial_switch_state(self) -> SwitchState:
        return SwitchState(self._switch_ids,
                           [self._nodes[s].initial_switch_value for s in self._switch_ids])

    def __eq__(self, other):
        if not isinstance(other, PlantGraph):
            return NotImplemented
        return self._nodes == other._nodes and self._edges == other._edges

    def __hash__(self):
        return hash((tuple(self._nodes.items()), self._edges))

    def __repr__(self):
        return f"PlantGraph({self.node_count} nodes, {self.edge_count} edges)"

    # -- serialization ------------------------------------------------

    def to_document(self) -> dict:
        nodes = []
        for nid in self._node_ids:
            n = self._nodes[nid]
            entry: dict = {
                "id": n.id,
                "role": n.role.value,
                "area": n.area,
                "passive_resistant": n.passive_resistant,
            }
            if n.role == NodeRole.SOURCE:
                entry["service"] = n.source_service
            if n.role == NodeRole.SWITCH:
                entry["switch"] = n.initial_switch_value
            nodes.append(entry)
        edges = [{"from": e.tail, "to": e.head, "weight": e.weight, "logic": e.logic.value}
                 for e in self._edges]
        return {"nodes": nodes, "edges": edges}

    def fingerprint(self) -> str:
        raw = json.dumps(self.to_document(), separators=(",", ":"), sort_keys=False)
        return hashlib.sha256(raw.encode("utf-8")).hexdigest()


def _node_from_entry(entry: dict, position: int) -> Node:
    if not isinstance(entry, dict):
        raise GraphParseError(f"node #{position}: entry must be an object")
    nid = entry.get("id")
    if not isinstance(nid, str) or not nid:
        raise GraphParseError(f"node #{position}: missing or invalid id")
    unknown = sorted(set(entry) - _NODE_KEYS)
    if unknown:
        raise GraphValidationError(f"node {nid}: unknown key {unknown[0]!r}")
    try:
        role = NodeRole(entry.get("role"))
    except ValueError:
        raise GraphValidationError(f"node {nid}: unknown role {entry.get('role')!r}") from None
    area = entry.get("area", "")
    if not isinstance(area, str):
        raise GraphValidationError(f"node {nid}: area must be a string")
    resistant = entry.get("passive_resistant", False)
    if not isinstance(resistant, bool):
        raise GraphValidationError(f"node {nid}: passive_resistant must be a boolean")

    service = 0.0
    if "service" in entry:
        if role != NodeRole.SOURCE:
            raise GraphValidationError(f"node {nid}: service on non-SOURCE node")
        service = _number(entry["service"], f"node {nid}: service")

    switch = None
    if "switch" in entry:
        if role != NodeRole.SWITCH:
            raise GraphValidationError(f"node {nid}: switch value on non-SWITCH node")
        if not isinstance(entry["switch"], bool):
            raise GraphValidationError(f"node {nid}: switch value must be a boolean")
        switch = entry["switch"]
    elif role == NodeRole.SWITCH:
        raise GraphValidationError(f"node {nid}: switch lacks an initial value")

    orphan = entry.get("orphan", False)
    if not isinstance(orphan, bool):
        raise GraphValidationError(f"node {nid}: orphan must be a boolean")
    return Node(nid, role, area, resistant, service, switch, orphan)


def _edge_from_entry(entry: dict, position: int) -> Edge:
    if not isinstance(entry, dict):
        raise GraphParseError(f"edge #{position}: entry must be an object")
    tail, head = entry.get("from"), entry.get("to")
    if not isinstance(tail, str) or not isinstance(head, str):
        raise GraphParseError(f"edge #{position}: missing 'from'/'to'")
    unknown = sorted(set(entry) - _EDGE_KEYS)
    if unknown:
        raise GraphValidationError(f"edge {tail}->{head}: unknown key {unknown[0]!r}")
    weight = _number(entry.get("weight", 1.0), f"edge {tail}->{head}: weight")
    try:
        logic = EdgeLogic(entry.get("logic"))
    except ValueError:
        raise GraphValidationError(
            f"edge {tail}->{head}: unknown logic {entry.get('logic')!r}") from None
    return Edge(tail, head, weight, logic)


def load_graph(document: str | bytes | dict) -> PlantGraph:
    """Parse and validate a graph document (JSON text or an already-decoded dict).

    Raises GraphParseError for malformed documents and GraphValidationError
    for rule violations; both messages name the offending element.
    """
    if isinstance(document, (str, bytes)):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise GraphParseError(f"malformed JSON: {exc}") from None
    else:
        doc = document
    if not isinstance(doc, dict):
        raise GraphParseError("document root must be an object")
    unknown = sorted(set(doc) - {"nodes", "edges"})
    if unknown:
        raise GraphValidationError(f"unknown top-level key {unknown[0]!r}")
    raw_nodes = doc.get("nodes")
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_nodes, list):
        raise GraphParseError("'nodes' must be a list")
    if not isinstance(raw_edges, list):
        raise GraphParseError("'edges' must be a list")

    nodes = [_node_from_entry(e, i) for i, e in enumerate(raw_nodes)]
    edges = [_edge_from_entry(e, i) for i, e in enumerate(raw_edges)]
    graph = PlantGraph(nodes, edges)

    # a supplied orphan flag must agree with the topology
    for entry in raw_nodes:
        if "orphan" in entry and entry["orphan"] != graph.node(entry["id"]).orphan:
            raise GraphValidationError(
                f"node {entry['id']}: orphan flag contradicts topology")
    return graph


def load_graph_file(path) -> PlantGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_graph(fh.read())


def save_graph(graph: PlantGraph) -> str:
    """Render the canonical JSON document; stable bytes for a given graph."""
    return json.dumps(graph.to_document(), indent=2) + "\n"


def effective_graph(graph: PlantGraph, state: SwitchState) -> PlantGraph:
    """Graph as operated under `state`: every in-edge of a False switch removed.

    Out-edges of open switches stay; roles and services are untouched.
    Idempotent, and monotone in the usual sense: opening more switches
    only removes more edges.
    """
    check_state_covers(graph, state)
    off = {sid for sid in graph.switch_ids if not state[sid]}
    kept = [e for e in graph.edges if e.head not in off]
    return PlantGraph(graph.nodes, kept)


def check_state_covers(graph: PlantGraph, state: SwitchState) -> None:
    """Every SWITCH of the graph must be assigned; extras are rejected too."""
    want = set(graph.switch_ids)
    got = set(state.switch_ids)
    missing = sorted(want - got)
    if missing:
        raise GraphValidationError(f"missing switch assignment for {missing[0]!r}")
    extra = sorted(got - want)
    if extra:
        raise GraphValidationError(f"state assigns unknown switch {extra[0]!r}")
