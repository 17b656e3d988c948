"""On-disk persistence for graphs and reports.

Graph ids are content hashes of the canonical document, so re-uploading
the same plant is a no-op that returns the same id.  Reports are opaque
rendered JSON blobs keyed by random ids.  Everything except running jobs
survives a process restart.
"""
from __future__ import annotations

import threading
import uuid
from pathlib import Path

from ..model import PlantGraph, load_graph, save_graph


class UnknownIdError(KeyError):
    pass


class DataStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.graph_dir = self.root / "graphs"
        self.report_dir = self.root / "reports"
        self.graph_dir.mkdir(parents=True, exist_ok=True)
        self.report_dir.mkdir(parents=True, exist_ok=True)
        self._cache: dict[str, PlantGraph] = {}
        self._lock = threading.Lock()

    # -- graphs --------------------------------------------------------

    def put_graph(self, document: str | bytes | dict) -> tuple[str, PlantGraph]:
        graph = load_graph(document)
        gid = graph.fingerprint()
        path = self.graph_dir / f"{gid}.json"
        with self._lock:
            if not path.exists():
                path.write_text(save_graph(graph), encoding="utf-8")
            self._cache[gid] = graph
        return gid, graph

    def has_graph(self, graph_id: str) -> bool:
        return graph_id in self._cache or (self.graph_dir / f"{graph_id}.json").exists()

    def get_graph(self, graph_id: str) -> PlantGraph:
        with self._lock:
            cached = self._cache.get(graph_id)
        if cached is not None:
            return cached
        path = self.graph_dir / f"{graph_id}.json"
        if not path.exists():
            raise UnknownIdError(f"no graph {graph_id!r}")
        graph = load_graph(path.read_text(encoding="utf-8"))
        with self._lock:
            self._cache[graph_id] = graph
        return graph

    def get_graph_document(self, graph_id: str) -> dict:
        return self.get_graph(graph_id).to_document()

    def list_graphs(self) -> list[dict]:
        out = []
        for path in sorted(self.graph_dir.glob("*.json")):
            graph = self.get_graph(path.stem)
            out.append({"graph_id": path.stem, "nodes": graph.node_count,
                        "edges": graph.edge_count,
                        "switches": list(graph.switch_ids)})
        return out

    # -- reports -------------------------------------------------------

    def put_report(self, rendered: str) -> str:
        rid = uuid.uuid4().hex
        (self.report_dir / f"{rid}.json").write_text(rendered, encoding="utf-8")
        return rid

    def get_report_bytes(self, report_id: str) -> bytes:
        path = self.report_dir / f"{report_id}.json"
        if not path.exists():
            raise UnknownIdError(f"no report {report_id!r}")
        return path.read_bytes()
