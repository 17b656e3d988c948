"""Background optimize jobs: one per graph at a time, cancelable,
progress reported per GA generation."""
from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from ..optimizer import EvolveCancelled
from . import ops
from .schemas import JobView, OptimizeRequest
from .store import DataStore

TERMINAL = ("done", "failed", "cancelled")


class JobConflictError(RuntimeError):
    """Another optimize job is already running for this graph."""


class CancelRaceError(RuntimeError):
    """The job finished before the cancel arrived."""


class UnknownJobError(KeyError):
    pass


@dataclass
class Job:
    job_id: str
    graph_id: str
    total_generations: int
    status: str = "queued"
    progress: int = 0
    best_fitness: float | None = None
    report_id: str | None = None
    error: str | None = None
    cancel_event: threading.Event = field(default_factory=threading.Event)

    def view(self) -> JobView:
        return JobView(job_id=self.job_id, graph_id=self.graph_id,
                       status=self.status, progress=self.progress,
                       total_generations=self.total_generations,
                       best_fitness=self.best_fitness,
                       report_id=self.report_id, error=self.error)


class JobManager:
    def __init__(self, store: DataStore):
        self._store = store
        self._jobs: dict[str, Job] = {}
        self._active: dict[str, str] = {}   # graph_id -> job_id
        self._lock = threading.Lock()

    def submit(self, graph_id: str, request: OptimizeRequest) -> Job:
        graph = self._store.get_graph(graph_id)
        total = request.params.ngen if request.mode == "genetic" else 0
        job = Job(job_id=uuid.uuid4().hex, graph_id=graph_id, total_generations=total)
        with self._lock:
            if graph_id in self._active:
                raise JobConflictError(
                    f"an optimize job is already running for graph {graph_id!r}")
            self._active[graph_id] = job.job_id
            self._jobs[job.job_id] = job
        thread = threading.Thread(target=self._run, args=(job, graph, request),
                                  daemon=True)
        thread.start()
        return job

    def _run(self, job: Job, graph, request: OptimizeRequest) -> None:
        job.status = "running"

        def on_generation(gen, best):
            job.progress = gen
            job.best_fitness = best.fitness

        try:
            report = ops.optimize_report(graph, request,
                                         on_generation=on_generation,
                                         should_stop=job.cancel_event.is_set)
            job.report_id = self._store.put_report(ops.render_report_json(report))
            job.progress = job.total_generations
            job.best_fitness = report["chosen_state"]["fitness"]
            job.status = "done"
        except EvolveCancelled:
            job.status = "cancelled"
        except Exception as exc:                      # surfaced via the job view
            job.error = str(exc)
            job.status = "failed"
        finally:
            with self._lock:
                self._active.pop(job.graph_id, None)

    def get(self, job_id: str) -> Job:
        try:
            return self._jobs[job_id]
        except KeyError:
            raise UnknownJobError(f"no job {job_id!r}") from None

    def cancel(self, job_id: str) -> Job:
        job = self.get(job_id)
        with self._lock:
            if job.status in TERMINAL:
                raise CancelRaceError(
                    f"job {job_id!r} already finished ({job.status})")
            job.cancel_event.set()
        return job
