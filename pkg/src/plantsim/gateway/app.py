"""HTTP face of the plant simulator.

POST /graphs                     upload + validate, returns the content id
GET  /graphs                     list stored graphs
GET  /graphs/{gid}               stored document
GET  /graphs/{gid}/measures      baseline measures + service
POST /graphs/{gid}/service       service under an explicit switch state
POST /graphs/{gid}/simulate      fixed-state fault run, full report body
POST /graphs/{gid}/optimize      async reconfiguration job (one per graph)
GET  /jobs/{jid}                 job status, progress = GA generation
POST /jobs/{jid}/cancel          stop a running job
GET  /reports/{rid}              stored report, byte-identical to the body
                                 the CLI writes for the same inputs
"""
from __future__ import annotations

import os

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..model import GraphParseError, GraphValidationError
from . import ops
from .jobs import CancelRaceError, JobConflictError, JobManager, UnknownJobError
from .schemas import (OptimizeRequest, ServiceRequest, SimulateRequest,
                      UploadResponse)
from .store import DataStore, UnknownIdError

DEFAULT_DATA_DIR = "plantsim-data"


def default_data_dir() -> str:
    return os.environ.get("PLANTSIM_DATA_DIR", DEFAULT_DATA_DIR)


def create_app(data_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="plantsim gateway", version="0.1.0")
    store = DataStore(data_dir if data_dir is not None else default_data_dir())
    jobs = JobManager(store)
    app.state.store = store
    app.state.jobs = jobs

    # the browser console is served from another origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=["X-Report-Id"],
    )

    @app.exception_handler(RequestValidationError)
    async def request_validation(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": str(exc.errors())})

    @app.exception_handler(GraphParseError)
    @app.exception_handler(GraphValidationError)
    async def domain_validation(request: Request, exc: Exception):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(UnknownIdError)
    @app.exception_handler(UnknownJobError)
    async def unknown_id(request: Request, exc: Exception):
        # KeyError reprs quote the message; unwrap it
        return JSONResponse(status_code=404, content={"detail": str(exc.args[0])})

    @app.exception_handler(KeyError)
    @app.exception_handler(ValueError)
    async def domain_error(request: Request, exc: Exception):
        detail = exc.args[0] if exc.args else str(exc)
        return JSONResponse(status_code=400, content={"detail": str(detail)})

    @app.exception_handler(JobConflictError)
    @app.exception_handler(CancelRaceError)
    async def conflict(request: Request, exc: Exception):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    # -- graphs --------------------------------------------------------

    @app.post("/graphs", response_model=UploadResponse)
    async def upload_graph(document: dict):
        gid, graph = store.put_graph(document)
        return UploadResponse(graph_id=gid, nodes=graph.node_count,
                              edges=graph.edge_count,
                              switches=list(graph.switch_ids))

    @app.get("/graphs")
    async def list_graphs():
        return {"graphs": store.list_graphs()}

    @app.get("/graphs/{gid}")
    async def get_graph(gid: str):
        return store.get_graph_document(gid)

    @app.get("/graphs/{gid}/measures")
    async def graph_measures(gid: str):
        return ops.measures_payload(store.get_graph(gid))

    @app.post("/graphs/{gid}/service")
    async def graph_service(gid: str, request: ServiceRequest):
        return ops.service_payload(store.get_graph(gid), request)

    @app.post("/graphs/{gid}/simulate")
    async def simulate(gid: str, request: SimulateRequest):
        graph = store.get_graph(gid)
        report = ops.simulate_report(graph, request)
        rendered = ops.render_report_json(report)
        rid = store.put_report(rendered)
        return Response(content=rendered, media_type="application/json",
                        headers={"X-Report-Id": rid})

    @app.post("/graphs/{gid}/optimize", status_code=202)
    async def optimize(gid: str, request: OptimizeRequest):
        job = jobs.submit(gid, request)
        return {"job_id": job.job_id, "graph_id": gid}

    # -- jobs and reports ----------------------------------------------

    @app.get("/jobs/{jid}")
    async def job_status(jid: str):
        return jobs.get(jid).view()

    @app.post("/jobs/{jid}/cancel")
    async def job_cancel(jid: str):
        job = jobs.cancel(jid)
        return {"job_id": jid, "status": job.status, "cancelling": True}

    @app.get("/reports/{rid}")
    async def get_report(rid: str):
        return Response(content=store.get_report_bytes(rid),
                        media_type="application/json")

    return app


def __getattr__(name):
    # lazy module attribute so `uvicorn plantsim.gateway.app:app` works
    # without importers paying for a data directory
    if name == "app":
        return create_app()
    raise AttributeError(name)
