"""HTTP/JSON session service backing the interactive explorer.

Sessions live in memory only.  Each session holds a seed quiver and the
mutation history; every response carries the full framed state with vertex
colors so clients never compute mutations themselves.  Operations on one
session are serialized by a per-session lock; distinct sessions are
independent.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import certcheck, obstructions, sequences
from .core import ExchangeMatrix, IceQuiver, frame, mutate, statuses
from .docio import DocumentError, as_exchange, parse_quiver, quiver_document


@dataclass
class Session:
    seed: ExchangeMatrix
    current: IceQuiver
    history: list[int] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def state_document(self, session_id: str) -> dict:
        colors = [s.value for s in statuses(self.current)]
        principal = self.current.entries[: self.current.n]
        arrows = [
            [i + 1, j + 1, principal[i][j]]
            for i in range(self.current.n)
            for j in range(self.current.n)
            if principal[i][j] > 0
        ]
        return {
            "session_id": session_id,
            "n": self.current.n,
            "matrix": [list(r) for r in principal],
            "frozen_rows": [list(r) for r in self.current.frozen_rows],
            "arrows": arrows,
            "colors": colors,
            "history": list(self.history),
            "all_red": all(c == "red" for c in colors),
        }


def create_app(ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="quiverlab session service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        return session

    @app.exception_handler(DocumentError)
    async def document_error(_request: Request, exc: DocumentError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await request.json()
        seed = as_exchange(parse_quiver(body))
        session = Session(seed=seed, current=frame(seed))
        session_id = uuid.uuid4().hex[:12]
        sessions[session_id] = session
        return {"session_id": session_id, "state": session.state_document(session_id)}

    @app.get("/sessions/{session_id}")
    def get_state(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return {"state": session.state_document(session_id)}

    @app.post("/sessions/{session_id}/mutate")
    async def mutate_vertex(session_id: str, request: Request):
        session = get_session(session_id)
        body = await request.json()
        vertex = body.get("vertex")
        if not isinstance(vertex, int):
            raise HTTPException(status_code=400, detail="body must carry an integer 'vertex'")
        with session.lock:
            if not 1 <= vertex <= session.current.n:
                raise HTTPException(
                    status_code=409,
                    detail=f"vertex {vertex} is not mutable (1..{session.current.n})",
                )
            session.current = mutate(session.current, vertex)
            session.history.append(vertex)
            return {"state": session.state_document(session_id)}

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str):
        session = get_session(session_id)
        with session.lock:
            if not session.history:
                raise HTTPException(status_code=409, detail="nothing to undo")
            session.history.pop()
            state = frame(session.seed)
            for k in session.history:
                state = mutate(state, k)
            session.current = state
            return {"state": session.state_document(session_id)}

    @app.post("/sessions/{session_id}/reset")
    def reset(session_id: str):
        session = get_session(session_id)
        with session.lock:
            session.history.clear()
            session.current = frame(session.seed)
            return {"state": session.state_document(session_id)}

    @app.post("/sessions/{session_id}/search")
    async def search(session_id: str, request: Request):
        session = get_session(session_id)
        body = await request.json()
        kind = body.get("kind")
        depth = body.get("max_depth", 8)
        if kind not in ("mgs", "g2r") or not isinstance(depth, int) or depth < 0:
            raise HTTPException(
                status_code=400, detail="body must carry kind in {mgs,g2r} and max_depth >= 0"
            )
        with session.lock:
            seed = session.seed
        if kind == "mgs":
            outcome = sequences.search_mgs(seed, depth)
        else:
            outcome = sequences.search_g2r(seed, depth)
        if isinstance(outcome, sequences.Found):
            return {"outcome": "found", "sequence": list(outcome.sequence)}
        if isinstance(outcome, sequences.ExhaustedToDepth):
            return {"outcome": "exhausted", "depth": outcome.depth}
        return {
            "outcome": "obstructed",
            "certificate": obstructions.certificate_document(outcome.certificate),
        }

    @app.get("/sessions/{session_id}/certificates")
    def certificates(session_id: str):
        session = get_session(session_id)
        with session.lock:
            seed = session.seed
        out: dict = {}
        cert = obstructions.no_mgs_certificate(seed)
        out["no_mgs"] = obstructions.certificate_document(cert) if cert else None
        class_cert = obstructions.class_no_mgs_certificate(seed)
        out["class_no_mgs"] = (
            obstructions.certificate_document(class_cert) if class_cert else None
        )
        la = obstructions.local_acyclicity_certificate(IceQuiver.from_exchange(seed))
        if isinstance(la, obstructions.LocalAcyclicityCertificate):
            doc = obstructions.certificate_document(la)
            out["local_acyclicity"] = doc
            out["local_acyclicity_checked"] = not certcheck.check_certificate(doc)
        else:
            out["local_acyclicity"] = None
            out["local_acyclicity_checked"] = False
        return out

    @app.get("/quivers/{name}")
    def shipped_quiver(name: str):
        from .repro import load_data

        if name not in ("qce", "x7_b1", "x7_b2", "markov"):
            raise HTTPException(status_code=404, detail=f"no shipped quiver {name!r}")
        return load_data(f"{name}.json")

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def serve(host: str = "127.0.0.1", port: int = 8775, ui_dir: str | None = None) -> None:
    import uvicorn

    uvicorn.run(create_app(ui_dir=ui_dir), host=host, port=port)
