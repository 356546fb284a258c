"""HTTP service around sessions: JSON bodies plus a server-sent event feed.

The /events endpoint streams the session backlog after the given
sequence number and then closes; clients resume by reconnecting with
?since=<last seen seq>. Together with monotone sequence numbers that
gives at-least-once delivery with client-side dedupe.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import StreamingResponse
from pydantic import BaseModel

from ..planner import ProviderConfig, TranscriptStore
from ..render import Viewpoint
from ..world import world_from_dict
from ..worlds import BUILTIN_WORLDS, builtin_world
from .session import SessionManager, UnknownSession
from .tasks import resolve_robot


class CreateSessionBody(BaseModel):
    world: str | dict = "obstacle"
    planner: str = "mock"
    strategy: str = "improved"
    robot: str | None = None
    transcript: str | None = None


class CommandBody(BaseModel):
    text: str


def create_app(provider: ProviderConfig | None = None) -> FastAPI:
    app = FastAPI(title="langarm", version="0.1.0")
    manager = SessionManager()

    def get_session(session_id: str):
        try:
            return manager.get(session_id)
        except UnknownSession:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        if isinstance(body.world, dict):
            world = world_from_dict(body.world)
        elif body.world in BUILTIN_WORLDS:
            world = builtin_world(body.world)
        else:
            raise HTTPException(status_code=400, detail=f"unknown world {body.world!r}")
        store = TranscriptStore(body.transcript) if body.transcript else None
        session = manager.create(
            world=world,
            planner=body.planner,
            strategy=body.strategy,
            robot=resolve_robot(body.robot),
            provider=provider,
            store=store,
        )
        return {"session_id": session.id, "state": session.state()}

    @app.post("/sessions/{session_id}/command")
    def post_command(session_id: str, body: CommandBody):
        session = get_session(session_id)
        if not body.text.strip():
            raise HTTPException(status_code=400, detail="command text is empty")
        result = session.post_command(body.text)
        return {**result, "last_seq": session.state()["last_seq"]}

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str):
        return get_session(session_id).state()

    @app.get("/sessions/{session_id}/frames")
    def get_frames(
        session_id: str,
        stride: int = Query(default=25, ge=1),
        views: str = Query(default="top"),
    ):
        session = get_session(session_id)
        viewpoints = []
        for name in views.split(","):
            name = name.strip()
            if name not in ("top", "front", "side"):
                raise HTTPException(status_code=400, detail=f"unknown view {name!r}")
            viewpoints.append(Viewpoint(name, scale=0.2))
        return session.frames(stride, viewpoints)

    @app.get("/sessions/{session_id}/events")
    def get_events(session_id: str, since: int = Query(default=0, ge=0)):
        session = get_session(session_id)
        events = session.events_since(since)

        def sse():
            for event in events:
                data = json.dumps({"kind": event.kind, **event.payload})
                yield f"id: {event.seq}\nevent: {event.kind}\ndata: {data}\n\n"

        return StreamingResponse(sse(), media_type="text/event-stream")

    return app
