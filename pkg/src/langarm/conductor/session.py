"""Live sessions: one world lineage, serialized commands, an ordered event feed."""

from __future__ import annotations

import base64
import threading
import uuid
from dataclasses import dataclass, field

from ..patterns import expand
from ..planner import (
    Clarification,
    Pattern,
    ProviderConfig,
    Refusal,
    TranscriptStore,
    complete,
    extract_blocks,
    mock_plan,
)
from ..prompts import build
from ..render import Viewpoint, frame_stack
from ..robot import RobotModel
from ..sentinel import Verdict, check_trajectory, verbalize
from ..world import WorldState, world_to_dict
from ..world import step as world_step

STEP_BATCH = 25


class UnknownSession(KeyError):
    pass


@dataclass(frozen=True)
class SessionEvent:
    seq: int
    kind: str  # command_accepted | steps | verdict | done
    payload: dict


@dataclass
class Session:
    id: str
    world: WorldState
    planner: str = "mock"
    strategy: str = "improved"
    level: str = "B"
    robot: RobotModel | None = None
    provider: ProviderConfig | None = None
    store: TranscriptStore | None = None
    history: list[WorldState] = field(default_factory=list)
    feed: list[SessionEvent] = field(default_factory=list)
    command_log: list[str] = field(default_factory=list)
    _next_seq: int = 1
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self) -> None:
        if not self.history:
            self.history.append(self.world)

    def _emit(self, kind: str, payload: dict) -> SessionEvent:
        event = SessionEvent(self._next_seq, kind, payload)
        self._next_seq += 1
        self.feed.append(event)
        return event

    def _verdict_payload(self, verdict: Verdict) -> dict:
        return {
            "severity": verdict.severity,
            "summary": verdict.summary,
            "reason": verdict.reason,
            "source": verdict.source,
            "tick": verdict.tick,
            "text": verbalize(verdict),
            "short": verbalize(verdict, mode="fifty_char"),
        }

    def post_command(self, text: str) -> dict:
        """Run the full loop: plan, safety-check, execute, verbalize.

        A rejection is a normal outcome: the result carries the verdict
        and the feed gets verdict + done events either way.
        """
        with self._lock:
            self.command_log.append(text)
            self._emit("command_accepted", {"text": text})

            if self.planner == "mock":
                resp = mock_plan(
                    text, self.world, robot=self.robot, grammar=self.strategy
                )
            elif self.planner == "remote":
                bundle = build(self.level, text, world=self.world, grammar=self.strategy)
                resp = complete(self.provider, bundle, expected="pattern")
            elif self.planner == "replay":
                bundle = build(self.level, text, world=self.world, grammar=self.strategy)
                resp = self.store.replay(bundle.checksum)
            else:
                raise ValueError(f"unknown planner {self.planner!r}")

            if isinstance(resp.classified, (Refusal, Clarification)):
                reason = (
                    resp.classified.reason
                    if isinstance(resp.classified, Refusal)
                    else resp.classified.question
                )
                verdict = Verdict("reject", "Command rejected.", reason, "planner")
                self._emit("verdict", self._verdict_payload(verdict))
                self._emit("done", {"status": "rejected"})
                return {"status": "rejected", "verdict": self._verdict_payload(verdict)}

            if not isinstance(resp.classified, Pattern):
                verdict = Verdict(
                    "reject", "Unparseable reply.", "planner reply was unparseable", "planner"
                )
                self._emit("verdict", self._verdict_payload(verdict))
                self._emit("done", {"status": "rejected"})
                return {"status": "rejected", "verdict": self._verdict_payload(verdict)}

            collision_count = 0
            for block in extract_blocks(resp.raw_text):
                traj = expand(block, provenance=f"{self.planner}_planner")
                pre = check_trajectory(self.world, traj, robot=self.robot)
                for verdict in pre:
                    self._emit("verdict", self._verdict_payload(verdict))
                rejects = [v for v in pre if v.severity == "reject"]
                if rejects:
                    self._emit("done", {"status": "rejected"})
                    return {
                        "status": "rejected",
                        "verdict": self._verdict_payload(rejects[0]),
                    }
                current = self.world
                batch: list[dict] = []
                for delta in traj.steps:
                    current, events = world_step(current, delta)
                    self.history.append(current)
                    collision_count += sum(1 for e in events if e.kind == "collision")
                    batch.append(
                        {
                            "tick": current.tick,
                            "ee_pos": list(current.ee_pos),
                            "grasped": current.grasped,
                            "events": [
                                {"kind": e.kind, "target": e.target} for e in events
                            ],
                        }
                    )
                    if len(batch) == STEP_BATCH:
                        self._emit("steps", {"steps": batch})
                        batch = []
                if batch:
                    self._emit("steps", {"steps": batch})
                self.world = current
            self._emit(
                "done", {"status": "completed", "collisions": collision_count}
            )
            return {"status": "completed", "collisions": collision_count}

    def state(self) -> dict:
        return {
            "session_id": self.id,
            "world": world_to_dict(self.world),
            "last_seq": self._next_seq - 1,
            "commands": list(self.command_log),
        }

    def events_since(self, since: int) -> list[SessionEvent]:
        return [e for e in self.feed if e.seq > since]

    def frames(self, stride: int, views: list[Viewpoint]) -> dict:
        stack = frame_stack(self.history, stride, views)
        frames = []
        for r, row in enumerate(stack.rows):
            for c, frame in enumerate(row):
                frames.append(
                    {
                        "row": r,
                        "column": c,
                        "tick": stack.ticks[c],
                        "width": frame.width,
                        "height": frame.height,
                        "ppm_base64": base64.b64encode(frame.to_ppm()).decode("ascii"),
                    }
                )
        return {"layout": stack.layout, "rows": len(stack.rows), "frames": frames}


class SessionManager:
    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, **kwargs) -> Session:
        session = Session(id=uuid.uuid4().hex[:12], **kwargs)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            if session_id not in self._sessions:
                raise UnknownSession(session_id)
            return self._sessions[session_id]
