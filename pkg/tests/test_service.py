"""HTTP service tests: session lifecycle, command loop, frames, event stream."""

import json

import pytest
from fastapi.testclient import TestClient

from langarm.conductor.service import create_app


@pytest.fixture
def client():
    return TestClient(create_app())


def _create(client, world="obstacle", **kwargs):
    resp = client.post("/sessions", json={"world": world, **kwargs})
    assert resp.status_code == 200
    return resp.json()["session_id"]


def _parse_sse(text):
    events = []
    for chunk in text.split("\n\n"):
        if not chunk.strip():
            continue
        fields = {}
        for line in chunk.splitlines():
            key, _, value = line.partition(": ")
            fields[key] = value
        events.append(
            {"seq": int(fields["id"]), "kind": fields["event"], "data": json.loads(fields["data"])}
        )
    return events


class TestSessions:
    def test_create_and_state(self, client):
        sid = _create(client)
        state = client.get(f"/sessions/{sid}/state").json()
        assert state["session_id"] == sid
        assert state["world"]["ee"]["pos"] == [0.0, 0.0, 10.0]

    def test_unknown_session_404(self, client):
        assert client.get("/sessions/nope/state").status_code == 404
        assert (
            client.post("/sessions/nope/command", json={"text": "hi"}).status_code == 404
        )

    def test_unknown_world_400(self, client):
        resp = client.post("/sessions", json={"world": "atlantis"})
        assert resp.status_code == 400

    def test_inline_world(self, client):
        world = {
            "ee": {"pos": [0, 0, 0]},
            "objects": [
                {"id": "red", "color": "red", "center": [30, 0, 0], "half_extents": [5, 5, 5]}
            ],
        }
        sid = _create(client, world=world)
        result = client.post(
            f"/sessions/{sid}/command", json={"text": "Grasp the red cube."}
        ).json()
        assert result["status"] == "completed"


class TestCommandLoop:
    def test_obstacle_approach_no_collision_verdicts(self, client):
        sid = _create(client, world="obstacle")
        result = client.post(
            f"/sessions/{sid}/command", json={"text": "Move towards the object."}
        ).json()
        assert result["status"] == "completed"
        assert result["collisions"] == 0
        events = _parse_sse(client.get(f"/sessions/{sid}/events?since=0").text)
        kinds = [e["kind"] for e in events]
        assert kinds[0] == "command_accepted"
        assert kinds[-1] == "done"
        assert "verdict" not in kinds  # clean trajectory produces no verdict events
        state = client.get(f"/sessions/{sid}/state").json()
        assert state["world"]["ee"]["pos"] == [50.0, 0.0, 10.0]

    def test_zone_task_completes_in_zone(self, client):
        sid = _create(client, world="zone")
        result = client.post(
            f"/sessions/{sid}/command",
            json={"text": "Grasp the red cube and place it in zone A."},
        ).json()
        assert result["status"] == "completed"
        state = client.get(f"/sessions/{sid}/state").json()
        red = next(o for o in state["world"]["objects"] if o["id"] == "red")
        zone = state["world"]["zones"][0]
        assert all(
            zone["min"][i] <= red["center"][i] <= zone["max"][i] for i in range(3)
        )

    def test_hazard_command_rejected_with_verdict(self, client):
        sid = _create(client, world="hazard")
        result = client.post(
            f"/sessions/{sid}/command",
            json={"text": "Move the blue cube to the yellow zone"},
        ).json()
        assert result["status"] == "rejected"
        assert result["verdict"]["severity"] == "reject"
        assert "melt" in result["verdict"]["reason"]
        events = _parse_sse(client.get(f"/sessions/{sid}/events?since=0").text)
        assert [e["kind"] for e in events] == ["command_accepted", "verdict", "done"]

    def test_empty_command_400(self, client):
        sid = _create(client)
        resp = client.post(f"/sessions/{sid}/command", json={"text": "  "})
        assert resp.status_code == 400

    def test_loop_integrity_never_silent(self, client):
        # every command yields either steps or a rejection verdict
        sid = _create(client, world="obstacle")
        for text in ["Pick the red cube.", "Sing a song", "Move right for 5mm"]:
            before = len(_parse_sse(client.get(f"/sessions/{sid}/events?since=0").text))
            result = client.post(f"/sessions/{sid}/command", json={"text": text}).json()
            events = _parse_sse(client.get(f"/sessions/{sid}/events?since=0").text)
            new = events[before:]
            assert new[-1]["kind"] == "done"
            if result["status"] == "completed":
                assert any(e["kind"] == "steps" for e in new)
            else:
                assert any(e["kind"] == "verdict" for e in new)


class TestEventStream:
    def test_monotone_sequence_and_resume(self, client):
        sid = _create(client, world="observation")
        client.post(f"/sessions/{sid}/command", json={"text": "Move right for 30mm"})
        all_events = _parse_sse(client.get(f"/sessions/{sid}/events?since=0").text)
        seqs = [e["seq"] for e in all_events]
        assert seqs == sorted(seqs)
        assert len(set(seqs)) == len(seqs)

        mid = seqs[len(seqs) // 2]
        resumed = _parse_sse(client.get(f"/sessions/{sid}/events?since={mid}").text)
        assert [e["seq"] for e in resumed] == [s for s in seqs if s > mid]

        # reconnect overlap then dedupe by seq reproduces the full feed
        first = _parse_sse(client.get(f"/sessions/{sid}/events?since=0").text)
        second = _parse_sse(client.get(f"/sessions/{sid}/events?since=0").text)
        seen = {}
        for e in first + second:
            seen.setdefault(e["seq"], e)
        assert sorted(seen) == seqs

    def test_steps_batched(self, client):
        sid = _create(client, world="observation")
        client.post(f"/sessions/{sid}/command", json={"text": "Move right for 60mm"})
        events = _parse_sse(client.get(f"/sessions/{sid}/events?since=0").text)
        step_events = [e for e in events if e["kind"] == "steps"]
        assert len(step_events) == 3  # 60 steps in batches of 25
        assert sum(len(e["data"]["steps"]) for e in step_events) == 60


class TestFrames:
    def test_frames_manifest(self, client):
        sid = _create(client, world="obstacle")
        client.post(f"/sessions/{sid}/command", json={"text": "Move right for 10mm"})
        manifest = client.get(f"/sessions/{sid}/frames?stride=5&views=top,front").json()
        assert manifest["layout"] == "grid"
        assert manifest["rows"] == 2
        # 11 states (initial + 10 steps) sampled at stride 5 -> ticks 0,5,10
        ticks = sorted({f["tick"] for f in manifest["frames"]})
        assert ticks == [0, 5, 10]
        import base64

        first = manifest["frames"][0]
        raw = base64.b64decode(first["ppm_base64"])
        assert raw.startswith(b"P6 ")

    def test_bad_view_400(self, client):
        sid = _create(client)
        assert client.get(f"/sessions/{sid}/frames?views=isometric").status_code == 400


class TestRobotAttached:
    def test_session_with_robot_runs_reach_checks(self, client):
        sid = _create(client, world="obstacle", robot="arm6")
        result = client.post(
            f"/sessions/{sid}/command", json={"text": "Pick the red cube."}
        ).json()
        assert result["status"] == "completed"

    def test_out_of_reach_command_rejected(self, client):
        world = {
            "ee": {"pos": [0, 0, 0]},
            "objects": [
                {
                    "id": "red",
                    "color": "red",
                    "center": [900, 0, 0],
                    "half_extents": [15, 15, 15],
                }
            ],
        }
        sid = _create(client, world=world, robot="reach700")
        result = client.post(
            f"/sessions/{sid}/command", json={"text": "Pick the red cube."}
        ).json()
        assert result["status"] == "rejected"
        assert "reach" in result["verdict"]["reason"].lower()
