"""Append-only transcript store for offline record/replay."""

from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path

from .types import (
    PlannerResponse,
    TranscriptRecord,
    classification_from_dict,
    classification_to_dict,
)


class NotRecorded(Exception):
    def __init__(self, checksum: str):
        self.checksum = checksum
        super().__init__(f"no transcript record for checksum {checksum}")


class TranscriptStore:
    """One JSON record per line; records are only ever appended."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def append(self, record: TranscriptRecord) -> None:
        line = json.dumps(
            {
                "timestamp": record.timestamp,
                "checksum": record.checksum,
                "prompt": record.prompt,
                "image_refs": list(record.image_refs),
                "raw_response": record.raw_response,
                "classification": record.classification,
                "latency_s": record.latency_s,
            },
            separators=(",", ":"),
        )
        with self.path.open("a", encoding="utf-8") as f:
            f.write(line + "\n")

    def records(self) -> list[TranscriptRecord]:
        if not self.path.exists():
            return []
        out = []
        for line in self.path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            data = json.loads(line)
            out.append(
                TranscriptRecord(
                    timestamp=data["timestamp"],
                    checksum=data["checksum"],
                    prompt=data["prompt"],
                    raw_response=data["raw_response"],
                    classification=data["classification"],
                    latency_s=data.get("latency_s", 0.0),
                    image_refs=tuple(data.get("image_refs", [])),
                )
            )
        return out

    def replay(self, checksum: str) -> PlannerResponse:
        """Return the stored response for a prompt checksum, byte-identically."""
        for data in self.records():
            if data.checksum == checksum:
                return PlannerResponse(
                    raw_text=data.raw_response,
                    classified=classification_from_dict(data.classification),
                    latency_s=data.latency_s,
                )
        raise NotRecorded(checksum)


def record(
    store: TranscriptStore,
    checksum: str,
    prompt: str,
    response: PlannerResponse,
    image_refs: tuple[str, ...] = (),
) -> TranscriptRecord:
    rec = TranscriptRecord(
        timestamp=datetime.now(timezone.utc).isoformat(),
        checksum=checksum,
        prompt=prompt,
        raw_response=response.raw_text,
        classification=classification_to_dict(response.classified),
        latency_s=response.latency_s,
        image_refs=image_refs,
    )
    store.append(rec)
    return rec


def replay(store: TranscriptStore, checksum: str) -> PlannerResponse:
    return store.replay(checksum)
