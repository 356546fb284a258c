"""Planner response classification and provider configuration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from ..patterns import PatternBlock, parse_block, serialize


@dataclass(frozen=True)
class Pattern:
    block: PatternBlock


@dataclass(frozen=True)
class Refusal:
    reason: str


@dataclass(frozen=True)
class Clarification:
    question: str


@dataclass(frozen=True)
class VerdictReply:
    summary: str
    reason: str


@dataclass(frozen=True)
class Unparseable:
    pass


Classification = Union[Pattern, Refusal, Clarification, VerdictReply, Unparseable]


@dataclass(frozen=True)
class PlannerResponse:
    raw_text: str
    classified: Classification
    latency_s: float = 0.0


@dataclass(frozen=True)
class ProviderConfig:
    endpoint: str
    model: str
    credential_env: str = "LANGARM_API_KEY"
    timeout_s: float = 30.0
    max_retries: int = 2

    def __post_init__(self) -> None:
        if self.timeout_s <= 0:
            raise ValueError("timeout must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be non-negative")


@dataclass(frozen=True)
class TranscriptRecord:
    timestamp: str
    checksum: str
    prompt: str
    raw_response: str
    classification: dict
    latency_s: float = 0.0
    image_refs: tuple[str, ...] = field(default_factory=tuple)


def classification_to_dict(c: Classification) -> dict:
    if isinstance(c, Pattern):
        return {"type": "pattern", "block": serialize(c.block, "improved")}
    if isinstance(c, Refusal):
        return {"type": "refusal", "reason": c.reason}
    if isinstance(c, Clarification):
        return {"type": "clarification", "question": c.question}
    if isinstance(c, VerdictReply):
        return {"type": "verdict", "summary": c.summary, "reason": c.reason}
    return {"type": "unparseable"}


def classification_from_dict(data: dict) -> Classification:
    kind = data.get("type")
    if kind == "pattern":
        return Pattern(parse_block(data["block"], mode="improved"))
    if kind == "refusal":
        return Refusal(data["reason"])
    if kind == "clarification":
        return Clarification(data["question"])
    if kind == "verdict":
        return VerdictReply(data["summary"], data["reason"])
    return Unparseable()
