"""Planner access: remote gateway, deterministic mock, classification, replay."""

from .gateway import (
    AuthError,
    GatewayError,
    RateLimited,
    Timeout,
    TransportError,
    build_payload,
    complete,
)
from .mock import mock_plan
from .parse import extract_blocks, parse_response, refusal_cues
from .transcript import NotRecorded, TranscriptStore, record, replay
from .types import (
    Clarification,
    Classification,
    Pattern,
    PlannerResponse,
    ProviderConfig,
    Refusal,
    TranscriptRecord,
    Unparseable,
    VerdictReply,
    classification_from_dict,
    classification_to_dict,
)

__all__ = [
    "AuthError",
    "Clarification",
    "Classification",
    "GatewayError",
    "NotRecorded",
    "Pattern",
    "PlannerResponse",
    "ProviderConfig",
    "RateLimited",
    "Refusal",
    "Timeout",
    "TranscriptRecord",
    "TranscriptStore",
    "TransportError",
    "Unparseable",
    "VerdictReply",
    "build_payload",
    "classification_from_dict",
    "classification_to_dict",
    "complete",
    "extract_blocks",
    "mock_plan",
    "parse_response",
    "record",
    "refusal_cues",
    "replay",
]
