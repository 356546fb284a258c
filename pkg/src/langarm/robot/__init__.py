"""URDF ingestion, hierarchy export, and conservative reach checks."""

from .model import (
    CyclicChain,
    DanglingReference,
    Joint,
    Link,
    MalformedXml,
    ReachEnvelope,
    ReachResult,
    RobotModel,
    chain_depth,
    parse_mermaid_edges,
    parse_urdf,
    reach_check,
    reach_envelope,
    summary_text,
    to_mermaid,
)

__all__ = [
    "CyclicChain",
    "DanglingReference",
    "Joint",
    "Link",
    "MalformedXml",
    "ReachEnvelope",
    "ReachResult",
    "RobotModel",
    "chain_depth",
    "parse_mermaid_edges",
    "parse_urdf",
    "reach_check",
    "reach_envelope",
    "summary_text",
    "to_mermaid",
]
