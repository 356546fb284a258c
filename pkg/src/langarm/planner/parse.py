"""Classification of raw planner replies.

parse_response is total: any input maps to exactly one classification
variant and nothing raises. Refusal detection is phrase-based against
the versioned cue asset, so it stays reproducible.
"""

from __future__ import annotations

import logging
import re
from functools import lru_cache

from ..assets import load_text
from ..patterns import PatternBlock, PatternError, parse_block
from ..sentinel import truncate_50
from .types import Classification, Clarification, Pattern, Refusal, Unparseable, VerdictReply

log = logging.getLogger(__name__)

_AXIS_LINE = re.compile(r"^\s*(?:output\s*:\s*)?([XYZG])\s*:(.*)$", re.IGNORECASE)
_MARKUP = re.compile(r"\*+")
_LABEL = re.compile(r"^(?:output|reason)\s*:\s*", re.IGNORECASE)


@lru_cache(maxsize=1)
def refusal_cues() -> tuple[str, ...]:
    return tuple(
        line.strip().lower()
        for line in load_text("refusal_cues.txt").splitlines()
        if line.strip()
    )


def extract_blocks(text: str) -> list[PatternBlock]:
    """Find every complete four-axis block in free-form reply text."""
    blocks: list[PatternBlock] = []
    current: dict[str, str] = {}

    def flush() -> None:
        if len(current) == 4:
            merged = "\n".join(f"{label}: {payload}" for label, payload in current.items())
            try:
                blocks.append(parse_block(merged, mode="auto"))
            except PatternError:
                log.debug("discarding unparseable block: %r", merged)
        current.clear()

    for line in text.splitlines():
        m = _AXIS_LINE.match(line)
        if not m:
            if len(current) == 4:
                flush()
            continue
        label = m.group(1).upper()
        if label in current:
            flush()
        current[label] = m.group(2).strip()
    flush()
    return blocks


def _clean_line(line: str) -> str:
    return _LABEL.sub("", _MARKUP.sub("", line).strip()).strip()


def parse_response(
    raw_text: str, expected: str = "any", max_len: int = 50
) -> Classification:
    """Map reply text to exactly one classification variant.

    expected narrows the reading: "pattern" favors control blocks,
    "verdict" splits the reply into the capped (summary, reason) line
    pair, "any" tries everything.
    """
    text = raw_text.strip()
    if not text:
        return Unparseable()

    if expected == "verdict":
        lines = [_clean_line(l) for l in text.splitlines() if _clean_line(l)]
        if not lines:
            return Unparseable()
        summary = truncate_50(lines[0], max_len)
        reason = truncate_50(lines[1], max_len) if len(lines) > 1 else ""
        return VerdictReply(summary, reason)

    blocks = extract_blocks(text)
    if blocks:
        if len(blocks) > 1:
            log.warning("reply contains %d pattern blocks; using the first", len(blocks))
        return Pattern(blocks[0])

    lowered = text.lower()
    if any(cue in lowered for cue in refusal_cues()):
        return Refusal(reason=text)

    if "?" in text:
        question = next(l.strip() for l in text.splitlines() if "?" in l)
        return Clarification(question=question)

    if expected == "any":
        lines = [_clean_line(l) for l in text.splitlines() if _clean_line(l)]
        if 1 <= len(lines) <= 2 and all(len(l) <= 60 for l in lines):
            summary = truncate_50(lines[0], max_len)
            reason = truncate_50(lines[1], max_len) if len(lines) > 1 else ""
            return VerdictReply(summary, reason)

    return Unparseable()
