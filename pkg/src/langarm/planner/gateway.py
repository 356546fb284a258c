"""Chat-completion access to a remote planner.

The wire format is the common chat-completion shape: POST a JSON body
with model and messages, read choices[0].message.content. The transport
is injectable so retry behavior is testable without sockets; the
default transport uses requests.
"""

from __future__ import annotations

import base64
import os
import time
from pathlib import Path
from typing import Callable

from ..prompts import PromptBundle
from .parse import parse_response
from .types import PlannerResponse, ProviderConfig


class GatewayError(Exception):
    pass


class AuthError(GatewayError):
    pass


class Timeout(GatewayError):
    pass


class RateLimited(GatewayError):
    def __init__(self, retry_after: float | None = None):
        self.retry_after = retry_after
        super().__init__(
            "rate limited" + (f" (retry after {retry_after}s)" if retry_after else "")
        )


class TransportError(GatewayError):
    pass


class _Transient(Exception):
    """Internal: a retryable failure with the error to raise on exhaustion."""

    def __init__(self, final: GatewayError):
        self.final = final


# transport(url, headers, payload, timeout_s) -> (status_code, body_dict, headers)
Transport = Callable[[str, dict, dict, float], tuple[int, dict, dict]]


def _requests_transport(url: str, headers: dict, payload: dict, timeout_s: float):
    import requests

    try:
        resp = requests.post(url, headers=headers, json=payload, timeout=timeout_s)
    except requests.Timeout as e:
        raise _Transient(Timeout(str(e))) from e
    except requests.RequestException as e:
        raise _Transient(TransportError(str(e))) from e
    try:
        body = resp.json()
    except ValueError:
        body = {"raw": resp.text}
    return resp.status_code, body, dict(resp.headers)


def _image_part(ref: str) -> dict:
    path = Path(ref)
    if path.is_file():
        suffix = path.suffix.lstrip(".").lower() or "octet-stream"
        encoded = base64.b64encode(path.read_bytes()).decode("ascii")
        url = f"data:image/{suffix};base64,{encoded}"
    else:
        url = str(ref)
    return {"type": "image_url", "image_url": {"url": url}}


def build_payload(config: ProviderConfig, bundle: PromptBundle) -> dict:
    if bundle.image_refs:
        content: list[dict] | str = [{"type": "text", "text": bundle.rendered}] + [
            _image_part(ref) for ref in bundle.image_refs
        ]
    else:
        content = bundle.rendered
    return {
        "model": config.model,
        "messages": [{"role": "user", "content": content}],
    }


def complete(
    config: ProviderConfig,
    bundle: PromptBundle,
    expected: str = "pattern",
    transport: Transport | None = None,
    sleep: Callable[[float], None] = time.sleep,
) -> PlannerResponse:
    """One request/response against the configured endpoint.

    Transient failures (connection errors, timeouts, 429, 5xx) retry
    with exponential backoff up to config.max_retries; auth failures and
    other client errors raise immediately. Latency covers the whole
    call including retries.
    """
    credential = os.environ.get(config.credential_env, "")
    if not credential:
        raise AuthError(
            f"no credential in environment variable {config.credential_env!r}"
        )
    headers = {
        "Authorization": f"Bearer {credential}",
        "Content-Type": "application/json",
    }
    payload = build_payload(config, bundle)
    transport = transport or _requests_transport

    started = time.perf_counter()
    delay = 0.5
    attempts = config.max_retries + 1
    last_error: GatewayError = TransportError("no attempts made")
    for attempt in range(attempts):
        try:
            status, body, resp_headers = transport(
                config.endpoint, headers, payload, config.timeout_s
            )
        except _Transient as t:
            last_error = t.final
        else:
            if status in (401, 403):
                raise AuthError(f"endpoint rejected the credential (HTTP {status})")
            if status == 429:
                retry_after = None
                raw = resp_headers.get("Retry-After") or resp_headers.get("retry-after")
                if raw is not None:
                    try:
                        retry_after = float(raw)
                    except ValueError:
                        retry_after = None
                last_error = RateLimited(retry_after)
            elif 500 <= status < 600:
                last_error = TransportError(f"server error HTTP {status}")
            elif status != 200:
                raise TransportError(f"unexpected HTTP {status}: {body}")
            else:
                try:
                    text = body["choices"][0]["message"]["content"]
                except (KeyError, IndexError, TypeError) as e:
                    raise TransportError(f"malformed completion body: {e}") from e
                latency = time.perf_counter() - started
                return PlannerResponse(
                    raw_text=text,
                    classified=parse_response(text, expected),
                    latency_s=latency,
                )
        if attempt < attempts - 1:
            sleep(delay)
            delay *= 2
    raise last_error
