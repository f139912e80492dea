"""Offline stand-in for the chat endpoint: replays fixtures by request hash.

A fixtures document maps the SHA-256 of a request's messages (computed with
:func:`request_hash`, which both this server and fixture builders must use)
to the text the endpoint should answer with.  Unknown requests get the
optional default response or a 404, which the client surfaces as a
transport error.
"""

from __future__ import annotations

import hashlib
import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

from .jsonio import canonical_json
from .llm import ChatMessage

MessageLike = Union[ChatMessage, Mapping[str, str]]


def request_hash(messages: Sequence[MessageLike]) -> str:
    """Stable hash of a chat request's messages (roles and contents only)."""
    normalized = []
    for message in messages:
        if isinstance(message, ChatMessage):
            normalized.append(message.as_dict())
        else:
            normalized.append({"role": message["role"], "content": message["content"]})
    return hashlib.sha256(canonical_json(normalized).encode("utf-8")).hexdigest()


def load_fixtures(path: str | Path) -> tuple[dict[str, str], Optional[str]]:
    """Read a fixtures file: ``{"responses": {hash: text}, "default": text?}``."""
    obj = json.loads(Path(path).read_text("utf-8"))
    responses = obj.get("responses", {})
    if not isinstance(responses, dict):
        raise ValueError("fixtures 'responses' must be an object")
    return dict(responses), obj.get("default")


class MockLlmServer:
    """Threaded HTTP server answering chat-completion POSTs from fixtures.

    Use as a context manager in tests; ``url`` is the endpoint to point the
    client at.  The request counter helps assert memoization behavior.
    """

    def __init__(
        self,
        responses: Mapping[str, str],
        default: Optional[str] = None,
        host: str = "127.0.0.1",
        port: int = 0,
    ):
        self.responses = dict(responses)
        self.default = default
        self.request_count = 0
        self._lock = threading.Lock()
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self) -> None:  # noqa: N802 - http.server API
                length = int(self.headers.get("Content-Length", "0"))
                try:
                    body = json.loads(self.rfile.read(length).decode("utf-8"))
                    key = request_hash(body["messages"])
                except (ValueError, KeyError, TypeError):
                    self._reply(400, {"error": "malformed request"})
                    return
                with outer._lock:
                    outer.request_count += 1
                content = outer.responses.get(key, outer.default)
                if content is None:
                    self._reply(404, {"error": f"no fixture for request {key}"})
                    return
                self._reply(200, {"choices": [{"message": {"content": content}}]})

            def _reply(self, status: int, payload: dict) -> None:
                data = json.dumps(payload).encode("utf-8")
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

            def log_message(self, *args) -> None:  # silence per-request noise
                pass

        self._server = ThreadingHTTPServer((host, port), Handler)
        self._thread: Optional[threading.Thread] = None

    @property
    def url(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}/v1/chat/completions"

    def start(self) -> "MockLlmServer":
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()
        if self._thread is not None:
            self._thread.join(timeout=2)
            self._thread = None

    def __enter__(self) -> "MockLlmServer":
        return self.start()

    def __exit__(self, *exc_info) -> None:
        self.stop()


def serve_fixtures(path: str | Path, host: str = "127.0.0.1", port: int = 8191) -> MockLlmServer:
    """Start a fixture server for the CLI; caller is responsible for stop()."""
    responses, default = load_fixtures(path)
    return MockLlmServer(responses, default=default, host=host, port=port).start()
