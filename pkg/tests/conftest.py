import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest


class _StubHandler(BaseHTTPRequestHandler):
    """Scriptable OpenAI-compatible endpoint for client tests."""

    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        body = json.loads(self.rfile.read(length)) if length else {}
        self.server.requests.append(
            {"path": self.path, "body": body, "headers": dict(self.headers)}
        )
        action, payload = (
            self.server.script.pop(0) if self.server.script else ("chat", {})
        )
        if action == "status":
            self.send_response(payload)
            self.end_headers()
            self.wfile.write(b"{}")
            return
        if action == "garbage":
            self.send_response(200)
            self.end_headers()
            self.wfile.write(b"this is not json")
            return
        if action == "raw":
            data = json.dumps(payload).encode()
        elif action == "chat":
            data = json.dumps(
                {
                    "choices": [
                        {
                            "message": {"content": payload.get("text", "stub reply")},
                            "finish_reason": payload.get("finish_reason", "stop"),
                        }
                    ],
                    "usage": {
                        "prompt_tokens": payload.get("prompt_tokens", 5),
                        "completion_tokens": payload.get("completion_tokens", 3),
                    },
                }
            ).encode()
        elif action == "embed":
            data = json.dumps(
                {
                    "data": [
                        {"index": i, "embedding": vec}
                        for i, vec in enumerate(payload["vectors"])
                    ]
                }
            ).encode()
        else:  # pragma: no cover
            raise AssertionError(f"unknown stub action {action}")
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, *args):  # silence request logging in test output
        pass


class StubServer:
    def __init__(self):
        self.httpd = ThreadingHTTPServer(("127.0.0.1", 0), _StubHandler)
        self.httpd.requests = []
        self.httpd.script = []
        self._thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)
        self._thread.start()

    @property
    def url(self) -> str:
        host, port = self.httpd.server_address
        return f"http://{host}:{port}"

    @property
    def requests(self):
        return self.httpd.requests

    def script(self, *actions):
        self.httpd.script = list(actions)

    def close(self):
        self.httpd.shutdown()
        self.httpd.server_close()


@pytest.fixture
def stub_server():
    server = StubServer()
    yield server
    server.close()
