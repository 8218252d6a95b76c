"""HTTP backend for reviewing low-confidence pseudo-labels.

Serves the pending review queue of a bootstrap state directory and
accepts corrections, persisting each decision with an atomic rewrite
(temp file + rename) so a crash never leaves a half-written queue.

    GET  /queue?limit=N&cursor=C  {"items": [...], "cursor": next-or-null}
    POST /corrections             {"sentence_id", "token_index",
                                   "label"} or {..., "confirm": true}
    GET  /progress                {"pending", "corrected", "confirmed",
                                   "iteration"}
    GET  /ui/...                  static assets of the browser client

Single-annotator model: requests may be concurrent but every queue
mutation serializes through one lock. No authentication.
"""

from __future__ import annotations

import json
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .bootstrap import STATUS_PENDING, BootstrapState, write_queue
from .errors import CorruptStateError
from .labels import LABELS

_DEFAULT_LIMIT = 50
_MAX_LIMIT = 1000


class ReviewService:
    """Queue operations over a loaded bootstrap state."""

    def __init__(self, state: BootstrapState):
        self.state = state
        self._lock = threading.Lock()
        self._held_by_id = {sid: sent for sid, sent in state.held}
        self._items_by_key = {
            (item.sentence_id, item.token_index): item for item in state.queue
        }

    def queue_page(self, limit: int = _DEFAULT_LIMIT, cursor: int = 0) -> dict:
        limit = max(1, min(limit, _MAX_LIMIT))
        with self._lock:
            pending = [item for item in self.state.queue if item.status == STATUS_PENDING]
            page = pending[cursor : cursor + limit]
            next_cursor = cursor + limit if cursor + limit < len(pending) else None
            items = []
            for item in page:
                sent = self._held_by_id.get(item.sentence_id, [])
                items.append(
                    {
                        "sentence_id": item.sentence_id,
                        "token_index": item.token_index,
                        "token_text": item.token_text,
                        "predicted": item.predicted,
                        "confidence": round(item.confidence, 6),
                        "tokens": [
                            {"text": text, "label": label} for text, label in sent
                        ],
                    }
                )
        return {"items": items, "cursor": next_cursor}

    def progress(self) -> dict:
        with self._lock:
            by_status = {"Pending": 0, "Corrected": 0, "Confirmed": 0}
            for item in self.state.queue:
                by_status[item.status] += 1
        return {
            "pending": by_status["Pending"],
            "corrected": by_status["Corrected"],
            "confirmed": by_status["Confirmed"],
            "iteration": self.state.iteration,
        }

    def apply_correction(
        self, sentence_id: str, token_index: int, label: str | None, confirm: bool
    ) -> dict:
        item = self._items_by_key.get((sentence_id, token_index))
        if item is None:
            raise KeyError(f"no review item for {sentence_id}[{token_index}]")
        with self._lock:
            item.resolve(None if confirm else label)
            write_queue(self.state.directory / BootstrapState.QUEUE, self.state.queue)
        return {
            "sentence_id": item.sentence_id,
            "token_index": item.token_index,
            "status": item.status,
            "label": item.corrected or item.predicted,
        }


class _Handler(BaseHTTPRequestHandler):
    service: ReviewService
    ui_dir: Path | None = None
    quiet = True

    # -- helpers -----------------------------------------------------------

    def _send_json(self, payload: dict, status: int = 200) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, status: int, message: str) -> None:
        self._send_json({"error": message}, status=status)

    def log_message(self, fmt, *args):
        if not self.quiet:
            super().log_message(fmt, *args)

    # -- routes -------------------------------------------------------------

    def do_GET(self):
        url = urlparse(self.path)
        if url.path == "/queue":
            params = parse_qs(url.query)
            try:
                limit = int(params.get("limit", [str(_DEFAULT_LIMIT)])[0])
                cursor = int(params.get("cursor", ["0"])[0])
            except ValueError:
                return self._send_error_json(400, "limit and cursor must be integers")
            if cursor < 0:
                return self._send_error_json(400, "cursor must be >= 0")
            return self._send_json(self.service.queue_page(limit, cursor))
        if url.path == "/progress":
            return self._send_json(self.service.progress())
        if url.path == "/" or url.path == "/ui":
            return self._redirect("/ui/")
        if url.path.startswith("/ui/"):
            return self._serve_static(url.path[len("/ui/") :])
        return self._send_error_json(404, f"unknown path {url.path}")

    def do_POST(self):
        url = urlparse(self.path)
        if url.path != "/corrections":
            return self._send_error_json(404, f"unknown path {url.path}")
        try:
            length = int(self.headers.get("Content-Length", "0"))
            payload = json.loads(self.rfile.read(length).decode("utf-8"))
        except (ValueError, json.JSONDecodeError):
            return self._send_error_json(400, "request body must be JSON")
        if not isinstance(payload, dict):
            return self._send_error_json(422, "body must be a JSON object")
        sentence_id = payload.get("sentence_id")
        token_index = payload.get("token_index")
        label = payload.get("label")
        confirm = payload.get("confirm", False)
        if not isinstance(sentence_id, str) or not isinstance(token_index, int):
            return self._send_error_json(
                422, "sentence_id (string) and token_index (integer) are required"
            )
        if confirm not in (True, False):
            return self._send_error_json(422, "confirm must be a boolean")
        if not confirm:
            if label not in LABELS:
                return self._send_error_json(
                    422, f"label must be one of {'/'.join(LABELS)}"
                )
        try:
            result = self.service.apply_correction(sentence_id, token_index, label, confirm)
        except KeyError as exc:
            return self._send_error_json(404, str(exc.args[0]))
        return self._send_json(result)

    # -- static UI ------------------------------------------------------------

    def _redirect(self, target: str) -> None:
        self.send_response(302)
        self.send_header("Location", target)
        self.send_header("Content-Length", "0")
        self.end_headers()

    def _serve_static(self, rel: str) -> None:
        if self.ui_dir is None:
            return self._send_error_json(404, "no UI assets configured (--ui-dir)")
        rel = rel or "index.html"
        target = (self.ui_dir / rel).resolve()
        if not str(target).startswith(str(self.ui_dir.resolve())):
            return self._send_error_json(404, "not found")
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            return self._send_error_json(404, f"no such asset {rel}")
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def make_server(
    state_dir, host: str = "127.0.0.1", port: int = 8000, ui_dir=None, quiet: bool = True
) -> ThreadingHTTPServer:
    """Build the HTTP server for a state directory (bind errors raise OSError)."""
    state = BootstrapState.load(state_dir)
    if not state.model_path.exists():
        raise CorruptStateError(f"{state.model_path} does not exist; run a round first")
    service = ReviewService(state)

    handler = type(
        "BoundHandler",
        (_Handler,),
        {
            "service": service,
            "ui_dir": Path(ui_dir) if ui_dir else None,
            "quiet": quiet,
        },
    )
    return ThreadingHTTPServer((host, port), handler)


def serve(state_dir, host="127.0.0.1", port=8000, ui_dir=None, quiet=True) -> None:
    """Serve until interrupted."""
    server = make_server(state_dir, host, port, ui_dir, quiet)
    try:
        server.serve_forever()
    finally:
        server.server_close()
