"""WebSocket/HTTP transport: serves the renderer and shuttles Frames.

Wire framing: every WebSocket message is one JSON text of the shape
``{"type": <hello|draw|trigger|error>, "payload": {...}}``.  A new connection
receives a hello frame followed by a draw frame carrying the selected demo's
initial document; after that the only inbound frame a client may send is a
trigger.  Faults never close the connection — the server answers with an
error frame and keeps the session's document untouched.

Each connection is its own session: its own document, its own handler
registry, its own builder state.  Triggers within a session are handled
strictly in arrival order (one receive loop per connection).
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import HTMLResponse, Response
from fastapi.staticfiles import StaticFiles

from . import demos
from .codec import MIME_TYPE, serialize
from .dispatch import DispatchResult, HandlerRegistry, TriggerFrame, apply_messages
from .model import Document
from .validation import ValidationError

FRAME_TYPES = ("hello", "draw", "trigger", "error")

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 8787
PORT_ENV_VAR = "FRANCY_FORGE_PORT"

_PLACEHOLDER_PAGE = """<!doctype html>
<html><head><meta charset="utf-8"><title>francy-forge</title></head>
<body>
<h1>francy-forge server</h1>
<p>No renderer bundle is installed. The WebSocket endpoint is at
<code>/ws</code>; the initial document is also served at
<code>/document</code>.</p>
</body></html>
"""


def make_frame(frame_type: str, payload: dict) -> str:
    return json.dumps(
        {"type": frame_type, "payload": payload},
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
        allow_nan=False,
    )


def hello_frame() -> str:
    return make_frame("hello", {"version": "1", "mime": MIME_TYPE})


def draw_frame(document: Document) -> str:
    return make_frame("draw", {"document": document.to_jsonable()})


def error_frame(title: str, text: str) -> str:
    return make_frame("error", {"title": title, "text": text})


def parse_frame(text: str) -> tuple[str | None, dict | None, str | None]:
    """(type, payload, None) for a well-formed frame, else (None, None, why)."""
    try:
        raw = json.loads(text)
    except ValueError as exc:
        return None, None, f"not valid JSON: {exc}"
    if not isinstance(raw, dict):
        return None, None, "frame must be a JSON object"
    frame_type = raw.get("type")
    if frame_type not in FRAME_TYPES:
        return None, None, f"frame type must be one of {list(FRAME_TYPES)}"
    payload = raw.get("payload", {})
    if not isinstance(payload, dict):
        return None, None, "frame payload must be an object"
    extra = set(raw) - {"type", "payload"}
    if extra:
        return None, None, f"unexpected frame fields {sorted(extra)}"
    return frame_type, payload, None


@dataclass
class Session:
    """Per-connection state; document changes only on successful dispatch."""

    registry: HandlerRegistry
    document: Document
    session_id: str = field(default_factory=lambda: uuid.uuid4().hex)

    def handle_frame(self, text: str) -> str:
        """One outbound frame text for one inbound WebSocket message."""
        frame_type, payload, why = parse_frame(text)
        if why is not None:
            return error_frame("bad frame", why)
        if frame_type != "trigger":
            return error_frame(
                "unexpected frame type", f"clients may only send trigger frames, got {frame_type!r}"
            )
        try:
            trigger = TriggerFrame.from_payload(payload)
        except ValueError as exc:
            return error_frame("bad frame", str(exc))
        result: DispatchResult = self.registry.trigger(self.document, trigger)
        if result.failure is not None:
            return error_frame(result.failure.title, result.failure.text)
        if result.redraw is not None:
            self.document = result.redraw
        else:
            try:
                self.document = apply_messages(self.document, result.messages)
            except ValidationError as exc:
                return error_frame("handler error", str(exc))
        return draw_frame(self.document)


def create_app(demo_name: str = demos.DEFAULT_DEMO, asset_path: str | Path | None = None) -> FastAPI:
    """The ASGI app for one demo; raises ValueError for an unknown demo."""
    demos.build_demo(demo_name)  # fail fast on unknown names, warm caches
    app = FastAPI(title="francy-forge", version="0.1.0")

    dist = Path(asset_path) if asset_path is not None else Path("frontend") / "dist"
    index_file = dist / "index.html"
    if (dist / "assets").is_dir():
        app.mount("/assets", StaticFiles(directory=dist / "assets"), name="assets")

    @app.get("/")
    def index() -> HTMLResponse:
        if index_file.is_file():
            return HTMLResponse(index_file.read_text(encoding="utf-8"))
        return HTMLResponse(_PLACEHOLDER_PAGE)

    @app.get("/document")
    def document() -> Response:
        initial, _ = demos.build_demo(demo_name)
        return Response(content=serialize(initial), media_type=MIME_TYPE)

    @app.websocket("/ws")
    async def websocket_endpoint(websocket: WebSocket) -> None:
        await websocket.accept()
        initial, registry = demos.build_demo(demo_name)
        session = Session(registry=registry, document=initial)
        await websocket.send_text(hello_frame())
        await websocket.send_text(draw_frame(session.document))
        try:
            while True:
                text = await websocket.receive_text()
                await websocket.send_text(session.handle_frame(text))
        except WebSocketDisconnect:
            return

    return app


def serve(
    host: str = DEFAULT_HOST,
    port: int = DEFAULT_PORT,
    demo_name: str = demos.DEFAULT_DEMO,
    asset_path: str | Path | None = None,
) -> None:
    """Run the server until interrupted (blocking)."""
    import uvicorn

    app = create_app(demo_name=demo_name, asset_path=asset_path)
    uvicorn.run(app, host=host, port=port, log_level="warning")
