"""HTTP/WebSocket API around the live scheduler, for the browser REPL.

POST /eval swaps the running pattern (only when the new code evaluates
and previews cleanly), GET /state reports the transport, POST /cps and
POST /stop drive it, and the /events WebSocket streams every TimedEvent
as it is scheduled. A failed eval never touches the running pattern.
"""

from __future__ import annotations

import asyncio
import contextlib
import json
import logging
import threading
from pathlib import Path
from typing import Optional

from starlette.applications import Starlette
from starlette.responses import JSONResponse
from starlette.routing import Mount, Route, WebSocketRoute
from starlette.staticfiles import StaticFiles
from starlette.websockets import WebSocket, WebSocketDisconnect

from .clock import ClockConfig, LiveLoop, Slot, TimedEvent
from .expr import EvalError, compile_expr
from .mini import ParseError
from .timespan import Span

log = logging.getLogger("riptide")

PREVIEW_SPAN = Span(0, 2)


class EventHub:
    """Bridges the scheduler thread to any number of WebSocket consumers.

    publish() is called from the scheduler thread; each subscriber is an
    asyncio queue fed via call_soon_threadsafe on the server's loop.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._queues: set[asyncio.Queue] = set()
        self._aloop: Optional[asyncio.AbstractEventLoop] = None

    def set_loop(self, aloop: asyncio.AbstractEventLoop):
        with self._lock:
            self._aloop = aloop

    def subscribe(self) -> asyncio.Queue:
        q: asyncio.Queue = asyncio.Queue()
        with self._lock:
            self._queues.add(q)
        return q

    def unsubscribe(self, q: asyncio.Queue):
        with self._lock:
            self._queues.discard(q)

    def publish(self, events: list[TimedEvent]):
        with self._lock:
            aloop = self._aloop
            queues = list(self._queues)
        if aloop is None or not queues:
            return
        payloads = [e.to_json() for e in events]
        for q in queues:
            for payload in payloads:
                aloop.call_soon_threadsafe(q.put_nowait, payload)


class ReplService:
    def __init__(self, loop: LiveLoop, hub: EventHub):
        self.loop = loop
        self.hub = hub
        self._lock = threading.Lock()
        self._code = ""

    @property
    def code(self) -> str:
        with self._lock:
            return self._code

    def try_eval(self, code: str) -> dict:
        """Evaluate, preview, and swap — or report why not, touching nothing."""
        try:
            pattern = compile_expr(code)
            preview = [e.to_json() for e in pattern.query(PREVIEW_SPAN)]
        except (ParseError, EvalError) as e:
            return {"ok": False, "events": [], "error": e.diagnostic.to_json(), "swapped": False}
        except Exception as e:  # query-time failures count as eval failures
            return {
                "ok": False,
                "events": [],
                "error": {"message": str(e), "line": 1, "column": 1, "offset": 0},
                "swapped": False,
            }
        self.loop.swap(pattern)
        with self._lock:
            self._code = code
        return {"ok": True, "events": preview, "error": None, "swapped": True}


async def _read_json(request):
    try:
        return await request.json()
    except (json.JSONDecodeError, UnicodeDecodeError):
        return None


def build_app(
    service: ReplService,
    static_dir: Optional[Path] = None,
    start_loop: bool = True,
) -> Starlette:
    async def eval_route(request):
        data = await _read_json(request)
        if not isinstance(data, dict) or not isinstance(data.get("code"), str):
            return JSONResponse({"error": "body must be JSON: {\"code\": \"...\"}"}, status_code=400)
        return JSONResponse(service.try_eval(data["code"]))

    async def state_route(request):
        st = service.loop.state()
        return JSONResponse({"cps": st["cps"], "playing": st["playing"], "code": service.code})

    async def cps_route(request):
        data = await _read_json(request)
        if not isinstance(data, dict) or not isinstance(data.get("cps"), (int, float)):
            return JSONResponse({"error": "body must be JSON: {\"cps\": number}"}, status_code=400)
        cps = float(data["cps"])
        if cps <= 0:
            return JSONResponse({"error": "cps must be positive"}, status_code=400)
        service.loop.set_cps(cps)
        return JSONResponse({"ok": True, "cps": cps})

    async def stop_route(request):
        service.loop.set_playing(False)
        return JSONResponse({"ok": True, "playing": False})

    async def events_ws(ws: WebSocket):
        await ws.accept()
        q = service.hub.subscribe()
        try:
            while True:
                payload = await q.get()
                await ws.send_json(payload)
        except WebSocketDisconnect:
            pass
        finally:
            service.hub.unsubscribe(q)

    @contextlib.asynccontextmanager
    async def lifespan(app):
        service.hub.set_loop(asyncio.get_running_loop())
        if start_loop:
            service.loop.start()
        try:
            yield
        finally:
            service.loop.stop()

    routes = [
        Route("/eval", eval_route, methods=["POST"]),
        Route("/state", state_route, methods=["GET"]),
        Route("/cps", cps_route, methods=["POST"]),
        Route("/stop", stop_route, methods=["POST"]),
        WebSocketRoute("/events", events_ws),
    ]
    if static_dir is not None and static_dir.is_dir():
        routes.append(Mount("/", StaticFiles(directory=static_dir, html=True)))
    return Starlette(routes=routes, lifespan=lifespan)


def default_static_dir() -> Optional[Path]:
    """The built browser REPL, when present."""
    candidates = [
        Path.cwd() / "frontend" / "dist",
        Path(__file__).resolve().parent.parent.parent / "frontend" / "dist",
    ]
    for c in candidates:
        if (c / "index.html").is_file():
            return c
    return None


def make_service(
    cfg: ClockConfig,
    sinks: Optional[list] = None,
    clock=None,
) -> ReplService:
    """Wire slot, hub and loop together; extra sinks run before the hub."""
    hub = EventHub()
    extra = list(sinks or [])

    def fan_out(events: list[TimedEvent]):
        for sink in extra:
            try:
                sink(events)
            except Exception:
                log.exception("sink failed")
        hub.publish(events)

    kwargs = {} if clock is None else {"clock": clock}
    loop = LiveLoop(Slot(), fan_out, cfg, **kwargs)
    return ReplService(loop, hub)
