"""Stateless JSON/HTTP service exposing the core operations.

Every response is an envelope {"ok": true, "result": ...} or
{"ok": false, "error": {"code", "message", ...}}. Malformed payloads get
400, domain errors inside well-formed payloads get 422; user input never
produces a 500. All state lives client-side.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import ops
from .errors import LogicError, ParseError

DEFAULT_PORT = 8095


def _json_response(payload: dict, status_code: int = 200) -> Response:
    return Response(
        content=ops.dumps(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _ok(result: dict) -> Response:
    return _json_response({"ok": True, "result": result})


def _error(code: str, message: str, status: int, **extra) -> Response:
    err = {"code": code, "message": message}
    err.update(extra)
    return _json_response({"ok": False, "error": err}, status)


def _field(body: dict, name: str, expected_type=str, required: bool = True):
    value = body.get(name)
    if value is None:
        if required:
            raise _BadRequest(f"missing field {name!r}")
        return None
    if expected_type is not None and not isinstance(value, expected_type):
        raise _BadRequest(f"field {name!r} must be {expected_type.__name__}")
    return value


class _BadRequest(Exception):
    pass


def create_app() -> FastAPI:
    app = FastAPI(title="logiclab", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    async def read_body(request: Request) -> dict:
        try:
            body = await request.json()
        except Exception:
            raise _BadRequest("request body is not valid JSON")
        if not isinstance(body, dict):
            raise _BadRequest("request body must be a JSON object")
        return body

    def install(path: str, handler):
        async def endpoint(request: Request) -> Response:
            try:
                body = await read_body(request)
                return _ok(handler(body))
            except _BadRequest as exc:
                return _error("bad_request", str(exc), 400)
            except ParseError as exc:
                return _error(
                    exc.code, str(exc), 422, position=exc.to_json()
                )
            except LogicError as exc:
                extra = {}
                if hasattr(exc, "position") and hasattr(exc, "category"):
                    extra["cell"] = [exc.position, exc.category]
                return _error(exc.code, str(exc), 422, **extra)

        app.post(path)(endpoint)

    def parse_handler(body):
        logic = _field(body, "logic")
        if logic not in ("prop", "fol"):
            raise _BadRequest("field 'logic' must be 'prop' or 'fol'")
        return ops.op_parse(logic, _field(body, "text"))

    def truth_table_handler(body):
        return ops.op_truth_table(_field(body, "text"))

    def equiv_handler(body):
        return ops.op_equiv(
            _field(body, "f1"),
            _field(body, "f2"),
            _field(body, "method", required=False) or "tt",
            _field(body, "max_size", int, required=False),
        )

    def derive_handler(body):
        return ops.op_derive(_field(body, "f1"), _field(body, "f2"))

    def step_handler(body):
        return ops.op_validate_step(
            _field(body, "before"),
            _field(body, "after"),
            _field(body, "rule", required=False),
            _field(body, "path", list, required=False),
            _field(body, "dir", required=False),
        )

    def rules_handler(body):
        return ops.op_rules()

    def syllogism_handler(body):
        return ops.op_syllogism(
            _field(body, "major"),
            _field(body, "minor"),
            _field(body, "conclusion"),
            bool(body.get("existential_import", False)),
        )

    def puzzle_solve_handler(body):
        return ops.op_puzzle_solve(_field(body, "spec", dict))

    def puzzle_unique_handler(body):
        return ops.op_puzzle_unique(_field(body, "spec", dict))

    def puzzle_propagate_handler(body):
        return ops.op_puzzle_propagate(
            _field(body, "spec", dict),
            _field(body, "grid", dict, required=False),
        )

    install("/api/parse", parse_handler)
    install("/api/truth-table", truth_table_handler)
    install("/api/equiv", equiv_handler)
    install("/api/derive", derive_handler)
    install("/api/step/validate", step_handler)
    install("/api/rules", rules_handler)
    install("/api/syllogism", syllogism_handler)
    install("/api/puzzle/solve", puzzle_solve_handler)
    install("/api/puzzle/unique", puzzle_unique_handler)
    install("/api/puzzle/propagate", puzzle_propagate_handler)
    return app


app = create_app()


def serve(port: int | None = None, host: str = "127.0.0.1"):
    import uvicorn

    if port is None:
        port = int(os.environ.get("LOGICLAB_PORT", DEFAULT_PORT))
    uvicorn.run(app, host=host, port=port, log_level="warning")
