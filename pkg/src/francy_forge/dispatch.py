"""Callback engine: handler registry, trigger resolution, argument coercion.

A trigger names a callback by id inside the session's current document.  The
engine resolves it, coerces every declared required argument, invokes the
registered handler, and always comes back with exactly one DispatchResult —
handlers cannot crash the engine, and no failure path touches the session
document.

Required-argument values travel as strings (that is what a browser modal
produces) and are coerced under the argument's declared valueKind; native
scalars of the right type are accepted too.
"""

from __future__ import annotations

import copy
import math
import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence, Union

from .model import Document, Level, MessageDef
from .validation import ValidationError, check_document

Scalar = Union[str, int, float, bool]
Handler = Callable[[list, dict], Any]


@dataclass(frozen=True)
class TriggerFrame:
    """Wire event asking to run one callback with user-supplied arg values."""

    callback_id: str
    provided_args: Mapping[str, Scalar] = field(default_factory=dict)

    @classmethod
    def from_payload(cls, payload: Any) -> "TriggerFrame":
        if not isinstance(payload, dict):
            raise ValueError("trigger payload must be an object")
        callback_id = payload.get("callbackId")
        if not isinstance(callback_id, str) or not callback_id:
            raise ValueError("trigger payload needs a non-empty string 'callbackId'")
        provided = payload.get("providedArgs", {})
        if not isinstance(provided, dict):
            raise ValueError("'providedArgs' must be an object")
        for key, value in provided.items():
            if not isinstance(value, (str, int, float, bool)):
                raise ValueError(f"provided arg {key!r} must be a scalar")
        return cls(callback_id=callback_id, provided_args=dict(provided))

    def to_jsonable(self) -> dict:
        return {"callbackId": self.callback_id, "providedArgs": dict(self.provided_args)}


@dataclass(frozen=True)
class Failure:
    """User-visible trigger failure; rendered as an error-level message."""

    title: str
    text: str
    level: str = Level.ERROR.value


@dataclass(frozen=True)
class DispatchResult:
    """Outcome of one trigger: exactly one of redraw / messages / failure."""

    redraw: Document | None = None
    messages: tuple[MessageDef, ...] | None = None
    failure: Failure | None = None

    def __post_init__(self):
        slots = [self.redraw, self.messages, self.failure]
        if sum(s is not None for s in slots) != 1:
            raise ValueError("DispatchResult must hold exactly one of redraw/messages/failure")

    @classmethod
    def ok_redraw(cls, document: Document) -> "DispatchResult":
        return cls(redraw=document)

    @classmethod
    def ok_messages(cls, messages: Sequence[MessageDef]) -> "DispatchResult":
        return cls(messages=tuple(messages))

    @classmethod
    def fail(cls, title: str, text: str) -> "DispatchResult":
        return cls(failure=Failure(title=title, text=text))

    @property
    def is_failure(self) -> bool:
        return self.failure is not None


def coerce_value(value: Scalar, value_kind: str, choices: Sequence[str] = ()) -> Scalar:
    """A provided argument as its declared kind, or ValueError.

    This is the server-side half of the modal contract; renderers apply the
    same rules to gate submission.
    """
    if value_kind == "number":
        if isinstance(value, bool):
            raise ValueError("expected a number, got a boolean")
        if isinstance(value, (int, float)):
            number = value
        elif isinstance(value, str):
            try:
                number = float(value.strip())
            except ValueError:
                raise ValueError(f"{value!r} is not a decimal number") from None
        else:
            raise ValueError(f"{value!r} is not a number")
        if not math.isfinite(number):
            raise ValueError("number must be finite")
        return number
    if value_kind == "boolean":
        if isinstance(value, bool):
            return value
        if isinstance(value, str) and value in ("true", "false"):
            return value == "true"
        raise ValueError(f'{value!r} is not "true" or "false"')
    if value_kind == "text":
        if isinstance(value, str):
            return value
        raise ValueError(f"{value!r} is not a string")
    if value_kind == "select":
        if isinstance(value, str) and value in choices:
            return value
        raise ValueError(f"{value!r} is not one of the choices {list(choices)}")
    raise ValueError(f"unknown valueKind {value_kind!r}")


class HandlerRegistry:
    """Named handlers reachable from callback funcName fields.

    Registration is exclusive (no silent replace); reads are lock-free once
    registered.  Handlers receive ``(known_args, provided_args)`` and may
    return a DispatchResult, a Document (treated as redraw), or one or more
    MessageDefs (treated as a messages result).
    """

    def __init__(self) -> None:
        self._handlers: dict[str, Handler] = {}
        self._lock = threading.Lock()

    def register(self, func_name: str, handler: Handler) -> None:
        if not isinstance(func_name, str) or not func_name:
            raise ValueError("handler name must be a non-empty string")
        if not callable(handler):
            raise ValueError(f"handler for {func_name!r} must be callable")
        with self._lock:
            if func_name in self._handlers:
                raise ValueError(f"handler {func_name!r} is already registered")
            self._handlers[func_name] = handler

    def registered(self) -> tuple[str, ...]:
        return tuple(sorted(self._handlers))

    def trigger(self, document: Document, frame: TriggerFrame) -> DispatchResult:
        """Resolve and run one trigger; never raises, never mutates inputs."""
        callback = document.find_callback(frame.callback_id)
        if callback is None:
            return DispatchResult.fail(
                "unknown callback",
                f"no callback with id {frame.callback_id!r} in the current document",
            )
        func_name = callback.get("funcName")
        handler = self._handlers.get(func_name)
        if handler is None:
            return DispatchResult.fail(
                "unknown function", f"no handler registered for {func_name!r}"
            )
        declared = callback.get("requiredArgs") or {}
        unexpected = sorted(set(frame.provided_args) - set(declared))
        if unexpected:
            return DispatchResult.fail(
                "unexpected argument",
                f"arguments {unexpected} are not declared by callback {frame.callback_id!r}",
            )
        coerced: dict[str, Scalar] = {}
        for arg_id in sorted(declared):
            spec = declared[arg_id]
            if arg_id not in frame.provided_args:
                return DispatchResult.fail(
                    "missing argument", f"required argument {arg_id!r} was not provided"
                )
            try:
                coerced[arg_id] = coerce_value(
                    frame.provided_args[arg_id],
                    spec.get("valueKind"),
                    spec.get("choices") or (),
                )
            except ValueError as exc:
                return DispatchResult.fail("invalid argument", f"{arg_id}: {exc}")
        try:
            raw = handler(list(callback.get("knownArgs") or []), coerced)
        except Exception as exc:  # noqa: BLE001 - totality: wrap, never propagate
            return DispatchResult.fail(
                "handler error", f"{func_name} raised {type(exc).__name__}: {exc}"
            )
        return self._normalize(func_name, raw)

    @staticmethod
    def _normalize(func_name: str, raw: Any) -> DispatchResult:
        if isinstance(raw, DispatchResult):
            result = raw
        elif isinstance(raw, Document):
            result = DispatchResult.ok_redraw(raw)
        elif isinstance(raw, MessageDef):
            result = DispatchResult.ok_messages([raw])
        elif isinstance(raw, (list, tuple)) and raw and all(
            isinstance(m, MessageDef) for m in raw
        ):
            result = DispatchResult.ok_messages(raw)
        else:
            return DispatchResult.fail(
                "handler error",
                f"{func_name} returned an unsupported result ({type(raw).__name__})",
            )
        if result.redraw is not None:
            violations = check_document(result.redraw.to_jsonable())
            if violations:
                return DispatchResult.fail(
                    "handler error",
                    f"{func_name} returned an invalid document: "
                    + "; ".join(str(v) for v in violations[:3]),
                )
        return result


def apply_messages(document: Document, messages: Sequence[MessageDef]) -> Document:
    """A copy of the document with the messages appended to its canvas.

    Messages minted under a different canvas may collide with existing ids;
    colliding (or missing) ids are re-minted as the first free message-<n>.
    """
    canvas = copy.deepcopy(document.canvas)
    used: set[str] = set()
    _collect_ids(canvas, used)
    bucket = canvas.setdefault("messages", {})
    counter = 0
    for message in messages:
        payload = message.to_jsonable()
        msg_id = payload.get("id")
        if not msg_id or msg_id in used:
            while f"message-{counter}" in used:
                counter += 1
            msg_id = f"message-{counter}"
            payload["id"] = msg_id
        used.add(msg_id)
        bucket[msg_id] = payload
    result = Document(version=document.version, mime=document.mime, canvas=canvas)
    violations = check_document(result.to_jsonable())
    if violations:
        raise ValidationError("appending messages produced an invalid document", violations)
    return result


def _collect_ids(value: Any, out: set[str]) -> None:
    if isinstance(value, dict):
        if isinstance(value.get("id"), str):
            out.add(value["id"])
        for child in value.values():
            _collect_ids(child, out)
    elif isinstance(value, list):
        for child in value:
            _collect_ids(child, out)
