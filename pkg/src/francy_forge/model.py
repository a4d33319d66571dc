"""Builders for the semantic graphic-object tree.

A canvas owns menus, messages and at most one graph or chart; graphs own
nodes and links; nodes own their own menus, messages and callbacks.  The
builder values here are plain mutable dataclasses assembled with ``add`` and
snapshotted into an immutable :class:`Document` by ``draw``.

Ids are deterministic: every canvas carries its own mint that hands out
``<kind>-<counter>`` identifiers, so the same build sequence always yields
the same document (and golden-file tests stay stable).  The mint is tracked
in a context variable — ``new_canvas`` activates a fresh one, and
``builder_scope`` re-enters an existing canvas's mint, e.g. inside a callback
handler that appends messages to a canvas it did not create.
"""

from __future__ import annotations

import copy
import math
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator, Union

from .validation import (
    MIME_TYPE,
    ValidationError,
    check_document,
)

MENU_DEPTH_LIMIT = 3

Scalar = Union[str, int, float, bool]


class GraphKind(str, Enum):
    DIRECTED = "directed"
    UNDIRECTED = "undirected"
    TREE = "tree"


class Shape(str, Enum):
    CIRCLE = "circle"
    SQUARE = "square"
    DIAMOND = "diamond"
    TRIANGLE = "triangle"
    STAR = "star"
    WYE = "wye"


class ChartKind(str, Enum):
    LINE = "line"
    BAR = "bar"
    SCATTER = "scatter"


class Trigger(str, Enum):
    CLICK = "click"
    DOUBLECLICK = "doubleclick"
    CONTEXTMENU = "contextmenu"


class Level(str, Enum):
    INFO = "info"
    ERROR = "error"
    SUCCESS = "success"
    WARNING = "warning"
    DEFAULT = "default"


class ValueKind(str, Enum):
    TEXT = "text"
    NUMBER = "number"
    BOOLEAN = "boolean"
    SELECT = "select"


class IdMint:
    """Per-canvas counters behind the deterministic id scheme."""

    def __init__(self) -> None:
        self._counters: dict[str, int] = {}

    def mint(self, kind: str) -> str:
        n = self._counters.get(kind, 0)
        self._counters[kind] = n + 1
        return f"{kind}-{n}"


_ACTIVE_MINT: ContextVar[IdMint | None] = ContextVar("francy_forge_mint", default=None)


def _mint(kind: str) -> str:
    mint = _ACTIVE_MINT.get()
    if mint is None:
        raise RuntimeError(
            "no active canvas: call new_canvas() first, or enter builder_scope(canvas)"
        )
    return mint.mint(kind)


def _coerce_enum(value: Any, enum_cls: type[Enum], what: str) -> Any:
    if isinstance(value, enum_cls):
        return value
    try:
        return enum_cls(value)
    except ValueError:
        allowed = sorted(member.value for member in enum_cls)
        raise ValidationError(f"{what} must be one of {allowed}, got {value!r}") from None


def _check_scalar(value: Any, what: str) -> Scalar:
    if isinstance(value, bool) or isinstance(value, (str, int)):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValidationError(f"{what} must be finite, got {value!r}")
        return value
    raise ValidationError(f"{what} must be a scalar string, number or boolean, got {value!r}")


# ---------------------------------------------------------------------------
# builder dataclasses (reference semantics: compared and keyed by identity)
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class AxisDef:
    title: str = ""
    domain: list | None = None

    def to_jsonable(self) -> dict:
        out: dict[str, Any] = {"title": self.title}
        if self.domain is not None:
            out["domain"] = list(self.domain)
        return out


@dataclass(eq=False)
class RequiredArgDef:
    id: str
    title: str
    value_kind: ValueKind
    choices: list[str] = field(default_factory=list)
    default: Scalar | None = None

    def to_jsonable(self) -> dict:
        out: dict[str, Any] = {
            "id": self.id,
            "title": self.title,
            "valueKind": self.value_kind.value,
            "choices": list(self.choices),
        }
        if self.default is not None:
            out["default"] = self.default
        return out


@dataclass(eq=False)
class CallbackDef:
    id: str
    func_name: str
    trigger: Trigger = Trigger.CLICK
    known_args: list[Scalar] = field(default_factory=list)
    required_args: dict[str, RequiredArgDef] = field(default_factory=dict)

    def to_jsonable(self) -> dict:
        return {
            "id": self.id,
            "funcName": self.func_name,
            "trigger": self.trigger.value,
            "knownArgs": list(self.known_args),
            "requiredArgs": {k: v.to_jsonable() for k, v in self.required_args.items()},
        }


@dataclass(eq=False)
class MenuDef:
    id: str
    title: str
    callback: CallbackDef | None = None
    submenus: dict[str, MenuDef] = field(default_factory=dict)
    _owner: "MenuDef | None" = field(default=None, repr=False)

    def to_jsonable(self) -> dict:
        out: dict[str, Any] = {
            "id": self.id,
            "title": self.title,
            "submenus": {k: v.to_jsonable() for k, v in self.submenus.items()},
        }
        if self.callback is not None:
            out["callback"] = self.callback.to_jsonable()
        return out


@dataclass(eq=False)
class MessageDef:
    id: str
    level: Level
    title: str
    text: str

    def to_jsonable(self) -> dict:
        return {"id": self.id, "level": self.level.value, "title": self.title, "text": self.text}


@dataclass(eq=False)
class NodeDef:
    id: str
    shape: Shape
    title: str
    layer: int = 0
    size: float = 10
    color: str | None = None
    parent: str | None = None
    menus: dict[str, MenuDef] = field(default_factory=dict)
    messages: dict[str, MessageDef] = field(default_factory=dict)
    callbacks: dict[str, CallbackDef] = field(default_factory=dict)

    def to_jsonable(self) -> dict:
        out: dict[str, Any] = {
            "id": self.id,
            "shape": self.shape.value,
            "title": self.title,
            "layer": self.layer,
            "size": self.size,
            "menus": {k: v.to_jsonable() for k, v in self.menus.items()},
            "messages": {k: v.to_jsonable() for k, v in self.messages.items()},
            "callbacks": {k: v.to_jsonable() for k, v in self.callbacks.items()},
        }
        if self.color is not None:
            out["color"] = self.color
        if self.parent is not None:
            out["parent"] = self.parent
        return out


@dataclass(eq=False)
class LinkDef:
    id: str
    source: str
    target: str
    weight: float = 1
    length: float = 100
    color: str | None = None
    title: str | None = None

    def to_jsonable(self) -> dict:
        out: dict[str, Any] = {
            "id": self.id,
            "source": self.source,
            "target": self.target,
            "weight": self.weight,
            "length": self.length,
        }
        if self.color is not None:
            out["color"] = self.color
        if self.title is not None:
            out["title"] = self.title
        return out


@dataclass(eq=False)
class GraphDef:
    kind: GraphKind
    simulation_enabled: bool = True
    nodes: dict[str, NodeDef] = field(default_factory=dict)
    links: dict[str, LinkDef] = field(default_factory=dict)

    def to_jsonable(self) -> dict:
        return {
            "kind": self.kind.value,
            "simulationEnabled": self.simulation_enabled,
            "nodes": {k: v.to_jsonable() for k, v in self.nodes.items()},
            "links": {k: v.to_jsonable() for k, v in self.links.items()},
        }


@dataclass(eq=False)
class ChartDef:
    kind: ChartKind
    axis_x: AxisDef = field(default_factory=AxisDef)
    axis_y: AxisDef = field(default_factory=AxisDef)
    datasets: dict[str, list[float]] = field(default_factory=dict)
    show_legend: bool = True

    def to_jsonable(self) -> dict:
        return {
            "kind": self.kind.value,
            "axisX": self.axis_x.to_jsonable(),
            "axisY": self.axis_y.to_jsonable(),
            "datasets": {k: list(v) for k, v in self.datasets.items()},
            "showLegend": self.show_legend,
        }


@dataclass(eq=False)
class CanvasDef:
    id: str
    title: str
    width: int = 800
    height: int = 600
    zoom_to_fit: bool = True
    menus: dict[str, MenuDef] = field(default_factory=dict)
    messages: dict[str, MessageDef] = field(default_factory=dict)
    graph: GraphDef | None = None
    chart: ChartDef | None = None
    _mint: IdMint = field(default_factory=IdMint, repr=False)

    def to_jsonable(self) -> dict:
        out: dict[str, Any] = {
            "id": self.id,
            "title": self.title,
            "width": self.width,
            "height": self.height,
            "zoomToFit": self.zoom_to_fit,
            "menus": {k: v.to_jsonable() for k, v in self.menus.items()},
            "messages": {k: v.to_jsonable() for k, v in self.messages.items()},
        }
        if self.graph is not None:
            out["graph"] = self.graph.to_jsonable()
        if self.chart is not None:
            out["chart"] = self.chart.to_jsonable()
        return out


@dataclass(frozen=True)
class Document:
    """Immutable snapshot produced by ``draw``; the unit sent over the wire.

    ``canvas`` is held as the plain JSON-shaped mapping so that structural
    equality, canonical serialization and round-tripping are all dictionary
    operations.  Treat it as read-only.
    """

    version: str
    mime: str
    canvas: dict

    def to_jsonable(self) -> dict:
        return {"version": self.version, "mime": self.mime, "canvas": self.canvas}

    def find_callback(self, callback_id: str) -> dict | None:
        """The callback object with this id anywhere in the tree, or None."""
        for callback in iter_callbacks(self.canvas):
            if callback.get("id") == callback_id:
                return callback
        return None


def iter_callbacks(canvas: dict) -> Iterator[dict]:
    """All callback objects reachable from a canvas mapping."""

    def from_menus(menus: Any) -> Iterator[dict]:
        if not isinstance(menus, dict):
            return
        for menu in menus.values():
            if not isinstance(menu, dict):
                continue
            if isinstance(menu.get("callback"), dict):
                yield menu["callback"]
            yield from from_menus(menu.get("submenus"))

    yield from from_menus(canvas.get("menus"))
    graph = canvas.get("graph")
    if isinstance(graph, dict) and isinstance(graph.get("nodes"), dict):
        for node in graph["nodes"].values():
            if not isinstance(node, dict):
                continue
            callbacks = node.get("callbacks")
            if isinstance(callbacks, dict):
                yield from (cb for cb in callbacks.values() if isinstance(cb, dict))
            yield from from_menus(node.get("menus"))


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def new_canvas(
    title: str,
    width: int = 800,
    height: int = 600,
    zoom_to_fit: bool = True,
) -> CanvasDef:
    """A fresh canvas; also activates its id mint for subsequent builders."""
    if not isinstance(title, str) or not title:
        raise ValidationError("canvas title must be a non-empty string")
    for name, value in (("width", width), ("height", height)):
        if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
            raise ValidationError(f"canvas {name} must be a positive integer, got {value!r}")
    mint = IdMint()
    _ACTIVE_MINT.set(mint)
    return CanvasDef(
        id=mint.mint("canvas"),
        title=title,
        width=width,
        height=height,
        zoom_to_fit=bool(zoom_to_fit),
        _mint=mint,
    )


@contextmanager
def builder_scope(canvas: CanvasDef):
    """Re-activate a canvas's id mint, e.g. inside a callback handler."""
    token = _ACTIVE_MINT.set(canvas._mint)
    try:
        yield canvas
    finally:
        _ACTIVE_MINT.reset(token)


def new_graph(kind: GraphKind | str) -> GraphDef:
    return GraphDef(kind=_coerce_enum(kind, GraphKind, "graph kind"))


def new_shape(shape: Shape | str, title: str) -> NodeDef:
    if not isinstance(title, str):
        raise ValidationError("node title must be a string")
    return NodeDef(id=_mint("node"), shape=_coerce_enum(shape, Shape, "shape"), title=title)


def new_link(source: NodeDef, target: NodeDef) -> LinkDef:
    return LinkDef(id=_mint("link"), source=source.id, target=target.id)


def new_chart(kind: ChartKind | str) -> ChartDef:
    return ChartDef(kind=_coerce_enum(kind, ChartKind, "chart kind"))


def add_dataset(chart: ChartDef, name: str, values: list) -> ChartDef:
    """Attach a named series; re-adding a name replaces its values."""
    if not isinstance(name, str) or not name:
        raise ValidationError("dataset name must be a non-empty string")
    cleaned: list[float] = []
    for value in values:
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ValidationError(f"dataset {name!r} values must be finite numbers, got {value!r}")
        cleaned.append(value)
    if chart.kind in (ChartKind.LINE, ChartKind.BAR):
        for other_name, other in chart.datasets.items():
            if other_name != name and len(other) != len(cleaned):
                raise ValidationError(
                    f"{chart.kind.value} chart datasets must have equal lengths: "
                    f"{name!r} has {len(cleaned)}, {other_name!r} has {len(other)}"
                )
    chart.datasets[name] = cleaned
    return chart


def set_axis(chart: ChartDef, which: str, axis: AxisDef) -> ChartDef:
    if which not in ("x", "y"):
        raise ValidationError(f"axis selector must be 'x' or 'y', got {which!r}")
    if axis.domain is not None:
        if which == "x":
            if not all(isinstance(label, str) for label in axis.domain):
                raise ValidationError("x-axis domain must be a list of category strings")
        else:
            domain = axis.domain
            if (
                len(domain) != 2
                or any(
                    isinstance(b, bool) or not isinstance(b, (int, float)) or not math.isfinite(b)
                    for b in domain
                )
            ):
                raise ValidationError("y-axis domain must be a [min, max] pair of finite numbers")
            if not domain[0] < domain[1]:
                raise ValidationError("y-axis domain must satisfy min < max")
    if which == "x":
        chart.axis_x = axis
    else:
        chart.axis_y = axis
    return chart


def new_menu(title: str, callback: CallbackDef | None = None) -> MenuDef:
    if not isinstance(title, str) or not title:
        raise ValidationError("menu title must be a non-empty string")
    return MenuDef(id=_mint("menu"), title=title, callback=callback)


def new_callback(
    func_name: str,
    known_args: list | None = None,
    trigger: Trigger | str = Trigger.CLICK,
) -> CallbackDef:
    if not isinstance(func_name, str) or not func_name:
        raise ValidationError("callback funcName must be a non-empty string")
    args = [
        _check_scalar(arg, f"known arg {i} of {func_name!r}")
        for i, arg in enumerate(known_args or [])
    ]
    return CallbackDef(
        id=_mint("callback"),
        func_name=func_name,
        trigger=_coerce_enum(trigger, Trigger, "trigger"),
        known_args=args,
    )


def new_required_arg(
    title: str,
    value_kind: ValueKind | str,
    choices: list[str] | None = None,
    default: Scalar | None = None,
) -> RequiredArgDef:
    kind = _coerce_enum(value_kind, ValueKind, "valueKind")
    if not isinstance(title, str):
        raise ValidationError("required-arg title must be a string")
    choice_list = list(choices or [])
    if not all(isinstance(c, str) for c in choice_list):
        raise ValidationError("choices must be strings")
    if kind is ValueKind.SELECT and not choice_list:
        raise ValidationError("select args need at least one choice")
    if kind is not ValueKind.SELECT and choice_list:
        raise ValidationError(f"choices are only allowed for select args, not {kind.value!r}")
    if default is not None:
        _check_default(default, kind, choice_list)
    return RequiredArgDef(
        id=_mint("arg"), title=title, value_kind=kind, choices=choice_list, default=default
    )


def _check_default(default: Any, kind: ValueKind, choices: list[str]) -> None:
    ok = {
        ValueKind.TEXT: lambda v: isinstance(v, str),
        ValueKind.NUMBER: lambda v: not isinstance(v, bool) and isinstance(v, (int, float)),
        ValueKind.BOOLEAN: lambda v: isinstance(v, bool),
        ValueKind.SELECT: lambda v: isinstance(v, str) and v in choices,
    }[kind](default)
    if not ok:
        raise ValidationError(
            f"default {default!r} does not conform to valueKind {kind.value!r}"
        )


def add_required_arg(cb: CallbackDef, arg: RequiredArgDef) -> CallbackDef:
    if arg.id in cb.required_args and cb.required_args[arg.id] is not arg:
        raise ValidationError(f"required arg id {arg.id!r} already attached to {cb.id!r}")
    cb.required_args[arg.id] = arg
    return cb


def new_message(level: Level | str, title: str, text: str) -> MessageDef:
    if not isinstance(title, str) or not isinstance(text, str):
        raise ValidationError("message title and text must be strings")
    return MessageDef(
        id=_mint("message"), level=_coerce_enum(level, Level, "message level"), title=title, text=text
    )


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------


def _menu_height(menu: MenuDef, _seen: frozenset = frozenset()) -> int:
    if id(menu) in _seen:
        raise ValidationError(f"menu {menu.id!r} contains itself")
    seen = _seen | {id(menu)}
    if not menu.submenus:
        return 1
    return 1 + max(_menu_height(sub, seen) for sub in menu.submenus.values())


def _menu_depth(menu: MenuDef) -> int:
    depth, owner = 1, menu._owner
    while owner is not None and depth <= MENU_DEPTH_LIMIT:
        depth += 1
        owner = owner._owner
    return depth


def add(parent: Any, child: Any) -> Any:
    """Attach a child builder value to its parent; returns the parent.

    Supported pairs: canvas <- graph|chart|menu|message, graph <- node|link,
    node <- menu|message|callback, menu <- menu|callback.  Children land in
    id-keyed collections, so adding the same id again replaces.
    """
    if isinstance(parent, CanvasDef):
        if isinstance(child, (GraphDef, ChartDef)):
            slot = "graph" if isinstance(child, GraphDef) else "chart"
            current = parent.graph if parent.graph is not None else parent.chart
            if current is not None and current is not child:
                raise ValidationError(
                    "canvas already has content: multiple graphs or charts per canvas "
                    "are not supported"
                )
            setattr(parent, slot, child)
            return parent
        if isinstance(child, MenuDef):
            if _menu_height(child) > MENU_DEPTH_LIMIT:
                raise ValidationError(f"menu nesting exceeds depth {MENU_DEPTH_LIMIT}")
            child._owner = None
            parent.menus[child.id] = child
            return parent
        if isinstance(child, MessageDef):
            parent.messages[child.id] = child
            return parent
    elif isinstance(parent, GraphDef):
        if isinstance(child, NodeDef):
            parent.nodes[child.id] = child
            return parent
        if isinstance(child, LinkDef):
            for endpoint in (child.source, child.target):
                if endpoint not in parent.nodes:
                    raise ValidationError(
                        f"link {child.id!r} endpoint {endpoint!r} is not a node in this graph"
                    )
            if child.source == child.target and parent.kind is not GraphKind.DIRECTED:
                raise ValidationError(
                    f"self-loops are not allowed in {parent.kind.value} graphs"
                )
            parent.links[child.id] = child
            return parent
    elif isinstance(parent, NodeDef):
        if isinstance(child, MenuDef):
            if _menu_height(child) > MENU_DEPTH_LIMIT:
                raise ValidationError(f"menu nesting exceeds depth {MENU_DEPTH_LIMIT}")
            child._owner = None
            parent.menus[child.id] = child
            return parent
        if isinstance(child, MessageDef):
            parent.messages[child.id] = child
            return parent
        if isinstance(child, CallbackDef):
            parent.callbacks[child.id] = child
            return parent
    elif isinstance(parent, MenuDef):
        if isinstance(child, MenuDef):
            if child is parent:
                raise ValidationError(f"menu {parent.id!r} cannot contain itself")
            if _menu_depth(parent) + _menu_height(child) > MENU_DEPTH_LIMIT:
                raise ValidationError(f"menu nesting exceeds depth {MENU_DEPTH_LIMIT}")
            child._owner = parent
            parent.submenus[child.id] = child
            return parent
        if isinstance(child, CallbackDef):
            parent.callback = child
            return parent
    raise TypeError(
        f"cannot add {type(child).__name__} to {type(parent).__name__}: unsupported pair"
    )


def draw(canvas: CanvasDef) -> Document:
    """Snapshot the canvas into a validated, immutable Document."""
    snapshot = copy.deepcopy(canvas.to_jsonable())
    document = Document(version="1", mime=MIME_TYPE, canvas=snapshot)
    violations = check_document(document.to_jsonable())
    if violations:
        raise ValidationError("canvas does not satisfy the document rules", violations)
    return document
