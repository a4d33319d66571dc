"""Interactive semantic graphics documents, wire protocol, and group demo."""

from importlib import import_module

from .model import (
    AxisDef,
    CallbackDef,
    CanvasDef,
    ChartDef,
    ChartKind,
    Document,
    GraphDef,
    GraphKind,
    Level,
    LinkDef,
    MenuDef,
    MessageDef,
    NodeDef,
    RequiredArgDef,
    Shape,
    Trigger,
    ValueKind,
    add,
    add_dataset,
    add_required_arg,
    builder_scope,
    draw,
    new_callback,
    new_canvas,
    new_chart,
    new_graph,
    new_link,
    new_menu,
    new_message,
    new_required_arg,
    new_shape,
    set_axis,
)
from .codec import FILE_EXTENSION, MIME_TYPE, deserialize, serialize, validate
from .dispatch import DispatchResult, HandlerRegistry, TriggerFrame
from .validation import SchemaViolation, ValidationError

__version__ = "0.1.0"

_LAZY = {"groups", "demos", "server", "cli"}


def __getattr__(name):
    # groups pulls in numba; keep it off the import path of codec-only users
    if name in _LAZY:
        return import_module(f".{name}", __name__)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
