"""Structural rules for the francy+json wire format.

This module is the authoritative description of the interchange format: the
field vocabularies, the per-object required/optional key sets, and the
cross-references (link endpoints, tree parents, id uniqueness).  It operates
on plain parsed JSON values so that the same checker backs both document
validation and builder-side draw checks.

The checker is exhaustive: it walks the whole input and reports every
violation it can locate, rather than stopping at the first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

MIME_TYPE = "application/vnd.francy+json"
SUPPORTED_VERSION = 1

GRAPH_KINDS = frozenset({"directed", "undirected", "tree"})
SHAPES = frozenset({"circle", "square", "diamond", "triangle", "star", "wye"})
CHART_KINDS = frozenset({"line", "bar", "scatter"})
TRIGGERS = frozenset({"click", "doubleclick", "contextmenu"})
LEVELS = frozenset({"info", "error", "success", "warning", "default"})
VALUE_KINDS = frozenset({"text", "number", "boolean", "select"})

MENU_DEPTH_LIMIT = 3

RULE_MISSING = "missing-field"
RULE_TYPE = "wrong-type"
RULE_ENUM = "bad-enum"
RULE_DANGLING = "dangling-ref"
RULE_DUPLICATE = "duplicate-id"
RULE_VALUE = "bad-value"

ALL_RULES = frozenset(
    {RULE_MISSING, RULE_TYPE, RULE_ENUM, RULE_DANGLING, RULE_DUPLICATE, RULE_VALUE}
)


@dataclass(frozen=True)
class SchemaViolation:
    """One broken rule at one location of a document."""

    path: str
    rule: str
    detail: str

    def __str__(self) -> str:
        return f"{self.path}: [{self.rule}] {self.detail}"


class ValidationError(ValueError):
    """Raised when a document or builder value breaks the format rules."""

    def __init__(self, message: str, violations: list[SchemaViolation] | None = None):
        self.violations = list(violations or [])
        if self.violations:
            listed = "; ".join(str(v) for v in self.violations[:4])
            extra = "" if len(self.violations) <= 4 else f" (+{len(self.violations) - 4} more)"
            message = f"{message}: {listed}{extra}"
        super().__init__(message)


def check_document(value: Any) -> list[SchemaViolation]:
    """All rule violations in a parsed document, in walk order."""
    checker = _Checker()
    checker.check_root(value)
    return checker.violations


class _Checker:
    def __init__(self) -> None:
        self.violations: list[SchemaViolation] = []
        self._ids: dict[str, str] = {}

    def fail(self, path: str, rule: str, detail: str) -> None:
        self.violations.append(SchemaViolation(path, rule, detail))

    # -- generic field helpers ------------------------------------------------

    def _keys(self, obj: dict, path: str, required: set[str], optional: set[str] = frozenset()) -> None:
        for key in sorted(required):
            if key not in obj:
                self.fail(f"{path}/{key}", RULE_MISSING, f"required field {key!r} is missing")
        for key in sorted(obj):
            if key not in required and key not in optional:
                self.fail(f"{path}/{key}", RULE_VALUE, f"unexpected field {key!r}")

    def _string(self, obj: dict, path: str, key: str, nonempty: bool = False) -> str | None:
        if key not in obj:
            return None
        value = obj[key]
        if not isinstance(value, str):
            self.fail(f"{path}/{key}", RULE_TYPE, f"{key!r} must be a string")
            return None
        if nonempty and not value:
            self.fail(f"{path}/{key}", RULE_VALUE, f"{key!r} must not be empty")
            return None
        return value

    def _boolean(self, obj: dict, path: str, key: str) -> None:
        if key in obj and not isinstance(obj[key], bool):
            self.fail(f"{path}/{key}", RULE_TYPE, f"{key!r} must be a boolean")

    def _integer(self, obj: dict, path: str, key: str, positive: bool = False) -> None:
        if key not in obj:
            return
        value = obj[key]
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail(f"{path}/{key}", RULE_TYPE, f"{key!r} must be an integer")
        elif positive and value <= 0:
            self.fail(f"{path}/{key}", RULE_VALUE, f"{key!r} must be positive")

    def _number(self, obj: dict, path: str, key: str, positive: bool = False) -> None:
        if key not in obj:
            return
        value = obj[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.fail(f"{path}/{key}", RULE_TYPE, f"{key!r} must be a number")
        elif not math.isfinite(value):
            self.fail(f"{path}/{key}", RULE_VALUE, f"{key!r} must be finite")
        elif positive and value <= 0:
            self.fail(f"{path}/{key}", RULE_VALUE, f"{key!r} must be positive")

    def _enum(self, obj: dict, path: str, key: str, allowed: frozenset[str]) -> str | None:
        if key not in obj:
            return None
        value = obj[key]
        if not isinstance(value, str):
            self.fail(f"{path}/{key}", RULE_TYPE, f"{key!r} must be a string")
            return None
        if value not in allowed:
            self.fail(f"{path}/{key}", RULE_ENUM, f"{value!r} is not one of {sorted(allowed)}")
            return None
        return value

    def _register_id(self, obj: dict, path: str) -> None:
        if "id" not in obj:
            self.fail(f"{path}/id", RULE_MISSING, "required field 'id' is missing")
            return
        value = obj["id"]
        if not isinstance(value, str):
            self.fail(f"{path}/id", RULE_TYPE, "'id' must be a string")
            return
        if not value:
            self.fail(f"{path}/id", RULE_VALUE, "'id' must not be empty")
            return
        first = self._ids.get(value)
        if first is not None:
            self.fail(f"{path}/id", RULE_DUPLICATE, f"id {value!r} already used at {first}")
        else:
            self._ids[value] = f"{path}/id"

    def _collection(self, obj: dict, path: str, key: str, check_item) -> dict[str, dict]:
        """Validate an id-keyed collection; returns the well-formed entries."""
        good: dict[str, dict] = {}
        if key not in obj:
            return good
        coll = obj[key]
        if not isinstance(coll, dict):
            self.fail(f"{path}/{key}", RULE_TYPE, f"{key!r} must be an object")
            return good
        for item_key in sorted(coll):
            item_path = f"{path}/{key}/{item_key}"
            item = coll[item_key]
            if not isinstance(item, dict):
                self.fail(item_path, RULE_TYPE, "collection entry must be an object")
                continue
            self._register_id(item, item_path)
            if isinstance(item.get("id"), str) and item["id"] and item["id"] != item_key:
                self.fail(
                    f"{item_path}/id",
                    RULE_VALUE,
                    f"id {item['id']!r} does not match its collection key {item_key!r}",
                )
            check_item(item, item_path)
            good[item_key] = item
        return good

    # -- document tree ---------------------------------------------------------

    def check_root(self, value: Any) -> None:
        if not isinstance(value, dict):
            self.fail("/", RULE_TYPE, "document root must be an object")
            return
        self._keys(value, "", {"version", "mime", "canvas"})
        version = self._string(value, "", "version")
        if version is not None:
            try:
                parsed = int(version)
            except ValueError:
                self.fail("/version", RULE_VALUE, f"version {version!r} is not an integer")
            else:
                if str(parsed) != version:
                    # "01", "+1", " 1" all parse to 1 but are not canonical text.
                    self.fail(
                        "/version", RULE_VALUE, f"version {version!r} is not canonical integer text"
                    )
                elif parsed < 1:
                    self.fail("/version", RULE_VALUE, "version must be >= 1")
                elif parsed > SUPPORTED_VERSION:
                    self.fail(
                        "/version",
                        RULE_VALUE,
                        f"unsupported version {version!r}; this implementation supports up to {SUPPORTED_VERSION}",
                    )
        mime = self._string(value, "", "mime")
        if mime is not None and mime != MIME_TYPE:
            self.fail("/mime", RULE_VALUE, f"mime must be exactly {MIME_TYPE!r}")
        if "canvas" in value:
            if isinstance(value["canvas"], dict):
                self._canvas(value["canvas"], "/canvas")
            else:
                self.fail("/canvas", RULE_TYPE, "'canvas' must be an object")

    def _canvas(self, obj: dict, path: str) -> None:
        self._keys(
            obj,
            path,
            {"id", "title", "width", "height", "zoomToFit", "menus", "messages"},
            {"graph", "chart"},
        )
        self._register_id(obj, path)
        self._string(obj, path, "title", nonempty=True)
        self._integer(obj, path, "width", positive=True)
        self._integer(obj, path, "height", positive=True)
        self._boolean(obj, path, "zoomToFit")
        self._collection(obj, path, "menus", lambda item, p: self._menu(item, p, depth=1))
        self._collection(obj, path, "messages", self._message)
        if "graph" in obj and "chart" in obj:
            self.fail(path, RULE_VALUE, "canvas holds at most one of 'graph' or 'chart'")
        if "graph" in obj:
            if isinstance(obj["graph"], dict):
                self._graph(obj["graph"], f"{path}/graph")
            else:
                self.fail(f"{path}/graph", RULE_TYPE, "'graph' must be an object")
        if "chart" in obj:
            if isinstance(obj["chart"], dict):
                self._chart(obj["chart"], f"{path}/chart")
            else:
                self.fail(f"{path}/chart", RULE_TYPE, "'chart' must be an object")

    def _menu(self, obj: dict, path: str, depth: int) -> None:
        self._keys(obj, path, {"id", "title", "submenus"}, {"callback"})
        if depth > MENU_DEPTH_LIMIT:
            self.fail(path, RULE_VALUE, f"menu nesting exceeds depth {MENU_DEPTH_LIMIT}")
        self._string(obj, path, "title", nonempty=True)
        if "callback" in obj:
            if isinstance(obj["callback"], dict):
                self._register_id(obj["callback"], f"{path}/callback")
                self._callback(obj["callback"], f"{path}/callback")
            else:
                self.fail(f"{path}/callback", RULE_TYPE, "'callback' must be an object")
        self._collection(obj, path, "submenus", lambda item, p: self._menu(item, p, depth + 1))

    def _message(self, obj: dict, path: str) -> None:
        self._keys(obj, path, {"id", "level", "title", "text"})
        self._enum(obj, path, "level", LEVELS)
        self._string(obj, path, "title")
        self._string(obj, path, "text")

    def _callback(self, obj: dict, path: str) -> None:
        self._keys(obj, path, {"id", "funcName", "trigger", "knownArgs", "requiredArgs"})
        self._string(obj, path, "funcName", nonempty=True)
        self._enum(obj, path, "trigger", TRIGGERS)
        if "knownArgs" in obj:
            args = obj["knownArgs"]
            if not isinstance(args, list):
                self.fail(f"{path}/knownArgs", RULE_TYPE, "'knownArgs' must be an array")
            else:
                for i, arg in enumerate(args):
                    if not isinstance(arg, (str, int, float, bool)) or (
                        isinstance(arg, float) and not math.isfinite(arg)
                    ):
                        self.fail(
                            f"{path}/knownArgs/{i}",
                            RULE_TYPE,
                            "known args must be scalar strings, numbers or booleans",
                        )
        self._collection(obj, path, "requiredArgs", self._required_arg)

    def _required_arg(self, obj: dict, path: str) -> None:
        self._keys(obj, path, {"id", "title", "valueKind", "choices"}, {"default"})
        self._string(obj, path, "title")
        kind = self._enum(obj, path, "valueKind", VALUE_KINDS)
        choices: list | None = None
        if "choices" in obj:
            raw = obj["choices"]
            if not isinstance(raw, list) or not all(isinstance(c, str) for c in raw):
                self.fail(f"{path}/choices", RULE_TYPE, "'choices' must be an array of strings")
            else:
                choices = raw
        if kind is not None and choices is not None:
            if kind == "select" and not choices:
                self.fail(f"{path}/choices", RULE_VALUE, "select args need at least one choice")
            if kind != "select" and choices:
                self.fail(f"{path}/choices", RULE_VALUE, f"choices are only allowed for select args, not {kind!r}")
        if "default" in obj and kind is not None:
            self._default_value(obj["default"], kind, choices, f"{path}/default")

    def _default_value(self, value: Any, kind: str, choices: list | None, path: str) -> None:
        if kind == "text" and not isinstance(value, str):
            self.fail(path, RULE_VALUE, "default for a text arg must be a string")
        elif kind == "number" and (isinstance(value, bool) or not isinstance(value, (int, float))):
            self.fail(path, RULE_VALUE, "default for a number arg must be a number")
        elif kind == "boolean" and not isinstance(value, bool):
            self.fail(path, RULE_VALUE, "default for a boolean arg must be a boolean")
        elif kind == "select":
            if not isinstance(value, str) or (choices is not None and value not in choices):
                self.fail(path, RULE_VALUE, "default for a select arg must be one of its choices")

    def _node(self, obj: dict, path: str) -> None:
        self._keys(
            obj,
            path,
            {"id", "shape", "title", "layer", "size", "menus", "messages", "callbacks"},
            {"color", "parent"},
        )
        self._enum(obj, path, "shape", SHAPES)
        self._string(obj, path, "title")
        self._integer(obj, path, "layer")
        self._number(obj, path, "size", positive=True)
        self._string(obj, path, "color")
        self._string(obj, path, "parent", nonempty=True)
        self._collection(obj, path, "menus", lambda item, p: self._menu(item, p, depth=1))
        self._collection(obj, path, "messages", self._message)
        self._collection(
            obj,
            path,
            "callbacks",
            lambda item, p: self._callback(item, p),
        )

    def _link(self, obj: dict, path: str) -> None:
        self._keys(obj, path, {"id", "source", "target", "weight", "length"}, {"color", "title"})
        self._string(obj, path, "source", nonempty=True)
        self._string(obj, path, "target", nonempty=True)
        self._number(obj, path, "weight", positive=True)
        self._number(obj, path, "length", positive=True)
        self._string(obj, path, "color")
        self._string(obj, path, "title")

    def _graph(self, obj: dict, path: str) -> None:
        self._keys(obj, path, {"kind", "simulationEnabled", "nodes", "links"})
        kind = self._enum(obj, path, "kind", GRAPH_KINDS)
        self._boolean(obj, path, "simulationEnabled")
        nodes = self._collection(obj, path, "nodes", self._node)
        links = self._collection(obj, path, "links", self._link)
        for node_key, node in sorted(nodes.items()):
            parent = node.get("parent")
            if not isinstance(parent, str) or not parent:
                continue
            node_path = f"{path}/nodes/{node_key}"
            if kind is not None and kind != "tree":
                self.fail(f"{node_path}/parent", RULE_VALUE, "'parent' is only allowed in tree graphs")
            if parent not in nodes:
                self.fail(f"{node_path}/parent", RULE_DANGLING, f"parent {parent!r} is not a node in this graph")
        if kind == "tree":
            self._check_forest(nodes, path)
        for link_key, link in sorted(links.items()):
            link_path = f"{path}/links/{link_key}"
            source = link.get("source")
            target = link.get("target")
            for field in ("source", "target"):
                endpoint = link.get(field)
                if isinstance(endpoint, str) and endpoint and endpoint not in nodes:
                    self.fail(
                        f"{link_path}/{field}",
                        RULE_DANGLING,
                        f"{field} {endpoint!r} is not a node in this graph",
                    )
            if (
                isinstance(source, str)
                and source
                and source == target
                and kind is not None
                and kind != "directed"
            ):
                self.fail(link_path, RULE_VALUE, f"self-loops are not allowed in {kind} graphs")

    def _check_forest(self, nodes: dict[str, dict], path: str) -> None:
        parents = {
            key: node["parent"]
            for key, node in nodes.items()
            if isinstance(node.get("parent"), str) and node["parent"] in nodes
        }
        acyclic: set[str] = set()
        reported: set[str] = set()
        for start in sorted(parents):
            trail: list[str] = []
            seen_here: set[str] = set()
            current: str | None = start
            while current is not None and current not in acyclic:
                if current in seen_here:
                    cycle = trail[trail.index(current):]
                    if not reported & set(cycle):
                        reported.update(cycle)
                        self.fail(
                            path,
                            RULE_VALUE,
                            "tree parents form a cycle: " + " -> ".join(cycle + [current]),
                        )
                    break
                seen_here.add(current)
                trail.append(current)
                current = parents.get(current)
            else:
                acyclic.update(trail)

    def _chart(self, obj: dict, path: str) -> None:
        self._keys(obj, path, {"kind", "axisX", "axisY", "datasets", "showLegend"})
        kind = self._enum(obj, path, "kind", CHART_KINDS)
        self._boolean(obj, path, "showLegend")
        for axis_key in ("axisX", "axisY"):
            if axis_key not in obj:
                continue
            axis = obj[axis_key]
            axis_path = f"{path}/{axis_key}"
            if not isinstance(axis, dict):
                self.fail(axis_path, RULE_TYPE, f"{axis_key!r} must be an object")
                continue
            self._keys(axis, axis_path, {"title"}, {"domain"})
            self._string(axis, axis_path, "title")
            if "domain" in axis:
                self._axis_domain(axis["domain"], axis_key, f"{axis_path}/domain")
        if "datasets" in obj:
            self._datasets(obj["datasets"], kind, f"{path}/datasets")

    def _axis_domain(self, domain: Any, axis_key: str, path: str) -> None:
        if not isinstance(domain, list):
            self.fail(path, RULE_TYPE, "'domain' must be an array")
            return
        if axis_key == "axisX":
            for i, label in enumerate(domain):
                if not isinstance(label, str):
                    self.fail(f"{path}/{i}", RULE_TYPE, "x-axis domain entries must be category strings")
            return
        if len(domain) != 2:
            self.fail(path, RULE_VALUE, "y-axis domain must be a [min, max] pair")
            return
        ok = True
        for i, bound in enumerate(domain):
            if isinstance(bound, bool) or not isinstance(bound, (int, float)) or not math.isfinite(bound):
                self.fail(f"{path}/{i}", RULE_TYPE, "y-axis domain bounds must be finite numbers")
                ok = False
        if ok and not domain[0] < domain[1]:
            self.fail(path, RULE_VALUE, "y-axis domain must satisfy min < max")

    def _datasets(self, datasets: Any, kind: str | None, path: str) -> None:
        if not isinstance(datasets, dict):
            self.fail(path, RULE_TYPE, "'datasets' must be an object")
            return
        lengths: dict[str, int] = {}
        for name in sorted(datasets):
            series_path = f"{path}/{name}"
            if not name:
                self.fail(series_path, RULE_VALUE, "dataset names must not be empty")
            series = datasets[name]
            if not isinstance(series, list):
                self.fail(series_path, RULE_TYPE, "dataset must be an array of numbers")
                continue
            for i, value in enumerate(series):
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    self.fail(f"{series_path}/{i}", RULE_TYPE, "dataset values must be numbers")
                elif not math.isfinite(value):
                    self.fail(f"{series_path}/{i}", RULE_VALUE, "dataset values must be finite")
            lengths[name] = len(series)
        if kind in ("line", "bar") and len(set(lengths.values())) > 1:
            detail = ", ".join(f"{name}={n}" for name, n in sorted(lengths.items()))
            self.fail(path, RULE_VALUE, f"{kind} chart datasets must have equal lengths ({detail})")
