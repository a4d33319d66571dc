"""Built-in demos: the subgroup-digraph canvas and its callback handler.

``build_subgroups_canvas`` assembles, for a finite permutation group G, a
directed graph whose vertices are the subgroups of G (1-based, in the
deterministic enumeration order) and whose edges are the containment pairs,
each vertex carrying an "Is this subgroup simple?" context menu.  Triggering
it appends an explanatory info message plus a per-vertex verdict message and
redraws the same canvas, so messages accumulate across triggers exactly like
repeated Add(canvas, ...) calls would.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .dispatch import HandlerRegistry
from .groups import (
    PermGroup,
    all_subgroups,
    group_from_generators,
    is_simple,
    parse_generator_spec,
    subgroup_digraph,
    symmetric_group,
)
from .model import (
    Document,
    GraphKind,
    Level,
    Shape,
    add,
    builder_scope,
    draw,
    new_callback,
    new_canvas,
    new_graph,
    new_link,
    new_menu,
    new_message,
    new_shape,
)

SIMPLE_GROUPS_TITLE = "Simple Groups"
SIMPLE_GROUPS_TEXT = (
    "A group is simple if it is nontrivial and has no nontrivial normal subgroups."
)
MENU_TITLE = "Is this subgroup simple?"
HANDLER_NAME = "IsGroupSimple"

GENERATOR_DEMO_PREFIX = "subgroups-gens:"


def build_subgroups_canvas(group: PermGroup) -> tuple[Document, HandlerRegistry]:
    """The subgroup-digraph document for ``group`` plus its handler registry.

    Each call builds an independent canvas and registry, so concurrent
    sessions never share mutable state.
    """
    subgroups = all_subgroups(group)
    pairs = subgroup_digraph(group)

    canvas = new_canvas(f"Subgroups Digraph of {group}")
    graph = new_graph(GraphKind.DIRECTED)
    add(canvas, graph)
    info_message = new_message(Level.INFO, SIMPLE_GROUPS_TITLE, SIMPLE_GROUPS_TEXT)

    nodes = []
    for index in range(1, len(subgroups) + 1):
        node = new_shape(Shape.CIRCLE, str(index))
        callback = new_callback(HANDLER_NAME, [index])
        add(node, new_menu(MENU_TITLE, callback))
        add(graph, node)
        nodes.append(node)
    for i, j in pairs:
        add(graph, new_link(nodes[i - 1], nodes[j - 1]))

    def is_group_simple(known_args: list, provided_args: dict) -> Document:
        index = int(known_args[0])
        if not 1 <= index <= len(subgroups):
            raise ValueError(f"vertex index {index} is out of range")
        subgroup = subgroups[index - 1]
        with builder_scope(canvas):
            add(canvas, info_message)
            if is_simple(subgroup):
                verdict = new_message(
                    Level.DEFAULT,
                    "Simple",
                    f"The vertex {index}, representing the subgroup {subgroup}, is simple.",
                )
            else:
                verdict = new_message(
                    Level.DEFAULT,
                    "Not Simple",
                    f"The vertex {index}, representing the subgroup {subgroup}, is not simple.",
                )
            add(canvas, verdict)
            return draw(canvas)

    registry = HandlerRegistry()
    registry.register(HANDLER_NAME, is_group_simple)
    return draw(canvas), registry


@dataclass(frozen=True)
class Demo:
    name: str
    description: str
    build: Callable[[], tuple[Document, HandlerRegistry]]


_FIXED_DEMOS = {
    "subgroups-s3": Demo(
        "subgroups-s3",
        "Subgroup digraph of the symmetric group on 3 points",
        lambda: build_subgroups_canvas(symmetric_group(3)),
    ),
    "subgroups-s4": Demo(
        "subgroups-s4",
        "Subgroup digraph of the symmetric group on 4 points",
        lambda: build_subgroups_canvas(symmetric_group(4)),
    ),
}

DEFAULT_DEMO = "subgroups-s3"


def available_demos() -> tuple[str, ...]:
    return tuple(sorted(_FIXED_DEMOS)) + (GENERATOR_DEMO_PREFIX + "<generator-spec>",)


def build_demo(name: str) -> tuple[Document, HandlerRegistry]:
    """Fresh (document, registry) pair for a registered demo name."""
    demo = _FIXED_DEMOS.get(name)
    if demo is not None:
        return demo.build()
    if name.startswith(GENERATOR_DEMO_PREFIX):
        spec = name[len(GENERATOR_DEMO_PREFIX):]
        generators = parse_generator_spec(spec)
        return build_subgroups_canvas(group_from_generators(generators))
    raise ValueError(
        f"unknown demo {name!r}; available: {', '.join(available_demos())}"
    )
