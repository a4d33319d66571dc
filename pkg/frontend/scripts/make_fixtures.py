"""Regenerate the renderer's cross-component test fixtures.

The renderer must agree with the backend about three behavioural contracts:
the document format, the draw produced by triggering the subgroup demo, and
the per-valueKind coercion rules that gate the required-argument modal.
Rather than restating those rules twice and letting them drift, this script
exports them from the backend as data; tests/test_frontend_fixtures.py fails
whenever the committed files go stale.

Run from the repository root:  python3 frontend/scripts/make_fixtures.py
"""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

from francy_forge import codec, demos, groups, model
from francy_forge.dispatch import TriggerFrame, coerce_value

REPO = Path(__file__).resolve().parent.parent.parent
FIXTURES = REPO / "frontend" / "fixtures"

sys.path.insert(0, str(REPO / "tests"))
import docgen  # noqa: E402  (the backend test corpus generator)

COERCION_GRID = {
    "number": [
        12, 12.5, -3, 0, 1e308,
        "12", " 12 ", "12\n", "+12", "-0.5", ".5", "1.", "1e3", "1E3", "1e-3",
        "1_000", "1_0.0_1e1_0", "_1", "1_", "1__0",
        "12px", "abc", "", " ", "0x10", "1.2.3",
        "Infinity", "-inf", "nan", "NaN", "1e400",
        True, False,
    ],
    "boolean": [True, False, "true", "false", "True", "TRUE", "", "yes", "1", 1, 0],
    "text": ["hi", "", "0", "multi\nline", "κλμ", 12, 12.5, True, False],
    "select": ["up", "down", "σ-mode", "Up", "", "left", "up ", True, 5],
}
SELECT_CHOICES = ["up", "down", "σ-mode"]


def demo_document() -> str:
    # Through the CLI on purpose: the renderer only ever sees this interface.
    return subprocess.run(
        [sys.executable, "-m", "francy_forge", "demo", "subgroups-s3"],
        check=True, capture_output=True, text=True,
    ).stdout


def redraw_after_simple_trigger() -> str:
    """The draw a server would send after asking about the order-3 vertex."""
    s3 = groups.symmetric_group(3)
    document, registry = demos.build_subgroups_canvas(s3)
    orders = [len(h.elements) for h in groups.all_subgroups(s3)]
    vertex = orders.index(3) + 1
    node = next(
        n for n in document.canvas["graph"]["nodes"].values()
        if n["title"] == str(vertex)
    )
    callback_id = next(iter(node["menus"].values()))["callback"]["id"]
    result = registry.trigger(document, TriggerFrame(callback_id, {}))
    assert result.redraw is not None, result.failure
    return codec.serialize(result.redraw)


def modal_document() -> str:
    """A document whose single menu entry needs a number and a select arg."""
    canvas = model.new_canvas("modal exercise")
    graph = model.new_graph("undirected")
    model.add(canvas, graph)
    node = model.new_shape("square", "target")
    model.add(graph, node)
    callback = model.new_callback("MoveBy", known_args=[node.id])
    amount = model.new_required_arg("amount", model.ValueKind.NUMBER, default=1.0)
    direction = model.new_required_arg(
        "direction", model.ValueKind.SELECT, choices=SELECT_CHOICES
    )
    model.add_required_arg(callback, amount)
    model.add_required_arg(callback, direction)
    model.add(node, model.new_menu("Move…", callback))
    return codec.serialize(model.draw(canvas))


def coercion_vectors() -> str:
    table: dict = {"selectChoices": SELECT_CHOICES, "cases": []}
    for kind, values in COERCION_GRID.items():
        choices = SELECT_CHOICES if kind == "select" else ()
        for value in values:
            case: dict = {"kind": kind, "value": value}
            try:
                case["coerced"] = coerce_value(value, kind, choices)
                case["ok"] = True
            except ValueError:
                case["ok"] = False
            table["cases"].append(case)
    return json.dumps(table, ensure_ascii=False, indent=1, sort_keys=True) + "\n"


def defect_vectors() -> str:
    """Clean documents plus single-field defects labelled with their rule."""
    docs = [d.to_jsonable() for d in docgen.corpus(12)]
    by_rule: dict[str, list] = {}
    for doc in docs:
        for mutation in docgen.enumerate_mutations(doc):
            by_rule.setdefault(mutation.rule, []).append(mutation)
    defects = []
    for rule in sorted(by_rule):
        for mutation in by_rule[rule][:16]:
            defects.append({"rule": rule, "document": mutation.mutated()})
    table = {"clean": docs, "defects": defects}
    return json.dumps(table, ensure_ascii=False, sort_keys=True) + "\n"


OUTPUTS = {
    "subgroups-s3.francy.json": demo_document,
    "subgroups-s3-redraw.francy.json": redraw_after_simple_trigger,
    "modal-callback.francy.json": modal_document,
    "coercion-vectors.json": coercion_vectors,
    "defect-vectors.json": defect_vectors,
}


def main() -> None:
    FIXTURES.mkdir(exist_ok=True)
    for name, build in OUTPUTS.items():
        path = FIXTURES / name
        path.write_text(build(), encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
