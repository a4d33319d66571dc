"""Canonical text form of Documents.

One valid document has exactly one serialization: keys sorted, no
insignificant whitespace, UTF-8, shortest round-trip number form.  The
deserializer rejects rather than repairs — any rule violation aborts the
parse and the full violation list rides on the raised error.
"""

from __future__ import annotations

import json
from importlib import resources

from .model import Document
from .validation import (
    MIME_TYPE,
    RULE_VALUE,
    SchemaViolation,
    ValidationError,
    check_document,
)

__all__ = [
    "FILE_EXTENSION",
    "MIME_TYPE",
    "deserialize",
    "load_schema",
    "serialize",
    "validate",
]

FILE_EXTENSION = ".francy.json"


def _canonical(value) -> str:
    return json.dumps(
        value, sort_keys=True, separators=(",", ":"), ensure_ascii=False, allow_nan=False
    )


def _reject_constant(token: str):
    raise ValueError(f"non-finite JSON constant {token!r} is not allowed")


def _parse(text: str):
    """Parsed JSON value, or a one-violation list if the text is malformed."""
    try:
        return json.loads(text, parse_constant=_reject_constant), None
    except (ValueError, TypeError) as exc:
        return None, [SchemaViolation("/", RULE_VALUE, f"malformed JSON: {exc}")]


def serialize(doc: Document) -> str:
    payload = doc.to_jsonable()
    violations = check_document(payload)
    if violations:
        raise ValidationError("refusing to serialize an invalid document", violations)
    return _canonical(payload)


def deserialize(text: str) -> Document:
    parsed, parse_violations = _parse(text)
    if parse_violations:
        raise ValidationError("cannot deserialize", parse_violations)
    violations = check_document(parsed)
    if violations:
        raise ValidationError("cannot deserialize", violations)
    return Document(version=parsed["version"], mime=parsed["mime"], canvas=parsed["canvas"])


def validate(text: str) -> list[SchemaViolation]:
    """Every rule violation in the text; empty iff deserialize would succeed."""
    parsed, parse_violations = _parse(text)
    if parse_violations:
        return parse_violations
    return check_document(parsed)


def load_schema() -> dict:
    """The machine-readable schema document shipped with the package."""
    text = resources.files("francy_forge").joinpath("schema/francy-document.schema.json").read_text(
        encoding="utf-8"
    )
    return json.loads(text)
