// Client-side half of the modal contract: the same per-valueKind coercion
// the server applies to providedArgs. The modal gates submission on these
// rules so a submitted trigger can never fail server-side coercion.
//
// fixtures/coercion-vectors.json is exported from the server implementation
// and the tests require 100% agreement with it.

import type { Scalar, ValueKind } from "./document";

export type CoerceResult =
  | { ok: true; value: Scalar }
  | { ok: false; reason: string };

// Float text as the backend accepts it (minus the sign/whitespace noise the
// canonical check strips): digits with optional single underscores between
// them, optional fraction, optional exponent. Non-finite spellings such as
// "Infinity"/"nan" fail the grammar, matching the backend's finiteness gate.
const FLOAT_TEXT =
  /^[+-]?(?:\d(?:_?\d)*(?:\.(?:\d(?:_?\d)*)?)?|\.\d(?:_?\d)*)(?:[eE][+-]?\d(?:_?\d)*)?$/;

export function coerceValue(
  value: Scalar,
  valueKind: ValueKind,
  choices: readonly string[] = [],
): CoerceResult {
  switch (valueKind) {
    case "number": {
      if (typeof value === "boolean") {
        return { ok: false, reason: "expected a number, got a boolean" };
      }
      let num: number;
      if (typeof value === "number") {
        num = value;
      } else {
        const text = value.trim();
        if (!FLOAT_TEXT.test(text)) {
          return { ok: false, reason: `'${value}' is not a decimal number` };
        }
        num = Number(text.replace(/_/g, ""));
      }
      if (!Number.isFinite(num)) {
        return { ok: false, reason: "number must be finite" };
      }
      return { ok: true, value: num };
    }
    case "boolean": {
      if (typeof value === "boolean") return { ok: true, value };
      if (value === "true" || value === "false") {
        return { ok: true, value: value === "true" };
      }
      return { ok: false, reason: `'${value}' is not "true" or "false"` };
    }
    case "text": {
      if (typeof value === "string") return { ok: true, value };
      return { ok: false, reason: `'${value}' is not a string` };
    }
    case "select": {
      if (typeof value === "string" && choices.includes(value)) {
        return { ok: true, value };
      }
      return { ok: false, reason: `'${value}' is not one of the choices [${choices.join(", ")}]` };
    }
  }
}
