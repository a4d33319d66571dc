// State machine behind the required-argument modal. Pure (no DOM): the view
// feeds raw input values in, the machine answers per-arg validity and
// whether submission is allowed, and produces the coerced providedArgs for
// the outgoing trigger frame. Submit stays disabled until every argument
// conforms to its declared valueKind.

import { coerceValue, type CoerceResult } from "./coerce";
import type { Callback, RequiredArg, Scalar } from "./document";

export interface ArgState {
  arg: RequiredArg;
  raw: Scalar;
  result: CoerceResult;
}

export class ModalState {
  readonly callback: Callback;
  private states = new Map<string, ArgState>();

  constructor(callback: Callback) {
    this.callback = callback;
    for (const argId of Object.keys(callback.requiredArgs).sort()) {
      const arg = callback.requiredArgs[argId]!;
      const raw = initialRaw(arg);
      this.states.set(argId, { arg, raw, result: coerceValue(raw, arg.valueKind, arg.choices) });
    }
  }

  args(): ArgState[] {
    return [...this.states.values()];
  }

  setValue(argId: string, raw: Scalar): void {
    const state = this.states.get(argId);
    if (!state) return; // unknown arg ids are ignored, not invented
    state.raw = raw;
    state.result = coerceValue(raw, state.arg.valueKind, state.arg.choices);
  }

  validity(argId: string): CoerceResult {
    const state = this.states.get(argId);
    return state ? state.result : { ok: false, reason: "unknown argument" };
  }

  canSubmit(): boolean {
    return [...this.states.values()].every((s) => s.result.ok);
  }

  /** Coerced values keyed by arg id, or null while any input is invalid. */
  providedArgs(): Record<string, Scalar> | null {
    if (!this.canSubmit()) return null;
    const out: Record<string, Scalar> = {};
    for (const [argId, state] of this.states) {
      if (state.result.ok) out[argId] = state.result.value;
    }
    return out;
  }
}

function initialRaw(arg: RequiredArg): Scalar {
  if (arg.default !== undefined) {
    // prefill; shown to the user as text for text-entry kinds
    if (arg.valueKind === "boolean") return arg.default === true;
    if (arg.valueKind === "number") return String(arg.default);
    return String(arg.default);
  }
  if (arg.valueKind === "boolean") return false;
  return ""; // empty text is invalid for number/select, valid for text
}
