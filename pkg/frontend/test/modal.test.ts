// ModalState: the pure state machine behind the required-argument dialog.
// Submission stays gated until every argument coerces under its declared
// valueKind; the emitted providedArgs carry coerced values, not raw input.

import { describe, expect, it } from "vitest";

import type { Callback, RequiredArg } from "../src/document";
import { ModalState } from "../src/modal";

function arg(id: string, overrides: Partial<RequiredArg>): RequiredArg {
  return { id, title: id, valueKind: "text", choices: [], ...overrides };
}

function callbackWith(...args: RequiredArg[]): Callback {
  const requiredArgs: Record<string, RequiredArg> = {};
  for (const a of args) requiredArgs[a.id] = a;
  return { id: "callback-0", funcName: "Fn", trigger: "click", knownArgs: [], requiredArgs };
}

describe("ModalState", () => {
  it("prefills defaults and validates them immediately", () => {
    const modal = new ModalState(
      callbackWith(
        arg("arg-0", { valueKind: "number", default: 1.0 }),
        arg("arg-1", { valueKind: "boolean", default: true }),
        arg("arg-2", { valueKind: "text", default: "hi" }),
      ),
    );
    expect(modal.canSubmit()).toBe(true);
    expect(modal.providedArgs()).toEqual({ "arg-0": 1, "arg-1": true, "arg-2": "hi" });
  });

  it("starts invalid for kinds whose empty value does not conform", () => {
    const modal = new ModalState(
      callbackWith(
        arg("num", { valueKind: "number" }),
        arg("pick", { valueKind: "select", choices: ["a", "b"] }),
        arg("note", { valueKind: "text" }),
        arg("flag", { valueKind: "boolean" }),
      ),
    );
    expect(modal.validity("num").ok).toBe(false);
    expect(modal.validity("pick").ok).toBe(false);
    expect(modal.validity("note").ok).toBe(true); // empty text is still text
    expect(modal.validity("flag").ok).toBe(true); // checkbox defaults to false
    expect(modal.canSubmit()).toBe(false);
    expect(modal.providedArgs()).toBeNull();
  });

  it("re-validates on every setValue", () => {
    const modal = new ModalState(callbackWith(arg("num", { valueKind: "number" })));
    modal.setValue("num", "12px");
    expect(modal.validity("num").ok).toBe(false);
    modal.setValue("num", " 12.5 ");
    expect(modal.validity("num").ok).toBe(true);
    expect(modal.providedArgs()).toEqual({ num: 12.5 });
  });

  it("coerces values for the trigger payload", () => {
    const modal = new ModalState(
      callbackWith(
        arg("n", { valueKind: "number" }),
        arg("b", { valueKind: "boolean" }),
      ),
    );
    modal.setValue("n", "1e3");
    modal.setValue("b", "true");
    expect(modal.providedArgs()).toEqual({ n: 1000, b: true });
  });

  it("gates on a single bad argument", () => {
    const modal = new ModalState(
      callbackWith(
        arg("ok", { valueKind: "text", default: "fine" }),
        arg("pick", { valueKind: "select", choices: ["up", "down"] }),
      ),
    );
    expect(modal.canSubmit()).toBe(false);
    modal.setValue("pick", "sideways");
    expect(modal.canSubmit()).toBe(false);
    modal.setValue("pick", "down");
    expect(modal.canSubmit()).toBe(true);
  });

  it("ignores unknown argument ids", () => {
    const modal = new ModalState(callbackWith(arg("n", { valueKind: "number", default: 2 })));
    modal.setValue("ghost", "boo");
    expect(modal.canSubmit()).toBe(true);
    expect(modal.providedArgs()).toEqual({ n: 2 });
    expect(modal.validity("ghost").ok).toBe(false);
  });

  it("lists arguments in sorted id order for stable rendering", () => {
    const modal = new ModalState(
      callbackWith(
        arg("arg-2", { default: "c" }),
        arg("arg-0", { default: "a" }),
        arg("arg-1", { default: "b" }),
      ),
    );
    expect(modal.args().map((s) => s.arg.id)).toEqual(["arg-0", "arg-1", "arg-2"]);
  });
});
