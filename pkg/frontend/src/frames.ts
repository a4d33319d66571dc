// The websocket frame envelope: one JSON object per text message, shaped
// {"type": <hello|draw|trigger|error>, "payload": {...}}. Parsing is strict
// (mirrors the server): unknown types, extra top-level fields, or a
// non-object payload are rejected rather than guessed at.

import type { Scalar } from "./document";

export const FRAME_TYPES = ["hello", "draw", "trigger", "error"] as const;
export type FrameType = (typeof FRAME_TYPES)[number];

export interface HelloPayload {
  version: string;
  mime: string;
}

export interface ErrorPayload {
  title: string;
  text: string;
  level: string;
}

export interface Frame {
  type: FrameType;
  payload: Record<string, unknown>;
}

export type ParseResult =
  | { ok: true; frame: Frame }
  | { ok: false; why: string };

export function parseFrame(text: string): ParseResult {
  let value: unknown;
  try {
    value = JSON.parse(text);
  } catch (err) {
    return { ok: false, why: `malformed JSON: ${(err as Error).message}` };
  }
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    return { ok: false, why: "frame must be a JSON object" };
  }
  const obj = value as Record<string, unknown>;
  const extra = Object.keys(obj).filter((k) => k !== "type" && k !== "payload");
  if (extra.length > 0) {
    return { ok: false, why: `unexpected frame fields: ${extra.sort().join(", ")}` };
  }
  const type = obj.type;
  if (typeof type !== "string" || !(FRAME_TYPES as readonly string[]).includes(type)) {
    return { ok: false, why: `unknown frame type ${JSON.stringify(type)}` };
  }
  const payload = obj.payload;
  if (typeof payload !== "object" || payload === null || Array.isArray(payload)) {
    return { ok: false, why: "frame payload must be a JSON object" };
  }
  return { ok: true, frame: { type: type as FrameType, payload: payload as Record<string, unknown> } };
}

export function triggerFrame(callbackId: string, providedArgs: Record<string, Scalar>): string {
  return JSON.stringify({ type: "trigger", payload: { callbackId, providedArgs } });
}
