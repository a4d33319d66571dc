import { readFileSync } from "node:fs";
import { join } from "node:path";

import type { FrancyDocument } from "../src/document";
import { Renderer } from "../src/renderer";

// vitest runs with the package root as cwd; import.meta.url is unusable here
// because the jsdom environment rewrites it to an http:// URL
export function fixtureText(name: string): string {
  return readFileSync(join(process.cwd(), "fixtures", name), "utf-8");
}

export function fixtureJson<T = unknown>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}

export function drawFrame(doc: unknown): string {
  return JSON.stringify({ type: "draw", payload: { document: doc } });
}

export function s3Document(): FrancyDocument {
  return fixtureJson<FrancyDocument>("subgroups-s3.francy.json");
}

/** A renderer mounted on a fresh root, capturing outbound frames. */
export function mountRenderer(): { renderer: Renderer; root: HTMLElement; sent: string[] } {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const sent: string[] = [];
  const renderer = new Renderer(root, { sendFrame: (text) => sent.push(text) });
  return { renderer, root, sent };
}

export function nodeByLabel(root: HTMLElement, label: string): SVGGElement {
  const nodes = [...root.querySelectorAll<SVGGElement>("g.fr-node")];
  const hit = nodes.find(
    (el) => el.querySelector(".fr-node-label")?.textContent === label,
  );
  if (!hit) throw new Error(`no rendered node labeled '${label}'`);
  return hit;
}

export function messageTitles(root: HTMLElement): string[] {
  return [...root.querySelectorAll(".fr-message .fr-message-title")].map(
    (el) => el.textContent ?? "",
  );
}
