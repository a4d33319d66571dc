// Wire types for application/vnd.francy+json documents, plus the client-side
// structural checker. The rules here mirror the server's validator: same rule
// names, same slash paths, so a violation reported by either side points at
// the same place.

export const MIME_TYPE = "application/vnd.francy+json";
export const SUPPORTED_VERSION = 1;

export const GRAPH_KINDS = ["directed", "undirected", "tree"] as const;
export const SHAPES = ["circle", "square", "diamond", "triangle", "star", "wye"] as const;
export const CHART_KINDS = ["line", "bar", "scatter"] as const;
export const TRIGGERS = ["click", "doubleclick", "contextmenu"] as const;
export const LEVELS = ["info", "error", "success", "warning", "default"] as const;
export const VALUE_KINDS = ["text", "number", "boolean", "select"] as const;

export const MENU_DEPTH_LIMIT = 3;

export type GraphKind = (typeof GRAPH_KINDS)[number];
export type Shape = (typeof SHAPES)[number];
export type ChartKind = (typeof CHART_KINDS)[number];
export type Trigger = (typeof TRIGGERS)[number];
export type Level = (typeof LEVELS)[number];
export type ValueKind = (typeof VALUE_KINDS)[number];

export type Scalar = string | number | boolean;

export interface RequiredArg {
  id: string;
  title: string;
  valueKind: ValueKind;
  choices: string[];
  default?: Scalar;
}

export interface Callback {
  id: string;
  funcName: string;
  trigger: Trigger;
  knownArgs: Scalar[];
  requiredArgs: Record<string, RequiredArg>;
}

export interface Menu {
  id: string;
  title: string;
  submenus: Record<string, Menu>;
  callback?: Callback;
}

export interface Message {
  id: string;
  level: Level;
  title: string;
  text: string;
}

export interface GraphNode {
  id: string;
  shape: Shape;
  title: string;
  layer: number;
  size: number;
  color?: string;
  parent?: string;
  menus: Record<string, Menu>;
  messages: Record<string, Message>;
  callbacks: Record<string, Callback>;
}

export interface GraphLink {
  id: string;
  source: string;
  target: string;
  weight: number;
  length: number;
  color?: string;
  title?: string;
}

export interface Graph {
  kind: GraphKind;
  simulationEnabled: boolean;
  nodes: Record<string, GraphNode>;
  links: Record<string, GraphLink>;
}

export interface Axis {
  title: string;
  domain?: (string | number)[];
}

export interface Chart {
  kind: ChartKind;
  axisX: Axis;
  axisY: Axis;
  datasets: Record<string, number[]>;
  showLegend: boolean;
}

export interface Canvas {
  id: string;
  title: string;
  width: number;
  height: number;
  zoomToFit: boolean;
  menus: Record<string, Menu>;
  messages: Record<string, Message>;
  graph?: Graph;
  chart?: Chart;
}

export interface FrancyDocument {
  version: string;
  mime: string;
  canvas: Canvas;
}

export interface Violation {
  path: string;
  rule: string;
  detail: string;
}

export const RULE_MISSING = "missing-field";
export const RULE_TYPE = "wrong-type";
export const RULE_ENUM = "bad-enum";
export const RULE_DANGLING = "dangling-ref";
export const RULE_DUPLICATE = "duplicate-id";
export const RULE_VALUE = "bad-value";

type Dict = Record<string, unknown>;

function isDict(value: unknown): value is Dict {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function isFiniteNumber(value: unknown): value is number {
  return typeof value === "number" && Number.isFinite(value);
}

/** Every rule violation in a parsed document, in walk order. */
export function checkDocument(value: unknown): Violation[] {
  const checker = new Checker();
  checker.root(value);
  return checker.violations;
}

/** Parse text as a document; throws with the violation list on failure. */
export function parseDocument(text: string): FrancyDocument {
  let value: unknown;
  try {
    value = JSON.parse(text);
  } catch (err) {
    throw new Error(`malformed JSON: ${(err as Error).message}`);
  }
  const violations = checkDocument(value);
  if (violations.length > 0) {
    const listed = violations
      .slice(0, 4)
      .map((v) => `${v.path}: [${v.rule}] ${v.detail}`)
      .join("; ");
    throw new Error(`invalid document: ${listed}`);
  }
  return value as unknown as FrancyDocument;
}

class Checker {
  violations: Violation[] = [];
  private ids = new Map<string, string>();

  fail(path: string, rule: string, detail: string): void {
    this.violations.push({ path, rule, detail });
  }

  private keys(obj: Dict, path: string, required: string[], optional: string[] = []): void {
    for (const key of [...required].sort()) {
      if (!(key in obj)) {
        this.fail(`${path}/${key}`, RULE_MISSING, `required field '${key}' is missing`);
      }
    }
    for (const key of Object.keys(obj).sort()) {
      if (!required.includes(key) && !optional.includes(key)) {
        this.fail(`${path}/${key}`, RULE_VALUE, `unexpected field '${key}'`);
      }
    }
  }

  private string(obj: Dict, path: string, key: string, nonempty = false): string | null {
    if (!(key in obj)) return null;
    const value = obj[key];
    if (typeof value !== "string") {
      this.fail(`${path}/${key}`, RULE_TYPE, `'${key}' must be a string`);
      return null;
    }
    if (nonempty && value === "") {
      this.fail(`${path}/${key}`, RULE_VALUE, `'${key}' must not be empty`);
      return null;
    }
    return value;
  }

  private boolean(obj: Dict, path: string, key: string): void {
    if (key in obj && typeof obj[key] !== "boolean") {
      this.fail(`${path}/${key}`, RULE_TYPE, `'${key}' must be a boolean`);
    }
  }

  private integer(obj: Dict, path: string, key: string, positive = false): void {
    if (!(key in obj)) return;
    const value = obj[key];
    if (typeof value !== "number" || !Number.isInteger(value)) {
      this.fail(`${path}/${key}`, RULE_TYPE, `'${key}' must be an integer`);
    } else if (positive && value <= 0) {
      this.fail(`${path}/${key}`, RULE_VALUE, `'${key}' must be positive`);
    }
  }

  private number(obj: Dict, path: string, key: string, positive = false): void {
    if (!(key in obj)) return;
    const value = obj[key];
    if (typeof value !== "number") {
      this.fail(`${path}/${key}`, RULE_TYPE, `'${key}' must be a number`);
    } else if (!Number.isFinite(value)) {
      this.fail(`${path}/${key}`, RULE_VALUE, `'${key}' must be finite`);
    } else if (positive && value <= 0) {
      this.fail(`${path}/${key}`, RULE_VALUE, `'${key}' must be positive`);
    }
  }

  private enum(obj: Dict, path: string, key: string, allowed: readonly string[]): string | null {
    if (!(key in obj)) return null;
    const value = obj[key];
    if (typeof value !== "string") {
      this.fail(`${path}/${key}`, RULE_TYPE, `'${key}' must be a string`);
      return null;
    }
    if (!allowed.includes(value)) {
      this.fail(`${path}/${key}`, RULE_ENUM, `'${value}' is not one of ${[...allowed].sort().join(", ")}`);
      return null;
    }
    return value;
  }

  private registerId(obj: Dict, path: string): void {
    if (!("id" in obj)) {
      this.fail(`${path}/id`, RULE_MISSING, "required field 'id' is missing");
      return;
    }
    const value = obj.id;
    if (typeof value !== "string") {
      this.fail(`${path}/id`, RULE_TYPE, "'id' must be a string");
      return;
    }
    if (value === "") {
      this.fail(`${path}/id`, RULE_VALUE, "'id' must not be empty");
      return;
    }
    const first = this.ids.get(value);
    if (first !== undefined) {
      this.fail(`${path}/id`, RULE_DUPLICATE, `id '${value}' already used at ${first}`);
    } else {
      this.ids.set(value, `${path}/id`);
    }
  }

  private collection(
    obj: Dict,
    path: string,
    key: string,
    checkItem: (item: Dict, itemPath: string) => void,
  ): Record<string, Dict> {
    const good: Record<string, Dict> = {};
    if (!(key in obj)) return good;
    const coll = obj[key];
    if (!isDict(coll)) {
      this.fail(`${path}/${key}`, RULE_TYPE, `'${key}' must be an object`);
      return good;
    }
    for (const itemKey of Object.keys(coll).sort()) {
      const itemPath = `${path}/${key}/${itemKey}`;
      const item = coll[itemKey];
      if (!isDict(item)) {
        this.fail(itemPath, RULE_TYPE, "collection entry must be an object");
        continue;
      }
      this.registerId(item, itemPath);
      if (typeof item.id === "string" && item.id !== "" && item.id !== itemKey) {
        this.fail(
          `${itemPath}/id`,
          RULE_VALUE,
          `id '${item.id}' does not match its collection key '${itemKey}'`,
        );
      }
      checkItem(item, itemPath);
      good[itemKey] = item;
    }
    return good;
  }

  root(value: unknown): void {
    if (!isDict(value)) {
      this.fail("/", RULE_TYPE, "document root must be an object");
      return;
    }
    this.keys(value, "", ["version", "mime", "canvas"]);
    const version = this.string(value, "", "version");
    if (version !== null) {
      const parsed = /^[+-]?\d+$/.test(version.trim()) ? parseInt(version.trim(), 10) : NaN;
      if (Number.isNaN(parsed)) {
        this.fail("/version", RULE_VALUE, `version '${version}' is not an integer`);
      } else if (String(parsed) !== version) {
        this.fail("/version", RULE_VALUE, `version '${version}' is not canonical integer text`);
      } else if (parsed < 1) {
        this.fail("/version", RULE_VALUE, "version must be >= 1");
      } else if (parsed > SUPPORTED_VERSION) {
        this.fail(
          "/version",
          RULE_VALUE,
          `unsupported version '${version}'; this implementation supports up to ${SUPPORTED_VERSION}`,
        );
      }
    }
    const mime = this.string(value, "", "mime");
    if (mime !== null && mime !== MIME_TYPE) {
      this.fail("/mime", RULE_VALUE, `mime must be exactly '${MIME_TYPE}'`);
    }
    if ("canvas" in value) {
      if (isDict(value.canvas)) {
        this.canvas(value.canvas, "/canvas");
      } else {
        this.fail("/canvas", RULE_TYPE, "'canvas' must be an object");
      }
    }
  }

  private canvas(obj: Dict, path: string): void {
    this.keys(
      obj,
      path,
      ["id", "title", "width", "height", "zoomToFit", "menus", "messages"],
      ["graph", "chart"],
    );
    this.registerId(obj, path);
    this.string(obj, path, "title", true);
    this.integer(obj, path, "width", true);
    this.integer(obj, path, "height", true);
    this.boolean(obj, path, "zoomToFit");
    this.collection(obj, path, "menus", (item, p) => this.menu(item, p, 1));
    this.collection(obj, path, "messages", (item, p) => this.message(item, p));
    if ("graph" in obj && "chart" in obj) {
      this.fail(path, RULE_VALUE, "canvas holds at most one of 'graph' or 'chart'");
    }
    if ("graph" in obj) {
      if (isDict(obj.graph)) {
        this.graph(obj.graph, `${path}/graph`);
      } else {
        this.fail(`${path}/graph`, RULE_TYPE, "'graph' must be an object");
      }
    }
    if ("chart" in obj) {
      if (isDict(obj.chart)) {
        this.chart(obj.chart, `${path}/chart`);
      } else {
        this.fail(`${path}/chart`, RULE_TYPE, "'chart' must be an object");
      }
    }
  }

  private menu(obj: Dict, path: string, depth: number): void {
    this.keys(obj, path, ["id", "title", "submenus"], ["callback"]);
    if (depth > MENU_DEPTH_LIMIT) {
      this.fail(path, RULE_VALUE, `menu nesting exceeds depth ${MENU_DEPTH_LIMIT}`);
    }
    this.string(obj, path, "title", true);
    if ("callback" in obj) {
      if (isDict(obj.callback)) {
        this.registerId(obj.callback, `${path}/callback`);
        this.callback(obj.callback, `${path}/callback`);
      } else {
        this.fail(`${path}/callback`, RULE_TYPE, "'callback' must be an object");
      }
    }
    this.collection(obj, path, "submenus", (item, p) => this.menu(item, p, depth + 1));
  }

  private message(obj: Dict, path: string): void {
    this.keys(obj, path, ["id", "level", "title", "text"]);
    this.enum(obj, path, "level", LEVELS);
    this.string(obj, path, "title");
    this.string(obj, path, "text");
  }

  private callback(obj: Dict, path: string): void {
    this.keys(obj, path, ["id", "funcName", "trigger", "knownArgs", "requiredArgs"]);
    this.string(obj, path, "funcName", true);
    this.enum(obj, path, "trigger", TRIGGERS);
    if ("knownArgs" in obj) {
      const args = obj.knownArgs;
      if (!Array.isArray(args)) {
        this.fail(`${path}/knownArgs`, RULE_TYPE, "'knownArgs' must be an array");
      } else {
        args.forEach((arg, i) => {
          const scalar =
            typeof arg === "string" || typeof arg === "boolean" || isFiniteNumber(arg);
          if (!scalar) {
            this.fail(
              `${path}/knownArgs/${i}`,
              RULE_TYPE,
              "known args must be scalar strings, numbers or booleans",
            );
          }
        });
      }
    }
    this.collection(obj, path, "requiredArgs", (item, p) => this.requiredArg(item, p));
  }

  private requiredArg(obj: Dict, path: string): void {
    this.keys(obj, path, ["id", "title", "valueKind", "choices"], ["default"]);
    this.string(obj, path, "title");
    const kind = this.enum(obj, path, "valueKind", VALUE_KINDS);
    let choices: string[] | null = null;
    if ("choices" in obj) {
      const raw = obj.choices;
      if (!Array.isArray(raw) || !raw.every((c) => typeof c === "string")) {
        this.fail(`${path}/choices`, RULE_TYPE, "'choices' must be an array of strings");
      } else {
        choices = raw as string[];
      }
    }
    if (kind !== null && choices !== null) {
      if (kind === "select" && choices.length === 0) {
        this.fail(`${path}/choices`, RULE_VALUE, "select args need at least one choice");
      }
      if (kind !== "select" && choices.length > 0) {
        this.fail(
          `${path}/choices`,
          RULE_VALUE,
          `choices are only allowed for select args, not '${kind}'`,
        );
      }
    }
    if ("default" in obj && kind !== null) {
      this.defaultValue(obj.default, kind, choices, `${path}/default`);
    }
  }

  private defaultValue(value: unknown, kind: string, choices: string[] | null, path: string): void {
    if (kind === "text" && typeof value !== "string") {
      this.fail(path, RULE_VALUE, "default for a text arg must be a string");
    } else if (kind === "number" && typeof value !== "number") {
      this.fail(path, RULE_VALUE, "default for a number arg must be a number");
    } else if (kind === "boolean" && typeof value !== "boolean") {
      this.fail(path, RULE_VALUE, "default for a boolean arg must be a boolean");
    } else if (kind === "select") {
      if (typeof value !== "string" || (choices !== null && !choices.includes(value))) {
        this.fail(path, RULE_VALUE, "default for a select arg must be one of its choices");
      }
    }
  }

  private node(obj: Dict, path: string): void {
    this.keys(
      obj,
      path,
      ["id", "shape", "title", "layer", "size", "menus", "messages", "callbacks"],
      ["color", "parent"],
    );
    this.enum(obj, path, "shape", SHAPES);
    this.string(obj, path, "title");
    this.integer(obj, path, "layer");
    this.number(obj, path, "size", true);
    this.string(obj, path, "color");
    this.string(obj, path, "parent", true);
    this.collection(obj, path, "menus", (item, p) => this.menu(item, p, 1));
    this.collection(obj, path, "messages", (item, p) => this.message(item, p));
    this.collection(obj, path, "callbacks", (item, p) => this.callback(item, p));
  }

  private link(obj: Dict, path: string): void {
    this.keys(obj, path, ["id", "source", "target", "weight", "length"], ["color", "title"]);
    this.string(obj, path, "source", true);
    this.string(obj, path, "target", true);
    this.number(obj, path, "weight", true);
    this.number(obj, path, "length", true);
    this.string(obj, path, "color");
    this.string(obj, path, "title");
  }

  private graph(obj: Dict, path: string): void {
    this.keys(obj, path, ["kind", "simulationEnabled", "nodes", "links"]);
    const kind = this.enum(obj, path, "kind", GRAPH_KINDS);
    this.boolean(obj, path, "simulationEnabled");
    const nodes = this.collection(obj, path, "nodes", (item, p) => this.node(item, p));
    const links = this.collection(obj, path, "links", (item, p) => this.link(item, p));
    for (const nodeKey of Object.keys(nodes).sort()) {
      const node = nodes[nodeKey]!;
      const parent = node.parent;
      if (typeof parent !== "string" || parent === "") continue;
      const nodePath = `${path}/nodes/${nodeKey}`;
      if (kind !== null && kind !== "tree") {
        this.fail(`${nodePath}/parent`, RULE_VALUE, "'parent' is only allowed in tree graphs");
      }
      if (!(parent in nodes)) {
        this.fail(
          `${nodePath}/parent`,
          RULE_DANGLING,
          `parent '${parent}' is not a node in this graph`,
        );
      }
    }
    if (kind === "tree") {
      this.checkForest(nodes, path);
    }
    for (const linkKey of Object.keys(links).sort()) {
      const link = links[linkKey]!;
      const linkPath = `${path}/links/${linkKey}`;
      for (const field of ["source", "target"] as const) {
        const endpoint = link[field];
        if (typeof endpoint === "string" && endpoint !== "" && !(endpoint in nodes)) {
          this.fail(
            `${linkPath}/${field}`,
            RULE_DANGLING,
            `${field} '${endpoint}' is not a node in this graph`,
          );
        }
      }
      const source = link.source;
      if (
        typeof source === "string" &&
        source !== "" &&
        source === link.target &&
        kind !== null &&
        kind !== "directed"
      ) {
        this.fail(linkPath, RULE_VALUE, `self-loops are not allowed in ${kind} graphs`);
      }
    }
  }

  private checkForest(nodes: Record<string, Dict>, path: string): void {
    const parents = new Map<string, string>();
    for (const [key, node] of Object.entries(nodes)) {
      if (typeof node.parent === "string" && node.parent in nodes) {
        parents.set(key, node.parent);
      }
    }
    const acyclic = new Set<string>();
    const reported = new Set<string>();
    for (const start of [...parents.keys()].sort()) {
      const trail: string[] = [];
      const seenHere = new Set<string>();
      let current: string | undefined = start;
      let broke = false;
      while (current !== undefined && !acyclic.has(current)) {
        if (seenHere.has(current)) {
          const cycle = trail.slice(trail.indexOf(current));
          if (!cycle.some((n) => reported.has(n))) {
            cycle.forEach((n) => reported.add(n));
            this.fail(path, RULE_VALUE, "tree parents form a cycle: " + [...cycle, current].join(" -> "));
          }
          broke = true;
          break;
        }
        seenHere.add(current);
        trail.push(current);
        current = parents.get(current);
      }
      if (!broke) {
        trail.forEach((n) => acyclic.add(n));
      }
    }
  }

  private chart(obj: Dict, path: string): void {
    this.keys(obj, path, ["kind", "axisX", "axisY", "datasets", "showLegend"]);
    const kind = this.enum(obj, path, "kind", CHART_KINDS);
    this.boolean(obj, path, "showLegend");
    for (const axisKey of ["axisX", "axisY"] as const) {
      if (!(axisKey in obj)) continue;
      const axis = obj[axisKey];
      const axisPath = `${path}/${axisKey}`;
      if (!isDict(axis)) {
        this.fail(axisPath, RULE_TYPE, `'${axisKey}' must be an object`);
        continue;
      }
      this.keys(axis, axisPath, ["title"], ["domain"]);
      this.string(axis, axisPath, "title");
      if ("domain" in axis) {
        this.axisDomain(axis.domain, axisKey, `${axisPath}/domain`);
      }
    }
    if ("datasets" in obj) {
      this.datasets(obj.datasets, kind, `${path}/datasets`);
    }
  }

  private axisDomain(domain: unknown, axisKey: string, path: string): void {
    if (!Array.isArray(domain)) {
      this.fail(path, RULE_TYPE, "'domain' must be an array");
      return;
    }
    if (axisKey === "axisX") {
      domain.forEach((label, i) => {
        if (typeof label !== "string") {
          this.fail(`${path}/${i}`, RULE_TYPE, "x-axis domain entries must be category strings");
        }
      });
      return;
    }
    if (domain.length !== 2) {
      this.fail(path, RULE_VALUE, "y-axis domain must be a [min, max] pair");
      return;
    }
    let ok = true;
    domain.forEach((bound, i) => {
      if (!isFiniteNumber(bound)) {
        this.fail(`${path}/${i}`, RULE_TYPE, "y-axis domain bounds must be finite numbers");
        ok = false;
      }
    });
    if (ok && !((domain[0] as number) < (domain[1] as number))) {
      this.fail(path, RULE_VALUE, "y-axis domain must satisfy min < max");
    }
  }

  private datasets(datasets: unknown, kind: string | null, path: string): void {
    if (!isDict(datasets)) {
      this.fail(path, RULE_TYPE, "'datasets' must be an object");
      return;
    }
    const lengths = new Map<string, number>();
    for (const name of Object.keys(datasets).sort()) {
      const seriesPath = `${path}/${name}`;
      if (name === "") {
        this.fail(seriesPath, RULE_VALUE, "dataset names must not be empty");
      }
      const series = datasets[name];
      if (!Array.isArray(series)) {
        this.fail(seriesPath, RULE_TYPE, "dataset must be an array of numbers");
        continue;
      }
      series.forEach((value, i) => {
        if (typeof value !== "number") {
          this.fail(`${seriesPath}/${i}`, RULE_TYPE, "dataset values must be numbers");
        } else if (!Number.isFinite(value)) {
          this.fail(`${seriesPath}/${i}`, RULE_VALUE, "dataset values must be finite");
        }
      });
      lengths.set(name, series.length);
    }
    if ((kind === "line" || kind === "bar") && new Set(lengths.values()).size > 1) {
      const detail = [...lengths.entries()]
        .sort(([a], [b]) => (a < b ? -1 : 1))
        .map(([name, n]) => `${name}=${n}`)
        .join(", ");
      this.fail(path, RULE_VALUE, `${kind} chart datasets must have equal lengths (${detail})`);
    }
  }
}

/** All callbacks reachable from the canvas (menus, nodes, node menus). */
export function* iterCallbacks(canvas: Canvas): Generator<Callback> {
  function* fromMenu(menu: Menu): Generator<Callback> {
    if (menu.callback) yield menu.callback;
    for (const sub of Object.values(menu.submenus)) yield* fromMenu(sub);
  }
  for (const menu of Object.values(canvas.menus)) yield* fromMenu(menu);
  if (canvas.graph) {
    for (const node of Object.values(canvas.graph.nodes)) {
      for (const cb of Object.values(node.callbacks)) yield cb;
      for (const menu of Object.values(node.menus)) yield* fromMenu(menu);
    }
  }
}

export function findCallback(canvas: Canvas, callbackId: string): Callback | undefined {
  for (const cb of iterCallbacks(canvas)) {
    if (cb.id === callbackId) return cb;
  }
  return undefined;
}
