// The live view: owns the DOM under one root element, applies inbound
// frames, and turns user gestures into outbound trigger frames. All gesture
// handling funnels through public methods (selectNode, openContextMenu,
// chooseMenu, …) so tests can drive the component without synthesizing
// pointer event streams.

import { select } from "d3-selection";
import { zoom, zoomIdentity, type ZoomTransform } from "d3-zoom";

import {
  MIME_TYPE,
  checkDocument,
  findCallback,
  type Callback,
  type FrancyDocument,
  type Menu,
  type Message,
  type Scalar,
} from "./document";
import { parseFrame, triggerFrame, type Frame } from "./frames";
import { LayoutEngine } from "./layout";
import { ModalState } from "./modal";
import { buildScene, type Scene } from "./scene";
import { drawScene, updatePositions, type SceneHooks } from "./svg";

export interface RendererOptions {
  /** Outbound transport; wired to the websocket by the client module. */
  sendFrame?: (text: string) => void;
}

export class Renderer {
  readonly root: HTMLElement;
  sendFrame: (text: string) => void;

  private readonly layout = new LayoutEngine();
  private readonly selection = new Set<string>();
  private readonly dismissed = new Set<string>();
  private doc: FrancyDocument | null = null;
  private scene: Scene | null = null;
  private modal: ModalState | null = null;
  private zoomTransform: ZoomTransform = zoomIdentity;

  private readonly titleEl: HTMLElement;
  private readonly menubarEl: HTMLElement;
  private readonly svgEl: SVGSVGElement;
  private readonly messagesEl: HTMLElement;
  private readonly bannerEl: HTMLElement;
  private readonly contextEl: HTMLElement;
  private readonly modalEl: HTMLElement;

  constructor(root: HTMLElement, options: RendererOptions = {}) {
    this.root = root;
    this.sendFrame = options.sendFrame ?? (() => undefined);
    root.classList.add("fr-root");
    root.innerHTML = `
      <header class="fr-titlebar">
        <span class="fr-title"></span>
        <nav class="fr-menubar"></nav>
      </header>
      <div class="fr-banner" hidden></div>
      <div class="fr-stage">
        <div class="fr-viewport"></div>
        <aside class="fr-messages"></aside>
      </div>
      <div class="fr-contextmenu" hidden></div>
      <div class="fr-modal-host" hidden></div>
    `;
    this.titleEl = root.querySelector(".fr-title")!;
    this.menubarEl = root.querySelector(".fr-menubar")!;
    this.messagesEl = root.querySelector(".fr-messages")!;
    this.bannerEl = root.querySelector(".fr-banner")!;
    this.contextEl = root.querySelector(".fr-contextmenu")!;
    this.modalEl = root.querySelector(".fr-modal-host")!;

    const viewport = root.querySelector(".fr-viewport")!;
    this.svgEl = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.svgEl.setAttribute("class", "fr-canvas");
    viewport.appendChild(this.svgEl);

    const zoomBehavior = zoom<SVGSVGElement, unknown>()
      .scaleExtent([0.2, 8])
      .on("zoom", (event) => {
        this.zoomTransform = event.transform;
        this.applyZoomTransform();
      });
    select(this.svgEl).call(zoomBehavior);
  }

  get document(): FrancyDocument | null {
    return this.doc;
  }

  get currentScene(): Scene | null {
    return this.scene;
  }

  get selectedIds(): ReadonlySet<string> {
    return this.selection;
  }

  get modalState(): ModalState | null {
    return this.modal;
  }

  // -- frame handling --------------------------------------------------------

  applyFrame(text: string): void {
    const parsed = parseFrame(text);
    if (!parsed.ok) {
      this.showBanner("bad frame", parsed.why, "error");
      return;
    }
    this.applyParsedFrame(parsed.frame);
  }

  applyParsedFrame(frame: Frame): void {
    switch (frame.type) {
      case "hello": {
        const version = frame.payload.version;
        const mime = frame.payload.mime;
        if (version !== "1" || mime !== MIME_TYPE) {
          this.showBanner(
            "protocol mismatch",
            `server speaks version ${JSON.stringify(version)} / ${JSON.stringify(mime)}`,
            "error",
          );
        }
        return;
      }
      case "draw": {
        const violations = checkDocument(frame.payload.document);
        if (violations.length > 0) {
          const first = violations[0]!;
          this.showBanner(
            "invalid document",
            `${first.path}: [${first.rule}] ${first.detail}` +
              (violations.length > 1 ? ` (+${violations.length - 1} more)` : ""),
            "error",
          );
          return; // previous view retained
        }
        this.render(frame.payload.document as unknown as FrancyDocument);
        return;
      }
      case "error": {
        const { title, text } = frame.payload as { title?: string; text?: string };
        this.showBanner(title ?? "error", text ?? "", "error");
        return;
      }
      default:
        // trigger frames are client -> server only
        console.warn("renderer: ignoring inbound frame of type", frame.type);
    }
  }

  // -- rendering --------------------------------------------------------------

  render(doc: FrancyDocument): void {
    this.doc = doc;
    this.hideBanner();
    this.closeContextMenu();
    // selection survives only for ids that still exist
    const liveIds = new Set(Object.keys(doc.canvas.graph?.nodes ?? {}));
    for (const id of [...this.selection]) {
      if (!liveIds.has(id)) this.selection.delete(id);
    }
    for (const id of [...this.dismissed]) {
      if (!(id in doc.canvas.messages)) this.dismissed.delete(id);
    }

    this.scene = buildScene(doc, this.layout, this.selection);
    this.titleEl.textContent = this.scene.title;
    this.renderMenubar(this.scene.canvasMenus);
    this.renderMessages(this.scene.messages);
    drawScene(this.svgEl, this.scene, this.hooks);
    this.applyZoomTransform();
  }

  private readonly hooks: SceneHooks = {
    onNodeClick: (id, additive) => this.selectNode(id, additive),
    onNodeContextMenu: (id, x, y) => this.openContextMenu(id, x, y),
    onNodeDragged: (id, x, y) => this.moveNode(id, x, y),
    onBackgroundClick: () => {
      this.clearSelection();
      this.closeContextMenu();
    },
  };

  private applyZoomTransform(): void {
    const layer = this.svgEl.querySelector("g.fr-zoom");
    if (layer) {
      const { x, y, k } = this.zoomTransform;
      layer.setAttribute("transform", `translate(${x},${y}) scale(${k})`);
    }
  }

  private renderMenubar(menus: Menu[]): void {
    this.menubarEl.innerHTML = "";
    for (const menu of menus) {
      this.menubarEl.appendChild(this.menuEntry(menu, 0));
    }
  }

  private menuEntry(menu: Menu, depth: number): HTMLElement {
    const wrap = document.createElement("span");
    wrap.className = "fr-menu";
    const button = document.createElement("button");
    button.className = "fr-menu-entry";
    button.dataset.menuId = menu.id;
    button.dataset.depth = String(depth);
    button.textContent = menu.title;
    button.addEventListener("click", () => this.chooseMenu(menu));
    wrap.appendChild(button);
    for (const key of Object.keys(menu.submenus).sort()) {
      wrap.appendChild(this.menuEntry(menu.submenus[key]!, depth + 1));
    }
    return wrap;
  }

  private renderMessages(messages: Message[]): void {
    this.messagesEl.innerHTML = "";
    for (const message of messages) {
      if (this.dismissed.has(message.id)) continue;
      const entry = document.createElement("div");
      entry.className = `fr-message fr-level-${message.level}`;
      entry.dataset.id = message.id;
      const title = document.createElement("strong");
      title.className = "fr-message-title";
      title.textContent = message.title;
      const text = document.createElement("span");
      text.className = "fr-message-text";
      text.textContent = message.text;
      const dismiss = document.createElement("button");
      dismiss.className = "fr-dismiss";
      dismiss.textContent = "×";
      dismiss.addEventListener("click", () => this.dismissMessage(message.id));
      entry.append(title, text, dismiss);
      this.messagesEl.appendChild(entry);
    }
  }

  showBanner(title: string, text: string, level: string): void {
    this.bannerEl.hidden = false;
    this.bannerEl.className = `fr-banner fr-level-${level}`;
    this.bannerEl.textContent = text ? `${title}: ${text}` : title;
  }

  hideBanner(): void {
    this.bannerEl.hidden = true;
    this.bannerEl.textContent = "";
  }

  // -- selection & movement ----------------------------------------------------

  selectNode(id: string, additive: boolean): void {
    if (!additive) this.selection.clear();
    if (this.selection.has(id)) {
      this.selection.delete(id);
    } else {
      this.selection.add(id);
    }
    this.refreshSelectionClasses();
  }

  clearSelection(): void {
    this.selection.clear();
    this.refreshSelectionClasses();
  }

  private refreshSelectionClasses(): void {
    if (this.scene) {
      for (const node of this.scene.nodes) {
        node.selected = this.selection.has(node.id);
      }
    }
    this.svgEl.querySelectorAll("g.fr-node").forEach((el) => {
      const id = el.getAttribute("data-id") ?? "";
      el.classList.toggle("selected", this.selection.has(id));
    });
  }

  /** Drag handler: move the node, pin it, and re-route its edges. */
  moveNode(id: string, x: number, y: number): void {
    this.layout.pin(id, { x, y });
    if (!this.scene) return;
    for (const node of this.scene.nodes) {
      if (node.id === id) {
        node.x = x;
        node.y = y;
        node.pinned = true;
      }
    }
    for (const edge of this.scene.edges) {
      if (edge.source.id === id) {
        edge.source.x = x;
        edge.source.y = y;
      }
      if (edge.target.id === id) {
        edge.target.x = x;
        edge.target.y = y;
      }
    }
    updatePositions(this.svgEl, this.scene);
  }

  nodePosition(id: string): { x: number; y: number } | undefined {
    return this.layout.position(id);
  }

  // -- menus & triggers ----------------------------------------------------------

  openContextMenu(nodeId: string, clientX: number, clientY: number): void {
    const node = this.scene?.nodes.find((n) => n.id === nodeId);
    if (!node) return;
    const entries: { menu: Menu; depth: number }[] = [];
    const walk = (menu: Menu, depth: number) => {
      entries.push({ menu, depth });
      for (const key of Object.keys(menu.submenus).sort()) {
        walk(menu.submenus[key]!, depth + 1);
      }
    };
    node.menus.forEach((m) => walk(m, 0));

    this.contextEl.innerHTML = "";
    this.contextEl.dataset.nodeId = nodeId;
    if (entries.length === 0) {
      this.contextEl.hidden = true;
      return;
    }
    for (const { menu, depth } of entries) {
      const button = document.createElement("button");
      button.className = "fr-menu-entry";
      button.dataset.menuId = menu.id;
      button.dataset.depth = String(depth);
      button.style.paddingLeft = `${8 + depth * 14}px`;
      button.textContent = menu.title;
      button.addEventListener("click", () => this.chooseMenu(menu));
      this.contextEl.appendChild(button);
    }
    this.contextEl.style.left = `${clientX}px`;
    this.contextEl.style.top = `${clientY}px`;
    this.contextEl.hidden = false;
  }

  closeContextMenu(): void {
    this.contextEl.hidden = true;
    this.contextEl.innerHTML = "";
  }

  /** Menu entry chosen (context menu or top bar). */
  chooseMenu(menu: Menu): void {
    this.closeContextMenu();
    const callback = menu.callback;
    if (!callback) return; // a pure submenu header
    if (Object.keys(callback.requiredArgs).length === 0) {
      this.sendTrigger(callback, {});
    } else {
      this.openModal(callback);
    }
  }

  sendTrigger(callback: Callback, providedArgs: Record<string, Scalar>): void {
    if (!this.doc || findCallback(this.doc.canvas, callback.id) === undefined) {
      // never emit a trigger for a callback the current document doesn't hold
      this.showBanner("stale callback", `${callback.id} is not in the current document`, "warning");
      return;
    }
    this.sendFrame(triggerFrame(callback.id, providedArgs));
  }

  // -- modal ------------------------------------------------------------------

  openModal(callback: Callback): void {
    this.modal = new ModalState(callback);
    this.renderModal();
  }

  cancelModal(): void {
    this.modal = null;
    this.modalEl.hidden = true;
    this.modalEl.innerHTML = "";
  }

  setModalValue(argId: string, raw: Scalar): void {
    if (!this.modal) return;
    this.modal.setValue(argId, raw);
    this.refreshModalValidity();
  }

  submitModal(): boolean {
    if (!this.modal) return false;
    const args = this.modal.providedArgs();
    if (args === null) return false; // gated: some input does not conform
    this.sendTrigger(this.modal.callback, args);
    this.cancelModal();
    return true;
  }

  private renderModal(): void {
    if (!this.modal) return;
    this.modalEl.innerHTML = "";
    this.modalEl.hidden = false;
    const dialog = document.createElement("div");
    dialog.className = "fr-modal";
    const heading = document.createElement("h3");
    heading.textContent = this.modal.callback.funcName;
    dialog.appendChild(heading);

    for (const state of this.modal.args()) {
      const row = document.createElement("label");
      row.className = "fr-modal-row";
      row.dataset.argId = state.arg.id;
      const caption = document.createElement("span");
      caption.textContent = state.arg.title;
      row.appendChild(caption);
      row.appendChild(this.modalInput(state.arg.id, state));
      const hint = document.createElement("em");
      hint.className = "fr-modal-hint";
      row.appendChild(hint);
      dialog.appendChild(row);
    }

    const actions = document.createElement("div");
    actions.className = "fr-modal-actions";
    const cancel = document.createElement("button");
    cancel.className = "fr-modal-cancel";
    cancel.textContent = "Cancel";
    cancel.addEventListener("click", () => this.cancelModal());
    const submit = document.createElement("button");
    submit.className = "fr-modal-submit";
    submit.textContent = "Run";
    submit.addEventListener("click", () => this.submitModal());
    actions.append(cancel, submit);
    dialog.appendChild(actions);
    this.modalEl.appendChild(dialog);
    this.refreshModalValidity();
  }

  private modalInput(argId: string, state: ReturnType<ModalState["args"]>[number]): HTMLElement {
    const { arg, raw } = state;
    if (arg.valueKind === "boolean") {
      const input = document.createElement("input");
      input.type = "checkbox";
      input.className = "fr-modal-input";
      input.checked = raw === true;
      input.addEventListener("change", () => this.setModalValue(argId, input.checked));
      return input;
    }
    if (arg.valueKind === "select") {
      const selectEl = document.createElement("select");
      selectEl.className = "fr-modal-input";
      const blank = document.createElement("option");
      blank.value = "";
      blank.textContent = "— choose —";
      selectEl.appendChild(blank);
      for (const choice of arg.choices) {
        const option = document.createElement("option");
        option.value = choice;
        option.textContent = choice;
        selectEl.appendChild(option);
      }
      selectEl.value = typeof raw === "string" ? raw : "";
      selectEl.addEventListener("change", () => this.setModalValue(argId, selectEl.value));
      return selectEl;
    }
    const input = document.createElement("input");
    input.type = "text";
    input.className = "fr-modal-input";
    input.value = typeof raw === "string" ? raw : String(raw);
    input.addEventListener("input", () => this.setModalValue(argId, input.value));
    return input;
  }

  private refreshModalValidity(): void {
    if (!this.modal) return;
    for (const state of this.modal.args()) {
      const row = this.modalEl.querySelector<HTMLElement>(
        `.fr-modal-row[data-arg-id="${state.arg.id}"]`,
      );
      if (!row) continue;
      const hint = row.querySelector<HTMLElement>(".fr-modal-hint")!;
      row.classList.toggle("invalid", !state.result.ok);
      hint.textContent = state.result.ok ? "" : state.result.reason;
    }
    const submit = this.modalEl.querySelector<HTMLButtonElement>(".fr-modal-submit");
    if (submit) submit.disabled = !this.modal.canSubmit();
  }

  // -- messages ----------------------------------------------------------------

  dismissMessage(id: string): void {
    this.dismissed.add(id);
    this.messagesEl.querySelector(`.fr-message[data-id="${id}"]`)?.remove();
  }
}
