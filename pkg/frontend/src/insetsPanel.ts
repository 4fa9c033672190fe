import type { ApiClient } from "./api.js";
import type { ContentEntryJson, FrameJson, InsetJson } from "./types.js";

/** Pixels per abstract workspace unit. */
export const WORKSPACE_PX = 8;
export const MIN_FRAME_UNITS = 8;

export function applyDrag(frame: FrameJson, dx: number, dy: number, locked: boolean): FrameJson | null {
  if (locked) return null;
  return { ...frame, x: frame.x + dx, y: frame.y + dy };
}

export function applyResize(frame: FrameJson, dw: number, dh: number): FrameJson {
  return {
    ...frame,
    width: Math.max(MIN_FRAME_UNITS, frame.width + dw),
    height: Math.max(MIN_FRAME_UNITS, frame.height + dh),
  };
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export interface InsetWindowHooks {
  onChanged?: (inset: InsetJson) => void;
  onLockedGesture?: () => void;
  phenotypeColors?: Record<string, string>;
}

/** A moveable, resizable, lockable detail window bound to one inset. */
export class InsetWindow {
  readonly element: HTMLElement;
  inset: InsetJson;
  viewportRows = 8;
  private readonly body: HTMLElement;
  private readonly lockButton: HTMLButtonElement;
  private readonly title: HTMLElement;

  constructor(
    private readonly api: ApiClient,
    private readonly sessionId: string,
    inset: InsetJson,
    private readonly hooks: InsetWindowHooks = {},
  ) {
    this.inset = inset;
    this.element = el("div", "inset-window");
    this.element.dataset.inset = inset.id;

    const header = el("div", "inset-header");
    this.title = el("span", "inset-title");
    this.lockButton = el("button", "inset-lock") as HTMLButtonElement;
    this.lockButton.addEventListener("click", () => void this.toggleLock());
    const scrollUp = el("button", "inset-scroll-up", "▴") as HTMLButtonElement;
    const scrollDown = el("button", "inset-scroll-down", "▾") as HTMLButtonElement;
    scrollUp.addEventListener("click", () => void this.scrollBy(-this.viewportRows));
    scrollDown.addEventListener("click", () => void this.scrollBy(this.viewportRows));
    header.append(this.title, scrollUp, scrollDown, this.lockButton);
    this.body = el("div", "inset-body");
    const resize = el("div", "inset-resize");
    this.wireDrag(header);
    this.wireResize(resize);
    this.element.append(header, this.body, resize);
    this.applyFrame();
  }

  private applyFrame(): void {
    const { x, y, width, height } = this.inset.frame;
    this.element.style.left = `${x * WORKSPACE_PX}px`;
    this.element.style.top = `${y * WORKSPACE_PX}px`;
    this.element.style.width = `${width * WORKSPACE_PX}px`;
    this.element.style.height = `${height * WORKSPACE_PX}px`;
    this.title.textContent = `${this.inset.chromosome}:${this.inset.scope[0]}-${this.inset.scope[1]}`;
    this.lockButton.textContent = this.inset.locked ? "\u{1F512}" : "\u{1F513}";
    this.element.classList.toggle("locked", this.inset.locked);
  }

  private update(inset: InsetJson): void {
    this.inset = inset;
    this.applyFrame();
    this.hooks.onChanged?.(inset);
  }

  /** Drag release in workspace units; locked windows issue no request. */
  async attemptDrag(dxUnits: number, dyUnits: number): Promise<"locked" | InsetJson> {
    const moved = applyDrag(this.inset.frame, dxUnits, dyUnits, this.inset.locked);
    if (moved === null) {
      this.element.classList.add("lock-feedback");
      this.hooks.onLockedGesture?.();
      return "locked";
    }
    const inset = await this.api.patchInset(this.sessionId, this.inset.id, { frame: moved });
    this.update(inset);
    return inset;
  }

  async attemptResize(dwUnits: number, dhUnits: number): Promise<InsetJson> {
    const resized = applyResize(this.inset.frame, dwUnits, dhUnits);
    const inset = await this.api.patchInset(this.sessionId, this.inset.id, { frame: resized });
    this.update(inset);
    return inset;
  }

  async toggleLock(): Promise<InsetJson> {
    const inset = await this.api.patchInset(this.sessionId, this.inset.id, {
      locked: !this.inset.locked,
    });
    this.update(inset);
    return inset;
  }

  async scrollBy(delta: number): Promise<InsetJson> {
    const inset = await this.api.patchInset(this.sessionId, this.inset.id, {
      scroll: this.inset.scroll_offset + delta,
    });
    this.update(inset);
    await this.refreshContent();
    return inset;
  }

  async setScope(start: number, end: number): Promise<InsetJson> {
    const inset = await this.api.patchInset(this.sessionId, this.inset.id, {
      scope: { start, end },
    });
    this.update(inset);
    await this.refreshContent();
    return inset;
  }

  async toggleRegion(region: string): Promise<InsetJson> {
    const inset = await this.api.patchInset(this.sessionId, this.inset.id, {
      toggle_region: region,
    });
    this.update(inset);
    await this.refreshContent();
    return inset;
  }

  async refreshContent(): Promise<void> {
    const content = await this.api.insetContent(this.sessionId, this.inset.id, this.viewportRows);
    this.renderEntries(content.entries);
  }

  renderEntries(entries: ContentEntryJson[]): void {
    this.body.replaceChildren();
    for (const entry of entries) {
      const colors = this.hooks.phenotypeColors ?? {};
      if (entry.type === "header") {
        const row = el("div", "entry entry-header");
        row.dataset.region = entry.region;
        row.textContent = `${entry.region} — ${entry.gene_count} genes`;
        for (const name of entry.phenotypes) {
          const dot = el("span", "phenotype-dot", name);
          if (colors[name]) dot.style.backgroundColor = colors[name];
          row.appendChild(dot);
        }
        row.addEventListener("click", () => void this.toggleRegion(entry.region));
        this.body.appendChild(row);
      } else {
        const row = el("div", `entry entry-gene direction-${entry.direction}`);
        row.dataset.symbol = entry.symbol;
        row.textContent = (entry.direction === "bottom_up" ? "▲ " : "▼ ") + entry.label;
        for (const name of entry.markers) {
          const dot = el("span", "phenotype-dot", name);
          if (colors[name]) dot.style.backgroundColor = colors[name];
          row.appendChild(dot);
        }
        this.body.appendChild(row);
      }
    }
  }

  private wireDrag(handle: HTMLElement): void {
    let startX = 0;
    let startY = 0;
    let dragging = false;
    handle.addEventListener("pointerdown", (event) => {
      if ((event.target as HTMLElement).tagName === "BUTTON") return;
      dragging = true;
      startX = event.clientX;
      startY = event.clientY;
      handle.setPointerCapture(event.pointerId);
    });
    handle.addEventListener("pointermove", (event) => {
      if (!dragging || this.inset.locked) return;
      this.element.style.transform = `translate(${event.clientX - startX}px, ${event.clientY - startY}px)`;
    });
    handle.addEventListener("pointerup", (event) => {
      if (!dragging) return;
      dragging = false;
      this.element.style.transform = "";
      const dx = (event.clientX - startX) / WORKSPACE_PX;
      const dy = (event.clientY - startY) / WORKSPACE_PX;
      if (dx !== 0 || dy !== 0) void this.attemptDrag(dx, dy);
    });
  }

  private wireResize(handle: HTMLElement): void {
    let startX = 0;
    let startY = 0;
    let resizing = false;
    handle.addEventListener("pointerdown", (event) => {
      resizing = true;
      startX = event.clientX;
      startY = event.clientY;
      handle.setPointerCapture(event.pointerId);
    });
    handle.addEventListener("pointerup", (event) => {
      if (!resizing) return;
      resizing = false;
      const dw = (event.clientX - startX) / WORKSPACE_PX;
      const dh = (event.clientY - startY) / WORKSPACE_PX;
      if (dw !== 0 || dh !== 0) void this.attemptResize(dw, dh);
    });
  }
}
