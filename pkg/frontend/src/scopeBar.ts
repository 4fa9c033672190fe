import type { ApiClient } from "./api.js";
import { bpToLayout, layoutToPx, pxToBp, type Camera } from "./geometry.js";
import { BAND_Y, BAND_HEIGHT } from "./ideogram.js";
import type { InsetJson, LayoutJson } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const HANDLE_PX = 6;
const SCOPE_COLORS = ["#E67E22", "#8E44AD", "#16A085", "#C0392B", "#2980B9"];

/** Endpoint drag keeps the interval non-empty and ordered. */
export function draggedInterval(
  scope: [number, number],
  which: "start" | "end",
  bp: number,
): [number, number] {
  const [start, end] = scope;
  if (which === "start") return [Math.min(bp, end - 1), end];
  return [start, Math.max(bp, start + 1)];
}

export interface ScopeOverlayHooks {
  onScopeChanged?: (inset: InsetJson) => void;
}

/** Scope rectangles drawn over the ideogram strip, one per inset, with
 * draggable endpoint handles converting pixels to base pairs. */
export class ScopeOverlay {
  constructor(
    private readonly group: SVGGElement,
    private readonly api: ApiClient,
    private readonly sessionId: string,
    private readonly hooks: ScopeOverlayHooks = {},
  ) {}

  render(layout: LayoutJson, insets: InsetJson[], camera: Camera): void {
    this.group.replaceChildren();
    insets.forEach((inset, index) => {
      if (inset.chromosome !== layout.chromosome) return;
      const color = SCOPE_COLORS[index % SCOPE_COLORS.length];
      const x0 = layoutToPx(bpToLayout(layout, inset.scope[0]), camera);
      const x1 = layoutToPx(bpToLayout(layout, inset.scope[1]), camera);
      const band = document.createElementNS(SVG_NS, "rect");
      setAttrs(band, {
        class: "scope",
        "data-inset": inset.id,
        x: x0,
        y: BAND_Y - 3,
        width: Math.max(1, x1 - x0),
        height: BAND_HEIGHT + 6,
        fill: color,
        "fill-opacity": 0.18,
        stroke: color,
        "stroke-width": 1.2,
      });
      this.group.appendChild(band);
      for (const which of ["start", "end"] as const) {
        const handle = document.createElementNS(SVG_NS, "rect");
        const hx = (which === "start" ? x0 : x1) - HANDLE_PX / 2;
        setAttrs(handle, {
          class: `scope-handle scope-handle-${which}`,
          "data-inset": inset.id,
          "data-which": which,
          x: hx,
          y: BAND_Y - 6,
          width: HANDLE_PX,
          height: BAND_HEIGHT + 12,
          fill: color,
        });
        this.wireHandle(handle, layout, inset, which, camera);
        this.group.appendChild(handle);
      }
    });
  }

  private wireHandle(
    handle: SVGRectElement,
    layout: LayoutJson,
    inset: InsetJson,
    which: "start" | "end",
    camera: Camera,
  ): void {
    let dragging = false;
    handle.addEventListener("pointerdown", (event) => {
      dragging = true;
      handle.setPointerCapture(event.pointerId);
    });
    handle.addEventListener("pointerup", (event) => {
      if (!dragging) return;
      dragging = false;
      void this.releaseHandle(layout, inset, which, event.clientX, camera);
    });
  }

  /** Pointer release: pixel -> bp via the layout map, then PATCH the scope. */
  async releaseHandle(
    layout: LayoutJson,
    inset: InsetJson,
    which: "start" | "end",
    clientX: number,
    camera: Camera,
  ): Promise<InsetJson> {
    const bp = pxToBp(layout, clientX, camera);
    const [start, end] = draggedInterval(inset.scope, which, bp);
    const updated = await this.api.patchInset(this.sessionId, inset.id, {
      scope: { start, end },
    });
    this.hooks.onScopeChanged?.(updated);
    return updated;
  }
}

function setAttrs(el: SVGElement, attrs: Record<string, string | number>): void {
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, String(value));
}
