import { layoutToPx, type Camera } from "./geometry.js";
import type { LayoutJson, LeafJson } from "./types.js";

export const STAIN_FILL: Record<string, string> = {
  gneg: "#FFFFFF",
  gpos25: "#C8C8C8",
  gpos50: "#969696",
  gpos75: "#646464",
  gpos100: "#323232",
  acen: "#C0392B",
  gvar: "#DDE3F0",
  stalk: "#7D96B4",
};

export const BIN_FILL = ["#F4F4F4", "#D4E6D4", "#A8CFA8", "#77B377", "#419441", "#1B691B"];

export const MARKER_Y = 8;
export const MARKER_SIZE = 8;
export const BAR_Y = 22;
export const BAR_HEIGHT = 8;
export const HEADER_Y = 32;
export const HEADER_HEIGHT = 5;
export const BAND_Y = 39;
export const BAND_HEIGHT = 26;
export const LABEL_Y = 78;
export const ROWS_Y = 88;
export const ROW_HEIGHT = 13;

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderOptions {
  camera: Camera;
  phenotypeColors: Record<string, string>;
}

function svgEl(tag: string, attrs: Record<string, string | number>): SVGElement {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  return el;
}

function leafWidthPx(leaf: LeafJson, camera: Camera): number {
  return (leaf.layout[1] - leaf.layout[0]) * camera.scale;
}

interface RegionExtent {
  region: string;
  lo: number;
  hi: number;
  countBin: number;
  open: boolean;
}

function regionExtents(layout: LayoutJson): RegionExtent[] {
  const out: RegionExtent[] = [];
  const index = new Map<string, RegionExtent>();
  for (const leaf of layout.leaves) {
    const isSubsection = leaf.kind === "closed_subsection" || leaf.kind === "open_subsection";
    let extent = index.get(leaf.region);
    if (!extent) {
      extent = {
        region: leaf.region,
        lo: leaf.layout[0],
        hi: leaf.layout[1],
        countBin: leaf.region_count_bin,
        open: isSubsection,
      };
      index.set(leaf.region, extent);
      out.push(extent);
    } else {
      extent.lo = Math.min(extent.lo, leaf.layout[0]);
      extent.hi = Math.max(extent.hi, leaf.layout[1]);
      extent.open = extent.open || isSubsection;
    }
  }
  return out;
}

/** Redraws the whole scene from an authoritative layout document. */
export function renderIdeogram(root: SVGSVGElement, layout: LayoutJson, opts: RenderOptions): void {
  const { camera, phenotypeColors } = opts;
  while (root.firstChild) root.removeChild(root.firstChild);

  let maxRows = 0;
  for (const leaf of layout.leaves) {
    if (leaf.kind === "open_subsection") {
      maxRows = Math.max(maxRows, Math.max(1, leaf.gene_count));
    }
  }
  root.setAttribute("height", String(ROWS_Y + maxRows * ROW_HEIGHT + 12));

  // six-level gene-count bar, one segment per region
  for (const extent of regionExtents(layout)) {
    root.appendChild(
      svgEl("rect", {
        class: "count-bar",
        "data-region": extent.region,
        "data-bin": extent.countBin,
        x: layoutToPx(extent.lo, camera),
        y: BAR_Y,
        width: (extent.hi - extent.lo) * camera.scale,
        height: BAR_HEIGHT,
        fill: BIN_FILL[extent.countBin],
        stroke: "#555",
        "stroke-width": 0.4,
      }),
    );
    if (extent.open) {
      // clickable strip for closing an opened region
      root.appendChild(
        svgEl("rect", {
          class: "region-header",
          "data-click": "region-header",
          "data-region": extent.region,
          x: layoutToPx(extent.lo, camera),
          y: HEADER_Y,
          width: (extent.hi - extent.lo) * camera.scale,
          height: HEADER_HEIGHT,
          fill: "#2C5AA0",
        }),
      );
    }
  }

  for (const leaf of layout.leaves) {
    const x = layoutToPx(leaf.layout[0], camera);
    const width = leafWidthPx(leaf, camera);
    root.appendChild(
      svgEl("rect", {
        class: `band band-${leaf.kind}`,
        "data-click": "leaf",
        "data-name": leaf.name,
        "data-kind": leaf.kind,
        x,
        y: BAND_Y,
        width,
        height: BAND_HEIGHT,
        fill: STAIN_FILL[leaf.stain] ?? "#FFFFFF",
        stroke: "#000",
        "stroke-width": 0.6,
      }),
    );
    if (leaf.kind === "compressed_region") {
      for (const k of [0.25, 0.5, 0.75]) {
        root.appendChild(
          svgEl("line", {
            class: "fold-glyph",
            x1: x + width * k - 2,
            y1: BAND_Y,
            x2: x + width * k + 2,
            y2: BAND_Y + BAND_HEIGHT,
            stroke: "#EEE",
            "stroke-width": 1.2,
          }),
        );
      }
    }
    leaf.markers.forEach((name, i) => {
      root.appendChild(
        svgEl("rect", {
          class: "marker",
          "data-node": leaf.name,
          "data-phenotype": name,
          x: x + i * (MARKER_SIZE + 2),
          y: MARKER_Y,
          width: MARKER_SIZE,
          height: MARKER_SIZE,
          fill: phenotypeColors[name] ?? "#888",
          stroke: "#000",
          "stroke-width": 0.4,
        }),
      );
    });
    const label = svgEl("text", {
      class: "leaf-label",
      x: x + 1,
      y: LABEL_Y,
      "font-size": 7,
    });
    label.textContent = leaf.name;
    root.appendChild(label);

    if (leaf.kind === "open_subsection" && leaf.gene_rows) {
      leaf.gene_rows.forEach((row, i) => {
        const rowY = ROWS_Y + i * ROW_HEIGHT;
        const points =
          row.direction === "bottom_up"
            ? `${x + 3},${rowY + 9} ${x + 7},${rowY + 9} ${x + 5},${rowY + 2}`
            : `${x + 3},${rowY + 2} ${x + 7},${rowY + 2} ${x + 5},${rowY + 9}`;
        root.appendChild(
          svgEl("polygon", { class: `direction-${row.direction}`, points, fill: "#222" }),
        );
        const text = svgEl("text", {
          class: "gene-row",
          "data-symbol": row.symbol,
          x: x + 10,
          y: rowY + 9,
          "font-size": 8,
        });
        text.textContent = row.label;
        root.appendChild(text);
        row.markers.forEach((name, j) => {
          root.appendChild(
            svgEl("rect", {
              class: "marker gene-marker",
              "data-node": row.symbol,
              "data-phenotype": name,
              x: x + width - (j + 1) * (MARKER_SIZE + 2),
              y: rowY + 1,
              width: MARKER_SIZE,
              height: MARKER_SIZE,
              fill: phenotypeColors[name] ?? "#888",
              stroke: "#000",
              "stroke-width": 0.4,
            }),
          );
        });
      });
    }
  }
}
