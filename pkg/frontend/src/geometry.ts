import type { LayoutJson, LeafJson } from "./types.js";

export interface Camera {
  panX: number;
  panY: number;
  /** pixels per layout unit */
  scale: number;
}

/** x_pixels = layout position * pixels_per_layout_unit + pan offset, exactly. */
export function layoutToPx(pos: number, camera: Camera): number {
  return pos * camera.scale + camera.panX;
}

export function pxToLayout(px: number, camera: Camera): number {
  return (px - camera.panX) / camera.scale;
}

export function leafAt(layout: LayoutJson, layoutPos: number): LeafJson | null {
  for (const leaf of layout.leaves) {
    if (layoutPos >= leaf.layout[0] && layoutPos < leaf.layout[1]) return leaf;
  }
  if (layoutPos === layout.total_length && layout.leaves.length > 0) {
    return layout.leaves[layout.leaves.length - 1];
  }
  return null;
}

/** Piecewise-linear genomic -> layout transform over the served leaf list. */
export function bpToLayout(layout: LayoutJson, bp: number): number {
  const leaves = layout.leaves;
  if (leaves.length === 0) return 0;
  if (bp >= layout.chromosome_length_bp) return layout.total_length;
  if (bp <= 0) return 0;
  for (const leaf of leaves) {
    if (bp < leaf.genomic[1]) {
      const genomicLength = leaf.genomic[1] - leaf.genomic[0];
      const layoutLength = leaf.layout[1] - leaf.layout[0];
      return leaf.layout[0] + ((bp - leaf.genomic[0]) * layoutLength) / genomicLength;
    }
  }
  return layout.total_length;
}

/** Inverse transform; result clamps into the chromosome and rounds to 1 bp. */
export function layoutToBp(layout: LayoutJson, pos: number): number {
  const leaves = layout.leaves;
  if (leaves.length === 0) return 0;
  if (pos <= 0) return 0;
  if (pos >= layout.total_length) return layout.chromosome_length_bp;
  for (const leaf of leaves) {
    if (pos < leaf.layout[1]) {
      const genomicLength = leaf.genomic[1] - leaf.genomic[0];
      const layoutLength = leaf.layout[1] - leaf.layout[0];
      const bp = leaf.genomic[0] + Math.round(((pos - leaf.layout[0]) * genomicLength) / layoutLength);
      return Math.max(leaf.genomic[0], Math.min(leaf.genomic[1] - 1, bp));
    }
  }
  return layout.chromosome_length_bp;
}

/** Pixel -> genomic position under a camera, for scope endpoint drags. */
export function pxToBp(layout: LayoutJson, px: number, camera: Camera): number {
  return layoutToBp(layout, pxToLayout(px, camera));
}

export function zoomAround(camera: Camera, pivotPx: number, factor: number): Camera {
  const scale = camera.scale * factor;
  // keep the layout position under the pivot pixel fixed
  const pivotLayout = pxToLayout(pivotPx, camera);
  return { panX: pivotPx - pivotLayout * scale, panY: camera.panY, scale };
}

export function panBy(camera: Camera, dx: number, dy: number): Camera {
  return { panX: camera.panX + dx, panY: camera.panY + dy, scale: camera.scale };
}
