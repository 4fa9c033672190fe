import type { ApiClient } from "./api.js";
import type { FoldVerb, LayoutJson, LeafJson } from "./types.js";

export interface FoldGesture {
  verb: FoldVerb;
  target: string;
}

/** Mouse mapping for the in-place mode: click opens/closes, a modifier
 * click compresses (or uncompresses a compressed region). */
export function gestureForLeaf(
  leaf: Pick<LeafJson, "kind" | "name" | "region">,
  modifier: boolean,
): FoldGesture {
  if (modifier) {
    if (leaf.kind === "compressed_region") return { verb: "uncompress", target: leaf.name };
    return { verb: "compress", target: leaf.region };
  }
  switch (leaf.kind) {
    case "closed_region":
    case "compressed_region":
      return { verb: "open", target: leaf.name };
    case "closed_subsection":
      return { verb: "open_sub", target: leaf.name };
    case "open_subsection":
      return { verb: "close_sub", target: leaf.name };
  }
}

export function gestureForRegionHeader(region: string, modifier: boolean): FoldGesture {
  return modifier ? { verb: "compress", target: region } : { verb: "close", target: region };
}

export class EmbeddedController {
  constructor(
    private readonly api: ApiClient,
    private readonly sessionId: string,
  ) {}

  /** Click on a leaf; resolves to the refreshed layout. */
  async onLeafClick(layout: LayoutJson, leafName: string, modifier: boolean): Promise<LayoutJson | null> {
    const leaf = layout.leaves.find((l) => l.name === leafName);
    if (!leaf) return null;
    const gesture = gestureForLeaf(leaf, modifier);
    return this.api.fold(this.sessionId, layout.chromosome, gesture.verb, gesture.target);
  }

  async onRegionHeaderClick(layout: LayoutJson, region: string, modifier: boolean): Promise<LayoutJson> {
    const gesture = gestureForRegionHeader(region, modifier);
    return this.api.fold(this.sessionId, layout.chromosome, gesture.verb, gesture.target);
  }
}
