"""Static SVG snapshot of one chromosome's current layout.

Band rectangles are shaded by stain, a six-level gene-count bar sits above
each region, phenotype marker squares sit above every node that carries at
least one marker, and open subsections list their gene rows with
reading-direction arrows. All x coordinates are affine images of layout
positions, so element order matches genomic order for every fold state.
Output is deterministic: identical inputs give identical bytes.
"""
from __future__ import annotations

from xml.sax.saxutils import escape

from .fold import FoldState, LeafKind, build_layout, gene_row_views, ReadingDirection
from .model import GenomeAssembly, markers

STAIN_FILL = {
    "gneg": "#FFFFFF",
    "gpos25": "#C8C8C8",
    "gpos50": "#969696",
    "gpos75": "#646464",
    "gpos100": "#323232",
    "acen": "#C0392B",
    "gvar": "#DDE3F0",
    "stalk": "#7D96B4",
}

BIN_FILL = ["#F4F4F4", "#D4E6D4", "#A8CFA8", "#77B377", "#419441", "#1B691B"]

MARGIN = 12.0
MARKER_Y = 8.0
MARKER_SIZE = 8.0
BAR_Y = 22.0
BAR_HEIGHT = 8.0
BAND_Y = 34.0
BAND_HEIGHT = 26.0
LABEL_Y = 72.0
ROWS_Y = 82.0
ROW_HEIGHT = 13.0


def _f(value: float) -> str:
    return f"{value:.2f}"


def render_svg(assembly: GenomeAssembly, state: FoldState, *, px_per_unit: float = 14.0) -> str:
    """Render the chromosome named by the fold state at its current layout."""
    layout = build_layout(assembly, state)
    chromosome = assembly.chromosome(state.chromosome_id)
    node_index = {}
    region_of_leaf = {}
    for region in chromosome.regions:
        node_index[region.name] = region
        region_of_leaf[region.name] = region.name
        for sub in region.subsections:
            node_index[sub.name] = sub
            region_of_leaf[sub.name] = region.name

    def x(pos: float) -> float:
        return MARGIN + pos * px_per_unit

    max_rows = 1
    for leaf in layout.leaves:
        if leaf.kind is LeafKind.OPEN_SUBSECTION:
            max_rows = max(max_rows, max(1, node_index[leaf.name].gene_count))
    width = 2 * MARGIN + layout.total_length * px_per_unit
    height = ROWS_Y + max_rows * ROW_HEIGHT + MARGIN

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>\n',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">\n',
        f'<title>chromosome {escape(chromosome.id)}</title>\n',
    ]

    # Gene-count bar: one segment per region, spanning the region's leaves.
    region_extent: dict[str, list[float]] = {}
    for leaf in layout.leaves:
        rname = region_of_leaf[leaf.name]
        extent = region_extent.setdefault(rname, [leaf.layout_start, leaf.layout_end])
        extent[0] = min(extent[0], leaf.layout_start)
        extent[1] = max(extent[1], leaf.layout_end)
    for region in chromosome.regions:
        lo, hi = region_extent[region.name]
        parts.append(
            f'<rect class="count-bar" data-region="{escape(region.name)}" '
            f'data-bin="{region.count_bin}" x="{_f(x(lo))}" y="{_f(BAR_Y)}" '
            f'width="{_f((hi - lo) * px_per_unit)}" height="{_f(BAR_HEIGHT)}" '
            f'fill="{BIN_FILL[region.count_bin]}" stroke="#555555" stroke-width="0.4"/>\n'
        )

    phenotype_color = {p.name: p.color for p in assembly.phenotypes}
    for leaf in layout.leaves:
        node = node_index[leaf.name]
        left = x(leaf.layout_start)
        leaf_width = leaf.layout_length * px_per_unit
        if leaf.kind in (LeafKind.CLOSED_REGION, LeafKind.COMPRESSED_REGION):
            fill = STAIN_FILL[node.stain]
        else:
            fill = STAIN_FILL[node_index[region_of_leaf[leaf.name]].stain]
        parts.append(
            f'<rect class="band band-{leaf.kind.value}" data-name="{escape(leaf.name)}" '
            f'x="{_f(left)}" y="{_f(BAND_Y)}" width="{_f(leaf_width)}" '
            f'height="{_f(BAND_HEIGHT)}" fill="{fill}" stroke="#000000" stroke-width="0.6"/>\n'
        )
        if leaf.kind is LeafKind.COMPRESSED_REGION:
            # fold glyph: slanted pleat lines over the compressed band
            for k in (0.25, 0.5, 0.75):
                gx = left + leaf_width * k
                parts.append(
                    f'<line class="fold-glyph" x1="{_f(gx - 2)}" y1="{_f(BAND_Y)}" '
                    f'x2="{_f(gx + 2)}" y2="{_f(BAND_Y + BAND_HEIGHT)}" '
                    f'stroke="#EEEEEE" stroke-width="1.2"/>\n'
                )
        leaf_markers = sorted(markers(assembly, node))
        for i, name in enumerate(leaf_markers):
            parts.append(
                f'<rect class="marker" data-node="{escape(leaf.name)}" '
                f'data-phenotype="{escape(name)}" x="{_f(left + i * (MARKER_SIZE + 2))}" '
                f'y="{_f(MARKER_Y)}" width="{_f(MARKER_SIZE)}" height="{_f(MARKER_SIZE)}" '
                f'fill="{phenotype_color[name]}" stroke="#000000" stroke-width="0.4"/>\n'
            )
        parts.append(
            f'<text class="leaf-label" x="{_f(left + 1)}" y="{_f(LABEL_Y)}" '
            f'font-size="7" font-family="sans-serif">{escape(leaf.name)}</text>\n'
        )
        if leaf.kind is LeafKind.OPEN_SUBSECTION:
            for row in gene_row_views(assembly, node.genes):
                row_y = ROWS_Y + row.row_index * ROW_HEIGHT
                if row.reading_direction is ReadingDirection.BOTTOM_UP:
                    arrow = f"{_f(left + 3)},{_f(row_y + 9)} {_f(left + 7)},{_f(row_y + 9)} {_f(left + 5)},{_f(row_y + 2)}"
                else:
                    arrow = f"{_f(left + 3)},{_f(row_y + 2)} {_f(left + 7)},{_f(row_y + 2)} {_f(left + 5)},{_f(row_y + 9)}"
                parts.append(
                    f'<polygon class="direction-{row.reading_direction.value}" points="{arrow}" '
                    f'fill="#222222"/>\n'
                )
                parts.append(
                    f'<text class="gene-row" data-symbol="{escape(row.gene.symbol)}" '
                    f'x="{_f(left + 10)}" y="{_f(row_y + 9)}" font-size="8" '
                    f'font-family="monospace">{escape(row.label)}</text>\n'
                )
                for i, name in enumerate(sorted(row.markers)):
                    parts.append(
                        f'<rect class="marker gene-marker" data-node="{escape(row.gene.symbol)}" '
                        f'data-phenotype="{escape(name)}" '
                        f'x="{_f(left + leaf_width - (i + 1) * (MARKER_SIZE + 2))}" '
                        f'y="{_f(row_y + 1)}" width="{_f(MARKER_SIZE)}" height="{_f(MARKER_SIZE)}" '
                        f'fill="{phenotype_color[name]}" stroke="#000000" stroke-width="0.4"/>\n'
                    )

    parts.append("</svg>\n")
    return "".join(parts)
