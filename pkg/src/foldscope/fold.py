"""Per-chromosome display state and the genomic->layout transform.

A chromosome renders as a strip of leaf segments. Closed regions draw at
base-pair-proportional width, compressed regions shrink by a configurable
factor (with a minimum hit-testable width), and open regions expand into
their subsections; an open subsection's width is driven by its gene row
count so the embedded gene listing fits.

The transform ``to_layout``/``from_layout`` is monotone piecewise-linear.
Display states are immutable values; every mutator returns a new state,
and mutators are idempotent. The three region verbs are memoryless:
opening a compressed region clears the compression, and uncompressing
yields a closed region rather than whatever came before.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field, replace
from enum import Enum

from .errors import (
    ParentNotOpen,
    PositionOutOfRange,
    SubsectionNotOpen,
    UnknownRegion,
    UnknownSubsection,
)
from .model import Chromosome, Gene, GenomeAssembly, Span, Strand, gene_count_bin, markers


class RegionState(str, Enum):
    CLOSED = "closed"
    COMPRESSED = "compressed"
    OPEN = "open"


class LeafKind(str, Enum):
    CLOSED_REGION = "closed_region"
    COMPRESSED_REGION = "compressed_region"
    CLOSED_SUBSECTION = "closed_subsection"
    OPEN_SUBSECTION = "open_subsection"


class ReadingDirection(str, Enum):
    BOTTOM_UP = "bottom_up"
    TOP_DOWN = "top_down"


@dataclass(frozen=True)
class LayoutConfig:
    bp_per_unit: float = 1e6
    compress_factor: float = 10.0
    min_compressed_width: float = 0.5
    min_subsection_width: float = 0.2
    row_height: float = 1.0

    def __post_init__(self):
        for name in ("bp_per_unit", "compress_factor", "min_compressed_width",
                     "min_subsection_width", "row_height"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.compress_factor <= 1:
            raise ValueError("compress_factor must be > 1")


@dataclass(frozen=True)
class FoldState:
    """Normalized display state: only non-default entries are stored, so two
    states that display identically compare equal."""

    chromosome_id: str
    open_regions: frozenset[str] = frozenset()
    compressed_regions: frozenset[str] = frozenset()
    open_subsections: frozenset[str] = frozenset()
    config: LayoutConfig = field(default_factory=LayoutConfig)

    def region_state(self, name: str) -> RegionState:
        if name in self.open_regions:
            return RegionState.OPEN
        if name in self.compressed_regions:
            return RegionState.COMPRESSED
        return RegionState.CLOSED

    def subsection_open(self, name: str) -> bool:
        return name in self.open_subsections

    def to_json(self) -> dict:
        return {
            "chromosome": self.chromosome_id,
            "open_regions": sorted(self.open_regions),
            "compressed_regions": sorted(self.compressed_regions),
            "open_subsections": sorted(self.open_subsections),
        }


def initial_state(chromosome: Chromosome, config: LayoutConfig | None = None) -> FoldState:
    return FoldState(chromosome.id, config=config or LayoutConfig())


def state_from_json(doc: dict, config: LayoutConfig | None = None) -> FoldState:
    return FoldState(
        chromosome_id=doc["chromosome"],
        open_regions=frozenset(doc["open_regions"]),
        compressed_regions=frozenset(doc["compressed_regions"]),
        open_subsections=frozenset(doc["open_subsections"]),
        config=config or LayoutConfig(),
    )


def _require_region(chromosome: Chromosome, name: str):
    region = chromosome.region(name)
    if region is None:
        raise UnknownRegion(f"no region {name!r} on chromosome {chromosome.id}")
    return region


def _require_subsection(chromosome: Chromosome, name: str):
    found = chromosome.subsection(name)
    if found is None:
        raise UnknownSubsection(f"no subsection {name!r} on chromosome {chromosome.id}")
    return found


def _child_names(region) -> frozenset[str]:
    return frozenset(s.name for s in region.subsections)


def open_region(chromosome: Chromosome, state: FoldState, region_name: str) -> FoldState:
    """Open a region; subsections stay as they are if it is already open,
    otherwise they start closed. Clears compression."""
    _require_region(chromosome, region_name)
    if region_name in state.open_regions:
        return state
    return replace(
        state,
        open_regions=state.open_regions | {region_name},
        compressed_regions=state.compressed_regions - {region_name},
    )


def close_region(chromosome: Chromosome, state: FoldState, region_name: str) -> FoldState:
    region = _require_region(chromosome, region_name)
    return replace(
        state,
        open_regions=state.open_regions - {region_name},
        compressed_regions=state.compressed_regions - {region_name},
        open_subsections=state.open_subsections - _child_names(region),
    )


def compress_region(chromosome: Chromosome, state: FoldState, region_name: str) -> FoldState:
    region = _require_region(chromosome, region_name)
    return replace(
        state,
        open_regions=state.open_regions - {region_name},
        compressed_regions=state.compressed_regions | {region_name},
        open_subsections=state.open_subsections - _child_names(region),
    )


def uncompress_region(chromosome: Chromosome, state: FoldState, region_name: str) -> FoldState:
    """Compressed -> closed; anything else is left alone."""
    _require_region(chromosome, region_name)
    return replace(state, compressed_regions=state.compressed_regions - {region_name})


def open_subsection(chromosome: Chromosome, state: FoldState, subsection_name: str) -> FoldState:
    region, _ = _require_subsection(chromosome, subsection_name)
    if region.name not in state.open_regions:
        raise ParentNotOpen(
            f"cannot open subsection {subsection_name!r}: region {region.name!r} is not open"
        )
    return replace(state, open_subsections=state.open_subsections | {subsection_name})


def close_subsection(chromosome: Chromosome, state: FoldState, subsection_name: str) -> FoldState:
    _require_subsection(chromosome, subsection_name)
    return replace(state, open_subsections=state.open_subsections - {subsection_name})


# -- layout --------------------------------------------------------------------

@dataclass(frozen=True)
class LeafSegment:
    kind: LeafKind
    name: str  # region or subsection name
    genomic: Span
    layout_start: float
    layout_length: float

    @property
    def layout_end(self) -> float:
        return self.layout_start + self.layout_length


@dataclass(frozen=True)
class LayoutMap:
    chromosome_id: str
    leaves: tuple[LeafSegment, ...]
    total_length: float
    config: LayoutConfig
    uniform_scale: bool  # every leaf is exactly bp-proportional
    genomic_starts: tuple[int, ...]
    layout_starts: tuple[float, ...]

    @property
    def chromosome_length_bp(self) -> int:
        return self.leaves[-1].genomic.end


def build_layout(assembly: GenomeAssembly, state: FoldState) -> LayoutMap:
    """Materialize the fold state as an ordered list of leaf segments.

    Leaf widths in layout units: closed region g/bp_per_unit; compressed
    region max(min_compressed_width, g/(bp_per_unit*K)); closed subsection
    max(min_subsection_width, g/bp_per_unit); open subsection
    row_height*max(1, gene_count). Layout spans tile [0, total_length) in
    genomic order.
    """
    chromosome = assembly.chromosome(state.chromosome_id)
    cfg = state.config
    leaves: list[LeafSegment] = []
    cursor = 0.0
    uniform = True
    for region in chromosome.regions:
        region_state = state.region_state(region.name)
        if region_state is RegionState.CLOSED:
            length = region.span_bp.length / cfg.bp_per_unit
            leaves.append(LeafSegment(LeafKind.CLOSED_REGION, region.name, region.span_bp, cursor, length))
            cursor += length
        elif region_state is RegionState.COMPRESSED:
            raw = region.span_bp.length / (cfg.bp_per_unit * cfg.compress_factor)
            length = max(cfg.min_compressed_width, raw)
            uniform = False
            leaves.append(LeafSegment(LeafKind.COMPRESSED_REGION, region.name, region.span_bp, cursor, length))
            cursor += length
        else:
            for sub in region.subsections:
                if state.subsection_open(sub.name):
                    length = cfg.row_height * max(1, sub.gene_count)
                    kind = LeafKind.OPEN_SUBSECTION
                    uniform = False
                else:
                    raw = sub.span_bp.length / cfg.bp_per_unit
                    length = max(cfg.min_subsection_width, raw)
                    kind = LeafKind.CLOSED_SUBSECTION
                    if length != raw:
                        uniform = False
                leaves.append(LeafSegment(kind, sub.name, sub.span_bp, cursor, length))
                cursor += length
    return LayoutMap(
        chromosome_id=chromosome.id,
        leaves=tuple(leaves),
        total_length=cursor,
        config=cfg,
        uniform_scale=uniform,
        genomic_starts=tuple(leaf.genomic.start for leaf in leaves),
        layout_starts=tuple(leaf.layout_start for leaf in leaves),
    )


def to_layout(layout: LayoutMap, position_bp: int) -> float:
    """Map a genomic position to layout units (monotone non-decreasing).

    The domain is the closed interval [0, chromosome length]; the right
    endpoint maps to total_length so that interval ends can be converted.
    With nothing open or compressed the map is exactly position/bp_per_unit.
    """
    length = layout.chromosome_length_bp
    if not 0 <= position_bp <= length:
        raise PositionOutOfRange(f"position {position_bp} outside [0, {length}]")
    if layout.uniform_scale:
        return position_bp / layout.config.bp_per_unit
    if position_bp == length:
        return layout.total_length
    leaf = layout.leaves[bisect_right(layout.genomic_starts, position_bp) - 1]
    frac_num = position_bp - leaf.genomic.start
    return leaf.layout_start + frac_num * (leaf.layout_length / leaf.genomic.length)


def from_layout(layout: LayoutMap, layout_pos: float) -> int:
    """Inverse transform, exact to within 1 bp inside any leaf."""
    # Tolerate a few ulps past the end: to_layout computes the right endpoint
    # on a different float path than the total_length accumulation.
    slack = 1e-9 * max(1.0, layout.total_length)
    if not 0 <= layout_pos <= layout.total_length + slack:
        raise PositionOutOfRange(f"layout position {layout_pos} outside [0, {layout.total_length}]")
    length = layout.chromosome_length_bp
    if layout.uniform_scale:
        return min(length, round(layout_pos * layout.config.bp_per_unit))
    if layout_pos >= layout.total_length:
        return length
    leaf = layout.leaves[bisect_right(layout.layout_starts, layout_pos) - 1]
    frac = (layout_pos - leaf.layout_start) / leaf.layout_length
    position = leaf.genomic.start + round(frac * leaf.genomic.length)
    return max(leaf.genomic.start, min(leaf.genomic.end - 1, position))


# -- embedded gene rows ----------------------------------------------------------

@dataclass(frozen=True)
class GeneRowView:
    label: str
    reading_direction: ReadingDirection
    row_index: int
    gene: Gene
    markers: frozenset[str]


def gene_label(gene: Gene) -> str:
    """Display label: plus-strand genes lead with their (1-based) start,
    minus-strand genes lead with the symbol."""
    start_1based = gene.start_bp + 1
    if gene.strand is Strand.PLUS:
        return f"{start_1based} {gene.symbol}"
    return f"{gene.symbol} {start_1based}"


def reading_direction(gene: Gene) -> ReadingDirection:
    return ReadingDirection.BOTTOM_UP if gene.strand is Strand.PLUS else ReadingDirection.TOP_DOWN


def gene_row_views(assembly: GenomeAssembly, genes) -> list[GeneRowView]:
    return [
        GeneRowView(gene_label(g), reading_direction(g), i, g, frozenset(markers(assembly, g)))
        for i, g in enumerate(genes)
    ]


def embedded_gene_rows(
    assembly: GenomeAssembly, state: FoldState, subsection_name: str
) -> list[GeneRowView]:
    """Gene rows revealed by an open subsection, in start order."""
    chromosome = assembly.chromosome(state.chromosome_id)
    _, sub = _require_subsection(chromosome, subsection_name)
    if not state.subsection_open(subsection_name):
        raise SubsectionNotOpen(f"subsection {subsection_name!r} is not open")
    return gene_row_views(assembly, sub.genes)


# -- serialization ---------------------------------------------------------------

def layout_to_json(assembly: GenomeAssembly, state: FoldState, layout: LayoutMap) -> dict:
    """Leaf list for the UI and the SVG exporter: kind, spans, marker sets,
    and gene rows for open subsections."""
    chromosome = assembly.chromosome(state.chromosome_id)
    node_index = {}
    region_index = {}
    for region in chromosome.regions:
        node_index[region.name] = region
        region_index[region.name] = region
        for sub in region.subsections:
            node_index[sub.name] = sub
            region_index[sub.name] = region
    leaves = []
    for leaf in layout.leaves:
        node = node_index[leaf.name]
        region = region_index[leaf.name]
        entry = {
            "kind": leaf.kind.value,
            "name": leaf.name,
            "genomic": leaf.genomic.to_json(),
            "layout": [leaf.layout_start, leaf.layout_end],
            "markers": sorted(markers(assembly, node)),
            "gene_count": node.gene_count,
            "count_bin": gene_count_bin(assembly, node.gene_count),
            "stain": region.stain,
            "region": region.name,
            "region_gene_count": region.gene_count,
            "region_count_bin": gene_count_bin(assembly, region.gene_count),
        }
        if leaf.kind is LeafKind.OPEN_SUBSECTION:
            entry["gene_rows"] = [
                {
                    "label": row.label,
                    "direction": row.reading_direction.value,
                    "symbol": row.gene.symbol,
                    "markers": sorted(row.markers),
                }
                for row in gene_row_views(assembly, node.genes)
            ]
        leaves.append(entry)
    return {
        "chromosome": layout.chromosome_id,
        "total_length": layout.total_length,
        "chromosome_length_bp": layout.chromosome_length_bp,
        "leaves": leaves,
    }
