"""Scope-driven detail windows.

An inset binds a genomic scope to a moveable window. Its content lists one
header per region intersected by the scope (full-region gene count and
phenotypes, even when the scope only clips the region) and, for regions
opened inside the window, the region's gene rows in the embedded label
format. Insets are independent: mutating one never affects another.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import (
    InsetLocked,
    PositionOutOfRange,
    RegionNotInScope,
    UnknownInset,
    UnknownRegion,
    ZeroLengthScope,
)
from .fold import ReadingDirection, gene_label, reading_direction
from .model import GenomeAssembly, Region, Span, markers

DEFAULT_FRAME_WIDTH = 40.0
DEFAULT_FRAME_HEIGHT = 24.0
DEFAULT_FRAME_GAP = 4.0
DEFAULT_FRAME_Y = 30.0  # below the ideogram strip


@dataclass(frozen=True)
class Frame:
    x: float
    y: float
    width: float
    height: float

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("frame width and height must be positive")

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y, "width": self.width, "height": self.height}


@dataclass(frozen=True)
class Scope:
    chromosome_id: str
    interval_bp: Span
    owner_inset: str


@dataclass(frozen=True)
class Inset:
    id: str
    scope: Scope
    frame: Frame
    scroll_offset: int = 0
    locked: bool = False
    open_regions: frozenset[str] = frozenset()

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "chromosome": self.scope.chromosome_id,
            "scope": self.scope.interval_bp.to_json(),
            "frame": self.frame.to_json(),
            "scroll_offset": self.scroll_offset,
            "locked": self.locked,
            "open_regions": sorted(self.open_regions),
        }


def inset_from_json(doc: dict) -> "Inset":
    return Inset(
        id=doc["id"],
        scope=Scope(doc["chromosome"], Span(*doc["scope"]), doc["id"]),
        frame=Frame(**doc["frame"]),
        scroll_offset=doc["scroll_offset"],
        locked=doc["locked"],
        open_regions=frozenset(doc["open_regions"]),
    )


@dataclass(frozen=True)
class RegionHeaderEntry:
    region_name: str
    gene_count: int
    phenotypes: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "type": "header",
            "region": self.region_name,
            "gene_count": self.gene_count,
            "phenotypes": list(self.phenotypes),
        }


@dataclass(frozen=True)
class GeneEntry:
    symbol: str
    label: str
    reading_direction: ReadingDirection
    markers: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "type": "gene",
            "symbol": self.symbol,
            "label": self.label,
            "direction": self.reading_direction.value,
            "markers": list(self.markers),
        }


@dataclass(frozen=True)
class InsetContent:
    inset_id: str
    total_entries: int
    scroll_offset: int
    entries: tuple

    def to_json(self) -> dict:
        return {
            "inset": self.inset_id,
            "total_entries": self.total_entries,
            "scroll_offset": self.scroll_offset,
            "entries": [e.to_json() for e in self.entries],
        }


def _validate_interval(assembly: GenomeAssembly, chromosome_id: str, interval_bp) -> Span:
    chrom = assembly.chromosome(chromosome_id)
    start, end = interval_bp
    if start == end:
        raise ZeroLengthScope(f"scope [{start}, {end}) has zero length")
    if not (0 <= start < end <= chrom.length_bp):
        raise PositionOutOfRange(
            f"scope [{start}, {end}) outside chromosome {chromosome_id} [0, {chrom.length_bp})"
        )
    return Span(start, end)


def _get(session, inset_id: str) -> Inset:
    inset = session.insets.get(inset_id)
    if inset is None:
        raise UnknownInset(f"no inset {inset_id!r} in session {session.id!r}")
    return inset


def create_inset(session, chromosome_id: str, interval_bp, frame: Frame | None = None) -> Inset:
    """New unlocked inset with a fresh id, scroll 0 and no opened regions.
    Without an explicit frame, insets tile left to right below the ideogram."""
    span = _validate_interval(session.assembly, chromosome_id, interval_bp)
    inset_id = session.next_inset_id()
    if frame is None:
        n = len(session.insets)
        frame = Frame(
            x=n * (DEFAULT_FRAME_WIDTH + DEFAULT_FRAME_GAP),
            y=DEFAULT_FRAME_Y,
            width=DEFAULT_FRAME_WIDTH,
            height=DEFAULT_FRAME_HEIGHT,
        )
    inset = Inset(id=inset_id, scope=Scope(chromosome_id, span, inset_id), frame=frame)
    session.insets[inset_id] = inset
    return inset


def set_scope(session, inset_id: str, interval_bp) -> Inset:
    inset = _get(session, inset_id)
    span = _validate_interval(session.assembly, inset.scope.chromosome_id, interval_bp)
    updated = replace(inset, scope=replace(inset.scope, interval_bp=span))
    session.insets[inset_id] = updated
    return updated


def set_frame(session, inset_id: str, frame: Frame) -> Inset:
    inset = _get(session, inset_id)
    if inset.locked:
        raise InsetLocked(f"inset {inset_id!r} is locked in place")
    updated = replace(inset, frame=frame)
    session.insets[inset_id] = updated
    return updated


def set_locked(session, inset_id: str, flag: bool) -> Inset:
    inset = _get(session, inset_id)
    updated = replace(inset, locked=bool(flag))
    session.insets[inset_id] = updated
    return updated


def scroll(session, inset_id: str, offset: int) -> Inset:
    """Set the first visible entry; clamps into the current content bounds."""
    inset = _get(session, inset_id)
    total = len(content_entries(session.assembly, inset))
    clamped = max(0, min(offset, max(0, total - 1)))
    updated = replace(inset, scroll_offset=clamped)
    session.insets[inset_id] = updated
    return updated


def toggle_region(session, inset_id: str, region_name: str) -> Inset:
    """Expand or collapse a region's gene rows inside this window."""
    inset = _get(session, inset_id)
    chrom = session.assembly.chromosome(inset.scope.chromosome_id)
    region = chrom.region(region_name)
    if region is None:
        raise UnknownRegion(f"no region {region_name!r} on chromosome {chrom.id}")
    if not region.span_bp.intersects(inset.scope.interval_bp):
        raise RegionNotInScope(f"region {region_name!r} does not intersect the inset scope")
    if region_name in inset.open_regions:
        opened = inset.open_regions - {region_name}
    else:
        opened = inset.open_regions | {region_name}
    updated = replace(inset, open_regions=opened)
    session.insets[inset_id] = updated
    return updated


def _gene_entries(assembly: GenomeAssembly, region: Region) -> list[GeneEntry]:
    return [
        GeneEntry(
            symbol=g.symbol,
            label=gene_label(g),
            reading_direction=reading_direction(g),
            markers=tuple(sorted(markers(assembly, g))),
        )
        for g in region.genes
    ]


def content_entries(assembly: GenomeAssembly, inset: Inset) -> list:
    """Full (unpaged) entry list: a header per intersected region in genomic
    order, plus gene rows after each region opened in this window."""
    chrom = assembly.chromosome(inset.scope.chromosome_id)
    entries: list = []
    for region in chrom.regions:
        if not region.span_bp.intersects(inset.scope.interval_bp):
            continue
        entries.append(
            RegionHeaderEntry(
                region_name=region.name,
                gene_count=region.gene_count,
                phenotypes=tuple(sorted(markers(assembly, region))),
            )
        )
        if region.name in inset.open_regions:
            entries.extend(_gene_entries(assembly, region))
    return entries


def inset_content(session, inset_id: str, viewport_rows: int) -> InsetContent:
    """One page of content starting at the inset's scroll offset."""
    if viewport_rows < 1:
        raise ValueError("viewport_rows must be >= 1")
    inset = _get(session, inset_id)
    entries = content_entries(session.assembly, inset)
    start = max(0, min(inset.scroll_offset, max(0, len(entries) - 1)))
    page = tuple(entries[start : start + viewport_rows])
    return InsetContent(
        inset_id=inset_id,
        total_entries=len(entries),
        scroll_offset=start,
        entries=page,
    )
