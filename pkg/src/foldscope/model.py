"""Immutable genome assembly model.

A built assembly is a chromosome -> region -> subsection hierarchy with
genes attached to the subsection whose span contains their starting base
pair. Regions are major cytogenetic bands (band name up to the dot); the
sub-band rows of the input become subsections. Regions that come as a
single undivided band row get synthetic subsections of at most
``max_synthetic_subsection_bp`` named ``<region>.s1``, ``<region>.s2``, ...

Everything here is a plain value: building twice from the same inputs
yields assemblies with identical canonical JSON, and a built assembly is
safe to share across threads.
"""
from __future__ import annotations

import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import (
    GeneOutsideChromosome,
    MalformedBands,
    PositionOutOfRange,
    UnknownChromosome,
    UnknownGeneSymbol,
    UnknownPhenotype,
)
from .ingest import CytobandRow, GeneRow, PhenotypeRow, chromosome_sort_key


class Strand(str, Enum):
    PLUS = "+"
    MINUS = "-"


@dataclass(frozen=True)
class Span:
    """Half-open interval [start, end) in 0-based base pairs."""

    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start

    def contains(self, position: int) -> bool:
        return self.start <= position < self.end

    def intersects(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end

    def to_json(self) -> list[int]:
        return [self.start, self.end]


@dataclass(frozen=True)
class Gene:
    symbol: str
    chromosome: str
    start_bp: int
    end_bp: int
    strand: Strand


@dataclass(frozen=True)
class Subsection:
    name: str
    span_bp: Span
    genes: tuple[Gene, ...]  # genes starting in span, ordered by (start, symbol)

    @property
    def gene_count(self) -> int:
        return len(self.genes)


@dataclass(frozen=True)
class Region:
    name: str
    arm: str  # 'p' or 'q'
    span_bp: Span
    stain: str  # bp-dominant stain of the region's band rows
    subsections: tuple[Subsection, ...]
    gene_count: int
    count_bin: int  # 0..5

    @property
    def genes(self) -> tuple[Gene, ...]:
        return tuple(g for s in self.subsections for g in s.genes)


@dataclass(frozen=True)
class Arm:
    name: str  # 'p' or 'q'
    span_bp: Span


@dataclass(frozen=True)
class Chromosome:
    id: str
    length_bp: int
    arms: tuple[Arm, Arm]
    centromere: Span
    regions: tuple[Region, ...]
    genes: tuple[Gene, ...]  # all genes, ordered by (start, symbol)
    gene_starts: tuple[int, ...]  # parallel to genes, for binary search

    @property
    def gene_count(self) -> int:
        return len(self.genes)

    def region(self, name: str) -> Region | None:
        for region in self.regions:
            if region.name == name:
                return region
        return None

    def subsection(self, name: str) -> tuple[Region, Subsection] | None:
        for region in self.regions:
            for sub in region.subsections:
                if sub.name == name:
                    return region, sub
        return None


@dataclass(frozen=True)
class Phenotype:
    name: str
    color: str  # #RRGGBB
    gene_symbols: frozenset[str]


@dataclass(frozen=True)
class ModelConfig:
    assembly_name: str = "assembly"
    max_synthetic_subsection_bp: int = 5_000_000


@dataclass(frozen=True)
class GenomeAssembly:
    name: str
    chromosomes: tuple[Chromosome, ...]
    phenotypes: tuple[Phenotype, ...]
    bin_edges: tuple[int, int, int, int, int]

    def chromosome(self, chromosome_id: str) -> Chromosome:
        for chrom in self.chromosomes:
            if chrom.id == chromosome_id:
                return chrom
        raise UnknownChromosome(f"no chromosome {chromosome_id!r} in assembly {self.name!r}")

    def phenotype(self, name: str) -> Phenotype:
        for phenotype in self.phenotypes:
            if phenotype.name == name:
                return phenotype
        raise UnknownPhenotype(f"no phenotype {name!r} in assembly {self.name!r}")

    @property
    def total_length_bp(self) -> int:
        return sum(c.length_bp for c in self.chromosomes)

    @property
    def gene_count(self) -> int:
        return sum(c.gene_count for c in self.chromosomes)


def region_name_of_band(band_name: str) -> str:
    """Major band name: everything before the first dot."""
    return band_name.split(".", 1)[0]


# -- construction -------------------------------------------------------------

def build_assembly(
    cytobands: Sequence[CytobandRow],
    genes: Sequence[GeneRow],
    phenotypes: Sequence[PhenotypeRow],
    config: ModelConfig = ModelConfig(),
) -> GenomeAssembly:
    """Assemble the chromosome/region/subsection/gene hierarchy.

    Inputs are expected to be parser-validated rows. Each gene is assigned
    to exactly one region and subsection by its starting base pair; region
    gene counts are binned genome-wide into six levels (bin 0 reserved for
    zero-gene regions, bins 1-5 quintiles of the nonzero counts).
    """
    bands_by_chrom: dict[str, list[CytobandRow]] = {}
    for row in cytobands:
        bands_by_chrom.setdefault(row.chromosome, []).append(row)
    for group in bands_by_chrom.values():
        group.sort(key=lambda r: r.start_bp)

    genes_by_chrom: dict[str, list[Gene]] = {c: [] for c in bands_by_chrom}
    for row in genes:
        if row.chromosome not in bands_by_chrom:
            raise UnknownChromosome(
                f"gene {row.symbol!r} references unknown chromosome {row.chromosome!r}"
            )
        length = bands_by_chrom[row.chromosome][-1].end_bp
        if row.start_bp >= length or row.end_bp > length:
            raise GeneOutsideChromosome(
                f"gene {row.symbol!r} at [{row.start_bp}, {row.end_bp}) exceeds "
                f"chromosome {row.chromosome} length {length}"
            )
        genes_by_chrom[row.chromosome].append(
            Gene(row.symbol, row.chromosome, row.start_bp, row.end_bp, Strand(row.strand))
        )
    for gene_list in genes_by_chrom.values():
        gene_list.sort(key=lambda g: (g.start_bp, g.symbol))

    # First pass: structure and raw gene counts, so bins can be genome-wide.
    skeletons = []  # (chrom_id, length, arms, centromere, [region dicts])
    all_counts: list[int] = []
    for chrom_id in sorted(bands_by_chrom, key=chromosome_sort_key):
        skeleton = _chromosome_skeleton(
            chrom_id, bands_by_chrom[chrom_id], genes_by_chrom[chrom_id], config
        )
        skeletons.append(skeleton)
        all_counts.extend(r["gene_count"] for r in skeleton[4])

    bin_edges = compute_bin_edges([c for c in all_counts if c > 0])

    chromosomes = []
    for chrom_id, length, arms, centromere, region_dicts in skeletons:
        regions = tuple(
            Region(
                name=r["name"],
                arm=r["arm"],
                span_bp=r["span"],
                stain=r["stain"],
                subsections=r["subsections"],
                gene_count=r["gene_count"],
                count_bin=_bin_for(bin_edges, r["gene_count"]),
            )
            for r in region_dicts
        )
        chrom_genes = tuple(genes_by_chrom[chrom_id])
        chromosomes.append(
            Chromosome(
                id=chrom_id,
                length_bp=length,
                arms=arms,
                centromere=centromere,
                regions=regions,
                genes=chrom_genes,
                gene_starts=tuple(g.start_bp for g in chrom_genes),
            )
        )

    known_symbols = {g.symbol for chrom in chromosomes for g in chrom.genes}
    grouped: dict[str, tuple[str, set[str]]] = {}
    for row in phenotypes:
        if row.symbol not in known_symbols:
            raise UnknownGeneSymbol(
                f"phenotype {row.phenotype!r} references unknown gene {row.symbol!r}"
            )
        color, symbols = grouped.setdefault(row.phenotype, (row.color, set()))
        symbols.add(row.symbol)
    phenotype_objs = tuple(
        Phenotype(name, color, frozenset(symbols))
        for name, (color, symbols) in sorted(grouped.items())
    )

    return GenomeAssembly(
        name=config.assembly_name,
        chromosomes=tuple(chromosomes),
        phenotypes=phenotype_objs,
        bin_edges=bin_edges,
    )


def _chromosome_skeleton(
    chrom_id: str, bands: list[CytobandRow], genes: list[Gene], config: ModelConfig
):
    length = bands[-1].end_bp

    # Group consecutive band rows into major-band regions.
    groups: list[tuple[str, list[CytobandRow]]] = []
    seen_names: set[str] = set()
    for row in bands:
        name = region_name_of_band(row.band_name)
        if groups and groups[-1][0] == name:
            groups[-1][1].append(row)
            continue
        if name in seen_names:
            raise MalformedBands(f"bands of region {name!r} are not contiguous on chromosome {chrom_id}")
        seen_names.add(name)
        groups.append((name, [row]))

    region_dicts = []
    saw_q = False
    acen_start, acen_end = None, None
    for name, rows in groups:
        arm = name[0]
        if arm not in ("p", "q"):
            raise MalformedBands(f"band {name!r} on chromosome {chrom_id} has no p/q arm letter")
        if arm == "q":
            saw_q = True
        elif saw_q:
            raise MalformedBands(f"p band {name!r} follows q bands on chromosome {chrom_id}")
        span = Span(rows[0].start_bp, rows[-1].end_bp)
        for row in rows:
            if row.stain == "acen":
                acen_start = row.start_bp if acen_start is None else min(acen_start, row.start_bp)
                acen_end = row.end_bp if acen_end is None else max(acen_end, row.end_bp)
        region_dicts.append(
            {
                "name": name,
                "arm": arm,
                "span": span,
                "stain": _dominant_stain(rows),
                "rows": rows,
            }
        )

    q_boundary = length
    for r in region_dicts:
        if r["arm"] == "q":
            q_boundary = r["span"].start
            break
    centromere = Span(acen_start, acen_end) if acen_start is not None else Span(q_boundary, q_boundary)
    arms = (Arm("p", Span(0, q_boundary)), Arm("q", Span(q_boundary, length)))

    gene_starts = [g.start_bp for g in genes]
    for r in region_dicts:
        rows = r.pop("rows")
        if len(rows) == 1 and "." not in rows[0].band_name:
            sub_spans = _synthetic_subsections(r["name"], r["span"], config.max_synthetic_subsection_bp)
        else:
            sub_spans = [(row.band_name, Span(row.start_bp, row.end_bp)) for row in rows]
        subsections = []
        for sub_name, sub_span in sub_spans:
            lo = bisect_left(gene_starts, sub_span.start)
            hi = bisect_left(gene_starts, sub_span.end)
            subsections.append(Subsection(sub_name, sub_span, tuple(genes[lo:hi])))
        r["subsections"] = tuple(subsections)
        r["gene_count"] = sum(s.gene_count for s in subsections)

    return chrom_id, length, arms, centromere, region_dicts


def _dominant_stain(rows: list[CytobandRow]) -> str:
    totals: dict[str, int] = {}
    order: list[str] = []
    for row in rows:
        if row.stain not in totals:
            order.append(row.stain)
        totals[row.stain] = totals.get(row.stain, 0) + (row.end_bp - row.start_bp)
    return max(order, key=lambda s: totals[s])


def _synthetic_subsections(region_name: str, span: Span, max_bp: int) -> list[tuple[str, Span]]:
    n = max(1, math.ceil(span.length / max_bp))
    base, rem = divmod(span.length, n)
    out = []
    cursor = span.start
    for i in range(n):
        size = base + (1 if i < rem else 0)
        out.append((f"{region_name}.s{i + 1}", Span(cursor, cursor + size)))
        cursor += size
    return out


def compute_bin_edges(nonzero_counts: Iterable[int]) -> tuple[int, int, int, int, int]:
    """Quintile edges over the nonzero region gene counts, forced strictly
    increasing. Edge k is the inclusive upper bound of bin k."""
    counts = sorted(nonzero_counts)
    if not counts:
        return (1, 2, 3, 4, 5)
    n = len(counts)
    edges: list[int] = []
    prev = 0
    for k in range(1, 6):
        idx = max(0, math.ceil(n * k / 5) - 1)
        edge = max(counts[idx], prev + 1)
        edges.append(edge)
        prev = edge
    return tuple(edges)  # type: ignore[return-value]


def _bin_for(edges: Sequence[int], count: int) -> int:
    if count == 0:
        return 0
    return min(5, 1 + bisect_left(list(edges), count))


# -- lookups -------------------------------------------------------------------

def region_of(assembly: GenomeAssembly, chromosome_id: str, position_bp: int) -> Region:
    """The unique region whose span contains the position."""
    chrom = assembly.chromosome(chromosome_id)
    if not 0 <= position_bp < chrom.length_bp:
        raise PositionOutOfRange(
            f"position {position_bp} outside chromosome {chromosome_id} [0, {chrom.length_bp})"
        )
    starts = [r.span_bp.start for r in chrom.regions]
    return chrom.regions[bisect_right(starts, position_bp) - 1]


def genes_in(
    assembly: GenomeAssembly, chromosome_id: str, interval_bp: tuple[int, int]
) -> list[Gene]:
    """Genes starting inside the half-open interval, ordered by start then symbol."""
    chrom = assembly.chromosome(chromosome_id)
    start, end = interval_bp
    if not (0 <= start <= end <= chrom.length_bp):
        raise PositionOutOfRange(
            f"interval [{start}, {end}) outside chromosome {chromosome_id} [0, {chrom.length_bp})"
        )
    lo = bisect_left(chrom.gene_starts, start)
    hi = bisect_left(chrom.gene_starts, end)
    return list(chrom.genes[lo:hi])


def markers(assembly: GenomeAssembly, node: Region | Subsection | Gene) -> set[str]:
    """Names of phenotypes with at least one annotated gene inside the node."""
    if isinstance(node, Gene):
        return {p.name for p in assembly.phenotypes if node.symbol in p.gene_symbols}
    node_genes = node.genes
    out: set[str] = set()
    for phenotype in assembly.phenotypes:
        if any(g.symbol in phenotype.gene_symbols for g in node_genes):
            out.add(phenotype.name)
    return out


def gene_count_bin(assembly: GenomeAssembly, count: int) -> int:
    """Six-level darkness bin for a gene count: 0 only for zero, else 1..5."""
    if count < 0:
        raise ValueError("gene count must be non-negative")
    return _bin_for(assembly.bin_edges, count)


# -- serialization -------------------------------------------------------------

def assembly_to_json(assembly: GenomeAssembly) -> dict:
    return {
        "name": assembly.name,
        "bin_edges": list(assembly.bin_edges),
        "chromosomes": [
            {
                "id": c.id,
                "length_bp": c.length_bp,
                "arms": [{"name": a.name, "span": a.span_bp.to_json()} for a in c.arms],
                "centromere": c.centromere.to_json(),
                "regions": [
                    {
                        "name": r.name,
                        "arm": r.arm,
                        "span": r.span_bp.to_json(),
                        "stain": r.stain,
                        "gene_count": r.gene_count,
                        "count_bin": r.count_bin,
                        "subsections": [
                            {
                                "name": s.name,
                                "span": s.span_bp.to_json(),
                                "gene_count": s.gene_count,
                            }
                            for s in r.subsections
                        ],
                    }
                    for r in c.regions
                ],
                "genes": [
                    {
                        "symbol": g.symbol,
                        "start_bp": g.start_bp,
                        "end_bp": g.end_bp,
                        "strand": g.strand.value,
                    }
                    for g in c.genes
                ],
            }
            for c in assembly.chromosomes
        ],
        "phenotypes": [
            {"name": p.name, "color": p.color, "genes": sorted(p.gene_symbols)}
            for p in assembly.phenotypes
        ],
    }


def assembly_to_json_bytes(assembly: GenomeAssembly) -> bytes:
    """Canonical byte encoding: building from identical inputs gives identical bytes."""
    return json.dumps(assembly_to_json(assembly), sort_keys=True, separators=(",", ":")).encode()


def assembly_from_json(doc: dict) -> GenomeAssembly:
    chromosomes = []
    for c in doc["chromosomes"]:
        genes = tuple(
            Gene(g["symbol"], c["id"], g["start_bp"], g["end_bp"], Strand(g["strand"]))
            for g in c["genes"]
        )
        gene_starts = [g.start_bp for g in genes]
        regions = []
        for r in c["regions"]:
            subsections = []
            for s in r["subsections"]:
                span = Span(*s["span"])
                lo = bisect_left(gene_starts, span.start)
                hi = bisect_left(gene_starts, span.end)
                subsections.append(Subsection(s["name"], span, genes[lo:hi]))
            regions.append(
                Region(
                    name=r["name"],
                    arm=r["arm"],
                    span_bp=Span(*r["span"]),
                    stain=r["stain"],
                    subsections=tuple(subsections),
                    gene_count=r["gene_count"],
                    count_bin=r["count_bin"],
                )
            )
        chromosomes.append(
            Chromosome(
                id=c["id"],
                length_bp=c["length_bp"],
                arms=tuple(Arm(a["name"], Span(*a["span"])) for a in c["arms"]),
                centromere=Span(*c["centromere"]),
                regions=tuple(regions),
                genes=genes,
                gene_starts=tuple(gene_starts),
            )
        )
    return GenomeAssembly(
        name=doc["name"],
        chromosomes=tuple(chromosomes),
        phenotypes=tuple(
            Phenotype(p["name"], p["color"], frozenset(p["genes"])) for p in doc["phenotypes"]
        ),
        bin_edges=tuple(doc["bin_edges"]),  # type: ignore[arg-type]
    )
