"""Parsers for the three tabular input formats.

Cytobands come as UCSC-style TSV without a header (chrom, start, end, band
name, stain; 0-based half-open). The gene table is a 5-column TSV with a
mandatory header and 1-based inclusive coordinates, converted to 0-based
half-open on parse. Phenotype annotations are a 3-column CSV (RFC 4180),
one row per (phenotype, gene) pair.

All parsers exist in two modes. Strict mode (the default) raises on the
first bad line. Lenient mode skips bad lines and reports them through the
optional ``issues`` list; a bad line never affects rows parsed from other
lines. Tiling problems in the band table (overlaps, gaps) are structural:
strict mode raises, lenient mode drops the whole affected chromosome since
its banding cannot be trusted.
"""
from __future__ import annotations

import csv
import logging
import re
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    BadColor,
    BadStrand,
    ColorConflict,
    DuplicateSymbol,
    GapDetected,
    HeaderMissing,
    MalformedLine,
    OverlapDetected,
    ParseError,
    UnknownStain,
)

log = logging.getLogger(__name__)

STAINS = frozenset({"gneg", "gpos25", "gpos50", "gpos75", "gpos100", "acen", "gvar", "stalk"})

GENE_HEADER = ("chrom", "start", "end", "strand", "symbol")
PHENOTYPE_HEADER = ("phenotype", "color", "symbol")

_COLOR_RE = re.compile(r"#[0-9A-Fa-f]{6}\Z")


@dataclass(frozen=True)
class CytobandRow:
    chromosome: str
    start_bp: int  # 0-based
    end_bp: int  # exclusive
    band_name: str
    stain: str


@dataclass(frozen=True)
class GeneRow:
    chromosome: str
    start_bp: int  # 0-based after conversion
    end_bp: int  # exclusive
    strand: str  # '+' or '-'
    symbol: str


@dataclass(frozen=True)
class PhenotypeRow:
    phenotype: str
    color: str  # normalized to upper-case #RRGGBB
    symbol: str


@dataclass(frozen=True)
class ParseIssue:
    line_no: int
    message: str


def normalize_chromosome(name: str) -> str:
    """Strip an optional ``chr`` prefix; cased contig names pass through."""
    return name[3:] if name.startswith("chr") else name


def skip_chromosome(name: str) -> bool:
    """True for mitochondrial and unplaced/alt scaffolds, which are ignored."""
    return name in ("M", "MT") or "_" in name


def chromosome_sort_key(name: str) -> tuple:
    """Canonical ordering: 1..22, then X, Y, then anything else by name."""
    if name.isdigit():
        return (0, int(name), "")
    if name in ("X", "Y"):
        return (1, 0 if name == "X" else 1, "")
    return (2, 0, name)


def _report(exc: ParseError, strict: bool, issues: list[ParseIssue] | None) -> None:
    if strict:
        raise exc
    log.warning("skipping input line: %s", exc)
    if issues is not None:
        issues.append(ParseIssue(exc.line_no or 0, str(exc)))


def parse_cytobands(
    lines: Iterable[str], *, strict: bool = True, issues: list[ParseIssue] | None = None
) -> list[CytobandRow]:
    """Parse band rows and validate that each chromosome's bands tile.

    Rows need not arrive sorted; the result is sorted by (chromosome,
    start). Bands of one chromosome must cover [0, max end) with no gaps
    or overlaps.
    """
    rows: list[CytobandRow] = []
    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 5:
            _report(MalformedLine(f"expected 5 tab-separated fields, got {len(fields)}", line_no), strict, issues)
            continue
        chrom = normalize_chromosome(fields[0])
        if not chrom:
            _report(MalformedLine("empty chromosome name", line_no), strict, issues)
            continue
        if skip_chromosome(chrom):
            log.warning("line %d: skipping non-nuclear contig %r", line_no, fields[0])
            continue
        try:
            start, end = int(fields[1]), int(fields[2])
        except ValueError:
            _report(MalformedLine("start/end are not integers", line_no), strict, issues)
            continue
        if start < 0 or start >= end:
            _report(MalformedLine(f"empty or negative span [{start}, {end})", line_no), strict, issues)
            continue
        band = fields[3]
        if not band:
            _report(MalformedLine("empty band name", line_no), strict, issues)
            continue
        stain = fields[4]
        if stain not in STAINS:
            _report(UnknownStain(f"unknown stain {stain!r}", line_no), strict, issues)
            continue
        rows.append(CytobandRow(chrom, start, end, band, stain))

    rows.sort(key=lambda r: (chromosome_sort_key(r.chromosome), r.start_bp, r.end_bp))
    return _validate_tiling(rows, strict, issues)


def _validate_tiling(
    rows: list[CytobandRow], strict: bool, issues: list[ParseIssue] | None
) -> list[CytobandRow]:
    ok: list[CytobandRow] = []
    by_chrom: dict[str, list[CytobandRow]] = {}
    for row in rows:
        by_chrom.setdefault(row.chromosome, []).append(row)
    for chrom, group in by_chrom.items():
        try:
            if group[0].start_bp != 0:
                raise GapDetected(chrom, 0)
            for a, b in zip(group, group[1:]):
                if a.end_bp > b.start_bp:
                    raise OverlapDetected(chrom, a.band_name, b.band_name)
                if a.end_bp < b.start_bp:
                    raise GapDetected(chrom, a.end_bp)
        except ParseError as exc:
            if strict:
                raise
            log.warning("dropping chromosome %s: %s", chrom, exc)
            if issues is not None:
                issues.append(ParseIssue(0, str(exc)))
            continue
        ok.extend(group)
    return ok


def parse_gene_table(
    lines: Iterable[str], *, strict: bool = True, issues: list[ParseIssue] | None = None
) -> list[GeneRow]:
    """Parse the gene table, converting 1-based inclusive spans to 0-based
    half-open. Duplicate (symbol, chromosome) rows are rejected."""
    rows: list[GeneRow] = []
    seen: set[tuple[str, str]] = set()
    header_seen = False
    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line:
            continue
        fields = line.split("\t")
        if not header_seen:
            if tuple(fields) != GENE_HEADER:
                raise HeaderMissing(
                    "expected header 'chrom\\tstart\\tend\\tstrand\\tsymbol'", line_no
                )
            header_seen = True
            continue
        if len(fields) != 5:
            _report(MalformedLine(f"expected 5 tab-separated fields, got {len(fields)}", line_no), strict, issues)
            continue
        chrom = normalize_chromosome(fields[0])
        if skip_chromosome(chrom):
            log.warning("line %d: skipping non-nuclear contig %r", line_no, fields[0])
            continue
        try:
            start, end = int(fields[1]), int(fields[2])
        except ValueError:
            _report(MalformedLine("start/end are not integers", line_no), strict, issues)
            continue
        if start < 1 or start > end:
            _report(MalformedLine(f"bad 1-based span {start}..{end}", line_no), strict, issues)
            continue
        strand = fields[3]
        if strand not in ("+", "-"):
            _report(BadStrand(f"strand must be '+' or '-', got {strand!r}", line_no), strict, issues)
            continue
        symbol = fields[4]
        if not symbol:
            _report(MalformedLine("empty gene symbol", line_no), strict, issues)
            continue
        if (symbol, chrom) in seen:
            _report(DuplicateSymbol(f"duplicate gene {symbol!r} on chromosome {chrom}", line_no), strict, issues)
            continue
        seen.add((symbol, chrom))
        rows.append(GeneRow(chrom, start - 1, end, strand, symbol))
    return rows


def parse_phenotype_table(
    lines: Iterable[str], *, strict: bool = True, issues: list[ParseIssue] | None = None
) -> list[PhenotypeRow]:
    """Parse phenotype annotations. A phenotype's color must be the same on
    every one of its rows; exact duplicate (phenotype, symbol) pairs collapse."""
    rows: list[PhenotypeRow] = []
    colors: dict[str, str] = {}
    pairs: set[tuple[str, str]] = set()
    reader = csv.reader(lines)
    header_seen = False
    for fields in reader:
        line_no = reader.line_num
        if not fields or (len(fields) == 1 and not fields[0].strip()):
            continue
        if not header_seen:
            if tuple(f.strip() for f in fields) != PHENOTYPE_HEADER:
                raise HeaderMissing("expected header 'phenotype,color,symbol'", line_no)
            header_seen = True
            continue
        if len(fields) != 3:
            _report(MalformedLine(f"expected 3 comma-separated fields, got {len(fields)}", line_no), strict, issues)
            continue
        name, color, symbol = (f.strip() for f in fields)
        if not name or not symbol:
            _report(MalformedLine("empty phenotype or symbol", line_no), strict, issues)
            continue
        if not _COLOR_RE.match(color):
            _report(BadColor(f"color {color!r} is not #RRGGBB", line_no), strict, issues)
            continue
        color = color.upper()
        if colors.setdefault(name, color) != color:
            _report(
                ColorConflict(f"phenotype {name!r} has colors {colors[name]} and {color}", line_no),
                strict,
                issues,
            )
            continue
        if (name, symbol) in pairs:
            continue
        pairs.add((name, symbol))
        rows.append(PhenotypeRow(name, color, symbol))
    return rows


# -- writers (inverse of the parsers; used for round-trips and fixtures) -----

def write_cytobands(rows: Iterable[CytobandRow]) -> str:
    return "".join(
        f"chr{r.chromosome}\t{r.start_bp}\t{r.end_bp}\t{r.band_name}\t{r.stain}\n" for r in rows
    )


def write_gene_table(rows: Iterable[GeneRow]) -> str:
    out = ["\t".join(GENE_HEADER) + "\n"]
    for r in rows:
        out.append(f"chr{r.chromosome}\t{r.start_bp + 1}\t{r.end_bp}\t{r.strand}\t{r.symbol}\n")
    return "".join(out)


def write_phenotype_table(rows: Iterable[PhenotypeRow]) -> str:
    out = [",".join(PHENOTYPE_HEADER) + "\n"]
    for r in rows:
        out.append(f"{r.phenotype},{r.color},{r.symbol}\n")
    return "".join(out)
