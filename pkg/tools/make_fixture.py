#!/usr/bin/env python3
"""Generate the committed GRCh38-derived fixture under data/grch38/.

Chromosome lengths and centromere intervals are the GRCh38.p14 values for
the 24 nuclear chromosomes. Band boundaries, gene positions, and gene
symbols are synthesized deterministically (fixed seed): per-chromosome
gene totals follow the protein-coding distribution of the human genome,
scaled to the textbook figure of ~25,000 protein-coding genes, and genes
are placed in clusters so counts vary strongly between regions.

Run from the repo root:  python tools/make_fixture.py
"""
from __future__ import annotations

import math
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from foldscope.ingest import (  # noqa: E402
    CytobandRow,
    GeneRow,
    PhenotypeRow,
    parse_cytobands,
    parse_gene_table,
    parse_phenotype_table,
    write_cytobands,
    write_gene_table,
    write_phenotype_table,
)
from foldscope.model import build_assembly  # noqa: E402

SEED = 20240801
OUT_DIR = Path(__file__).resolve().parent.parent / "data" / "grch38"

# GRCh38.p14 sequence lengths (bp) and approximate centromere (acen) intervals.
CHROMOSOMES = [
    # id, length_bp, acen_start, acen_end, protein_coding_weight
    ("1", 248956422, 121700000, 125100000, 2000),
    ("2", 242193529, 91800000, 96000000, 1250),
    ("3", 198295559, 87800000, 94000000, 1050),
    ("4", 190214555, 48200000, 51800000, 750),
    ("5", 181538259, 46100000, 50100000, 880),
    ("6", 170805979, 58500000, 62600000, 1050),
    ("7", 159345973, 58100000, 62100000, 910),
    ("8", 145138636, 43200000, 47200000, 670),
    ("9", 138394717, 42200000, 45500000, 780),
    ("10", 133797422, 38000000, 41600000, 730),
    ("11", 135086622, 51000000, 55800000, 1300),
    ("12", 133275309, 33200000, 37800000, 1030),
    ("13", 114364328, 16500000, 18900000, 320),
    ("14", 107043718, 16100000, 18200000, 620),
    ("15", 101991189, 17500000, 20500000, 600),
    ("16", 90338345, 35300000, 38400000, 860),
    ("17", 83257441, 22700000, 27400000, 1190),
    ("18", 80373285, 15400000, 21500000, 270),
    ("19", 58617616, 24200000, 28100000, 1470),
    ("20", 64444167, 25700000, 30400000, 540),
    ("21", 46709983, 10900000, 13000000, 230),
    ("22", 50818468, 13700000, 17400000, 440),
    ("X", 156040895, 58100000, 63800000, 840),
    ("Y", 57227415, 10300000, 10600000, 70),
]

TARGET_GENES = 25000
ACROCENTRIC = {"13", "14", "15", "21", "22"}
GVAR_NEXT_TO_CEN = {"1", "9", "16", "Y"}

STAIN_WEIGHTS = [
    ("gneg", 0.50),
    ("gpos25", 0.15),
    ("gpos50", 0.13),
    ("gpos75", 0.08),
    ("gpos100", 0.14),
]

PHENOTYPES = [
    # name, color, {chromosome: gene count}
    ("A", "#E41A1C", {"17": 24, "2": 6, "9": 5}),
    ("B", "#377EB8", {"17": 15, "2": 12, "9": 2}),
    ("C", "#4DAF4A", {"17": 7, "2": 3, "9": 10}),
]


def _split(rng: random.Random, start: int, end: int, n: int) -> list[tuple[int, int]]:
    """Split [start, end) into n spans of randomized proportions."""
    weights = [0.6 + rng.random() for _ in range(n)]
    total = sum(weights)
    bounds = [start]
    acc = start
    for w in weights[:-1]:
        acc += max(1, int((end - start) * w / total))
        bounds.append(min(acc, end - (n - len(bounds))))
    bounds.append(end)
    return list(zip(bounds, bounds[1:]))


def _pick_stain(rng: random.Random) -> str:
    roll = rng.random()
    acc = 0.0
    for stain, weight in STAIN_WEIGHTS:
        acc += weight
        if roll < acc:
            return stain
    return "gneg"


def make_bands(rng: random.Random, chrom: str, length: int, cen: tuple[int, int]) -> list[CytobandRow]:
    c0, c1 = cen
    mid = (c0 + c1) // 2
    rows: list[CytobandRow] = []

    def emit_arm(arm: str, arm_start: int, arm_end: int) -> None:
        arm_len = arm_end - arm_start
        if arm_len <= 0:
            return
        n_regions = max(1, round(arm_len / 13_000_000))
        spans = _split(rng, arm_start, arm_end, n_regions)
        if arm == "p":
            # farthest from the centromere carries the highest number
            numbers = [11 + n_regions - i for i in range(n_regions)]
        else:
            numbers = [12 + i for i in range(n_regions)]
        for (r_start, r_end), number in zip(spans, numbers):
            name = f"{arm}{number}"
            size = r_end - r_start
            n_subs = 3 if size >= 9_000_000 else (2 if size >= 4_500_000 else 1)
            if n_subs == 1:
                rows.append(CytobandRow(chrom, r_start, r_end, name, _pick_stain(rng)))
                continue
            for k, (s_start, s_end) in enumerate(_split(rng, r_start, r_end, n_subs), start=1):
                rows.append(CytobandRow(chrom, s_start, s_end, f"{name}.{k}", _pick_stain(rng)))

    emit_arm("p", 0, c0)
    rows.append(CytobandRow(chrom, c0, mid, "p11", "acen"))
    rows.append(CytobandRow(chrom, mid, c1, "q11", "acen"))
    q_mark = len(rows)
    emit_arm("q", c1, length)

    if chrom in ACROCENTRIC and q_mark >= 3:
        last_p = rows[q_mark - 3]
        rows[q_mark - 3] = CytobandRow(chrom, last_p.start_bp, last_p.end_bp, last_p.band_name, "stalk")
    if chrom in GVAR_NEXT_TO_CEN and q_mark < len(rows):
        first_q = rows[q_mark]
        rows[q_mark] = CytobandRow(chrom, first_q.start_bp, first_q.end_bp, first_q.band_name, "gvar")
    return rows


def make_genes(
    rng: random.Random, chrom: str, length: int, bands: list[CytobandRow], n_genes: int
) -> list[GeneRow]:
    placeable = [b for b in bands if b.stain not in ("acen", "stalk", "gvar")]
    weights = [
        (b.end_bp - b.start_bp) * math.exp(rng.gauss(0.0, 1.1)) for b in placeable
    ]
    rows = []
    for i in range(1, n_genes + 1):
        band = rng.choices(placeable, weights)[0]
        start = rng.randrange(band.start_bp, band.end_bp)
        size = int(math.exp(rng.uniform(math.log(2_000), math.log(500_000))))
        end = min(length, start + size)
        strand = "+" if rng.random() < 0.5 else "-"
        rows.append(GeneRow(chrom, start, end, strand, f"C{chrom}ORF{i:04d}"))
    rows.sort(key=lambda r: (r.start_bp, r.symbol))
    return rows


def make_phenotypes(rng: random.Random, genes_by_chrom: dict[str, list[GeneRow]]) -> list[PhenotypeRow]:
    rows = []
    taken: set[str] = set()
    for name, color, per_chrom in PHENOTYPES:
        for chrom, count in per_chrom.items():
            pool = [g.symbol for g in genes_by_chrom[chrom] if g.symbol not in taken]
            picked = rng.sample(pool, count)
            taken.update(picked)
            for symbol in sorted(picked):
                rows.append(PhenotypeRow(name, color, symbol))
    return rows


def main() -> None:
    rng = random.Random(SEED)
    scale = TARGET_GENES / sum(c[4] for c in CHROMOSOMES)

    all_bands: list[CytobandRow] = []
    genes_by_chrom: dict[str, list[GeneRow]] = {}
    for chrom, length, c0, c1, weight in CHROMOSOMES:
        bands = make_bands(rng, chrom, length, (c0, c1))
        all_bands.extend(bands)
        genes_by_chrom[chrom] = make_genes(rng, chrom, length, bands, round(weight * scale))
    all_genes = [g for chrom, *_ in CHROMOSOMES for g in genes_by_chrom[chrom]]
    phenotype_rows = make_phenotypes(rng, genes_by_chrom)

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    (OUT_DIR / "cytobands.tsv").write_text(write_cytobands(all_bands))
    (OUT_DIR / "genes.tsv").write_text(write_gene_table(all_genes))
    (OUT_DIR / "phenotypes.csv").write_text(write_phenotype_table(phenotype_rows))

    # sanity: the written files parse and build, and headline figures hold
    bands = parse_cytobands((OUT_DIR / "cytobands.tsv").read_text().splitlines())
    genes = parse_gene_table((OUT_DIR / "genes.tsv").read_text().splitlines())
    phenos = parse_phenotype_table((OUT_DIR / "phenotypes.csv").read_text().splitlines())
    assembly = build_assembly(bands, genes, phenos)
    total = assembly.total_length_bp
    chr11 = assembly.chromosome("11")
    chr4 = assembly.chromosome("4")
    assert len(assembly.chromosomes) == 24
    assert abs(total - 3.2e9) / 3.2e9 <= 0.05, total
    assert abs(assembly.gene_count - 25000) / 25000 <= 0.15, assembly.gene_count
    assert abs(chr11.length_bp / chr4.length_bp - 0.70) <= 0.05
    assert chr11.gene_count - chr4.gene_count > 400
    print(f"chromosomes: {len(assembly.chromosomes)}")
    print(f"total length: {total:,} bp")
    print(f"genes: {assembly.gene_count}")
    print(f"band rows: {len(bands)}, regions: {sum(len(c.regions) for c in assembly.chromosomes)}")
    print(f"chr11/chr4 length ratio: {chr11.length_bp / chr4.length_bp:.3f}")
    print(f"chr11 - chr4 gene count: {chr11.gene_count - chr4.gene_count}")


if __name__ == "__main__":
    main()
