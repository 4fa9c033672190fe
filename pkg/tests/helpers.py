"""Shared builders for randomized property tests."""
from __future__ import annotations

import random

from foldscope import fold
from foldscope.ingest import CytobandRow, GeneRow
from foldscope.model import GenomeAssembly, build_assembly


def make_random_assembly(
    rng: random.Random, chromosome_id: str = "S1", max_length: int = 10_000_000
) -> GenomeAssembly:
    """One synthetic chromosome with randomized banding and genes."""
    length = rng.randrange(max_length // 2, max_length + 1)
    boundary = rng.randrange(length // 5, 4 * length // 5)

    bands: list[CytobandRow] = []

    def fill(arm: str, start: int, end: int, first_number: int):
        cursor = start
        number = first_number
        while cursor < end:
            remaining = end - cursor
            size = min(remaining, rng.randrange(400_000, 3_000_000))
            if remaining - size < 200_000:
                size = remaining
            name = f"{arm}{number}"
            if size > 1_200_000 and rng.random() < 0.5:
                split = cursor + rng.randrange(size // 4, 3 * size // 4)
                bands.append(CytobandRow(chromosome_id, cursor, split, f"{name}.1", "gneg"))
                bands.append(CytobandRow(chromosome_id, split, cursor + size, f"{name}.2", "gpos50"))
            else:
                stain = rng.choice(["gneg", "gpos25", "gpos50", "gpos75", "gpos100"])
                bands.append(CytobandRow(chromosome_id, cursor, cursor + size, name, stain))
            cursor += size
            number += 1

    fill("p", 0, boundary, 11)
    fill("q", boundary, length, 11)

    genes = []
    n_genes = rng.randrange(0, 60)
    starts = sorted(rng.sample(range(length - 1), n_genes)) if n_genes else []
    for i, start in enumerate(starts):
        end = min(length, start + rng.randrange(1_000, 200_000))
        strand = "+" if rng.random() < 0.5 else "-"
        genes.append(GeneRow(chromosome_id, start, end, strand, f"SG{i:03d}"))

    return build_assembly(bands, genes, [])


def random_fold_state(
    rng: random.Random, assembly: GenomeAssembly, chromosome_id: str, n_ops: int | None = None
) -> fold.FoldState:
    """A reachable fold state produced by a random sequence of valid verbs."""
    chromosome = assembly.chromosome(chromosome_id)
    state = fold.initial_state(chromosome)
    region_names = [r.name for r in chromosome.regions]
    if n_ops is None:
        n_ops = rng.randrange(0, 2 * len(region_names) + 4)
    for _ in range(n_ops):
        verb = rng.choice(["open", "close", "compress", "uncompress", "open_sub", "close_sub"])
        if verb in ("open", "close", "compress", "uncompress"):
            name = rng.choice(region_names)
            op = {
                "open": fold.open_region,
                "close": fold.close_region,
                "compress": fold.compress_region,
                "uncompress": fold.uncompress_region,
            }[verb]
            state = op(chromosome, state, name)
        else:
            open_regions = [r for r in chromosome.regions if r.name in state.open_regions]
            if not open_regions:
                continue
            region = rng.choice(open_regions)
            sub = rng.choice(region.subsections)
            if verb == "open_sub":
                state = fold.open_subsection(chromosome, state, sub.name)
            else:
                state = fold.close_subsection(chromosome, state, sub.name)
    return state
