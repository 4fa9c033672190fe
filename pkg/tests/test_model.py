import math
import random

import pytest

from foldscope.errors import (
    GeneOutsideChromosome,
    PositionOutOfRange,
    UnknownChromosome,
    UnknownGeneSymbol,
)
from foldscope.ingest import GeneRow, PhenotypeRow, parse_cytobands
from foldscope.model import (
    assembly_from_json,
    assembly_to_json,
    assembly_to_json_bytes,
    build_assembly,
    gene_count_bin,
    genes_in,
    markers,
    region_of,
    region_name_of_band,
)


class TestBuild:
    def test_full_fixture_has_24_chromosomes(self, full_assembly):
        assert len(full_assembly.chromosomes) == 24

    def test_full_fixture_total_length_near_genome_size(self, full_assembly):
        assert abs(full_assembly.total_length_bp - 3.2e9) / 3.2e9 <= 0.05

    def test_empty_gene_list_all_zero(self, toy_rows):
        bands, _, _ = toy_rows
        assembly = build_assembly(bands, [], [])
        for chrom in assembly.chromosomes:
            for region in chrom.regions:
                assert region.gene_count == 0
                assert region.count_bin == 0

    def test_gene_outside_chromosome(self, toy_rows):
        bands, _, _ = toy_rows
        with pytest.raises(GeneOutsideChromosome):
            build_assembly(bands, [GeneRow("T1", 10_000_000, 10_000_100, "+", "G")], [])

    def test_unknown_chromosome(self, toy_rows):
        bands, _, _ = toy_rows
        with pytest.raises(UnknownChromosome):
            build_assembly(bands, [GeneRow("T9", 0, 10, "+", "G")], [])

    def test_unknown_gene_symbol(self, toy_rows):
        bands, genes, _ = toy_rows
        with pytest.raises(UnknownGeneSymbol):
            build_assembly(bands, genes, [PhenotypeRow("A", "#FF0000", "NOPE")])

    def test_chromosome_order_is_canonical(self, full_assembly):
        ids = [c.id for c in full_assembly.chromosomes]
        assert ids == [str(n) for n in range(1, 23)] + ["X", "Y"]

    def test_dominant_stain_by_length(self):
        bands = parse_cytobands(
            [
                "chrT\t0\t1000000\tq11.1\tgneg",
                "chrT\t1000000\t4000000\tq11.2\tgpos75",
            ]
        )
        assembly = build_assembly(bands, [], [])
        assert assembly.chromosome("T").regions[0].stain == "gpos75"

    def test_centromere_from_acen_bands(self):
        bands = parse_cytobands(
            [
                "chrT\t0\t1000000\tp12\tgneg",
                "chrT\t1000000\t1500000\tp11\tacen",
                "chrT\t1500000\t2000000\tq11\tacen",
                "chrT\t2000000\t3000000\tq12\tgneg",
            ]
        )
        chrom = build_assembly(bands, [], []).chromosome("T")
        assert chrom.centromere.to_json() == [1000000, 2000000]
        assert chrom.arms[0].span_bp.to_json() == [0, 1500000]
        assert chrom.arms[1].span_bp.to_json() == [1500000, 3000000]

    def test_zero_length_centromere_without_acen(self, toy):
        chrom = toy.chromosome("T1")
        assert chrom.centromere.to_json() == [4000000, 4000000]
        assert chrom.arms[0].span_bp.to_json() == [0, 4000000]

    def test_synthetic_subsections_cap_5mbp(self):
        bands = parse_cytobands(["chrT\t0\t12000000\tq13\tgneg"])
        region = build_assembly(bands, [], []).chromosome("T").regions[0]
        names = [s.name for s in region.subsections]
        assert names == ["q13.s1", "q13.s2", "q13.s3"]
        assert all(s.span_bp.length <= 5_000_000 for s in region.subsections)
        assert region.subsections[0].span_bp.start == 0
        assert region.subsections[-1].span_bp.end == 12000000

    def test_explicit_subbands_become_subsections(self, toy):
        q12 = toy.chromosome("T1").region("q12")
        assert [s.name for s in q12.subsections] == ["q12.1", "q12.2"]
        assert [s.gene_count for s in q12.subsections] == [3, 0]


class TestTilingInvariants:
    def test_regions_tile_every_chromosome(self, full_assembly, toy):
        for assembly in (full_assembly, toy):
            for chrom in assembly.chromosomes:
                cursor = 0
                for region in chrom.regions:
                    assert region.span_bp.start == cursor
                    cursor = region.span_bp.end
                assert cursor == chrom.length_bp

    def test_subsections_tile_every_region(self, full_assembly):
        for chrom in full_assembly.chromosomes:
            for region in chrom.regions:
                cursor = region.span_bp.start
                for sub in region.subsections:
                    assert sub.span_bp.start == cursor
                    cursor = sub.span_bp.end
                assert cursor == region.span_bp.end

    def test_assignment_totality(self, full_assembly):
        for chrom in full_assembly.chromosomes:
            assert sum(r.gene_count for r in chrom.regions) == chrom.gene_count
            for region in chrom.regions:
                assert sum(s.gene_count for s in region.subsections) == region.gene_count

    def test_p_regions_precede_q_regions(self, full_assembly):
        for chrom in full_assembly.chromosomes:
            arms = [r.arm for r in chrom.regions]
            assert arms == sorted(arms)  # 'p' < 'q'


class TestRegionOf:
    def test_linear_scan_oracle(self, toy, toy_rows):
        bands, _, _ = toy_rows
        rng = random.Random(11)
        t1 = [b for b in bands if b.chromosome == "T1"]
        for _ in range(200):
            pos = rng.randrange(0, 10_000_000)
            expected = next(
                region_name_of_band(b.band_name) for b in t1 if b.start_bp <= pos < b.end_bp
            )
            assert region_of(toy, "T1", pos).name == expected

    def test_example_position(self, toy):
        assert region_of(toy, "T1", 5_000_000).name == "q11"

    def test_position_zero(self, toy):
        assert region_of(toy, "T1", 0).name == "p11"

    def test_length_is_out_of_range(self, toy):
        with pytest.raises(PositionOutOfRange):
            region_of(toy, "T1", 10_000_000)


class TestGenesIn:
    def test_whole_chromosome_sorted(self, toy):
        got = genes_in(toy, "T1", (0, 10_000_000))
        expected = sorted(toy.chromosome("T1").genes, key=lambda g: (g.start_bp, g.symbol))
        assert got == list(expected)
        assert len(got) == 11

    def test_empty_interval(self, toy):
        assert genes_in(toy, "T1", (5_000_000, 5_000_000)) == []

    def test_single_gene_interval(self, toy):
        got = genes_in(toy, "T1", (1233, 1234))
        assert [g.symbol for g in got] == ["GENE1"]

    def test_out_of_range(self, toy):
        with pytest.raises(PositionOutOfRange):
            genes_in(toy, "T1", (0, 10_000_001))

    def test_tie_broken_by_symbol(self, toy_rows):
        bands, _, _ = toy_rows
        genes = [
            GeneRow("T1", 5000, 6000, "+", "ZZZ"),
            GeneRow("T1", 5000, 7000, "+", "AAA"),
        ]
        assembly = build_assembly(bands, genes, [])
        got = genes_in(assembly, "T1", (0, 10_000_000))
        assert [g.symbol for g in got] == ["AAA", "ZZZ"]


class TestMarkers:
    def test_region_with_one_marked_gene(self, toy):
        p11 = toy.chromosome("T1").region("p11")
        assert markers(toy, p11) == {"A"}

    def test_region_without_marked_genes(self, toy):
        q11_t2 = toy.chromosome("T2").region("q11")
        assert markers(toy, q11_t2) == set()

    def test_region_markers_union_of_subsections(self, toy, full_assembly):
        for assembly in (toy, full_assembly):
            for chrom in assembly.chromosomes:
                for region in chrom.regions:
                    union = set()
                    for sub in region.subsections:
                        union |= markers(assembly, sub)
                    assert markers(assembly, region) == union

    def test_gene_markers(self, toy):
        gene9 = next(g for g in toy.chromosome("T1").genes if g.symbol == "GENE9")
        assert markers(toy, gene9) == {"A"}

    def test_brute_force_over_phenotype_rows(self, toy, toy_rows):
        _, _, phenotype_rows = toy_rows
        q12 = toy.chromosome("T1").region("q12")
        raw = {
            row.phenotype
            for row in phenotype_rows
            if any(g.symbol == row.symbol for g in q12.genes)
        }
        assert markers(toy, q12) == raw == {"A", "C"}


class TestCountBins:
    def test_zero_count_is_bin_zero(self, full_assembly):
        assert gene_count_bin(full_assembly, 0) == 0

    def test_edge_maps_to_lower_bin(self, full_assembly):
        for k, edge in enumerate(full_assembly.bin_edges, start=1):
            assert gene_count_bin(full_assembly, edge) == k

    def test_max_observed_count_is_bin_5(self, full_assembly):
        top = max(r.gene_count for c in full_assembly.chromosomes for r in c.regions)
        assert gene_count_bin(full_assembly, top) == 5

    def test_monotone(self, full_assembly):
        rng = random.Random(3)
        for _ in range(300):
            a = rng.randrange(0, 300)
            b = rng.randrange(0, 300)
            a, b = min(a, b), max(a, b)
            assert gene_count_bin(full_assembly, a) <= gene_count_bin(full_assembly, b)

    def test_quintile_oracle(self, full_assembly):
        # independent recomputation of the edges from region counts
        counts = sorted(
            r.gene_count for c in full_assembly.chromosomes for r in c.regions if r.gene_count > 0
        )
        n = len(counts)
        expected, prev = [], 0
        for k in range(1, 6):
            edge = max(counts[max(0, math.ceil(n * k / 5) - 1)], prev + 1)
            expected.append(edge)
            prev = edge
        assert list(full_assembly.bin_edges) == expected

    def test_region_bins_consistent(self, full_assembly):
        for chrom in full_assembly.chromosomes:
            for region in chrom.regions:
                assert region.count_bin == gene_count_bin(full_assembly, region.gene_count)


class TestSerialization:
    def test_build_is_deterministic(self, toy_rows):
        bands, genes, phenotypes = toy_rows
        a = build_assembly(bands, genes, phenotypes)
        b = build_assembly(list(bands), list(genes), list(phenotypes))
        assert assembly_to_json_bytes(a) == assembly_to_json_bytes(b)

    def test_round_trip(self, toy):
        reloaded = assembly_from_json(assembly_to_json(toy))
        assert assembly_to_json_bytes(reloaded) == assembly_to_json_bytes(toy)

    def test_full_round_trip(self, full_assembly):
        reloaded = assembly_from_json(assembly_to_json(full_assembly))
        assert assembly_to_json_bytes(reloaded) == assembly_to_json_bytes(full_assembly)
