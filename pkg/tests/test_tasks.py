import pytest

from foldscope.errors import (
    AnswerTypeMismatch,
    NoFeasibleTask,
    UnknownChromosome,
    UnknownPhenotype,
    UnknownRegion,
)
from foldscope.ingest import GeneRow, PhenotypeRow
from foldscope.model import build_assembly
from foldscope.tasks import (
    Dominance,
    TaskKind,
    TaskSpec,
    check_answer,
    dominant_phenotype,
    find_regions_with_gene_count,
    generate_task,
    oracle_answer,
    orientation_dominance,
)


class TestFindRegions:
    def test_unique_count(self, toy):
        # count-scan oracle: only q12 on T1 has exactly 3 genes
        chrom = toy.chromosome("T1")
        expected = [r.name for r in chrom.regions if r.gene_count == 3]
        got = [r.name for r in find_regions_with_gene_count(toy, "T1", 3)]
        assert got == expected == ["q12"]

    def test_count_above_any(self, toy):
        assert find_regions_with_gene_count(toy, "T1", 99) == []

    def test_zero_on_gene_free_chromosome(self, toy_rows):
        bands, _, _ = toy_rows
        empty = build_assembly(bands, [], [])
        regions = find_regions_with_gene_count(empty, "T1", 0)
        assert [r.name for r in regions] == ["p11", "q11", "q12"]

    def test_unknown_chromosome(self, toy):
        with pytest.raises(UnknownChromosome):
            find_regions_with_gene_count(toy, "T9", 1)


class TestDominance:
    def test_plus_dominated(self, toy):
        assert orientation_dominance(toy, "T1", "p11") is Dominance.PLUS

    def test_minus_dominated(self, toy):
        assert orientation_dominance(toy, "T1", "q11") is Dominance.MINUS

    def test_balanced_is_tie(self, toy):
        assert orientation_dominance(toy, "T2", "p11") is Dominance.TIE

    def test_empty_region_is_tie(self, toy):
        assert orientation_dominance(toy, "T2", "q11") is Dominance.TIE

    def test_unknown_region(self, toy):
        with pytest.raises(UnknownRegion):
            orientation_dominance(toy, "T1", "q99")

    def test_strand_swap_antisymmetry(self, toy, toy_rows):
        bands, genes, _ = toy_rows
        flipped_rows = [
            GeneRow(g.chromosome, g.start_bp, g.end_bp, "-" if g.strand == "+" else "+", g.symbol)
            for g in genes
        ]
        flipped = build_assembly(bands, flipped_rows, [])
        swap = {Dominance.PLUS: Dominance.MINUS, Dominance.MINUS: Dominance.PLUS,
                Dominance.TIE: Dominance.TIE}
        for chrom in toy.chromosomes:
            for region in chrom.regions:
                before = orientation_dominance(toy, chrom.id, region.name)
                after = orientation_dominance(flipped, chrom.id, region.name)
                assert after is swap[before]


class TestDominantPhenotype:
    def test_clear_winner(self, toy):
        summary = dominant_phenotype(toy, "T1", ["A", "B", "C"])
        assert summary.winner == "A"
        assert summary.counts == {"A": 2, "B": 1, "C": 1}
        assert summary.tied is False

    def test_tie_reports_smallest_name(self, toy_rows):
        bands, genes, _ = toy_rows
        rows = [
            PhenotypeRow("A", "#FF0000", "GENE1"),
            PhenotypeRow("A", "#FF0000", "GENE2"),
            PhenotypeRow("B", "#00FF00", "GENE3"),
            PhenotypeRow("B", "#00FF00", "GENE4"),
        ]
        assembly = build_assembly(bands, genes, rows)
        summary = dominant_phenotype(assembly, "T1", ["A", "B"])
        assert summary.winner == "A"
        assert summary.tied is True

    def test_single_phenotype(self, toy):
        summary = dominant_phenotype(toy, "T1", ["B"])
        assert summary.winner == "B" and summary.tied is False

    def test_unknown_phenotype(self, toy):
        with pytest.raises(UnknownPhenotype):
            dominant_phenotype(toy, "T1", ["Z"])


class TestGeneration:
    def test_deterministic_in_seed(self, full_assembly):
        for kind in TaskKind:
            a = generate_task(full_assembly, kind, 42)
            b = generate_task(full_assembly, kind, 42)
            assert a == b

    def test_different_seeds_vary(self, full_assembly):
        tasks = {generate_task(full_assembly, TaskKind.IDENTIFY, seed).to_json().__str__()
                 for seed in range(10)}
        assert len(tasks) > 1

    def test_identify_target_is_unique(self, full_assembly):
        for seed in range(25):
            task = generate_task(full_assembly, TaskKind.IDENTIFY, seed)
            matches = find_regions_with_gene_count(
                full_assembly, task.chromosome_id, task.params.target_gene_count
            )
            assert len(matches) == 1

    def test_compare_regions_non_tie_distinct_arms(self, full_assembly):
        for seed in range(25):
            task = generate_task(full_assembly, TaskKind.COMPARE, seed)
            chrom = full_assembly.chromosome(task.chromosome_id)
            region_a = chrom.region(task.params.region_a)
            region_b = chrom.region(task.params.region_b)
            assert region_a.arm == "p" and region_b.arm == "q"
            assert orientation_dominance(full_assembly, chrom.id, region_a.name) is not Dominance.TIE
            assert orientation_dominance(full_assembly, chrom.id, region_b.name) is not Dominance.TIE

    def test_summarize_counts_strictly_ordered(self, full_assembly):
        for seed in range(25):
            task = generate_task(full_assembly, TaskKind.SUMMARIZE, seed)
            counts = dominant_phenotype(
                full_assembly, task.chromosome_id, task.params.phenotypes
            ).counts
            assert len(set(counts.values())) == 3

    def test_infeasible_without_phenotypes(self, toy_rows):
        bands, genes, _ = toy_rows
        assembly = build_assembly(bands, genes, [])
        with pytest.raises(NoFeasibleTask):
            generate_task(assembly, TaskKind.SUMMARIZE, 0)

    def test_json_round_trip(self, full_assembly):
        for kind in TaskKind:
            task = generate_task(full_assembly, kind, 7)
            assert TaskSpec.from_json(task.to_json()) == task


class TestCheckAnswer:
    def test_correct_region_name(self, toy):
        task = TaskSpec(TaskKind.IDENTIFY, "T1", type(generate_task(toy, TaskKind.IDENTIFY, 0).params)(3))
        assert check_answer(toy, task, "q12") is True
        assert check_answer(toy, task, "q11") is False

    def test_compare_pair(self, toy):
        task = generate_task(toy, TaskKind.COMPARE, 1)
        oracle = oracle_answer(toy, task)
        assert check_answer(toy, task, oracle) is True
        flipped = (oracle[1], oracle[0]) if oracle[0] != oracle[1] else (Dominance.TIE, oracle[1])
        assert check_answer(toy, task, flipped) is False

    def test_compare_accepts_strings(self, toy):
        task = generate_task(toy, TaskKind.COMPARE, 1)
        oracle = oracle_answer(toy, task)
        assert check_answer(toy, task, tuple(d.value for d in oracle)) is True

    def test_summarize_tie_co_winner_rejected(self, toy_rows):
        bands, genes, _ = toy_rows
        rows = [
            PhenotypeRow("A", "#FF0000", "GENE1"),
            PhenotypeRow("B", "#00FF00", "GENE3"),
        ]
        assembly = build_assembly(bands, genes, rows)
        from foldscope.tasks import SummarizeParams

        task = TaskSpec(TaskKind.SUMMARIZE, "T1", SummarizeParams(("A", "B")))
        assert check_answer(assembly, task, "A") is True  # tie rule picks "A"
        assert check_answer(assembly, task, "B") is False

    def test_type_mismatches(self, toy):
        identify = generate_task(toy, TaskKind.IDENTIFY, 0)
        with pytest.raises(AnswerTypeMismatch):
            check_answer(toy, identify, 42)
        compare = generate_task(toy, TaskKind.COMPARE, 0)
        with pytest.raises(AnswerTypeMismatch):
            check_answer(toy, compare, "plus")
        with pytest.raises(AnswerTypeMismatch):
            check_answer(toy, compare, ("sideways", "plus"))

    def test_oracle_answers_check_true(self, full_assembly):
        for kind in TaskKind:
            for seed in range(10):
                task = generate_task(full_assembly, kind, seed)
                assert check_answer(full_assembly, task, oracle_answer(full_assembly, task))
