import random

import pytest

from foldscope.errors import (
    ParentNotOpen,
    PositionOutOfRange,
    SubsectionNotOpen,
    UnknownRegion,
    UnknownSubsection,
)
from foldscope.fold import (
    FoldState,
    LayoutConfig,
    LeafKind,
    ReadingDirection,
    RegionState,
    build_layout,
    close_region,
    close_subsection,
    compress_region,
    embedded_gene_rows,
    from_layout,
    initial_state,
    open_region,
    open_subsection,
    to_layout,
    uncompress_region,
)
from helpers import make_random_assembly, random_fold_state


@pytest.fixture
def t1(toy):
    return toy.chromosome("T1")


@pytest.fixture
def s0(t1):
    return initial_state(t1)


class TestStateMachine:
    def test_open_closed_region(self, t1, s0):
        state = open_region(t1, s0, "q11")
        assert state.region_state("q11") is RegionState.OPEN
        assert not state.open_subsections

    def test_open_is_idempotent(self, t1, s0):
        once = open_region(t1, s0, "q11")
        assert open_region(t1, once, "q11") == once

    def test_open_keeps_open_subsections(self, t1, s0):
        state = open_region(t1, s0, "q12")
        state = open_subsection(t1, state, "q12.1")
        assert open_region(t1, state, "q12") == state

    def test_open_clears_compression(self, t1, s0):
        state = compress_region(t1, s0, "q11")
        state = open_region(t1, state, "q11")
        assert state.region_state("q11") is RegionState.OPEN
        assert "q11" not in state.compressed_regions

    def test_close_closes_subsections(self, t1, s0):
        state = open_region(t1, s0, "q12")
        state = open_subsection(t1, state, "q12.1")
        state = close_region(t1, state, "q12")
        assert state.region_state("q12") is RegionState.CLOSED
        assert not state.open_subsections

    def test_compress_then_uncompress_is_closed(self, t1, s0):
        state = uncompress_region(t1, compress_region(t1, s0, "q11"), "q11")
        assert state.region_state("q11") is RegionState.CLOSED

    def test_uncompress_on_closed_unchanged(self, t1, s0):
        assert uncompress_region(t1, s0, "q11") == s0

    def test_compress_closes_subsections(self, t1, s0):
        state = open_subsection(t1, open_region(t1, s0, "q12"), "q12.2")
        state = compress_region(t1, state, "q12")
        assert not state.open_subsections

    def test_open_subsection_requires_open_parent(self, t1, s0):
        with pytest.raises(ParentNotOpen):
            open_subsection(t1, s0, "q12.1")

    def test_close_closed_subsection_unchanged(self, t1, s0):
        state = open_region(t1, s0, "q12")
        assert close_subsection(t1, state, "q12.1") == state

    def test_unknown_names(self, t1, s0):
        with pytest.raises(UnknownRegion):
            open_region(t1, s0, "q99")
        with pytest.raises(UnknownSubsection):
            open_subsection(t1, s0, "q99.1")

    def test_open_close_round_trip_from_closed(self, t1, s0):
        state = compress_region(t1, s0, "p11")  # unrelated folds survive
        assert close_region(t1, open_region(t1, state, "q11"), "q11") == state

    def test_round_trip_property_random_states(self, toy):
        rng = random.Random(5)
        t1 = toy.chromosome("T1")
        for _ in range(100):
            state = random_fold_state(rng, toy, "T1")
            region = rng.choice([r.name for r in t1.regions])
            base = close_region(t1, state, region)
            assert close_region(t1, open_region(t1, base, region), region) == base
            before = build_layout(toy, base)
            after = build_layout(toy, close_region(t1, open_region(t1, base, region), region))
            assert before == after


class TestLayout:
    def test_all_closed_total(self, toy, s0):
        layout = build_layout(toy, s0)
        assert layout.total_length == 10.0
        assert [leaf.kind for leaf in layout.leaves] == [LeafKind.CLOSED_REGION] * 3

    def test_compressed_region_width_and_total(self, toy, t1, s0):
        layout = build_layout(toy, compress_region(t1, s0, "q11"))
        q11 = next(leaf for leaf in layout.leaves if leaf.name == "q11")
        assert q11.layout_length == 0.5  # max(0.5, 3.0/10)
        assert layout.total_length == 4.0 + 0.5 + 3.0

    def test_open_region_with_open_subsections(self, toy, t1, s0):
        state = open_region(t1, s0, "q12")
        state = open_subsection(t1, state, "q12.1")
        state = open_subsection(t1, state, "q12.2")
        layout = build_layout(toy, state)
        widths = {leaf.name: leaf.layout_length for leaf in layout.leaves}
        assert widths["q12.1"] == 3.0  # 3 gene rows
        assert widths["q12.2"] == 1.0  # max(1, 0) rows
        assert widths["q12.1"] + widths["q12.2"] == 4.0

    def test_open_region_level1_closed_subsections(self, toy, t1, s0):
        layout = build_layout(toy, open_region(t1, s0, "q12"))
        kinds = {leaf.name: leaf.kind for leaf in layout.leaves}
        assert kinds["q12.1"] is LeafKind.CLOSED_SUBSECTION
        assert kinds["q12.2"] is LeafKind.CLOSED_SUBSECTION

    def test_genomic_tiling_preserved(self, toy, t1, s0):
        state = open_subsection(t1, open_region(t1, s0, "q12"), "q12.1")
        layout = build_layout(toy, state)
        cursor = 0
        for leaf in layout.leaves:
            assert leaf.genomic.start == cursor
            cursor = leaf.genomic.end
        assert cursor == 10_000_000


class TestTransform:
    def test_all_closed_identity_examples(self, toy, s0):
        layout = build_layout(toy, s0)
        assert to_layout(layout, 5_000_000) == 5.0
        assert to_layout(layout, 0) == 0.0

    def test_compressed_map_example(self, toy, t1, s0):
        layout = build_layout(toy, compress_region(t1, s0, "q11"))
        assert to_layout(layout, 7_000_000) == 4.5

    def test_out_of_range(self, toy, s0):
        layout = build_layout(toy, s0)
        with pytest.raises(PositionOutOfRange):
            to_layout(layout, -1)
        with pytest.raises(PositionOutOfRange):
            to_layout(layout, 10_000_001)
        with pytest.raises(PositionOutOfRange):
            from_layout(layout, -0.5)

    def test_identity_is_exact(self, toy, s0):
        rng = random.Random(13)
        layout = build_layout(toy, s0)
        bpu = layout.config.bp_per_unit
        for _ in range(2000):
            x = rng.randrange(0, 10_000_001)
            assert to_layout(layout, x) == x / bpu

    def test_inverse_within_1bp_random_states(self):
        rng = random.Random(29)
        for _ in range(60):
            assembly = make_random_assembly(rng)
            chrom = assembly.chromosomes[0]
            state = random_fold_state(rng, assembly, chrom.id)
            layout = build_layout(assembly, state)
            for _ in range(40):
                x = rng.randrange(0, chrom.length_bp)
                assert abs(from_layout(layout, to_layout(layout, x)) - x) <= 1

    def test_monotone_random_states(self):
        rng = random.Random(31)
        for _ in range(40):
            assembly = make_random_assembly(rng)
            chrom = assembly.chromosomes[0]
            state = random_fold_state(rng, assembly, chrom.id)
            layout = build_layout(assembly, state)
            xs = sorted(rng.randrange(0, chrom.length_bp) for _ in range(60))
            ys = [to_layout(layout, x) for x in xs]
            for (x1, y1), (x2, y2) in zip(zip(xs, ys), zip(xs[1:], ys[1:])):
                assert y1 <= y2
                if x1 != x2:
                    assert y1 < y2

    def test_tiling_conservation_random_states(self):
        rng = random.Random(37)
        for _ in range(40):
            assembly = make_random_assembly(rng)
            chrom = assembly.chromosomes[0]
            layout = build_layout(assembly, random_fold_state(rng, assembly, chrom.id))
            assert sum(leaf.layout_length for leaf in layout.leaves) == layout.total_length
            assert sum(leaf.genomic.length for leaf in layout.leaves) == chrom.length_bp
            for a, b in zip(layout.leaves, layout.leaves[1:]):
                assert a.layout_end == b.layout_start

    def test_compression_bound(self):
        # the minimum width wins for tiny regions, so the <= closed bound
        # applies where the region is wide enough to actually shrink
        rng = random.Random(41)
        for _ in range(30):
            assembly = make_random_assembly(rng)
            chrom = assembly.chromosomes[0]
            state = initial_state(chrom)
            cfg = state.config
            for region in chrom.regions:
                state = compress_region(chrom, state, region.name)
            layout = build_layout(assembly, state)
            for leaf in layout.leaves:
                closed = leaf.genomic.length / cfg.bp_per_unit
                assert leaf.layout_length >= cfg.min_compressed_width
                if closed >= cfg.min_compressed_width:
                    assert leaf.layout_length <= closed

    def test_right_endpoint_round_trips(self, toy, t1, s0):
        state = compress_region(t1, s0, "q11")
        layout = build_layout(toy, state)
        assert from_layout(layout, to_layout(layout, 10_000_000)) == 10_000_000


class TestEmbeddedRows:
    def test_plus_gene_label(self, toy, t1, s0):
        state = open_subsection(t1, open_region(t1, s0, "q12"), "q12.1")
        rows = embedded_gene_rows(toy, state, "q12.1")
        by_symbol = {r.gene.symbol: r for r in rows}
        assert by_symbol["GENE9"].label == "7100001 GENE9"
        assert by_symbol["GENE9"].reading_direction is ReadingDirection.BOTTOM_UP

    def test_minus_gene_label(self, toy, t1):
        state = open_subsection(t1, open_region(t1, initial_state(t1), "p11"), "p11.s1")
        rows = embedded_gene_rows(toy, state, "p11.s1")
        by_symbol = {r.gene.symbol: r for r in rows}
        assert by_symbol["GENE2"].label == "GENE2 42000"
        assert by_symbol["GENE2"].reading_direction is ReadingDirection.TOP_DOWN
        assert by_symbol["GENE1"].label == "1234 GENE1"

    def test_rows_ordered_and_indexed(self, toy, t1, s0):
        state = open_subsection(t1, open_region(t1, s0, "q12"), "q12.1")
        rows = embedded_gene_rows(toy, state, "q12.1")
        assert [r.gene.symbol for r in rows] == ["GENE9", "GENE10", "GENE11"]
        assert [r.row_index for r in rows] == [0, 1, 2]

    def test_markers_on_rows(self, toy, t1, s0):
        state = open_subsection(t1, open_region(t1, s0, "q12"), "q12.1")
        rows = embedded_gene_rows(toy, state, "q12.1")
        assert {r.gene.symbol: set(r.markers) for r in rows} == {
            "GENE9": {"A"},
            "GENE10": set(),
            "GENE11": {"C"},
        }

    def test_zero_gene_subsection(self, toy, t1, s0):
        state = open_subsection(t1, open_region(t1, s0, "q12"), "q12.2")
        assert embedded_gene_rows(toy, state, "q12.2") == []

    def test_closed_subsection_raises(self, toy, t1, s0):
        state = open_region(t1, s0, "q12")
        with pytest.raises(SubsectionNotOpen):
            embedded_gene_rows(toy, state, "q12.1")


class TestConfig:
    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            LayoutConfig(bp_per_unit=0)
        with pytest.raises(ValueError):
            LayoutConfig(compress_factor=1.0)

    def test_state_value_semantics(self, t1):
        a = initial_state(t1)
        b = FoldState("T1")
        assert a == b
