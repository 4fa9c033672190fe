import random

import pytest

from foldscope.errors import (
    InsetLocked,
    PositionOutOfRange,
    RegionNotInScope,
    UnknownInset,
    ZeroLengthScope,
)
from foldscope.insets import (
    Frame,
    GeneEntry,
    RegionHeaderEntry,
    content_entries,
    create_inset,
    inset_content,
    scroll,
    set_frame,
    set_locked,
    set_scope,
    toggle_region,
)
from foldscope.session import new_session


@pytest.fixture
def session(toy):
    return new_session(toy, "test-session")


class TestCreate:
    def test_scope_over_two_regions(self, session):
        inset = create_inset(session, "T1", (5_000_000, 8_000_000))
        entries = content_entries(session.assembly, inset)
        headers = [e for e in entries if isinstance(e, RegionHeaderEntry)]
        assert [h.region_name for h in headers] == ["q11", "q12"]

    def test_scope_inside_one_region_reports_full_count(self, session):
        inset = create_inset(session, "T1", (4_500_000, 4_600_000))
        entries = content_entries(session.assembly, inset)
        assert len(entries) == 1
        assert entries[0].region_name == "q11"
        assert entries[0].gene_count == 4  # full region, not the clipped part

    def test_identical_scopes_independent(self, session):
        a = create_inset(session, "T1", (0, 1_000_000))
        b = create_inset(session, "T1", (0, 1_000_000))
        assert a.id != b.id
        toggle_region(session, a.id, "p11")
        assert session.insets[b.id].open_regions == frozenset()

    def test_fresh_inset_defaults(self, session):
        inset = create_inset(session, "T1", (0, 1_000_000))
        assert inset.scroll_offset == 0
        assert inset.locked is False
        assert inset.open_regions == frozenset()

    def test_default_frames_tile(self, session):
        a = create_inset(session, "T1", (0, 1_000_000))
        b = create_inset(session, "T1", (0, 1_000_000))
        assert a.frame.y == b.frame.y
        assert b.frame.x > a.frame.x

    def test_zero_length_scope(self, session):
        with pytest.raises(ZeroLengthScope):
            create_inset(session, "T1", (5, 5))

    def test_out_of_range_scope(self, session):
        with pytest.raises(PositionOutOfRange):
            create_inset(session, "T1", (0, 10_000_001))


class TestMutators:
    def test_locked_frame_rejected(self, session):
        inset = create_inset(session, "T1", (0, 1_000_000))
        set_locked(session, inset.id, True)
        with pytest.raises(InsetLocked):
            set_frame(session, inset.id, Frame(1, 2, 3, 4))

    def test_unlock_allows_frame_again(self, session):
        inset = create_inset(session, "T1", (0, 1_000_000))
        set_locked(session, inset.id, True)
        set_locked(session, inset.id, False)
        moved = set_frame(session, inset.id, Frame(1, 2, 3, 4))
        assert moved.frame == Frame(1, 2, 3, 4)

    def test_lock_safety_across_operations(self, session):
        inset = create_inset(session, "T1", (0, 8_000_000))
        frame = set_locked(session, inset.id, True).frame
        set_scope(session, inset.id, (0, 2_000_000))
        scroll(session, inset.id, 5)
        toggle_region(session, inset.id, "p11")
        with pytest.raises(InsetLocked):
            set_frame(session, inset.id, Frame(9, 9, 9, 9))
        assert session.insets[inset.id].frame == frame

    def test_scroll_clamps(self, session):
        inset = create_inset(session, "T1", (0, 10_000_000))
        total = len(content_entries(session.assembly, inset))
        assert scroll(session, inset.id, 999).scroll_offset == total - 1
        assert scroll(session, inset.id, -3).scroll_offset == 0

    def test_enlarging_scope_never_drops_entries(self, session):
        rng = random.Random(17)
        inset = create_inset(session, "T1", (4_000_000, 4_100_000))
        prev = len(content_entries(session.assembly, inset))
        for _ in range(20):
            start = session.insets[inset.id].scope.interval_bp.start
            end = session.insets[inset.id].scope.interval_bp.end
            start = max(0, start - rng.randrange(0, 500_000))
            end = min(10_000_000, end + rng.randrange(0, 1_000_000))
            updated = set_scope(session, inset.id, (start, end))
            now = len(content_entries(session.assembly, updated))
            assert now >= prev
            prev = now

    def test_toggle_requires_intersection(self, session):
        inset = create_inset(session, "T1", (0, 1_000_000))
        with pytest.raises(RegionNotInScope):
            toggle_region(session, inset.id, "q12")

    def test_toggle_twice_restores(self, session):
        inset = create_inset(session, "T1", (0, 1_000_000))
        toggle_region(session, inset.id, "p11")
        assert session.insets[inset.id].open_regions == {"p11"}
        toggle_region(session, inset.id, "p11")
        assert session.insets[inset.id].open_regions == frozenset()

    def test_unknown_inset(self, session):
        with pytest.raises(UnknownInset):
            scroll(session, "nope", 0)

    def test_mutating_one_inset_leaves_others_alone(self, session):
        a = create_inset(session, "T1", (0, 9_000_000))
        b = create_inset(session, "T1", (0, 9_000_000))
        before = session.insets[b.id]
        set_scope(session, a.id, (0, 500_000))
        toggle_region(session, a.id, "p11")
        scroll(session, a.id, 2)
        set_locked(session, a.id, True)
        assert session.insets[b.id] == before


class TestContent:
    def test_full_page_when_viewport_large(self, session):
        inset = create_inset(session, "T1", (0, 10_000_000))
        page = inset_content(session, inset.id, viewport_rows=50)
        assert page.total_entries == 3
        assert len(page.entries) == 3

    def test_page_starts_at_scroll_offset(self, session):
        inset = create_inset(session, "T1", (0, 10_000_000))
        full = content_entries(session.assembly, inset)
        scroll(session, inset.id, 2)
        page = inset_content(session, inset.id, viewport_rows=10)
        assert list(page.entries) == full[2:]

    def test_opened_region_gene_rows_follow_header(self, session):
        inset = create_inset(session, "T1", (7_000_000, 10_000_000))
        toggle_region(session, inset.id, "q12")
        page = inset_content(session, inset.id, viewport_rows=20)
        assert isinstance(page.entries[0], RegionHeaderEntry)
        genes = [e for e in page.entries if isinstance(e, GeneEntry)]
        assert [g.symbol for g in genes] == ["GENE9", "GENE10", "GENE11"]
        assert genes[0].label == "7100001 GENE9"

    def test_gene_rows_are_full_region_even_when_clipped(self, session):
        inset = create_inset(session, "T1", (7_100_000, 7_200_000))
        toggle_region(session, inset.id, "q12")
        page = inset_content(session, inset.id, viewport_rows=20)
        genes = [e for e in page.entries if isinstance(e, GeneEntry)]
        assert len(genes) == 3

    def test_headers_carry_phenotypes(self, session):
        inset = create_inset(session, "T1", (7_000_000, 10_000_000))
        page = inset_content(session, inset.id, viewport_rows=5)
        assert page.entries[0].phenotypes == ("A", "C")

    def test_region_in_content_iff_intersecting(self, session, toy):
        rng = random.Random(23)
        chrom = toy.chromosome("T1")
        inset = create_inset(session, "T1", (0, 1))
        for _ in range(100):
            start = rng.randrange(0, 9_999_999)
            end = rng.randrange(start + 1, 10_000_001)
            updated = set_scope(session, inset.id, (start, end))
            names = {e.region_name for e in content_entries(session.assembly, updated)}
            expected = {
                r.name
                for r in chrom.regions
                if r.span_bp.start < end and start < r.span_bp.end
            }
            assert names == expected

    def test_pagination_reproduces_all_entries_once(self, session):
        inset = create_inset(session, "T1", (0, 10_000_000))
        toggle_region(session, inset.id, "q12")
        toggle_region(session, inset.id, "p11")
        full = content_entries(session.assembly, session.insets[inset.id])
        for viewport in (1, 2, 3, 5, 100):
            pages = []
            offset = 0
            while offset < len(full):
                scroll(session, inset.id, offset)
                pages.extend(inset_content(session, inset.id, viewport).entries)
                offset += viewport
            assert pages == full

    def test_viewport_must_be_positive(self, session):
        inset = create_inset(session, "T1", (0, 1_000_000))
        with pytest.raises(ValueError):
            inset_content(session, inset.id, 0)
