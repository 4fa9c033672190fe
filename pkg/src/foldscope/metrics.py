"""Exploration metrics computed from interaction event logs.

Coverage counts the querying kinds only (scope placements and region or
subsection opens); compressing and window moves hide detail rather than
reveal it and do not count.
"""
from __future__ import annotations

import logging

from .errors import IntervalOutOfRange
from .events import EventLog, EventKind, QUERY_KINDS

log = logging.getLogger(__name__)


def interval_union_length(intervals) -> int:
    """Total length of the union of half-open integer intervals."""
    spans = sorted((s, e) for s, e in intervals if e > s)
    total = 0
    cur_start, cur_end = None, None
    for start, end in spans:
        if cur_end is None or start > cur_end:
            if cur_end is not None:
                total += cur_end - cur_start
            cur_start, cur_end = start, end
        elif end > cur_end:
            cur_end = end
    if cur_end is not None:
        total += cur_end - cur_start
    return total


def _query_intervals(event_log: EventLog, chromosome_length: int) -> list[tuple[int, int]]:
    out = []
    for event in event_log:
        if event.kind not in QUERY_KINDS or event.interval is None:
            continue
        start, end = event.interval
        if not (0 <= start <= end <= chromosome_length):
            raise IntervalOutOfRange(
                f"event interval [{start}, {end}) outside chromosome of {chromosome_length} bp"
            )
        out.append((start, end))
    return out


def exploration_percentage(event_log: EventLog, chromosome_length: int) -> float:
    """Fraction of the chromosome touched by querying events, in [0, 1]."""
    if chromosome_length <= 0:
        raise ValueError("chromosome_length must be positive")
    covered = interval_union_length(_query_intervals(event_log, chromosome_length))
    return covered / chromosome_length


def time_to_first_hit(event_log: EventLog, target_region_span) -> int | None:
    """Timestamp of the first querying event whose interval covers the whole
    target span; None if it is never fully covered."""
    target_start, target_end = target_region_span
    for event in event_log:
        if event.kind not in QUERY_KINDS or event.interval is None:
            continue
        start, end = event.interval
        if start <= target_start and end >= target_end:
            return event.t_ms
    return None


def analysis_time(event_log: EventLog, span_a, span_b) -> int | None:
    """Milliseconds between locating the later of the two regions and
    submitting the answer; None when either was never located or no answer
    was submitted. Expects at most one answer submission in the log."""
    answers = [e for e in event_log if e.kind is EventKind.ANSWER_SUBMIT]
    if len(answers) > 1:
        raise ValueError(f"log contains {len(answers)} answer submissions, expected at most one")
    if not answers:
        return None
    hit_a = time_to_first_hit(event_log, span_a)
    hit_b = time_to_first_hit(event_log, span_b)
    if hit_a is None or hit_b is None:
        return None
    located = max(hit_a, hit_b)
    if answers[0].t_ms < located:
        log.warning(
            "answer at t=%dms precedes locating both regions (t=%dms); malformed sequence",
            answers[0].t_ms,
            located,
        )
        return None
    return answers[0].t_ms - located
