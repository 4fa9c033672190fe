"""Query tasks over an assembly and their deterministic answer oracles.

Three task kinds: identify the region with a given gene count, compare the
strand-orientation dominance of two regions, and summarize which of a set
of phenotypes dominates a chromosome. Task generation is seeded and
reproducible; every generated task has a unique oracle answer.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .errors import (
    AnswerTypeMismatch,
    NoFeasibleTask,
    UnknownRegion,
)
from .model import GenomeAssembly, Region, Strand


class TaskKind(str, Enum):
    IDENTIFY = "identify"
    COMPARE = "compare"
    SUMMARIZE = "summarize"


class Dominance(str, Enum):
    PLUS = "plus"
    MINUS = "minus"
    TIE = "tie"


@dataclass(frozen=True)
class IdentifyParams:
    target_gene_count: int


@dataclass(frozen=True)
class CompareParams:
    region_a: str
    region_b: str


@dataclass(frozen=True)
class SummarizeParams:
    phenotypes: tuple[str, ...]


@dataclass(frozen=True)
class TaskSpec:
    kind: TaskKind
    chromosome_id: str
    params: IdentifyParams | CompareParams | SummarizeParams

    def to_json(self) -> dict:
        doc: dict = {"kind": self.kind.value, "chromosome": self.chromosome_id}
        if isinstance(self.params, IdentifyParams):
            doc["target_gene_count"] = self.params.target_gene_count
        elif isinstance(self.params, CompareParams):
            doc["region_a"] = self.params.region_a
            doc["region_b"] = self.params.region_b
        else:
            doc["phenotypes"] = list(self.params.phenotypes)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "TaskSpec":
        kind = TaskKind(doc["kind"])
        if kind is TaskKind.IDENTIFY:
            params: IdentifyParams | CompareParams | SummarizeParams = IdentifyParams(
                int(doc["target_gene_count"])
            )
        elif kind is TaskKind.COMPARE:
            params = CompareParams(doc["region_a"], doc["region_b"])
        else:
            params = SummarizeParams(tuple(doc["phenotypes"]))
        return cls(kind, doc["chromosome"], params)


@dataclass(frozen=True)
class PhenotypeSummary:
    winner: str
    counts: dict[str, int]
    tied: bool


# -- oracles -------------------------------------------------------------------

def find_regions_with_gene_count(
    assembly: GenomeAssembly, chromosome_id: str, n: int
) -> list[Region]:
    """All regions whose gene count equals n, in genomic order."""
    if n < 0:
        raise ValueError("gene count must be non-negative")
    chrom = assembly.chromosome(chromosome_id)
    return [r for r in chrom.regions if r.gene_count == n]


def orientation_dominance(
    assembly: GenomeAssembly, chromosome_id: str, region_name: str
) -> Dominance:
    """Which strand has more genes starting in the region; ties are explicit."""
    chrom = assembly.chromosome(chromosome_id)
    region = chrom.region(region_name)
    if region is None:
        raise UnknownRegion(f"no region {region_name!r} on chromosome {chromosome_id}")
    plus = sum(1 for g in region.genes if g.strand is Strand.PLUS)
    minus = region.gene_count - plus
    if plus > minus:
        return Dominance.PLUS
    if minus > plus:
        return Dominance.MINUS
    return Dominance.TIE


def dominant_phenotype(
    assembly: GenomeAssembly, chromosome_id: str, phenotype_names
) -> PhenotypeSummary:
    """Per-phenotype annotated-gene counts on one chromosome. Ties report
    tied=True with the lexicographically smallest name as winner."""
    chrom = assembly.chromosome(chromosome_id)
    counts: dict[str, int] = {}
    for name in phenotype_names:
        phenotype = assembly.phenotype(name)
        counts[name] = sum(1 for g in chrom.genes if g.symbol in phenotype.gene_symbols)
    best = max(counts.values())
    winners = sorted(name for name, c in counts.items() if c == best)
    return PhenotypeSummary(winner=winners[0], counts=counts, tied=len(winners) > 1)


# -- generation ------------------------------------------------------------------

def generate_task(assembly: GenomeAssembly, kind: TaskKind, seed: int) -> TaskSpec:
    """Deterministically generate a solvable task of the given kind."""
    rng = random.Random(seed)
    order = list(assembly.chromosomes)
    rng.shuffle(order)
    if kind is TaskKind.IDENTIFY:
        return _generate_identify(order, rng)
    if kind is TaskKind.COMPARE:
        return _generate_compare(assembly, order, rng)
    return _generate_summarize(assembly, order, rng)


def _generate_identify(order, rng) -> TaskSpec:
    for chrom in order:
        histogram: dict[int, int] = {}
        for region in chrom.regions:
            histogram[region.gene_count] = histogram.get(region.gene_count, 0) + 1
        unique = sorted(c for c, k in histogram.items() if k == 1)
        candidates = [c for c in unique if c > 0] or unique
        if candidates:
            return TaskSpec(TaskKind.IDENTIFY, chrom.id, IdentifyParams(rng.choice(candidates)))
    raise NoFeasibleTask("no chromosome has a gene count achieved by exactly one region")


def _generate_compare(assembly, order, rng) -> TaskSpec:
    for chrom in order:
        by_arm: dict[str, list[str]] = {"p": [], "q": []}
        for region in chrom.regions:
            if orientation_dominance(assembly, chrom.id, region.name) is not Dominance.TIE:
                by_arm[region.arm].append(region.name)
        if by_arm["p"] and by_arm["q"]:
            return TaskSpec(
                TaskKind.COMPARE,
                chrom.id,
                CompareParams(rng.choice(by_arm["p"]), rng.choice(by_arm["q"])),
            )
    raise NoFeasibleTask("no chromosome has non-tied regions on both arms")


def _generate_summarize(assembly, order, rng) -> TaskSpec:
    names = sorted(p.name for p in assembly.phenotypes)
    if len(names) < 3:
        raise NoFeasibleTask("need at least three phenotypes to build a summarize task")
    for chrom in order:
        feasible = []
        for trio in combinations(names, 3):
            counts = dominant_phenotype(assembly, chrom.id, trio).counts
            values = list(counts.values())
            if len(set(values)) == 3 and max(values) > 0:
                feasible.append(trio)
        if feasible:
            return TaskSpec(TaskKind.SUMMARIZE, chrom.id, SummarizeParams(rng.choice(feasible)))
    raise NoFeasibleTask("no chromosome orders three phenotypes strictly")


# -- answers ---------------------------------------------------------------------

def oracle_answer(assembly: GenomeAssembly, task: TaskSpec):
    """The correct answer for a task, as check_answer expects it."""
    if task.kind is TaskKind.IDENTIFY:
        regions = find_regions_with_gene_count(
            assembly, task.chromosome_id, task.params.target_gene_count
        )
        if len(regions) != 1:
            raise NoFeasibleTask(
                f"target count {task.params.target_gene_count} matches {len(regions)} regions"
            )
        return regions[0].name
    if task.kind is TaskKind.COMPARE:
        return (
            orientation_dominance(assembly, task.chromosome_id, task.params.region_a),
            orientation_dominance(assembly, task.chromosome_id, task.params.region_b),
        )
    return dominant_phenotype(assembly, task.chromosome_id, task.params.phenotypes).winner


def _coerce_dominance(value) -> Dominance:
    if isinstance(value, Dominance):
        return value
    if isinstance(value, str):
        try:
            return Dominance(value.lower())
        except ValueError:
            pass
    raise AnswerTypeMismatch(f"{value!r} is not a strand dominance (plus/minus/tie)")


def check_answer(assembly: GenomeAssembly, task: TaskSpec, answer) -> bool:
    """Whether an answer matches the task's oracle."""
    if task.kind is TaskKind.IDENTIFY:
        if not isinstance(answer, str):
            raise AnswerTypeMismatch("identify tasks are answered with a region name")
        return answer == oracle_answer(assembly, task)
    if task.kind is TaskKind.COMPARE:
        if isinstance(answer, str) or not hasattr(answer, "__len__") or len(answer) != 2:
            raise AnswerTypeMismatch("compare tasks are answered with a pair of dominances")
        given = (_coerce_dominance(answer[0]), _coerce_dominance(answer[1]))
        return given == oracle_answer(assembly, task)
    if not isinstance(answer, str):
        raise AnswerTypeMismatch("summarize tasks are answered with a phenotype name")
    return answer == oracle_answer(assembly, task)
