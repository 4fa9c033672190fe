"""Command line surface.

Exit codes: 1 I/O problems, 2 parse errors, 3 validation errors,
4 infeasible task generation.
"""
from __future__ import annotations

import json
import sys

import click

from .errors import FoldscopeError, NoFeasibleTask, ParseError
from .events import EventLog
from .ingest import parse_cytobands, parse_gene_table, parse_phenotype_table
from .model import (
    GenomeAssembly,
    ModelConfig,
    assembly_from_json,
    assembly_to_json,
    build_assembly,
)
from .metrics import analysis_time, exploration_percentage, time_to_first_hit
from .session import FOLD_VERBS, apply_fold, new_session
from .svg import render_svg
from .tasks import TaskKind, TaskSpec, check_answer, generate_task, oracle_answer

EXIT_IO = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_INFEASIBLE = 4


def _fail(exc: BaseException) -> "NoReturn":  # noqa: F821 - doc only
    click.echo(f"error: {exc}", err=True)
    if isinstance(exc, OSError):
        sys.exit(EXIT_IO)
    if isinstance(exc, (ParseError, json.JSONDecodeError)):
        sys.exit(EXIT_PARSE)
    if isinstance(exc, NoFeasibleTask):
        sys.exit(EXIT_INFEASIBLE)
    sys.exit(EXIT_VALIDATION)


def _read_lines(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return fh.read().splitlines()


def _load_assembly(path: str) -> GenomeAssembly:
    with open(path, encoding="utf-8") as fh:
        return assembly_from_json(json.load(fh))


@click.group()
def main():
    """Multi-focus genome ideogram engine."""


@main.command()
@click.option("--cytobands", required=True, help="UCSC-style cytoband TSV")
@click.option("--genes", required=True, help="gene table TSV")
@click.option("--phenotypes", default=None, help="phenotype CSV")
@click.option("--name", default="assembly", help="assembly name")
@click.option("--out", default=None, help="write the built assembly JSON here")
@click.option("--strict/--lenient", default=True, help="abort on the first bad line or skip-and-report")
def ingest(cytobands, genes, phenotypes, name, out, strict):
    """Validate input files, build the assembly, and report what was built."""
    try:
        issues: list = []
        band_rows = parse_cytobands(_read_lines(cytobands), strict=strict, issues=issues)
        gene_rows = parse_gene_table(_read_lines(genes), strict=strict, issues=issues)
        phenotype_rows = []
        if phenotypes:
            phenotype_rows = parse_phenotype_table(_read_lines(phenotypes), strict=strict, issues=issues)
        assembly = build_assembly(band_rows, gene_rows, phenotype_rows, ModelConfig(assembly_name=name))
    except (OSError, FoldscopeError) as exc:
        _fail(exc)

    if out:
        # write the artifact before reporting so a truncated pipe can't lose it
        try:
            with open(out, "w", encoding="utf-8") as fh:
                json.dump(assembly_to_json(assembly), fh, sort_keys=True)
        except OSError as exc:
            _fail(exc)

    click.echo(f"assembly: {assembly.name}")
    click.echo(f"chromosomes: {len(assembly.chromosomes)}")
    click.echo(f"total_length_bp: {assembly.total_length_bp}")
    click.echo(f"gene_count: {assembly.gene_count}")
    if assembly.phenotypes:
        click.echo("phenotypes: " + ", ".join(p.name for p in assembly.phenotypes))
    for chrom in assembly.chromosomes:
        click.echo(
            f"  {chrom.id:>2}  {chrom.length_bp:>11} bp  "
            f"{len(chrom.regions):>3} regions  {chrom.gene_count:>5} genes"
        )
    for issue in issues:
        click.echo(f"  skipped line {issue.line_no}: {issue.message}", err=True)
    if out:
        click.echo(f"wrote {out}")


@main.command()
@click.option("--assembly", "assembly_path", required=True, help="assembly JSON from `ingest --out`")
@click.option("--chromosome", required=True)
@click.option("--fold-script", default=None, help="line-oriented fold verbs: '<verb> <target>'")
@click.option("--out", required=True, help="output SVG path")
def render(assembly_path, chromosome, fold_script, out):
    """Render one chromosome's current layout to SVG (byte-stable)."""
    try:
        assembly = _load_assembly(assembly_path)
        session = new_session(assembly, "cli")
        if fold_script:
            for line_no, line in enumerate(_read_lines(fold_script), start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                if len(parts) != 2 or parts[0] not in FOLD_VERBS:
                    raise ParseError(f"expected '<verb> <target>' with verb in {FOLD_VERBS}", line_no)
                apply_fold(session, chromosome, parts[0], parts[1])
        document = render_svg(assembly, session.fold_state(chromosome))
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(document)
    except (OSError, FoldscopeError) as exc:
        _fail(exc)
    click.echo(f"wrote {out}")


@main.group()
def task():
    """Generate query tasks and check answers."""


@task.command()
@click.option("--assembly", "assembly_path", required=True)
@click.option("--kind", type=click.Choice([k.value for k in TaskKind]), required=True)
@click.option("--seed", type=int, default=0)
@click.option("--out", default=None, help="write the task JSON here instead of stdout")
def generate(assembly_path, kind, seed, out):
    """Generate a solvable task, deterministic in --seed."""
    try:
        assembly = _load_assembly(assembly_path)
        spec = generate_task(assembly, TaskKind(kind), seed)
    except (OSError, FoldscopeError) as exc:
        _fail(exc)
    text = json.dumps(spec.to_json(), sort_keys=True)
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            _fail(exc)
        click.echo(f"wrote {out}")
    else:
        click.echo(text)


@task.command()
@click.option("--assembly", "assembly_path", required=True)
@click.option("--task", "task_path", required=True, help="task JSON from `task generate`")
@click.option("--answer", required=True, help="answer as JSON (a bare string also works)")
@click.option("--show-oracle", is_flag=True, help="also print the oracle answer")
def check(assembly_path, task_path, answer, show_oracle):
    """Check an answer against the task oracle."""
    try:
        assembly = _load_assembly(assembly_path)
        with open(task_path, encoding="utf-8") as fh:
            spec = TaskSpec.from_json(json.load(fh))
        try:
            value = json.loads(answer)
        except json.JSONDecodeError:
            value = answer
        if isinstance(value, list):
            value = tuple(value)
        correct = check_answer(assembly, spec, value)
        if show_oracle:
            oracle = oracle_answer(assembly, spec)
            if isinstance(oracle, tuple):
                oracle = [d.value for d in oracle]
            click.echo(f"oracle: {json.dumps(oracle)}")
    except (OSError, FoldscopeError) as exc:
        _fail(exc)
    click.echo("correct" if correct else "incorrect")


@main.command()
@click.option("--log", "log_path", required=True, help="event log, one JSON object per line")
@click.option("--assembly", "assembly_path", required=True)
@click.option("--chromosome", required=True)
@click.option("--task", "task_path", default=None, help="task JSON for task-specific timings")
def metrics(log_path, assembly_path, chromosome, task_path):
    """Exploration metrics from an event log."""
    try:
        assembly = _load_assembly(assembly_path)
        event_log = EventLog.from_jsonl(_read_lines(log_path))
        chrom = assembly.chromosome(chromosome)
        click.echo(f"exploration_percentage\t{exploration_percentage(event_log, chrom.length_bp):.3f}")
        if task_path:
            with open(task_path, encoding="utf-8") as fh:
                spec = TaskSpec.from_json(json.load(fh))
            if spec.kind is TaskKind.IDENTIFY:
                target = chrom.region(oracle_answer(assembly, spec))
                hit = time_to_first_hit(event_log, (target.span_bp.start, target.span_bp.end))
                click.echo(f"time_to_first_hit_ms\t{hit if hit is not None else 'none'}")
            elif spec.kind is TaskKind.COMPARE:
                region_a = chrom.region(spec.params.region_a)
                region_b = chrom.region(spec.params.region_b)
                span_a = (region_a.span_bp.start, region_a.span_bp.end)
                span_b = (region_b.span_bp.start, region_b.span_bp.end)
                for name, span in ((spec.params.region_a, span_a), (spec.params.region_b, span_b)):
                    hit = time_to_first_hit(event_log, span)
                    click.echo(f"time_to_first_hit_ms[{name}]\t{hit if hit is not None else 'none'}")
                elapsed = analysis_time(event_log, span_a, span_b)
                click.echo(f"analysis_time_ms\t{elapsed if elapsed is not None else 'none'}")
    except (OSError, FoldscopeError, ValueError) as exc:
        _fail(exc)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
@click.option("--data-dir", default=None, help="persistence root (default: $FOLDSCOPE_DATA_DIR)")
def serve(host, port, data_dir):
    """Start the HTTP session service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(data_dir), host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
