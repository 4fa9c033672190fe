"""foldscope: multi-focus querying of genome ideograms.

Ingests cytoband, gene, and phenotype tables into a proportionally scaled
chromosome model, folds chromosomes open/closed/compressed through a
monotone piecewise-linear layout transform, populates scope-driven inset
windows, and scores the three built-in query task kinds with deterministic
oracles plus exploration metrics over interaction event logs.
"""
from .errors import FoldscopeError
from .fold import (
    FoldState,
    LayoutConfig,
    LayoutMap,
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
from .ingest import parse_cytobands, parse_gene_table, parse_phenotype_table
from .insets import Frame, Inset, create_inset, inset_content
from .model import (
    GenomeAssembly,
    ModelConfig,
    build_assembly,
    gene_count_bin,
    genes_in,
    markers,
    region_of,
)
from .session import Session, apply_fold, new_session
from .tasks import Dominance, TaskKind, TaskSpec, check_answer, generate_task

__version__ = "0.1.0"

__all__ = [
    "Dominance",
    "FoldState",
    "FoldscopeError",
    "Frame",
    "GenomeAssembly",
    "Inset",
    "LayoutConfig",
    "LayoutMap",
    "ModelConfig",
    "Session",
    "TaskKind",
    "TaskSpec",
    "apply_fold",
    "build_assembly",
    "build_layout",
    "check_answer",
    "close_region",
    "close_subsection",
    "compress_region",
    "create_inset",
    "embedded_gene_rows",
    "from_layout",
    "gene_count_bin",
    "generate_task",
    "genes_in",
    "initial_state",
    "inset_content",
    "markers",
    "new_session",
    "open_region",
    "open_subsection",
    "parse_cytobands",
    "parse_gene_table",
    "parse_phenotype_table",
    "region_of",
    "to_layout",
    "uncompress_region",
]
