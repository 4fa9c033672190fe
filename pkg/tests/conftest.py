from pathlib import Path

import pytest

from foldscope.ingest import parse_cytobands, parse_gene_table, parse_phenotype_table
from foldscope.model import build_assembly

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "grch38"

# Toy chromosome T1: 10 Mbp, regions p11 [0,4e6), q11 [4e6,7e6), q12 [7e6,1e7)
# with q12 split into two sub-bands. T2 exists for tie cases.
TOY_CYTOBANDS = (
    "chrT1\t0\t4000000\tp11\tgneg\n"
    "chrT1\t4000000\t7000000\tq11\tgpos50\n"
    "chrT1\t7000000\t8500000\tq12.1\tgneg\n"
    "chrT1\t8500000\t10000000\tq12.2\tgpos25\n"
    "chrT2\t0\t2000000\tp11\tgneg\n"
    "chrT2\t2000000\t4000000\tq11\tgpos100\n"
)

# 1-based inclusive coordinates, as the file format demands.
TOY_GENES = (
    "chrom\tstart\tend\tstrand\tsymbol\n"
    "chrT1\t1234\t5678\t+\tGENE1\n"
    "chrT1\t42000\t47000\t-\tGENE2\n"
    "chrT1\t100001\t105000\t+\tGENE3\n"
    "chrT1\t200001\t205000\t+\tGENE4\n"
    "chrT1\t4100001\t4105000\t-\tGENE5\n"
    "chrT1\t4200001\t4205000\t-\tGENE6\n"
    "chrT1\t4300001\t4305000\t+\tGENE7\n"
    "chrT1\t5000001\t5005000\t-\tGENE8\n"
    "chrT1\t7100001\t7105000\t+\tGENE9\n"
    "chrT1\t7300001\t7305000\t-\tGENE10\n"
    "chrT1\t8000001\t8005000\t+\tGENE11\n"
    "chrT2\t100001\t101000\t+\tGENE12\n"
    "chrT2\t200001\t201000\t+\tGENE13\n"
    "chrT2\t300001\t301000\t-\tGENE14\n"
    "chrT2\t400001\t401000\t-\tGENE15\n"
)

TOY_PHENOTYPES = (
    "phenotype,color,symbol\n"
    "A,#FF0000,GENE1\n"
    "A,#FF0000,GENE9\n"
    "B,#00FF00,GENE5\n"
    "C,#0000FF,GENE11\n"
)


@pytest.fixture(scope="session")
def toy_rows():
    return (
        parse_cytobands(TOY_CYTOBANDS.splitlines()),
        parse_gene_table(TOY_GENES.splitlines()),
        parse_phenotype_table(TOY_PHENOTYPES.splitlines()),
    )


@pytest.fixture(scope="session")
def toy(toy_rows):
    bands, genes, phenotypes = toy_rows
    return build_assembly(bands, genes, phenotypes)


@pytest.fixture(scope="session")
def full_rows():
    return (
        parse_cytobands((DATA_DIR / "cytobands.tsv").read_text().splitlines()),
        parse_gene_table((DATA_DIR / "genes.tsv").read_text().splitlines()),
        parse_phenotype_table((DATA_DIR / "phenotypes.csv").read_text().splitlines()),
    )


@pytest.fixture(scope="session")
def full_assembly(full_rows):
    bands, genes, phenotypes = full_rows
    return build_assembly(bands, genes, phenotypes)
