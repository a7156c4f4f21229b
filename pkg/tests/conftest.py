import numpy as np
import pytest

from relieve.datamodel import parse_dataset
from relieve.probstats import EmpiricalPDM

NAND_CSV = "f1,f2,f_r,C\n0,0,1,0\n0,1,1,0\n1,0,1,0\n1,1,0,1\n"
NAND_HINT = {"f1": "nominal", "f2": "nominal", "f_r": "nominal"}


@pytest.fixture
def nand_table():
    return parse_dataset(NAND_CSV, NAND_HINT, name="nand_table")


@pytest.fixture
def nand_pdm(nand_table):
    return EmpiricalPDM.from_dataset(nand_table)


def random_pdm(rng, n_vars, card=2, sparsity=0.0, names=None):
    """Random joint over n_vars variables; a share of cells is zeroed to create structure."""
    names = names or [f"V{i}" for i in range(n_vars)]
    p = rng.random((card,) * n_vars)
    if sparsity:
        p[rng.random(p.shape) < sparsity] = 0.0
        if p.sum() == 0:
            p.flat[0] = 1.0
    return EmpiricalPDM(names, [tuple(str(v) for v in range(card))] * n_vars, p / p.sum())


ACCEPTANCE_LINES: list[str] = []


def record(criterion, ok, detail):
    status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
    ACCEPTANCE_LINES.append(f"{status}  criterion {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
