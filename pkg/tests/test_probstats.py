import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relieve.datamodel import UsageError, build_dataset, parse_dataset
from relieve.probstats import (
    EmpiricalPDM,
    bin_index,
    class_conditionals,
    contingency,
    discretize,
    entropy,
    feature_class_pdm,
    kl_divergence,
    kl_joint_vs_product,
    mutual_information,
)

from conftest import random_pdm


def test_contingency_single_class():
    d = parse_dataset("a,class\nx,c\ny,c\nx,c\n")
    t = contingency(d, "a")
    assert t.counts.shape == (1, 2)
    assert list(t.row_totals) == [3]
    assert list(t.col_totals) == [2, 1]


def test_contingency_errors():
    d = build_dataset([[1.5, None], [2, None]], ["c", "d"], ["a", "b"], ["linear", "nominal"],
                      values={"b": ["u", "v"]})
    with pytest.raises(UsageError, match="discretize"):
        contingency(d, "a")
    with pytest.raises(UsageError, match="no present"):
        contingency(d, "b")


def test_binning_examples():
    assert list(bin_index(np.arange(11.0), 0, 10, 2)) == [0] * 5 + [1] * 6
    assert list(bin_index(np.array([0, 0.25, 0.5, 0.75, 1.0]), 0, 1, 4)) == [0, 1, 2, 3, 3]
    assert list(bin_index(np.array([3.0, 3.0]), 3, 3, 10)) == [0, 0]


def test_discretize_rejects_nominal(nand_table):
    with pytest.raises(UsageError):
        discretize(nand_table, "f1")


def test_discretize_keeps_missing():
    d = parse_dataset("a,class\n0,x\n?,y\n10,x\n")
    n = discretize(d, "a", bins=2)
    assert n.feature("a").kind == "nominal"
    assert np.isnan(n.X[1, 0])
    assert n.cell(0, "a") == "0" and n.cell(2, "a") == "1"


def test_entropy_examples():
    assert entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-15)
    assert entropy([1.0, 0.0]) == 0.0
    assert entropy([0.75, 0.25]) == pytest.approx(0.8112781244591328, abs=1e-12)
    with pytest.raises(ValueError):
        entropy([-0.1, 1.1])


def test_mutual_information_examples(nand_table):
    indep = EmpiricalPDM(["x", "y"], [("0", "1")] * 2, np.full((2, 2), 0.25))
    assert mutual_information(indep) == pytest.approx(0.0, abs=1e-15)
    copy = EmpiricalPDM(["x", "y"], [("0", "1")] * 2, np.eye(2) / 2)
    assert mutual_information(copy) == pytest.approx(1.0, abs=1e-15)
    mi = mutual_information(feature_class_pdm(nand_table, "f1"))
    # 1/2 bit of class entropy H(C)=0.811278..., H(C|f1)=0.5
    assert mi == pytest.approx(0.8112781244591328 - 0.5, abs=1e-12)


def test_class_conditionals_smoothing(nand_table):
    p = class_conditionals(nand_table, "f1")
    assert np.allclose(p.sum(axis=1), 1)
    assert p[1].tolist() == [0.0, 1.0]
    ps = class_conditionals(nand_table, "f1", smoothing=True)
    assert ps[1].tolist() == pytest.approx([1 / 3, 2 / 3])


def test_pdm_marginal_transposes():
    p = np.arange(1, 9, dtype=float).reshape(2, 2, 2)
    pdm = EmpiricalPDM(["a", "b", "c"], [("0", "1")] * 3, p / p.sum())
    m = pdm.marginal(["c", "a"])
    assert m.variables == ("c", "a")
    assert np.allclose(m.prob, (p / p.sum()).sum(axis=1).T)


def test_pdm_from_support_and_dataset(nand_table):
    pdm = EmpiricalPDM.from_dataset(nand_table)
    assert pdm.variables == ("f1", "f2", "f_r", "C")
    assert len(pdm.support) == 4
    again = EmpiricalPDM.from_support(pdm.variables, pdm.support, pdm.values)
    assert np.array_equal(again.prob, pdm.prob)
    with pytest.raises(UsageError):
        EmpiricalPDM(["a"], [("0", "1")], np.array([0.3, 0.3]))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_kl_equals_mi(seed):
    pdm = random_pdm(np.random.default_rng(seed), 2, card=3, sparsity=0.3)
    assert kl_joint_vs_product(pdm) == pytest.approx(mutual_information(pdm), abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=1, max_size=8).filter(lambda v: sum(v) > 0))
def test_entropy_bounds(v):
    p = np.array(v) / sum(v)
    h = entropy(p)
    assert -1e-12 <= h <= np.log2(len(p)) + 1e-12


def test_kl_is_nonnegative_and_zero_on_self():
    p = np.array([0.2, 0.3, 0.5])
    assert kl_divergence(p, p) == 0.0
    assert kl_divergence(p, np.array([0.5, 0.3, 0.2])) > 0
