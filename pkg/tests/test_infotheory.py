import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdlcausa.distributions import CategoricalDistribution, JointTable, PairedSample, random_joint, sample
from mdlcausa.infotheory import (
    conditional_entropy,
    empirical_joint,
    entropy,
    joint_entropy,
    mutual_information,
)

# -0.25 log2 0.25 - 0.75 log2 0.75
H_QUARTER = 0.25 * 2 + 0.75 * math.log2(4 / 3)


@st.composite
def joints(draw):
    kx, ky = draw(st.integers(1, 6)), draw(st.integers(1, 6))
    w = np.array(draw(st.lists(st.floats(0.0, 1.0), min_size=kx * ky, max_size=kx * ky)))
    if w.sum() <= 1e-6:
        w = np.ones(kx * ky)
    return JointTable((w / w.sum()).reshape(kx, ky))


def test_entropy_examples():
    assert entropy(CategoricalDistribution([0.5, 0.5])) == 1.0
    assert entropy(CategoricalDistribution([1.0, 0.0])) == 0.0
    assert entropy(CategoricalDistribution([0.25, 0.75])) == pytest.approx(0.811278, abs=1e-6)
    assert entropy(CategoricalDistribution([0.25, 0.75])) == pytest.approx(H_QUARTER, abs=1e-12)


def test_joint_entropy_examples():
    assert joint_entropy(JointTable(np.full((2, 2), 0.25))) == 2.0
    assert joint_entropy(JointTable([[0.5, 0], [0, 0.5]])) == 1.0
    assert joint_entropy(JointTable([[0.25, 0], [0, 0.75]])) == pytest.approx(0.811278, abs=1e-6)


def test_conditional_entropy_examples():
    ind = JointTable(np.outer([0.2, 0.8], [0.3, 0.3, 0.4]))
    assert conditional_entropy(ind, 0) == pytest.approx(entropy(CategoricalDistribution([0.3, 0.3, 0.4])), abs=1e-12)
    assert conditional_entropy(JointTable([[0.25, 0], [0, 0.75]]), 0) == 0.0
    assert conditional_entropy(JointTable(np.full((2, 2), 0.25)), 0) == 1.0


def test_conditional_entropy_skips_empty_rows():
    j = JointTable([[0.5, 0.5], [0.0, 0.0]])
    assert conditional_entropy(j, 0) == 1.0


def test_mutual_information_examples():
    assert mutual_information(JointTable(np.outer([0.1, 0.9], [0.5, 0.5]))) == pytest.approx(0.0, abs=1e-12)
    assert mutual_information(JointTable(np.eye(4) / 4)) == pytest.approx(2.0, abs=1e-12)
    assert mutual_information(JointTable([[0.25, 0], [0, 0.75]])) == pytest.approx(0.811278, abs=1e-6)


def test_empirical_joint():
    s = PairedSample(([0, 0, 1, 1], [0, 1, 0, 1]))
    assert empirical_joint(s).probs.tolist() == [[0.25, 0.25], [0.25, 0.25]]
    s = PairedSample(([0, 0, 0, 0], [0, 0, 0, 0]), (2, 2))
    assert empirical_joint(s).probs.tolist() == [[1.0, 0.0], [0.0, 0.0]]


def test_empirical_joint_converges():
    j = random_joint(3, 4, 1.0, 77)
    est = empirical_joint(sample(j, 10**5, 78))
    assert np.max(np.abs(est.probs - j.probs)) <= 0.01


@given(joints())
def test_chain_rule(j):
    hx = entropy(CategoricalDistribution(j.probs.sum(1)))
    hy = entropy(CategoricalDistribution(j.probs.sum(0)))
    hxy = joint_entropy(j)
    assert hx + conditional_entropy(j, 0) == pytest.approx(hxy, abs=1e-9)
    assert hy + conditional_entropy(j, 1) == pytest.approx(hxy, abs=1e-9)


@given(joints())
def test_mi_bounds(j):
    mi = mutual_information(j)
    hx = entropy(CategoricalDistribution(j.probs.sum(1)))
    hy = entropy(CategoricalDistribution(j.probs.sum(0)))
    assert -1e-12 <= mi <= min(hx, hy) + 1e-9
    if mi < 1e-12:
        outer = np.outer(j.probs.sum(1), j.probs.sum(0))
        assert np.max(np.abs(outer - j.probs)) < 1e-5


@given(st.lists(st.floats(0, 1), min_size=1, max_size=8).filter(lambda v: sum(v) > 1e-3), st.randoms())
def test_entropy_permutation_invariant(w, rnd):
    p = np.array(w) / sum(w)
    q = p.copy()
    rnd.shuffle(q)
    h = entropy(CategoricalDistribution(p))
    assert h == pytest.approx(entropy(CategoricalDistribution(q)), abs=1e-12)
    assert 0.0 <= h <= math.log2(p.size) + 1e-12
