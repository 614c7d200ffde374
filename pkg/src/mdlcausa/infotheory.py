"""Shannon entropies and mutual information, in bits."""

from __future__ import annotations

import math

import numpy as np

from .distributions import (
    CategoricalDistribution,
    JointTable,
    PairedSample,
    marginal,
)

ZERO = 1e-15


def _h(p) -> float:
    p = np.asarray(p, dtype=float).ravel()
    p = p[p >= ZERO]
    return max(0.0, -math.fsum(p * np.log2(p)))


def entropy(p: CategoricalDistribution) -> float:
    """H(P) = -sum p log2 p with 0 log 0 = 0."""
    return _h(p.probs if isinstance(p, CategoricalDistribution) else p)


def joint_entropy(j: JointTable) -> float:
    return _h(j.probs)


def conditional_entropy(j: JointTable, given_axis: int = 0) -> float:
    """Expected entropy of the other variable over the rows of ``given_axis``.

    Rows with zero marginal contribute nothing.
    """
    p = j.probs if given_axis == 0 else j.probs.T
    mass = p.sum(axis=1)
    terms = [m * _h(row / m) for row, m in zip(p, mass) if m > 0]
    return math.fsum(terms)


def mutual_information(j: JointTable) -> float:
    hx = entropy(marginal(j, 0))
    hy = entropy(marginal(j, 1))
    return max(0.0, hx + hy - joint_entropy(j))


def empirical_joint(s: PairedSample, col_x: int = 0, col_y: int = 1) -> JointTable:
    """Plug-in joint table of two columns (counts over n)."""
    kx, ky = s.alphabet_sizes[col_x], s.alphabet_sizes[col_y]
    counts = np.bincount(s.columns[col_x] * ky + s.columns[col_y], minlength=kx * ky)
    return JointTable(counts.reshape(kx, ky) / s.n)
