"""Numerical checks of the expected-codelength identity and its failure modes.

Coding data against the true factorization costs, on expectation, exactly the
joint entropy, whichever direction is used; only the description of the
factors themselves can break the tie. These functions make that visible:

* :func:`expected_oracle_codelength` evaluates the expected ideal codelength
  of one factorization analytically.
* :func:`theorem1_convergence` samples data and tracks the per-symbol ideal
  codelength against the joint entropy as ``n`` grows.
* :func:`symmetry_collapse` contrasts a joint-table encoding, which is
  direction-blind by construction, with the crude two-part codes.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .codecs import CRUDE, data_cost_mle, model_cost_crude, oracle
from .distributions import JointTable, PairedSample, sample, substream
from .inference import score_direction
from .infotheory import joint_entropy

CSV_HEADER = ("experiment", "n", "rep", "direction", "value_bits", "reference_bits", "gap_bits")
DIRECTIONS = ("X->Y", "Y->X")


@dataclass(frozen=True)
class LabRow:
    experiment: str
    n: int
    rep: int
    direction: str
    value: float
    reference: float
    gap: float
    # sample std of the per-symbol codelength; not part of the CSV schema
    std: float = field(default=float("nan"), compare=False)

    def as_csv(self) -> tuple:
        return (self.experiment, self.n, self.rep, self.direction, repr(self.value), repr(self.reference), repr(self.gap))


def _direction(direction: str) -> str:
    if direction in ("XtoY", "X->Y"):
        return "X->Y"
    if direction in ("YtoX", "Y->X"):
        return "Y->X"
    raise ValueError(f"direction must be 'X->Y' or 'Y->X', got {direction!r}")


def expected_oracle_codelength(j: JointTable, direction: str = "X->Y") -> float:
    """Expected ideal codelength of one (x, y) pair under the true factorization.

    Sums ``P(x, y) * (-log2 P(cause) - log2 P(effect | cause))`` over the
    support. The description cost of the factors themselves is left out.
    """
    if j.ndim != 2:
        raise ValueError("expected a two-variable joint table")
    p = j.probs if _direction(direction) == "X->Y" else j.probs.T
    cause = p.sum(axis=1)
    terms = []
    for a, b in zip(*np.nonzero(p)):
        pab = p[a, b]
        terms.append(pab * (-math.log2(cause[a]) - math.log2(pab / cause[a])))
    return math.fsum(terms)


def oracle_codelength(s: PairedSample, j: JointTable, col_x: int = 0, col_y: int = 1) -> tuple[float, float]:
    """Ideal codelengths of the sample under the true factorizations, in both directions."""
    return score_direction(s, col_x, col_y, oracle(j))


def _per_symbol_std(s: PairedSample, j: JointTable) -> float:
    kx, ky = j.shape
    counts = np.bincount(s.columns[0] * ky + s.columns[1], minlength=kx * ky)
    flat = j.probs.ravel()
    mask = counts > 0
    lengths = -np.log2(flat[mask])
    c = counts[mask]
    mean = (c * lengths).sum() / s.n
    if s.n < 2:
        return 0.0
    return float(math.sqrt(max(0.0, (c * (lengths - mean) ** 2).sum() / (s.n - 1))))


def theorem1_convergence(j: JointTable, n_grid: Sequence[int], reps: int, seed: int) -> list[LabRow]:
    """Per-symbol oracle codelength of sampled data against the joint entropy.

    Each ``(n, rep)`` pair draws from its own substream. Rows are ordered by
    ``n``, then ``rep``, then direction.
    """
    if not n_grid:
        raise ValueError("n_grid must not be empty")
    if reps < 1:
        raise ValueError("reps must be at least 1")
    reference = joint_entropy(j)
    rows = []
    for n in sorted(n_grid):
        for rep in range(reps):
            s = sample(j, n, substream(seed, n, rep))
            values = oracle_codelength(s, j)
            std = _per_symbol_std(s, j)
            for direction, total in zip(DIRECTIONS, values):
                v = total / n
                rows.append(LabRow("theorem1", n, rep, direction, v, reference, v - reference, std))
    return rows


@dataclass(frozen=True)
class CollapseRecord:
    l_joint_xy: float
    l_joint_yx: float
    crude_l_xy: float
    crude_l_yx: float


def _joint_table_code(first: np.ndarray, second: np.ndarray, k1: int, k2: int, n: int) -> float:
    counts = np.bincount(first * k2 + second, minlength=k1 * k2)
    return model_cost_crude(k1 * k2, n) + data_cost_mle(counts.tolist())


def symmetry_collapse(s: PairedSample, col_x: int = 0, col_y: int = 1) -> CollapseRecord:
    """Codelengths when each direction is coded through the empirical joint table.

    The joint table is fitted to both columns at once, so the model for the
    conditional is no longer independent of the conditioning data, and both
    directions end up with the same number of bits.
    """
    x, y = s.columns[col_x], s.columns[col_y]
    kx, ky = s.alphabet_sizes[col_x], s.alphabet_sizes[col_y]
    l_xy = _joint_table_code(x, y, kx, ky, s.n)
    l_yx = _joint_table_code(y, x, ky, kx, s.n)
    crude_xy, crude_yx = score_direction(s, col_x, col_y, CRUDE)
    return CollapseRecord(l_xy, l_yx, crude_xy, crude_yx)


def rows_to_csv(rows: Iterable[LabRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.as_csv())
    return buf.getvalue()
