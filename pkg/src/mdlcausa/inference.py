"""Bivariate cause-effect decisions from two-part codelengths."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import chi2

from .codecs import CRUDE, Codec, column_cost, conditional_cost
from .distributions import PairedSample

log = logging.getLogger(__name__)

DEFAULT_EPS = 1e-9
DEFAULT_ALPHA = 0.05


class Decision(str, Enum):
    X_TO_Y = "X->Y"
    Y_TO_X = "Y->X"
    UNDECIDED = "undecided"

    def flipped(self) -> "Decision":
        return {Decision.X_TO_Y: Decision.Y_TO_X, Decision.Y_TO_X: Decision.X_TO_Y}.get(self, self)


@dataclass(frozen=True)
class DirectionScore:
    l_xy: float
    l_yx: float
    delta: float
    decision: Decision
    confidence: float
    dependent: bool
    n: int = 0


def score_direction(s: PairedSample, col_x: int = 0, col_y: int = 1, codec: Codec = CRUDE) -> tuple[float, float]:
    """Codelengths ``(L(X) + L(Y|X), L(Y) + L(X|Y))`` under one codec.

    For the oracle codec attach a :class:`JointTable` over the sample's
    columns; both factorizations are derived from it.
    """
    l_xy = column_cost(s, col_x, codec) + conditional_cost(s, col_x, col_y, codec)
    l_yx = column_cost(s, col_y, codec) + conditional_cost(s, col_y, col_x, codec)
    return l_xy, l_yx


def g_statistic(s: PairedSample, col_x: int = 0, col_y: int = 1) -> float:
    kx, ky = s.alphabet_sizes[col_x], s.alphabet_sizes[col_y]
    obs = np.bincount(s.columns[col_x] * ky + s.columns[col_y], minlength=kx * ky).reshape(kx, ky)
    rows, cols = obs.sum(axis=1), obs.sum(axis=0)
    n = s.n
    terms = []
    for x, y in zip(*np.nonzero(obs)):
        o = int(obs[x, y])
        expected = int(rows[x]) * int(cols[y]) / n
        terms.append(o * math.log(o / expected))
    # fsum makes the statistic independent of cell order, so swapping
    # the columns gives the same verdict
    return max(0.0, 2.0 * math.fsum(terms))


def dependence_gate(s: PairedSample, col_x: int = 0, col_y: int = 1, alpha: float = DEFAULT_ALPHA) -> bool:
    """G-test of independence; True when independence is rejected at ``alpha``."""
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    df = (s.alphabet_sizes[col_x] - 1) * (s.alphabet_sizes[col_y] - 1)
    if df == 0:
        return False
    return bool(g_statistic(s, col_x, col_y) > chi2.ppf(1.0 - alpha, df))


def decide(l_xy: float, l_yx: float, dependent: bool = True, eps: float = DEFAULT_EPS, n: int = 0) -> DirectionScore:
    if eps < 0:
        raise ValueError("eps must be non-negative")
    if math.isinf(l_xy) and math.isinf(l_yx):
        delta = 0.0
    else:
        delta = l_yx - l_xy
    if math.isfinite(l_xy) and math.isfinite(l_yx):
        top = max(l_xy, l_yx)
        confidence = abs(delta) / top if top > 0 else 0.0
    else:
        confidence = 1.0 if delta != 0 else 0.0
    if dependent and delta > eps:
        decision = Decision.X_TO_Y
    elif dependent and delta < -eps:
        decision = Decision.Y_TO_X
    else:
        decision = Decision.UNDECIDED
    return DirectionScore(l_xy, l_yx, delta, decision, confidence, bool(dependent), n)


def infer(
    s: PairedSample,
    col_x: int = 0,
    col_y: int = 1,
    codec: Codec = CRUDE,
    eps: float = DEFAULT_EPS,
    alpha: float = DEFAULT_ALPHA,
    gate: bool = True,
) -> DirectionScore:
    """Score both directions and decide. With ``gate=False`` dependence is assumed."""
    l_xy, l_yx = score_direction(s, col_x, col_y, codec)
    dependent = dependence_gate(s, col_x, col_y, alpha) if gate else True
    if not dependent:
        log.info("dependence gate rejected the pair (alpha=%g); no direction inferred", alpha)
    return decide(l_xy, l_yx, dependent, eps, s.n)
