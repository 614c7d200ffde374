"""Discrete distributions, factorizations and seeded synthetic data.

Random numbers come from numpy's PCG64 bit generator. Every task draws from
its own substream, derived with :func:`substream` through numpy's
``SeedSequence`` spawn keys, so results do not depend on the order in which
tasks run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

TOL = 1e-12
MAX_SEED = 2**64


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def substream(seed: int, *index: int) -> np.random.Generator:
    """Independent PCG64 generator for task ``index`` under a root seed."""
    if not 0 <= int(seed) < MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(i) for i in index))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class CategoricalDistribution:
    """Probability vector over the alphabet ``{0, ..., k-1}``."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise ValueError("probs must be a non-empty vector")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise ValueError("probs must be finite and non-negative")
        if abs(p.sum() - 1.0) > TOL:
            raise ValueError(f"probs must sum to 1, got {p.sum()!r}")
        object.__setattr__(self, "probs", _frozen(p))

    @property
    def alphabet_size(self) -> int:
        return self.probs.size

    def __getitem__(self, i):
        return self.probs[i]

    def __len__(self):
        return self.probs.size


@dataclass(frozen=True)
class ConditionalTable:
    """One categorical distribution per value of the conditioning variable.

    ``probs[c]`` is the distribution of the target given condition ``c``.
    Rows whose condition has zero probability are marked in ``unreachable``
    and hold the uniform distribution.
    """

    probs: np.ndarray
    unreachable: np.ndarray = None

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError("conditional table must be a non-empty matrix")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise ValueError("conditional probabilities must be finite and non-negative")
        bad = np.abs(p.sum(axis=1) - 1.0) > TOL
        if np.any(bad):
            raise ValueError(f"rows {np.flatnonzero(bad).tolist()} do not sum to 1")
        if self.unreachable is None:
            mask = np.zeros(p.shape[0], dtype=bool)
        else:
            mask = np.array(self.unreachable, dtype=bool)
            if mask.shape != (p.shape[0],):
                raise ValueError("unreachable mask must have one entry per row")
        object.__setattr__(self, "probs", _frozen(p))
        object.__setattr__(self, "unreachable", _frozen(mask))

    @property
    def cond_alphabet_size(self) -> int:
        return self.probs.shape[0]

    @property
    def alphabet_size(self) -> int:
        return self.probs.shape[1]

    @property
    def rows(self) -> list[CategoricalDistribution]:
        return [CategoricalDistribution(r) for r in self.probs]

    def __getitem__(self, c):
        return self.probs[c]


@dataclass(frozen=True)
class JointTable:
    """Joint probability tensor; axis ``i`` is variable ``i``."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        if p.ndim < 1 or p.size < 1:
            raise ValueError("joint table must be non-empty")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise ValueError("joint probabilities must be finite and non-negative")
        if abs(p.sum() - 1.0) > TOL:
            raise ValueError(f"joint table must sum to 1, got {p.sum()!r}")
        object.__setattr__(self, "probs", _frozen(p))

    @property
    def shape(self) -> tuple[int, ...]:
        return self.probs.shape

    @property
    def ndim(self) -> int:
        return self.probs.ndim

    def transpose(self, axes=None) -> "JointTable":
        return JointTable(np.transpose(self.probs, axes))


@dataclass(frozen=True)
class PairedSample:
    """``n`` joint observations of integer-coded categorical columns."""

    columns: tuple
    alphabet_sizes: tuple = field(default=None)

    def __post_init__(self):
        cols = [np.asarray(c) for c in self.columns]
        if not cols:
            raise ValueError("sample needs at least one column")
        n = cols[0].size
        if n < 1:
            raise ValueError("sample needs at least one observation")
        out = []
        for i, c in enumerate(cols):
            if c.ndim != 1 or c.size != n:
                raise ValueError(f"column {i} has length {c.size}, expected {n}")
            if c.dtype.kind not in "iu":
                if not np.all(np.mod(c, 1) == 0):
                    raise ValueError(f"column {i} is not integer coded")
            out.append(_frozen(c.astype(np.int64)))
        if self.alphabet_sizes is None:
            sizes = tuple(int(c.max()) + 1 for c in out)
        else:
            sizes = tuple(int(k) for k in self.alphabet_sizes)
            if len(sizes) != len(out):
                raise ValueError("one alphabet size per column is required")
        for i, (c, k) in enumerate(zip(out, sizes)):
            if k < 1 or c.min() < 0 or c.max() >= k:
                raise ValueError(f"column {i} has values outside 0..{k - 1}")
        object.__setattr__(self, "columns", tuple(out))
        object.__setattr__(self, "alphabet_sizes", sizes)

    @property
    def n(self) -> int:
        return self.columns[0].size

    @property
    def m(self) -> int:
        return len(self.columns)

    def select(self, cols: Sequence[int]) -> "PairedSample":
        return PairedSample(
            tuple(self.columns[c] for c in cols),
            tuple(self.alphabet_sizes[c] for c in cols),
        )


def joint_from_factorization(px: CategoricalDistribution, pyx: ConditionalTable) -> JointTable:
    """Assemble ``P(x, y) = P(x) P(y | x)``."""
    if pyx.cond_alphabet_size != px.alphabet_size:
        raise ValueError(
            f"conditional table has {pyx.cond_alphabet_size} rows, "
            f"marginal has {px.alphabet_size} symbols"
        )
    return JointTable(px.probs[:, None] * pyx.probs)


def marginal(joint: JointTable, axis: int | Sequence[int]) -> CategoricalDistribution | JointTable:
    """Marginal over the kept ``axis`` (an int, or a sequence of axes)."""
    keep = (axis,) if np.isscalar(axis) else tuple(axis)
    drop = tuple(a for a in range(joint.ndim) if a not in keep)
    p = joint.probs.sum(axis=drop)
    # sum() returns kept axes in increasing order
    order = np.argsort(np.argsort(keep))
    p = np.transpose(p, order) if p.ndim > 1 else p
    if len(keep) == 1:
        return CategoricalDistribution(p)
    return JointTable(p)


def condition(joint: JointTable, given_axis: int) -> ConditionalTable:
    """Conditional of the other variable given ``given_axis`` of a 2-D joint."""
    if joint.ndim != 2:
        raise ValueError("condition() expects a two-variable joint table")
    p = joint.probs if given_axis == 0 else joint.probs.T
    return _normalize_rows(p)


def _normalize_rows(p: np.ndarray) -> ConditionalTable:
    mass = p.sum(axis=1)
    unreachable = mass <= 0
    rows = np.empty_like(p, dtype=float)
    ok = ~unreachable
    rows[ok] = p[ok] / mass[ok, None]
    rows[unreachable] = 1.0 / p.shape[1]
    return ConditionalTable(rows, unreachable)


def conditional_on(joint: JointTable, target: int, parents: Sequence[int]) -> ConditionalTable:
    """``P(target | parents)`` with parent configurations in mixed radix order.

    The first parent is the most significant digit, so a single parent gives
    the usual row-per-value layout.
    """
    parents = tuple(parents)
    if target in parents:
        raise ValueError("target cannot be its own parent")
    sub = marginal(joint, parents + (target,))
    p = sub.probs if isinstance(sub, JointTable) else sub.probs[None, :]
    return _normalize_rows(p.reshape(-1, joint.shape[target]))


def sample(joint: JointTable, n: int, seed: int | np.random.Generator) -> PairedSample:
    """Draw ``n`` i.i.d. observations by inverse CDF over the flattened table."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    rng = seed if isinstance(seed, np.random.Generator) else substream(seed)
    flat = joint.probs.ravel()
    cdf = np.cumsum(flat)
    idx = np.searchsorted(cdf, rng.random(n), side="right")
    # rounding can leave cdf[-1] a hair below 1
    idx = np.minimum(idx, np.flatnonzero(flat > 0)[-1])
    cols = np.unravel_index(idx, joint.shape)
    return PairedSample(tuple(cols), joint.shape)


def dirichlet(alpha: float, k: int, rng: np.random.Generator) -> np.ndarray:
    """Symmetric Dirichlet draw as normalized independent Gamma variates."""
    if not alpha > 0:
        raise ValueError(f"Dirichlet concentration must be positive, got {alpha}")
    g = rng.gamma(alpha, 1.0, size=k)
    total = g.sum()
    if total == 0.0:
        # every Gamma draw underflowed; only possible for tiny alpha
        g = np.zeros(k)
        g[rng.integers(k)] = 1.0
        total = 1.0
    p = g / total
    p[np.argmax(p)] += 1.0 - p.sum()
    return p


def random_mechanism_pair(k_x: int, k_y: int, alpha: float, seed) -> tuple[CategoricalDistribution, ConditionalTable]:
    """Cause marginal and mechanism drawn independently from symmetric Dirichlets."""
    if k_x < 2 or k_y < 2:
        raise ValueError("alphabet sizes must be at least 2")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    rng = seed if isinstance(seed, np.random.Generator) else substream(seed)
    px = dirichlet(alpha, k_x, rng)
    rows = np.stack([dirichlet(alpha, k_y, rng) for _ in range(k_x)])
    return CategoricalDistribution(px), ConditionalTable(rows)


def random_joint(k_x: int, k_y: int, alpha: float, seed) -> JointTable:
    px, pyx = random_mechanism_pair(k_x, k_y, alpha, seed)
    return joint_from_factorization(px, pyx)


def discrete_anm(
    k_x: int,
    k_y: int,
    f: Sequence[int],
    noise: CategoricalDistribution,
    px: CategoricalDistribution,
) -> JointTable:
    """Joint of ``Y = (f(X) + N) mod k_y`` with noise ``N`` independent of ``X``."""
    f = np.asarray(f)
    if f.shape != (k_x,) or f.dtype.kind not in "iu":
        raise ValueError(f"f must be an integer table of length {k_x}")
    if np.any(f < 0) or np.any(f >= k_y):
        raise ValueError(f"f must map into 0..{k_y - 1}")
    if noise.alphabet_size != k_y:
        raise ValueError(f"noise must be over {k_y} symbols")
    if px.alphabet_size != k_x:
        raise ValueError(f"cause distribution must be over {k_x} symbols")
    # row x is the noise vector rotated so that N = 0 lands on f(x)
    rows = np.stack([np.roll(noise.probs, int(fx)) for fx in f])
    return joint_from_factorization(px, ConditionalTable(rows))


def random_anm(k_x: int, k_y: int, alpha: float, seed) -> JointTable:
    """Discrete ANM with Dirichlet cause and noise and a uniformly random ``f``."""
    rng = seed if isinstance(seed, np.random.Generator) else substream(seed)
    px = CategoricalDistribution(dirichlet(alpha, k_x, rng))
    f = rng.integers(0, k_y, size=k_x)
    noise = CategoricalDistribution(dirichlet(alpha, k_y, rng))
    return discrete_anm(k_x, k_y, f, noise, px)


def deterministic_mechanism(k_x: int, k_y: int, alpha: float, seed) -> JointTable:
    """``Y = f(X)`` for a random surjective ``f`` (needs ``k_x >= k_y``)."""
    if k_x < k_y:
        raise ValueError("a surjective mechanism needs k_x >= k_y")
    rng = seed if isinstance(seed, np.random.Generator) else substream(seed)
    px = CategoricalDistribution(dirichlet(alpha, k_x, rng))
    f = np.concatenate([np.arange(k_y), rng.integers(0, k_y, size=k_x - k_y)])
    f = rng.permutation(f)
    point = np.zeros(k_y)
    point[0] = 1.0
    return discrete_anm(k_x, k_y, f, CategoricalDistribution(point), px)


def random_chain(ks: Sequence[int], alpha: float, seed) -> JointTable:
    """Joint of the chain ``X0 -> X1 -> ... `` with Dirichlet mechanisms."""
    rng = seed if isinstance(seed, np.random.Generator) else substream(seed)
    p = dirichlet(alpha, ks[0], rng)
    for prev, k in zip(ks[:-1], ks[1:]):
        cpt = np.stack([dirichlet(alpha, k, rng) for _ in range(prev)])
        p = p[..., None] * cpt.reshape((1,) * (p.ndim - 1) + cpt.shape)
    return JointTable(p / p.sum())
