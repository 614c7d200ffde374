"""Codelengths in bits for categorical data.

Three codecs are offered:

* ``crude``: two-part code, ``(k - 1)/2 * log2(n)`` bits for the parameters
  plus the maximum likelihood codelength of the data.
* ``nml``: maximum likelihood codelength plus the log of the multinomial
  parametric complexity, i.e. the normalized maximum likelihood code.
* ``oracle``: ideal codelength ``-log2 P(x)`` of the data under a known
  distribution attached to the codec.

Alphabet sizes are treated as known to the decoder and are never charged.
Conditional codes charge each non-empty block of the conditioning variable
separately; blocks that receive no rows cost nothing.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np
from scipy.special import gammaln

from .distributions import (
    CategoricalDistribution,
    ConditionalTable,
    JointTable,
    PairedSample,
    conditional_on,
)

# Recurrence cost is O(n + k); these bound a single nml_complexity call.
NML_MAX_N = 10**7
NML_MAX_K = 10**6
# "auto" enumerates when there are at most this many count vectors
NML_ENUM_LIMIT = 5000
NML_ENUM_MAX = 10**6


class ResourceLimitError(ValueError):
    """Raised when a computation would exceed a configured size limit."""


class CodecKind(str, Enum):
    CRUDE = "crude"
    NML = "nml"
    ORACLE = "oracle"


Truth = Union[CategoricalDistribution, ConditionalTable, JointTable]


@dataclass(frozen=True)
class Codec:
    """A codec choice; ``truth`` is only set for the oracle codec.

    For the oracle, ``truth`` is a :class:`CategoricalDistribution` when
    coding a single column, a :class:`ConditionalTable` when coding a column
    given another, or a :class:`JointTable` whose axes line up with the
    columns of the sample being scored.
    """

    kind: CodecKind
    truth: Truth | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", CodecKind(self.kind))
        if self.kind is CodecKind.ORACLE:
            if not isinstance(self.truth, (CategoricalDistribution, ConditionalTable, JointTable)):
                raise TypeError("the oracle codec needs a true distribution attached")
        elif self.truth is not None:
            raise TypeError(f"{self.kind.value} codec takes no distribution")

    @property
    def name(self) -> str:
        return self.kind.value


CRUDE = Codec(CodecKind.CRUDE)
NML = Codec(CodecKind.NML)


def oracle(truth: Truth) -> Codec:
    return Codec(CodecKind.ORACLE, truth)


def get_codec(name: str) -> Codec:
    try:
        return {"crude": CRUDE, "nml": NML}[name]
    except KeyError:
        raise ValueError(f"unknown codec {name!r}; choose 'crude' or 'nml'") from None


@dataclass(frozen=True)
class CountVector:
    """Symbol counts of a column; ``len(counts)`` is the alphabet size."""

    counts: tuple

    def __post_init__(self):
        c = tuple(int(v) for v in self.counts)
        if not c:
            raise ValueError("count vector needs at least one symbol")
        if any(v < 0 for v in c):
            raise ValueError("counts must be non-negative")
        object.__setattr__(self, "counts", c)

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def k(self) -> int:
        return len(self.counts)

    @classmethod
    def of(cls, column, k: int) -> "CountVector":
        return cls(np.bincount(np.asarray(column), minlength=k).tolist())


def _as_counts(c) -> tuple:
    return c.counts if isinstance(c, CountVector) else tuple(int(v) for v in c)


def data_cost_mle(c: CountVector | Sequence[int]) -> float:
    """-sum c_i log2(c_i / n); equals n times the empirical entropy."""
    counts = _as_counts(c)
    n = sum(counts)
    if n == 0:
        raise ValueError("cannot code an empty count vector")
    return max(0.0, math.fsum(v * (math.log2(n) - math.log2(v)) for v in counts if v > 0))


def model_cost_crude(k: int, n: int) -> float:
    if k < 1 or n < 1:
        raise ValueError("model cost needs k >= 1 and n >= 1")
    return (k - 1) / 2 * math.log2(n)


def _log_binomial_terms(n: int) -> np.ndarray:
    h = np.arange(n + 1, dtype=float)
    out = gammaln(n + 1) - gammaln(h + 1) - gammaln(n - h + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        out += np.where(h > 0, h * np.log(h / n), 0.0)
        out += np.where(h < n, (n - h) * np.log((n - h) / n), 0.0)
    return out


def _log2_comp2(n: int) -> float:
    if n == 0:
        return 0.0
    t = _log_binomial_terms(n)
    top = t.max()
    return float((top + math.log(math.fsum(np.exp(t - top)))) / math.log(2))


def _log2_comp_recurrence(k: int, n: int) -> float:
    # C(j + 2) = C(j + 1) + n / j * C(j), carried as ratios r = C(j + 1) / C(j)
    # so that large k and n cannot overflow
    if k == 1 or n == 0:
        return 0.0
    log2_c = _log2_comp2(n)
    ratio = 2.0**log2_c
    for j in range(1, k - 1):
        ratio = 1.0 + n / (j * ratio)
        log2_c += math.log2(ratio)
    return log2_c


def _n_count_vectors(k: int, n: int) -> int:
    return math.comb(n + k - 1, k - 1)


def _compositions(n: int, k: int):
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _comp_enumerate(k: int, n: int) -> float:
    if n == 0:
        return 1.0
    terms = []
    for c in _compositions(n, k):
        log_t = math.lgamma(n + 1) - sum(math.lgamma(v + 1) for v in c)
        log_t += sum(v * math.log(v / n) for v in c if v > 0)
        terms.append(math.exp(log_t))
    return math.fsum(terms)


@functools.lru_cache(maxsize=4096)
def _log2_comp(k: int, n: int, method: str) -> float:
    if method == "auto":
        method = "enumerate" if _n_count_vectors(k, n) <= NML_ENUM_LIMIT else "recurrence"
    if method == "enumerate":
        return math.log2(_comp_enumerate(k, n))
    return _log2_comp_recurrence(k, n)


def _check_nml_args(k: int, n: int, method: str) -> None:
    if k < 1 or n < 0:
        raise ValueError("nml_complexity needs k >= 1 and n >= 0")
    if method not in ("auto", "enumerate", "recurrence"):
        raise ValueError(f"unknown method {method!r}")
    if n > NML_MAX_N or k > NML_MAX_K:
        raise ResourceLimitError(f"nml_complexity({k}, {n}) exceeds limits k<={NML_MAX_K}, n<={NML_MAX_N}")
    if method == "enumerate" and _n_count_vectors(k, n) > NML_ENUM_MAX:
        raise ResourceLimitError(f"enumerating {_n_count_vectors(k, n)} count vectors is too many")


def nml_complexity(k: int, n: int, method: str = "auto") -> float:
    """Parametric complexity of the ``k``-category multinomial at sample size ``n``.

    ``method`` is ``"enumerate"`` (sum over all count vectors),
    ``"recurrence"`` (binomial sum for ``k = 2`` lifted by the three-term
    recurrence over ``k``) or ``"auto"``, which enumerates only when that is
    cheap. Very large inputs overflow to ``inf``; use :func:`nml_regret`.
    """
    _check_nml_args(k, n, method)
    try:
        return 2.0 ** _log2_comp(int(k), int(n), method)
    except OverflowError:
        return math.inf


def nml_regret(k: int, n: int, method: str = "auto") -> float:
    """log2 of :func:`nml_complexity`, in bits."""
    _check_nml_args(k, n, method)
    return _log2_comp(int(k), int(n), method)


def _oracle_cost(counts: Sequence[int], probs: np.ndarray) -> float:
    terms = []
    for v, p in zip(counts, probs):
        if v == 0:
            continue
        if p <= 0:
            return math.inf
        terms.append(-v * math.log2(p))
    return max(0.0, math.fsum(terms))


def marginal_cost(c: CountVector | Sequence[int], codec: Codec = CRUDE) -> float:
    """Codelength of a column summarized by its counts."""
    counts = _as_counts(c)
    n = sum(counts)
    if codec.kind is CodecKind.ORACLE:
        truth = codec.truth
        if not isinstance(truth, CategoricalDistribution):
            raise TypeError("marginal_cost with the oracle needs a CategoricalDistribution")
        if truth.alphabet_size != len(counts):
            raise ValueError(f"oracle has {truth.alphabet_size} symbols, counts have {len(counts)}")
        return _oracle_cost(counts, truth.probs)
    if n == 0:
        raise ValueError("cannot code an empty count vector")
    if codec.kind is CodecKind.CRUDE:
        return model_cost_crude(len(counts), n) + data_cost_mle(counts)
    return data_cost_mle(counts) + nml_regret(len(counts), n)


def block_cost(cond_codes: np.ndarray, target: np.ndarray, k_target: int, codec: Codec = CRUDE,
               table: ConditionalTable | None = None) -> float:
    """Sum of per-block codelengths of ``target`` split by ``cond_codes``.

    With the oracle codec, ``table`` gives the target distribution for each
    conditioning code.
    """
    keys, inverse = np.unique(cond_codes, return_inverse=True)
    counts = np.bincount(inverse * k_target + target, minlength=keys.size * k_target)
    counts = counts.reshape(keys.size, k_target)
    if codec.kind is CodecKind.ORACLE:
        if table is None or table.alphabet_size != k_target:
            raise ValueError("oracle conditional table does not match the target alphabet")
        if keys.size and keys[-1] >= table.cond_alphabet_size:
            raise ValueError("conditioning value outside the oracle table")
        return math.fsum(_oracle_cost(row, table.probs[key]) for key, row in zip(keys, counts.tolist()))
    return math.fsum(marginal_cost(row, codec) for row in counts.tolist())


def conditional_cost(s: PairedSample, cond_col: int, target_col: int, codec: Codec = CRUDE) -> float:
    """Codelength of ``target_col`` given ``cond_col``, one block per conditioning value."""
    k_target = s.alphabet_sizes[target_col]
    table = None
    if codec.kind is CodecKind.ORACLE:
        table = _oracle_table(codec.truth, s, target_col, (cond_col,))
    return block_cost(s.columns[cond_col], s.columns[target_col], k_target, codec, table)


def _oracle_table(truth: Truth, s: PairedSample, target: int, parents: tuple) -> ConditionalTable:
    if isinstance(truth, ConditionalTable):
        return truth
    if isinstance(truth, JointTable):
        if truth.shape != tuple(s.alphabet_sizes):
            raise ValueError(f"oracle joint shape {truth.shape} does not match sample alphabets {s.alphabet_sizes}")
        return conditional_on(truth, target, parents)
    raise TypeError("conditional oracle needs a ConditionalTable or JointTable")


def column_cost(s: PairedSample, col: int, codec: Codec = CRUDE) -> float:
    """Codelength of a single column; the oracle may carry a marginal or a joint."""
    counts = CountVector.of(s.columns[col], s.alphabet_sizes[col])
    if codec.kind is CodecKind.ORACLE and isinstance(codec.truth, JointTable):
        truth = codec.truth
        if truth.shape != tuple(s.alphabet_sizes):
            raise ValueError(f"oracle joint shape {truth.shape} does not match sample alphabets {s.alphabet_sizes}")
        drop = tuple(a for a in range(truth.ndim) if a != col)
        codec = oracle(CategoricalDistribution(truth.probs.sum(axis=drop)))
    return marginal_cost(counts, codec)


def parent_cost(s: PairedSample, target: int, parents: Sequence[int], codec: Codec = CRUDE) -> float:
    """Codelength of ``target`` given the joint configuration of ``parents``.

    Configurations are coded in mixed radix with the first parent most
    significant; an empty parent set falls back to :func:`column_cost`.
    """
    parents = tuple(parents)
    if not parents:
        return column_cost(s, target, codec)
    codes = np.zeros(s.n, dtype=np.int64)
    for p in parents:
        codes = codes * s.alphabet_sizes[p] + s.columns[p]
    table = None
    if codec.kind is CodecKind.ORACLE:
        table = _oracle_table(codec.truth, s, target, parents)
    return block_cost(codes, s.columns[target], s.alphabet_sizes[target], codec, table)

