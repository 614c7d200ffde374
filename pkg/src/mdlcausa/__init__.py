"""Cause-effect inference for discrete data by comparing two-part codelengths."""

from .codecs import CRUDE, NML, Codec, CodecKind, CountVector, ResourceLimitError, oracle
from .dag import Dag, exhaustive_search, score_dag
from .distributions import (
    CategoricalDistribution,
    ConditionalTable,
    JointTable,
    PairedSample,
    condition,
    joint_from_factorization,
    marginal,
    sample,
)
from .inference import Decision, DirectionScore, decide, infer, score_direction

__version__ = "0.1.0"

__all__ = [
    "CRUDE",
    "NML",
    "CategoricalDistribution",
    "Codec",
    "CodecKind",
    "ConditionalTable",
    "CountVector",
    "Dag",
    "Decision",
    "DirectionScore",
    "JointTable",
    "PairedSample",
    "ResourceLimitError",
    "condition",
    "decide",
    "exhaustive_search",
    "infer",
    "joint_from_factorization",
    "marginal",
    "oracle",
    "sample",
    "score_dag",
    "score_direction",
]
