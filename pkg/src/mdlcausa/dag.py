"""Scoring and exhaustive search over DAGs of categorical variables.

A DAG's codelength is the sum over nodes of the cost of coding that node
given the joint configuration of its parents, so node terms can be cached
and shared across every candidate graph.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Sequence

from .codecs import CRUDE, Codec, ResourceLimitError, parent_cost
from .distributions import PairedSample

DEFAULT_MAX_M = 5


@dataclass(frozen=True)
class Dag:
    """``parents[i]`` is the sorted tuple of parents of node ``i``."""

    parents: tuple

    def __post_init__(self):
        ps = tuple(tuple(sorted(int(p) for p in pa)) for pa in self.parents)
        m = len(ps)
        if m < 1:
            raise ValueError("a DAG needs at least one node")
        for i, pa in enumerate(ps):
            if i in pa:
                raise ValueError(f"node {i} lists itself as a parent")
            if len(set(pa)) != len(pa) or any(not 0 <= p < m for p in pa):
                raise ValueError(f"node {i} has invalid parents {pa}")
        if not _acyclic(ps):
            raise ValueError("graph contains a directed cycle")
        object.__setattr__(self, "parents", ps)

    @property
    def m(self) -> int:
        return len(self.parents)

    @classmethod
    def empty(cls, m: int) -> "Dag":
        return cls(((),) * m)

    @classmethod
    def from_edges(cls, m: int, edges: Sequence[tuple[int, int]]) -> "Dag":
        parents = [[] for _ in range(m)]
        for a, b in edges:
            parents[b].append(a)
        return cls(tuple(parents))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted((p, c) for c, pa in enumerate(self.parents) for p in pa)

    def relabel(self, perm: Sequence[int]) -> "Dag":
        """Graph with node ``i`` renamed to ``perm[i]``."""
        parents = [()] * self.m
        for i, pa in enumerate(self.parents):
            parents[perm[i]] = tuple(perm[p] for p in pa)
        return Dag(tuple(parents))

    def to_lines(self, names: Sequence[str] | None = None) -> list[str]:
        names = names or [str(i) for i in range(self.m)]
        return [f"{names[i]} <- {','.join(names[p] for p in pa)}" for i, pa in enumerate(self.parents)]

    def to_adjacency(self) -> list[list[int]]:
        adj = [[0] * self.m for _ in range(self.m)]
        for p, c in self.edges:
            adj[p][c] = 1
        return adj

    def to_json(self, names: Sequence[str] | None = None) -> str:
        names = list(names or [str(i) for i in range(self.m)])
        return json.dumps({"nodes": names, "adjacency": self.to_adjacency()})


def _acyclic(parents: Sequence[Sequence[int]]) -> bool:
    state = [0] * len(parents)  # 0 new, 1 on stack, 2 done

    def visit(i):
        state[i] = 1
        for p in parents[i]:
            if state[p] == 1 or (state[p] == 0 and not visit(p)):
                return False
        state[i] = 2
        return True

    return all(state[i] == 2 or visit(i) for i in range(len(parents)))


def node_score(s: PairedSample, node: int, parents: Sequence[int], codec: Codec = CRUDE) -> float:
    return parent_cost(s, node, tuple(parents), codec)


def score_dag(s: PairedSample, d: Dag, codec: Codec = CRUDE) -> float:
    if d.m != s.m:
        raise ValueError(f"DAG has {d.m} nodes but the sample has {s.m} columns")
    return math.fsum(node_score(s, i, pa, codec) for i, pa in enumerate(d.parents))


def enumerate_dags(m: int):
    """Yield every labeled DAG on ``m`` nodes.

    Parent sets are assigned node by node and partial assignments that already
    contain a cycle are pruned. Output is in lexicographic order of the
    parent-set encoding.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    options = []
    for i in range(m):
        others = [j for j in range(m) if j != i]
        subsets = [c for r in range(m) for c in itertools.combinations(others, r)]
        options.append(sorted(subsets))

    def grow(prefix):
        i = len(prefix)
        if i == m:
            yield Dag(tuple(prefix))
            return
        for pa in options[i]:
            trial = prefix + [pa]
            # only edges among assigned nodes can close a cycle yet
            partial = [tuple(p for p in ps if p < len(trial)) for ps in trial]
            if _acyclic(partial):
                yield from grow(trial)

    yield from grow([])


@dataclass(frozen=True)
class SearchResult:
    best: Dag
    score: float
    ranking: list


def exhaustive_search(s: PairedSample, codec: Codec = CRUDE, max_m: int = DEFAULT_MAX_M) -> SearchResult:
    """Minimum-codelength DAG over all labeled DAGs on the sample's columns.

    Ties go to the lexicographically smallest parent-set encoding.
    ``ranking`` lists ``(dag, score)`` for every DAG, best first.
    """
    if s.m > max_m:
        raise ResourceLimitError(f"{s.m} variables exceed the exhaustive search limit of {max_m}")
    cache = {}

    def term(i, pa):
        if (i, pa) not in cache:
            cache[i, pa] = node_score(s, i, pa, codec)
        return cache[i, pa]

    scored = [(math.fsum(term(i, pa) for i, pa in enumerate(d.parents)), d.parents, d) for d in enumerate_dags(s.m)]
    scored.sort(key=lambda t: (t[0], t[1]))
    ranking = [(d, sc) for sc, _, d in scored]
    best, score = ranking[0]
    return SearchResult(best, score, ranking)
