import math

import numpy as np
import pytest

from mdlcausa.codecs import CRUDE, NML, ResourceLimitError, column_cost, oracle
from mdlcausa.dag import Dag, enumerate_dags, exhaustive_search, node_score, score_dag
from mdlcausa.distributions import JointTable, PairedSample, random_chain, random_joint, sample, substream
from mdlcausa.inference import score_direction

CHAIN = Dag(((), (0,), (1,)))
REVERSED = Dag(((1,), (2,), ()))


def chain_sample():
    return sample(random_chain([3, 3, 3], 1.0, 0), 10**4, substream(0, 1))


class TestDag:
    def test_rejects_cycles_and_self_loops(self):
        with pytest.raises(ValueError):
            Dag(((1,), (0,)))
        with pytest.raises(ValueError):
            Dag(((0,),))
        with pytest.raises(ValueError):
            Dag(((5,), ()))

    def test_serialization(self):
        d = Dag.from_edges(3, [(0, 1), (2, 1)])
        assert d.to_lines(["a", "b", "c"]) == ["a <- ", "b <- a,c", "c <- "]
        assert d.to_adjacency() == [[0, 1, 0], [0, 0, 0], [0, 1, 0]]
        assert d.edges == [(0, 1), (2, 1)]

    @pytest.mark.parametrize("m,count", [(1, 1), (2, 3), (3, 25), (4, 543)])
    def test_labeled_dag_counts(self, m, count):
        dags = list(enumerate_dags(m))
        assert len(dags) == count
        assert len({d.parents for d in dags}) == count


class TestScore:
    def test_two_node_matches_inference(self):
        s = sample(random_joint(3, 4, 1.0, 5), 2000, 6)
        for codec in (CRUDE, NML, oracle(random_joint(3, 4, 1.0, 5))):
            l_xy, l_yx = score_direction(s, 0, 1, codec)
            assert score_dag(s, Dag(((), (0,))), codec) == l_xy
            assert score_dag(s, Dag(((1,), ())), codec) == l_yx

    def test_empty_graph(self):
        s = chain_sample()
        expected = math.fsum(column_cost(s, i, CRUDE) for i in range(3))
        assert score_dag(s, Dag.empty(3)) == expected

    def test_decomposes(self):
        s = chain_sample()
        full = Dag(((), (0,), (0, 1)))
        dropped = Dag(((), (0,), (1,)))
        assert score_dag(s, full) - node_score(s, 2, (0, 1)) == pytest.approx(
            score_dag(s, dropped) - node_score(s, 2, (1,)), abs=1e-9
        )

    def test_chain_beats_reversed(self):
        s = chain_sample()
        assert score_dag(s, CHAIN) < score_dag(s, REVERSED)
        assert score_dag(s, CHAIN) == pytest.approx(30254.14299191803, abs=1e-6)
        assert score_dag(s, REVERSED) == pytest.approx(30256.00899323488, abs=1e-6)

    def test_oracle_matches_joint_entropy_rate(self):
        j = random_chain([2, 3, 2], 1.0, 8)
        s = sample(j, 5000, 9)
        p = j.probs[tuple(s.columns)]
        per_sample = -np.log2(p).sum()
        assert score_dag(s, CHAIN, oracle(j)) == pytest.approx(per_sample, rel=1e-12)

    def test_wrong_width(self):
        with pytest.raises(ValueError):
            score_dag(chain_sample(), Dag.empty(2))


class TestSearch:
    def test_single_node(self):
        s = PairedSample(([0, 1, 1],))
        r = exhaustive_search(s)
        assert r.best == Dag(((),)) and len(r.ranking) == 1

    def test_independent_pair(self):
        s = sample(JointTable(np.full((2, 2), 0.25)), 2000, 31)
        r = exhaustive_search(s)
        assert len(r.ranking) == 3
        empty = dict((d.parents, sc) for d, sc in r.ranking)[((), ())]
        margin = 0.5 * math.log2(s.n)
        assert all(abs(empty - sc) <= margin for _, sc in r.ranking)

    def test_chain_recovered(self):
        r = exhaustive_search(chain_sample())
        assert r.best == CHAIN
        assert r.score == score_dag(chain_sample(), CHAIN)
        scores = [sc for _, sc in r.ranking]
        assert scores == sorted(scores) and len(scores) == 25

    def test_relabeling(self):
        s = chain_sample()
        perm = [2, 0, 1]
        cols = [None] * 3
        for i, c in enumerate(s.columns):
            cols[perm[i]] = c
        r = exhaustive_search(PairedSample(tuple(cols), (3, 3, 3)))
        assert r.best == CHAIN.relabel(perm)

    def test_guard(self):
        s = PairedSample(tuple([0, 1, 0]for _ in range(6)))
        with pytest.raises(ResourceLimitError):
            exhaustive_search(s, max_m=5)

    def test_tie_break_is_lexicographic(self):
        s = PairedSample(([0, 0, 0], [0, 0, 0]), (1, 1))
        r = exhaustive_search(s)
        assert all(sc == 0.0 for _, sc in r.ranking)
        assert [d.parents for d, _ in r.ranking] == [((), ()), ((), (0,)), ((1,), ())]
