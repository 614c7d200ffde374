import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdlcausa.codecs import (
    CRUDE,
    NML,
    Codec,
    CountVector,
    ResourceLimitError,
    conditional_cost,
    data_cost_mle,
    marginal_cost,
    model_cost_crude,
    nml_complexity,
    nml_regret,
    oracle,
    parent_cost,
)
from mdlcausa.distributions import (
    CategoricalDistribution,
    ConditionalTable,
    JointTable,
    PairedSample,
    discrete_anm,
    sample,
)


def brute_force_comp(k, n):
    """Defining sum over every count vector, in exact integer coefficients."""
    if n == 0:
        return 1.0
    terms = []
    for c in itertools.product(range(n + 1), repeat=k):
        if sum(c) != n:
            continue
        coef = math.factorial(n)
        for v in c:
            coef //= math.factorial(v)
        terms.append(coef * math.prod((v / n) ** v for v in c))
    return math.fsum(terms)


counts_st = st.lists(st.integers(0, 40), min_size=1, max_size=6).filter(lambda c: sum(c) > 0)


class TestDataCost:
    def test_examples(self):
        assert data_cost_mle([2, 2]) == 4.0
        assert data_cost_mle([4, 0]) == 0.0
        assert data_cost_mle([3, 1]) == pytest.approx(3.245112, abs=1e-6)
        assert data_cost_mle(CountVector([3, 1])) == pytest.approx(3 * math.log2(4 / 3) + 2, abs=1e-12)

    def test_empty(self):
        with pytest.raises(ValueError):
            data_cost_mle([0, 0])

    @given(counts_st)
    def test_equals_n_times_entropy(self, c):
        n = sum(c)
        p = np.array(c) / n
        h = -sum(q * math.log2(q) for q in p if q > 0)
        assert data_cost_mle(c) == pytest.approx(n * h, abs=1e-9)

    @given(counts_st, st.data())
    def test_oracle_not_shorter_than_mle(self, c, data):
        w = np.array(data.draw(st.lists(st.floats(0.01, 1.0), min_size=len(c), max_size=len(c))))
        p = CategoricalDistribution(w / w.sum())
        assert marginal_cost(c, oracle(p)) >= data_cost_mle(c) - 1e-9


class TestModelCost:
    def test_examples(self):
        assert model_cost_crude(1, 12345) == 0.0
        assert model_cost_crude(2, 100) == pytest.approx(3.321928, abs=1e-6)
        assert model_cost_crude(3, 4) == 2.0


class TestNML:
    def test_trivial(self):
        assert all(nml_complexity(1, n) == 1.0 for n in (0, 1, 7, 1000))
        assert nml_complexity(5, 0) == 1.0

    def test_comp_2_2(self):
        # (2,0) -> 1, (1,1) -> 2 * 0.25, (0,2) -> 1
        assert brute_force_comp(2, 2) == 2.5
        assert nml_complexity(2, 2) == pytest.approx(2.5, abs=1e-12)

    @pytest.mark.parametrize("method", ["recurrence", "enumerate", "auto"])
    def test_matches_brute_force(self, method):
        for k in range(1, 5):
            for n in range(0, 13):
                assert nml_complexity(k, n, method) == pytest.approx(brute_force_comp(k, n), abs=1e-9), (k, n)

    def test_monotone(self):
        for k in range(1, 7):
            vals = [nml_complexity(k, n) for n in range(0, 60)]
            assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))
        for n in (1, 5, 50, 500):
            vals = [nml_complexity(k, n) for k in range(1, 12)]
            assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))

    def test_recurrence_agrees_with_enumeration_beyond_oracle_grid(self):
        for k, n in [(5, 20), (3, 60), (6, 15)]:
            assert nml_complexity(k, n, "recurrence") == pytest.approx(nml_complexity(k, n, "enumerate"), rel=1e-12)

    def test_large_inputs_stay_finite(self):
        r = nml_regret(1000, 10**6)
        assert math.isfinite(r) and r > nml_regret(999, 10**6)

    def test_resource_guard(self):
        with pytest.raises(ResourceLimitError):
            nml_complexity(2, 10**9)
        with pytest.raises(ResourceLimitError):
            nml_complexity(10, 1000, "enumerate")
        with pytest.raises(ValueError):
            nml_complexity(0, 3)


class TestMarginalCost:
    def test_oracle_fair_coin(self):
        assert marginal_cost([2, 2], oracle(CategoricalDistribution([0.5, 0.5]))) == 4.0

    def test_crude(self):
        assert marginal_cost([50, 50], CRUDE) == pytest.approx(100 + 0.5 * math.log2(100), abs=1e-12)

    def test_nml(self):
        assert marginal_cost([1, 1], NML) == pytest.approx(2 + math.log2(2.5), abs=1e-12)
        assert marginal_cost([1, 1], NML) == pytest.approx(3.321928, abs=1e-6)

    def test_oracle_misfit_is_infinite(self):
        assert marginal_cost([1, 3], oracle(CategoricalDistribution([0.0, 1.0]))) == math.inf
        assert marginal_cost([0, 3], oracle(CategoricalDistribution([0.0, 1.0]))) == 0.0

    def test_codec_validation(self):
        with pytest.raises(TypeError):
            Codec("oracle")
        with pytest.raises(TypeError):
            Codec("crude", CategoricalDistribution([1.0]))
        with pytest.raises(ValueError):
            Codec("zip")

    @given(counts_st)
    def test_costs_non_negative(self, c):
        for codec in (CRUDE, NML):
            v = marginal_cost(c, codec)
            assert v >= 0 and math.isfinite(v)


class TestConditionalCost:
    def test_constant_target_with_unit_alphabet(self):
        s = PairedSample(([0, 1, 2, 1, 0], [0, 0, 0, 0, 0]), (3, 1))
        assert conditional_cost(s, 0, 1, CRUDE) == 0.0

    def test_constant_condition_reduces_to_marginal(self):
        y = [0, 1, 1, 2, 2, 2]
        s = PairedSample(([0] * 6, y), (1, 3))
        for codec in (CRUDE, NML):
            assert conditional_cost(s, 0, 1, codec) == marginal_cost(CountVector.of(y, 3), codec)

    def test_oracle_deterministic_mechanism(self):
        f = [1, 2, 0]
        j = discrete_anm(3, 3, f, CategoricalDistribution([1, 0, 0]), CategoricalDistribution([0.2, 0.3, 0.5]))
        s = sample(j, 500, 4)
        table = ConditionalTable(np.eye(3)[f])
        assert conditional_cost(s, 0, 1, oracle(table)) == 0.0
        assert conditional_cost(s, 0, 1, oracle(j)) == 0.0

    def test_blocks_use_own_size(self):
        # block x=0 has n=4 (counts 2,2), block x=1 has n=2 (counts 1,1), block x=2 empty
        s = PairedSample(([0, 0, 0, 0, 1, 1], [0, 1, 0, 1, 0, 1]), (3, 2))
        expected = (4 + 0.5 * math.log2(4)) + (2 + 0.5 * math.log2(2))
        assert conditional_cost(s, 0, 1, CRUDE) == pytest.approx(expected, abs=1e-12)

    def test_oracle_by_hand(self):
        s = PairedSample(([0, 0, 1], [0, 1, 1]))
        table = ConditionalTable([[0.5, 0.5], [0.25, 0.75]])
        assert conditional_cost(s, 0, 1, oracle(table)) == pytest.approx(2 - math.log2(0.75), abs=1e-12)

    def test_parent_cost_single_parent_matches(self):
        s = sample(JointTable(np.arange(1, 7).reshape(2, 3) / 21), 300, 1)
        assert parent_cost(s, 1, (0,), NML) == conditional_cost(s, 0, 1, NML)
        assert parent_cost(s, 0, (), CRUDE) == marginal_cost(CountVector.of(s.columns[0], 2), CRUDE)
