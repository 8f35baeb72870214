import itertools
from fractions import Fraction as F
from math import factorial

import pytest

from suffstat.channel import compose, identity, lift
from suffstat.dist import Dist, dirac, dmap
from suffstat.msets import Multiset
from suffstat.poisson import (DEFAULT_LAMBDAS, WeightVector, pois_weight, som, som_dagger,
                              som_dagger_channel, som_fiber, verify_sum_sufficiency)
from suffstat.seqmult import multinomial


def test_pois_weight():
    assert pois_weight(3, 0) == 1
    assert pois_weight(1, 3) == F(1, 6)
    assert pois_weight(F(1, 2), 2) == F(1, 8)
    with pytest.raises(ValueError):
        pois_weight(0, 1)


def test_som():
    assert som((0, 0, 0)) == 0
    assert som((1, 2, 3)) == 6
    assert all(som(p) == 6 for p in itertools.permutations((1, 2, 3)))


def test_fiber_is_brute_force_fiber():
    for K in (1, 2, 3):
        for n in range(6):
            brute = [v for v in itertools.product(range(n + 1), repeat=K) if sum(v) == n]
            assert som_fiber(n, K) == brute


def test_som_dagger():
    assert som_dagger(0, 3) == dirac((0, 0, 0))
    assert som_dagger(2, 2) == Dist({(2, 0): F(1, 4), (1, 1): F(1, 2), (0, 2): F(1, 4)})
    for K in (1, 2, 3):
        ns = range(7)
        tuples = [v for n in ns for v in som_fiber(n, K)]
        assert compose(lift(som, tuples), som_dagger_channel(6, K)) == identity(ns)


@pytest.mark.parametrize("K", [1, 2, 3])
def test_som_dagger_is_slot_multinomial(K):
    slots = Dist({i: F(1, K) for i in range(K)})
    for n in range(1, 7):
        moved = dmap(lambda phi: tuple(phi[i] for i in range(K)), multinomial(slots, n))
        assert moved == som_dagger(n, K)


def test_weight_vector():
    wv = WeightVector(F(1, 2), 3, 2)
    assert len(wv.tuples()) == 10
    assert wv.weight((1, 2)) == F(1, 2) * F(1, 8)
    assert sum(w for _, w in wv.truncated().items()) == 1
    with pytest.raises(ValueError):
        WeightVector(0, 3, 2)


@pytest.mark.parametrize("K", [1, 2, 3])
def test_multinomial_theorem(K):
    for lam in DEFAULT_LAMBDAS:
        for n in range(9):
            s = F(0)
            for v in som_fiber(n, K):
                w = F(1)
                for k in v:
                    w *= lam ** k / factorial(k)
                s += w
            assert s == (K * lam) ** n / factorial(n)


def test_conditional_independent_of_rate():
    for K in (2, 3):
        for n in range(7):
            conds = [Dist({v: WeightVector(lam, 6, K).weight(v) for v in som_fiber(n, K)}, normalise=True)
                     for lam in (F(1, 3), F(5, 2))]
            assert conds[0] == conds[1] == som_dagger(n, K)


def test_verify_examples():
    assert verify_sum_sufficiency(1).ok
    assert verify_sum_sufficiency(2, [1], 8).ok
    assert verify_sum_sufficiency(3, [F(1, 2), F(3, 2)], 6).ok
