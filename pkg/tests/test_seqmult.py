import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from conftest import dists
from suffstat.channel import compose, identity, lift, pull, push, tuple_
from suffstat.dist import Dist, Predicate, dirac, dmap, dtensor, update, validity
from suffstat.msets import Multiset as M, acc, enum_msets
from suffstat.seqmult import (arr, arr_channel, dist_grid, iid, multinomial, sequences, tp,
                              verify_acc_sufficiency)

half = Dist({"a": F(1, 2), "b": F(1, 2)})

# the size-3 draw from the 8-ball urn, worked example
URN_DRAWS = {
    M({"a": 3}): F(1, 512), M({"a": 2, "b": 1}): F(3, 128), M({"a": 1, "b": 2}): F(3, 32),
    M({"b": 3}): F(1, 8), M({"a": 2, "c": 1}): F(9, 512), M({"a": 1, "b": 1, "c": 1}): F(9, 64),
    M({"b": 2, "c": 1}): F(9, 32), M({"a": 1, "c": 2}): F(27, 512), M({"b": 1, "c": 2}): F(27, 128),
    M({"c": 3}): F(27, 512),
}


def test_iid(urn):
    assert iid(urn, 1) == Dist({(x,): r for x, r in urn.items()})
    assert iid(dirac("a"), 3) == dirac(("a", "a", "a"))
    assert iid(half, 2) == Dist({s: F(1, 4) for s in sequences("ab", 2)})
    assert dmap(lambda p: p[0] + (p[1],), dtensor(iid(urn, 2), urn)) == iid(urn, 3)


def test_multinomial_urn_display(urn):
    assert multinomial(urn, 3) == Dist(URN_DRAWS)
    assert multinomial(dirac("a"), 4) == dirac(M({"a": 4}))


@pytest.mark.parametrize("K", [1, 2, 3, 4])
def test_multinomial_is_accumulated_iid(urn, K):
    assert dmap(acc, iid(urn, K)) == multinomial(urn, K)


def test_arr():
    assert arr(M({"a": 2})) == dirac(("a", "a"))
    assert arr(M({"a": 1, "b": 1})) == Dist({("a", "b"): F(1, 2), ("b", "a"): F(1, 2)})
    three = arr(M({"a": 2, "b": 1}))
    assert len(three) == 3 and set(w for _, w in three.items()) == {F(1, 3)}
    with pytest.raises(ValueError):
        arr(M())


def test_tp():
    assert tp("ab", 1) == identity(sequences("ab", 1))
    assert tp("ab", 2)(("a", "b")) == Dist({("a", "b"): F(1, 2), ("b", "a"): F(1, 2)})
    assert tp("ab", 3)(("a", "a", "b")) == Dist({s: F(1, 3) for s in [("a", "a", "b"), ("a", "b", "a"), ("b", "a", "a")]})
    for K in (1, 2, 3):
        t = tp("abc", K)
        assert compose(t, t) == t
        assert t == compose(arr_channel("abc", K), lift(acc, sequences("abc", K)))
        assert compose(lift(acc, sequences("abc", K)), arr_channel("abc", K)) == identity(enum_msets("abc", K))


def test_grid():
    g = dist_grid("abc")
    assert all(len(w) == 3 for w in g)
    assert len(g) == len(set(g))
    assert Dist({"a": F(1, 8), "b": F(1, 2), "c": F(3, 8)}) in g
    assert all(max(r.denominator for _, r in w.items()) <= 8 for w in g)
    assert dist_grid("a") == [dirac("a")]


def test_verify_examples(urn):
    assert verify_acc_sufficiency([dirac("a")], 3, "a").ok
    assert verify_acc_sufficiency([urn], 3).ok
    rep = verify_acc_sufficiency([half], 2)
    assert rep.ok
    # one support point per sequence, paired with its accumulation
    joint = push(tuple_(identity(sequences("ab", 2)), lift(acc, sequences("ab", 2))), iid(half, 2))
    assert len(joint) == 4


def test_verify_reports_foreign_prior():
    rep = verify_acc_sufficiency([Dist({"z": 1})], 2, "ab")
    assert not rep.ok


def _rand_pred(carrier, rng):
    vals = {}
    for x in carrier:
        d = rng.randint(1, 16)
        vals[x] = F(rng.randint(0, d), d)
    return Predicate(vals)


@pytest.mark.parametrize("K", [2, 3])
def test_predicate_adjointness(urn, K):
    rng = random.Random(0)
    seqs, ms = sequences("abc", K), enum_msets("abc", K)
    accc, arrc = lift(acc, seqs), arr_channel("abc", K)
    for _ in range(20):
        p, q = _rand_pred(seqs, rng), _rand_pred(ms, rng)
        lhs = validity(iid(urn, K), p & pull(accc, q))
        rhs = validity(multinomial(urn, K), pull(arrc, p) & q)
        assert lhs == rhs


@settings(max_examples=20)
@given(dists())
def test_conditioning_on_acc_gives_arr(omega):
    K = 3
    sd = iid(omega, K)
    for phi, mass in multinomial(omega, K).items():
        p = Predicate.indicator(sd.support(), lambda s: acc(s) == phi)
        assert update(sd, p) == arr(phi)
