"""Ewens and Stirling distributions, draw-add dynamics, size as a statistic."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .channel import Channel, channel_difference, compose, dagger, identity, lift, push, tuple_
from .dist import Dist, dmap
from .msets import mset_facto
from .partitions import Partition, enum_partitions, maal, psize
from .report import Report, first_difference

DEFAULT_TS = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7, 3))


def ewens_param(t):
    t = Fraction(t)
    if t <= 0:
        raise ValueError(f"Ewens parameter must be positive, got {t}")
    return t


@lru_cache(maxsize=None)
def stirling1(n, k):
    """Unsigned Stirling number of the first kind [n, k]."""
    if n < 0 or k < 0:
        return 0
    if n == 0:
        return int(k == 0)
    if k == 0:
        return 0
    return (n - 1) * stirling1(n - 1, k) + stirling1(n - 1, k - 1)


def rising(t, K):
    """t (t+1) ... (t+K-1)."""
    return prod((t + i for i in range(K)), start=Fraction(1))


def _ewens_weight(sigma, t):
    return t ** psize(sigma) / (mset_facto(sigma) * maal(sigma))


def ewens_dist(K, t):
    if K < 1:
        raise ValueError("ewens_dist needs K >= 1")
    t = ewens_param(t)
    c = factorial(K) / rising(t, K)
    return Dist({s: c * _ewens_weight(s, t) for s in enum_partitions(K)})


def stirling_dist(K, t):
    if K < 1:
        raise ValueError("stirling_dist needs K >= 1")
    t = ewens_param(t)
    norm = rising(t, K)
    return Dist({k: stirling1(K, k) * t ** k / norm for k in range(1, K + 1)})


def size_dagger(K, n):
    """Distribution on partitions of K with exactly n parts, free of t."""
    if not 1 <= n <= K:
        raise ValueError(f"size must lie in 1..{K}, got {n}")
    fiber = [s for s in enum_partitions(K) if psize(s) == n]
    w = {s: Fraction(1, mset_facto(s) * maal(s)) for s in fiber}
    return Dist(w, normalise=True)


def size_dagger_channel(K):
    return Channel({n: size_dagger(K, n) for n in range(1, K + 1)})


def pda(K, t):
    """Partition draw-add: MP(K) -> MP(K+1)."""
    t = ewens_param(t)
    rows = {}
    for s in enum_partitions(K):
        w = {s + Partition({1: 1}): t / (K + t)}
        for k, n in s.items():
            nxt = s - Partition({k: 1}) + Partition({k + 1: 1})
            w[nxt] = w.get(nxt, 0) + Fraction(n * k) / (K + t)
        rows[s] = Dist(w)
    return Channel(rows)


def sda(K, t):
    """Size draw-add: {1..K} -> {1..K+1}."""
    t = ewens_param(t)
    return Channel({
        k: Dist({k + 1: t / (K + t), k: Fraction(K) / (K + t)}) for k in range(1, K + 1)
    })


def verify_size_sufficiency(K, ts=DEFAULT_TS):
    ts = [ewens_param(t) for t in ts]
    rep = Report(f"size-ewens K={K}")
    parts = enum_partitions(K)
    sizes = list(range(1, K + 1))
    sizec = lift(psize, parts)
    left = tuple_(identity(parts), sizec)
    right = tuple_(size_dagger_channel(K), identity(sizes))
    for t in ts:
        ew, st = ewens_dist(K, t), stirling_dist(K, t)
        ds = dmap(psize, ew)
        rep.add("size pushes Ewens to Stirling", ds == st, t, first_difference(ds, st))
        lhs, rhs = push(left, ew), push(right, st)
        rep.add("joint (partition, size) equation", lhs == rhs, t, first_difference(lhs, rhs))
        dg = dagger(sizec, ew)
        rep.add("dagger of size is size_dagger", dg == size_dagger_channel(K), t,
                channel_difference(dg, size_dagger_channel(K)))
        # draw-add rectangle and inductive reconstruction, one step up from K
        up = enum_partitions(K + 1)
        top = compose(lift(psize, up), pda(K, t))
        bottom = compose(sda(K, t), sizec)
        rep.add("size . PDA = SDA . size", top == bottom, t, channel_difference(top, bottom))
        e1 = push(pda(K, t), ew)
        rep.add("Ewens[K+1] = PDA >> Ewens[K]", e1 == ewens_dist(K + 1, t), t,
                first_difference(e1, ewens_dist(K + 1, t)))
        s1 = push(sda(K, t), st)
        rep.add("Stirling[K+1] = SDA >> Stirling[K]", s1 == stirling_dist(K + 1, t), t,
                first_difference(s1, stirling_dist(K + 1, t)))
        if K == 1:
            rep.add("Ewens[1] base case", ew == Dist({Partition({1: 1}): 1}), t)
            rep.add("Stirling[1] base case", st == Dist({1: 1}), t)
    if len(ts) < K + 1:
        rep.notes.append(f"{len(ts)} parameter values sampled; fewer than K+1={K + 1}, "
                         "so agreement does not pin down the rational functions of t")
    else:
        rep.notes.append(f"{len(ts)} parameter values sampled (>= K+1={K + 1})")
    return rep
