"""Sequences versus multisets: iid draws, multinomials, arrangement.

Also holds the accumulation sufficiency check and the grid of rational
priors used by the verification sweeps.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial, prod

from .channel import Channel, compose, identity, lift, push, tuple_
from .dist import Dist, dmap, uniform
from .msets import acc, carrier, enum_acc_fiber, enum_msets, mset_coefm
from .report import Report, first_difference


def sequences(X, K):
    """X^K in lexicographic order."""
    return list(itertools.product(carrier(X), repeat=K))


def iid(omega, K):
    if K < 1:
        raise ValueError("iid needs K >= 1")
    xs = omega.support()
    return Dist({s: prod(omega[x] for x in s) for s in itertools.product(xs, repeat=K)})


def multinomial(omega, K):
    if K < 1:
        raise ValueError("multinomial needs K >= 1")
    return Dist({
        phi: mset_coefm(phi) * prod(omega[x] ** n for x, n in phi.items())
        for phi in enum_msets(omega.support(), K)
    })


def arr(phi):
    """Uniform distribution over the orderings of ``phi``."""
    if phi.size() < 1:
        raise ValueError("arrangement of the empty multiset")
    return uniform(enum_acc_fiber(phi))


def arr_channel(X, K):
    return Channel({phi: arr(phi) for phi in enum_msets(X, K)})


def acc_channel(X, K):
    return lift(acc, sequences(X, K))


def tp(X, K):
    """Tuple permutation: average over all K! reorderings of a sequence."""
    if K < 1:
        raise ValueError("tp needs K >= 1")
    perms = list(itertools.permutations(range(K)))
    rows = {}
    for s in sequences(X, K):
        w = {}
        for p in perms:
            t = tuple(s[i] for i in p)
            w[t] = w.get(t, 0) + Fraction(1, len(perms))
        rows[s] = Dist(w)
    return Channel(rows)


def dist_grid(X, max_den=8):
    """All full-support distributions on X with weights k/d, d <= max_den."""
    X = carrier(X)
    n = len(X)
    seen = {}
    for d in range(1, max_den + 1):
        # compositions of d into n positive parts
        for cuts in itertools.combinations(range(1, d), n - 1):
            parts = [b - a for a, b in zip((0,) + cuts, cuts + (d,))]
            w = Dist({x: Fraction(k, d) for x, k in zip(X, parts)})
            seen.setdefault(w, None)
    return list(seen)


def verify_acc_sufficiency(omegas, K, X=None):
    """Check accumulation is sufficient for iid draws of length ``K``.

    ``X`` defaults to the support of the first prior; every prior is taken
    over that carrier.
    """
    omegas = list(omegas)
    if X is None:
        X = omegas[0].support()
    X = carrier(X)
    rep = Report(f"acc-iid |X|={len(X)} K={K}")
    seqs = sequences(X, K)
    accc = lift(acc, seqs)
    arrc = arr_channel(X, K)
    tpc = tp(X, K)
    ms = enum_msets(X, K)

    split = compose(accc, arrc)
    rep.add("acc after arr is identity", split == identity(ms))
    rep.add("tp is arr after acc", tpc == compose(arrc, accc))

    left = tuple_(identity(seqs), accc)
    right = tuple_(arrc, identity(ms))
    for omega in omegas:
        a = str(omega)
        if not set(omega.support()) <= set(X):
            rep.add("prior lives on carrier", False, a, "support outside carrier")
            continue
        sd = iid(omega, K)
        mn = multinomial(omega, K)
        tpsd = push(tpc, sd)
        rep.add("tp fixes iid", tpsd == sd, a, first_difference(tpsd, sd))
        lhs, rhs = push(left, sd), push(right, mn)
        rep.add("joint (seq, acc) equation", lhs == rhs, a, first_difference(lhs, rhs))
        an = push(arrc, mn)
        rep.add("arr pushes multinomial to iid", an == sd, a, first_difference(an, sd))
        am = dmap(acc, sd)
        rep.add("acc pushes iid to multinomial", am == mn, a, first_difference(am, mn))
    return rep
