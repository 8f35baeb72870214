"""Multiset partitions, multiplicity counts and the swapped multinomial."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial, prod

from .channel import Channel, compose, identity, lift, push, tuple_
from .dist import Dist, dmap, uniform
from .msets import Multiset, carrier, enum_msets, enum_perms, mset_binom, mset_map
from .report import Report, first_difference
from .seqmult import multinomial


class CarrierTooSmall(ValueError):
    pass


class Partition(Multiset):
    """Multiset over positive integers; ``{1:2,2:1}`` is the partition 1+1+2 of 4."""

    __slots__ = ()

    def __init__(self, counts=None):
        super().__init__(counts)
        for i, _ in self.items():
            if isinstance(i, bool) or not isinstance(i, int) or i < 1:
                raise ValueError(f"partition parts must be positive integers, got {i!r}")

    def psum(self):
        return sum(i * n for i, n in self.items())


def psum(sigma):
    return sigma.psum()


def psize(sigma):
    return sigma.size()


def maal(sigma):
    """Product of the parts, i.e. prod_i i^sigma(i)."""
    return prod(i ** n for i, n in sigma.items())


def enum_partitions(K):
    """Partitions of ``K`` in ascending order ({1:K} first, {K:1} last)."""
    if K < 1:
        raise ValueError("enum_partitions needs K >= 1")
    out = []

    def go(remaining, smallest, parts):
        if remaining == 0:
            out.append(Partition.from_iterable(parts))
            return
        for p in range(smallest, remaining + 1):
            parts.append(p)
            go(remaining - p, p, parts)
            parts.pop()

    go(K, 1, [])
    out.sort()
    return out


def mc(phi):
    """Multiplicity count: how many elements occur i times, for each i."""
    if phi.size() < 1:
        raise ValueError("multiplicity count of the empty multiset")
    counts = {}
    for _, n in phi.items():
        counts[n] = counts.get(n, 0) + 1
    return Partition(counts)


def mc_fiber(sigma, X):
    """Multisets over X whose multiplicity count is ``sigma``."""
    X = carrier(X)
    mults = sigma.elements()
    if len(X) < len(mults):
        return []
    found = set()
    for xs in itertools.permutations(X, len(mults)):
        found.add(Multiset(dict(zip(xs, mults))))
    return sorted(found)


def stk(sigma, X):
    """Uniform distribution over the multisets on X with multiplicity count sigma."""
    fiber = mc_fiber(sigma, X)
    if not fiber:
        raise CarrierTooSmall(f"no multiset over {len(carrier(X))} elements has count {sigma}")
    return uniform(fiber)


def stk_channel(X, K):
    X = carrier(X)
    if len(X) < K:
        raise CarrierTooSmall(f"stack channel on MP({K}) needs at least {K} elements, got {len(X)}")
    return Channel({s: stk(s, X) for s in enum_partitions(K)})


def ep(X, K):
    """Element permutation on M[K](X), computed as stack after mc."""
    X = carrier(X)
    return Channel({phi: stk(mc(phi), X) for phi in enum_msets(X, K)})


def ep_by_permutations(X, K):
    """Element permutation as the average of M(pi)(phi) over all pi in Perm(X)."""
    X = carrier(X)
    perms = enum_perms(X)
    rows = {}
    for phi in enum_msets(X, K):
        w = {}
        for pi in perms:
            psi = mset_map(pi.__getitem__, phi)
            w[psi] = w.get(psi, 0) + Fraction(1, len(perms))
        rows[phi] = Dist(w)
    return Channel(rows)


def _carrier_of(omega, X):
    X = carrier(omega.support() if X is None else X)
    if not set(omega.support()) <= set(X):
        raise ValueError("distribution support not inside the carrier")
    return X


def smn(omega, K, X=None):
    """Swapped multinomial: multinomial averaged over all renamings of X."""
    X = _carrier_of(omega, X)
    perms = enum_perms(X)
    w = {}
    for pi in perms:
        for phi, r in multinomial(dmap(pi.__getitem__, omega), K).items():
            w[phi] = w.get(phi, 0) + r / len(perms)
    return Dist(w)


def smn_via_ep(omega, K, X=None):
    X = _carrier_of(omega, X)
    mn = multinomial(omega, K)
    return push(ep(X, K), mn)


def partcoefm(sigma):
    """K! / prod_i (i!)^sigma(i) with K the sum of sigma."""
    return factorial(sigma.psum()) // prod(factorial(i) ** n for i, n in sigma.items())


def pamn(omega, K):
    """Partition multinomial: the multiplicity count of a multinomial draw."""
    return dmap(mc, multinomial(omega, K))


def pamn_concrete(omega, K, X=None):
    X = _carrier_of(omega, X)
    w = {}
    for sigma in enum_partitions(K):
        total = sum((prod(omega[x] ** n for x, n in phi.items()) for phi in mc_fiber(sigma, X)),
                    Fraction(0))
        w[sigma] = partcoefm(sigma) * total
    return Dist(w)


def verify_mc_sufficiency(omegas, K, X=None):
    """Check that mc is sufficient for the swapped multinomial on M[K](X)."""
    omegas = list(omegas)
    X = carrier(omegas[0].support() if X is None else X)
    if len(X) < K:
        raise CarrierTooSmall(f"need |X| >= K, got |X|={len(X)}, K={K}")
    rep = Report(f"mc-swapmn |X|={len(X)} K={K}")
    ms = enum_msets(X, K)
    parts = enum_partitions(K)
    stkc = stk_channel(X, K)
    mcc = lift(mc, ms)
    epc = ep(X, K)

    rep.add("mc after stk is identity", compose(mcc, stkc) == identity(parts))
    rep.add("ep is stk after mc", compose(stkc, mcc) == epc)
    rep.add("ep by permutations matches ep by stack", ep_by_permutations(X, K) == epc)
    for sigma in parts:
        rep.add("fiber size is the binomial", len(mc_fiber(sigma, X)) == mset_binom(len(X), sigma),
                sigma)

    left = tuple_(identity(ms), mcc)
    right = tuple_(stkc, identity(parts))
    for omega in omegas:
        a = str(omega)
        s = smn(omega, K, X)
        s2 = smn_via_ep(omega, K, X)
        rep.add("smn by permutations matches ep after multinomial", s == s2, a,
                first_difference(s, s2))
        es = push(epc, s)
        rep.add("ep fixes smn", es == s, a, first_difference(es, s))
        pm = pamn(omega, K)
        for label, other in (("concrete", pamn_concrete(omega, K, X)), ("via smn", dmap(mc, s))):
            rep.add(f"pamn {label}", pm == other, a, first_difference(pm, other))
        lhs, rhs = push(left, s), push(right, pm)
        rep.add("joint (mset, mc) equation", lhs == rhs, a, first_difference(lhs, rhs))
    return rep
