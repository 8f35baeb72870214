"""Poisson products on truncated supports and the sum statistic.

Weights here are un-normalised: lambda^k / k! with the factor e^-lambda
dropped. Every identity checked below is either per-n or a ratio, so the
common factor e^{-K lambda} cancels and plain rationals suffice.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

from .channel import Channel, StateFamily, compose, dagger, identity, lift
from .dist import Dist, Predicate, dmap
from .report import Report, first_difference
from .seqmult import multinomial

DEFAULT_LAMBDAS = (Fraction(1, 2), Fraction(1), Fraction(3, 2))
DEFAULT_TRUNC = 8


def pois_weight(lam, k):
    """lambda^k / k!, without the e^-lambda normaliser."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError(f"Poisson rate must be positive, got {lam}")
    return lam ** k / factorial(k)


def som(vec):
    return sum(vec)


def som_fiber(n, K):
    """K-tuples of naturals adding up to n, lexicographic."""
    if K == 1:
        return [(n,)]
    return [(k,) + rest for k in range(n + 1) for rest in som_fiber(n - k, K - 1)]


def som_dagger(n, K):
    """n! / (K^n prod k_i!) on each K-tuple summing to n."""
    if K < 1:
        raise ValueError("som_dagger needs K >= 1")
    return Dist({v: Fraction(factorial(n), K ** n * prod(factorial(k) for k in v))
                 for v in som_fiber(n, K)})


def som_dagger_channel(N, K):
    return Channel({n: som_dagger(n, K) for n in range(N + 1)})


@dataclass(frozen=True)
class WeightVector:
    """Un-normalised K-fold Poisson product on tuples with sum <= bound."""

    lam: Fraction
    bound: int
    arity: int

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam <= 0 or self.bound < 0 or self.arity < 1:
            raise ValueError("need lam > 0, bound >= 0, arity >= 1")

    def tuples(self):
        return [v for n in range(self.bound + 1) for v in som_fiber(n, self.arity)]

    def weight(self, vec):
        return prod(pois_weight(self.lam, k) for k in vec)

    def weights(self):
        return {v: self.weight(v) for v in self.tuples()}

    def truncated(self):
        """Normalised restriction to the truncated region, as a Dist."""
        return Dist(self.weights(), normalise=True)


def random_predicate(carrier, rng, max_den=16):
    vals = {}
    for x in carrier:
        d = rng.randint(1, max_den)
        vals[x] = Fraction(rng.randint(0, d), d)
    return Predicate(vals)


def verify_sum_sufficiency(K, lams=DEFAULT_LAMBDAS, N=DEFAULT_TRUNC, seed=0, pairs=20):
    if K < 1 or N < 1:
        raise ValueError("need K >= 1 and N >= 1")
    lams = [Fraction(x) for x in lams]
    rep = Report(f"sum-poisson K={K} N={N}")
    rep.notes.append(f"truncated at sum <= {N}; e^(-K lambda) dropped from both sides")
    rep.notes.append("predicate adjointness checked only for predicates supported on the "
                     "truncated region")
    ns = list(range(N + 1))
    tuples = [v for n in ns for v in som_fiber(n, K)]
    sd = som_dagger_channel(N, K)
    back = compose(lift(som, tuples), sd)
    rep.add("som after som_dagger is identity", back == identity(ns))
    slots = Dist({i: Fraction(1, K) for i in range(K)})
    for n in range(1, N + 1):
        moved = dmap(lambda phi: tuple(phi[i] for i in range(K)), multinomial(slots, n))
        rep.add("som_dagger is a multinomial over slots", moved == som_dagger(n, K), n,
                first_difference(moved, som_dagger(n, K)))

    rng = random.Random(seed)
    preds = [(random_predicate(tuples, rng), random_predicate(ns, rng)) for _ in range(pairs)]
    for lam in lams:
        wv = WeightVector(lam, N, K)
        w = wv.weights()
        for n in ns:
            lhs = sum((w[v] for v in som_fiber(n, K)), Fraction(0))
            rhs = pois_weight(K * lam, n)
            rep.add("fiber mass is Poisson(K lambda)", lhs == rhs, f"lambda={lam} n={n}",
                    None if lhs == rhs else f"{lhs} != {rhs}")
            cond = Dist({v: w[v] for v in som_fiber(n, K)}, normalise=True)
            rep.add("conditional on sum is som_dagger", cond == som_dagger(n, K),
                    f"lambda={lam} n={n}", first_difference(cond, som_dagger(n, K)))
        # same conditional, computed as a Bayesian inversion of the truncated law
        dg = dagger(lift(som, tuples), wv.truncated())
        rep.add("dagger of som is som_dagger", dg == sd, f"lambda={lam}")
        for j, (p, q) in enumerate(preds):
            lhs = sum((w[v] * p(v) * q(som(v)) for v in tuples), Fraction(0))
            back_p = {n: sum((r * p(v) for v, r in sd(n).items()), Fraction(0)) for n in ns}
            rhs = sum((pois_weight(K * lam, n) * back_p[n] * q(n) for n in ns), Fraction(0))
            rep.add("predicate adjointness", lhs == rhs, f"lambda={lam} pair={j}",
                    None if lhs == rhs else f"{lhs} != {rhs}")
    return rep


def truncated_family(K, lams=DEFAULT_LAMBDAS, N=DEFAULT_TRUNC):
    return StateFamily(list(map(Fraction, lams)), lambda lam: WeightVector(lam, N, K).truncated(),
                       name=f"poisson^{K} truncated at {N}")
