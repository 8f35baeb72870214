"""Exact finite distributions, fuzzy predicates, validity and updating."""

from __future__ import annotations

from fractions import Fraction

from .msets import outcome_key


class ZeroValidityError(ValueError):
    """Raised when updating with a predicate that has validity zero."""


def _frac(r):
    if isinstance(r, float):
        raise TypeError("floats are not accepted; use Fraction or int")
    return Fraction(r)


def format_outcome(x):
    if isinstance(x, tuple):
        return "(" + ",".join(format_outcome(y) for y in x) + ")"
    return str(x)


class Dist:
    """A finitely supported probability distribution with rational weights.

    Weights must add up to exactly one. Zero weights are dropped on
    construction. Pass ``normalise=True`` to rescale arbitrary positive
    weights instead.
    """

    __slots__ = ("_w",)

    def __init__(self, weights, normalise=False):
        w = {}
        for x, r in dict(weights).items():
            r = _frac(r)
            if r < 0:
                raise ValueError(f"negative weight {r} for {format_outcome(x)}")
            if r:
                outcome_key(x)
                w[x] = r
        total = sum(w.values(), Fraction(0))
        if normalise:
            if total == 0:
                raise ValueError("cannot normalise zero mass")
            w = {x: r / total for x, r in w.items()}
        elif total != 1:
            raise ValueError(f"weights sum to {total}, not 1")
        self._w = dict(sorted(w.items(), key=lambda kv: outcome_key(kv[0])))

    def __getitem__(self, x):
        return self._w.get(x, Fraction(0))

    def items(self):
        return self._w.items()

    def support(self):
        return tuple(self._w)

    def __iter__(self):
        return iter(self._w)

    def __len__(self):
        return len(self._w)

    def __eq__(self, other):
        if not isinstance(other, Dist):
            return NotImplemented
        return self._w == other._w

    def __hash__(self):
        return hash(tuple(self._w.items()))

    def __repr__(self):
        return f"Dist({self})"

    def __str__(self):
        return " + ".join(f"{r}|{format_outcome(x)}>" for x, r in self._w.items())

    def to_json(self):
        return {
            "kind": "dist",
            "entries": [
                {"outcome": format_outcome(x), "prob": str(r)} for x, r in self._w.items()
            ],
        }


class Predicate:
    """A [0,1]-valued function on an explicit finite carrier."""

    __slots__ = ("_v",)

    def __init__(self, values):
        v = {}
        for x, r in dict(values).items():
            r = _frac(r)
            if not 0 <= r <= 1:
                raise ValueError(f"predicate value {r} outside [0,1]")
            v[x] = r
        self._v = v

    @classmethod
    def truth(cls, carrier):
        return cls({x: 1 for x in carrier})

    @classmethod
    def falsity(cls, carrier):
        return cls({x: 0 for x in carrier})

    @classmethod
    def point(cls, carrier, y):
        carrier = list(carrier)
        if y not in carrier:
            raise KeyError(f"{format_outcome(y)} not in predicate carrier")
        return cls({x: int(x == y) for x in carrier})

    @classmethod
    def indicator(cls, carrier, test):
        return cls({x: int(bool(test(x))) for x in carrier})

    def carrier(self):
        return tuple(self._v)

    def __call__(self, x):
        try:
            return self._v[x]
        except KeyError:
            raise KeyError(f"predicate undefined on {format_outcome(x)}") from None

    def __and__(self, other):
        """Pointwise product, on the common carrier."""
        return Predicate({x: r * other(x) for x, r in self._v.items() if x in other._v})

    def __eq__(self, other):
        if not isinstance(other, Predicate):
            return NotImplemented
        return self._v == other._v

    def __hash__(self):
        return hash(frozenset(self._v.items()))

    def __repr__(self):
        body = ", ".join(f"{format_outcome(x)}: {r}" for x, r in self._v.items())
        return f"Predicate({{{body}}})"


def dirac(x):
    return Dist({x: 1})


def dmap(f, omega):
    out = {}
    for x, r in omega.items():
        y = f(x)
        out[y] = out.get(y, 0) + r
    return Dist(out)


def dtensor(omega, rho):
    return Dist({(x, y): r * s for x, r in omega.items() for y, s in rho.items()})


def marginal(tau, i):
    """Marginal on component ``i`` (1-based) of a distribution over tuples."""
    if i < 1:
        raise IndexError("marginal index is 1-based")

    def proj(x):
        if not isinstance(x, tuple) or len(x) < i:
            raise ValueError(f"outcome {format_outcome(x)} has no component {i}")
        return x[i - 1]

    return dmap(proj, tau)


def validity(omega, p):
    return sum((r * p(x) for x, r in omega.items()), Fraction(0))


def update(omega, p):
    v = validity(omega, p)
    if v == 0:
        raise ZeroValidityError("cannot update with a predicate of validity zero")
    return Dist({x: r * p(x) / v for x, r in omega.items()})


def uniform(outcomes):
    outcomes = list(outcomes)
    if not outcomes:
        raise ValueError("uniform distribution needs at least one outcome")
    if len(set(outcomes)) != len(outcomes):
        raise ValueError("uniform distribution over duplicate outcomes")
    n = len(outcomes)
    return Dist({x: Fraction(1, n) for x in outcomes})
