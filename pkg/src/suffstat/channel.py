"""Channels (finite Markov kernels) and their Kleisli structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .dist import Dist, Predicate, dirac, dmap, dtensor, format_outcome, update
from .msets import outcome_key
from .report import Report, first_difference


class DomainError(ValueError):
    """An input falls outside the domain a channel was declared on."""


class SupportError(ValueError):
    """A dagger or conditional was requested where the prior gives no mass."""


def _ordered(xs):
    seen = list(dict.fromkeys(xs))
    return tuple(sorted(seen, key=outcome_key))


class Channel:
    """A map from each element of a finite domain to a distribution.

    ``codomain`` defaults to the union of the supports of all rows.
    """

    __slots__ = ("domain", "codomain", "_k")

    def __init__(self, kernel, codomain=None):
        kernel = dict(kernel)
        for x, w in kernel.items():
            if not isinstance(w, Dist):
                raise TypeError(f"row {format_outcome(x)} is not a Dist")
        self.domain = _ordered(kernel)
        self._k = {x: kernel[x] for x in self.domain}
        reached = _ordered(y for w in self._k.values() for y in w.support())
        if codomain is None:
            self.codomain = reached
        else:
            self.codomain = _ordered(codomain)
            missing = set(reached) - set(self.codomain)
            if missing:
                y = min(missing, key=outcome_key)
                raise DomainError(f"row output {format_outcome(y)} outside declared codomain")

    @classmethod
    def from_function(cls, domain, fn, codomain=None):
        return cls({x: fn(x) for x in domain}, codomain)

    def __call__(self, x):
        try:
            return self._k[x]
        except KeyError:
            raise DomainError(f"{format_outcome(x)} not in channel domain") from None

    def rows(self):
        return self._k.items()

    def is_deterministic(self):
        return all(len(w) == 1 for w in self._k.values())

    def __eq__(self, other):
        if not isinstance(other, Channel):
            return NotImplemented
        return self._k == other._k

    def __hash__(self):
        return hash(tuple(self._k.items()))

    def __repr__(self):
        return f"Channel({len(self.domain)} rows)"

    def __str__(self):
        return "\n".join(f"{format_outcome(x)} => {w}" for x, w in self._k.items())

    def to_json(self):
        return {
            "kind": "channel",
            "rows": [{"input": format_outcome(x), "dist": w.to_json()} for x, w in self._k.items()],
        }


@dataclass
class StateFamily:
    """A parameterised family of states, sampled at finitely many parameters."""

    params: list
    evaluate: Callable[[Any], Dist]
    name: str = "family"
    _cache: list = field(default=None, init=False, repr=False, compare=False)

    def states(self):
        if self._cache is None:
            self._cache = [(a, self.evaluate(a)) for a in self.params]
        return self._cache


def identity(domain):
    return Channel({x: dirac(x) for x in domain})


def lift(f, domain):
    """Deterministic channel x |-> 1|f(x)>."""
    return Channel({x: dirac(f(x)) for x in domain})


def push(c, omega):
    out = {}
    for x, r in omega.items():
        for y, s in c(x).items():
            out[y] = out.get(y, 0) + r * s
    return Dist(out)


def compose(d, c):
    """Kleisli composite: first ``c``, then ``d``."""
    return Channel({x: push(d, w) for x, w in c.rows()})


def ctensor(c, d):
    return Channel({(x, y): dtensor(c(x), d(y)) for x in c.domain for y in d.domain})


def tuple_(c, d):
    """Channel x |-> c(x) (x) d(x), i.e. copy followed by c and d in parallel."""
    if set(c.domain) != set(d.domain):
        raise DomainError("tuple of channels with different domains")
    return Channel({x: dtensor(c(x), d(x)) for x in c.domain})


def pull(c, q):
    """Backward predicate transformation x |-> sum_y c(x)(y) q(y)."""
    return Predicate({x: sum((s * q(y) for y, s in w.items()), Fraction(0)) for x, w in c.rows()})


def dagger(c, omega, codomain=None):
    """Bayesian inversion of ``c`` with respect to the prior ``omega``.

    Defined on ``codomain`` (default: the channel's codomain); every
    element of it must receive positive mass under ``push(c, omega)``.
    """
    pushed = push(c, omega)
    targets = c.codomain if codomain is None else _ordered(codomain)
    rows = {}
    for y in targets:
        if pushed[y] == 0:
            raise SupportError(f"pushforward gives no mass to {format_outcome(y)}")
        rows[y] = Dist({x: r * c(x)[y] / pushed[y] for x, r in omega.items()})
    return Channel(rows)


def dagger_by_update(c, omega, codomain=None):
    """Same as :func:`dagger`, computed as omega updated with c << 1_y."""
    targets = c.codomain if codomain is None else _ordered(codomain)
    rows = {}
    for y in targets:
        try:
            rows[y] = update(omega, pull(c, Predicate.point(c.codomain, y)))
        except ValueError as e:
            raise SupportError(str(e)) from None
    return Channel(rows)


def channel_difference(lhs, rhs):
    if set(lhs.domain) != set(rhs.domain):
        return f"domains differ: {len(lhs.domain)} vs {len(rhs.domain)} inputs"
    for x in lhs.domain:
        diff = first_difference(lhs(x), rhs(x))
        if diff:
            return f"input {format_outcome(x)} {diff}"
    return None


def check_det_dagger_epi(f, omega, name="det-dagger-epi"):
    """Check the three deterministic-dagger-epi equations for ``f`` at ``omega``.

    The dagger lives on the image of ``f``; ``omega`` is taken on its support.
    """
    dom = omega.support()
    fc = lift(f, dom)
    fd = dagger(fc, omega)
    rep = Report(name)
    rep.add("dagger pushes image back to prior", push(fd, dmap(f, omega)) == omega,
            counterexample=first_difference(push(fd, dmap(f, omega)), omega))
    lhs = compose(fc, fd)
    rep.add("f after its dagger is identity", lhs == identity(fc.codomain),
            counterexample=channel_difference(lhs, identity(fc.codomain)))
    e = compose(fd, fc)
    ed = dagger(e, omega)
    rep.add("dagger of f-dagger-f is itself", ed == e, counterexample=channel_difference(ed, e))
    return rep


def disintegrate(c):
    """Conditional channel (a, y) |-> distribution of x given y under c(a).

    ``c`` must map into pairs (x, y). Pairs (a, y) where y has zero mass are
    left out of the domain.
    """
    rows = {}
    for a, w in c.rows():
        ymarg = {}
        for xy, r in w.items():
            _pair(xy)
            ymarg[xy[1]] = ymarg.get(xy[1], 0) + r
        for y, m in ymarg.items():
            rows[(a, y)] = Dist({xy[0]: r / m for xy, r in w.items() if xy[1] == y})
    return Channel(rows)


def _pair(xy):
    if not isinstance(xy, tuple) or len(xy) != 2:
        raise ValueError(f"expected a pair outcome, got {format_outcome(xy)}")


def check_disintegration(c, d, name="disintegration"):
    """Check c(a) = sum_y c(a)_Y(y) * d(a,y) (x) 1|y> for every a."""
    rep = Report(name)
    for a, w in c.rows():
        ymarg = dmap(lambda xy: xy[1], w)
        rebuilt = {}
        for y, m in ymarg.items():
            for x, r in d((a, y)).items():
                rebuilt[(x, y)] = rebuilt.get((x, y), 0) + m * r
        rebuilt = Dist(rebuilt)
        rep.add("joint rebuilt from marginal and conditional", rebuilt == w, param=format_outcome(a),
                counterexample=first_difference(rebuilt, w))
    return rep


def check_split_idempotent(section, retraction, name="split-idempotent"):
    """Check retraction . section = id; return the report and section . retraction."""
    if set(section.codomain) - set(retraction.domain):
        raise DomainError("section lands outside the retraction's domain")
    rep = Report(name)
    rs = compose(retraction, section)
    ident = identity(section.domain)
    rep.add("retraction after section is identity", rs == ident,
            counterexample=channel_difference(rs, ident))
    return rep, compose(section, retraction)
