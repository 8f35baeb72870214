"""Generic sufficiency checks for a sampled family, a statistic and a reverse channel.

All checks are exact and quantify only over the sampled parameters; a
pass is a claim about those parameters, never a proof over the whole
parameter space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import ewens, partitions, poisson, seqmult
from .channel import (Channel, DomainError, StateFamily, SupportError, channel_difference, compose,
                      identity, lift, pull, push)
from .dist import Dist, Predicate, dmap, update
from .msets import acc, carrier, enum_msets
from .report import Report, first_difference

SAMPLED_NOTE = "verified on sampled parameters only"


@dataclass
class SufficiencyCase:
    name: str
    family: StateFamily
    statistic: Callable[[Any], Any]
    reverse: Channel
    outcomes: tuple

    def __post_init__(self):
        self.outcomes = carrier(self.outcomes)

    def stat_values(self):
        return carrier({self.statistic(x) for x in self.outcomes})


def _joint_lhs(case, omega):
    s = case.statistic
    return Dist({(x, s(x)): r for x, r in omega.items()})


def _joint_rhs(case, omega):
    out = {}
    for y, m in dmap(case.statistic, omega).items():
        for x, r in case.reverse(y).items():
            out[(x, y)] = out.get((x, y), 0) + m * r
    return Dist(out)


def check_ket(case):
    """(id, s) pushed through c(a) equals (d, id) pushed through s(c(a))."""
    rep = Report(f"{case.name}: ket")
    rep.notes.append(SAMPLED_NOTE)
    for a, omega in case.family.states():
        try:
            lhs, rhs = _joint_lhs(case, omega), _joint_rhs(case, omega)
        except DomainError as e:
            rep.add("joint equation", False, a, str(e))
            continue
        rep.add("joint equation", lhs == rhs, a, first_difference(lhs, rhs))
    return rep


def generate_predicates(xs, ys, seed, count=8, max_den=16):
    """All point-predicate pairs plus ``count`` seeded random rational pairs."""
    pairs = [(Predicate.point(xs, x), Predicate.point(ys, y)) for x in xs for y in ys]
    rng = random.Random(seed)
    for _ in range(count):
        pairs.append((poisson.random_predicate(xs, rng, max_den),
                      poisson.random_predicate(ys, rng, max_den)))
    return pairs


def check_pred(case, seed=0, count=8, point_predicates=True):
    """c(a) |= p & (s << q)  equals  s(c(a)) |= (d << p) & q, exactly."""
    rep = Report(f"{case.name}: predicates")
    rep.notes.append(SAMPLED_NOTE)
    xs, ys = case.outcomes, case.stat_values()
    if point_predicates:
        pairs = generate_predicates(xs, ys, seed, count)
    else:
        rng = random.Random(seed)
        pairs = [(poisson.random_predicate(xs, rng), poisson.random_predicate(ys, rng))
                 for _ in range(count)]
    rev = Channel({y: case.reverse(y) for y in ys})
    s_lift = lift(case.statistic, xs)
    # both pulled predicates are parameter-free; keep only their nonzero values
    pulled = [(_nonzero(p & pull(s_lift, q)), _nonzero(pull(rev, p) & q)) for p, q in pairs]
    for a, omega in case.family.states():
        image = dmap(case.statistic, omega)
        bad = None
        for j, (left, right) in enumerate(pulled):
            lhs = sum((omega[x] * v for x, v in left), Fraction(0))
            rhs = sum((image[y] * v for y, v in right), Fraction(0))
            if lhs != rhs:
                bad = f"predicate pair {j}: {lhs} != {rhs}"
                break
        rep.add(f"adjointness over {len(pairs)} predicate pairs", bad is None, a, bad)
    return rep


def _nonzero(pred):
    return [(x, pred(x)) for x in pred.carrier() if pred(x)]


def check_conditional_independence(family, statistic, name="family"):
    """Condition each c(a) on every reachable value of ``statistic``.

    Returns the report and, when the conditionals do not depend on the
    parameter, the induced reverse channel (else ``None``).
    """
    rep = Report(f"{name}: conditionals")
    rep.notes.append(SAMPLED_NOTE)
    common = None
    reach = None
    for a, omega in family.states():
        image = dmap(statistic, omega)
        ys = image.support()
        if reach is None:
            reach = set(ys)
        elif set(ys) != reach:
            raise SupportError(f"parameter {a} reaches a different set of statistic values")
        xs = omega.support()
        rows = {y: update(omega, Predicate.indicator(xs, lambda x, y=y: statistic(x) == y))
                for y in ys}
        here = Channel(rows)
        if common is None:
            common = here
            rep.add("conditionals agree across parameters", True, a)
        else:
            rep.add("conditionals agree across parameters", here == common, a,
                    channel_difference(here, common))
    return rep, (common if rep.ok else None)


def check_via_split_idempotent(family, section, retraction, name="family"):
    """Premises of the split-idempotent argument, then its conclusion via :func:`check_ket`."""
    if not retraction.is_deterministic():
        raise ValueError("retraction must be a deterministic channel")
    rep = Report(f"{name}: split idempotent")
    rep.notes.append(SAMPLED_NOTE)
    rs = compose(retraction, section)
    rep.add("retraction after section is identity", rs == identity(section.domain), None,
            channel_difference(rs, identity(section.domain)))
    e = compose(section, retraction)
    for a, omega in family.states():
        moved = push(e, omega)
        rep.add("idempotent fixes the state", moved == omega, a, first_difference(moved, omega))
    fn = {x: w.support()[0] for x, w in retraction.rows()}
    case = SufficiencyCase(name, family, fn.__getitem__, section, retraction.domain)
    rep.extend(check_ket(case))
    return rep


# bundled cases

CASES = ("acc-iid", "mc-swapmn", "size-ewens", "sum-poisson")


def _label_carrier(labels, default="abc"):
    return carrier(labels if labels else list(default))


def acc_iid_case(X=None, K=3, params=None, max_den=8):
    X = _label_carrier(X)
    omegas = list(params) if params else seqmult.dist_grid(X, max_den)
    fam = StateFamily(omegas, lambda w: seqmult.iid(w, K), name="iid")
    arrc = seqmult.arr_channel(X, K)
    case = SufficiencyCase("acc-iid", fam, acc, arrc, seqmult.sequences(X, K))
    return case, arrc, seqmult.acc_channel(X, K), omegas


def mc_swapmn_case(X=None, K=3, params=None, max_den=8):
    X = _label_carrier(X)
    omegas = list(params) if params else seqmult.dist_grid(X, max_den)
    fam = StateFamily(omegas, lambda w: partitions.smn(w, K, X), name="smn")
    stkc = partitions.stk_channel(X, K)
    ms = enum_msets(X, K)
    case = SufficiencyCase("mc-swapmn", fam, partitions.mc, stkc, ms)
    return case, stkc, lift(partitions.mc, ms), omegas


def size_ewens_case(K=4, params=None):
    ts = [ewens.ewens_param(t) for t in (params or ewens.DEFAULT_TS)]
    fam = StateFamily(ts, lambda t: ewens.ewens_dist(K, t), name="ewens")
    sd = ewens.size_dagger_channel(K)
    parts = partitions.enum_partitions(K)
    case = SufficiencyCase("size-ewens", fam, partitions.psize, sd, parts)
    return case, sd, lift(partitions.psize, parts), ts


def sum_poisson_case(K=2, params=None, N=poisson.DEFAULT_TRUNC):
    lams = [Fraction(x) for x in (params or poisson.DEFAULT_LAMBDAS)]
    fam = poisson.truncated_family(K, lams, N)
    sd = poisson.som_dagger_channel(N, K)
    tuples = [v for n in range(N + 1) for v in poisson.som_fiber(n, K)]
    case = SufficiencyCase("sum-poisson", fam, poisson.som, sd, tuples)
    return case, sd, lift(poisson.som, tuples), lams


def run_generic(case, section, retraction, seed=0, pred_count=8):
    rep = Report(case.name)
    rep.extend(check_ket(case))
    rep.extend(check_pred(case, seed, pred_count))
    cond, extracted = check_conditional_independence(case.family, case.statistic, case.name)
    rep.extend(cond)
    if extracted is not None:
        want = Channel({y: case.reverse(y) for y in extracted.domain})
        rep.add("extracted conditional is the reverse channel", extracted == want, None,
                channel_difference(extracted, want))
        fed_back = SufficiencyCase(case.name, case.family, case.statistic, extracted,
                                   case.outcomes)
        rep.extend(check_ket(fed_back))
    rep.extend(check_via_split_idempotent(case.family, section, retraction, case.name))
    return rep


def run_case(name, k=None, carrier_labels=None, params=None, trunc=None, seed=0):
    """Run a bundled case: its dedicated theorem checks plus the generic checks."""
    if name == "acc-iid":
        K = k or 3
        case, s, r, omegas = acc_iid_case(carrier_labels, K, params)
        rep = seqmult.verify_acc_sufficiency(omegas, K, _label_carrier(carrier_labels))
    elif name == "mc-swapmn":
        K = k or 3
        case, s, r, omegas = mc_swapmn_case(carrier_labels, K, params)
        rep = partitions.verify_mc_sufficiency(omegas, K, _label_carrier(carrier_labels))
    elif name == "size-ewens":
        K = k or 4
        case, s, r, ts = size_ewens_case(K, params)
        rep = ewens.verify_size_sufficiency(K, ts)
    elif name == "sum-poisson":
        K = k or 2
        N = trunc or poisson.DEFAULT_TRUNC
        case, s, r, lams = sum_poisson_case(K, params, N)
        rep = poisson.verify_sum_sufficiency(K, lams, N, seed=seed)
    else:
        raise KeyError(f"unknown case {name!r}; choose from {', '.join(CASES)}")
    rep.extend(run_generic(case, s, r, seed))
    params = case.family.params
    shown = ", ".join(str(a) for a in params[:4]) + (", ..." if len(params) > 4 else "")
    rep.notes.append(f"{len(params)} parameter values: {shown}")
    return rep

