"""Command-line front end: ``suffstat eval|verify|enumerate|dagger|disintegrate``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import ewens, partitions, poisson, seqmult, suffcheck
from .channel import Channel, dagger, disintegrate, lift
from .dist import Dist, format_outcome
from .ketparse import ParseError, parse_dist, parse_outcome, parse_rational
from .msets import Multiset, acc, carrier, enum_acc_fiber, enum_msets, enum_perms

FUNCTIONS = {
    "identity": lambda x: x,
    "acc": acc,
    "mc": partitions.mc,
    "size": partitions.psize,
    "som": poisson.som,
    "const": lambda x: "*",
}


def _labels(text):
    return carrier(parse_outcome(t) for t in text.split(",") if t.strip()) if text else None


def _rationals(text):
    return [parse_rational(t) for t in text.split(",") if t.strip()]


def _require(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required for {args.what}")


class UsageError(ValueError):
    pass


def _multiset_arg(text, what):
    x = parse_outcome(text)
    if not isinstance(x, Multiset):
        raise UsageError(f"{what} must be a multiset literal like {{a:2,b:1}}")
    return x


def _eval(args):
    what = args.what
    if what in ("multinomial", "iid", "smn", "pamn"):
        _require(args, "omega", "k")
        omega = parse_dist(args.omega)
        fn = {"multinomial": seqmult.multinomial, "iid": seqmult.iid,
              "smn": partitions.smn, "pamn": partitions.pamn}[what]
        return fn(omega, args.k)
    if what == "arr":
        _require(args, "phi")
        return seqmult.arr(_multiset_arg(args.phi, "--phi"))
    if what == "stk":
        _require(args, "sigma", "carrier")
        sigma = parse_outcome(args.sigma)
        if not isinstance(sigma, partitions.Partition):
            raise UsageError("--sigma must be a partition literal like {1:2,2:1}")
        return partitions.stk(sigma, _labels(args.carrier))
    if what == "ep":
        _require(args, "phi", "carrier")
        phi = _multiset_arg(args.phi, "--phi")
        return partitions.ep(_labels(args.carrier), phi.size())(phi)
    if what in ("ewens", "stirling"):
        _require(args, "k", "t")
        fn = ewens.ewens_dist if what == "ewens" else ewens.stirling_dist
        return fn(args.k, parse_rational(args.t))
    if what == "size-dagger":
        _require(args, "k", "n")
        return ewens.size_dagger(args.k, args.n)
    if what == "som-dagger":
        _require(args, "k", "n")
        return poisson.som_dagger(args.n, args.k)
    raise UsageError(f"unknown eval target {what}")


def _verify(args):
    params = None
    raw = args.params or args.t or args.lam
    if raw:
        if args.case in ("acc-iid", "mc-swapmn"):
            params = [parse_dist(p) for p in raw.split(";") if p.strip()]
        else:
            params = _rationals(raw)
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("SUFFSTAT_SEED", "0"))
    return suffcheck.run_case(args.case, k=args.k, carrier_labels=_labels(args.carrier),
                              params=params, trunc=args.trunc, seed=seed)


def _enumerate(args):
    what = args.what
    if what == "partitions":
        _require(args, "k")
        return partitions.enum_partitions(args.k)
    if what == "msets":
        _require(args, "carrier", "k")
        return enum_msets(_labels(args.carrier), args.k)
    if what == "sequences":
        _require(args, "carrier", "k")
        return seqmult.sequences(_labels(args.carrier), args.k)
    if what == "perms":
        _require(args, "carrier")
        return [tuple(p.values()) for p in enum_perms(_labels(args.carrier))]
    if what == "fiber":
        _require(args, "phi")
        return enum_acc_fiber(_multiset_arg(args.phi, "--phi"))
    raise UsageError(f"unknown enumeration {what}")


def _dagger(args):
    omega = parse_dist(args.omega)
    f = FUNCTIONS[args.f]
    return dagger(lift(f, omega.support()), omega)


def _disintegrate(args):
    joint = parse_dist(args.joint)
    d = disintegrate(Channel({"*": joint}))
    return Channel({y: w for (_, y), w in d.rows()})


def _emit(value, as_json, out):
    if isinstance(value, (Dist, Channel)):
        print(json.dumps(value.to_json()) if as_json else str(value), file=out)
    elif isinstance(value, list):
        items = [format_outcome(x) for x in value]
        if as_json:
            print(json.dumps({"kind": "list", "items": items}), file=out)
        else:
            for s in items:
                print(s, file=out)
    else:
        raise TypeError(type(value))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of ket text")

    p = argparse.ArgumentParser(prog="suffstat", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate a named distribution")
    e.add_argument("what", choices=["multinomial", "iid", "smn", "pamn", "arr", "stk", "ep",
                                    "ewens", "stirling", "size-dagger", "som-dagger"])
    e.add_argument("--omega", help="distribution in ket form, e.g. '1/2|a> + 1/2|b>'")
    e.add_argument("--k", type=int)
    e.add_argument("--n", type=int)
    e.add_argument("--t", help="Ewens parameter as p/q")
    e.add_argument("--phi", help="multiset literal, e.g. {a:2,b:1}")
    e.add_argument("--sigma", help="partition literal, e.g. {1:2,2:1}")
    e.add_argument("--carrier", help="comma-separated labels")

    v = sub.add_parser("verify", parents=[common], help="run a bundled sufficiency case")
    v.add_argument("case", choices=suffcheck.CASES)
    v.add_argument("--k", type=int)
    v.add_argument("--carrier", help="comma-separated labels (acc-iid, mc-swapmn)")
    v.add_argument("--params", help="';'-separated kets, or comma-separated rationals")
    v.add_argument("--t", help="Ewens parameters, comma-separated")
    v.add_argument("--lambda", dest="lam", help="Poisson rates, comma-separated")
    v.add_argument("--trunc", type=int, help="truncation bound for sum-poisson")
    v.add_argument("--seed", type=int, help="predicate seed (default: $SUFFSTAT_SEED or 0)")
    v.add_argument("-v", "--verbose", action="store_true", help="list every check")

    n = sub.add_parser("enumerate", parents=[common], help="list a finite carrier")
    n.add_argument("what", choices=["partitions", "msets", "sequences", "perms", "fiber"])
    n.add_argument("--k", type=int)
    n.add_argument("--carrier")
    n.add_argument("--phi")

    d = sub.add_parser("dagger", parents=[common], help="Bayesian inversion of a builtin function")
    d.add_argument("--f", required=True, choices=sorted(FUNCTIONS))
    d.add_argument("--omega", required=True)

    j = sub.add_parser("disintegrate", parents=[common],
                       help="conditional of the first component given the second")
    j.add_argument("--joint", required=True, help="distribution over pairs (x,y)")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            rep = _verify(args)
            if args.json:
                print(json.dumps(rep.to_json()), file=out)
            else:
                print(rep.render(verbose=args.verbose), file=out)
            return 0 if rep.ok else 1
        handler = {"eval": _eval, "enumerate": _enumerate, "dagger": _dagger,
                   "disintegrate": _disintegrate}[args.command]
        _emit(handler(args), args.json, out)
        return 0
    except (ParseError, UsageError, ValueError, KeyError) as e:
        print(f"suffstat: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
