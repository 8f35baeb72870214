"""Multisets over finite labelled carriers and the counting that goes with them."""

from __future__ import annotations

import itertools
from math import factorial, prod


def atom_key(x):
    """Sort key for outcome values; ints sort before strings."""
    if isinstance(x, bool):
        raise TypeError("booleans are not outcomes")
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, Multiset):
        return (2, x.sort_key())
    if isinstance(x, tuple):
        return (3, tuple(atom_key(y) for y in x))
    raise TypeError(f"unsupported outcome {x!r}")


outcome_key = atom_key


class Multiset:
    """Immutable finite multiset: a map element -> positive count.

    Zero counts are dropped, so the stored keys are exactly the support.
    Two multisets compare by their sorted expansion, which makes
    ``{a:2} < {a:1,b:1} < {b:2}``.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, counts=None):
        if counts is None:
            counts = {}
        items = []
        for x, n in dict(counts).items():
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise ValueError(f"bad multiplicity {n!r} for {x!r}")
            if n:
                atom_key(x)
                items.append((x, n))
        items.sort(key=lambda kv: atom_key(kv[0]))
        self._items = tuple(items)
        self._hash = None

    @classmethod
    def from_iterable(cls, xs):
        counts = {}
        for x in xs:
            counts[x] = counts.get(x, 0) + 1
        return cls(counts)

    def items(self):
        return self._items

    def support(self):
        return tuple(x for x, _ in self._items)

    def __getitem__(self, x):
        for y, n in self._items:
            if y == x:
                return n
        return 0

    def __iter__(self):
        return iter(self.support())

    def __len__(self):
        return len(self._items)

    def __contains__(self, x):
        return any(y == x for y, _ in self._items)

    def elements(self):
        """Sorted expansion, each element repeated by its multiplicity."""
        return tuple(x for x, n in self._items for _ in range(n))

    def sort_key(self):
        return tuple(atom_key(x) for x in self.elements())

    def size(self):
        return sum(n for _, n in self._items)

    def __add__(self, other):
        counts = dict(self._items)
        for x, n in other.items():
            counts[x] = counts.get(x, 0) + n
        return type(self)(counts)

    def __sub__(self, other):
        counts = dict(self._items)
        for x, n in other.items():
            left = counts.get(x, 0) - n
            if left < 0:
                raise ValueError(f"cannot remove {n} copies of {x!r}")
            counts[x] = left
        return type(self)(counts)

    def __eq__(self, other):
        if not isinstance(other, Multiset):
            return NotImplemented
        return type(self) is type(other) and self._items == other._items

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self._items))
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        return self == other or self < other

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        return "{" + ",".join(f"{x}:{n}" for x, n in self._items) + "}"


def carrier(labels):
    """Normalise a collection of distinct labels into an ascending tuple."""
    labels = list(labels)
    if len(set(labels)) != len(labels):
        raise ValueError(f"carrier labels must be distinct: {labels}")
    return tuple(sorted(labels, key=atom_key))


def mset_size(phi):
    return phi.size()


def mset_facto(phi):
    """Product of the factorials of the multiplicities."""
    return prod(factorial(n) for _, n in phi.items())


def mset_coefm(phi):
    """Multinomial coefficient: number of sequences accumulating to ``phi``."""
    return factorial(phi.size()) // mset_facto(phi)


def mset_binom(n, phi):
    """n! / (phi! * (n - |phi|)!)."""
    k = phi.size()
    if n < k:
        raise ValueError(f"carrier of size {n} too small for multiset of size {k}")
    return factorial(n) // (mset_facto(phi) * factorial(n - k))


def mset_map(f, phi):
    counts = {}
    for x, n in phi.items():
        y = f(x)
        counts[y] = counts.get(y, 0) + n
    return Multiset(counts)


def acc(seq):
    return Multiset.from_iterable(seq)


def enum_msets(X, K):
    """All multisets of size ``K`` over ``X``, ascending.

    There are C(|X|+K-1, K) of them.
    """
    X = carrier(X)
    return [acc(c) for c in itertools.combinations_with_replacement(X, K)]


def enum_acc_fiber(phi):
    """All sequences whose accumulation is ``phi``, in lexicographic order."""
    out = []
    items = list(phi.items())

    def go(prefix, remaining):
        if not any(remaining):
            out.append(tuple(prefix))
            return
        for i, (x, _) in enumerate(items):
            if remaining[i]:
                remaining[i] -= 1
                prefix.append(x)
                go(prefix, remaining)
                prefix.pop()
                remaining[i] += 1

    go([], [n for _, n in items])
    return out


def enum_perms(X):
    """All bijections X -> X as dicts, in lexicographic order of images."""
    X = carrier(X)
    return [dict(zip(X, img)) for img in itertools.permutations(X)]
