"""Parser for ket, multiset and partition literals, plus JSON round-tripping.

Grammar (whitespace is insignificant)::

    expr     := term ('+' term)*
    term     := rational '|' outcome '>'
    rational := int | int '/' int
    outcome  := label | '(' [outcome (',' outcome)*] ')' | '{' [key ':' int (',' key ':' int)*] '}'

A label made only of digits is read as an integer. A brace literal whose
keys are all positive integers is a partition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .channel import Channel
from .dist import Dist
from .msets import Multiset
from .partitions import Partition

_LABEL = re.compile(r"[A-Za-z0-9_.\-]+")
_INT = re.compile(r"[0-9]+")


class ParseError(ValueError):
    def __init__(self, message, text, pos):
        self.text, self.pos = text, pos
        super().__init__(f"{message} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")


@dataclass
class KetExpr:
    terms: list

    def to_dist(self):
        seen = set()
        for _, x in self.terms:
            if x in seen:
                raise ValueError(f"outcome {x} appears twice")
            seen.add(x)
        total = sum((r for r, _ in self.terms), Fraction(0))
        if total != 1:
            raise ValueError(f"coefficients sum to {total}, not 1")
        return Dist({x: r for r, x in self.terms})


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ParseError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def match(self, rx, what):
        self.skip()
        m = rx.match(self.text, self.pos)
        if not m:
            self.error(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def end(self):
        if self.peek():
            self.error("unexpected trailing input")

    def integer(self):
        return int(self.match(_INT, "integer"))

    def rational(self):
        num = self.integer()
        if self.peek() == "/":
            self.pos += 1
            den = self.integer()
            if den == 0:
                self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def label(self):
        tok = self.match(_LABEL, "label")
        return int(tok) if tok.isdigit() else tok

    def outcome(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            items = []
            if self.peek() != ")":
                items.append(self.outcome())
                while self.peek() == ",":
                    self.pos += 1
                    items.append(self.outcome())
            self.expect(")")
            return tuple(items)
        if ch == "{":
            self.pos += 1
            counts = {}
            if self.peek() != "}":
                while True:
                    start = self.pos
                    key = self.label()
                    self.expect(":")
                    n = self.integer()
                    if key in counts:
                        self.pos = start
                        self.error(f"repeated key {key}")
                    counts[key] = n
                    if self.peek() != ",":
                        break
                    self.pos += 1
            self.expect("}")
            if counts and all(isinstance(k, int) and k >= 1 for k in counts):
                return Partition(counts)
            return Multiset(counts)
        return self.label()

    def term(self):
        r = self.rational()
        if r <= 0:
            self.error("coefficients must be positive")
        self.expect("|")
        x = self.outcome()
        self.expect(">")
        return r, x

    def expr(self):
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        self.end()
        return KetExpr(terms)


def parse_ket(text):
    return _Parser(text).expr()


def parse_dist(text):
    return parse_ket(text).to_dist()


def parse_outcome(text):
    p = _Parser(text)
    x = p.outcome()
    p.end()
    return x


def parse_rational(text):
    p = _Parser(text)
    r = p.rational()
    p.end()
    return r


def dist_from_json(obj):
    if obj.get("kind") != "dist":
        raise ValueError("not a dist object")
    return Dist({parse_outcome(e["outcome"]): parse_rational(e["prob"]) for e in obj["entries"]})


def channel_from_json(obj):
    if obj.get("kind") != "channel":
        raise ValueError("not a channel object")
    return Channel({parse_outcome(r["input"]): dist_from_json(r["dist"]) for r in obj["rows"]})
