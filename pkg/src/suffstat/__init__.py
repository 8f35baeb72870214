"""Exact discrete channels, multiset combinatorics and sufficient-statistic checks."""

from .channel import Channel, StateFamily, compose, dagger, disintegrate, identity, lift, pull, push
from .dist import Dist, Predicate, dirac, dmap, dtensor, marginal, uniform, update, validity
from .msets import Multiset, acc
from .partitions import Partition
from .report import Report

__version__ = "0.1.0"
