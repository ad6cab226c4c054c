"""Babbage-Kasiski repeated n-gram distances and divisor census.

Every pair of occurrences of a repeated n-gram is recorded (not only
consecutive ones). Overlapping repeats longer than n contribute one
record per n-gram they contain, so a repeated 5-letter run yields three
trigram records at the same distance. The set of *distinct* distances is
what a human analyst would list.
"""
from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass
from functools import reduce
from math import gcd


class KasiskiInconclusive(ValueError):
    """No repeated n-grams, hence no distances to analyze."""


@dataclass(frozen=True)
class Repeat:
    ngram: str
    pos_a: int  # 1-based start of the earlier occurrence
    pos_b: int

    @property
    def distance(self) -> int:
        return self.pos_b - self.pos_a


@dataclass(frozen=True)
class KasiskiReport:
    ngram_size: int
    repeats: tuple[Repeat, ...]

    @property
    def distances(self) -> list[int]:
        """All pairwise distances, with multiplicity, ascending."""
        return sorted(r.distance for r in self.repeats)

    @property
    def distinct_distances(self) -> list[int]:
        return sorted({r.distance for r in self.repeats})

    @property
    def overall_gcd(self) -> int:
        return reduce(gcd, self.distinct_distances, 0)


def find_repeat_distances(text: str, n: int = 3) -> KasiskiReport:
    if n < 2:
        raise ValueError(f"n-gram size must be >= 2, got {n}")
    if len(text) < n:
        raise ValueError(f"text of length {len(text)} is shorter than n={n}")
    positions: dict[str, list[int]] = defaultdict(list)
    for i in range(len(text) - n + 1):
        positions[text[i:i + n]].append(i + 1)
    repeats = [
        Repeat(gram, a, b)
        for gram, pos in positions.items()
        if len(pos) > 1
        for x, a in enumerate(pos)
        for b in pos[x + 1:]
    ]
    repeats.sort(key=lambda r: (r.distance, r.pos_a))
    return KasiskiReport(n, tuple(repeats))


@dataclass(frozen=True)
class DivisorCensus:
    counts: dict[int, int]
    overall_gcd: int
    total: int

    def top(self, limit: int = 5) -> list[tuple[int, int]]:
        """Divisors by descending count, larger divisor first on ties."""
        ranked = sorted(self.counts.items(), key=lambda kv: (-kv[1], -kv[0]))
        return ranked[:limit]


def divisor_census(distances: Iterable[int], d_max: int = 20) -> DivisorCensus:
    """Count, for each d in 2..d_max, how many distances d divides.

    Pass distinct distances to reproduce a hand census; pass the full
    multiset to weight by repeat frequency.
    """
    dist = list(distances)
    if not dist:
        raise KasiskiInconclusive("no repeated n-grams: Kasiski test is inconclusive")
    if any(d < 1 for d in dist):
        raise ValueError("distances must be positive")
    counts = {d: sum(1 for x in dist if x % d == 0) for d in range(2, d_max + 1)}
    return DivisorCensus(counts, reduce(gcd, dist, 0), len(dist))


def subset_gcd(distances: Iterable[int]) -> int:
    return reduce(gcd, distances, 0)
