"""Sample signatures, the twist index family, IC and the Friedman estimate.

Index values are never rounded here; rounding is a presentation concern
(see :func:`round_value` and the CLI).
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from . import _kernels
from .text_core import ALPHABET, to_codes

METHODS = ("ic_friedman", "kasiski", "twist", "twist_plus", "twist_plus_plus")
ARGMAX_METHODS = ("twist", "twist_plus", "twist_plus_plus")


def remark_ceiling(n: int) -> int:
    """Quotient q of N = 12q + r; T(M, m) = 100 for every m > q."""
    return n // 12


def sample_signature(coset: str) -> tuple[float, ...]:
    """The 26 relative letter frequencies of *coset*, ascending."""
    if not coset:
        raise ValueError("sample signature of an empty coset is undefined")
    counts = Counter(coset)
    if any(ch not in ALPHABET for ch in counts):
        raise ValueError("coset must contain only the letters A-Z")
    n = len(coset)
    return tuple(sorted(counts.get(ch, 0) / n for ch in ALPHABET))


def twist_of_signature(sig: Iterable[float]) -> float:
    """Mass of the 13 largest entries minus mass of the 13 smallest."""
    values = sorted(sig)
    if len(values) != 26:
        raise ValueError(f"a signature has 26 entries, got {len(values)}")
    return sum(values[13:]) - sum(values[:13])


def twist_index(text: str, m: int) -> float:
    """T(M, m) = (100 / m) * sum of coset twists, unrounded."""
    return _kernels.twist_index(to_codes(text), m)


@dataclass(frozen=True)
class TwistSeries:
    """T(M, m) for m = 1..m_max of a text of length ``n``."""

    n: int
    values: tuple[float, ...]

    @property
    def m_max(self) -> int:
        return len(self.values)

    @property
    def q(self) -> int:
        return remark_ceiling(self.n)

    def __getitem__(self, m: int) -> float:
        if not 1 <= m <= self.m_max:
            raise KeyError(m)
        return self.values[m - 1]

    def as_dict(self) -> dict[int, float]:
        return {m: v for m, v in enumerate(self.values, start=1)}


def twist_series(text: str, m_max: int) -> TwistSeries:
    codes = to_codes(text)
    return TwistSeries(len(codes), tuple(_kernels.twist_range(codes, m_max)))


def twist_plus_series(series: TwistSeries) -> dict[int, float]:
    """T+(M, m) = T(M, m) - mean(T(M, 1..m-1)) for m = 2..m_max."""
    if series.m_max < 2:
        raise ValueError("twist+ needs T(M, m) for at least m = 1, 2")
    out: dict[int, float] = {}
    running = 0.0
    for m, t in enumerate(series.values, start=1):
        if m >= 2:
            out[m] = t - running / (m - 1)
        running += t
    return out


def twist_plus_plus_series(series: TwistSeries) -> dict[int, float]:
    """T++(M, m) = T(M, m) - (T(M, m-1) + T(M, m+1)) / 2.

    Defined for m = 2..series.m_max - 1, since each entry needs its right
    neighbour. Compute the series one step past the last m of interest.
    """
    if series.m_max < 3:
        raise ValueError("twist++ needs T(M, m) for at least m = 1, 2, 3")
    t = series.values
    return {m: t[m - 1] - 0.5 * (t[m - 2] + t[m]) for m in range(2, series.m_max)}


@dataclass(frozen=True)
class KeyLengthReport:
    method: str
    estimate: float | int | None
    domain: tuple[int, ...] = ()
    evidence: Mapping[int, float] | tuple = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")


def argmax_estimate(values: Mapping[int, float], domain: Iterable[int], method: str = "twist") -> KeyLengthReport:
    """Smallest m in *domain* attaining the maximum of *values*."""
    dom = tuple(sorted(set(domain)))
    if not dom:
        raise ValueError("argmax over an empty domain")
    missing = [m for m in dom if m not in values]
    if missing:
        raise ValueError(f"values undefined at m = {missing}")
    best = dom[0]
    for m in dom[1:]:
        if values[m] > values[best]:
            best = m
    return KeyLengthReport(method, best, dom, {m: values[m] for m in dom})


def twist_family(text: str, domain: Iterable[int]) -> dict[str, KeyLengthReport]:
    """Argmax reports of twist, twist+ and twist++ over one m-domain.

    T is evaluated through max(domain) + 1 so twist++ is defined on the
    whole domain.
    """
    dom = tuple(sorted(set(domain)))
    if not dom or dom[0] < 2:
        raise ValueError("twist-family domain must be nonempty with all m >= 2")
    series = twist_series(text, dom[-1] + 1)
    return {
        "twist": argmax_estimate(series.as_dict(), dom, "twist"),
        "twist_plus": argmax_estimate(twist_plus_series(series), dom, "twist_plus"),
        "twist_plus_plus": argmax_estimate(twist_plus_plus_series(series), dom, "twist_plus_plus"),
    }


def index_of_coincidence(text: str) -> float:
    n = len(text)
    if n < 2:
        raise ValueError("index of coincidence needs at least 2 letters")
    counts = to_codes(text)
    total = sum(f * (f - 1) for f in Counter(counts).values())
    return total / (n * (n - 1))


@dataclass(frozen=True)
class FriedmanConstants:
    """Expected IC of the plaintext language and of uniform random text."""

    kappa_plain: float
    kappa_random: float


# Reproduces the IC-based estimates quoted for both worked examples.
FRIEDMAN_DEFAULT = FriedmanConstants(0.066, 0.038)
# The common textbook variant: 0.0265 N / ((0.065 - IC) + N (IC - 0.0385)).
FRIEDMAN_TEXTBOOK = FriedmanConstants(0.065, 0.0385)


class EstimateUndefined(ValueError):
    """The Friedman denominator is not positive (text too uniform)."""


def friedman_from_ic(ic: float, n: int, constants: FriedmanConstants = FRIEDMAN_DEFAULT) -> float:
    kp, kr = constants.kappa_plain, constants.kappa_random
    denom = (kp - ic) + n * (ic - kr)
    if denom <= 0:
        raise EstimateUndefined(f"Friedman estimate undefined for IC={ic:.5f}, N={n}")
    return (kp - kr) * n / denom


def friedman_estimate(text: str, constants: FriedmanConstants = FRIEDMAN_DEFAULT) -> float:
    return friedman_from_ic(index_of_coincidence(text), len(text), constants)


def round_value(value: float, style: str) -> float | int:
    """Presentation rounding: ``"int"``, ``"3dp"`` or ``"none"``."""
    if style == "int":
        return int(round(value))
    if style == "3dp":
        return round(value, 3)
    if style == "none":
        return value
    raise ValueError(f"unknown rounding style {style!r}")
