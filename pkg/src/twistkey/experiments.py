"""Monte-Carlo accuracy grids and the monotonicity sweep.

Randomness is derived hierarchically from a master seed with
:class:`numpy.random.SeedSequence`: the plaintext for text ``t`` at length
``N`` comes from ``(seed, 0, N, t)`` and key ``j`` for key length ``k`` from
``(seed, 1, N, k, t, j)``. Every trial therefore has its own stream, so
cells can run in any order or in separate processes with identical
results, and the same plaintexts are shared across key lengths and
methods.
"""
from __future__ import annotations

import csv
import json
import os
from collections import Counter
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .metrics import (
    EstimateUndefined,
    FRIEDMAN_DEFAULT,
    friedman_estimate,
    remark_ceiling,
    twist_plus_plus_series,
    twist_plus_series,
    TwistSeries,
)
from .text_core import ALPHABET, coset_sizes, from_codes, key_shifts, read_text, to_codes

GRID_METHODS = ("twist", "twist_plus", "twist_plus_plus", "ic_friedman")
CORPUS_ENV = "TWISTKEY_CORPUS_DIR"
LEMMA_TOL = 1e-9
# Prediction recorded when the Friedman estimate is undefined.
UNDEFINED_PREDICTION = 0


class ConfigError(ValueError):
    pass


# --------------------------------------------------------------------------
# keys, divisors, corpus


def largest_nontrivial_divisor(k: int) -> int | None:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    for d in range(k // 2, 1, -1):
        if k % d == 0:
            return d
    return None


def minimal_period(seq: Sequence) -> int:
    """Smallest p such that *seq* repeats its length-p prefix."""
    n = len(seq)
    if n == 0:
        raise ValueError("empty sequence has no period")
    for p in range(1, n + 1):
        if n % p == 0 and all(seq[i] == seq[i % p] for i in range(n)):
            return p
    return n  # unreachable


def generate_key(k: int, rng: np.random.Generator, exact_period: bool = True) -> tuple[int, ...]:
    """Uniform random shifts of length k.

    With *exact_period* the draw is repeated until the key's minimal
    period is exactly k, so "ABAB" never stands in for a length-4 key.
    """
    if k < 1:
        raise ValueError(f"key length must be >= 1, got {k}")
    while True:
        key = tuple(int(s) for s in rng.integers(0, 26, size=k))
        if not exact_period or minimal_period(key) == k:
            return key


def corpus_files(paths: Iterable[str | Path]) -> list[Path]:
    files: list[Path] = []
    for p in map(Path, paths):
        if p.is_dir():
            files.extend(sorted(f for f in p.iterdir() if f.name.endswith((".txt", ".txt.gz"))))
        else:
            files.append(p)
    return files


def load_corpus(paths: Iterable[str | Path] | None = None) -> str:
    """Concatenate the normalized texts under *paths*.

    With no paths the directory named by ``$TWISTKEY_CORPUS_DIR`` is used.
    """
    if not paths:
        env = os.environ.get(CORPUS_ENV)
        if not env:
            raise ConfigError(f"no corpus paths given and ${CORPUS_ENV} is unset")
        paths = [env]
    files = corpus_files(paths)
    if not files:
        raise ConfigError("corpus paths contain no .txt or .txt.gz files")
    try:
        return "".join(read_text(f) for f in files)
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read corpus: {exc}") from exc


def sample_corpus_segment(corpus: str, n: int, rng: np.random.Generator) -> str:
    """A length-n contiguous slice of *corpus* at a uniform random offset."""
    if n < 1:
        raise ValueError(f"segment length must be positive, got {n}")
    if len(corpus) < n:
        raise ValueError(f"corpus has {len(corpus)} letters, fewer than N={n}")
    offset = int(rng.integers(0, len(corpus) - n + 1))
    return corpus[offset:offset + n]


# --------------------------------------------------------------------------
# single trials


def _check_domain(m_domain: tuple[int, int], methods: Iterable[str], n: int) -> None:
    lo, hi = m_domain
    if lo < 1 or hi < lo:
        raise ValueError(f"invalid m-domain {m_domain}")
    twistlike = [m for m in methods if m != "ic_friedman"]
    if any(m not in GRID_METHODS for m in methods):
        raise ValueError(f"unknown method in {list(methods)}")
    if twistlike and hi + 1 > n:
        raise ValueError(f"m-domain upper bound {hi} needs T(M, {hi + 1}), beyond N={n}")
    if lo < 2 and any(m in ("twist_plus", "twist_plus_plus") for m in twistlike):
        raise ValueError("twist+ and twist++ need an m-domain starting at 2 or above")


def _argmax(values: dict[int, float], lo: int, hi: int) -> int:
    best = lo
    for m in range(lo + 1, hi + 1):
        if values[m] > values[best]:
            best = m
    return best


def predict_codes(codes: bytes, methods: Sequence[str], m_domain: tuple[int, int]) -> dict[str, int]:
    """Predicted key length per method for one ciphertext (as codes).

    Twist-family methods share one T series computed through m_hi + 1.
    """
    lo, hi = m_domain
    out: dict[str, int] = {}
    series = None
    for method in methods:
        if method == "ic_friedman":
            try:
                est = friedman_estimate(from_codes(codes), FRIEDMAN_DEFAULT)
            except EstimateUndefined:
                out[method] = UNDEFINED_PREDICTION
            else:
                out[method] = max(1, int(round(est)))
            continue
        if series is None:
            series = TwistSeries(len(codes), tuple(_kernels.twist_range(codes, hi + 1)))
        if method == "twist":
            values = series.as_dict()
        elif method == "twist_plus":
            values = twist_plus_series(series)
        elif method == "twist_plus_plus":
            values = twist_plus_plus_series(series)
        else:
            raise ValueError(f"unknown method {method!r}")
        out[method] = _argmax(values, lo, hi)
    return out


@dataclass(frozen=True)
class TrialRecord:
    n: int
    k: int
    key: str
    method: str
    m_lo: int
    m_hi: int
    predicted: int

    @property
    def success(self) -> bool:
        return self.predicted == self.k


def run_trial(
    plain: str,
    k: int,
    method: str,
    m_domain: tuple[int, int],
    rng: np.random.Generator | None = None,
    key=None,
    exact_period: bool = True,
) -> TrialRecord:
    """Encrypt *plain* with a fresh length-k key and predict the key length.

    Pass *key* to encrypt with a fixed keyword instead of drawing one.
    """
    _check_domain(m_domain, [method], len(plain))
    if key is None:
        if rng is None:
            raise ValueError("run_trial needs an rng when no key is given")
        shifts = generate_key(k, rng, exact_period)
    else:
        shifts = key_shifts(key)
        if len(shifts) != k:
            raise ValueError(f"key {key!r} has length {len(shifts)}, not k={k}")
    cipher = _kernels.shift_codes(to_codes(plain), bytes(shifts), 1)
    predicted = predict_codes(cipher, [method], m_domain)[method]
    word = "".join(ALPHABET[s] for s in shifts)
    return TrialRecord(len(plain), k, word, method, m_domain[0], m_domain[1], predicted)


# --------------------------------------------------------------------------
# grid


@dataclass
class ExperimentConfig:
    text_lengths: list[int]
    key_lengths: list[int]
    m_domain: tuple[int, int]
    texts_per_cell: int = 100
    keys_per_text: int = 40
    methods: list[str] = field(default_factory=lambda: ["twist_plus", "twist_plus_plus"])
    master_seed: int = 0
    corpus_paths: list[str] = field(default_factory=list)
    exact_period: bool = True

    def __post_init__(self) -> None:
        self.text_lengths = sorted(int(n) for n in self.text_lengths)
        self.key_lengths = sorted(int(k) for k in self.key_lengths)
        self.m_domain = (int(self.m_domain[0]), int(self.m_domain[1]))
        self.methods = list(self.methods)
        self.corpus_paths = [str(p) for p in self.corpus_paths]

    def validate(self) -> None:
        if not self.text_lengths or not self.key_lengths or not self.methods:
            raise ConfigError("text_lengths, key_lengths and methods must be nonempty")
        if self.texts_per_cell < 1 or self.keys_per_text < 1:
            raise ConfigError("texts_per_cell and keys_per_text must be >= 1")
        if self.master_seed < 0:
            raise ConfigError("master_seed must be non-negative")
        if min(self.key_lengths) < 1:
            raise ConfigError("key lengths must be >= 1")
        if self.m_domain[1] < max(self.key_lengths):
            raise ConfigError(f"m_domain upper bound {self.m_domain[1]} is below the largest key length")
        try:
            _check_domain(self.m_domain, self.methods, min(self.text_lengths))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["m_domain"] = list(self.m_domain)
        return d


@dataclass
class CellResult:
    n: int
    k: int
    method: str
    m_lo: int
    m_hi: int
    trials: int = 0
    successes: int = 0
    histogram: Counter = field(default_factory=Counter)
    duplicate_keys: int = 0

    @property
    def rate(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    def merge(self, other: "CellResult") -> None:
        self.trials += other.trials
        self.successes += other.successes
        self.histogram.update(other.histogram)
        self.duplicate_keys += other.duplicate_keys


@dataclass
class ExperimentGridResult:
    config: ExperimentConfig
    cells: dict[tuple[int, int, str], CellResult]

    def cell(self, n: int, k: int, method: str) -> CellResult:
        try:
            return self.cells[(n, k, method)]
        except KeyError:
            raise KeyError(f"no cell for N={n}, k={k}, method={method}") from None

    def mean_rate(self, method: str, text_lengths: Iterable[int], key_lengths: Iterable[int]) -> float:
        rates = [self.cell(n, k, method).rate for n in text_lengths for k in key_lengths]
        return sum(rates) / len(rates)

    def write(self, out_dir: str | Path) -> list[Path]:
        """Write results, histogram, duplicates, per-N plot data and config."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        cells = [self.cells[key] for key in sorted(self.cells)]
        written = []

        path = out / "results.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["N", "k", "method", "m_lo", "m_hi", "trials", "successes", "rate"])
            for c in cells:
                w.writerow([c.n, c.k, c.method, c.m_lo, c.m_hi, c.trials, c.successes, f"{c.rate:.6f}"])
        written.append(path)

        path = out / "histogram.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["N", "k", "method", "predicted_m", "count"])
            for c in cells:
                for m in sorted(c.histogram):
                    w.writerow([c.n, c.k, c.method, m, c.histogram[m]])
        written.append(path)

        path = out / "duplicates.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["N", "k", "duplicate_keys"])
            for n in self.config.text_lengths:
                for k in self.config.key_lengths:
                    w.writerow([n, k, self.cell(n, k, self.config.methods[0]).duplicate_keys])
        written.append(path)

        lo, hi = self.config.m_domain
        for n in self.config.text_lengths:
            path = out / f"plot_N{n}_m{lo}-{hi}.csv"
            with path.open("w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["k"] + [f"{m}_success_pct" for m in self.config.methods])
                for k in self.config.key_lengths:
                    w.writerow([k] + [f"{100 * self.cell(n, k, m).rate:.2f}" for m in self.config.methods])
            written.append(path)

        path = out / "config.json"
        path.write_text(json.dumps(self.config.to_dict(), indent=2, sort_keys=True) + "\n")
        written.append(path)
        return written


def _rng(*entropy: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(list(entropy)))


def _run_cell(args: tuple[ExperimentConfig, str, int, int]) -> list[CellResult]:
    config, corpus, n, k = args
    lo, hi = config.m_domain
    cells = {m: CellResult(n, k, m, lo, hi) for m in config.methods}
    seed = config.master_seed
    for t in range(config.texts_per_cell):
        plain = to_codes(sample_corpus_segment(corpus, n, _rng(seed, 0, n, t)))
        seen: set[tuple[int, ...]] = set()
        dupes = 0
        for j in range(config.keys_per_text):
            key = generate_key(k, _rng(seed, 1, n, k, t, j), config.exact_period)
            if key in seen:
                dupes += 1
            seen.add(key)
            cipher = _kernels.shift_codes(plain, bytes(key), 1)
            for method, predicted in predict_codes(cipher, config.methods, config.m_domain).items():
                cell = cells[method]
                cell.trials += 1
                cell.successes += predicted == k
                cell.histogram[predicted] += 1
        for cell in cells.values():
            cell.duplicate_keys += dupes
    return list(cells.values())


def run_grid(config: ExperimentConfig, corpus: str | None = None, workers: int = 1) -> ExperimentGridResult:
    """Run every (N, k) cell of *config*; deterministic given master_seed."""
    config.validate()
    if corpus is None:
        corpus = load_corpus(config.corpus_paths)
    if len(corpus) < max(config.text_lengths):
        raise ConfigError(f"corpus has {len(corpus)} letters, fewer than N={max(config.text_lengths)}")
    jobs = [(config, corpus, n, k) for n in config.text_lengths for k in config.key_lengths]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_cell, jobs))
    else:
        parts = [_run_cell(job) for job in jobs]
    cells: dict[tuple[int, int, str], CellResult] = {}
    for part in parts:
        for c in part:
            key = (c.n, c.k, c.method)
            if key in cells:
                cells[key].merge(c)
            else:
                cells[key] = c
    return ExperimentGridResult(config, cells)


# --------------------------------------------------------------------------
# failure analysis


@dataclass(frozen=True)
class FailureBreakdown:
    n: int
    k: int
    trials: int
    incorrect: int
    divisor_predictions: int

    @property
    def percentage(self) -> float | None:
        """Share of incorrect predictions equal to the largest nontrivial divisor."""
        if self.incorrect == 0:
            return None
        return 100.0 * self.divisor_predictions / self.incorrect


def breakdown_from_histogram(histogram: dict[int, int], n: int, k: int) -> FailureBreakdown:
    trials = sum(histogram.values())
    incorrect = trials - histogram.get(k, 0)
    divisor = largest_nontrivial_divisor(k) if k >= 2 else None
    hits = histogram.get(divisor, 0) if divisor is not None else 0
    return FailureBreakdown(n, k, trials, incorrect, hits)


def failure_breakdown(grid: ExperimentGridResult, method: str, n: int, k: int) -> FailureBreakdown:
    return breakdown_from_histogram(grid.cell(n, k, method).histogram, n, k)


# --------------------------------------------------------------------------
# monotonicity under refinement of the coset partition


@dataclass(frozen=True)
class MonotonicityVerdict:
    n: int
    m: int
    lam: int
    t_m: float
    t_lam_m: float
    hypothesis: bool
    holds: bool


def verify_monotonicity_case(text: str, m: int, lam: int) -> MonotonicityVerdict:
    """Compare T(M, m) with T(M, lam * m).

    ``hypothesis`` is whether lam divides the size of every m-coset, the
    condition under which the inequality is guaranteed. ``holds`` allows
    a float slack of ``LEMMA_TOL``.
    """
    n = len(text)
    if m < 1 or lam < 1 or lam * m > n:
        raise ValueError(f"need m, lam >= 1 and lam*m <= N={n}; got m={m}, lam={lam}")
    codes = to_codes(text)
    return _verdict(codes, m, lam)


def _verdict(codes: bytes, m: int, lam: int) -> MonotonicityVerdict:
    n = len(codes)
    t_m = _kernels.twist_index(codes, m)
    t_lm = t_m if lam == 1 else _kernels.twist_index(codes, lam * m)
    hyp = all(size % lam == 0 for size in coset_sizes(n, m))
    return MonotonicityVerdict(n, m, lam, t_m, t_lm, hyp, t_m <= t_lm + LEMMA_TOL)


@dataclass
class MonotonicitySweep:
    cases: int = 0
    hypothesis_cases: int = 0
    violations: list[tuple[MonotonicityVerdict, str]] = field(default_factory=list)

    @property
    def hypothesis_violations(self) -> list[tuple[MonotonicityVerdict, str]]:
        return [v for v in self.violations if v[0].hypothesis]


def verify_monotonicity(
    cases: int,
    seed: int = 0,
    n_range: tuple[int, int] = (50, 600),
    source: str = "uniform",
    corpus: str | None = None,
    max_key_length: int = 12,
) -> MonotonicitySweep:
    """Random (text, m, lam) cases with 2 <= lam and lam*m <= q.

    *source* is ``"uniform"`` (independent uniform letters) or
    ``"ciphertext"`` (corpus segments under random keys of length
    1..max_key_length). Violating texts are kept verbatim.
    """
    n_lo, n_hi = n_range
    if n_lo < 24 or n_hi < n_lo:
        raise ValueError("n_range must satisfy 24 <= lo <= hi so that lam*m <= q admits lam >= 2")
    if source not in ("uniform", "ciphertext"):
        raise ValueError(f"unknown source {source!r}")
    if source == "ciphertext" and corpus is None:
        raise ValueError("ciphertext sweep needs a corpus")
    rng = _rng(seed, 2)
    sweep = MonotonicitySweep()
    while sweep.cases < cases:
        n = int(rng.integers(n_lo, n_hi + 1))
        q = remark_ceiling(n)
        m = int(rng.integers(1, q // 2 + 1))
        lam = int(rng.integers(2, q // m + 1))
        if source == "uniform":
            codes = rng.integers(0, 26, size=n, dtype=np.uint8).tobytes()
        else:
            plain = to_codes(sample_corpus_segment(corpus, n, rng))
            k = int(rng.integers(1, max_key_length + 1))
            codes = _kernels.shift_codes(plain, bytes(generate_key(k, rng)), 1)
        verdict = _verdict(codes, m, lam)
        sweep.cases += 1
        sweep.hypothesis_cases += verdict.hypothesis
        if not verdict.holds:
            sweep.violations.append((verdict, from_codes(codes)))
    return sweep
