"""Command-line front end.

Exit codes: 0 success, 2 usage or input error, 1 internal error.
"""
from __future__ import annotations

import argparse
import csv
import sys
from collections.abc import Sequence
from pathlib import Path

from . import __version__, _kernels
from .experiments import (
    ConfigError,
    ExperimentConfig,
    failure_breakdown,
    load_corpus,
    run_grid,
    verify_monotonicity,
)
from .kasiski import KasiskiInconclusive, divisor_census, find_repeat_distances
from .metrics import (
    ARGMAX_METHODS,
    FRIEDMAN_DEFAULT,
    FRIEDMAN_TEXTBOOK,
    EstimateUndefined,
    friedman_estimate,
    index_of_coincidence,
    remark_ceiling,
    round_value,
    twist_family,
    twist_plus_plus_series,
    twist_plus_series,
    twist_series,
)
from .text_core import normalize, vigenere_decrypt, vigenere_encrypt

FRIEDMAN_PRESETS = {"default": FRIEDMAN_DEFAULT, "textbook": FRIEDMAN_TEXTBOOK}


class UsageError(Exception):
    pass


def _read_input(path: str) -> str:
    try:
        if path == "-":
            return normalize(sys.stdin.read())
        return normalize(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout
    try:
        return open(path, "w", newline="", encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _group(text: str, size: int) -> str:
    if size <= 0:
        return text
    return " ".join(text[i:i + size] for i in range(0, len(text), size))


def cmd_crypt(args: argparse.Namespace) -> int:
    text = _read_input(args.input)
    try:
        fn = vigenere_encrypt if args.command == "encrypt" else vigenere_decrypt
        result = fn(text, args.key)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = _open_out(args.output)
    try:
        out.write(_group(result, args.group) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _analysis_range(n: int, m_lo: int, m_hi: int | None) -> tuple[int, int]:
    if m_hi is None:
        m_hi = min(25, remark_ceiling(n))
    if m_lo < 2 or m_hi < m_lo:
        raise UsageError(f"m-range must satisfy 2 <= m_lo <= m_hi (got {m_lo}..{m_hi}, N={n})")
    if m_hi + 1 > n:
        raise UsageError(f"m_hi={m_hi} too large for N={n}: twist++ needs T(M, m_hi+1) with m_hi+1 <= N")
    return m_lo, m_hi


def cmd_analyze(args: argparse.Namespace) -> int:
    text = _read_input(args.input)
    n = len(text)
    m_lo, m_hi = _analysis_range(n, args.m_lo, args.m_hi)
    methods = args.methods
    rows: list[tuple[str, str, str]] = []

    print(f"N = {n}  (q = {remark_ceiling(n)}, twist backend: {_kernels.BACKEND})")
    if "ic_friedman" in methods:
        if n < 2:
            raise UsageError("IC needs at least 2 letters")
        ic = index_of_coincidence(text)
        try:
            est = f"{friedman_estimate(text, FRIEDMAN_PRESETS[args.friedman]):.4f}"
        except EstimateUndefined:
            est = "undefined"
        print(f"IC = {ic:.4f}   Friedman estimate = {est}")
        rows.append(("ic_friedman", est, ""))
    if "kasiski" in methods:
        if n >= args.ngram:
            report = find_repeat_distances(text, args.ngram)
            distinct = report.distinct_distances
            print(f"Kasiski ({args.ngram}-grams): distances {distinct}")
            try:
                census = divisor_census(distinct, args.d_max)
            except KasiskiInconclusive:
                print("  inconclusive: no repeated n-grams")
                rows.append(("kasiski", "", "inconclusive"))
            else:
                top = ", ".join(f"{d}:{c}" for d, c in census.top(5))
                print(f"  gcd = {census.overall_gcd}; divisor counts (of {census.total}) {top}")
                rows.append(("kasiski", str(census.overall_gcd), " ".join(map(str, distinct))))
    twist_methods = [m for m in methods if m in ARGMAX_METHODS]
    if twist_methods:
        reports = twist_family(text, range(m_lo, m_hi + 1))
        print(f"twist-family predictions over m = {m_lo}..{m_hi}:")
        for method in twist_methods:
            r = reports[method]
            print(f"  {method:<16} {r.estimate}")
            rows.append((method, str(r.estimate), f"{m_lo}..{m_hi}"))
    if args.csv:
        out = _open_out(args.csv)
        try:
            w = csv.writer(out)
            w.writerow(["method", "estimate", "detail"])
            w.writerows(rows)
        finally:
            if out is not sys.stdout:
                out.close()
    return 0


def cmd_indices(args: argparse.Namespace) -> int:
    text = _read_input(args.input)
    n = len(text)
    if args.m_max < 2:
        raise UsageError("--m-max must be >= 2")
    if args.m_max + 1 > n:
        raise UsageError(f"--m-max={args.m_max} too large for N={n} (T++ needs T(M, m_max+1))")
    series = twist_series(text, args.m_max + 1)
    plus = twist_plus_series(series)
    plus_plus = twist_plus_plus_series(series)

    def fmt(v: float | None) -> str:
        if v is None:
            return ""
        return str(round_value(v, args.round))

    out = _open_out(args.output)
    try:
        w = csv.writer(out)
        w.writerow(["m", "T", "T_plus", "T_plus_plus"])
        for m in range(1, args.m_max + 1):
            w.writerow([m, fmt(series[m]), fmt(plus.get(m)), fmt(plus_plus.get(m))])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_kasiski(args: argparse.Namespace) -> int:
    text = _read_input(args.input)
    if len(text) < args.n:
        raise UsageError(f"text of length {len(text)} is shorter than n={args.n}")
    report = find_repeat_distances(text, args.n)
    distinct = report.distinct_distances
    print(f"{len(report.repeats)} repeat pairs; distinct distances: {distinct}")
    census = None
    try:
        census = divisor_census(distinct, args.d_max)
    except KasiskiInconclusive:
        print("inconclusive: no repeated n-grams")
    else:
        print(f"gcd = {census.overall_gcd}")
        for d, c in census.top(args.top):
            print(f"  {d:>3} divides {c} of {census.total}")
    if args.csv:
        out = _open_out(args.csv)
        try:
            w = csv.writer(out)
            w.writerow(["ngram", "pos_a", "pos_b", "distance"])
            for r in report.repeats:
                w.writerow([r.ngram, r.pos_a, r.pos_b, r.distance])
        finally:
            if out is not sys.stdout:
                out.close()
    if args.census_csv and census is not None:
        out = _open_out(args.census_csv)
        try:
            w = csv.writer(out)
            w.writerow(["divisor", "count"])
            for d in sorted(census.counts):
                w.writerow([d, census.counts[d]])
        finally:
            if out is not sys.stdout:
                out.close()
    return 0


def cmd_experiment(args: argparse.Namespace) -> int:
    try:
        config = ExperimentConfig.from_json(args.config)
        if args.corpus:
            config.corpus_paths = list(args.corpus)
        config.validate()
        result = run_grid(config, workers=args.workers)
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc
    files = result.write(args.out_dir)
    lo, hi = config.m_domain
    print(f"m-domain {lo}..{hi}; {config.texts_per_cell} texts x {config.keys_per_text} keys per cell")
    header = "N    k  " + "  ".join(f"{m:>16}" for m in config.methods)
    print(header)
    for n in config.text_lengths:
        for k in config.key_lengths:
            rates = "  ".join(f"{100 * result.cell(n, k, m).rate:>15.1f}%" for m in config.methods)
            print(f"{n:<4} {k:>2}  {rates}")
    if "twist_plus_plus" in config.methods:
        for n in config.text_lengths:
            for k in config.key_lengths:
                if k < 4:
                    continue
                fb = failure_breakdown(result, "twist_plus_plus", n, k)
                if fb.percentage is not None and fb.divisor_predictions:
                    print(f"twist++ N={n} k={k}: {fb.incorrect} incorrect, "
                          f"{fb.divisor_predictions} predicted the largest divisor ({fb.percentage:.2f}%)")
    print("wrote " + ", ".join(str(f) for f in files))
    return 0


def cmd_verify_lemma(args: argparse.Namespace) -> int:
    corpus = None
    if args.source == "ciphertext":
        try:
            corpus = load_corpus(args.corpus)
        except ConfigError as exc:
            raise UsageError(str(exc)) from exc
    try:
        sweep = verify_monotonicity(args.cases, args.seed, (args.n_min, args.n_max), args.source, corpus)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(f"{sweep.cases} cases ({sweep.hypothesis_cases} with lam dividing every m-coset size)")
    print(f"violations of T(M,m) <= T(M,lam*m): {len(sweep.violations)} "
          f"({len(sweep.hypothesis_violations)} under the divisibility hypothesis)")
    for v, text in sweep.violations[:10]:
        print(f"  N={v.n} m={v.m} lam={v.lam} hyp={v.hypothesis} "
              f"T(m)={v.t_m:.6f} T(lam m)={v.t_lam_m:.6f} text={text}")
    if args.out:
        out = _open_out(args.out)
        try:
            w = csv.writer(out)
            w.writerow(["N", "m", "lam", "hypothesis", "T_m", "T_lam_m", "text"])
            for v, text in sweep.violations:
                w.writerow([v.n, v.m, v.lam, int(v.hypothesis), repr(v.t_m), repr(v.t_lam_m), text])
        finally:
            if out is not sys.stdout:
                out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistkey", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("encrypt", "decrypt"):
        p = sub.add_parser(name, help=f"Vigenere-{name} a text file (normalized to A-Z)")
        p.add_argument("input", help="input text file, or - for stdin")
        p.add_argument("-k", "--key", required=True, help="keyword, e.g. WILL")
        p.add_argument("-o", "--output", help="output file (default stdout)")
        p.add_argument("--group", type=int, default=0, help="print in blocks of this many letters")
        p.set_defaults(func=cmd_crypt)

    p = sub.add_parser("analyze", help="estimate the key length with every method")
    p.add_argument("input")
    p.add_argument("--m-lo", type=int, default=2)
    p.add_argument("--m-hi", type=int, default=None, help="default min(25, N // 12)")
    p.add_argument("--methods", nargs="+", default=["ic_friedman", "kasiski", *ARGMAX_METHODS],
                   choices=["ic_friedman", "kasiski", *ARGMAX_METHODS])
    p.add_argument("--ngram", type=int, default=3)
    p.add_argument("--d-max", type=int, default=20)
    p.add_argument("--friedman", choices=sorted(FRIEDMAN_PRESETS), default="default")
    p.add_argument("--csv", help="write the per-method estimates as CSV")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("indices", help="CSV of T, T+ and T++ for m = 1..m_max")
    p.add_argument("input")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--round", choices=["none", "int", "3dp"], default="none")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_indices)

    p = sub.add_parser("kasiski", help="repeated n-gram distances and divisor census")
    p.add_argument("input")
    p.add_argument("-n", type=int, default=3, help="n-gram size")
    p.add_argument("--d-max", type=int, default=20)
    p.add_argument("--top", type=int, default=5)
    p.add_argument("--csv", help="write ngram,pos_a,pos_b,distance rows")
    p.add_argument("--census-csv", help="write divisor,count rows")
    p.set_defaults(func=cmd_kasiski)

    p = sub.add_parser("experiment", help="run a Monte-Carlo accuracy grid from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", default="results")
    p.add_argument("--corpus", nargs="+", help="override the config's corpus paths")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("verify-lemma", help="random check of T(M,m) <= T(M,lam*m)")
    p.add_argument("--cases", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-min", type=int, default=50)
    p.add_argument("--n-max", type=int, default=600)
    p.add_argument("--source", choices=["uniform", "ciphertext"], default="uniform")
    p.add_argument("--corpus", nargs="+", help="corpus paths for --source ciphertext")
    p.add_argument("--out", help="write violating cases as CSV")
    p.set_defaults(func=cmd_verify_lemma)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"twistkey {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"twistkey {args.command}: internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
