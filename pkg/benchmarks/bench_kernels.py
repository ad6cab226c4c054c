"""Compare the compiled and pure-Python twist kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times T(M, 1..m_max) on random texts of several lengths, plus one full
grid trial (encrypt + series + twist+/twist++ argmax), per backend.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from twistkey._kernels import _pure, compiled_available


def _trial(impl, plain: bytes, key: bytes, m_hi: int) -> int:
    cipher = impl.shift_codes(plain, key, 1)
    t = impl.twist_range(cipher, m_hi + 1)
    best, best_v = 2, None
    for m in range(2, m_hi + 1):
        v = t[m - 1] - 0.5 * (t[m - 2] + t[m])
        if best_v is None or v > best_v:
            best, best_v = m, v
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = {"python": _pure}
    if compiled_available():
        from twistkey._kernels import _ccore

        backends["cython"] = _ccore
    else:
        print("compiled core not built; timing the pure-Python fallback only")

    rng = np.random.default_rng(0)
    cases = [(n, m) for n in (200, 400, 2000) for m in (16, 21)]
    print(f"{'workload':<28}" + "".join(f"{name:>14}" for name in backends) + f"{'speedup':>10}")
    for n, m_max in cases:
        codes = rng.integers(0, 26, size=n, dtype=np.uint8).tobytes()
        timings = {}
        for name, impl in backends.items():
            number = 20 if name == "python" else 2000
            best = min(timeit.repeat(lambda: impl.twist_range(codes, m_max), number=number, repeat=args.repeat))
            timings[name] = best / number
        _row(f"twist_range N={n} m<={m_max}", timings)

    plain = rng.integers(0, 26, size=300, dtype=np.uint8).tobytes()
    key = bytes([3, 17, 5, 9, 22])
    timings = {}
    for name, impl in backends.items():
        number = 20 if name == "python" else 2000
        best = min(timeit.repeat(lambda: _trial(impl, plain, key, 20), number=number, repeat=args.repeat))
        timings[name] = best / number
    _row("grid trial N=300 m<=20", timings)


def _row(label: str, timings: dict[str, float]) -> None:
    cells = "".join(f"{1e6 * t:>12.1f}us" for t in timings.values())
    speed = f"{timings['python'] / timings['cython']:>9.1f}x" if "cython" in timings else ""
    print(f"{label:<28}{cells}{speed}")


if __name__ == "__main__":
    main()
