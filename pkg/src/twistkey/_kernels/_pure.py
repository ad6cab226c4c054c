"""Pure-Python kernels. Reference semantics for the compiled core.

All functions take *codes*: a ``bytes`` object whose values are letter
indices in ``0..25``. Float operations are ordered exactly as in
``_ccore.pyx`` so both backends return bit-identical results.
"""
from __future__ import annotations

_LETTERS = range(26)


def coset_twist_sum(codes: bytes, m: int) -> float:
    """Sum over the m cosets of (top-13 count - bottom-13 count) / coset size."""
    total = 0.0
    for j in range(m):
        coset = codes[j::m]
        counts = sorted([coset.count(c) for c in _LETTERS])
        size = len(coset)
        if sum(counts) != size:
            raise ValueError("codes must be letter indices in 0..25")
        total += (sum(counts[13:]) - sum(counts[:13])) / size
    return total


def twist_index(codes: bytes, m: int) -> float:
    n = len(codes)
    if m < 1 or m > n:
        raise ValueError(f"m must satisfy 1 <= m <= N={n}, got {m}")
    return 100.0 * coset_twist_sum(codes, m) / m


def twist_range(codes: bytes, m_max: int) -> list[float]:
    """T(M, m) for m = 1..m_max."""
    n = len(codes)
    if m_max < 1 or m_max > n:
        raise ValueError(f"m_max must satisfy 1 <= m_max <= N={n}, got {m_max}")
    return [100.0 * coset_twist_sum(codes, m) / m for m in range(1, m_max + 1)]


def shift_codes(codes: bytes, shifts: bytes, sign: int = 1) -> bytes:
    """Add (sign=+1) or subtract (sign=-1) a repeating shift sequence mod 26."""
    k = len(shifts)
    if k == 0:
        raise ValueError("shift sequence must be nonempty")
    return bytes([(c + sign * shifts[i % k]) % 26 for i, c in enumerate(codes)])
