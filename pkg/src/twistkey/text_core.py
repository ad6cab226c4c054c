"""Normalization, Vigenere encryption and coset partitions.

Texts are plain ``str`` objects over ``A..Z`` once normalized. Keys may be
given as a keyword (``"WILL"``) or as a sequence of shifts in ``0..25``.
Coset indices are 1-based: coset ``j`` holds the letters at 1-based
positions ``i`` with ``i % m == j % m``, so residue 0 is class ``m``.
"""
from __future__ import annotations

import gzip
import re
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from . import _kernels

ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"

_NON_LATIN = re.compile(r"[^A-Z]")
_TO_CODES = bytes.maketrans(ALPHABET.encode(), bytes(range(26)))
_FROM_CODES = bytes.maketrans(bytes(range(26)), ALPHABET.encode())

Key = str | Sequence[int]


def normalize(raw: str) -> str:
    """Uppercase *raw* and keep only the letters A-Z, in order.

    Accented and other non-Latin letters are dropped, not transliterated.
    """
    return _NON_LATIN.sub("", raw.upper())


def is_normalized(text: str) -> bool:
    return _NON_LATIN.search(text) is None


def _require_normalized(text: str) -> None:
    if not is_normalized(text):
        raise ValueError("text must contain only the uppercase letters A-Z; call normalize() first")


def to_codes(text: str) -> bytes:
    """Letter indices 0..25 of a normalized text, as bytes."""
    _require_normalized(text)
    return text.encode("ascii").translate(_TO_CODES)


def from_codes(codes: bytes) -> str:
    return codes.translate(_FROM_CODES).decode("ascii")


def key_shifts(key: Key) -> tuple[int, ...]:
    """Shift sequence for a keyword or an explicit sequence of shifts."""
    if isinstance(key, str):
        word = normalize(key)
        if len(word) != len(key.strip()):
            raise ValueError(f"keyword must consist of Latin letters only: {key!r}")
        shifts = tuple(ord(ch) - 65 for ch in word)
    else:
        shifts = tuple(int(s) for s in key)
        if any(s < 0 or s > 25 for s in shifts):
            raise ValueError("key shifts must lie in 0..25")
    if not shifts:
        raise ValueError("key must be nonempty")
    return shifts


def key_to_word(key: Key) -> str:
    return "".join(ALPHABET[s] for s in key_shifts(key))


def vigenere_encrypt(plain: str, key: Key) -> str:
    shifts = bytes(key_shifts(key))
    return from_codes(_kernels.shift_codes(to_codes(plain), shifts, 1))


def vigenere_decrypt(cipher: str, key: Key) -> str:
    shifts = bytes(key_shifts(key))
    return from_codes(_kernels.shift_codes(to_codes(cipher), shifts, -1))


@dataclass(frozen=True)
class CosetPartition:
    """The m cosets of a text; ``cosets[j - 1]`` is coset ``j``."""

    m: int
    cosets: tuple[str, ...]

    def coset(self, j: int) -> str:
        if not 1 <= j <= self.m:
            raise IndexError(f"coset index must be in 1..{self.m}, got {j}")
        return self.cosets[j - 1]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cosets)

    def reassemble(self) -> str:
        """Interleave the cosets by position, recovering the source text."""
        n = sum(self.sizes)
        out = [""] * n
        for j, coset in enumerate(self.cosets):
            out[j::self.m] = coset
        return "".join(out)


def partition_cosets(text: str, m: int) -> CosetPartition:
    _require_normalized(text)
    n = len(text)
    if m < 1 or m > n:
        raise ValueError(f"m must satisfy 1 <= m <= N={n}, got {m}")
    return CosetPartition(m, tuple(text[j::m] for j in range(m)))


def coset_sizes(n: int, m: int) -> list[int]:
    """Sizes of the m cosets of a length-n text, in coset order."""
    q, r = divmod(n, m)
    return [q + 1 if j < r else q for j in range(m)]


def read_text(path: str | Path) -> str:
    """Read a UTF-8 text file (optionally gzip-compressed) and normalize it."""
    path = Path(path)
    if path.suffix == ".gz":
        with gzip.open(path, "rt", encoding="utf-8") as fh:
            return normalize(fh.read())
    return normalize(path.read_text(encoding="utf-8"))
