"""Key-length attacks on the Vigenere cipher.

Twist, twist+ and twist++ index estimators alongside the index of
coincidence (Friedman) and Babbage-Kasiski tests, plus a Monte-Carlo
harness for comparing them.
"""
from __future__ import annotations

__version__ = "0.1.0"

from ._kernels import BACKEND
from .kasiski import KasiskiReport, divisor_census, find_repeat_distances
from .metrics import (
    FRIEDMAN_DEFAULT,
    FRIEDMAN_TEXTBOOK,
    FriedmanConstants,
    KeyLengthReport,
    TwistSeries,
    argmax_estimate,
    friedman_estimate,
    index_of_coincidence,
    sample_signature,
    twist_family,
    twist_index,
    twist_of_signature,
    twist_plus_plus_series,
    twist_plus_series,
    twist_series,
)
from .text_core import CosetPartition, normalize, partition_cosets, vigenere_decrypt, vigenere_encrypt

__all__ = [
    "BACKEND",
    "CosetPartition",
    "FRIEDMAN_DEFAULT",
    "FRIEDMAN_TEXTBOOK",
    "FriedmanConstants",
    "KasiskiReport",
    "KeyLengthReport",
    "TwistSeries",
    "argmax_estimate",
    "divisor_census",
    "find_repeat_distances",
    "friedman_estimate",
    "index_of_coincidence",
    "normalize",
    "partition_cosets",
    "sample_signature",
    "twist_family",
    "twist_index",
    "twist_of_signature",
    "twist_plus_plus_series",
    "twist_plus_series",
    "twist_series",
    "vigenere_decrypt",
    "vigenere_encrypt",
]
