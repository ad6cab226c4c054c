from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from twistkey.text_core import (
    coset_sizes,
    key_shifts,
    normalize,
    partition_cosets,
    vigenere_decrypt,
    vigenere_encrypt,
)

letters = st.text(alphabet="ABCDEFGHIJKLMNOPQRSTUVWXYZ", min_size=1, max_size=300)
keys = st.lists(st.integers(0, 25), min_size=1, max_size=20)

EX31 = "DYECYLYLWCAQGGNGHBAEZUHQ"


def test_normalize_examples(prologue_raw):
    assert normalize("Two households,") == "TWOHOUSEHOLDS"
    assert normalize("") == ""
    assert len(normalize(prologue_raw)) == 350


def test_normalize_drops_accented_letters():
    assert normalize("Vigenère, naïve!") == "VIGENRENAVE"


@pytest.mark.parametrize(
    "plain, key, cipher",
    [("TWOHO", "WILL", "PEZSK"), ("ABC", "A", "ABC"), ("ABC", "B", "BCD")],
)
def test_encrypt_decrypt_examples(plain, key, cipher):
    assert vigenere_encrypt(plain, key) == cipher
    assert vigenere_decrypt(cipher, key) == plain


def test_prologue_encrypts_to_printed_ciphertext(prologue_raw, cipher_32):
    assert vigenere_encrypt(normalize(prologue_raw), "will") == cipher_32


def test_key_shifts():
    assert key_shifts("will") == (22, 8, 11, 11)
    assert key_shifts([0, 25]) == (0, 25)
    with pytest.raises(ValueError):
        key_shifts("")
    with pytest.raises(ValueError):
        key_shifts([26])
    with pytest.raises(ValueError):
        key_shifts("w1ll")


def test_encrypt_rejects_unnormalized_text():
    with pytest.raises(ValueError):
        vigenere_encrypt("two households", "WILL")


def test_partition_examples():
    assert partition_cosets(EX31, 6).coset(1) == "DYGA"
    assert partition_cosets(EX31, 1).cosets == (EX31,)
    # positions 1, 4, 7, ..., 22 read off by hand
    assert partition_cosets(EX31, 3).coset(1) == "".join(EX31[i - 1] for i in (1, 4, 7, 10, 13, 16, 19, 22))
    assert partition_cosets(EX31, 3).coset(1) == "DCYCGGAU"


def test_partition_residue_zero_is_last_class():
    part = partition_cosets("ABCDEF", 3)
    assert part.coset(3) == "CF"
    with pytest.raises(IndexError):
        part.coset(0)


@pytest.mark.parametrize("m", [0, -1, 25])
def test_partition_domain_errors(m):
    with pytest.raises(ValueError):
        partition_cosets(EX31, m)


@given(letters, keys)
def test_round_trip(plain, key):
    assert vigenere_decrypt(vigenere_encrypt(plain, key), key) == plain


@given(letters, st.data())
def test_partition_properties(text, data):
    m = data.draw(st.integers(1, len(text)))
    part = partition_cosets(text, m)
    assert sum(part.sizes) == len(text)
    assert max(part.sizes) - min(part.sizes) <= 1
    assert list(part.sizes) == coset_sizes(len(text), m)
    assert part.reassemble() == text


@given(letters, keys)
def test_key_length_cosets_are_shifted_plaintext_cosets(plain, key):
    k = len(key)
    cipher = vigenere_encrypt(plain, key)
    if len(plain) < k:
        return
    pc, cc = partition_cosets(plain, k), partition_cosets(cipher, k)
    for j in range(1, k + 1):
        shift = key[j - 1]
        expected = "".join(chr((ord(ch) - 65 + shift) % 26 + 65) for ch in pc.coset(j))
        assert cc.coset(j) == expected
        assert sorted(map(pc.coset(j).count, set(pc.coset(j)))) == sorted(map(cc.coset(j).count, set(cc.coset(j))))
