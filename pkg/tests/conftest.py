from __future__ import annotations

from pathlib import Path

import pytest

from twistkey import _kernels
from twistkey._kernels import _pure
from twistkey.experiments import load_corpus
from twistkey.text_core import normalize

DATA = Path(__file__).parent / "data"
CORPUS_DIR = DATA / "corpus"

ACCEPTANCE_LINES: list[str] = []


def _read(name: str) -> str:
    return normalize((DATA / name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def cipher_32() -> str:
    return _read("example_3_2_ciphertext.txt")


@pytest.fixture(scope="session")
def cipher_34() -> str:
    return _read("example_3_4_ciphertext.txt")


@pytest.fixture(scope="session")
def prologue_raw() -> str:
    return (DATA / "romeo_and_juliet_prologue.txt").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def corpus() -> str:
    return load_corpus([CORPUS_DIR])


def _backends():
    params = [pytest.param(_pure, id="python")]
    if _kernels.compiled_available():
        from twistkey._kernels import _ccore

        params.append(pytest.param(_ccore, id="cython"))
    return params


@pytest.fixture(params=_backends())
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
