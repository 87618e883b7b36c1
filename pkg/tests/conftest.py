import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stabent.codes import CssSpec, css, parse_code
from stabent.f2 import F2Matrix

FIXTURES = Path(__file__).parent / "fixtures"


def read_fixture(name: str) -> str:
    return (FIXTURES / name).read_text()


@pytest.fixture(scope="session")
def code_813():
    return parse_code(read_fixture("code_8_1_3.stab"))


@pytest.fixture(scope="session")
def code_513():
    return parse_code(read_fixture("code_5_1_3.stab"))


@pytest.fixture(scope="session")
def bell():
    return parse_code(read_fixture("bell.stab"))


@pytest.fixture(scope="session")
def graph4():
    return parse_code(read_fixture("graph4.stab"))


@pytest.fixture(scope="session")
def hamming_check() -> F2Matrix:
    return F2Matrix.from_rows(
        [[0, 0, 0, 1, 1, 1, 1], [0, 1, 1, 0, 0, 1, 1], [1, 0, 1, 0, 1, 0, 1]]
    )


@pytest.fixture(scope="session")
def steane(hamming_check):
    return css(CssSpec(hamming_check, hamming_check))


@pytest.fixture(scope="session")
def steane_spec(hamming_check):
    return CssSpec(hamming_check, hamming_check)
