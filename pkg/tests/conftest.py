from pathlib import Path

import pytest

from explicit_lb.arith_primes import DEFAULT_LIMIT, build_lambda_table
from explicit_lb.explicit_formula import load_zeros

DATA = Path(__file__).parent / "data"
ZEROS_100K = DATA / "zeta_zeros_100k.txt"


@pytest.fixture(scope="session")
def big_table():
    """Prime powers up to 4e6 + 1, shared by the campaign tests."""
    return build_lambda_table(DEFAULT_LIMIT)


@pytest.fixture(scope="session")
def small_table():
    return build_lambda_table(10**6 + 1)


@pytest.fixture(scope="session")
def zeros_100k():
    return load_zeros(ZEROS_100K)


@pytest.fixture(scope="session")
def zeros_path():
    return ZEROS_100K
