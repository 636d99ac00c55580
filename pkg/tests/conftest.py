import pytest

from fixture_lmps import (
    make_lmp_a,
    make_lmp_b,
    make_lmp_b_broken,
    make_lmp_b_prime,
    make_lmp_single,
    make_lmp_zero,
)


@pytest.fixture
def lmp_a():
    return make_lmp_a()


@pytest.fixture
def lmp_b():
    return make_lmp_b()


@pytest.fixture
def lmp_b_broken():
    return make_lmp_b_broken()


@pytest.fixture
def lmp_b_prime():
    return make_lmp_b_prime()


@pytest.fixture
def lmp_zero():
    return make_lmp_zero()


@pytest.fixture
def lmp_single():
    return make_lmp_single()
