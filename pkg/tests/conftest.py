import numpy as np
import pytest

from demikit import (
    make_scaled_reflection,
    make_t1,
    make_t2,
    make_t3,
    make_t4,
    make_t5,
)


@pytest.fixture
def t1():
    return make_t1()


@pytest.fixture
def t2():
    return make_t2()


@pytest.fixture
def t3():
    return make_t3()


@pytest.fixture
def t4():
    return make_t4()


@pytest.fixture
def t5():
    return make_t5()


@pytest.fixture
def reflection3():
    return make_scaled_reflection(3.0, 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240703)
