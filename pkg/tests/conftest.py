import pytest

from valext.fields import FieldTower


@pytest.fixture
def rationals():
    return FieldTower.rationals()


@pytest.fixture
def q_i(rationals):
    return rationals.extend_algebraic("i", [1, 0, 1])


@pytest.fixture
def q_sqrt2(rationals):
    return rationals.extend_algebraic("s2", [-2, 0, 1])


@pytest.fixture
def f2():
    return FieldTower.prime_field(2)


@pytest.fixture
def f2_a(f2):
    return f2.extend_transcendental("a")


@pytest.fixture
def f2_a_r(f2_a):
    return f2_a.extend_algebraic("r", [f2_a.gen("a"), f2_a.zero(), f2_a.one()])


@pytest.fixture
def f3():
    return FieldTower.prime_field(3)


@pytest.fixture
def f5():
    return FieldTower.prime_field(5)
