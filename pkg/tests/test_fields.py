import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valext.errors import CapabilityError, DomainError, StructuralError
from valext.fields import (
    FieldTower,
    TowerHom,
    is_radicial,
    is_separable_step,
    perfect_closure_truncated,
    pth_root,
    tower_separable_over,
)
from valext.poly import Polynomial


def test_defining_relation_q_i(q_i):
    i = q_i.gen("i")
    assert i * i == q_i.from_int(-1)
    assert (i + 1) * (i - 1) == q_i.from_int(-2)


def test_defining_relation_radicial(f2_a_r):
    r = f2_a_r.gen("r")
    a = f2_a_r.gen("a")
    assert r * r == a


def test_fraction_arithmetic(rationals):
    qx = rationals.extend_transcendental("x")
    x = qx.gen("x")
    assert (x + 1) / x + 1 / x == (x + 2) / x
    assert str((x + 1) / x + 1 / x) == "(x + 2)/x"


def test_inverse_of_zero(q_i):
    with pytest.raises(DomainError):
        q_i.zero().inv()


def test_reducible_minpoly_rejected(rationals):
    with pytest.raises(DomainError):
        rationals.extend_algebraic("u", [-1, 0, 1])  # y^2 - 1 = (y-1)(y+1)


def test_restrict_and_embed(f2_a_r):
    f2_a = f2_a_r.prefix(1)
    a = f2_a.gen("a")
    lifted = f2_a_r.embed(a)
    assert lifted.restrict(1) == a
    r = f2_a_r.gen("r")
    assert r.restrict(1) is None
    assert (r * r).restrict(1) == a


def test_describe_round_trip(f2_a_r, q_i):
    for tower in (f2_a_r, q_i, FieldTower.rationals()):
        assert FieldTower.from_description(tower.describe()) == tower
    assert f2_a_r.describe() == "base=F2; gen a: transcendental; gen r: algebraic y^2 + a"


def test_separable_step_examples(rationals, f2_a, f2):
    assert is_separable_step(Polynomial.parse("y^2 + 1", rationals, ("y",))) is True
    assert is_separable_step(Polynomial.parse("y^2 + a", f2_a, ("y",))) is False
    assert is_separable_step(Polynomial.parse("y^3 + y + 1", f2, ("y",))) is True


def test_separability_cached_along_towers(q_i, f2_a_r):
    assert q_i.steps[0].separable is True
    assert f2_a_r.steps[1].separable is False
    assert tower_separable_over(q_i, 0)
    assert not tower_separable_over(f2_a_r, 1)


def test_separability_multiplicative_along_towers(q_i, f2_a_r, q_sqrt2):
    # the cached tower flags agree with direct gcd tests step by step, and the
    # tower is separable exactly when every algebraic step is
    deep = q_sqrt2.extend_algebraic("i", [1, 0, 1]).extend_transcendental("x")
    for tower in (q_i, f2_a_r, deep):
        flags = []
        for idx, step in enumerate(tower.steps):
            if not step.is_algebraic:
                continue
            f = Polynomial.from_coeffs(tower.prefix(idx), "y", tower.minpoly_coeffs(idx))
            assert is_separable_step(f) == step.separable
            flags.append(step.separable)
        assert tower_separable_over(tower, 0) == all(flags)


def test_is_radicial_examples(f2_a, f2_a_r, rationals, q_i):
    assert is_radicial(f2_a, f2_a_r, 2) is True
    assert is_radicial(rationals, q_i, 1) is False
    f2_ax = f2_a.extend_transcendental("x")
    assert is_radicial(f2_a, f2_ax, 2) is False
    assert is_radicial(f2_a, f2_a, 2) is True


def test_is_radicial_requires_prefix(f2_a, f2):
    other = FieldTower.prime_field(2).extend_transcendental("b")
    with pytest.raises(StructuralError):
        is_radicial(other, f2_a, 2)


def test_pth_root_examples(f2_a, f2_a_r):
    a = f2_a.gen("a")
    assert pth_root(a) is None
    assert pth_root(f2_a_r.embed(a)) == f2_a_r.gen("r")
    # finite fields: Frobenius is onto
    f9 = FieldTower.prime_field(3).extend_algebraic("c", [1, 0, 1])
    z = f9.gen("c") + 1
    root = pth_root(z)
    assert root**3 == z


def test_pth_root_char_zero_is_domain_error(rationals):
    with pytest.raises(DomainError):
        pth_root(rationals.one())


def test_perfect_closure_perfect_field_fixed(f2):
    assert perfect_closure_truncated(f2, 2, 3) == f2


def test_perfect_closure_single_generator(f2_a):
    c = perfect_closure_truncated(f2_a, 2, 1)
    assert c.extension_degree(1) == 2
    root = pth_root(c.gen("a"))
    assert root is not None and root**2 == c.gen("a")
    # oracle: the adjoined generator squares back to a
    assert c.gen("a__p1") ** 2 == c.gen("a")


def test_perfect_closure_two_generators_degree():
    f3st = FieldTower.prime_field(3).extend_transcendental("s").extend_transcendental("t")
    c = perfect_closure_truncated(f3st, 3, 1)
    # oracle: two cube-root adjunctions, degree 3 * 3 over the base field
    assert c.extension_degree(2) == 9
    assert c.gen("s__p1") ** 3 == c.gen("s")
    assert c.gen("t__p1") ** 3 == c.gen("t")
    assert is_radicial(f3st, c, 3)


def test_perfect_closure_idempotent_for_existing_roots(f2_a_r):
    c = perfect_closure_truncated(f2_a_r, 2, 1)
    # a's square root is already r; only r needs a new root
    assert c.gen_names == ("a", "r", "r__p1")


def test_perfect_closure_wrong_characteristic(rationals, f2_a):
    with pytest.raises(DomainError):
        perfect_closure_truncated(rationals, 2, 1)
    with pytest.raises(DomainError):
        perfect_closure_truncated(f2_a, 3, 1)


def test_tower_hom_verify_and_apply(q_i):
    conj = TowerHom(q_i, q_i, [-q_i.gen("i")])
    assert conj.verify()
    z = q_i.gen("i") + 2
    assert conj.apply(z) == 2 - q_i.gen("i")
    bad = TowerHom(q_i, q_i, [q_i.gen("i") + 1])
    assert not bad.verify()


def test_transcendence_cap():
    t = FieldTower.rationals()
    for name in ("t1", "t2", "t3", "t4"):
        t = t.extend_transcendental(name)
    with pytest.raises(CapabilityError):
        t.extend_transcendental("t5")


small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def qi_elements(draw):
    q_i = FieldTower.rationals().extend_algebraic("i", [1, 0, 1])
    a, b = draw(small_ints), draw(small_ints)
    return q_i.from_int(a) + q_i.gen("i") * draw(small_ints) + q_i.from_fraction(Fraction(b, 7))


@settings(max_examples=60)
@given(qi_elements(), qi_elements(), qi_elements())
def test_field_axioms_q_i(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not a.is_zero:
        assert a * a.inv() == a.tower.one()


def test_field_axioms_random_char2(f2_a_r):
    rng = random.Random(3)

    def rand():
        out = f2_a_r.zero()
        for _ in range(3):
            t = f2_a_r.from_int(rng.randrange(2))
            for name in f2_a_r.gen_names:
                t = t * f2_a_r.gen(name) ** rng.randrange(2)
            out = out + t
        return out

    for _ in range(60):
        a, b, c = rand(), rand(), rand()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero:
            assert a * a.inv() == f2_a_r.one()
