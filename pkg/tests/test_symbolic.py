import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallcross.errors import InputError, ZeroWeightError
from wallcross.symbolic import (
    ONE,
    ZERO,
    ZERO_WEIGHT,
    KClass,
    Polynomial,
    RationalFunction,
    WeightForm,
    euler_plain,
    euler_theta,
    finite_residue_sum,
    pochhammer,
    poly_arith,
    residue_at_infinity,
    residue_scaling_check,
    simple_pole_residue,
)


def rf(text):
    return RationalFunction.parse(text)


def test_parse_cancels_common_factors():
    assert rf("(theta^2 - 1)/(theta - 1)") == rf("theta + 1")
    assert rf("(theta^2 - 1)/(theta - 1)").to_text() == "theta + 1"


def test_canonical_text_is_stable_under_reparse():
    value = rf("(x1 - x2 + theta)/(x2 - x1)")
    assert rf(value.to_text()) == value
    assert rf(value.to_text()).to_text() == value.to_text()


def test_denominator_is_monic():
    value = rf("1/(2*theta + 4)")
    assert value.denominator == Polynomial.parse("theta + 2")
    assert value.numerator == Polynomial.constant(Fraction(1, 2))


def test_constants_and_fractions():
    assert (rf("3/4") + rf("1/4")) == ONE
    assert rf("6/8").to_fraction() == Fraction(3, 4)
    assert (rf("theta") - rf("theta")).is_zero()
    with pytest.raises(InputError):
        rf("theta").to_fraction()


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        rf("theta") / ZERO


def test_bad_input_raises_input_error():
    with pytest.raises(InputError):
        rf("theta +* 1")
    with pytest.raises(InputError):
        Polynomial.parse("1/theta")


def test_poly_arith_dispatch():
    assert poly_arith(rf("theta"), 2, "mul") == rf("2*theta")
    assert poly_arith(1, rf("theta"), "div") == rf("1/theta")
    with pytest.raises(InputError):
        poly_arith(1, 2, "pow")


def test_degree_and_variables():
    value = rf("(theta^3 + eps)/(eps^2)")
    assert value.degree("theta") == (3, 0)
    assert value.degree("eps") == (1, 2)
    assert set(value.variables()) == {"theta", "eps"}


def test_substitute_polynomial_value():
    value = rf("theta^2 + eps")
    assert value.substitute("theta", rf("eps + 1")) == rf("eps^2 + 3*eps + 1")


def test_pochhammer():
    assert pochhammer(rf("theta"), 0) == ONE
    assert pochhammer(rf("theta"), 3) == rf("theta*(theta+1)*(theta+2)")
    assert pochhammer(3, 2) == RationalFunction.constant(12)


def test_weight_form_json_and_arithmetic():
    w = WeightForm.from_mapping({"x1": 1, "q1": -1, "1": 2})
    assert WeightForm.from_json(w.to_json()) == w
    assert (w - w).is_zero()
    assert (w * 2).to_polynomial() == Polynomial.parse("2*x1 - 2*q1 + 4")
    assert (-w).to_polynomial() == Polynomial.parse("-x1 + q1 - 2")


def test_kclass_operations():
    a = KClass((WeightForm.of("x1"), WeightForm.of("x2")), (ZERO_WEIGHT,))
    b = KClass((WeightForm.of("x3"),))
    assert (a + b).rank == 2
    assert (a - b).rank == 0
    assert (-a).rank == -1
    assert a.dual().plus == (WeightForm.of("x1", -1), WeightForm.of("x2", -1))


def test_euler_theta_twists_every_line():
    c = KClass((WeightForm.of("x1"),), (ZERO_WEIGHT,))
    assert euler_theta(c) == rf("(x1 + theta)/theta")
    assert euler_theta(KClass()) == ONE


def test_euler_theta_rejects_vanishing_denominator():
    c = KClass((), (WeightForm.of("theta", -1),))
    with pytest.raises(ZeroWeightError):
        euler_theta(c)


def test_euler_plain_rejects_zero_weight():
    assert euler_plain(KClass((WeightForm.of("x1"),), (WeightForm.of("x2"),))) == rf("x1/x2")
    with pytest.raises(ZeroWeightError):
        euler_plain(KClass((ZERO_WEIGHT,)))
    with pytest.raises(ZeroDivisionError):
        euler_plain(KClass((), (ZERO_WEIGHT,)))


# -------- residues --------

def test_residue_at_infinity_simple_cases():
    assert residue_at_infinity(rf("1/(v - x1)"), "v") == ONE
    assert residue_at_infinity(rf("v^3 + v"), "v") == ZERO
    assert residue_at_infinity(rf("v^2/((v - x1)*(v - x2))"), "v") == rf("x1 + x2")


def test_residue_at_infinity_matches_finite_residues():
    f = rf("(v + theta)/((v - x1)*(v - x2)*(v - x3))")
    assert residue_at_infinity(f, "v") == finite_residue_sum(f, "v", [rf("x1"), rf("x2"), rf("x3")])


def test_simple_pole_residue_rejects_double_pole():
    assert simple_pole_residue(rf("1/(v - x1)"), "v", rf("x1")) == ONE
    with pytest.raises(InputError):
        simple_pole_residue(rf("1/(v - x1)^2"), "v", rf("x1"))


def test_residue_scaling_randomized():
    rng = random.Random(20240611)
    for _ in range(100):
        roots = [rng.randint(-5, 5) for _ in range(rng.randint(1, 6))]
        numerator = " + ".join(f"({rng.randint(-3, 3)})*v^{k}" for k in range(rng.randint(1, 7)))
        denominator = "*".join(f"(v - ({r}))" for r in roots)
        f = rf(f"({numerator})/({denominator})")
        assert residue_scaling_check(f, "v", rng.randint(1, 4), rng.randint(-3, 3))


# -------- field laws --------

small = st.integers(min_value=-4, max_value=4)


@st.composite
def rational_functions(draw):
    a, b, c = draw(small), draw(small), draw(small)
    d = draw(st.integers(min_value=1, max_value=3))
    return rf(f"({a}*theta^2 + {b}*eps + {c})/(theta + {d}*eps + 1)")


@settings(deadline=None, max_examples=30)
@given(rational_functions(), rational_functions(), rational_functions())
def test_field_laws(x, y, z):
    assert x + y == y + x
    assert x * (y + z) == x * y + x * z
    assert (x - y) + y == x
    if not y.is_zero():
        assert (x / y) * y == x


@settings(deadline=None, max_examples=30)
@given(rational_functions())
def test_text_round_trip_is_canonical(x):
    assert rf(x.to_text()) == x
    assert hash(rf(x.to_text())) == hash(x)
