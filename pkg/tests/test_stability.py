from fractions import Fraction

import pytest

from wallcross import constants
from wallcross.errors import InputError
from wallcross.quiver import DimVector, StabilityParam, Wall, dynkin_a, flag, nakajima, single_vertex
from wallcross.stability import (
    EnhancedDim,
    SlopeParams,
    SubDimension,
    certify,
    cond_b,
    cond_c,
    context_from_parameters,
    enumerate_subdimensions,
    find_parameters,
    full_subdimension,
    slope,
    slope_determinant,
    theta_vector,
    two_stability,
    wall_crossing_context,
)

ONE_VERTEX = DimVector((("0", 1),))
TWO_AT_ZERO = DimVector((("0", 2),))
A2 = DimVector((("1", 1), ("2", 1)))


def params(alpha, zeta, eta):
    return SlopeParams(StabilityParam.normalized(zeta, alpha), tuple(Fraction(e) for e in eta))


def test_enhanced_dim_index_set():
    flag = EnhancedDim.from_index_set(TWO_AT_ZERO, "0", 3, [1, 3])
    assert flag.flags == (1, 1, 2)
    assert flag.index_set == (1, 3)
    assert flag.dim_total == 3
    assert EnhancedDim.full(TWO_AT_ZERO, "0").flags == (1, 2)


def test_enhanced_dim_rejects_bad_flags():
    with pytest.raises(InputError):
        EnhancedDim(TWO_AT_ZERO, "0", (1, 3))
    with pytest.raises(InputError):
        EnhancedDim(TWO_AT_ZERO, "0", (1, 1))
    with pytest.raises(InputError):
        EnhancedDim.from_index_set(TWO_AT_ZERO, "0", 2, [1, 4])


def test_slope_small_example():
    p = params(ONE_VERTEX, {"0": -1}, [2])
    assert p.zeta.infinity == 1
    sub = SubDimension(ONE_VERTEX, 1, (1,))
    assert slope(p, sub) == 1
    assert slope(p, SubDimension(DimVector((("0", 0),)), 1, (1,))) == 3
    with pytest.raises(InputError):
        slope(p, SubDimension(DimVector((("0", 0),)), 0, (1,)))


def test_theta_pairing_matches_slope_determinant():
    flag = EnhancedDim.from_index_set(TWO_AT_ZERO, "0", 3, [1, 3])
    p = params(TWO_AT_ZERO, {"0": Fraction(-3, 2)}, [9, 4, 1])
    theta = theta_vector(p, flag)
    for sub in enumerate_subdimensions(flag):
        assert theta.pairing(sub, "0") == slope_determinant(p, flag, sub)
    assert theta.pairing(full_subdimension(flag), "0") == 0


def test_two_stability():
    assert two_stability([17, 1], 2, 1)
    assert not two_stability([1, 1], 1, 1)
    assert two_stability([5], 3, 1)
    assert two_stability([Fraction(17, 3), Fraction(1, 3)], 2, 1)
    assert two_stability([3, 1], 2, 1)
    assert not two_stability([3, 1], 2, 1, scaled=True)
    with pytest.raises(InputError):
        two_stability([1, 0], 1, 1)


def test_cond_c():
    flag = EnhancedDim.full(TWO_AT_ZERO, "0")
    assert cond_c(params(TWO_AT_ZERO, {}, [17, 1]), flag)
    assert not cond_c(params(TWO_AT_ZERO, {}, [5, 1]), flag)


def test_cond_b_rejects_out_of_range_ell():
    flag = EnhancedDim.full(TWO_AT_ZERO, "0")
    with pytest.raises(InputError):
        cond_b(params(TWO_AT_ZERO, {}, [17, 1]), Wall(ONE_VERTEX), 3, flag)


def test_find_parameters_single_vertex():
    flag = EnhancedDim.full(TWO_AT_ZERO, "0")
    wall = Wall(ONE_VERTEX)
    triple = find_parameters(wall, 1, flag)
    assert triple.eta == (Fraction(17), Fraction(1))
    assert triple.zeta_plus["0"] == Fraction(5, 2)
    assert triple.zeta_minus["0"] == Fraction(-5, 2)
    assert wall.sign(triple.zeta_plus) == 1
    assert wall.sign(triple.zeta_minus) == -1
    zeta_bar = StabilityParam.normalized({"0": 0}, TWO_AT_ZERO)
    assert certify(triple, wall, 1, flag, zeta_bar).ok


def test_find_parameters_alpha_equals_beta():
    flag = EnhancedDim.full(ONE_VERTEX, "0")
    triple = find_parameters(Wall(ONE_VERTEX), 1, flag)
    assert triple.zeta_plus["0"] == Fraction(1, 4)
    assert triple.eta == (Fraction(1),)


def test_find_parameters_rejects_bad_input():
    flag = EnhancedDim.from_index_set(TWO_AT_ZERO, "0", 3, [1, 3])
    with pytest.raises(InputError):
        find_parameters(Wall(ONE_VERTEX), 2, flag)
    off_wall = StabilityParam.normalized({"0": 1}, TWO_AT_ZERO)
    with pytest.raises(InputError):
        find_parameters(Wall(ONE_VERTEX), 1, flag, zeta_bar=off_wall)


def test_find_parameters_two_vertices():
    beta = DimVector((("1", 1), ("2", 0)))
    flag = EnhancedDim.full(A2, "1")
    wall = Wall(beta)
    triple = find_parameters(wall, 1, flag)
    assert triple.zeta_plus.as_dict() == {"1": Fraction(1, 6), "2": Fraction(1)}
    assert triple.zeta_minus.as_dict() == {"1": Fraction(-1, 6), "2": Fraction(1)}

    ctx = context_from_parameters(nakajima(dynkin_a(2), [1, 0]), flag, wall, triple)
    assert dict(ctx.theta_plus) == {"1": -1, "2": 4}
    assert dict(ctx.theta_minus) == {"1": -3, "2": 4}
    assert ctx.D == 2


def test_find_parameters_on_flag_quiver():
    q = flag(2, 2)
    alpha = DimVector((("1", 1), ("2", 1)))
    beta = DimVector((("1", 1), ("2", 0)))
    flag_dims = EnhancedDim.full(alpha, "1")
    triple = find_parameters(Wall(beta), 1, flag_dims)
    zeta_bar = StabilityParam.normalized({"1": 0, "2": 1}, alpha)
    assert certify(triple, Wall(beta), 1, flag_dims, zeta_bar).ok
    ctx = wall_crossing_context(q, alpha, beta, parameters=triple)
    assert ctx.beta_bar == -2
    assert ctx.D == 2


def test_find_parameters_single_vertex_two_arrows():
    flag_dims = EnhancedDim.full(TWO_AT_ZERO, "0")
    triple = find_parameters(Wall(ONE_VERTEX), 1, flag_dims)
    ctx = wall_crossing_context(single_vertex(2), TWO_AT_ZERO, ONE_VERTEX, parameters=triple)
    assert ctx.D > 0
    assert ctx.beta_bar == 2


def test_wall_crossing_context_with_parameters():
    q = single_vertex(1)
    triple = find_parameters(Wall(ONE_VERTEX), 1, EnhancedDim.full(TWO_AT_ZERO, "0"))
    ctx = wall_crossing_context(q, TWO_AT_ZERO, ONE_VERTEX, parameters=triple)
    assert ctx.D == 30
    assert (ctx.alpha0, ctx.beta0, ctx.beta_bar) == (2, 1, 1)
    plain = wall_crossing_context(q, TWO_AT_ZERO, ONE_VERTEX)
    assert plain.D is None


def test_denominator_cap_from_environment(monkeypatch):
    monkeypatch.delenv(constants.MAX_DENOM_ENV, raising=False)
    assert constants.max_denominator() == constants.DEFAULT_MAX_DENOM
    monkeypatch.setenv(constants.MAX_DENOM_ENV, "5")
    assert constants.max_denominator() == 5
    monkeypatch.setenv(constants.MAX_DENOM_ENV, "lots")
    with pytest.raises(InputError):
        constants.max_denominator()
    with pytest.raises(InputError):
        find_parameters(Wall(ONE_VERTEX), 1, EnhancedDim.full(ONE_VERTEX, "0"))
