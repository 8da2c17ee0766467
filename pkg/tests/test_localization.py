from math import comb, factorial

import pytest

from wallcross.errors import InputError
from wallcross.localization import (
    FixedPoint,
    ab_integrate,
    adjoint_experiment,
    destabilizing_model,
    flag_model,
    gamma_by_localization,
    grassmannian_model,
    integrand_from_text,
    lambda_class,
    model_from_text,
    one_arrow_model_check,
    point_model,
    sharp_generates,
    single_vertex_integral,
)
from wallcross.quiver import jordan_graph, nakajima, single_vertex
from wallcross.symbolic import ONE, ZERO, ZERO_WEIGHT, RationalFunction, WeightForm


def test_grassmannian_fixed_points():
    model = grassmannian_model(2, 4)
    assert len(model) == 6
    assert model.dimension == 4
    assert len(grassmannian_model(5, 3)) == 0
    assert len(grassmannian_model(0, 3)) == 1
    point = model.points[0]
    assert point.label == "{1,2}"
    assert point.bundle("V") == (WeightForm.of("x1"), WeightForm.of("x2"))
    assert point.bundle("Q*") == (WeightForm.of("x3", -1), WeightForm.of("x4", -1))
    with pytest.raises(InputError):
        point.bundle("W")


def test_projective_line_integrals():
    p1 = grassmannian_model(1, 2)
    assert ab_integrate(p1, integrand_from_text("T")) == RationalFunction.constant(2)
    assert ab_integrate(p1, integrand_from_text("V")) == RationalFunction.constant(-1)
    assert ab_integrate(p1, integrand_from_text("T"), twisted=False) == RationalFunction.constant(2)


def test_euler_characteristic_counts_points():
    for n in range(0, 7):
        for k in range(0, n + 1):
            model = grassmannian_model(k, n)
            assert ab_integrate(model, integrand_from_text("T"), twisted=False) == comb(n, k)
    assert ab_integrate(point_model(), integrand_from_text("T")) == ONE


def test_full_flag_twisted_tangent_integral():
    for m in range(2, 5):
        model = flag_model(m, list(range(1, m)))
        assert len(model) == factorial(m)
        assert ab_integrate(model, integrand_from_text("T")) == factorial(m)


def test_flag_model_rejects_bad_dimensions():
    with pytest.raises(InputError):
        flag_model(3, [2, 1])
    with pytest.raises(InputError):
        flag_model(3, [1, 4])


def test_model_from_text():
    assert len(model_from_text("point")) == 1
    assert len(model_from_text("grassmannian:1,2")) == 2
    assert len(model_from_text("flag:3:1,2")) == 6
    with pytest.raises(InputError):
        model_from_text("grassmannian:a,b")
    with pytest.raises(InputError):
        model_from_text("torus:2")


def test_integrand_parsing():
    point = FixedPoint("p", (WeightForm.of("x1"),), (("V", (WeightForm.of("x2"),)), ("Q", ())))
    value = integrand_from_text("T + V - Q*")(point)
    assert value.rank == 2
    with pytest.raises(InputError):
        integrand_from_text("T V")
    with pytest.raises(InputError):
        integrand_from_text("  ")


def test_lambda_class_ranks():
    q = single_vertex(2)
    assert lambda_class(q, {"0": (ZERO_WEIGHT,)}).rank == 1
    assert lambda_class(q, {"0": None}).rank == 0
    # Hilbert scheme of one point on the plane
    assert lambda_class(nakajima(jordan_graph(), 1), {"0": (ZERO_WEIGHT,)}).rank == 2
    with pytest.raises(InputError):
        lambda_class(q, {})


def test_single_vertex_integrals():
    q = single_vertex(1)
    assert single_vertex_integral(q, 1, 0) == ONE
    assert single_vertex_integral(q, 1, 1) == ONE
    assert single_vertex_integral(q, 1, 2) == ZERO


def test_destabilizing_moduli():
    q = single_vertex(2)
    assert sharp_generates(q, "0", 1)
    assert not sharp_generates(q, "0", 2)
    assert len(destabilizing_model(q, "0", 1)) == 1
    assert len(destabilizing_model(q, "0", 3)) == 0
    with pytest.raises(InputError):
        destabilizing_model(q, "0", 0)
    with pytest.raises(NotImplementedError):
        sharp_generates(nakajima(jordan_graph(), 1), "0", 1)


def test_gamma_by_localization():
    for r in (1, 2, 3):
        assert gamma_by_localization(single_vertex(r), "0", 3) == {1: ONE, 2: ZERO, 3: ZERO}


def test_adjoint_experiment():
    for r in (1, 2, 3):
        for alpha0 in range(0, r + 1):
            report = adjoint_experiment(r, alpha0)
            assert report.equal, (r, alpha0, report.lhs.to_text(), report.rhs.to_text())
    assert adjoint_experiment(3, 2).lhs == RationalFunction.constant(-3)
    assert adjoint_experiment(1, 1).lhs == RationalFunction.constant(-1)
    for r in (1, 2, 3):
        empty = adjoint_experiment(r, 0)
        assert (empty.lhs, empty.rhs, empty.grouped) == (ZERO, ZERO, ())
    with pytest.raises(InputError):
        adjoint_experiment(1, 2)


def test_one_arrow_model_check():
    for k, recursed, localized in one_arrow_model_check(3):
        assert recursed == localized, k
