from fractions import Fraction

import pytest

from wallcross.errors import InputError
from wallcross.quiver import (
    Arrow,
    DimVector,
    FramedQuiver,
    StabilityParam,
    Wall,
    WallCrossingContext,
    beta_bar_infinity,
    blowup,
    builtin_from_spec,
    chainsaw,
    classify_parameter,
    dynkin_a,
    enhanced_quiver,
    enumerate_walls,
    flag,
    jordan_graph,
    nakajima,
    sharp_quiver,
    single_vertex,
    validate,
    zeta_infinity,
)
from wallcross.symbolic import WeightForm


def dims(**entries):
    return DimVector(tuple(entries.items()))


def test_builtin_quivers_validate():
    for q in (
        single_vertex(3),
        flag(3, 2),
        nakajima(dynkin_a(2), [1, 1]),
        nakajima(jordan_graph(), 2),
        chainsaw(3, 1),
        blowup(2),
    ):
        assert validate(q) == []


def test_json_round_trip(tmp_path):
    q = nakajima(dynkin_a(2), [1, 0])
    path = tmp_path / "a2.json"
    q.dump(path)
    loaded = FramedQuiver.load(path)
    assert loaded == q
    assert loaded.to_json() == q.to_json()


def test_malformed_quiver_text():
    with pytest.raises(InputError):
        FramedQuiver.loads("{not json")
    with pytest.raises(InputError):
        FramedQuiver.loads('{"framing": "inf"}')


def test_validate_reports_problems():
    q = FramedQuiver(("0", "inf"), "inf", (Arrow("a", "0", "1"), Arrow("a", "inf", "0")))
    problems = validate(q)
    assert any("duplicate arrow id" in p for p in problems)
    assert any("unknown vertex '1'" in p for p in problems)


def test_framing_vertex_is_last():
    q = FramedQuiver(("inf", "b", "a"), "inf")
    assert q.vertices == ("b", "a", "inf")
    assert q.internal_vertices == ("b", "a")


def test_nakajima_weights():
    q = nakajima(dynkin_a(1), 2)
    z = q.arrow("z_1_1")
    w = q.arrow("w_1_2")
    assert z.source == "inf" and z.target == "1"
    assert z.weight == WeightForm.of("x1", -1)
    assert w.weight == WeightForm.from_mapping({"x2": 1, "q1": 1, "q2": 1})
    assert q.relation_endpoints(q.relations[0]) == ("1", "1")


def test_builtin_from_spec():
    assert builtin_from_spec("single-vertex:2") == single_vertex(2)
    assert builtin_from_spec("flag:2:2") == flag(2, 2)
    assert builtin_from_spec("nakajima:A2:1,1") == nakajima(dynkin_a(2), [1, 1])
    assert builtin_from_spec("chainsaw:3:1") == chainsaw(3, 1)
    with pytest.raises(InputError):
        builtin_from_spec("hexagon:3")
    with pytest.raises(InputError):
        builtin_from_spec("flag:two")


def test_dim_vector_parse_and_arithmetic():
    order = ("0", "1")
    alpha = DimVector.parse("0=2,1=1", order)
    assert alpha == DimVector.parse("2,1", order)
    assert alpha.total == 3
    assert alpha.minus(dims(**{"0": 1, "1": 1})) == DimVector((("0", 1), ("1", 0)))
    assert alpha.minus(dims(**{"0": 3})) is None
    assert alpha.scale(2).to_text() == "0=4,1=2"
    with pytest.raises(InputError):
        DimVector.parse("1,2,3", order)
    with pytest.raises(InputError):
        DimVector((("0", -1),))


def test_enumerate_walls():
    alpha = DimVector((("1", 1), ("2", 1)))
    assert [w.beta.to_text() for w in enumerate_walls(alpha)] == ["1=0,2=1", "1=1,2=0", "1=1,2=1"]
    assert len(enumerate_walls(DimVector((("0", 2),)))) == 1


def test_wall_must_be_primitive():
    with pytest.raises(InputError):
        Wall(DimVector((("0", 2),)))
    with pytest.raises(InputError):
        Wall(DimVector((("0", 0),)))


def test_zeta_infinity_balances():
    alpha = DimVector((("1", 2), ("2", 1)))
    zeta = StabilityParam.parse("1=1/2,2=-3", alpha)
    assert zeta.infinity == zeta_infinity(zeta.as_dict(), alpha) == Fraction(2)
    assert zeta.pairing(alpha) + zeta.infinity == 0


def test_classify_parameter():
    alpha = DimVector((("1", 1), ("2", 1)))
    generic = classify_parameter(StabilityParam.parse("1,2", alpha), alpha)
    assert generic.kind == "generic"
    on_wall = classify_parameter(StabilityParam.parse("1,-1", alpha), alpha)
    assert on_wall.kind == "on-wall"
    assert on_wall.wall.beta.to_text() == "1=1,2=1"
    assert classify_parameter(StabilityParam.parse("0,0", alpha), alpha).kind == "degenerate"


def test_beta_bar_infinity():
    beta = DimVector((("0", 1),))
    assert beta_bar_infinity(single_vertex(3), beta) == 3
    assert beta_bar_infinity(nakajima(jordan_graph(), 2), beta) == 0
    assert beta_bar_infinity(blowup(2), DimVector((("0", 1), ("1", 0)))) == 2
    assert beta_bar_infinity(blowup(2), DimVector((("0", 1), ("1", 1)))) == 0


def test_wall_crossing_context_defaults():
    q = single_vertex(2)
    ctx = WallCrossingContext.build(q, DimVector((("0", 3),)), Wall(DimVector((("0", 1),))))
    assert ctx.zero == "0"
    assert (ctx.alpha0, ctx.beta0, ctx.beta_bar) == (3, 1, 2)
    assert ctx.D is None
    with pytest.raises(InputError):
        WallCrossingContext.build(q, DimVector((("0", 1),)), Wall(DimVector((("0", 1),))), theta_plus={"0": 0}, theta_minus={"0": 1})


def test_enhanced_quiver_adds_chain():
    q = enhanced_quiver(single_vertex(1), "0", 2, alpha0=2)
    assert q.internal_vertices == ("0", "0~1", "0~2")
    assert q.path_endpoints(["0~1>", "0~2>"]) == ("0~1", "0")
    assert enhanced_quiver(single_vertex(1), "0", 0) == single_vertex(1)
    with pytest.raises(InputError):
        enhanced_quiver(single_vertex(1), "0", 1, alpha0=2)


def test_sharp_quiver_makes_old_framing_internal():
    q = sharp_quiver(single_vertex(2), "0")
    assert q.framing == "inf'"
    assert q.internal_vertices == ("0", "inf")
    assert q.arrow("inf'>0").target == "0"
    assert validate(q) == []
