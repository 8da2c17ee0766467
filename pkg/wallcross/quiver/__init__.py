"""Framed quivers, dimension vectors, walls and the standard examples."""
from .structures import Arrow, DimVector, FramedQuiver, PathTerm, Relation, validate  # noqa: F401
from .walls import (  # noqa: F401
    Classification,
    StabilityParam,
    Wall,
    WallCrossingContext,
    beta_bar_infinity,
    classify_parameter,
    enumerate_walls,
    zeta_infinity,
)
from .builders import (  # noqa: F401
    Graph,
    blowup,
    builtin,
    builtin_from_spec,
    chainsaw,
    dynkin_a,
    flag,
    jordan_graph,
    nakajima,
    single_vertex,
)
from .derived import enhanced_quiver, sharp_quiver  # noqa: F401

__all__ = [
    "Arrow",
    "DimVector",
    "FramedQuiver",
    "PathTerm",
    "Relation",
    "validate",
    "Classification",
    "StabilityParam",
    "Wall",
    "WallCrossingContext",
    "beta_bar_infinity",
    "classify_parameter",
    "enumerate_walls",
    "zeta_infinity",
    "Graph",
    "blowup",
    "builtin",
    "builtin_from_spec",
    "chainsaw",
    "dynkin_a",
    "flag",
    "jordan_graph",
    "nakajima",
    "single_vertex",
    "enhanced_quiver",
    "sharp_quiver",
]
