"""Multi-period flex-grid optical network planner."""

from ._core import (
    Channel,
    ChannelPlacement,
    FlexplanError,
    IoError,
    NumericalError,
    PlacementOverflow,
    RoutingInfeasible,
    SchemaError,
    Span,
    TrxConfig,
    ValidationError,
    ase_osnr,
    compare,
    gn_nli_power,
    gsnr,
    load_catalog,
    lp_count_bounds,
    min_bandwidth_multiset,
    plan,
    shortest_route,
    validate,
)

__version__ = "0.3.0"
