"""Weierstrass representation and KdV hierarchy toolkit."""

from ._wlab import (
    Surface,
    flow_rhs,
    hierarchy_operator,
    riemann_rank,
    shiffman_flow,
    soliton_harness,
)

__all__ = [
    "Surface",
    "flow_rhs",
    "hierarchy_operator",
    "riemann_rank",
    "shiffman_flow",
    "soliton_harness",
]
