"""Constant mean curvature graphs over hyperbolic space."""

from .errors import CMCError, DomainError, ParameterError, SignatureError, SingularPointError
from .global_analysis import foliation_check, theorem11_check, theorem14_global_check, theorem15_check
from .hyperbolic_ball import BallPoint, GeodesicBall, ball_area, ball_volume, cheeger_ratio, radial_distance
from .kernels import BACKEND
from .radial_profile import (
    ProfileParams,
    Signature,
    graph_value,
    phi_profile,
    sinh_power_integral,
    u_profile,
    w_profile,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BallPoint",
    "CMCError",
    "DomainError",
    "GeodesicBall",
    "ParameterError",
    "ProfileParams",
    "Signature",
    "SignatureError",
    "SingularPointError",
    "ball_area",
    "ball_volume",
    "cheeger_ratio",
    "foliation_check",
    "graph_value",
    "phi_profile",
    "radial_distance",
    "sinh_power_integral",
    "theorem11_check",
    "theorem14_global_check",
    "theorem15_check",
    "u_profile",
    "w_profile",
]
