"""Backend selection for the radial kernels.

The compiled ``_core`` extension is used when it imports; otherwise the
pure-Python ``_pycore`` module. Set ``CMCGRAPH_PURE_PYTHON=1`` to force the
fallback (used by the test suite to exercise both paths).
"""

import os

if os.environ.get("CMCGRAPH_PURE_PYTHON", "") not in ("", "0"):
    from . import _pycore as _impl

    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:
        from . import _pycore as _impl

        BACKEND = "python"

SERIES_RADIUS = _impl.SERIES_RADIUS
QUAD_TOL = _impl.QUAD_TOL
QUAD_MAX_INTERVALS = _impl.QUAD_MAX_INTERVALS

series_coefficients = _impl.series_coefficients
u_state = _impl.u_state
u_profile = _impl.u_profile
sinh_power_integral = _impl.sinh_power_integral
w_state = _impl.w_state
w_value = _impl.w_value
phi_value = _impl.phi_value

__all__ = [
    "BACKEND",
    "SERIES_RADIUS",
    "QUAD_TOL",
    "QUAD_MAX_INTERVALS",
    "series_coefficients",
    "u_state",
    "u_profile",
    "sinh_power_integral",
    "w_state",
    "w_value",
    "phi_value",
]
