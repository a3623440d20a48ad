"""Special functions: Bessel J of integer and half-integer order.

The evaluation is delegated to scipy's AMOS-backed ``jv``; this module owns
the order validation and the half-integer closed forms used as reductions
elsewhere (J_{-1/2} -> cos, J_{1/2} -> sin).
"""

from __future__ import annotations

import numpy as np
from scipy import special as _sp

from .errors import ParameterError

__all__ = ["bessel_j", "is_supported_order"]


def is_supported_order(order: float) -> bool:
    """Orders are integers or half-integers, not below -1/2."""
    two = 2.0 * order
    return order >= -0.5 and abs(two - round(two)) < 1e-12


def bessel_j(order: float, z) -> float:
    """Bessel function J_order(z) for z >= 0.

    Half-integer orders -1/2 and 1/2 use their trigonometric closed forms
    (numerically exact down to z = 0+); other orders go through scipy.
    """
    if not is_supported_order(order):
        raise ParameterError(
            f"unsupported Bessel order {order}; need integer or half-integer >= -1/2")
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ParameterError("bessel_j requires z >= 0")
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if order == -0.5:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.sqrt(2.0 / (np.pi * z)) * np.cos(z)
        out[z == 0] = np.inf
    elif order == 0.5:
        out = np.empty_like(z)
        small = z < 1e-4
        # series sqrt(2z/pi)*(1 - z^2/6 + ...) avoids 0/0 at the origin
        zs = z[small]
        out[small] = np.sqrt(2.0 * zs / np.pi) * (1.0 - zs * zs / 6.0 + zs**4 / 120.0)
        zl = z[~small]
        out[~small] = np.sqrt(2.0 / (np.pi * zl)) * np.sin(zl)
    else:
        out = _sp.jv(order, z)
    return float(out[0]) if scalar else out
