"""Adaptive quadrature, including an oscillatory-integrand strategy.

The base engine is QUADPACK via :func:`scipy.integrate.quad`. Oscillatory
integrands over long ranges are handled by splitting the domain at
consecutive zeros of the oscillatory factor, integrating each lobe
adaptively, and accelerating the alternating lobe-sum sequence with Wynn's
epsilon algorithm.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .acceleration import wynn_epsilon
from .errors import AccuracyError, ParameterError

__all__ = ["QuadratureResult", "integrate", "lobe_sum", "oscillatory_integrate"]


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        if not np.isfinite(self.error_estimate):
            raise ValueError("error_estimate must be finite")
        if self.evaluations <= 0:
            raise ValueError("evaluations must be positive")


def _quad_counted(f, a, b, tol, points=None, limit=400):
    calls = [0]

    def g(x):
        calls[0] += 1
        return f(x)

    kw = dict(epsabs=tol, epsrel=max(tol, 1e-13), limit=limit)
    if points is not None and np.isfinite(a) and np.isfinite(b):
        inner = [p for p in points if a < p < b]
        if inner:
            kw["points"] = inner
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        val, err = quad(g, a, b, **kw)
    return val, err, calls[0]


def _probe_point(a, b):
    if np.isfinite(a) and np.isfinite(b):
        return 0.5 * (a + b)
    if np.isfinite(a):
        return a + 1.0
    if np.isfinite(b):
        return b - 1.0
    return 0.0


def integrate(f, a, b, tol=1e-10, points=None, limit=400, complex_output=None):
    """Adaptive quadrature of ``f`` over ``[a, b]`` (either end may be inf).

    Complex-valued integrands are split into real and imaginary parts;
    by default the output type is probed at one interior point. Raises
    :class:`AccuracyError` (carrying the best estimate) when the reported
    error exceeds ``tol`` by a wide margin.
    """
    if tol <= 0:
        raise ParameterError("tol must be positive")
    if complex_output is None:
        probe = f(_probe_point(a, b))
        complex_output = np.iscomplexobj(probe) or isinstance(probe, complex)
    if complex_output:
        vr, er, nr = _quad_counted(lambda x: np.real(f(x)), a, b, tol, points, limit)
        vi, ei, ni = _quad_counted(lambda x: np.imag(f(x)), a, b, tol, points, limit)
        value, err, n = vr + 1j * vi, er + ei, nr + ni
    else:
        value, err, n = _quad_counted(f, a, b, tol, points, limit)
    scale = max(abs(value), 1.0)
    if err > max(tol * 50, 1e-13 * scale) and err > tol:
        raise AccuracyError(
            f"quadrature error estimate {err:.2e} exceeds tol {tol:.2e}",
            best_estimate=value,
            error_estimate=err,
        )
    return QuadratureResult(value=value, error_estimate=float(err), evaluations=n)


def lobe_sum(f, breakpoints, tol=1e-12, accelerate=True):
    """Integrate ``f`` over consecutive intervals and accelerate the partial sums.

    ``breakpoints`` is an increasing sequence delimiting the lobes (typically
    zeros of the oscillatory factor). Returns a :class:`QuadratureResult`.
    """
    bp = [float(b) for b in breakpoints]
    if len(bp) < 2:
        raise ParameterError("need at least two breakpoints")
    if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
        raise ParameterError("breakpoints must be strictly increasing")
    lobes = []
    total_err = 0.0
    calls = 0
    for a, b in zip(bp, bp[1:]):
        r = integrate(f, a, b, tol=tol, limit=200)
        lobes.append(r.value)
        total_err += r.error_estimate
        calls += r.evaluations
    partial = np.cumsum(lobes)
    if accelerate and len(lobes) >= 6:
        value, acc_err = wynn_epsilon(partial, return_error=True)
        err = total_err + acc_err
    else:
        value, err = partial[-1], total_err
    return QuadratureResult(value=value, error_estimate=float(err), evaluations=calls)


def oscillatory_integrate(f, a, b, phase, tol=1e-12, max_lobes=20000):
    """Integrate an oscillatory ``f`` by splitting at zeros of its phase factor.

    ``phase`` maps t to the (strictly monotone) phase of the oscillatory
    factor; the domain is split where the phase crosses integer multiples of
    pi. Falls back to plain adaptive quadrature when fewer than two crossings
    lie in the domain.
    """
    if not (np.isfinite(a) and np.isfinite(b)):
        raise ParameterError("oscillatory_integrate requires a finite interval")
    pa, pb = phase(a), phase(b)
    lo, hi = min(pa, pb), max(pa, pb)
    k0, k1 = int(np.ceil(lo / np.pi)), int(np.floor(hi / np.pi))
    if k1 - k0 > max_lobes:
        raise AccuracyError(f"too many lobes ({k1 - k0}) for the evaluation budget")
    if k1 < k0 + 1:
        return integrate(f, a, b, tol=tol)
    from scipy.optimize import brentq

    crossings = []
    for k in range(k0, k1 + 1):
        g = lambda t, tgt=k * np.pi: phase(t) - tgt
        if g(a) * g(b) > 0:
            continue
        crossings.append(brentq(g, a, b, xtol=1e-14 * max(abs(a), abs(b), 1.0)))
    pts = sorted(set([a] + crossings + [b]))
    return lobe_sum(f, pts, tol=tol)
