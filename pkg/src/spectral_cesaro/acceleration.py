"""Sequence acceleration: Wynn's epsilon algorithm and Richardson extrapolation."""

from __future__ import annotations

import numpy as np


def wynn_epsilon(partial_sums, return_error=False):
    """Accelerate a sequence of partial sums with Wynn's epsilon algorithm.

    Parameters
    ----------
    partial_sums : sequence of float or complex
        Partial sums S_0, S_1, ... of the series to accelerate.
    return_error : bool
        If True also return a crude error estimate (difference of the last
        two even-column estimates).

    Returns
    -------
    value, or (value, error_estimate)
    """
    s = [complex(v) for v in partial_sums]
    n = len(s)
    if n == 0:
        raise ValueError("empty sequence")
    real_input = all(v.imag == 0 for v in s)
    if n == 1:
        out = s[0].real if real_input else s[0]
        return (out, abs(s[0])) if return_error else out

    prev = [0.0 + 0.0j] * (n + 1)  # epsilon_{-1}
    cur = list(s)                  # epsilon_0
    estimates = [cur[-1]]
    col = 0
    while len(cur) >= 2:
        nxt = []
        degenerate = False
        for j in range(len(cur) - 1):
            d = cur[j + 1] - cur[j]
            if d == 0:
                # converged exactly; adopt the current value and stop
                degenerate = True
                break
            nxt.append(prev[j + 1] + 1.0 / d)
        if degenerate:
            estimates.append(cur[-1])
            break
        prev, cur = cur, nxt
        col += 1
        if col % 2 == 0 and cur:
            estimates.append(cur[-1])
    value = estimates[-1]
    err = abs(estimates[-1] - estimates[-2]) if len(estimates) > 1 else abs(value - s[-1])
    if real_input:
        value = value.real
    return (value, err) if return_error else value


def richardson(values, steps, order=2):
    """Richardson-extrapolate f(h) -> f(0) assuming an expansion in h**order.

    ``values[i]`` is f evaluated at ``steps[i]``; steps must be distinct.
    Returns the triangular-scheme apex.
    """
    vals = [complex(v) for v in values]
    hs = [float(h) for h in steps]
    n = len(vals)
    if n != len(hs):
        raise ValueError("values and steps must have equal length")
    table = list(vals)
    for level in range(1, n):
        new = []
        for i in range(n - level):
            hi = hs[i] ** order
            hj = hs[i + level] ** order
            new.append((hi * table[i + 1] - hj * table[i]) / (hi - hj))
        table = new
    out = table[0]
    if all(v.imag == 0 for v in vals):
        out = out.real
    return out


def fit_power_coefficients(ts, values, powers):
    """Least-squares fit values(t) = sum_p c_p t**p on a (geometric) ladder.

    Columns are norm-scaled before solving, which keeps the Vandermonde
    system well conditioned for the short ladders used here. Returns the
    coefficient array in the order of ``powers``.
    """
    ts = np.asarray(ts, dtype=float)
    vals = np.asarray(values)
    A = np.array([ts**p for p in powers]).T
    cn = np.linalg.norm(A, axis=0)
    cn[cn == 0] = 1.0
    coef, *_ = np.linalg.lstsq(A / cn, vals, rcond=None)
    return coef / cn
