"""Explicitly solvable model operators and their eigendata.

Kinds: the free line -d2/dx2 on R, the free Laplacian on R^d, the Dirichlet
interval (0, pi), and one-dimensional Schrodinger operators -d2/dx2 + V with
a smooth potential. Also hosts the one-dimensional phase-integral (WKB)
spectral-density coefficients through second order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ParameterError, UnsupportedOrderError
from .testfn import TestFunction, from_callable

__all__ = [
    "ModelOperator",
    "EigenPair",
    "Potential",
    "WkbTable",
    "free_line",
    "free_space",
    "dirichlet_interval",
    "schrodinger_line",
    "dirichlet_eigendata",
    "wkb_coefficients",
    "apply_H_power",
    "constant_potential",
    "quadratic_potential",
    "gaussian_well",
]


class Potential:
    """A potential V with analytic derivatives to the order supplied."""

    def __init__(self, name, derivatives, heuristic=False):
        # derivatives: [V, V', V'', ...] as callables
        self._chain = list(derivatives)
        self.name = name
        self.max_derivative_order = len(self._chain) - 1
        # outside the compactly-supported smooth class results are heuristic
        self.heuristic = heuristic

    def __call__(self, x):
        return self._chain[0](x)

    def derivative(self, k=1):
        if k == 0:
            return self
        if k > self.max_derivative_order:
            raise UnsupportedOrderError(
                f"potential '{self.name}' has derivatives to order "
                f"{self.max_derivative_order}")
        return Potential(f"{self.name}'", self._chain[k:], self.heuristic)


def constant_potential(c: float) -> Potential:
    cc = float(c)
    zero = lambda x: 0.0 * np.asarray(x, dtype=float) if np.ndim(x) else 0.0
    return Potential(f"const({c})",
                     [lambda x: cc + zero(x), zero, zero, zero, zero])


def quadratic_potential(a: float = 1.0) -> Potential:
    aa = float(a)
    zero = lambda x: 0.0 * np.asarray(x, dtype=float) if np.ndim(x) else 0.0
    return Potential(
        f"quadratic({a})",
        [lambda x: aa * np.asarray(x) ** 2 if np.ndim(x) else aa * x * x,
         lambda x: 2 * aa * np.asarray(x) if np.ndim(x) else 2 * aa * x,
         lambda x: 2 * aa + zero(x),
         zero, zero],
        heuristic=True,   # polynomial growth, not compactly supported
    )


def gaussian_well(depth: float = 1.0, width: float = 1.0, center: float = 0.0) -> Potential:
    from .testfn import make_gaussian

    g = make_gaussian(center, width)
    return Potential(
        f"gaussian_well({depth},{width},{center})",
        [lambda x, k=k: -float(depth) * g.derivative(k)(x) for k in range(6)],
        heuristic=True,   # rapidly decaying but not compactly supported
    )


@dataclass(frozen=True)
class ModelOperator:
    kind: str                       # free_line | free_space | dirichlet_interval | schrodinger_line
    dimension: int = 1
    potential: Optional[Potential] = None

    def __post_init__(self):
        if self.kind not in ("free_line", "free_space", "dirichlet_interval",
                             "schrodinger_line"):
            raise ParameterError(f"unknown operator kind {self.kind!r}")
        if self.kind == "free_space" and self.dimension < 1:
            raise ParameterError("free_space needs dimension >= 1")
        if self.kind in ("free_line", "dirichlet_interval", "schrodinger_line") \
                and self.dimension != 1:
            raise ParameterError(f"{self.kind} is one-dimensional")
        if self.kind == "schrodinger_line":
            if self.potential is None:
                raise ParameterError("schrodinger_line needs a potential")
            if self.potential.max_derivative_order < 2:
                raise ParameterError("potential must supply V, V', V''")


def free_line() -> ModelOperator:
    return ModelOperator("free_line")


def free_space(dimension: int) -> ModelOperator:
    return ModelOperator("free_space", dimension=dimension)


def dirichlet_interval() -> ModelOperator:
    """-d2/dx2 with Dirichlet conditions on (0, pi)."""
    return ModelOperator("dirichlet_interval")


def schrodinger_line(potential: Potential) -> ModelOperator:
    return ModelOperator("schrodinger_line", potential=potential)


_POTENTIAL_FORMS = {
    "constant": (constant_potential, ("c",)),
    "quadratic": (quadratic_potential, ("a",)),
    "gaussian_well": (gaussian_well, ("depth", "width", "center")),
}


def from_config(config: dict) -> ModelOperator:
    """Build an operator from a kind + parameters mapping.

    Examples: {"kind": "free_space", "dimension": 3} or
    {"kind": "schrodinger_line", "potential": {"form": "constant", "c": 2.0}}.
    """
    cfg = dict(config)
    kind = cfg.pop("kind", None)
    if kind is None:
        raise ParameterError("operator config needs a 'kind'")
    if kind == "free_line":
        return free_line()
    if kind == "free_space":
        return free_space(int(cfg.pop("dimension", 1)))
    if kind == "dirichlet_interval":
        return dirichlet_interval()
    if kind == "schrodinger_line":
        pot_cfg = dict(cfg.pop("potential", {}))
        form = pot_cfg.pop("form", None)
        if form not in _POTENTIAL_FORMS:
            raise ParameterError(
                f"unknown potential form {form!r}; known: "
                f"{', '.join(_POTENTIAL_FORMS)}")
        builder, keys = _POTENTIAL_FORMS[form]
        kwargs = {key: float(pot_cfg.pop(key)) for key in list(pot_cfg)}
        if any(key not in keys for key in kwargs):
            raise ParameterError(f"potential {form!r} accepts {keys}")
        return schrodinger_line(builder(**kwargs))
    raise ParameterError(f"unknown operator kind {kind!r}")


# -------------------------------------------------------------- eigendata

@dataclass(frozen=True)
class EigenPair:
    eigenvalue: float
    eigenfunction: Callable
    index: int


def dirichlet_eigendata(n: int) -> EigenPair:
    """n-th Dirichlet eigenpair on (0, pi): eigenvalue n^2, sqrt(2/pi) sin(nx)."""
    if n < 1 or int(n) != n:
        raise ParameterError("index n must be an integer >= 1")
    n = int(n)
    amp = math.sqrt(2.0 / math.pi)

    def psi(x):
        return amp * np.sin(n * np.asarray(x, dtype=float)) if np.ndim(x) \
            else amp * math.sin(n * x)

    return EigenPair(eigenvalue=float(n * n), eigenfunction=psi, index=n)


# ------------------------------------------------------------ WKB table

@dataclass(frozen=True)
class WkbTable:
    """Spectral-density coefficients rho_n^{jk}, j,k in {0,1}, n in {0,1,2}.

    dmu^{jk} ~ (1/pi) sum_n rho_n^{jk} omega^{2 dj1 dk1 - 2n} domega with
    lambda = omega^2. Truncated at n = 2; higher orders are out of scope.
    """
    base_point: float
    entries: dict
    heuristic: bool = False

    def rho(self, n: int, j: int, k: int) -> float:
        return self.entries[(n, j, k)]

    def density_series(self, j: int, k: int, omega: float) -> float:
        """(1/pi) sum_{n<=2} rho_n^{jk} omega^{2 dj1 dk1 - 2n}."""
        lead = 2 if (j == 1 and k == 1) else 0
        return sum(self.entries[(n, j, k)] * omega ** (lead - 2 * n)
                   for n in range(3)) / math.pi


def wkb_coefficients(V: Potential, x0: float) -> WkbTable:
    """Fill the WKB coefficient table through n = 2 at base point x0.

    Needs V, V', V'' (and V''' for the mixed n = 2 entry).
    """
    if V.max_derivative_order < 3:
        raise UnsupportedOrderError("wkb_coefficients needs V''' for rho_2^{01}")
    v = float(V(x0))
    v1 = float(V.derivative(1)(x0))
    v2 = float(V.derivative(2)(x0))
    v3 = float(V.derivative(3)(x0))

    rho00 = {0: 1.0, 1: 0.5 * v, 2: 0.125 * (-v2 + 3.0 * v * v)}
    rho11 = {0: 1.0, 1: -0.5 * v, 2: 0.125 * (v2 - 3.0 * v * v)}
    # rho_n^{10} = rho_n^{01} = (1/2) d/dx0 rho_n^{00}
    rho01 = {0: 0.0, 1: 0.25 * v1, 2: 0.0625 * (-v3 + 6.0 * v * v1)}

    entries = {}
    for n in range(3):
        entries[(n, 0, 0)] = rho00[n]
        entries[(n, 1, 1)] = rho11[n]
        entries[(n, 0, 1)] = rho01[n]
        entries[(n, 1, 0)] = rho01[n]
    return WkbTable(base_point=float(x0), entries=entries, heuristic=V.heuristic)


# --------------------------------------------------------- powers of H

def apply_H_power(op: ModelOperator, n: int, phi: TestFunction) -> TestFunction:
    """H^n phi by repeated application; H phi = -phi'' (+ V phi for Schrodinger)."""
    if n < 0 or int(n) != n:
        raise ParameterError("power n must be a nonnegative integer")
    if op.kind == "free_space" and op.dimension != 1:
        raise ParameterError("apply_H_power supports one-dimensional operators")
    if op.kind not in ("free_line", "dirichlet_interval", "schrodinger_line",
                       "free_space"):
        raise ParameterError(f"unsupported kind {op.kind}")
    out = phi
    for _ in range(int(n)):
        minus_second = out.derivative(2) * (-1.0)
        if op.kind == "schrodinger_line":
            vt = _potential_as_testfunction(op.potential)
            out = minus_second + (vt * out)
        else:
            out = minus_second
    return out


def _potential_as_testfunction(V: Potential) -> TestFunction:
    return from_callable(
        V,
        derivatives=[V.derivative(k) for k in range(1, V.max_derivative_order + 1)],
        decays=False,
    )
