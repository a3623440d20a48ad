"""Spectral (Stieltjes) measures: atoms, continuous densities, Riesz sums.

A :class:`SpectralMeasure` may hold explicit atoms, an atom generator
(deterministic in the index, so the atom list can be extended to any
spectral cutoff), and/or a continuous density. Riesz-mean evaluation has a
float backend (exact-rounded accumulation via ``math.fsum``) and an mpmath
backend for the cancellation-dominated regimes where doubles are not enough.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import mpmath as mp
import numpy as np

from .errors import DataError, DomainError, ParameterError
from .quadrature import integrate

__all__ = ["SpectralMeasure", "riesz_mean"]


class _FloatBackend:
    """math-like namespace used by atom functions on the float path."""
    pi = math.pi
    sin = staticmethod(math.sin)
    cos = staticmethod(math.cos)
    exp = staticmethod(math.exp)
    sqrt = staticmethod(math.sqrt)

    @staticmethod
    def mpf(x):
        return float(x)


@dataclass
class SpectralMeasure:
    """Atomic and/or continuous measure in the spectral variable.

    atom_fn(n, B) -> (position, weight) defines atom n >= 1 using the numeric
    backend B (float shim or mpmath); positions must be strictly increasing
    in n. ``density`` is dm/dlambda for the continuous part. ``density_riesz``
    optionally supplies a closed form for the continuous Riesz integral,
    called as density_riesz(k, lam, B).
    """

    atom_fn: Optional[Callable] = None
    n_atoms: Optional[int] = None           # None = extendable to any cutoff
    density: Optional[Callable] = None
    density_riesz: Optional[Callable] = None
    support_lower_bound: float = 0.0
    _cache: dict = field(default_factory=dict, repr=False)

    # ------------------------------------------------------------- builders
    @classmethod
    def from_atoms(cls, positions, weights):
        pos = [float(p) for p in positions]
        wts = list(weights)
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise ParameterError("atom positions must be strictly increasing")
        if not pos:
            raise DataError("measure needs at least one atom")

        def atom_fn(n, B):
            return pos[n - 1], wts[n - 1]

        lb = min(0.0, pos[0])
        return cls(atom_fn=atom_fn, n_atoms=len(pos), support_lower_bound=lb)

    @classmethod
    def from_generator(cls, atom_fn, support_lower_bound=0.0, n_atoms=None):
        return cls(atom_fn=atom_fn, n_atoms=n_atoms,
                   support_lower_bound=support_lower_bound)

    @classmethod
    def from_density(cls, density, support_lower_bound=0.0, density_riesz=None):
        return cls(density=density, density_riesz=density_riesz,
                   support_lower_bound=support_lower_bound)

    # ------------------------------------------------------------ accessors
    def atoms_below(self, lam, backend=None):
        """All atoms with position strictly below lam, in ascending order."""
        if self.atom_fn is None:
            return []
        B = backend or _FloatBackend
        out = []
        n = 1
        while self.n_atoms is None or n <= self.n_atoms:
            pos, w = self.atom_fn(n, B)
            if float(pos) >= lam:
                break
            out.append((pos, w))
            n += 1
            if n > 50_000_000:
                raise DataError("atom enumeration exceeded 5e7 entries")
        return out

    def atom_arrays(self, lam):
        """Float arrays (positions, weights) of atoms below lam (cached)."""
        key = float(lam)
        hit = self._cache.get("atoms")
        if hit is not None and hit[0] >= key:
            pos, wts = hit[1], hit[2]
            m = pos < key
            return pos[m], wts[m]
        pairs = self.atoms_below(key)
        pos = np.array([float(p) for p, _ in pairs])
        wts = np.array([complex(w) for _, w in pairs])
        if np.allclose(wts.imag, 0.0):
            wts = wts.real
        self._cache["atoms"] = (key, pos, wts)
        return pos, wts

    # ------------------------------------------------------------------ CSV
    def save_csv(self, path, lam_max):
        """Write atoms below lam_max as ``lambda,weight_re,weight_im`` rows."""
        pos, wts = self.atom_arrays(lam_max)
        wts = np.asarray(wts, dtype=complex)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["lambda", "weight_re", "weight_im"])
            for p, wt in zip(pos, wts):
                w.writerow([repr(float(p)), repr(float(wt.real)), repr(float(wt.imag))])

    @classmethod
    def load_csv(cls, path):
        with open(path, newline="") as fh:
            r = csv.reader(fh)
            header = next(r)
            if [h.strip() for h in header] != ["lambda", "weight_re", "weight_im"]:
                raise DataError(f"unexpected CSV header {header!r}")
            pos, wts = [], []
            for row in r:
                pos.append(float(row[0]))
                wts.append(float(row[1]) + 1j * float(row[2]))
        wts = [w.real if w.imag == 0 else w for w in wts]
        return cls.from_atoms(pos, wts)


def riesz_mean(measure: SpectralMeasure, k: int, lam: float, dps: Optional[int] = None):
    """Riesz mean of order k at lam: sum/integral of (1 - mu/lam)**k dm(mu).

    Atoms exactly at lam are excluded (strict inequality). ``dps`` selects the
    mpmath backend with that many digits; default is the float backend with
    exactly-rounded accumulation.
    """
    if k < 0 or int(k) != k:
        raise ParameterError("Riesz order k must be a nonnegative integer")
    if lam <= measure.support_lower_bound:
        raise DomainError(
            f"lam={lam} must exceed the support lower bound "
            f"{measure.support_lower_bound}")

    if dps is None:
        total = 0.0 + 0.0j
        is_complex = False
        if measure.atom_fn is not None:
            pos, wts = measure.atom_arrays(lam)
            if len(pos):
                terms = wts * (1.0 - pos / lam) ** k
                if np.iscomplexobj(terms):
                    is_complex = True
                    total += complex(math.fsum(terms.real), math.fsum(terms.imag))
                else:
                    total += math.fsum(terms)
        if measure.density_riesz is not None:
            total += measure.density_riesz(k, lam, _FloatBackend)
        elif measure.density is not None:
            total += _density_riesz_quadrature(measure, k, lam)
        return complex(total) if is_complex or total.imag != 0 else total.real

    # mp backend
    with mp.workdps(dps):
        lam_mp = mp.mpf(lam)
        total = mp.mpf(0)
        if measure.atom_fn is not None:
            terms = []
            n = 1
            while measure.n_atoms is None or n <= measure.n_atoms:
                pos, w = measure.atom_fn(n, mp)
                if pos >= lam_mp:
                    break
                terms.append(w * (1 - pos / lam_mp) ** k)
                n += 1
            if terms:
                total += mp.fsum(terms)
        if measure.density_riesz is not None:
            total += measure.density_riesz(k, lam_mp, mp)
        elif measure.density is not None:
            total += mp.mpf(_density_riesz_quadrature(measure, k, lam))
        return total


def _density_riesz_quadrature(measure, k, lam):
    """Continuous part of the Riesz mean by quadrature.

    Substituting mu = lb + (lam-lb) v^2 keeps integrable mu^{-1/2}-type edge
    singularities smooth, at the cost of doubling the oscillation count for
    oscillatory densities (callers with hard oscillatory densities should
    supply ``density_riesz``).
    """
    lb = measure.support_lower_bound
    span = lam - lb

    def g(v):
        mu = lb + span * v * v
        return measure.density(mu) * (1.0 - mu / lam) ** k * 2.0 * span * v

    r = integrate(g, 0.0, 1.0, tol=1e-12, limit=800)
    return r.value
