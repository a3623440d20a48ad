"""Spectral measures: construction, CSV round trip, Riesz means."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import spectral_cesaro as sc
from spectral_cesaro.errors import DataError, DomainError, ParameterError
from spectral_cesaro.measures import SpectralMeasure


def counting_measure():
    return SpectralMeasure.from_generator(lambda n, B: (B.mpf(n) * B.mpf(n), B.mpf(1)))


class TestConstruction:
    def test_positions_must_increase(self):
        with pytest.raises(ParameterError):
            SpectralMeasure.from_atoms([1.0, 1.0], [1.0, 1.0])
        with pytest.raises(ParameterError):
            SpectralMeasure.from_atoms([2.0, 1.0], [1.0, 1.0])

    def test_empty_rejected(self):
        with pytest.raises(DataError):
            SpectralMeasure.from_atoms([], [])


class TestRieszMean:
    def test_counting_k0_is_staircase(self):
        assert sc.riesz_mean(counting_measure(), 0, 10.0) == 3.0

    def test_counting_k1_example(self):
        # (1-1/10) + (1-4/10) + (1-9/10) = 1.6
        assert abs(sc.riesz_mean(counting_measure(), 1, 10.0) - 1.6) < 1e-15

    def test_first_atom_weight(self):
        m = SpectralMeasure.from_atoms([2.0, 5.0], [0.7, 1.3])
        assert sc.riesz_mean(m, 0, 2.5) == 0.7

    def test_atom_exactly_at_lambda_excluded(self):
        m = SpectralMeasure.from_atoms([2.0, 5.0], [0.7, 1.3])
        assert sc.riesz_mean(m, 0, 5.0) == 0.7

    def test_domain_error_below_support(self):
        with pytest.raises(DomainError):
            sc.riesz_mean(counting_measure(), 0, -1.0)

    def test_mp_backend_matches_float(self):
        m = counting_measure()
        a = sc.riesz_mean(m, 3, 123.4)
        b = float(sc.riesz_mean(m, 3, 123.4, dps=30))
        assert abs(a - b) < 1e-12

    def test_density_part_by_quadrature(self):
        # density 1 on (0, lam): riesz k = int_0^lam (1-mu/lam)^k dmu = lam/(k+1)
        m = SpectralMeasure.from_density(lambda mu: 1.0)
        for k in (0, 1, 3):
            assert abs(sc.riesz_mean(m, k, 7.0) - 7.0 / (k + 1)) < 1e-9


def test_absolutely_convergent_consistency():
    """Riesz means of a summable measure tend to the total mass, any order.

    The leading deviation is k <position> / lam, so the 1e-6 relative check
    at lam = 1e6 needs a measure whose mass sits near the origin.
    """
    m = SpectralMeasure.from_generator(
        lambda n, B: (B.mpf(n) / 100, B.mpf(2) ** (-n)))
    for k in range(5):
        val = sc.riesz_mean(m, k, 1e6)
        assert abs(val - 1.0) < 1e-6, f"k={k}: {val}"


@settings(max_examples=25, deadline=None)
@given(
    weights1=st.lists(st.floats(-5, 5, allow_nan=False), min_size=3, max_size=6),
    weights2=st.lists(st.floats(-5, 5, allow_nan=False), min_size=3, max_size=6),
    a=st.floats(-3, 3, allow_nan=False),
    b=st.floats(-3, 3, allow_nan=False),
    k=st.integers(0, 3),
)
def test_riesz_linearity(weights1, weights2, a, b, k):
    n = min(len(weights1), len(weights2))
    pos = [float(j) for j in range(1, n + 1)]
    w1, w2 = weights1[:n], weights2[:n]
    m1 = SpectralMeasure.from_atoms(pos, w1)
    m2 = SpectralMeasure.from_atoms(pos, w2)
    mc = SpectralMeasure.from_atoms(pos, [a * u + b * v for u, v in zip(w1, w2)])
    lam = n + 0.5
    lhs = sc.riesz_mean(mc, k, lam)
    rhs = a * sc.riesz_mean(m1, k, lam) + b * sc.riesz_mean(m2, k, lam)
    assert abs(lhs - rhs) < 1e-10 * (1 + abs(lhs))


class TestCsvRoundTrip:
    def test_real_weights(self, tmp_path):
        m = SpectralMeasure.from_atoms([1.0, 4.0, 9.0], [0.5, -0.25, 2.0])
        path = tmp_path / "m.csv"
        m.save_csv(path, lam_max=100.0)
        header = path.read_text().splitlines()[0]
        assert header == "lambda,weight_re,weight_im"
        m2 = SpectralMeasure.load_csv(path)
        for k in (0, 2):
            assert sc.riesz_mean(m, k, 50.0) == sc.riesz_mean(m2, k, 50.0)

    def test_complex_weights(self, tmp_path):
        m = SpectralMeasure.from_atoms([1.0, 2.0], [1 + 2j, -0.5j])
        path = tmp_path / "m.csv"
        m.save_csv(path, lam_max=10.0)
        m2 = SpectralMeasure.load_csv(path)
        v = sc.riesz_mean(m2, 1, 5.0)
        assert abs(v - sc.riesz_mean(m, 1, 5.0)) < 1e-15

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(DataError):
            SpectralMeasure.load_csv(path)
