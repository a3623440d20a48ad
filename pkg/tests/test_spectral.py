"""Spectral densities, staircases, smears, and the Cesaro-averaged checks."""

import math

import numpy as np
import pytest

import spectral_cesaro as sc
from spectral_cesaro.errors import DomainError, ParameterError, SingularityError


class TestFreeLineDensity:
    def test_closed_form_substitution(self):
        # x - y = 1 at lam = pi^2: cos(pi)/(2 pi^2)
        v = sc.density_free_line(1.0, 0.0, math.pi**2)
        assert abs(v - (-1.0 / (2 * math.pi**2))) < 1e-15

    def test_heaviside_cutoff(self):
        assert sc.density_free_line(0.3, 0.9, -5.0) == 0.0

    def test_diagonal(self):
        assert abs(sc.density_free_line(0.4, 0.4, 4.0) - 1 / (4 * math.pi)) < 1e-16

    def test_singular_origin(self):
        with pytest.raises(SingularityError):
            sc.density_free_line(0.0, 1.0, 0.0)


class TestFreeSpaceDensity:
    def test_d1_reduces_to_free_line(self):
        """20-point (r, lam) grid agreement to 1e-12."""
        rng = np.random.default_rng(5)
        for _ in range(20):
            r = float(rng.uniform(0.1, 3.0))
            lam = float(rng.uniform(0.5, 60.0))
            a = sc.density_free_space(1, [0.0], [r], lam)
            b = sc.density_free_line(0.0, r, lam)
            assert abs(a - b) < 1e-12

    def test_d3_sine_form(self):
        r, lam = 1.0, 7.0
        v = sc.density_free_space(3, [0, 0, 0], [r, 0, 0], lam)
        assert abs(v - math.sin(math.sqrt(lam) * r) / (4 * math.pi**2 * r)) < 1e-14

    def test_d2_diagonal_limit(self):
        assert abs(sc.density_free_space(2, [0, 0], [0, 0], 9.0)
                   - 1 / (4 * math.pi)) < 1e-15

    def test_negative_lambda(self):
        assert sc.density_free_space(2, [0, 0], [1, 0], -1.0) == 0.0


class TestStaircase:
    def test_three_terms(self):
        v = sc.staircase_interval(math.pi / 2, math.pi / 2, 10.0)
        assert abs(v - 4.0 / math.pi) < 1e-14

    def test_below_first_eigenvalue(self):
        assert sc.staircase_interval(0.7, 2.1, 0.5) == 0.0

    def test_single_term(self):
        v = sc.staircase_interval(math.pi / 2, math.pi / 4, 2.0)
        assert abs(v - math.sqrt(2) / math.pi) < 1e-15

    def test_domain_validation(self):
        with pytest.raises(DomainError):
            sc.staircase_interval(-0.1, 1.0, 5.0)

    def test_nondecreasing_with_jumps_at_squares(self):
        """Diagonal staircase is nondecreasing, jumping exactly at n^2."""
        x = 1.1
        lams = np.linspace(0.2, 30.0, 800)
        vals = [sc.staircase_interval(x, x, lam) for lam in lams]
        diffs = np.diff(vals)
        assert np.all(diffs >= -1e-12)
        for i, d in enumerate(diffs):
            if d > 1e-12:
                a, b = lams[i], lams[i + 1]
                assert any(a < n * n <= b for n in range(1, 7)), (a, b)


class TestSmear:
    def test_theta_limit_diagonal(self):
        """x = y, exp profile: value -> 1/(2 sqrt(pi eps)) as eps -> 0."""
        phi = sc.make_exp_decay(1.0)
        eps = 1e-4
        v = sc.density_smear_interval(1.0, 1.0, phi, eps)
        want = 1.0 / (2.0 * math.sqrt(math.pi * eps))
        assert abs(v / want - 1.0) < 1e-2

    def test_off_diagonal_rapid_decay(self):
        """Off-diagonal smear decays faster than eps^3 (log-log slope test)."""
        phi = sc.make_exp_decay(1.0)
        eps = np.geomspace(3e-4, 3e-2, 8)
        vals = [abs(sc.density_smear_interval(1.0, 2.0, phi, float(e))) for e in eps]
        slope = np.linalg.lstsq(
            np.vstack([np.log(eps), np.ones(len(eps))]).T,
            np.log(np.maximum(vals, 1e-300)), rcond=None)[0][0]
        assert slope >= 3.0, slope

    def test_large_eps_first_term_dominates(self):
        phi = sc.make_exp_decay(1.0)
        x, y = 0.7, 1.9
        v = sc.density_smear_interval(x, y, phi, 10.0)
        direct = sum((2 / math.pi) * math.sin(n * x) * math.sin(n * y)
                     * math.exp(-10.0 * n * n) for n in range(1, 6))
        assert abs(v - direct) < 1e-15

    def test_bump_window_counts_eigenvalues(self):
        """A bump window weights exactly the eigenvalues inside its support."""
        phi = sc.make_bump(2.0, 30.0)
        x, y, eps = 0.9, 1.4, 1.0
        v = sc.density_smear_interval(x, y, phi, eps)
        ns = [n for n in range(1, 40) if 2.0 < n * n < 30.0]
        direct = math.fsum((2 / math.pi) * math.sin(n * x) * math.sin(n * y)
                           * phi(eps * n * n) for n in ns)
        assert abs(v - direct) < 1e-15

    def test_nondecaying_rejected(self):
        bad = sc.from_callable(lambda u: 1.0, decays=False)
        with pytest.raises(ParameterError):
            sc.density_smear_interval(1.0, 1.0, bad, 0.1)


class TestDiagonalWeylCheck:
    def test_riesz2_matches_weyl(self):
        rep = sc.diagonal_weyl_check(1.0, 2, [1e4], tol=1e-2)
        assert rep.verdict == "holds"
        assert rep.residual < 1e-2

    def test_interior_x_independence(self):
        r1 = sc.diagonal_weyl_check(1.0, 2, [1e4])
        r2 = sc.diagonal_weyl_check(math.pi / 2, 2, [1e4])
        assert r1.verdict == r2.verdict == "holds"

    def test_no_averaging_fails(self):
        """k = 0: the raw staircase never settles to the smooth density."""
        rep = sc.diagonal_weyl_check(1.0, 0, list(np.geomspace(1e3, 1e4, 12)),
                                     tol=1e-2)
        assert rep.verdict == "fails"

    def test_weyl_law_riesz2_at_1e6(self):
        """staircase(x,x,lam) * pi / sqrt(lam) -> 1 in Riesz-2 mean, 1% at 1e6."""
        atomic = sc.interval_measure(1.0)
        smooth = sc.weyl_density_measure()
        a = sc.riesz_mean(atomic, 2, 1e6)
        s = sc.riesz_mean(smooth, 2, 1e6)
        assert abs(a / s - 1.0) < 1e-2


class TestOffdiagonalEquivalence:
    def test_interior_holds(self):
        rep = sc.offdiagonal_equivalence_check(
            1.0, 2.0, 2, np.geomspace(1e2, 1e6, 24))
        assert rep.verdict == "holds"
        assert rep.details["cancellation_ratio"] < 0.1

    def test_boundary_fails(self):
        rep = sc.offdiagonal_equivalence_check(
            1.0, 0.0, 2, np.geomspace(1e2, 1e6, 24))
        assert rep.verdict == "fails"
        assert abs(rep.details["cancellation_ratio"] - 1.0) < 1e-9

    def test_near_diagonal_inconclusive(self):
        rep = sc.offdiagonal_equivalence_check(
            1.0, 1.0 + 1e-9, 2, np.geomspace(1e2, 1e6, 24))
        assert rep.verdict == "inconclusive"

    def test_diagonal_redirects(self):
        with pytest.raises(ParameterError):
            sc.offdiagonal_equivalence_check(1.0, 1.0, 2, [1e3, 1e4])
