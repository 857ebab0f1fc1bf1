"""Second-order analysis of f(A, B) = a sin b over the region R:
analytic partials vs finite differences, the P/Q/R algebra, the reduced
determinant, and the negative-definiteness scan."""

import numpy as np
import pytest

from mwkit import (f_value, gradient, hessian_analytic, in_region,
                   intermediate_ab, pqr, reduced_det_positive, region_scan)
from mwkit.hessian import reduced_det_value


def region_points(rng, n, margin=0.05):
    """Random points of R with a safety margin from every boundary."""
    out = []
    while len(out) < n:
        A, B = rng.uniform(margin, np.pi / 2 - margin, size=2)
        if np.cos(A) ** 2 + np.cos(B) ** 2 < 1.0 - margin:
            out.append((A, B))
    return out


def fd_gradient(A, B, h=1e-5):
    return ((f_value(A + h, B) - f_value(A - h, B)) / (2 * h),
            (f_value(A, B + h) - f_value(A, B - h)) / (2 * h))


def fd_hessian(A, B, h=1e-4):
    """Central second differences with one Richardson step."""
    def entries(s):
        fAA = (f_value(A + s, B) - 2 * f_value(A, B) + f_value(A - s, B)) / s ** 2
        fBB = (f_value(A, B + s) - 2 * f_value(A, B) + f_value(A, B - s)) / s ** 2
        fAB = (f_value(A + s, B + s) - f_value(A + s, B - s)
               - f_value(A - s, B + s) + f_value(A - s, B - s)) / (4 * s ** 2)
        return np.array([fAA, fAB, fBB])
    e1, e2 = entries(h), entries(h / 2)
    return (4 * e2 - e1) / 3


class TestRegion:
    def test_membership(self):
        assert in_region(np.pi / 3, np.pi / 3)
        assert not in_region(np.pi / 4, np.pi / 4)  # cos^2+cos^2 = 1
        assert not in_region(2.0, 0.5)

    def test_outside_raises(self):
        with pytest.raises(ValueError):
            f_value(0.1, 0.1)


class TestIntermediate:
    def test_octant(self):
        a, b = intermediate_ab(np.pi / 2, np.pi / 2)
        assert abs(a - np.pi / 2) < 1e-12 and abs(b - np.pi / 2) < 1e-12

    def test_symmetric(self):
        a, b = intermediate_ab(np.pi / 3, np.pi / 3)
        assert abs(a - np.arccos(1.0 / np.sqrt(3.0))) < 1e-12
        assert abs(a - b) < 1e-12

    def test_napier_roundtrip(self):
        rng = np.random.default_rng(0)
        for A, B in region_points(rng, 100):
            a, b = intermediate_ab(A, B)
            assert abs(np.cos(A) - np.cos(a) * np.sin(B)) < 1e-12
            assert abs(np.cos(B) - np.cos(b) * np.sin(A)) < 1e-12


class TestFValue:
    def test_octant(self):
        assert abs(f_value(np.pi / 2, np.pi / 2) - np.pi / 2) < 1e-12

    def test_symmetric_point(self):
        expected = np.arccos(1.0 / np.sqrt(3.0)) * np.sqrt(2.0 / 3.0)
        assert abs(f_value(np.pi / 3, np.pi / 3) - expected) < 1e-12

    def test_near_octant_finite(self):
        v = f_value(np.pi / 2 - 1e-3, np.pi / 2 - 1e-3)
        assert abs(v - np.pi / 2) < 0.01

    def test_swap_symmetry(self):
        # f is built from (a, b); swapping (A, B) swaps (a, b)
        A, B = 1.2, 1.4
        a, b = intermediate_ab(A, B)
        a2, b2 = intermediate_ab(B, A)
        assert abs(a - b2) < 1e-12 and abs(b - a2) < 1e-12


class TestGradient:
    def test_octant(self):
        fA, fB = gradient(np.pi / 2, np.pi / 2)
        assert abs(fA - 1.0) < 1e-12
        assert abs(fB) < 1e-12

    def test_vs_finite_differences(self):
        rng = np.random.default_rng(1)
        worst = 0.0
        for A, B in region_points(rng, 200):
            fA, fB = gradient(A, B)
            gA, gB = fd_gradient(A, B)
            worst = max(worst, abs(fA - gA), abs(fB - gB))
        assert worst < 1e-6


class TestHessian:
    def test_vs_finite_differences(self):
        rng = np.random.default_rng(2)
        worst = 0.0
        for A, B in region_points(rng, 200):
            rep = hessian_analytic(A, B)
            fd = fd_hessian(A, B)
            worst = max(worst, np.max(np.abs(np.array([rep.f_AA, rep.f_AB, rep.f_BB]) - fd)))
        assert worst < 1e-4

    def test_negative_definite_sample(self):
        rep = hessian_analytic(np.pi / 3, np.pi / 3)
        assert rep.negative_definite
        assert rep.f_AA < 0 and rep.det_hess > 0

    def test_det_consistency(self):
        rep = hessian_analytic(1.1, 1.3)
        assert abs(rep.det_hess - (rep.f_AA * rep.f_BB - rep.f_AB ** 2)) < 1e-12

    def test_pqr_representation(self):
        # sin^2 a/(cos^2 a cos^2 b) detHess = P + Q (a cos a/sin a) + R (a/sin a)^2
        rng = np.random.default_rng(3)
        for A, B in region_points(rng, 100):
            rep = hessian_analytic(A, B)
            a, b = rep.a, rep.b
            lhs = np.sin(a) ** 2 / (np.cos(a) ** 2 * np.cos(b) ** 2) * rep.det_hess
            rhs = (rep.P + rep.Q * a * np.cos(a) / np.sin(a)
                   + rep.R_val * (a / np.sin(a)) ** 2)
            assert abs(lhs - rhs) < 1e-9

    def test_reduced_det_identity(self):
        # sin^2 A/(cos^2 a cos^2 b) detHess = a^2 tan^2 a - (1 - a cot a)^2
        rng = np.random.default_rng(4)
        for A, B in region_points(rng, 100):
            rep = hessian_analytic(A, B)
            a, b = rep.a, rep.b
            lhs = np.sin(A) ** 2 / (np.cos(a) ** 2 * np.cos(b) ** 2) * rep.det_hess
            assert abs(lhs - rep.reduced_det) < 1e-9

    def test_octant_line_limits(self):
        rep = hessian_analytic(np.pi / 2, 1.2)
        assert rep.P == -1.0 and rep.Q == 2.0
        assert np.isnan(rep.R_val)


class TestPQR:
    def test_at_origin_limits(self):
        P, Q, R = pqr(0.5, 0.5)
        u = (1 - 0.25) * (1 - 0.25)
        assert abs(P - (u - 1)) < 1e-15
        assert abs(Q - 2 * (1 - u)) < 1e-15

    def test_y_one(self):
        P, Q, _ = pqr(0.3, 1.0)
        assert abs(P + 1.0) < 1e-15
        assert abs(Q - 2.0) < 1e-15

    def test_raw_vs_simplified(self):
        rng = np.random.default_rng(5)
        x = rng.uniform(0.05, 0.95, 10_000)
        y = rng.uniform(0.05, 0.999, 10_000)
        pqr(x, y, check_raw=True)  # raises AssertionError beyond 1e-12

    def test_domain(self):
        with pytest.raises(ValueError):
            pqr(1.0, 0.5)


class TestReducedDet:
    def test_quarter(self):
        rep = reduced_det_positive(np.pi / 4)
        assert rep.positive
        assert abs(rep.value - ((np.pi / 4) ** 2 - (1 - np.pi / 4) ** 2)) < 1e-12

    def test_chain_factor_signs(self):
        for a in np.linspace(1e-3, np.pi / 2 - 1e-3, 50):
            rep = reduced_det_positive(a)
            assert rep.factor_sin < 0  # 1 - 2a/sin 2a
            assert rep.factor_tan > 0  # 1 - 2a/tan 2a
            assert rep.positive

    def test_near_zero(self):
        assert reduced_det_positive(1e-3).value > 0

    def test_near_quarter_circle(self):
        assert reduced_det_positive(np.pi / 2 - 1e-6).positive

    def test_grid_positive(self):
        a = np.linspace(1e-4, np.pi / 2 - 1e-4, 10_000)
        assert np.all(reduced_det_value(a) > 0)

    def test_domain(self):
        with pytest.raises(ValueError):
            reduced_det_positive(0.0)
        with pytest.raises(ValueError):
            reduced_det_positive(np.pi / 2)


class TestRegionScan:
    def test_small_scan_clean(self):
        rep = region_scan(50)
        assert rep.ok
        assert rep.min_det_hess > 0
        assert rep.min_neg_f_AA > 0
        assert rep.max_fd_gap < 1e-5

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            region_scan(1)

    def test_csv_roundtrip(self, tmp_path):
        rep = region_scan(5)
        out = tmp_path / "scan.csv"
        rep.to_csv(out)
        data = np.genfromtxt(out, delimiter=",", names=True)
        assert len(data) == rep.n_points
        assert abs(data["f_AA"][0] - rep.f_AA[0]) < 1e-15
