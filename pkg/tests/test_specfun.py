"""Tests for the Si / Ein special functions."""

import numpy as np
import pytest
from scipy.special import exp1, sici

from oracles import quad_ein, quad_exp_sin, quad_si
from swiftpricer import ein, exp_sin_integral, si

SI_PI = 1.8519370519824662  # adaptive quadrature of sin(t)/t on [0, pi]
EIN_ONE = 0.7965995992970531  # entire series sum_{n>=1} (-1)^(n+1)/(n n!)


class TestSi:
    def test_zero(self):
        assert si(0.0) == 0.0

    def test_si_pi(self):
        assert si(np.pi) == pytest.approx(SI_PI, abs=1e-14)
        assert quad_si(np.pi) == pytest.approx(SI_PI, abs=1e-13)

    @pytest.mark.parametrize("x", [5.0, 0.3, 6.0, 17.2, 120.0])
    def test_odd(self, x):
        assert si(-x) == -si(x)

    def test_against_scipy_grid(self):
        xs = np.concatenate([np.linspace(0.01, 60.0, 400),
                             [5.999, 6.0, 6.001, 39.99, 40.01, 1e3, 1e5]])
        for x in xs:
            assert si(float(x)) == pytest.approx(float(sici(x)[0]), abs=1e-14)

    def test_asymptotic_envelope(self):
        for x in [10.0, 25.0, 80.0, 300.0, 1e4]:
            assert abs(si(x) - np.pi / 2) <= 2.0 / x

    def test_against_quadrature(self):
        for x in [0.7, 3.1, 9.4, 33.0]:
            assert si(x) == pytest.approx(quad_si(x), abs=2e-14)


class TestEin:
    def test_zero(self):
        assert ein(0.0) == 0.0

    def test_one(self):
        v = ein(1.0)
        assert v.imag == 0.0
        assert v.real == pytest.approx(EIN_ONE, abs=1e-15)

    def test_conjugate_symmetry(self):
        rng = np.random.default_rng(31)
        for _ in range(200):
            z = complex(rng.uniform(-40, 40), rng.uniform(-400, 400))
            v, vc = ein(z), ein(z.conjugate())
            assert vc == v.conjugate()  # exact by construction

    def test_against_quadrature_moderate(self):
        pts = [1 + 1j, -4 + 2j, 3 - 9j, -12 + 1j, 0.5 + 30j, -20 + 3j,
               25 + 0.1j, -35 + 8j, 14 - 50j]
        for z in pts:
            ref = quad_ein(complex(z))
            assert abs(ein(z) - ref) <= 1e-12 * max(abs(ref), 1e-6)

    def test_against_scipy_box(self):
        # gamma + log z + E1(z) via scipy's independent complex E1
        rng = np.random.default_rng(5)
        for _ in range(300):
            z = complex(rng.uniform(-50, 50), rng.uniform(-5000, 5000))
            ref = np.euler_gamma + np.log(z) + exp1(z)
            assert abs(ein(z) - ref) <= 1e-13 * abs(ref)

    def test_crossover_continuity(self):
        # points straddling the |z| = 10 and |z| = 40 algorithm switches
        for r, theta in [(10.0, 0.3), (10.0, 2.0), (40.0, 1.2), (40.0, 2.8)]:
            for eps in (-1e-9, 1e-9):
                z = (r + eps) * complex(np.cos(theta), np.sin(theta))
                ref = quad_ein(z)
                assert abs(ein(z) - ref) <= 1e-12 * max(abs(ref), 1e-6)


class TestExpSinIntegral:
    def test_reduces_to_si(self):
        assert exp_sin_integral(0.0, np.pi) == pytest.approx(SI_PI, abs=1e-14)

    def test_zero_sine(self):
        assert exp_sin_integral(1.0, 0.0) == 0.0

    def test_small_case_vs_quadrature(self):
        ref = quad_exp_sin(1.0, 2.0)
        assert exp_sin_integral(1.0, 2.0) == pytest.approx(ref, abs=1e-12)

    def test_identity_random_sweep(self):
        rng = np.random.default_rng(42)
        for _ in range(1000):
            a = rng.uniform(-20, 20)
            b = rng.uniform(-200, 200)
            ref = quad_exp_sin(a, b)
            assert abs(exp_sin_integral(a, b) - ref) <= 1e-11 * (1 + abs(ref))
