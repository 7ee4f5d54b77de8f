"""Option pricing: assemble density and payoff coefficients, choose the
grid, and provide the independent reference pricer used for error columns.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .density import (CoefficientArray, DensityJob, density_filon,
                      density_mass, density_midpoint_fft,
                      density_trapezoidal_fft)
from .models import Cumulants, ModelSpec, char_fn, cumulants
from .payoff import PayoffJob, payoff_classic_si_ein, payoff_fft_euler_maclaurin, \
    payoff_forward_si_ein

DENSITY_STRATEGIES = ("midpoint", "trapezoidal", "filon")
PAYOFF_STRATEGIES = ("classic", "forward", "em_fft")


@dataclass(frozen=True)
class WaveletGrid:
    """The discretization: scale, coefficient range, resolutions, truncation."""

    m: int
    k1: int
    k2: int
    J: int
    N: int
    a: float
    b: float
    L: float | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if not self.k1 < self.k2:
            raise ValueError("need k1 < k2")
        if self.k2 - self.k1 > (1 << self.J):
            raise ValueError(f"k2-k1 = {self.k2 - self.k1} exceeds 2^J = {1 << self.J}")
        if not self.a < self.b:
            raise ValueError("need a < b")
        if self.N < 1 or (self.N & (self.N - 1)) != 0:
            raise ValueError("N must be a power of two")


@dataclass(frozen=True)
class PricingResult:
    price: float
    grid: WaveletGrid
    density_strategy: str
    payoff_strategy: str
    cf_evals: int
    elapsed: float
    reference_price: float | None = None
    abs_error: float | None = None

    def with_reference(self, reference: float) -> "PricingResult":
        return replace(self, reference_price=reference,
                       abs_error=self.price - reference)


class GridSelectionError(RuntimeError):
    pass


def truncation_interval(cum: Cumulants, L: float) -> tuple[float, float]:
    """[a, b] = c1 -+ L sqrt(c2 + sqrt|c4|), the cumulant truncation rule."""
    if not L > 0:
        raise ValueError("L must be > 0")
    half = L * np.sqrt(cum.c2 + np.sqrt(abs(cum.c4)))
    return float(cum.c1 - half), float(cum.c1 + half)


def select_scale(model: ModelSpec, tol: float, m_min: int = 1, m_max: int = 12) -> int:
    """Smallest m with |psi(2^m pi)| <= tol: the cf is then negligible
    beyond the scale's bandwidth and is never evaluated past 2^m pi."""
    if m_min < 1:
        raise ValueError("m_min must be >= 1")
    for m in range(m_min, m_max + 1):
        if abs(char_fn(model, 2.0**m * np.pi)) <= tol:
            return m
    raise GridSelectionError(
        f"no scale in [{m_min}, {m_max}] reaches |psi(2^m pi)| <= {tol} "
        f"(|psi(2^{m_max} pi)| = {abs(char_fn(model, 2.0**m_max * np.pi)):.3e})")


def select_k_range(coeffs: CoefficientArray, m: int, mass_tol: float) -> tuple[int, int]:
    """Smallest zero-centered doubling range [-2^p, 2^p) whose density mass
    2^{-m/2} sum c_{m,k} reaches 1 - mass_tol."""
    if not 0 < mass_tol < 1:
        raise ValueError("mass_tol must be in (0, 1)")
    target = 1.0 - mass_tol
    achieved = 0.0
    p = 0
    while True:
        k1, k2 = -(1 << p), 1 << p
        if k1 < coeffs.k1 or k2 > coeffs.k2:
            raise GridSelectionError(
                f"mass target 1-{mass_tol:g} unreachable on candidate range "
                f"[{coeffs.k1}, {coeffs.k2}): achieved mass {achieved:.12g}")
        lo, hi = k1 - coeffs.k1, k2 - coeffs.k1
        achieved = float(2.0 ** (-m / 2.0) * np.sum(coeffs.values[lo:hi]))
        if achieved >= target:
            return k1, k2
        p += 1


def _compute_density(model: ModelSpec, grid: WaveletGrid, strategy: str,
                     filon_tol: float = 1e-8):
    """Returns (CoefficientArray, cf_evals)."""
    if strategy == "midpoint":
        job = DensityJob(model, grid.m, grid.J, grid.k1, grid.k2)
        return density_midpoint_fft(job), 1 << (grid.J - 1)
    if strategy == "trapezoidal":
        job = DensityJob(model, grid.m, grid.J, grid.k1, grid.k2)
        return density_trapezoidal_fft(job), 1 << (grid.J - 1)
    if strategy == "filon":
        return density_filon(model, grid.m, grid.k1, grid.k2, filon_tol)
    raise ValueError(f"unknown density strategy '{strategy}' "
                     f"(choose from {DENSITY_STRATEGIES})")


class PricingContext:
    """Model + grid + density coefficients, computed once and then shared.

    Immutable after initialization; pricing different strikes against the
    same context reuses the density work (and is safe concurrently).
    """

    def __init__(self, model: ModelSpec, grid: WaveletGrid,
                 density_strategy: str = "trapezoidal", filon_tol: float = 1e-8):
        self.model = model
        self.grid = grid
        self.density_strategy = density_strategy
        self.coeffs, self.cf_evals = _compute_density(model, grid,
                                                      density_strategy, filon_tol)

    def density_mass(self) -> float:
        return density_mass(self.coeffs, self.grid.m)

    def _payoff_forward(self, K: float) -> np.ndarray:
        g = self.grid
        return np.array([payoff_forward_si_ein(K, self.model.forward, g.m, k, g.a)
                         for k in range(g.k1, g.k2)])

    def _payoff_em_fft(self, K: float) -> np.ndarray:
        g = self.grid
        job = PayoffJob(K=K, F=self.model.forward, m=g.m, a=g.a, b=g.b,
                        k1=g.k1, k2=g.k2, N=g.N)
        return payoff_fft_euler_maclaurin(job).values

    def _price_put_classic(self, K: float) -> float:
        # strike-centered payoff over the shifted window [a+z, z]: the
        # coefficient index k pairs with the classic formula at offset
        # k - 2^m z, and the used k-window [2^m(a+z), 2^m(b+z)) moves with
        # the strike (rounded outward for wider coverage)
        g = self.grid
        z = np.log(K / self.model.forward)
        shift = 2.0**g.m * z
        k1c = int(np.floor(2.0**g.m * (g.a + z)))
        k2c = int(np.ceil(2.0**g.m * (g.b + z))) + 1
        if k1c < g.k1 or k2c > g.k2:
            raise ValueError(
                f"classic payoff window [{k1c}, {k2c}) not covered by the "
                f"density range [{g.k1}, {g.k2}); widen the grid")
        ks = np.arange(k1c, k2c)
        V = np.array([payoff_classic_si_ein(K, g.m, k - shift, g.a) for k in ks])
        c = self.coeffs.values[k1c - g.k1: k2c - g.k1]
        return float(self.model.discount * np.dot(c, V))

    def price_put(self, K: float, payoff_strategy: str = "forward") -> PricingResult:
        t0 = time.perf_counter()
        if K == 0.0:
            # worthless put; keeps the parity identity call(0) = B F exact
            return PricingResult(price=0.0, grid=self.grid,
                                 density_strategy=self.density_strategy,
                                 payoff_strategy=payoff_strategy,
                                 cf_evals=self.cf_evals,
                                 elapsed=time.perf_counter() - t0)
        if payoff_strategy == "forward":
            V = self._payoff_forward(K)
            price = float(self.model.discount * np.dot(self.coeffs.values, V))
        elif payoff_strategy == "em_fft":
            V = self._payoff_em_fft(K)
            price = float(self.model.discount * np.dot(self.coeffs.values, V))
        elif payoff_strategy == "classic":
            price = self._price_put_classic(K)
        else:
            raise ValueError(f"unknown payoff strategy '{payoff_strategy}' "
                             f"(choose from {PAYOFF_STRATEGIES})")
        return PricingResult(price=price, grid=self.grid,
                             density_strategy=self.density_strategy,
                             payoff_strategy=payoff_strategy,
                             cf_evals=self.cf_evals,
                             elapsed=time.perf_counter() - t0)

    def price_call(self, K: float, payoff_strategy: str = "forward") -> PricingResult:
        res = self.price_put(K, payoff_strategy)
        parity = self.model.discount * (self.model.forward - K)
        return replace(res, price=res.price + parity)


@lru_cache(maxsize=16)
def _shared_context(model: ModelSpec, grid: WaveletGrid,
                    density_strategy: str) -> PricingContext:
    # (model, grid) are frozen dataclasses, so repeated one-shot pricing of
    # different strikes reuses one density computation
    return PricingContext(model, grid, density_strategy)


def price_put(model: ModelSpec, K: float, grid: WaveletGrid,
              density_strategy: str = "trapezoidal",
              payoff_strategy: str = "forward") -> PricingResult:
    """Put price B sum_k c_{m,k} V_{m,k}; the density work for a given
    (model, grid, strategy) is computed once and shared across strikes."""
    return _shared_context(model, grid, density_strategy).price_put(K, payoff_strategy)


def price_call(model: ModelSpec, K: float, grid: WaveletGrid,
               density_strategy: str = "trapezoidal",
               payoff_strategy: str = "forward") -> PricingResult:
    """Call by exact parity: call = put + B (F - K)."""
    return _shared_context(model, grid, density_strategy).price_call(K, payoff_strategy)


def auto_grid(model: ModelSpec, L: float = 10.0, scale_tol: float = 1e-8,
              mass_tol: float = 1e-9, m: int | None = None,
              max_k_half: int = 1 << 15) -> WaveletGrid:
    """Grid selection: scale from the cf decay, a seed interval from the
    cumulants, and the k-range from the density-mass doubling search (the
    candidate window itself doubles until the mass target is reachable,
    which matters for heavy-tailed models whose cumulant guess is short)."""
    if m is None:
        m = select_scale(model, scale_tol)
    a, b = truncation_interval(cumulants(model), L)
    k_half = 1 << int(np.ceil(np.log2(max(8.0, 2.0**m * max(-a, b)))))
    while True:
        J = int(np.ceil(np.log2(2 * k_half))) + 1
        wide = DensityJob(model, m, J, -k_half, k_half)
        try:
            k1, k2 = select_k_range(density_trapezoidal_fft(wide), m, mass_tol)
            break
        except GridSelectionError:
            k_half *= 2
            if k_half > max_k_half:
                raise
    a = min(a, k1 / 2.0**m)
    b = max(b, k2 / 2.0**m)
    n_pay = 1 << int(np.ceil(np.log2(max(k2 - k1, 32))))
    return WaveletGrid(m=m, k1=k1, k2=k2, J=J, N=n_pay, a=a, b=b, L=L)


class ReferenceError(RuntimeError):
    pass


def reference_put(model: ModelSpec, K: float, tol: float = 1e-10) -> float:
    """Independent reference put price by damped Fourier inversion.

    Uses the fixed -i/2 damping contour (always inside the moment strip of
    a martingale model):

      P = B [ K - sqrt(F K)/pi * int_0^inf Re(e^{i u X} psi(u - i/2))
                                  / (u^2 + 1/4) du ],   X = ln(F/K),

    integrated panelwise by adaptive Gauss-Kronrod with the tail truncated
    where the cf envelope bounds the remainder below tol/10.
    """
    if not tol > 0:
        raise ValueError("tol must be > 0")
    F, B = model.forward, model.discount
    X = np.log(F / K)

    def damped(u):
        return complex(char_fn(model, complex(u, -0.5)))

    def integrand(u):
        return (np.exp(1j * u * X) * damped(u)).real / (u * u + 0.25)

    # tail cut: |integrand| <= |psi(u - i/2)|/u^2, so remainder <= env/U
    budget = tol / 10.0 * np.pi / np.sqrt(F * K) * max(K, F * 1e-8)
    u_max = 50.0
    while u_max < 1e8:
        env = max(abs(damped(u_max)), abs(damped(1.3 * u_max)), abs(damped(1.7 * u_max)))
        if env / u_max <= budget or env == 0.0:
            break
        u_max *= 1.7
    else:
        raise ReferenceError(f"cf tail does not decay below the budget by u = {u_max:.3g}")

    edges = np.unique(np.concatenate([
        np.linspace(0.0, min(u_max, 200.0), 21),
        np.geomspace(max(1.0, min(u_max, 200.0)), u_max, 12),
    ]))
    total = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        for lo, hi in zip(edges[:-1], edges[1:]):
            val, err = quad(integrand, lo, hi, limit=400, epsabs=1e-15, epsrel=1e-13)
            if not np.isfinite(val):
                raise ReferenceError(f"quadrature failed on panel [{lo}, {hi}]")
            total += val
    return float(B * (K - np.sqrt(F * K) / np.pi * total))


def reference_call(model: ModelSpec, K: float, tol: float = 1e-10) -> float:
    return reference_put(model, K, tol) + model.discount * (model.forward - K)
