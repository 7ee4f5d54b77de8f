"""Density coefficients c_{m,k} from the characteristic function.

Three strategies compute the half-line Parseval integral

    c_{m,k} = 2^{m/2+1} Re[ int_0^{1/2} fhat(2^{m+1} pi t) e^{2 pi i k t} dt ],

with fhat(x) = psi(-x):

  * midpoint rule + one inverse FFT (equivalent to the cosine expansion
    obtained from Vieta's formula, which density_vieta_direct evaluates
    term by term as the per-coefficient oracle),
  * trapezoidal rule + one inverse FFT (same node budget, usually several
    times more accurate),
  * adaptive Filon quadrature with a cubic interpolant per panel and
    analytic oscillatory moments (few cf evaluations, shared across k).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .models import ModelSpec, char_fn
from .transform import inverse_dft


@dataclass(frozen=True)
class CoefficientArray:
    """Real coefficients indexed k = k1 .. k1+len-1."""

    k1: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("values must be a non-empty 1-D array")
        if not np.all(np.isfinite(v)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "values", v)

    @property
    def k2(self) -> int:
        return self.k1 + len(self.values)

    def k_values(self) -> np.ndarray:
        return np.arange(self.k1, self.k2)

    def at(self, k: int) -> float:
        if not self.k1 <= k < self.k2:
            raise IndexError(f"k={k} outside [{self.k1}, {self.k2})")
        return float(self.values[k - self.k1])


@dataclass(frozen=True)
class DensityJob:
    """Inputs for an FFT density computation."""

    model: ModelSpec
    m: int
    J: int
    k1: int
    k2: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"scale m must be >= 1, got {self.m}")
        if self.J < 1:
            raise ValueError(f"J must be >= 1, got {self.J}")
        if not self.k1 < self.k2:
            raise ValueError(f"need k1 < k2, got [{self.k1}, {self.k2})")
        # the strict bound is k2-k1 < 2^J; equality is accepted so the FFT
        # size can match the coefficient count exactly (the k = k1 column
        # then aliases k1 + 2^J, whose coefficient is negligible by design)
        if self.k2 - self.k1 > (1 << self.J):
            raise ValueError(
                f"k range width {self.k2 - self.k1} exceeds 2^J = {1 << self.J}")


class FilonConvergenceError(RuntimeError):
    """Raised when panel subdivision hits its depth cap before the target.

    Carries the best available coefficients and the achieved tolerance.
    """

    def __init__(self, message, best, achieved_tol, cf_evals):
        super().__init__(message)
        self.best = best
        self.achieved_tol = achieved_tol
        self.cf_evals = cf_evals


def _fhat(model: ModelSpec, x):
    # fhat(x) = psi(-x) for the forward-centered log-return density
    return char_fn(model, -np.asarray(x, dtype=float))


def density_midpoint_fft(job: DensityJob) -> CoefficientArray:
    """c_{m,k} by the midpoint rule, one inverse DFT of size 2^J.

    Loading: f_j = fhat(2^m pi (2j+1)/2^J) e^{2 pi i k1 j/2^J} for
    j < 2^{J-1}, zero beyond; recovery applies the half-step phase
    e^{i pi (l+k1)/2^J} elementwise.  For the centered range
    k1 = -2^{J-1} the phase-free loading plus half-buffer swap is used.
    """
    n = 1 << job.J
    nh = n >> 1
    j = np.arange(nh)
    fh = _fhat(job.model, (2.0**job.m) * np.pi * (2 * j + 1) / n)
    buf = np.zeros(n, dtype=complex)
    scale = 2.0 ** (job.m / 2.0) / nh
    width = job.k2 - job.k1
    if job.k1 == -nh:
        buf[:nh] = fh
        g = inverse_dft(buf)
        g = np.concatenate([g[nh:], g[:nh]])  # k = -2^{J-1} .. 2^{J-1}-1
        ks = np.arange(-nh, nh)
        vals = scale * (np.exp(1j * np.pi * ks / n) * g).real
        return CoefficientArray(job.k1, vals[:width])
    buf[:nh] = fh * np.exp(2j * np.pi * job.k1 * j / n)
    g = inverse_dft(buf)
    l = np.arange(width)
    vals = scale * (np.exp(1j * np.pi * (l + job.k1) / n) * g[:width]).real
    return CoefficientArray(job.k1, vals)


def density_trapezoidal_fft(job: DensityJob) -> CoefficientArray:
    """c_{m,k} by the trapezoidal rule, one inverse DFT of size 2^J.

    Loading: f_0 = fhat(0)/2, f_j = fhat(2^m pi 2j/2^J) for 1 <= j < 2^{J-1},
    zero beyond (same one-sided truncation as the midpoint strategy).
    """
    n = 1 << job.J
    nh = n >> 1
    j = np.arange(nh)
    fh = _fhat(job.model, (2.0**job.m) * np.pi * (2 * j) / n)
    fh[0] *= 0.5
    buf = np.zeros(n, dtype=complex)
    scale = 2.0 ** (job.m / 2.0) / nh
    width = job.k2 - job.k1
    if job.k1 == -nh:
        buf[:nh] = fh
        g = inverse_dft(buf)
        g = np.concatenate([g[nh:], g[:nh]])
        return CoefficientArray(job.k1, scale * g.real[:width])
    buf[:nh] = fh * np.exp(2j * np.pi * job.k1 * j / n)
    g = inverse_dft(buf)
    return CoefficientArray(job.k1, scale * g[: width].real)


def density_vieta_direct(model: ModelSpec, m: int, k: int, J: int) -> float:
    """Single c_{m,k} through the explicit Vieta cosine sum.

    O(2^{J-1}) cf evaluations; the equivalence oracle for
    density_midpoint_fft (the two are the same sum in exact arithmetic).
    """
    if m < 1 or J < 1:
        raise ValueError("need m >= 1 and J >= 1")
    n = 1 << (J - 1)
    j = np.arange(1, n + 1)
    u = (2.0**m) * np.pi * (2 * j - 1) / (1 << J)
    psi = char_fn(model, u)
    angles = np.pi * k * (2 * j - 1) / (1 << J)
    terms = (psi * np.exp(-1j * angles)).real
    return float(2.0 ** (m / 2.0) / n * np.sum(terms))


# cubic interpolation on s in [0, 1] through nodes 0, 1/3, 2/3, 1
_NODES = np.array([0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0])
_VAND_INV = np.linalg.inv(np.vander(_NODES, 4, increasing=True))
_PROBE = np.linspace(0.0, 1.0, 9)


def _poly_eval(c, s):
    return ((c[3] * s + c[2]) * s + c[1]) * s + c[0]


def _moments(theta: np.ndarray) -> np.ndarray:
    """m_p = int_0^1 s^p e^{i theta s} ds for p = 0..3, vectorized in theta.

    Upward recursion m_p = (e^{i theta} - p m_{p-1})/(i theta) is stable for
    |theta| >= 1/2; below that a short Taylor series avoids the cancellation.
    """
    theta = np.asarray(theta, dtype=float)
    it = 1j * theta
    eit = np.exp(it)
    small = np.abs(theta) < 0.5
    safe = np.where(small, 1.0, it)
    out = np.empty((4,) + theta.shape, dtype=complex)
    out[0] = (eit - 1.0) / safe
    for p in range(1, 4):
        out[p] = (eit - p * out[p - 1]) / safe
    if np.any(small):
        ts = it[small]
        for p in range(4):
            acc = np.zeros(ts.shape, dtype=complex)
            term = np.ones(ts.shape, dtype=complex)
            for jj in range(0, 25):
                acc = acc + term / (p + jj + 1)
                term = term * ts / (jj + 1)
            out[p][small] = acc
    return out


def density_filon(model: ModelSpec, m: int, k1: int, k2: int, tol: float,
                  max_depth: int = 40):
    """All c_{m,k}, k in [k1, k2), by adaptive Filon quadrature.

    The smooth factor fhat is interpolated by a cubic on each panel and the
    oscillation e^{2 pi i k t} is integrated analytically, so one panel set
    serves every k.  Panels split while the L1 distance between a panel's
    cubic and its two half-panel cubics exceeds the width-proportional
    budget; that criterion bounds the Filon error uniformly in k (worst
    frequency included) and keeps the node set independent of the k range.

    Returns (CoefficientArray, cf_eval_count).
    """
    if not tol > 0:
        raise ValueError("tol must be > 0")
    if m < 1:
        raise ValueError("m must be >= 1")
    if not k1 < k2:
        raise ValueError("need k1 < k2")

    evals = [0]

    def g(ts):
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        evals[0] += ts.size
        return _fhat(model, 2.0 ** (m + 1) * np.pi * ts)

    panels = []          # (t0, h, cubic coefficients)
    tol_integral = 0.5 * tol   # budget for the t-integral itself
    leftovers = []       # unsatisfied estimates at depth cap

    def refine(t0, h, vals, depth):
        c = _VAND_INV @ vals
        tl = t0 + (h / 2.0) * _NODES
        tr = t0 + h / 2.0 + (h / 2.0) * _NODES
        vl = np.array([vals[0], g(tl[1])[0], g(tl[2])[0], g(tl[3])[0]])
        vr = np.array([vl[3], g(tr[1])[0], g(tr[2])[0], vals[3]])
        cl = _VAND_INV @ vl
        cr = _VAND_INV @ vr
        half = len(_PROBE) // 2
        child = np.concatenate([
            _poly_eval(cl, _PROBE[: half + 1] * 2.0),
            _poly_eval(cr, (_PROBE[half + 1:] - 0.5) * 2.0),
        ])
        est = float(np.trapezoid(np.abs(_poly_eval(c, _PROBE) - child),
                                 dx=1.0 / (len(_PROBE) - 1))) * h
        if est <= tol_integral * (h / 0.5) or depth >= max_depth:
            if est > tol_integral * (h / 0.5):
                leftovers.append(est)
            panels.append((t0, h / 2.0, cl))
            panels.append((t0 + h / 2.0, h / 2.0, cr))
        else:
            refine(t0, h / 2.0, vl, depth + 1)
            refine(t0 + h / 2.0, h / 2.0, vr, depth + 1)

    first = np.concatenate([g(0.5 * _NODES[:3]), g(0.5 * _NODES[3])])
    refine(0.0, 0.5, first, 0)

    ks = np.arange(k1, k2)
    omega = 2.0 * np.pi * ks.astype(float)
    integral = np.zeros(len(ks), dtype=complex)
    for t0, h, c in panels:
        mom = _moments(omega * h)
        contrib = h * np.exp(1j * omega * t0) * (
            c[0] * mom[0] + c[1] * mom[1] + c[2] * mom[2] + c[3] * mom[3])
        integral += contrib
    coeffs = CoefficientArray(k1, 2.0 ** (m / 2.0 + 1.0) * integral.real)

    if leftovers:
        achieved = 2.0 * (tol_integral + float(np.sum(leftovers)))
        raise FilonConvergenceError(
            f"Filon subdivision hit depth {max_depth} before reaching tol={tol} "
            f"(achieved ~{achieved:.3e})", best=coeffs,
            achieved_tol=achieved, cf_evals=evals[0])
    return coeffs, evals[0]


def density_mass(coeffs: CoefficientArray, m: int) -> float:
    """2^{-m/2} sum_k c_{m,k}: the Riemann mass of the reconstructed density
    (the sinc translates form a partition of unity, so a resolved grid sums
    to ~1)."""
    return float(2.0 ** (-m / 2.0) * np.sum(coeffs.values))
