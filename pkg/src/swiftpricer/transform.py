"""Radix-2 transforms: unscaled inverse DFT, and DCT-II / DST-II each
computed from a single same-size FFT (Makhoul's even-odd reordering),
plus the combined cosine+sine evaluation used for payoff coefficients.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def _check_pow2(n: int) -> int:
    if n < 1 or (n & (n - 1)) != 0:
        raise ValueError(f"length must be a power of two, got {n}")
    return int(n).bit_length() - 1


@lru_cache(maxsize=64)
def _plan(n: int):
    """Bit-reversal permutation and per-stage twiddle tables for size n.

    Plans are immutable after construction and shared across callers.
    """
    p = _check_pow2(n)
    rev = np.zeros(n, dtype=np.intp)
    for i in range(1, n):
        rev[i] = (rev[i >> 1] >> 1) | ((i & 1) << (p - 1))
    twiddles = []
    for s in range(1, p + 1):
        half = 1 << (s - 1)
        # +2 pi i / 2^s: inverse-transform sign convention
        twiddles.append(np.exp(2j * np.pi * np.arange(half) / (1 << s)))
    for t in twiddles:
        t.setflags(write=False)
    rev.setflags(write=False)
    return rev, tuple(twiddles)


def inverse_dft(buf) -> np.ndarray:
    """Unscaled inverse DFT: g_l = sum_j f_j e^{+2 pi i l j / n}.

    Iterative radix-2 decimation-in-time; input length must be a power of
    two.  Out-of-place: the input buffer is never modified.
    """
    f = np.asarray(buf, dtype=complex)
    n = f.shape[0]
    rev, twiddles = _plan(n)
    g = f[rev].copy()
    p = len(twiddles)
    for s in range(1, p + 1):
        m = 1 << s
        half = m >> 1
        w = twiddles[s - 1]
        blocks = g.reshape(n // m, m)
        lo = blocks[:, :half].copy()
        hi = blocks[:, half:] * w
        blocks[:, :half] = lo + hi
        blocks[:, half:] = lo - hi
    return g


def _makhoul_phase(n: int) -> np.ndarray:
    # e^{+i pi k / (2N)}; with real reordered input, DFT = conj(IDFT), so
    # Re[DFT(c)_k e^{-i pi k/(2N)}] = Re[IDFT(c)_k e^{+i pi k/(2N)}] and the
    # DST recovery picks the matching +Im part
    return np.exp(1j * np.pi * np.arange(n) / (2 * n))


def dct2_via_fft(a) -> np.ndarray:
    """DCT-II: a_hat_k = sum_j a_j cos(pi k (j+1/2)/N), one FFT of size N."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    _check_pow2(n)
    if n == 1:
        return a.copy()
    c = np.empty(n, dtype=float)
    c[: n // 2] = a[0::2]
    c[n // 2:] = a[1::2][::-1]
    return (inverse_dft(c) * _makhoul_phase(n)).real


def dst2_via_fft(b) -> np.ndarray:
    """DST-II: b_hat_k = sum_j b_j sin(pi k (j+1/2)/N), one FFT of size N."""
    b = np.asarray(b, dtype=float)
    n = b.shape[0]
    _check_pow2(n)
    if n == 1:
        return np.zeros(1)
    c = np.empty(n, dtype=float)
    c[: n // 2] = b[0::2]
    c[n // 2:] = -b[1::2][::-1]
    return (inverse_dft(c) * _makhoul_phase(n)).imag


def _extend_indices(ks: np.ndarray, n: int):
    """Map arbitrary integer frequencies onto the base table 0..N.

    The half-sample angles pi*k*(j+1/2)/N satisfy:
      k -> -k      : cos even, sin odd
      k -> k + 2N  : both flip sign
      k -> 2N - k  : cos flips sign, sin unchanged
    so every integer k reduces to an index in [0, N] and two signs.
    """
    ks = np.asarray(ks, dtype=np.int64)
    sc = np.ones(ks.shape, dtype=np.int64)
    ss = np.ones(ks.shape, dtype=np.int64)
    r = np.abs(ks)
    ss = np.where(ks < 0, -ss, ss)
    r = r % (4 * n)
    wrap = r >= 2 * n
    r = np.where(wrap, r - 2 * n, r)
    sc = np.where(wrap, -sc, sc)
    ss = np.where(wrap, -ss, ss)
    refl = r > n
    r = np.where(refl, 2 * n - r, r)
    sc = np.where(refl, -sc, sc)
    return r, sc, ss


def cos_sin_sum(a, b, k_range) -> np.ndarray:
    """sum_j a_j cos(pi k (j+1/2)/N) + b_j sin(pi k (j+1/2)/N) for each k.

    ``k_range`` is any iterable of integers (negative and >= N allowed; they
    are folded back by the parity/period structure of the half-sample
    angles).  Internally one FFT serves the DCT and one the DST, sharing
    twiddle tables, and the two phase rotations are applied together.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("a and b must have the same length")
    n = a.shape[0]
    _check_pow2(n)
    ks = np.asarray(list(k_range) if not isinstance(k_range, np.ndarray) else k_range,
                    dtype=np.int64)
    if n == 1:
        cos_tab = np.array([1.0, 0.0]) * a[0]
        sin_tab = np.array([0.0, 1.0]) * b[0]
    else:
        ca = np.empty(n, dtype=float)
        ca[: n // 2] = a[0::2]
        ca[n // 2:] = a[1::2][::-1]
        cb = np.empty(n, dtype=float)
        cb[: n // 2] = b[0::2]
        cb[n // 2:] = -b[1::2][::-1]
        phase = _makhoul_phase(n)
        ga = inverse_dft(ca) * phase
        gb = inverse_dft(cb) * phase
        signs = 1.0 - 2.0 * (np.arange(n) & 1)  # (-1)^j
        # index N: cos(pi(j+1/2)) = 0, sin(pi(j+1/2)) = (-1)^j
        cos_tab = np.concatenate([ga.real, [0.0]])
        sin_tab = np.concatenate([gb.imag, [float(np.dot(signs, b))]])
    idx, sc, ss = _extend_indices(ks, n)
    return sc * cos_tab[idx] + ss * sin_tab[idx]
