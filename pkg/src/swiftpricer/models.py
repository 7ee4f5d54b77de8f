"""Models priced by the wavelet expansion: Heston and lognormal.

Everything is expressed through the characteristic function of the
forward-centered log return y = ln(S_T / F), so that E[e^y] = 1
(psi(-i) = 1) and density coefficients are strike independent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

# Convention: the Heston fourth cumulant is approximated by zero (its closed
# form is unwieldy and the truncation rule only needs a rough guess; the
# printed reference interval in the experiments is reproduced with c4 = 0).
HESTON_C4_CONVENTION = "zero"


@dataclass(frozen=True)
class HestonParams:
    """Heston variance process parameters.

    dv_t = kappa (theta - v_t) dt + sigma sqrt(v_t) dW_t,  corr(dW, dB) = rho.
    """

    v0: float
    kappa: float
    theta: float
    sigma: float
    rho: float

    def __post_init__(self):
        if not self.v0 > 0:
            raise ValueError(f"v0 must be > 0, got {self.v0}")
        if self.kappa < 0:
            raise ValueError(f"kappa must be >= 0, got {self.kappa}")
        if self.theta < 0:
            raise ValueError(f"theta must be >= 0, got {self.theta}")
        if not self.sigma > 0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")
        if not -1.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must be in [-1, 1], got {self.rho}")


@dataclass(frozen=True)
class LognormalParams:
    """Flat lognormal (Black-76) dynamics with volatility per sqrt-year."""

    vol: float

    def __post_init__(self):
        if not self.vol > 0:
            raise ValueError(f"vol must be > 0, got {self.vol}")


@dataclass(frozen=True)
class ModelSpec:
    """A priced model: forward, maturity, discount factor and dynamics."""

    forward: float
    maturity: float
    discount: float
    dynamics: HestonParams | LognormalParams

    def __post_init__(self):
        if not self.forward > 0:
            raise ValueError(f"forward must be > 0, got {self.forward}")
        if not self.maturity > 0:
            raise ValueError(f"maturity must be > 0, got {self.maturity}")
        if not 0 < self.discount <= 1:
            raise ValueError(f"discount must be in (0, 1], got {self.discount}")


@dataclass(frozen=True)
class Cumulants:
    """Cumulants of y = ln(S_T/F); c4 may be an approximation (see char_fn)."""

    c1: float
    c2: float
    c4: float

    def __post_init__(self):
        if self.c2 < 0:
            raise ValueError(f"c2 must be >= 0, got {self.c2}")


def _heston_cf(u, T, p: HestonParams):
    """Little-trap Heston cf of y = ln(S_T/F); branch-stable for large T."""
    u = np.asarray(u, dtype=complex)
    iu = 1j * u
    A = iu + u * u
    beta = p.kappa - p.rho * p.sigma * iu
    d = np.sqrt(beta * beta + p.sigma * p.sigma * A)
    with np.errstate(divide="ignore", invalid="ignore"):
        g = (beta - d) / (beta + d)
        edt = np.exp(-d * T)
        C = p.kappa * p.theta / p.sigma**2 * (
            (beta - d) * T - 2.0 * np.log((1.0 - g * edt) / (1.0 - g))
        )
        D = (beta - d) / p.sigma**2 * (1.0 - edt) / (1.0 - g * edt)
        out = np.exp(C + D * p.v0)
    # A = u(u+i) = 0 at u = 0 and u = -i, where psi = 1 exactly
    # (normalization resp. the martingale condition E[e^y] = 1)
    return np.where(A == 0, 1.0 + 0.0j, out)


def _lognormal_cf(u, T, p: LognormalParams):
    u = np.asarray(u, dtype=complex)
    return np.exp(-0.5 * p.vol * p.vol * T * (u * u + 1j * u))


def char_fn(model: ModelSpec, u):
    """Characteristic function psi(u) = E[exp(i u ln(S_T/F))].

    Vectorized over ``u``; real input is the supported contract, complex
    input evaluates the same analytic expressions (used e.g. for the
    martingale check psi(-i) = 1).
    """
    scalar = np.isscalar(u)
    if isinstance(model.dynamics, HestonParams):
        out = _heston_cf(u, model.maturity, model.dynamics)
    else:
        out = _lognormal_cf(u, model.maturity, model.dynamics)
    return complex(out[()]) if scalar else out


def cumulants(model: ModelSpec) -> Cumulants:
    """Cumulants c1, c2, c4 of y = ln(S_T/F).

    Lognormal: exact (c1 = -sigma^2 T/2, c2 = sigma^2 T, c4 = 0).
    Heston: closed-form c1 and c2; c4 is approximated by 0 (convention
    ``HESTON_C4_CONVENTION``), adequate for seeding truncation guesses.
    """
    T = model.maturity
    dyn = model.dynamics
    if isinstance(dyn, LognormalParams):
        var = dyn.vol * dyn.vol * T
        return Cumulants(c1=-0.5 * var, c2=var, c4=0.0)

    k, th, s, r, v0 = dyn.kappa, dyn.theta, dyn.sigma, dyn.rho, dyn.v0
    ekt = np.exp(-k * T)
    c1 = -th * T / 2.0 + (th - v0) * (1.0 - ekt) / (2.0 * k)
    e1 = np.exp(k * T)
    e2 = np.exp(2.0 * k * T)
    term_th = th * (
        2.0 * T * k * (4.0 * k * k - 4.0 * k * r * s + s * s) * e2
        + s * s
        + (-8.0 * k * k + 16.0 * k * r * s - 5.0 * s * s) * e2
        + 4.0 * (-2.0 * T * k * k * r * s + T * k * s * s
                 + 2.0 * k * k - 4.0 * k * r * s + s * s) * e1
    )
    term_v0 = 2.0 * v0 * (
        4.0 * k * k * e2 - 4.0 * k * r * s * e2
        + 2.0 * k * (2.0 * T * k * r * s - T * s * s - 2.0 * k + 2.0 * r * s) * e1
        + s * s * e2 - s * s
    )
    c2 = (term_th + term_v0) * np.exp(-2.0 * k * T) / (8.0 * k**3)
    return Cumulants(c1=float(c1), c2=float(c2), c4=0.0)


def model_from_dict(doc: dict) -> ModelSpec:
    """Build a ModelSpec from the JSON document layout.

    {"forward": F, "maturity": T, "discount": B,
     "heston": {"v0":..,"kappa":..,"theta":..,"sigma":..,"rho":..}}
    or ... "lognormal": {"vol": ..}.
    """
    for key in ("forward", "maturity", "discount"):
        if key not in doc:
            raise ValueError(f"model document missing required key '{key}'")
    if "heston" in doc:
        h = doc["heston"]
        for key in ("v0", "kappa", "theta", "sigma", "rho"):
            if key not in h:
                raise ValueError(f"heston block missing required key '{key}'")
        dyn = HestonParams(v0=float(h["v0"]), kappa=float(h["kappa"]),
                           theta=float(h["theta"]), sigma=float(h["sigma"]),
                           rho=float(h["rho"]))
    elif "lognormal" in doc:
        block = doc["lognormal"]
        if "vol" not in block:
            raise ValueError("lognormal block missing required key 'vol'")
        dyn = LognormalParams(vol=float(block["vol"]))
    else:
        raise ValueError("model document needs a 'heston' or 'lognormal' block")
    return ModelSpec(forward=float(doc["forward"]), maturity=float(doc["maturity"]),
                     discount=float(doc["discount"]), dynamics=dyn)


def model_from_json(path) -> ModelSpec:
    with open(path) as fh:
        doc = json.load(fh)
    return model_from_dict(doc)
