#!/usr/bin/env python3
"""Round trip against Black-76: lognormal dynamics price to closed form.

The wavelet expansion with an auto-selected grid should agree with the
Black-76 formula to ~1e-8 or better across moneyness, maturity and vol.
"""

import numpy as np
from scipy.stats import norm

from swiftpricer import (LognormalParams, ModelSpec, PricingContext, auto_grid,
                         reference_put)


def black76_put(F, K, T, vol, B=1.0):
    sd = vol * np.sqrt(T)
    d1 = np.log(F / K) / sd + 0.5 * sd
    return B * (K * norm.cdf(-d1 + sd) - F * norm.cdf(-d1))


F, B = 100.0, 1.0
print(f"{'vol':>5s} {'T':>5s} {'K':>7s} {'swift put':>16s} {'black put':>16s} {'diff':>10s}")
for vol in (0.05, 0.2, 0.8):
    for T in (0.25, 2.0):
        model = ModelSpec(F, T, B, LognormalParams(vol=vol))
        grid = auto_grid(model)
        ctx = PricingContext(model, grid, "trapezoidal")
        for K in (70.0, 100.0, 140.0):
            swift = ctx.price_put(K).price
            black = black76_put(F, K, T, vol, B)
            print(f"{vol:>5.2f} {T:>5.2f} {K:>7.1f} {swift:>16.10f} "
                  f"{black:>16.10f} {swift - black:>10.1e}")

# the damped-inversion reference pricer hits the same closed form harder
model = ModelSpec(F, 1.0, B, LognormalParams(vol=0.2))
ref = reference_put(model, 100.0)
print(f"\nreference pricer at the money: {ref:.14f}")
print(f"Black-76 closed form:          {black76_put(F, 100.0, 1.0, 0.2):.14f}")
