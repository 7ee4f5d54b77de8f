import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from swiftpricer import HestonParams, LognormalParams, ModelSpec

# Short-maturity set: 2-day options on a unit forward (strong skew).
HESTON_SHORT = ModelSpec(
    forward=1.0, maturity=2.0 / 365.0, discount=1.0,
    dynamics=HestonParams(v0=0.1, kappa=1.0, theta=0.1, sigma=1.0, rho=-0.9))

# Heavy-tail set: 1-year options on a 1e6 forward (large vol-of-vol).
HESTON_HEAVY = ModelSpec(
    forward=1e6, maturity=1.0, discount=1.0,
    dynamics=HestonParams(v0=0.0225, kappa=0.1, theta=0.01, sigma=2.0, rho=0.5))

LOGNORMAL_02 = ModelSpec(
    forward=100.0, maturity=1.0, discount=1.0, dynamics=LognormalParams(vol=0.2))

# Near-point-mass stand-in for psi == 1 (vol so small the cf is 1 to 1e-16
# over every frequency the tests touch).
POINT_MASS = ModelSpec(
    forward=1.0, maturity=1.0, discount=1.0, dynamics=LognormalParams(vol=1e-12))


@pytest.fixture
def heston_short():
    return HESTON_SHORT


@pytest.fixture
def heston_heavy():
    return HESTON_HEAVY


@pytest.fixture
def lognormal():
    return LOGNORMAL_02


@pytest.fixture
def point_mass():
    return POINT_MASS


@pytest.fixture
def lognormal_file(tmp_path):
    path = tmp_path / "lognormal.json"
    path.write_text(json.dumps({
        "forward": 100.0, "maturity": 1.0, "discount": 1.0,
        "lognormal": {"vol": 0.2},
    }))
    return str(path)


@pytest.fixture
def heston_heavy_file(tmp_path):
    path = tmp_path / "heston_heavy.json"
    path.write_text(json.dumps({
        "forward": 1e6, "maturity": 1.0, "discount": 1.0,
        "heston": {"v0": 0.0225, "kappa": 0.1, "theta": 0.01,
                   "sigma": 2.0, "rho": 0.5},
    }))
    return str(path)


@pytest.fixture
def heston_short_file(tmp_path):
    path = tmp_path / "heston_short.json"
    path.write_text(json.dumps({
        "forward": 1.0, "maturity": 2.0 / 365.0, "discount": 1.0,
        "heston": {"v0": 0.1, "kappa": 1.0, "theta": 0.1,
                   "sigma": 1.0, "rho": -0.9},
    }))
    return str(path)
