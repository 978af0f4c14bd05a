import numpy as np
import pytest

from frckit.curve import PwlCurve, make_curve
from frckit.fleet import (
    Fleet,
    GenSpec,
    ModelType,
    SystemParams,
    Technology,
    Unit,
    generate_fleet,
)

DENSE_GRID = np.linspace(-1.0, 1.0, 10_001)


def random_curve(rng: np.random.Generator, n_points: int | None = None) -> PwlCurve:
    """Arbitrary curve with breakpoints in [-1, 1] and MW values O(100)."""
    n = n_points or int(rng.integers(1, 9))
    dfs = np.sort(rng.uniform(-1.0, 1.0, n))
    while np.any(np.diff(dfs) < 1e-9):
        dfs = np.sort(rng.uniform(-1.0, 1.0, n))
    mws = rng.uniform(-100.0, 100.0, n)
    slopes = rng.uniform(-200.0, 200.0, 2)
    return make_curve(list(zip(dfs, mws)), slopes[0], slopes[1])


def random_monotone_curve(rng: np.random.Generator, n_points: int | None = None) -> PwlCurve:
    """Monotone non-increasing curve through random levels."""
    n = n_points or int(rng.integers(2, 9))
    dfs = np.sort(rng.uniform(-1.0, 1.0, n))
    while np.any(np.diff(dfs) < 1e-9):
        dfs = np.sort(rng.uniform(-1.0, 1.0, n))
    drops = rng.uniform(0.0, 50.0, n - 1)
    top = rng.uniform(-50.0, 150.0)
    mws = np.concatenate([[top], top - np.cumsum(drops)])
    left = -float(rng.uniform(0.0, 500.0))
    right = -float(rng.uniform(0.0, 500.0))
    return make_curve(list(zip(dfs, mws)), left, right)


def assert_pointwise_equal(a: PwlCurve, b: PwlCurve, tol: float = 1e-9, grid=None):
    g = DENSE_GRID if grid is None else grid
    va, vb = a.eval(g), b.eval(g)
    err = np.abs(va - vb)
    bound = np.maximum(tol, tol * np.abs(vb))
    assert np.all(err <= bound), f"max pointwise deviation {err.max():.3e} MW"


def make_test_unit(**overrides) -> Unit:
    """Steam unit from the worked droop example: 100 MVA, R=0.05, db=0.036."""
    base = dict(
        id="U1",
        technology=Technology.STEAM,
        model_type=ModelType.STEAM_REHEAT,
        rated_mva=100.0,
        pgen_mw=90.0,
        pmax_mw=100.0,
        pmin_mw=40.0,
        inertia_h_s=4.0,
        droop_pu=0.05,
        deadband_hz=0.036,
    )
    base.update(overrides)
    return Unit(**base)


@pytest.fixture
def damping_only_fleet() -> Fleet:
    """No governors: D=1 on 50 GW load (833.33 MW/Hz), one inertia source."""
    return Fleet(
        system=SystemParams(load_mw=50_000.0, load_damping_pu=1.0, f0=60.0),
        units=(
            Unit(
                id="N1",
                technology=Technology.NUCLEAR,
                model_type=ModelType.NONE,
                rated_mva=50_000.0,
                pgen_mw=40_000.0,
                pmax_mw=50_000.0,
                inertia_h_s=4.0,
                droop_pu=0.0,
            ),
        ),
    )


@pytest.fixture(scope="session")
def standard_fleet() -> Fleet:
    """The fixed fleet used for convergence and CLI checks."""
    return generate_fleet(
        GenSpec(n_units=50, renewable_fraction=0.3, total_capacity_mw=20_000.0, seed=42)
    )
