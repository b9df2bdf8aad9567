import math

import pytest

from alphacf.entropy_numerics import (
    CSV_FIELDS,
    GAUSS_ENTROPY,
    birkhoff_entropy,
    entropy_scan,
    scan_to_csv,
)
from alphacf.errors import PreconditionError


def test_gauss_constant():
    assert GAUSS_ENTROPY == pytest.approx(2.3731, abs=1e-4)


def test_deterministic():
    a = birkhoff_entropy(0.6, iters=20_000, n_orbits=4, seed=3)
    b = birkhoff_entropy(0.6, iters=20_000, n_orbits=4, seed=3)
    assert a == b
    c = birkhoff_entropy(0.6, iters=20_000, n_orbits=4, seed=4)
    assert c.estimate != a.estimate


def test_golden_mean_value():
    # on [g^2, g] the entropy is pi^2 / (6 log g^-1)
    est = birkhoff_entropy(0.5, iters=200_000, n_orbits=8, seed=1)
    g = (math.sqrt(5) - 1) / 2
    assert abs(est.estimate - math.pi**2 / (6 * math.log(1 / g))) < 4 * est.stderr + 1e-3


def test_preconditions():
    with pytest.raises(PreconditionError):
        birkhoff_entropy(0.0)
    with pytest.raises(PreconditionError):
        birkhoff_entropy(0.5, iters=10)
    with pytest.raises(PreconditionError):
        birkhoff_entropy(0.5, n_orbits=1)
    with pytest.raises(PreconditionError):
        entropy_scan(0.6, 0.4, 3)


def test_scan_single_step_and_workers():
    rows = entropy_scan(0.4, 0.9, 1, iters=5_000, n_orbits=2)
    assert [r.alpha for r in rows] == [0.4]
    serial = entropy_scan(0.4, 0.9, 3, iters=5_000, n_orbits=2, seed=9)
    threaded = entropy_scan(0.4, 0.9, 3, iters=5_000, n_orbits=2, seed=9, workers=3)
    assert serial == threaded
    assert [r.alpha for r in serial] == [0.4, 0.65, 0.9]
    assert all(r.seed == 9 for r in serial)


def test_csv():
    text = scan_to_csv(entropy_scan(0.5, 1.0, 2, iters=2_000, n_orbits=2))
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_FIELDS) and len(lines) == 3
