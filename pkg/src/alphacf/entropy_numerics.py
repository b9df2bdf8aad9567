"""Floating-point Birkhoff estimates of the entropy of ``T_alpha``.

Since ``|T_alpha'(x)| = 1/x**2``, the entropy equals the orbit average of
``2*log(1/|x_k|)`` for Lebesgue-typical starting points.  Estimates are the
mean over independent orbits; the standard error comes from the spread of the
per-orbit means.  This is the only non-exact module of the package.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numba
import numpy as np

from .errors import DegenerateOrbitError, PreconditionError

__all__ = ["EntropyEstimate", "birkhoff_entropy", "entropy_scan", "scan_to_csv", "GAUSS_ENTROPY"]

log = logging.getLogger(__name__)

#: Entropy of the Gauss map, pi^2 / (6 ln 2).
GAUSS_ENTROPY = math.pi**2 / (6 * math.log(2))

CSV_FIELDS = ("alpha", "estimate", "stderr", "iters", "n_orbits", "seed")


@numba.njit(cache=True, nogil=True)
def _orbit_mean(x0, alpha, iters, burn_in, zero_floor, pool):
    # returns (mean of 2 log(1/|x|), restarts used); restarts == -1 means the pool ran out
    x = x0
    total = 0.0
    count = 0
    skip = burn_in
    used = 0
    while count < iters:
        ax = abs(x)
        if ax < zero_floor:
            if used >= pool.shape[0]:
                return np.nan, -1
            x = pool[used]
            used += 1
            skip = burn_in
            continue
        inv = 1.0 / ax
        if skip > 0:
            skip -= 1
        else:
            total += 2.0 * math.log(inv)
            count += 1
        x = inv - math.floor(inv + 1.0 - alpha)
    return total / count, used


@dataclass(frozen=True)
class EntropyEstimate:
    alpha: float
    estimate: float
    stderr: float
    iters: int
    burn_in: int
    seed: int
    n_orbits: int
    restarts: int = 0

    def row(self) -> dict:
        return {"alpha": repr(self.alpha), "estimate": repr(self.estimate),
                "stderr": repr(self.stderr), "iters": self.iters,
                "n_orbits": self.n_orbits, "seed": self.seed}


def birkhoff_entropy(alpha: float, iters: int = 10**6, burn_in: int = 1000,
                     n_orbits: int = 16, seed: int = 0, zero_floor: float = 1e-15,
                     max_restarts: int = 64) -> EntropyEstimate:
    """Estimate ``h(T_alpha)`` from ``n_orbits`` orbits of ``iters`` steps each.

    Starting points are uniform in ``(alpha - 1, alpha)``.  An orbit that comes
    within ``zero_floor`` of 0 restarts from a fresh uniform point (and redoes
    its burn-in).  ``alpha = 1`` is the Gauss map.
    """
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise PreconditionError(f"alpha = {alpha} is not in (0, 1]")
    if iters < 1000:
        raise PreconditionError("iters must be at least 1000")
    if n_orbits < 2:
        raise PreconditionError("n_orbits must be at least 2 for a standard error")
    rng = np.random.default_rng(seed)
    starts = rng.uniform(alpha - 1.0, alpha, size=n_orbits)
    pool = rng.uniform(alpha - 1.0, alpha, size=max_restarts)
    means = np.empty(n_orbits)
    restarts = 0
    for i in range(n_orbits):
        m, used = _orbit_mean(starts[i], alpha, iters, burn_in, zero_floor, pool[restarts:])
        if used < 0:
            raise DegenerateOrbitError(f"more than {max_restarts} restarts at alpha = {alpha}")
        if used:
            log.info("alpha=%r orbit %d restarted %d time(s) near 0", alpha, i, used)
        restarts += used
        means[i] = m
    stderr = float(means.std(ddof=1) / math.sqrt(n_orbits))
    return EntropyEstimate(alpha, float(means.mean()), stderr, iters, burn_in, seed,
                           n_orbits, restarts)


def entropy_scan(lo: float, hi: float, steps: int, iters: int = 10**6, seed: int = 0,
                 n_orbits: int = 16, burn_in: int = 1000,
                 workers: int = 1) -> list[EntropyEstimate]:
    """Entropy estimates on an evenly spaced grid of ``steps`` points in ``[lo, hi]``.

    Grid point ``i`` draws its random numbers from ``SeedSequence([seed, i])``,
    so results do not depend on ``workers``.
    """
    if not 0.0 < lo < hi <= 1.0:
        raise PreconditionError("need 0 < lo < hi <= 1")
    if steps < 1:
        raise PreconditionError("steps must be >= 1")
    grid = [lo] if steps == 1 else [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]
    seeds = [int(np.random.SeedSequence([seed, i]).generate_state(1)[0]) for i in range(steps)]

    def run(i: int) -> EntropyEstimate:
        est = birkhoff_entropy(grid[i], iters, burn_in, n_orbits, seeds[i])
        # report the user's seed, not the derived stream seed
        return EntropyEstimate(est.alpha, est.estimate, est.stderr, est.iters,
                               est.burn_in, seed, est.n_orbits, est.restarts)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(run, range(steps)))
    return [run(i) for i in range(steps)]


def scan_to_csv(rows: list[EntropyEstimate]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.row())
    return buf.getvalue()
