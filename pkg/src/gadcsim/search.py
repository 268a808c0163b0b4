"""Coarse grid search for parameter points where a protocol beats plain noise."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .protocols import baseline, run_protocol
from .states import family_state

DEFAULT_PARAM_GRID = tuple(np.round(np.linspace(0.1, 0.9, 9), 12))
DEFAULT_ALPHA_GRID = tuple(np.round(np.linspace(0.05, 0.95, 19), 12))


@dataclass(frozen=True)
class ImprovementWitness:
    protocol: str
    family: str
    measure: str
    nu: float
    eta: float
    w: float
    r: float
    branch: Optional[int]
    alpha_interval: tuple[float, float]
    alphas: tuple[float, ...]
    gains: tuple[float, ...]
    success_probabilities: tuple[float, ...]

    @property
    def max_gain(self) -> float:
        return max(self.gains)


def _first_run(mask: Sequence[bool]) -> Optional[tuple[int, int]]:
    start = None
    for i, ok in enumerate(mask):
        if ok and start is None:
            start = i
        elif not ok and start is not None:
            return start, i
    return (start, len(mask)) if start is not None else None


def find_improvement(protocol: str, family: str, measure: str = "concurrence", *,
                     threshold: float = 0.01, sign: int = 1,
                     param_grid: Sequence[float] = DEFAULT_PARAM_GRID,
                     alpha_grid: Sequence[float] = DEFAULT_ALPHA_GRID,
                     ) -> Optional[ImprovementWitness]:
    """First grid point (in nu, eta, w, r product order) with an improving alpha interval.

    A branch improves at alpha when its ``measure`` exceeds the noise-only value
    by at least ``threshold`` with nonzero success probability. The returned
    interval is the first contiguous run of improving grid alphas for that
    branch. ``w`` and ``r`` are only scanned for the weak protocol.
    """
    states = [family_state(family, a, sign) for a in alpha_grid]
    wr = itertools.product(param_grid, param_grid) if protocol == "weak" else [(0.0, 0.0)]
    for nu, eta, (w, r) in itertools.product(param_grid, param_grid, list(wr)):
        bases = [getattr(baseline(s, nu, eta), measure) for s in states]
        per_alpha = [run_protocol(protocol, s, nu, eta, w, r) for s in states]
        for b in range(len(per_alpha[0])):
            gains, probs = [], []
            for base, results in zip(bases, per_alpha):
                res = results[b]
                ok = not res.is_null and res.success_probability > 0.0
                gains.append(getattr(res, measure) - base if ok else -np.inf)
                probs.append(res.success_probability)
            run = _first_run([g >= threshold for g in gains])
            if run is None:
                continue
            lo, hi = run
            return ImprovementWitness(
                protocol, family, measure, float(nu), float(eta), float(w), float(r),
                per_alpha[0][b].branch, (float(alpha_grid[lo]), float(alpha_grid[hi - 1])),
                tuple(float(a) for a in alpha_grid[lo:hi]), tuple(gains[lo:hi]), tuple(probs[lo:hi]),
            )
    return None
