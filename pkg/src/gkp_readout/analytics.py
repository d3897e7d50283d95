"""Closed-form readout error probabilities, asymptotics, and the
optimizer for the interaction strength lambda."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq, minimize_scalar
from scipy.special import erfc

SQRT_PI = np.sqrt(np.pi)

# Leading-order coefficient of the improved-circuit error at optimal
# lambda: 5 pi^3 / 384 ~ 0.4036.
LEADING_ORDER_COEFF = 5 * np.pi**3 / 384


def p_err_homodyne_formula(delta: float) -> float:
    """Homodyne readout error erfc(sqrt(pi)/(2 delta))."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    return float(erfc(SQRT_PI / (2 * delta)))


def p_err_simple_formula(delta: float) -> float:
    """Simple-circuit error (1 - e^{-pi delta^2 / 4}) / 2."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    return 0.5 * (1.0 - np.exp(-np.pi * delta**2 / 4))


def p_err_improved_formula(delta: float, lam: float) -> float:
    """Improved-circuit error
    (1 - e^{-pi delta^2/4} (e^{-lambda^2/delta^2} + sin(sqrt(pi) lambda))) / 2.

    Exact reduction to the simple circuit at lambda = 0; derived for
    |lambda| << 1.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if abs(lam) > 0.3:
        warnings.warn(f"lambda = {lam} is outside the small-lambda regime")
    bracket = np.exp(-(lam**2) / delta**2) + np.sin(SQRT_PI * lam)
    return 0.5 * (1.0 - np.exp(-np.pi * delta**2 / 4) * bracket)


def lambda_seed(delta: float) -> float:
    """Small-delta approximation sqrt(pi) delta^2 / 2 of the optimum."""
    return SQRT_PI * delta**2 / 2


def _stationarity(lam: float, delta: float) -> float:
    return (2 * lam / delta**2) * np.exp(-(lam**2) / delta**2) - SQRT_PI * np.cos(SQRT_PI * lam)


def optimal_lambda(delta: float) -> float:
    """Root of (2 lambda/delta^2) e^{-lambda^2/delta^2} = sqrt(pi) cos(sqrt(pi) lambda)
    nearest the small-delta seed, to 1e-12."""
    if not 0 < delta <= 0.5:
        raise ValueError(f"delta must be in (0, 0.5], got {delta}")
    hi = 4 * SQRT_PI * delta**2
    grid = np.linspace(0.0, hi, 400)
    vals = _stationarity(grid, delta)
    for i in range(len(grid) - 1):
        if vals[i] < 0 <= vals[i + 1]:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                return float(brentq(_stationarity, grid[i], grid[i + 1],
                                    args=(delta,), xtol=1e-14, rtol=1e-15))
    raise RuntimeError(
        f"no minus-to-plus sign change of the stationarity condition in (0, {hi:.4g}) "
        f"at delta = {delta}; seed was {lambda_seed(delta):.4g}")


def optimal_lambda_by_minimization(delta: float) -> float:
    """Independent cross-check: golden-section minimization of the
    improved-circuit formula, finished with one parabolic-fit step to
    beat the flatness floor of pure sectioning."""
    hi = 4 * SQRT_PI * delta**2
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")

        def f(l):
            return p_err_improved_formula(delta, l)

        res = minimize_scalar(f, bracket=(0.0, lambda_seed(delta), hi),
                              method="golden", options={"xtol": 1e-12})
        x, h = float(res.x), 1e-5
        fm, f0, fp = f(x - h), f(x), f(x + h)
        return x + h * (fm - fp) / (2 * (fm - 2 * f0 + fp))


def p_err_leading_order(delta: float) -> float:
    """(5 pi^3 / 384) delta^6, the optimal-lambda error to lowest order."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    return LEADING_ORDER_COEFF * delta**6


def helstrom_formula(overlap: complex) -> float:
    """Minimum discrimination error (1 - sqrt(1 - |overlap|^2)) / 2."""
    ov2 = abs(overlap) ** 2
    if ov2 > 1 + 1e-12:
        raise ValueError(f"|overlap| = {abs(overlap)} exceeds 1")
    return 0.5 * (1.0 - np.sqrt(max(0.0, 1.0 - ov2)))


@dataclass(frozen=True)
class ErrorModelPoint:
    """Closed-form error probabilities at one (delta, lambda) point.

    Reported values are capped at 0.5 (beyond which a formula is outside
    its validity range); raw formula outputs are kept alongside.
    """

    delta: float
    lam: Optional[float] = None
    p_err_homodyne: float = 0.0
    p_err_simple: float = 0.0
    p_err_improved: float = 0.0
    p_err_helstrom: float = 0.0
    p_err_leading_order: float = 0.0
    raw: dict = None

    @classmethod
    def evaluate(cls, delta: float, lam: Optional[float] = None,
                 helstrom_overlap: complex = 0.0) -> "ErrorModelPoint":
        if lam is None:
            lam = optimal_lambda(delta)
        raw = {
            "p_err_homodyne": p_err_homodyne_formula(delta),
            "p_err_simple": p_err_simple_formula(delta),
            "p_err_improved": p_err_improved_formula(delta, lam),
            "p_err_helstrom": helstrom_formula(helstrom_overlap),
            "p_err_leading_order": p_err_leading_order(delta),
        }
        capped = {k: min(v, 0.5) for k, v in raw.items()}
        return cls(delta=delta, lam=lam, raw=raw, **capped)


def homodyne_crossover_db(lo_db: float = 7.0, hi_db: float = 12.0) -> float:
    """Squeezing (dB) where the optimized improved circuit and homodyne
    formulas intersect, by bisection on their log-ratio."""
    from .states import db_to_delta

    def gap(db):
        d = db_to_delta(db)
        return np.log(p_err_improved_formula(d, optimal_lambda(d))) - np.log(
            p_err_homodyne_formula(d))

    return float(brentq(gap, lo_db, hi_db, xtol=1e-10))
