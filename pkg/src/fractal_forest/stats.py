"""Label statistics of a uniform random spanning tree.

For the rotational gasket the tree generating function factors into a
fixed set of bases with huge exponents, so exact means and variances of
the per-label edge counts come from log-derivatives of the factored form:
for T = C * prod b_i^(e_i),

    mean   = sum_i e_i * b_i'(1) / b_i(1)
    (log T)'' = sum_i e_i * (b_i''(1) b_i(1) - b_i'(1)^2) / b_i(1)^2
    variance = (log T)'' + mean.

The same quantities exist in closed form for the rotational model; both
routes are exposed and must agree exactly.  The normalized count is
asymptotically standard normal; its moment generating function is
evaluated in log space (exponents grow like 3^n) and compared against
exp(t^2/2) on a fixed grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .algebra import LOG_DPS, FactoredPoly, TriPoly, Weights
from .errors import CapabilityError
from . import hanoi as hanoi_gf
from . import sierpinski as sgf

ROTATIONAL_CLOSED_CAP = 20
SYMBOLIC_STAT_CAP = 3

MODELS = (
    "sierpinski-rotational",
    "sierpinski-directional",
    "sierpinski-schreier",
    "hanoi",
)


@dataclass(frozen=True)
class LabelStat:
    n: int
    label: str
    mean: Fraction
    variance: Fraction


def _ones():
    return Weights.ones()


def _tree_gf(model: str, n: int):
    if model == "sierpinski-rotational":
        if n > ROTATIONAL_CLOSED_CAP:
            raise CapabilityError(
                f"rotational statistics capped at level {ROTATIONAL_CLOSED_CAP}"
            )
        return sgf.rot_closed(n).T
    if n > SYMBOLIC_STAT_CAP:
        raise CapabilityError(
            f"{model} statistics need symbolic bundles, capped at level"
            f" {SYMBOLIC_STAT_CAP}"
        )
    if model == "sierpinski-directional":
        return sgf.dir_bundle(n).T
    if model == "sierpinski-schreier":
        return sgf.schreier_bundle(n).T
    if model == "hanoi":
        return hanoi_gf.hanoi_bundle(n).T
    raise ValueError(f"unknown model {model!r}")


def _log_derivs(T, label: str):
    """(first, second) derivative of log T along one label, at all-ones."""
    w = _ones()
    if isinstance(T, FactoredPoly):
        first = Fraction(0)
        second = Fraction(0)
        for base, exp in T.factors:
            v = base.evaluate(w)
            d1 = base.derivative(label).evaluate(w)
            d2 = base.derivative(label).derivative(label).evaluate(w)
            first += exp * d1 / v
            second += exp * (d2 * v - d1 * d1) / (v * v)
        return first, second
    if isinstance(T, TriPoly):
        v = T.evaluate(w)
        d1 = T.derivative(label).evaluate(w)
        d2 = T.derivative(label).derivative(label).evaluate(w)
        return d1 / v, (d2 * v - d1 * d1) / (v * v)
    raise TypeError("expected a TriPoly or FactoredPoly")


def label_mean_gf(model: str, n: int, label: str) -> Fraction:
    """Mean number of label-edges in a random spanning tree, exactly."""
    return _log_derivs(_tree_gf(model, n), label)[0]


def label_variance_gf(model: str, n: int, label: str) -> Fraction:
    first, second = _log_derivs(_tree_gf(model, n), label)
    return second + first


def label_stat_closed(n: int, label: str) -> LabelStat:
    """Closed-form mean/variance for the rotational model."""
    if n < 1:
        raise ValueError("level must be >= 1")
    p = 3**n
    if label in ("a", "b"):
        mean = Fraction(16 * p + 7, 30)
        var = Fraction(199 * p + 28, 900)
    elif label == "c":
        mean = Fraction(13 * p + 1, 30)
        var = Fraction(34 * p - 2, 225)
    else:
        raise ValueError(f"unknown label {label!r}")
    return LabelStat(n, label, mean, var)


def mgf_normalized(n: int, t, label: str = "c") -> mpmath.mpf:
    """MGF of the normalized label count, evaluated in log space."""
    if n < 1:
        raise ValueError("level must be >= 1")
    with mpmath.workdps(LOG_DPS):
        t = mpmath.mpf(t)
        p = 3**n
        if label == "c":
            spread = mpmath.sqrt(mpmath.mpf(34 * p - 2))  # 15 * sigma
            v = 15 * t / spread
            loggf = (
                -(13 * p + 1) * t / (2 * spread)
                + Fraction(p - 3, 6) * (mpmath.log(2 + 3 * mpmath.exp(v)) - mpmath.log(5))
                + Fraction(p + 1, 2) * (mpmath.log(1 + 2 * mpmath.exp(v)) - mpmath.log(3))
            )
        elif label in ("a", "b"):
            sigma = mpmath.sqrt(mpmath.mpf(199 * p + 28)) / 30
            mu = Fraction(16 * p + 7, 30)
            x = mpmath.exp(t / sigma)
            loggf = (
                -mpmath.mpf(mu.numerator) / mu.denominator * t / sigma
                + 3 ** (n - 1) * (mpmath.log(x + 1) - mpmath.log(2))
                + Fraction(3 ** (n - 1) - 1, 2)
                * (mpmath.log(x + 4) - mpmath.log(5))
                + Fraction(p + 1, 2) * (mpmath.log(2 * x + 1) - mpmath.log(3))
            )
        else:
            raise ValueError(f"unknown label {label!r}")
        return +mpmath.exp(loggf)


DEFAULT_GRID = tuple(Fraction(k, 2) for k in range(-4, 5))


def normality_gap(n: int, t_grid=DEFAULT_GRID, label: str = "c") -> float:
    """Max distance between the normalized MGF and exp(t^2/2) on a grid."""
    with mpmath.workdps(LOG_DPS):
        gap = mpmath.mpf(0)
        for t in t_grid:
            t = mpmath.mpf(t.numerator) / t.denominator if isinstance(t, Fraction) else mpmath.mpf(t)
            gap = max(gap, abs(mgf_normalized(n, t, label) - mpmath.exp(t * t / 2)))
        return float(gap)
