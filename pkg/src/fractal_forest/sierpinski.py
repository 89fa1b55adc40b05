"""Spanning-tree and corner-forest generating functions on the gaskets.

Three labelling models share the same machinery:

* rotational -- bundle (T, S, Q): trees, 2-forests separating one corner
  (independent of which, by symmetry), 3-forests separating all corners.
* directional and schreier -- bundle (T, U, R, L, Q) where U, R, L are the
  2-forests isolating the top, right and left corner respectively.

Every bundle runs in one of two modes: symbolic (TriPoly components,
capped at low levels because expanded sizes explode like 3^n) or
evaluated (exact rationals at a fixed weight triple).  Closed forms are
FactoredPoly products; their evaluation at a point iterates the
polynomial maps on values instead of on symbols, which is exact and
cheap at any level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .algebra import LOG_DPS, FactoredPoly, TriPoly, Weights
from .errors import CapabilityError

SYMBOLIC_LEVEL_CAP = 3
EVALUATED_LEVEL_CAP = 12
ITERATE_SYMBOLIC_CAP = 8  # F/G iterates double in degree per step


@dataclass(frozen=True)
class RotBundle:
    level: int
    T: object
    S: object
    Q: object
    weights: Weights | None = None  # None means symbolic components


@dataclass(frozen=True)
class FiveBundle:
    level: int
    model: str  # directional | schreier | hanoi
    T: object
    U: object
    R: object
    L: object
    Q: object
    weights: Weights | None = None


@dataclass(frozen=True)
class CountsTriple:
    tau: int
    s: int
    q: int


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"exponent {num}/{den} is not an integer")
    return q


def _check_step(level: int, weights) -> None:
    cap = EVALUATED_LEVEL_CAP if weights is not None else SYMBOLIC_LEVEL_CAP
    if level + 1 > cap:
        mode = "evaluated" if weights is not None else "symbolic"
        raise CapabilityError(f"{mode} bundles are capped at level {cap}")


def _abc(w: Weights | None):
    if w is None:
        return TriPoly.variables()
    return w.a, w.b, w.c


# -- rotational model -------------------------------------------------------


def rot_initial(w: Weights | None = None) -> RotBundle:
    a, b, c = _abc(w)
    e = a * b + a * c + b * c
    s = a + b + 3 * c
    return RotBundle(1, 3 * (a + b) * e**2, (a + b) * s * e, (a + b) * s**2, w)


def rot_step(bundle: RotBundle) -> RotBundle:
    _check_step(bundle.level, bundle.weights)
    T, S, Q = bundle.T, bundle.S, bundle.Q
    return RotBundle(
        bundle.level + 1,
        6 * T**2 * S,
        7 * T * S**2 + T**2 * Q,
        12 * T * S * Q + 14 * S**3,
        bundle.weights,
    )


def rot_bundle(n: int, w: Weights | None = None) -> RotBundle:
    if n < 1:
        raise ValueError("level must be >= 1")
    bundle = rot_initial(w)
    for _ in range(n - 1):
        bundle = rot_step(bundle)
    return bundle


def _rot_bases():
    a, b, c = TriPoly.variables()
    return a + b, a + b + 3 * c, a * b + a * c + b * c


def rot_closed(n: int) -> RotBundle:
    """Closed-form factored bundle; exponents are exact big integers."""
    if n < 1:
        raise ValueError("level must be >= 1")
    p, s, e = _rot_bases()
    pw3 = 3 ** (n - 1)
    e2 = _exact_div(pw3 - 1, 2)
    T = FactoredPoly(
        {2: e2, 3: _exact_div(3**n + 2 * n - 1, 4), 5: _exact_div(pw3 - 2 * n + 1, 4)},
        [(p, pw3), (s, _exact_div(pw3 - 1, 2)), (e, _exact_div(3**n + 1, 2))],
    )
    S = FactoredPoly(
        {2: e2, 3: _exact_div(3**n - 2 * n - 1, 4), 5: _exact_div(pw3 + 2 * n - 3, 4)},
        [(p, pw3), (s, _exact_div(pw3 + 1, 2)), (e, _exact_div(3**n - 1, 2))],
    )
    Q = FactoredPoly(
        {2: e2, 3: _exact_div(3**n - 6 * n + 3, 4), 5: _exact_div(pw3 + 6 * n - 7, 4)},
        [(p, pw3), (s, _exact_div(pw3 + 3, 2)), (e, _exact_div(3**n - 3, 2))],
    )
    return RotBundle(n, T, S, Q, None)


def rot_counts(n: int) -> CountsTriple:
    """Tree / 2-forest / 3-forest counts from the prime-exponent formulas."""
    if n < 1:
        raise ValueError("level must be >= 1")
    p2 = 2 ** _exact_div(3**n - 1, 2)
    tau = p2 * 3 ** _exact_div(3 ** (n + 1) + 2 * n + 1, 4) * 5 ** _exact_div(
        3**n - 2 * n - 1, 4
    )
    s = p2 * 3 ** _exact_div(3 ** (n + 1) - 2 * n - 3, 4) * 5 ** _exact_div(
        3**n + 2 * n - 1, 4
    )
    q = p2 * 3 ** _exact_div(3 ** (n + 1) - 6 * n - 3, 4) * 5 ** _exact_div(
        3**n + 6 * n - 1, 4
    )
    return CountsTriple(tau, s, q)


def rot_vertex_count(n: int) -> int:
    return 3 * (3**n + 1) // 2


def rot_growth() -> float:
    """Asymptotic growth constant of the rotational tree counts."""
    with mpmath.workdps(LOG_DPS):
        return float(
            mpmath.log(2) / 3 + mpmath.log(3) / 2 + mpmath.log(5) / 6
        )


# -- the two polynomial maps and their iterates ------------------------------


def F_map(x, y, z):
    return (
        3 * x * x + 3 * x * z + 3 * x * y + y * z,
        3 * y * y + 3 * x * y + 3 * y * z + x * z,
        3 * z * z + 3 * x * z + 3 * y * z + x * y,
    )


def G_map(x, y, z):
    return (
        x * x + 2 * y * z + x * y + x * z,
        y * y + 2 * x * z + x * y + y * z,
        z * z + 2 * x * y + x * z + y * z,
    )


def f_of(x, y, z):
    return (
        3 * x * x * y
        + 3 * x * y * y
        + 3 * x * x * z
        + 3 * x * z * z
        + 3 * y * y * z
        + 3 * y * z * z
        + 7 * x * y * z
    )


def g_of(x, y, z):
    return (
        3 * x * x * y
        + 3 * x * y * y
        + 3 * x * x * z
        + 3 * x * z * z
        + 3 * y * y * z
        + 3 * y * z * z
        + 7 * x * y * z
    )


def _iterate(mapping, triple, times: int):
    for _ in range(times):
        triple = mapping(*triple)
    return triple


def _iterate_symbolic(mapping, times: int):
    if times > ITERATE_SYMBOLIC_CAP:
        raise CapabilityError(
            f"symbolic map iterates are capped at {ITERATE_SYMBOLIC_CAP}"
        )
    return _iterate(mapping, TriPoly.variables(), times)


def phi_poly(k: int) -> TriPoly:
    """k-th factor polynomial of the directional closed forms."""
    a, b, c = TriPoly.variables()
    if k == 1:
        return a * b + a * c + b * c
    x, y, z = _iterate_symbolic(F_map, k - 2)
    return x + y + z


def psi_poly(k: int) -> TriPoly:
    """k-th factor polynomial of the schreier closed forms."""
    a, b, c = TriPoly.variables()
    if k == 1:
        return a * b + a * c + b * c
    x, y, z = _iterate_symbolic(G_map, k - 2)
    return x + y + z


# -- directional and schreier recursions -------------------------------------


def _five_initial(model: str, w: Weights | None) -> FiveBundle:
    a, b, c = _abc(w)
    one = Fraction(1) if w is not None else TriPoly.const(1)
    return FiveBundle(1, model, a * b + a * c + b * c, b, a, c, one, w)


def dir_initial(w: Weights | None = None) -> FiveBundle:
    return _five_initial("directional", w)


def schreier_initial(w: Weights | None = None) -> FiveBundle:
    return _five_initial("schreier", w)


def dir_step(bundle: FiveBundle) -> FiveBundle:
    _check_step(bundle.level, bundle.weights)
    T, U, R, L, Q = bundle.T, bundle.U, bundle.R, bundle.L, bundle.Q
    return FiveBundle(
        bundle.level + 1,
        bundle.model,
        2 * T**2 * (U + R + L),
        T * U * (2 * R + 2 * L + 3 * U) + T**2 * Q,
        T * R * (2 * L + 2 * U + 3 * R) + T**2 * Q,
        T * L * (2 * R + 2 * U + 3 * L) + T**2 * Q,
        4 * T * Q * (U + R + L)
        + 2 * (U**2 * (R + L) + R**2 * (L + U) + L**2 * (R + U))
        + 2 * U * R * L,
        bundle.weights,
    )


def schreier_step(bundle: FiveBundle) -> FiveBundle:
    _check_step(bundle.level, bundle.weights)
    T, U, R, L, Q = bundle.T, bundle.U, bundle.R, bundle.L, bundle.Q
    return FiveBundle(
        bundle.level + 1,
        bundle.model,
        2 * T**2 * (U + R + L),
        T * (3 * L * R + U * R + U * L + 2 * U**2) + T**2 * Q,
        T * (3 * U * L + U * R + R * L + 2 * R**2) + T**2 * Q,
        T * (3 * U * R + L * U + R * L + 2 * L**2) + T**2 * Q,
        4 * T * Q * (U + R + L)
        + 2 * (U**2 * (L + R) + R**2 * (U + L) + L**2 * (R + U))
        + 2 * U * R * L,
        bundle.weights,
    )


def dir_bundle(n: int, w: Weights | None = None) -> FiveBundle:
    if n < 1:
        raise ValueError("level must be >= 1")
    bundle = dir_initial(w)
    for _ in range(n - 1):
        bundle = dir_step(bundle)
    return bundle


def schreier_bundle(n: int, w: Weights | None = None) -> FiveBundle:
    if n < 1:
        raise ValueError("level must be >= 1")
    bundle = schreier_initial(w)
    for _ in range(n - 1):
        bundle = schreier_step(bundle)
    return bundle


# -- closed forms for the five-function models --------------------------------

# Each model is described by its factor family, its map, its final-factor
# component order (U, R, L pick different components of the iterate) and
# the exponent laws of the prefactor 2^e and of each factor.


def _dir_laws():
    return {
        "factor": phi_poly,
        "map": F_map,
        "tail": f_of,
        "T2": lambda n: _exact_div(3**n + 6 * n - 9, 12),
        "Texp": lambda n, k: _exact_div(3 ** (n - k + 1) + 3, 6),
        "U2": lambda n: _exact_div(3**n - 6 * n + 3, 12),
        "Uexp": lambda n, k: _exact_div(3 ** (n - k + 1) - 3, 6),
        "Q2": lambda n: _exact_div(3**n - 18 * n + 39, 12),
        "Qexp": lambda n, k: _exact_div(3 ** (n - k + 1) - 9, 6),
    }


def _schreier_laws():
    return {
        "factor": psi_poly,
        "map": G_map,
        "tail": g_of,
        "T2": lambda n: _exact_div(3 ** (n - 1) - 1, 2),
        "Texp": lambda n, k: _exact_div(3 ** (n - k) + 1, 2),
        "U2": lambda n: _exact_div(3 ** (n - 1) - 1, 2),
        "Uexp": lambda n, k: _exact_div(3 ** (n - k) - 1, 2),
        "Q2": lambda n: _exact_div(3 ** (n - 1) - 1, 2),
        "Qexp": lambda n, k: _exact_div(3 ** (n - k) - 3, 2),
    }


_MODEL_LAWS = {"directional": _dir_laws, "schreier": _schreier_laws}


def _closed_five(model: str, n: int) -> FiveBundle:
    if n < 1:
        raise ValueError("level must be >= 1")
    laws = _MODEL_LAWS[model]()
    a, b, c = TriPoly.variables()
    factors = [laws["factor"](k) for k in range(1, n + 1)]
    T = FactoredPoly(
        {2: laws["T2"](n)},
        [(factors[k - 1], laws["Texp"](n, k)) for k in range(1, n + 1)],
    )
    if n == 1:
        U, R, L = FactoredPoly.of(b), FactoredPoly.of(a), FactoredPoly.of(c)
    else:
        tail = _iterate_symbolic(laws["map"], n - 1)
        shared = [(factors[k - 1], laws["Uexp"](n, k)) for k in range(1, n)]
        U = FactoredPoly({2: laws["U2"](n)}, shared + [(tail[1], 1)])
        R = FactoredPoly({2: laws["U2"](n)}, shared + [(tail[0], 1)])
        L = FactoredPoly({2: laws["U2"](n)}, shared + [(tail[2], 1)])
    if n == 1:
        Q = FactoredPoly.one()
    elif n == 2:
        Q = FactoredPoly({2: 1}, [(laws["tail"](a, b, c), 1)])
    else:
        qtail = laws["tail"](*_iterate_symbolic(laws["map"], n - 2))
        Q = FactoredPoly(
            {2: laws["Q2"](n)},
            [(factors[k - 1], laws["Qexp"](n, k)) for k in range(1, n - 1)]
            + [(qtail, 1)],
        )
    return FiveBundle(n, model, T, U, R, L, Q, None)


def dir_closed(n: int) -> FiveBundle:
    return _closed_five("directional", n)


def schreier_closed(n: int) -> FiveBundle:
    return _closed_five("schreier", n)


def _closed_five_value(model: str, n: int, w: Weights) -> FiveBundle:
    """Closed forms evaluated exactly at a point, iterating the map on values."""
    if n < 1:
        raise ValueError("level must be >= 1")
    if n > EVALUATED_LEVEL_CAP:
        raise CapabilityError(f"evaluated closed forms capped at {EVALUATED_LEVEL_CAP}")
    laws = _MODEL_LAWS[model]()
    mapping = laws["map"]
    iterates = [(w.a, w.b, w.c)]
    for _ in range(n - 1):
        iterates.append(mapping(*iterates[-1]))

    def factor_value(k):
        if k == 1:
            return w.a * w.b + w.a * w.c + w.b * w.c
        x, y, z = iterates[k - 2]
        return x + y + z

    fvals = [factor_value(k) for k in range(1, n + 1)]
    T = Fraction(2) ** laws["T2"](n)
    for k in range(1, n + 1):
        T *= fvals[k - 1] ** laws["Texp"](n, k)
    if n == 1:
        U, R, L = w.b, w.a, w.c
    else:
        shared = Fraction(2) ** laws["U2"](n)
        for k in range(1, n):
            shared *= fvals[k - 1] ** laws["Uexp"](n, k)
        tail = iterates[n - 1]
        U, R, L = shared * tail[1], shared * tail[0], shared * tail[2]
    if n == 1:
        Q = Fraction(1)
    elif n == 2:
        Q = 2 * laws["tail"](w.a, w.b, w.c)
    else:
        Q = Fraction(2) ** laws["Q2"](n)
        for k in range(1, n - 1):
            Q *= fvals[k - 1] ** laws["Qexp"](n, k)
        Q *= laws["tail"](*iterates[n - 2])
    return FiveBundle(n, model, T, U, R, L, Q, w)


def dir_closed_value(n: int, w: Weights) -> FiveBundle:
    return _closed_five_value("directional", n, w)


def schreier_closed_value(n: int, w: Weights) -> FiveBundle:
    return _closed_five_value("schreier", n, w)
