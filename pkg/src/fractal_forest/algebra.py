"""Exact trivariate polynomial arithmetic over the weight variables a, b, c.

Two representations are used throughout the package:

* ``TriPoly`` -- expanded sparse form, a map from exponent triples to
  arbitrary-precision integer coefficients.  Supports ring arithmetic,
  partial derivatives and exact evaluation at rational weights.
* ``FactoredPoly`` -- a product ``2^e2 * 3^e3 * 5^e5 * prod base_i^exp_i``
  with big-integer exponents.  The closed forms of the generating
  functions live here, because their exponents grow like 3^n and an
  expanded form is hopeless past the first few levels.

Rationals are ``fractions.Fraction`` (exact, arbitrary precision).
High-precision real work (logs of astronomically large exact values)
goes through mpmath.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import CapabilityError

VARS = ("a", "b", "c")

#: default seed for every randomized identity test, for reproducibility
DEFAULT_SEED = 1729

#: numerators/denominators of random sample points stay below this bound
SAMPLE_BOUND = 97

#: working precision (decimal digits) for log-space evaluation
LOG_DPS = 60

#: refuse to expand factored products past this total degree
EXPANSION_DEGREE_CAP = 60


@dataclass(frozen=True)
class Weights:
    """An exact weight assignment to the three edge labels."""

    a: Fraction
    b: Fraction
    c: Fraction

    @classmethod
    def of(cls, a, b, c) -> "Weights":
        return cls(Fraction(a), Fraction(b), Fraction(c))

    @classmethod
    def ones(cls) -> "Weights":
        return cls.of(1, 1, 1)

    @classmethod
    def parse(cls, sa: str, sb: str, sc: str) -> "Weights":
        """Parse weights given as exact rational strings like ``3/7`` or ``2``.

        Floats are rejected: exactness is end to end.
        """
        return cls(_parse_rational(sa), _parse_rational(sb), _parse_rational(sc))

    def __getitem__(self, label: str) -> Fraction:
        if label not in VARS:
            raise ValueError(f"unknown label {label!r}")
        return getattr(self, label)

    def as_tuple(self):
        return (self.a, self.b, self.c)

    def all_positive(self) -> bool:
        return self.a > 0 and self.b > 0 and self.c > 0

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def _parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"weights must be exact rationals like '3/7', got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational {s!r}: {exc}") from None


class TriPoly:
    """Sparse trivariate polynomial with integer coefficients.

    Terms are stored as ``{(i, j, k): coeff}`` meaning ``coeff * a^i b^j c^k``;
    zero coefficients are never kept.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff:
                    t[tuple(exps)] = coeff
        self.terms = t

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "TriPoly":
        return cls()

    @classmethod
    def const(cls, n: int) -> "TriPoly":
        return cls({(0, 0, 0): int(n)})

    @classmethod
    def var(cls, name: str) -> "TriPoly":
        i = VARS.index(name)
        e = [0, 0, 0]
        e[i] = 1
        return cls({tuple(e): 1})

    @classmethod
    def variables(cls):
        return tuple(cls.var(v) for v in VARS)

    # -- ring operations ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TriPoly):
            return other
        if isinstance(other, int):
            return TriPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self.terms)
        for e, c in other.terms.items():
            nc = t.get(e, 0) + c
            if nc:
                t[e] = nc
            else:
                t.pop(e, None)
        return TriPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return TriPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                nc = t.get(e, 0) + c1 * c2
                if nc:
                    t[e] = nc
                else:
                    del t[e]
        return TriPoly(t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = TriPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(e == (0, 0, 0) for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def evaluate(self, w: Weights) -> Fraction:
        total = Fraction(0)
        for (i, j, k), c in self.terms.items():
            total += c * w.a**i * w.b**j * w.c**k
        return total

    def derivative(self, label: str) -> "TriPoly":
        idx = VARS.index(label)
        t = {}
        for e, c in self.terms.items():
            if e[idx] == 0:
                continue
            ne = list(e)
            ne[idx] -= 1
            t[tuple(ne)] = t.get(tuple(ne), 0) + c * e[idx]
        return TriPoly(t)

    # -- canonical text and JSON ----------------------------------------

    def sorted_terms(self):
        """Terms in graded-lex order: higher total degree first, lex ties."""
        return sorted(
            self.terms.items(), key=lambda ec: (-sum(ec[0]), tuple(-x for x in ec[0]))
        )

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if p == 1 else f"{v}^{p}" for v, p in zip(VARS, e) if p > 0
            )
            if mono:
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {
            "type": "tripoly",
            "terms": [[list(e), str(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data) -> "TriPoly":
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("type") != "tripoly":
            raise ValueError("not a serialized polynomial")
        return cls({tuple(e): int(c) for e, c in data["terms"]})

    def __repr__(self):
        return f"TriPoly({self.text()})"


class FactoredPoly:
    """Product form ``2^e2 3^e3 5^e5 * prod base_i^exp_i`` with huge exponents.

    Bases are nonconstant ``TriPoly`` values and exponents are positive
    integers; factors with exponent zero are dropped at construction.
    """

    __slots__ = ("primes", "factors")

    def __init__(self, primes=None, factors=None):
        self.primes = {2: 0, 3: 0, 5: 0}
        if primes:
            for p, e in primes.items():
                p = int(p)
                if p not in self.primes:
                    raise ValueError(f"unsupported prime prefactor {p}")
                if e < 0:
                    raise ValueError("prime exponents must be nonnegative")
                self.primes[p] = int(e)
        self.factors = []
        for base, exp in factors or []:
            if exp == 0:
                continue
            if exp < 0:
                raise ValueError("factor exponents must be positive")
            if base.is_constant():
                raise ValueError("factor bases must be nonconstant")
            self.factors.append((base, int(exp)))

    @classmethod
    def one(cls) -> "FactoredPoly":
        return cls()

    @classmethod
    def of(cls, base: TriPoly) -> "FactoredPoly":
        return cls(factors=[(base, 1)])

    def evaluate(self, w: Weights) -> Fraction:
        """Exact value; never expands.  Beware: the result itself may be huge."""
        value = Fraction(
            2 ** self.primes[2] * 3 ** self.primes[3] * 5 ** self.primes[5]
        )
        for base, exp in self.factors:
            value *= base.evaluate(w) ** exp
        return value

    def log_evaluate(self, w: Weights) -> mpmath.mpf:
        """Natural log of the value at positive weights, in high precision."""
        if not w.all_positive():
            raise ValueError("log evaluation requires strictly positive weights")
        with mpmath.workdps(LOG_DPS):
            total = mpmath.mpf(0)
            for p in (2, 3, 5):
                if self.primes[p]:
                    total += self.primes[p] * mpmath.log(p)
            for base, exp in self.factors:
                v = base.evaluate(w)
                if v <= 0:
                    raise ValueError("factor base not positive at these weights")
                total += exp * _log_fraction(v)
            return +total

    def expand(self, degree_cap: int = EXPANSION_DEGREE_CAP) -> TriPoly:
        degree = sum(base.total_degree() * exp for base, exp in self.factors)
        if degree > degree_cap:
            raise CapabilityError(
                f"expansion would reach total degree {degree} > cap {degree_cap}"
            )
        out = TriPoly.const(
            2 ** self.primes[2] * 3 ** self.primes[3] * 5 ** self.primes[5]
        )
        for base, exp in self.factors:
            out = out * base**exp
        return out

    def text(self) -> str:
        parts = [
            f"{p}^{e}" for p, e in sorted(self.primes.items()) if e
        ]
        for base, exp in self.factors:
            parts.append(f"({base.text()})^{exp}")
        return " * ".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {
            "type": "factored",
            "primes": {str(p): str(e) for p, e in sorted(self.primes.items())},
            "factors": [[base.to_json(), str(exp)] for base, exp in self.factors],
        }

    @classmethod
    def from_json(cls, data) -> "FactoredPoly":
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("type") != "factored":
            raise ValueError("not a serialized factored polynomial")
        return cls(
            primes={int(p): int(e) for p, e in data["primes"].items()},
            factors=[(TriPoly.from_json(b), int(e)) for b, e in data["factors"]],
        )

    def __repr__(self):
        return f"FactoredPoly({self.text()})"


def _log_fraction(q: Fraction) -> mpmath.mpf:
    return mpmath.log(mpmath.mpf(q.numerator)) - mpmath.log(mpmath.mpf(q.denominator))


# -- module-level operations ------------------------------------------------


def poly_eval(p, w: Weights) -> Fraction:
    """Exact value of an expanded or factored polynomial at rational weights."""
    return p.evaluate(w)


def poly_log_eval(p, w: Weights) -> mpmath.mpf:
    """log of the value at strictly positive weights; factored forms never expand."""
    if isinstance(p, FactoredPoly):
        return p.log_evaluate(w)
    if not w.all_positive():
        raise ValueError("log evaluation requires strictly positive weights")
    v = p.evaluate(w)
    if v <= 0:
        raise ValueError("value not positive at these weights")
    with mpmath.workdps(LOG_DPS):
        return +_log_fraction(v)


def poly_derivative(p: TriPoly, label: str) -> TriPoly:
    return p.derivative(label)


def random_rational(rng: random.Random, positive: bool = True) -> Fraction:
    """Random rational with small numerator/denominator (bounded by 97)."""
    num = rng.randint(1, SAMPLE_BOUND)
    den = rng.randint(1, SAMPLE_BOUND)
    if not positive and rng.random() < 0.5:
        num = -num
    return Fraction(num, den)


def random_weights(rng: random.Random, distinct: bool = True) -> Weights:
    while True:
        w = Weights(
            random_rational(rng), random_rational(rng), random_rational(rng)
        )
        if not distinct or (w.a != w.b and w.b != w.c and w.a != w.c):
            return w


def poly_equal_by_sampling(p, q, trials: int = 20, seed: int = DEFAULT_SEED) -> bool:
    """Probabilistic identity test at random rational points.

    Points have pairwise distinct coordinates so that symmetric accidents
    cannot mask a difference; the seed fixes the 'random' points.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    for _ in range(trials):
        w = random_weights(rng)
        if p.evaluate(w) != q.evaluate(w):
            return False
    return True
