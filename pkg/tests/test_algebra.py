import json
import random
from fractions import Fraction

import mpmath
import pytest

from fractal_forest.algebra import (
    FactoredPoly,
    TriPoly,
    Weights,
    poly_derivative,
    poly_equal_by_sampling,
    poly_eval,
    poly_log_eval,
)
from fractal_forest.errors import CapabilityError
from fractal_forest.sierpinski import rot_closed

A, B, C = TriPoly.variables()
ONES = Weights.ones()


def test_weights_parse_rationals_only():
    w = Weights.parse("3/7", "2", "1/2")
    assert w.a == Fraction(3, 7) and w.b == 2 and w.c == Fraction(1, 2)
    with pytest.raises(ValueError):
        Weights.parse("1.5", "1", "1")
    with pytest.raises(ValueError):
        Weights.parse("1/0", "1", "1")


def test_eval_examples():
    e = A * B + A * C + B * C
    assert poly_eval(e, ONES) == 3
    t1 = 3 * (A + B) * e**2
    assert poly_eval(t1, ONES) == 54
    factored = FactoredPoly({2: 1}, [(e, 2), (A + B + C, 1)])
    assert poly_eval(factored, ONES) == 54


def test_derivative_examples():
    e = A * B + A * C + B * C
    assert poly_derivative(e, "c") == A + B
    square = (2 * C + 1) ** 2
    assert poly_derivative(square, "c") == 8 * C + 4
    t1 = 3 * (A + B) * e**2
    assert poly_derivative(t1, "a").evaluate(ONES) == 99


def test_log_eval_examples():
    e = A * B + A * C + B * C
    v = poly_log_eval(FactoredPoly({2: 1}, [(e, 2), (A + B + C, 1)]), ONES)
    with mpmath.workdps(60):
        assert abs(v - mpmath.log(54)) < mpmath.mpf(10) ** -30
    assert poly_log_eval(TriPoly.const(1), ONES) == 0
    ratio = float(poly_log_eval(rot_closed(6).T, ONES)) / 1095
    assert abs(ratio - 1.0453) < 2e-4
    with pytest.raises(ValueError):
        poly_log_eval(e, Weights.of(-1, 1, 1))


def test_sampling_equality():
    p = (A + B) ** 2
    q = A**2 + 2 * A * B + B**2
    r = A**2 + A * B + B**2
    assert poly_equal_by_sampling(p, p, trials=5)
    assert poly_equal_by_sampling(p, q, trials=20)
    assert not poly_equal_by_sampling(p, r, trials=20)


def test_ring_axioms_on_random_polys():
    rng = random.Random(7)

    def rand_poly():
        terms = {}
        for _ in range(rng.randint(1, 6)):
            e = (rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3))
            terms[e] = rng.randint(-9, 9)
        return TriPoly(terms)

    for _ in range(25):
        p, q, r = rand_poly(), rand_poly(), rand_poly()
        assert (p + q) + r == p + (q + r)
        assert p + q == q + p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p * TriPoly.const(1) == p
        assert p + TriPoly.zero() == p


def test_factored_eval_matches_expansion():
    e = A * B + A * C + B * C
    f = FactoredPoly({2: 2, 3: 1, 5: 1}, [(e, 3), (A + B, 2)])
    expanded = f.expand()
    rng = random.Random(3)
    for _ in range(5):
        w = Weights(
            Fraction(rng.randint(1, 9)), Fraction(rng.randint(1, 9)), Fraction(rng.randint(1, 9))
        )
        assert f.evaluate(w) == expanded.evaluate(w)
    with pytest.raises(CapabilityError):
        FactoredPoly(factors=[(e, 40)]).expand()


def test_log_eval_agrees_with_exact_to_25_digits():
    t3 = rot_closed(3).T  # value at ones ~ 6.5e12, well under 1e200
    exact = t3.evaluate(ONES)
    with mpmath.workdps(60):
        approx = mpmath.exp(poly_log_eval(t3, ONES))
        rel = abs(approx - mpmath.mpf(exact.numerator)) / mpmath.mpf(exact.numerator)
        assert rel < mpmath.mpf(10) ** -25


def test_canonical_text_and_json_round_trip():
    p = 3 * A**2 * B - C + 5
    assert p.text() == "3*a^2*b - c + 5"
    assert TriPoly.zero().text() == "0"
    back = TriPoly.from_json(json.dumps(p.to_json()))
    assert back == p
    f = FactoredPoly({2: 4}, [(A + B, 3), (A * B + A * C + B * C, 2)])
    assert f.text() == "2^4 * (a + b)^3 * (a*b + a*c + b*c)^2"
    f2 = FactoredPoly.from_json(json.dumps(f.to_json()))
    assert f2.primes == f.primes
    assert [(b.terms, e) for b, e in f2.factors] == [(b.terms, e) for b, e in f.factors]


def test_factored_invariants_enforced():
    with pytest.raises(ValueError):
        FactoredPoly(factors=[(TriPoly.const(3), 2)])
    with pytest.raises(ValueError):
        FactoredPoly({7: 1})
    assert FactoredPoly(factors=[(A + B, 0)]).factors == []
