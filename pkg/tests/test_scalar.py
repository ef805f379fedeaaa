"""Exact Q(q) arithmetic: frozen examples, field axioms, grammar round-trips."""

import random
from fractions import Fraction

import pytest

from qsigma.scalar import (
    ONE,
    ZERO,
    LaurentFraction,
    LaurentPoly,
    ScalarError,
    parse,
    q_int,
    q_power,
    render,
)


# -- independent long-division oracle ---------------------------------------
# Ordinary polynomial division over Q, written from scratch here so the
# expected values below do not depend on the library's gcd machinery.


def _divide_exact(num, den):
    """num, den: coefficient lists (index = exponent).  Exact quotient or None."""
    num = [Fraction(v) for v in num]
    den = [Fraction(v) for v in den]
    while den and den[-1] == 0:
        den.pop()
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    work = list(num)
    for k in range(len(num) - len(den), -1, -1):
        c = work[k + len(den) - 1] / den[-1]
        out[k] = c
        for i, dv in enumerate(den):
            work[k + i] -= c * dv
    if any(work):
        return None
    return out


def _laurent_div_oracle(num_coeffs, den_coeffs):
    """Divide Laurent polynomials via a shift to ordinary polynomials."""
    shift_n = -min(num_coeffs)
    shift_d = -min(den_coeffs)
    num = [0] * (max(num_coeffs) + shift_n + 1)
    for e, v in num_coeffs.items():
        num[e + shift_n] = v
    den = [0] * (max(den_coeffs) + shift_d + 1)
    for e, v in den_coeffs.items():
        den[e + shift_d] = v
    quot = _divide_exact(num, den)
    assert quot is not None, "oracle division was not exact"
    return {e - shift_n + shift_d: v for e, v in enumerate(quot) if v}


def _lf(coeffs, den=None):
    return LaurentFraction(LaurentPoly(coeffs),
                           LaurentPoly(den) if den else LaurentPoly.one())


def test_inverse_pair():
    assert (q_power(1) * q_power(-1)).is_one()


def test_self_division():
    a = q_power(1) - q_power(-1)
    assert (a / a).is_one()


def test_long_division_example():
    # (q^2 - q^-2) / (q - q^-1) -> q + q^-1, frozen via the independent oracle
    expected = _laurent_div_oracle({2: 1, -2: -1}, {1: 1, -1: -1})
    assert expected == {1: 1, -1: 1}
    got = _lf({2: 1, -2: -1}) / _lf({1: 1, -1: -1})
    assert got == _lf(expected)


def test_q_power_examples():
    assert q_power(0).is_one()
    assert q_power(2) == _lf({2: 1})
    assert q_power(-2) == _lf({-2: 1})


def test_q_int_examples():
    assert q_int(0, 1).is_zero()
    assert q_int(1, 1).is_one()
    expected = _laurent_div_oracle({2: 1, -2: -1}, {1: 1, -1: -1})
    assert q_int(2, 1) == _lf(expected)
    # doubled symmetrizer: [2]_{q^2} = q^2 + q^-2
    assert q_int(2, 2) == q_power(2) + q_power(-2)


def test_specialize_examples():
    assert (q_power(1) + q_power(-1)).specialize(Fraction(2)) == Fraction(5, 2)
    assert ONE.specialize(Fraction(7, 3)) == 1
    val = (_lf({2: 1, -2: -1}) / _lf({1: 1, -1: -1})).specialize(Fraction(2))
    assert val == Fraction(5, 2)


def test_specialize_bad_points():
    for bad in (0, 1, -1):
        with pytest.raises(ScalarError):
            q_power(1).specialize(Fraction(bad))
    pole = ONE / (q_power(1) - LaurentFraction.from_int(2))
    with pytest.raises(ScalarError):
        pole.specialize(Fraction(2))
    assert pole.specialize(Fraction(7, 3)) == Fraction(3)


def test_division_by_zero():
    with pytest.raises(ScalarError):
        ONE / ZERO
    with pytest.raises(ScalarError):
        LaurentFraction(LaurentPoly.one(), LaurentPoly.zero())


def test_canonical_form():
    # content cancels, denominator gains positive leading coefficient
    assert _lf({1: 2}, {0: 2}) == q_power(1)
    assert _lf({1: 1, 0: -1}, {1: -1, 0: 1}) == -ONE
    two_q = _lf({1: 6, 0: 6}, {0: 2})
    assert two_q == _lf({1: 3, 0: 3})
    # denominator lowest exponent is zero
    f = _lf({0: 1}, {3: 1})
    assert f == q_power(-3)


def _random_fraction(rng):
    def rand_poly():
        coeffs = {}
        for _ in range(rng.randint(1, 3)):
            coeffs[rng.randint(-3, 3)] = rng.randint(-4, 4)
        p = LaurentPoly(coeffs)
        return p if not p.is_zero() else LaurentPoly.one()

    return LaurentFraction(rand_poly(), rand_poly())


def test_field_axioms_randomized():
    rng = random.Random(20240811)
    for _ in range(120):
        a, b, c = (_random_fraction(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        assert (a - a).is_zero()
        if not a.is_zero():
            assert (a * (ONE / a)).is_one()


def test_specialize_is_ring_homomorphism():
    rng = random.Random(7)
    pt = Fraction(7, 3)
    for _ in range(60):
        a, b = _random_fraction(rng), _random_fraction(rng)
        assert (a * b).specialize(pt) == a.specialize(pt) * b.specialize(pt)
        assert (a + b).specialize(pt) == a.specialize(pt) + b.specialize(pt)


def test_render_parse_specific_strings():
    assert parse("q^2 - 1 + q^-2") == q_power(2) - ONE + q_power(-2)
    assert parse("(q^2-1)/(q+1)") == (q_power(2) - ONE) / (q_power(1) + ONE)
    assert parse("3q^2") == q_power(2) * LaurentFraction.from_int(3)
    assert parse("-q") == -q_power(1)
    assert parse("5/2") == LaurentFraction.from_rational(Fraction(5, 2))


def test_render_parse_round_trip_randomized():
    rng = random.Random(99)
    for _ in range(80):
        a = _random_fraction(rng)
        assert parse(render(a)) == a


def test_render_shape():
    assert render(q_power(2) - ONE + q_power(-2)) == "q^2 - 1 + q^-2"
    f = (q_power(2) - ONE) / (q_power(1) - ONE)   # reduces to q + 1
    assert render(f) == "q + 1"
    g = ONE / (q_power(1) + ONE)
    assert render(g) == "(1)/(q + 1)"
    assert render(ZERO) == "0"
