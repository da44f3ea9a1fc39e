import random
from fractions import Fraction

import pytest

from rho.scalars import QI, QQ, GaussianRational, field_by_name


def test_gaussian_arithmetic():
    i = QI.i
    assert i * i == QI.coerce(-1)
    a = GaussianRational(Fraction(1, 2), Fraction(3))
    b = GaussianRational(Fraction(2), Fraction(-1, 3))
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a * b == b * a
    assert bool(GaussianRational(0, 0)) is False
    assert QI.conj(a) == GaussianRational(Fraction(1, 2), Fraction(-3))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QI.one / GaussianRational(0, 0)


def test_rationality_predicates():
    assert QI.is_rational(QI.coerce(Fraction(7, 3)))
    assert not QI.is_rational(QI.i)
    assert QQ.is_rational(Fraction(-2, 5))
    assert QI.is_positive_real(QI.coerce(3))
    assert not QI.is_positive_real(QI.i)
    assert not QI.is_positive_real(QI.coerce(-1))


def test_coercion_rules():
    assert QQ.coerce(GaussianRational(Fraction(2), 0)) == Fraction(2)
    with pytest.raises(ValueError):
        QQ.coerce(GaussianRational(0, 1))
    assert field_by_name("Q") is QQ
    assert field_by_name("Q(i)") is QI
    with pytest.raises(ValueError):
        field_by_name("R")


def test_format_parse_round_trip_examples():
    for s in ["0", "1", "-1", "3/4", "-22/7", "i", "-i", "2*i", "-1/2*i",
              "1+i", "1-i", "3/4-22/7*i", "-5+1/3*i"]:
        assert QI.format(QI.parse(s)) == s
    for s in ["0", "5", "-3/2"]:
        assert QQ.format(QQ.parse(s)) == s


def test_format_parse_round_trip_randomized():
    rng = random.Random(7)
    for _ in range(500):
        x = GaussianRational(Fraction(rng.randint(-99, 99), rng.randint(1, 99)),
                             Fraction(rng.randint(-99, 99), rng.randint(1, 99)))
        assert QI.parse(QI.format(x)) == x
        y = Fraction(rng.randint(-999, 999), rng.randint(1, 999))
        assert QQ.parse(QQ.format(y)) == y


def test_parse_rejects_garbage():
    for s in ["", "1//2", "i*i", "+-1", "1+", "x"]:
        with pytest.raises(ValueError):
            QI.parse(s)
    with pytest.raises(ValueError):
        QQ.parse("1+i")
