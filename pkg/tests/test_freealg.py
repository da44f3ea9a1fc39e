import random
from fractions import Fraction
from itertools import combinations

import pytest

from rho.freealg import FreeAlgebra, Polynomial
from rho.scalars import QQ


def bubble_sort_sign(alg, flat):
    """Oracle: sort the word by adjacent transpositions, multiplying
    (-1)^{|a||b|} per swap; zero on a repeated odd generator."""
    word = list(flat)
    sign = 1
    changed = True
    while changed:
        changed = False
        for t in range(len(word) - 1):
            a, b = word[t], word[t + 1]
            if alg.key(a) > alg.key(b):
                da = alg.generators[a].degree
                db = alg.generators[b].degree
                sign *= (-1) ** (da * db)
                word[t], word[t + 1] = b, a
                changed = True
    for t in range(len(word) - 1):
        if word[t] == word[t + 1] and alg.generators[word[t]].odd:
            return 0, None
    return sign, word


def test_odd_square_vanishes():
    alg = FreeAlgebra(QQ, [("x", 1)])
    mx = alg.monomial([(0, 1)])
    sign, mono = alg.mul_monomials(mx, mx)
    assert sign == 0 and mono is None


def test_anticommute_degree_one():
    alg = FreeAlgebra(QQ, [("x", 1), ("y", 1)])
    mx = alg.monomial([(0, 1)])
    my = alg.monomial([(1, 1)])
    s, m = alg.mul_monomials(my, mx)
    assert s == -1 and alg.mono_str(m) == "x*y"


def test_mixed_parity_reorder():
    # (x e) y with |x| = |y| = 1, |e| = 2 comes out as +x y e
    alg = FreeAlgebra(QQ, [("x", 1), ("y", 1), ("e", 2)])
    mx, my, me = (alg.monomial([(k, 1)]) for k in range(3))
    s1, m1 = alg.mul_monomials(mx, me)
    s2, m2 = alg.mul_monomials(m1, my)
    assert s1 * s2 == 1 and alg.mono_str(m2) == "x*y*e"


def test_sign_oracle_randomized():
    rng = random.Random(11)
    alg = FreeAlgebra(QQ, [("a", 1), ("b", 1), ("c", 2), ("d", 3), ("e", 2)])
    monos = []
    for n in range(7):
        monos.extend(alg.basis_in_degree(n))
    for _ in range(2000):
        m1 = rng.choice(monos)
        m2 = rng.choice(monos)
        sign, m = alg.mul_monomials(m1, m2)
        osign, oword = bubble_sort_sign(alg, alg.mono_flat(m1) + alg.mono_flat(m2))
        assert sign == osign
        if sign:
            assert alg.mono_flat(m) == oword


def test_graded_commutativity_randomized():
    rng = random.Random(13)
    alg = FreeAlgebra(QQ, [("a", 1), ("b", 2), ("c", 3), ("d", 1)])
    monos = []
    for n in range(7):
        monos.extend(alg.basis_in_degree(n))
    for _ in range(2000):
        m1, m2 = rng.choice(monos), rng.choice(monos)
        s12, p12 = alg.mul_monomials(m1, m2)
        s21, p21 = alg.mul_monomials(m2, m1)
        koszul = (-1) ** (alg.mono_degree(m1) * alg.mono_degree(m2))
        assert s12 == koszul * s21
        assert p12 == p21


def test_associativity_randomized():
    rng = random.Random(17)
    alg = FreeAlgebra(QQ, [("a", 1), ("b", 2), ("c", 3), ("d", 1)])
    monos = []
    for n in range(5):
        monos.extend(alg.basis_in_degree(n))
    one = QQ.one
    for _ in range(1500):
        p1 = Polynomial(alg, {rng.choice(monos): one})
        p2 = Polynomial(alg, {rng.choice(monos): one})
        p3 = Polynomial(alg, {rng.choice(monos): one})
        assert (p1 * p2) * p3 == p1 * (p2 * p3)


def test_basis_in_degree_examples():
    even = FreeAlgebra(QQ, [("a", 2)])
    b6 = even.basis_in_degree(6)
    assert len(b6) == 1 and even.mono_str(b6[0]) == "a^3"

    ext2 = FreeAlgebra(QQ, [("x", 1), ("y", 1)])
    b2 = ext2.basis_in_degree(2)
    assert [ext2.mono_str(m) for m in b2] == ["x*y"]

    ext4 = FreeAlgebra(QQ, [(f"x{i}", 1) for i in range(1, 5)])
    assert len(ext4.basis_in_degree(2)) == len(list(combinations(range(4), 2)))


def test_basis_complete_against_enumeration():
    alg = FreeAlgebra(QQ, [("x", 1), ("y", 1), ("e", 2), ("f", 3)])
    # exhaustive oracle: all exponent vectors
    for n in range(7):
        expected = set()
        for ex in range(2):
            for ey in range(2):
                for ee in range(n // 2 + 1):
                    for ef in range(2):
                        if ex + ey + 2 * ee + 3 * ef == n:
                            expected.add((ex, ey, ee, ef))
        got = set()
        for m in alg.basis_in_degree(n):
            vec = [0, 0, 0, 0]
            for gi, e in m:
                vec[gi] = e
            got.add(tuple(vec))
        assert got == expected
        assert len(alg.basis_in_degree(n)) == len(expected)


def test_degree_cap_rejection():
    alg = FreeAlgebra(QQ, [("a", 2)], cap=6)
    with pytest.raises(ValueError):
        alg.monomial([(0, 4)])
    with pytest.raises(ValueError):
        alg.basis_in_degree(8)
    assert len(alg.basis_in_degree(6)) == 1


def test_generator_validation():
    with pytest.raises(ValueError):
        FreeAlgebra(QQ, [("a", 0)])
    with pytest.raises(ValueError):
        FreeAlgebra(QQ, [("a", 1), ("a", 2)])


def test_polynomial_algebra_mismatch():
    a1 = FreeAlgebra(QQ, [("x", 1)])
    a2 = FreeAlgebra(QQ, [("x", 1)])
    p1 = Polynomial.gen(a1, "x")
    p2 = Polynomial.gen(a2, "x")
    with pytest.raises(ValueError):
        p1 * p2


def test_polynomial_str():
    alg = FreeAlgebra(QQ, [("x", 1), ("y", 1)])
    p = Polynomial(alg, {alg.monomial([(0, 1), (1, 1)]): Fraction(-1, 2),
                         (): Fraction(3)})
    assert str(p) == "3-1/2*x*y"
