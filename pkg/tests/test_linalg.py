import random
from fractions import Fraction

from conftest import bareiss_rank, random_fraction

from rho import linalg
from rho.scalars import QI, QQ, GaussianRational


def F(x):
    return Fraction(x)


def test_rref_rank_examples():
    zero = [[F(0)] * 3 for _ in range(3)]
    assert linalg.rank(zero, QQ) == 0
    assert len(linalg.nullspace(zero, 3, QQ)) == 3
    ident = linalg.identity(4, QQ)
    assert linalg.rank(ident, QQ) == 4
    assert linalg.nullspace(ident, 4, QQ) == []
    m = [[F(1), F(2)], [F(2), F(4)]]
    assert linalg.rank(m, QQ) == 1
    ker = linalg.nullspace(m, 2, QQ)
    assert len(ker) == 1
    # the kernel line is spanned by (2, -1)
    v = ker[0]
    assert v[0] * F(-1) == v[1] * F(2)


def test_rank_nullity_randomized():
    rng = random.Random(42)
    for _ in range(200):
        rows = rng.randint(1, 8)
        cols = rng.randint(1, 8)
        m = [[random_fraction(rng) for _ in range(cols)] for _ in range(rows)]
        r = linalg.rank(m, QQ)
        assert r + len(linalg.nullspace(m, cols, QQ)) == cols
        assert r == bareiss_rank(m)


def test_solve_and_inverse():
    m = [[F(2), F(1)], [F(1), F(3)]]
    x = linalg.solve(m, [F(5), F(10)], QQ)
    assert linalg.mat_vec(m, x, QQ) == [F(5), F(10)]
    inv = linalg.inverse(m, QQ)
    assert linalg.mat_mul(m, inv, QQ) == linalg.identity(2, QQ)
    singular = [[F(1), F(2)], [F(2), F(4)]]
    assert linalg.solve(singular, [F(0), F(1)], QQ) is None


def test_complement_mod_is_canonical_and_disjoint():
    sub = [[F(1), F(1), F(0)]]
    space = linalg.identity(3, QQ)
    comp = linalg.complement_mod(sub, space, QQ)
    assert len(comp) == 2
    stacked = sub + comp
    assert linalg.rank(stacked, QQ) == 3
    # complement vectors vanish at the sub-basis pivot column
    assert all(v[0] == 0 for v in comp)


def test_subspace_intersection():
    a = [[F(1), F(0), F(0)], [F(0), F(1), F(0)]]
    b = [[F(0), F(1), F(0)], [F(0), F(0), F(1)]]
    meet = linalg.subspace_intersection(a, b, QQ)
    assert meet == [[F(0), F(1), F(0)]]
    assert linalg.subspace_intersection(a, [], QQ) == []


def test_in_span():
    basis = [[F(1), F(1)], [F(0), F(1)]]
    assert linalg.in_span([F(2), F(3)], basis, QQ) == [F(2), F(1)]
    assert linalg.in_span([F(1)], [], QQ) is None
    assert linalg.in_span([F(0), F(0)], [], QQ) == []


def test_det_and_gram():
    m = [[F(2), F(1)], [F(1), F(2)]]
    assert linalg.det(m, QQ) == F(3)
    assert linalg.gram_positive_definite(m, QQ)
    assert not linalg.gram_positive_definite([[F(0)]], QQ)
    assert not linalg.gram_positive_definite([[F(1), F(2)], [F(2), F(1)]], QQ)
    # Hermitian Gaussian case
    i = QI.i
    g = [[QI.coerce(2), i], [-i, QI.coerce(2)]]
    assert linalg.gram_positive_definite(g, QI)
    g_bad = [[QI.coerce(2), i], [i, QI.coerce(2)]]
    assert not linalg.gram_positive_definite(g_bad, QI)


def test_gaussian_field_linear_algebra():
    i = QI.i
    singular = [[QI.one, i], [-i, QI.one]]   # det = 1 + i^2 = 0
    assert linalg.rank(singular, QI) == 1
    m = [[QI.one, i], [i, QI.one]]           # det = 1 - i^2 = 2
    assert linalg.rank(m, QI) == 2
    inv = linalg.inverse(m, QI)
    assert linalg.mat_mul(m, inv, QI) == linalg.identity(2, QI)


def test_conj_transpose():
    i = QI.i
    m = [[QI.one, i]]
    assert linalg.conj_transpose(m, QI) == [[QI.one], [-i]]
