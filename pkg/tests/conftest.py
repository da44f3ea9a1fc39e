from fractions import Fraction
from math import gcd

import pytest

from rho import corpus
from rho.scalars import QQ


@pytest.fixture(scope="session")
def s2_model():
    return corpus.sphere_even(QQ).materialize(10)


@pytest.fixture(scope="session")
def s3_model():
    return corpus.sphere_odd(QQ).materialize(10)


@pytest.fixture(scope="session")
def heisenberg_model():
    return corpus.heisenberg(QQ).materialize(4)


@pytest.fixture(scope="session")
def kahler_square():
    return corpus.kahler_square(QQ)


@pytest.fixture(scope="session")
def kahler_square_tensor():
    return corpus.kahler_square_tensor(QQ)


@pytest.fixture(scope="session")
def iwasawa():
    d_pres, dc_pres = corpus.iwasawa_like(QQ)
    return corpus.bicomplex_from_pair(d_pres, dc_pres, 6)


@pytest.fixture(scope="session")
def t2_package():
    return corpus.torus_cy_package(QQ, 1)


@pytest.fixture(scope="session")
def t4_package():
    return corpus.torus_cy_package(QQ, 2)


def random_fraction(rng, span=9):
    num = rng.randint(-span, span)
    den = rng.randint(1, span)
    return Fraction(num, den)


def bareiss_rank(rows):
    """Fraction-free integer rank; an oracle independent of the rref path."""
    if not rows or not rows[0]:
        return 0
    m = []
    for row in rows:
        dens = [f.denominator for f in row]
        lcm = 1
        for d in dens:
            lcm = lcm * d // gcd(lcm, d)
        m.append([int(f * lcm) for f in row])
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for k in range(r, nrows):
            if m[k][c]:
                piv = k
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for k in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[k][j] = (m[r][c] * m[k][j] - m[k][c] * m[r][j]) // prev
            m[k][c] = 0
        prev = m[r][c]
        r += 1
        rank += 1
        if r == nrows:
            break
    return rank
