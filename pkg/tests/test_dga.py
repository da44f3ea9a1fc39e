from fractions import Fraction

import pytest

from rho import corpus, linalg
from rho.dga import (
    Morphism,
    check_associative,
    check_d_squared,
    check_derivation,
    check_graded_commutative,
    check_morphism,
    check_unital,
    cohomology,
    is_quasi_isomorphism,
    tensor,
    trivial_dga,
)
from rho.errors import PreconditionError
from rho.scalars import QQ


def contractible():
    # x in degree 1, b in degree 2, dx = b
    return corpus.free_dga(QQ, [("x", 1), ("b", 2)], {"x": "b"}, 9).materialize(9).dga


def sphere_ring():
    """The honest truncated ring on one degree-2 class (complete)."""
    from rho.dga import TabularDGA

    return TabularDGA(
        QQ, 2, {0: ["one"], 1: [], 2: ["h"]}, {0: [(0, 0)], 1: [], 2: [(1, 1)]},
        {(0, 0, 0, 0): {0: QQ.one}, (0, 0, 2, 0): {0: QQ.one},
         (2, 0, 0, 0): {0: QQ.one}},
        {}, complete=True)


def test_s2_structure_checks(s2_model):
    A = s2_model.dga
    assert check_d_squared(A)
    assert check_derivation(A)
    assert check_graded_commutative(A)
    assert check_associative(A)
    assert check_unital(A)


def test_derivation_passes_with_zero_differential():
    A = corpus.torus_de_rham(QQ, 2).materialize(2).dga
    assert check_derivation(A)


def test_derivation_leibniz_on_sphere(s2_model):
    # d(e2 e3) = e2^3 by the Leibniz rule: verified by the structural check
    A = s2_model.dga
    alg = s2_model.presentation.algebra
    i5 = s2_model.index_of[alg.monomial([(0, 1), (1, 1)])]
    assert i5[0] == 5
    dv = A.d_vec(5, A.basis_vec(5, i5[1]))
    i6 = s2_model.index_of[alg.monomial([(0, 3)])]
    expected = A.zero_vec(6)
    expected[i6[1]] = QQ.one
    assert dv == expected


def test_corrupted_differential_fails_with_witness(s2_model):
    A = s2_model.dga
    bad_diff = {n: [row[:] for row in A.d_matrix(n)] for n in range(A.cap)}
    bad_diff[2][0][0] = QQ.one  # d(e2) := e3, breaking d^2 = 0 and Leibniz
    B = A.with_differential(bad_diff)
    assert not check_d_squared(B) or not check_derivation(B)
    rep = check_derivation(B)
    if not rep.ok:
        assert rep.witness is not None


def test_cohomology_zero_differential_is_identity():
    A = corpus.torus_de_rham(QQ, 2).materialize(2).dga
    H = cohomology(A, 2)
    for n in range(3):
        assert H.dim(n) == A.dim(n)


def test_cohomology_contractible():
    H = cohomology(contractible(), 8)
    assert H.dim(0) == 1
    for n in range(1, 9):
        assert H.dim(n) == 0


def test_cohomology_s2_dims_and_ring(s2_model):
    H = cohomology(s2_model.dga, 8)
    assert [H.dim(n) for n in range(9)] == [1, 0, 1, 0, 0, 0, 0, 0, 0]
    # ring is the truncated polynomial algebra on [e2]: [e2]^2 = 0
    u = [QQ.one]
    sq = H.mul_classes(2, u, 2, u)
    assert sq == []  # H^4 = 0


def test_cohomology_cap_guard(s2_model):
    with pytest.raises(PreconditionError):
        cohomology(s2_model.dga, 12)


def test_morphism_identity(s2_model):
    f = Morphism.identity(s2_model.dga)
    assert check_morphism(f)
    assert is_quasi_isomorphism(f, 8)


def sphere_quotient_map(mat):
    """The model-to-ring comparison: e2 to the degree-2 class, e3 to zero."""
    A = mat.dga
    HD = sphere_ring()
    matrices = {n: linalg.zeros(HD.dim(n), A.dim(n), QQ) for n in range(9)}
    matrices[0][0][0] = QQ.one
    matrices[2][0][0] = QQ.one
    return Morphism(A, HD, matrices, up_to=8), HD


def test_sphere_model_map_to_cohomology(s2_model):
    f, HD = sphere_quotient_map(s2_model)
    assert check_morphism(f)
    assert is_quasi_isomorphism(f, 8)


def test_structure_violating_map_fails(s2_model):
    # rescaling one generator image breaks the differential compatibility:
    # f(d e3) = e2^2 while d f(e3) = 2 e2^2
    A = s2_model.dga
    matrices = {n: linalg.identity(A.dim(n), QQ) for n in range(9)}
    matrices[3][0][0] = QQ.coerce(2)
    f = Morphism(A, A, matrices, up_to=8)
    rep = check_morphism(f)
    assert not rep.ok
    assert rep.witness["reason"] == "differential not intertwined"


def test_quasi_iso_contractible_inclusion():
    A = contractible()
    k = trivial_dga(QQ)
    matrices = {0: [[QQ.one]]}
    for n in range(1, 9):
        matrices[n] = linalg.zeros(A.dim(n), 0, QQ)
    f = Morphism(k, A, matrices, up_to=8)
    assert check_morphism(f)
    assert is_quasi_isomorphism(f, 8)


def test_quasi_iso_dim_cross_check(s2_model):
    # a morphism to a target with different cohomology is rejected on dims
    A = s2_model.dga
    k = trivial_dga(QQ)
    matrices = {0: [[QQ.one]]}
    for n in range(1, 9):
        matrices[n] = linalg.zeros(0, A.dim(n), QQ)
    f = Morphism(A, k, matrices, up_to=8)
    rep = is_quasi_isomorphism(f, 8)
    assert not rep.ok
    assert rep.witness["reason"] == "cohomology dims differ"


def test_tensor_with_unit(s2_model):
    A = s2_model.dga
    T = tensor(A, trivial_dga(QQ))
    HA = cohomology(A, 8)
    HT = cohomology(T, 8)
    for n in range(9):
        assert HA.dim(n) == HT.dim(n)
        assert A.dim(n) == T.dim(n)


def test_tensor_two_lines():
    L1 = corpus.free_dga(QQ, [("x1", 1)], {}, 1).materialize(1).dga
    L2 = corpus.free_dga(QQ, [("x2", 1)], {}, 1).materialize(1).dga
    T = tensor(L1, L2)
    assert [T.dim(n) for n in range(3)] == [1, 2, 1]
    assert T.total_dim == 4
    H = cohomology(T, 2)
    assert [H.dim(n) for n in range(3)] == [1, 2, 1]


def test_tensor_kunneth_sphere_squared(s2_model):
    A = s2_model.dga
    T = tensor(A, A)
    HT = cohomology(T, 4)
    HA = cohomology(A, 8)
    # convolution oracle
    for n in range(5):
        expected = sum(HA.dim(p) * HA.dim(n - p) for p in range(n + 1))
        assert HT.dim(n) == expected
    assert [HT.dim(n) for n in range(5)] == [1, 0, 2, 0, 1]


def test_tensor_koszul_sign_derivation(s2_model):
    T = tensor(s2_model.dga, s2_model.dga)
    assert check_d_squared(T)
    assert check_derivation(T)
    assert check_graded_commutative(T)


def test_tensor_field_mismatch(s2_model):
    from rho.scalars import QI

    other = corpus.free_dga(QI, [("x1", 1)], {}, 1).materialize(1).dga
    with pytest.raises(PreconditionError):
        tensor(s2_model.dga, other)


def test_shuffled_basis_same_cohomology(s2_model):
    A = s2_model.dga
    perms = {n: list(reversed(range(A.dim(n)))) for n in A.degrees()}
    B = A.shuffled(perms)
    assert check_derivation(B)
    HA, HB = cohomology(A, 8), cohomology(B, 8)
    assert all(HA.dim(n) == HB.dim(n) for n in range(9))
