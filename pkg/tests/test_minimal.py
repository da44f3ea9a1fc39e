import random
from fractions import Fraction

import pytest

from rho import corpus, linalg
from rho.dga import TabularDGA, cohomology, tensor, trivial_dga
from rho.errors import PreconditionError
from rho.minimal import (
    build_minimal_model,
    formality_test_direct,
    homotopy_ranks,
    indecomposables,
    massey_triple,
    shifted_lie_cobracket,
)
from rho.scalars import QQ


def test_point_model():
    model = build_minimal_model(trivial_dga(QQ), 8)
    assert model.generator_degrees == {}
    ranks = homotopy_ranks(model)
    assert all(v == 0 for v in ranks.ranks.values())
    ind = indecomposables(model)
    assert ind.dims == {}


def test_s2_model(s2_model):
    model = build_minimal_model(s2_model.dga, 8)
    assert model.generator_degrees == {2: 1, 3: 1}
    d3 = model.presentation.d_gen("g3_0")
    assert str(d3) == "g2_0^2"
    assert model.presentation.d_gen("g2_0").terms == {}
    ranks = homotopy_ranks(model).ranks
    assert ranks == {1: 0, 2: 1, 3: 1, 4: 0, 5: 0, 6: 0, 7: 0, 8: 0}
    assert model.check_minimality()


def test_s3_already_minimal(s3_model):
    model = build_minimal_model(s3_model.dga, 8)
    assert model.generator_degrees == {3: 1}
    ranks = homotopy_ranks(model).ranks
    assert ranks[3] == 1
    assert all(v == 0 for k, v in ranks.items() if k != 3)


def test_not_simply_connected_rejected(heisenberg_model):
    with pytest.raises(PreconditionError):
        build_minimal_model(heisenberg_model.dga, 4)


def test_cap_exhaustion_rejected(s2_model):
    with pytest.raises(PreconditionError):
        build_minimal_model(s2_model.dga, 20)


def test_indecomposables_s2(s2_model):
    model = build_minimal_model(s2_model.dga, 8)
    ind = indecomposables(model)
    assert ind.dims == {2: 1, 3: 1}
    # induced quadratic part of d sends the degree-3 generator to the square
    mtx = ind.dbar[3]
    assert len(mtx) == 1 and mtx[0][0] == QQ.one
    # word-length filtration dimensions follow the free-monomial count
    assert ind.filtration[(1, 2)] == 1
    assert ind.filtration[(2, 4)] == 1
    assert ind.filtration[(1, 3)] == 1
    assert ind.filtration[(2, 5)] == 1


def test_indecomposables_zero_differential():
    A = corpus.free_dga(QQ, [("a", 2), ("b", 4)], {}, 9).materialize(9).dga
    model = build_minimal_model(A, 6)
    ind = indecomposables(model)
    for p, mtx in ind.dbar.items():
        assert linalg.is_zero_mat(mtx)


def test_cobracket_s2(s2_model):
    model = build_minimal_model(s2_model.dga, 8)
    table = shifted_lie_cobracket(indecomposables(model))
    key = ("g2_0", "g2_0")
    assert key in table.brackets
    val = table.brackets[key]
    assert list(val) == ["g3_0"] and val["g3_0"] != 0
    assert table.shifted_degrees == {"g2_0": 1, "g3_0": 2}


def test_cobracket_abelian_for_product_of_spheres(s3_model):
    T = tensor(s3_model.dga, s3_model.dga)
    model = build_minimal_model(T, 7)
    table = shifted_lie_cobracket(indecomposables(model))
    assert table.brackets == {}


def wedge_of_two_spheres():
    """Degree-2 classes a, b with all products zero: rich Whitehead brackets."""
    labels = {0: ["one"], 1: [], 2: ["a", "b"]}
    bide = {0: [(0, 0)], 1: [], 2: [(2, 0), (2, 0)]}
    prods = {(0, 0, 0, 0): {0: QQ.one}}
    for i in range(2):
        prods[(0, 0, 2, i)] = {i: QQ.one}
        prods[(2, i, 0, 0)] = {i: QQ.one}
    return TabularDGA(QQ, 4, labels, bide, prods, {}, complete=False)


def test_wedge_model_brackets_and_jacobi():
    # Jacobi and antisymmetry are verified inside shifted_lie_cobracket; this
    # instance has composable brackets, so the check is not vacuous
    A = wedge_of_two_spheres()
    model = build_minimal_model(A, 3)
    assert model.generator_degrees[2] == 2
    assert model.generator_degrees[3] == 3
    table = shifted_lie_cobracket(indecomposables(model))
    assert table.brackets  # nontrivial
    names = [g.name for g in model.presentation.algebra.generators
             if g.degree == 2]
    a, b = names
    assert (a, a) in table.brackets
    assert (a, b) in table.brackets


def test_generator_counts_stable_under_basis_shuffle(s2_model):
    A = s2_model.dga
    rng = random.Random(5)
    base = build_minimal_model(A, 6).generator_degrees
    for _ in range(3):
        perms = {}
        for n in A.degrees():
            p = list(range(A.dim(n)))
            rng.shuffle(p)
            perms[n] = p
        B = A.shuffled(perms)
        assert build_minimal_model(B, 6).generator_degrees == base


def test_quasi_isomorphic_inputs_same_counts(s2_model):
    # the sphere model and its cohomology ring are quasi-isomorphic
    from test_dga import sphere_ring

    m1 = build_minimal_model(s2_model.dga, 8)
    m2 = build_minimal_model(sphere_ring(), 8)
    assert m1.generator_degrees == m2.generator_degrees


def test_rho_verified_and_minimality_invariants(s2_model):
    from rho.dga import check_morphism, is_quasi_isomorphism

    model = build_minimal_model(s2_model.dga, 8)
    rho = model.comparison_morphism()
    assert check_morphism(rho)
    assert is_quasi_isomorphism(rho, 8)
    # no degree-1 generators and decomposable differentials
    assert all(g.degree >= 2 for g in model.presentation.algebra.generators)
    for g in model.presentation.algebra.generators:
        val = model.presentation.d_gen(g.name)
        assert (not val) or val.min_length() >= 2


# -- Massey products ------------------------------------------------------------


def heisenberg_classes(hm):
    A = hm.dga
    H = cohomology(A, 3)
    cx = H.class_of(1, [QQ.one, QQ.zero, QQ.zero])
    cy = H.class_of(1, [QQ.zero, QQ.one, QQ.zero])
    return A, H, cx, cy


def test_massey_requires_vanishing_products():
    A = corpus.free_dga(QQ, [("a", 2)], {}, 8).materialize(8).dga
    H = cohomology(A, 7)
    ca = H.class_of(2, [QQ.one])
    with pytest.raises(PreconditionError):
        massey_triple(A, (2, ca), (2, ca), (2, ca), ring=H)


def test_massey_heisenberg_nonzero(heisenberg_model):
    A, H, cx, cy = heisenberg_classes(heisenberg_model)
    verdict = massey_triple(A, (1, cx), (1, cx), (1, cy), ring=H)
    assert verdict.verdict == "nonzero-mod-indeterminacy"
    assert verdict.indeterminacy == []
    # representative class is [x z], nonzero in H^2
    assert any(c for c in verdict.representative_class)


def test_massey_heisenberg_exhaustive_choices(heisenberg_model):
    """All cochain choices give the same verdict; the class set is the coset
    of the brute-force indeterminacy, which is zero here."""
    A, H, cx, cy = heisenberg_classes(heisenberg_model)
    base = massey_triple(A, (1, cx), (1, cx), (1, cy), ring=H)
    z1 = linalg.nullspace(A.d_matrix(1), A.dim(1), QQ)
    classes = set()
    for cu in range(2 ** len(z1)):
        u_shift = A.zero_vec(1)
        for k, zv in enumerate(z1):
            if cu >> k & 1:
                u_shift = linalg.vec_add(u_shift, zv)
        for cv in range(2 ** len(z1)):
            v_shift = A.zero_vec(1)
            for k, zv in enumerate(z1):
                if cv >> k & 1:
                    v_shift = linalg.vec_add(v_shift, zv)
            verdict = massey_triple(A, (1, cx), (1, cx), (1, cy), ring=H,
                                    u_shift=u_shift, v_shift=v_shift)
            assert verdict.verdict == "nonzero-mod-indeterminacy"
            classes.add(tuple(verdict.representative_class))
    # the spread of classes over all choices is the true indeterminacy: zero
    assert classes == {tuple(base.representative_class)}


def test_massey_s2_vanishes(s2_model):
    A = s2_model.dga
    H = cohomology(A, 7)
    ce = H.class_of(2, [QQ.one])
    verdict = massey_triple(A, (2, ce), (2, ce), (2, ce), ring=H)
    assert verdict.verdict == "vanishes"
    assert linalg.is_zero_vec(verdict.representative)


def test_massey_verdict_choice_independent_s2(s2_model):
    A = s2_model.dga
    H = cohomology(A, 7)
    ce = H.class_of(2, [QQ.one])
    z3 = linalg.nullspace(A.d_matrix(3), A.dim(3), QQ)
    for shift in z3 or [A.zero_vec(3)]:
        verdict = massey_triple(A, (2, ce), (2, ce), (2, ce), ring=H,
                                u_shift=shift)
        assert verdict.verdict == "vanishes"


# -- direct formality -------------------------------------------------------------


def test_formality_zero_differential():
    A = corpus.free_dga(QQ, [("a", 2), ("c", 4)], {}, 10).materialize(10).dga
    res = formality_test_direct(A, 6)
    assert res.verdict == "formal"


def test_formality_s2(s2_model):
    res = formality_test_direct(s2_model.dga, 8)
    assert res.verdict == "formal"


def test_formality_requires_simply_connected(heisenberg_model):
    with pytest.raises(PreconditionError):
        formality_test_direct(heisenberg_model.dga, 3)


def test_formality_product_of_spheres(s2_model):
    T = tensor(s2_model.dga, s2_model.dga)
    res = formality_test_direct(T, 5)
    assert res.verdict in {"formal", "undetermined"}
    assert res.verdict != "non-formal"
