"""The endomorphism model of the Schur superalgebra."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qschur.errors import ShapeMismatch
from qschur.oracle import (check_module_morphism, compose, expand_in_norm_basis, expand_in_xi_basis,
                           identity_endo, norm_endo, norm_family_rank, xi_endo)
from qschur.qpoly import ONE
from qschur.weyl import SuperMatrix, compositions, enumerate_matrices

SMALL = [(1, 1, 2), (1, 1, 3), (2, 1, 2), (1, 2, 2)]


def mats(grid=SMALL):
    for m, n, r in grid:
        yield from enumerate_matrices(m, n, r)


def test_diagonal_norm_elements_are_idempotent():  # [DERIVED] matrix squaring
    for m, n, r in SMALL:
        for lam in compositions(m + n, r):
            N = norm_endo(SuperMatrix.diag(m, n, lam))
            assert compose(N, N) == N


def test_projection_relations():  # [PAPER]
    for A in mats():
        for mu in compositions(A.N, A.total()):
            P = norm_endo(SuperMatrix.diag(A.m, A.n, mu))
            out = compose(norm_endo(A), P)
            assert out == (norm_endo(A) if mu == A.ro() else norm_endo(A).scale(ONE - ONE))


def test_norm_elements_are_module_maps():  # [TRIVIAL]
    for A in mats([(1, 1, 2), (2, 1, 2), (1, 1, 3)]):
        assert check_module_morphism(norm_endo(A))


def test_xi_of_diagonal():  # [TRIVIAL]
    for lam in compositions(2, 3):
        D = SuperMatrix.diag(1, 1, lam)
        assert xi_endo(D) == norm_endo(D)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_idempotents_sum_to_identity(r):  # [DERIVED] summing matrices
    total = identity_endo(1, 1, r).scale(ONE - ONE)
    for lam in compositions(2, r):
        total = total + xi_endo(SuperMatrix.diag(1, 1, lam))
    assert total == identity_endo(1, 1, r)


def test_grading():  # [TRIVIAL]
    from qschur.weyl import weight
    for A in mats():
        for (i, j), _ in norm_endo(A).entries().items():
            assert weight(i, A.N) == A.co() and weight(j, A.N) == A.ro()
        # xi_A is built from the transposed norm element, so its blocks swap
        for (i, j), _ in xi_endo(A).entries().items():
            assert weight(i, A.N) == A.ro() and weight(j, A.N) == A.co()


def test_compose_identity_and_orthogonality():
    for m, n, r in SMALL:
        I = identity_endo(m, n, r)
        for A in enumerate_matrices(m, n, r):
            for conv in ("apply_e_first", "apply_f_first"):  # [TRIVIAL]
                assert compose(I, norm_endo(A), conv) == norm_endo(A)
        lams = compositions(m + n, r)
        for a, b in itertools.permutations(lams, 2):  # [DERIVED] weight-block orthogonality
            Na, Nb = norm_endo(SuperMatrix.diag(m, n, a)), norm_endo(SuperMatrix.diag(m, n, b))
            assert compose(Na, Nb).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_compose_associative(data):  # [TRIVIAL]
    pool = enumerate_matrices(2, 1, 2)
    a, b, c = (norm_endo(data.draw(st.sampled_from(pool))) for _ in range(3))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_compose_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        compose(identity_endo(1, 1, 2), identity_endo(1, 1, 3))


def test_expand_basis_elements():
    for A in mats():
        assert expand_in_norm_basis(norm_endo(A), strict=True) == {A: ONE}  # [TRIVIAL]
        assert expand_in_xi_basis(xi_endo(A), strict=True) == {A: ONE}
    assert expand_in_norm_basis(identity_endo(1, 1, 2).scale(ONE - ONE)) == {}  # [TRIVIAL]


def test_rank_equals_matrix_count():
    for m, n, r in SMALL + [(2, 2, 2)]:
        assert norm_family_rank(m, n, r) == len(enumerate_matrices(m, n, r))
