"""Compositions, permutations, double cosets and matrix statistics."""

import itertools

import pytest
from hypothesis import given, strategies as st

from qschur.errors import InvalidArgs, NotInM, NotMinimalRep, ShapeMismatch
from qschur.weyl import (Composition, Permutation, SuperMatrix, abar, bruhat_leq, bruhat_leq_corner,
                         chain_matrices, column_reading, coset_reps, d_A, dhat, dhat_closed, double_reps,
                         enumerate_matrices, in_double_reps, intersection_composition, length_formula,
                         matrix_from_triple, matrix_stat, norm, order_leq, parity_index, perm_of_matrix,
                         preceq, signed_dot, special_matrix, super_double_reps, triple_sequence,
                         word_from_matrix, compositions)

SHAPES = [(1, 1), (2, 1), (1, 2)]


def all_matrices(shapes=SHAPES, rs=range(0, 4)):
    for m, n in shapes:
        for r in rs:
            yield from enumerate_matrices(m, n, r)


# -- parity and the signed dot product ---------------------------------------

def test_parity_index():  # [PAPER]
    assert parity_index(1, 2) == 0
    assert parity_index(3, 2) == 1


@pytest.mark.parametrize("m", [1, 2, 3])
def test_parity_boundary(m):  # [TRIVIAL]
    assert parity_index(m, m) == 0
    assert parity_index(m + 1, m) == 1


def test_signed_dot():
    assert signed_dot((1, 2, 3), (1, 1, 1), 2) == 0  # [TRIVIAL]
    assert signed_dot((4, 1, 7), (0, 0, 0), 2) == 0  # [TRIVIAL]
    assert signed_dot((2, 3), (1, -1), 1) == 5  # [DERIVED] direct evaluation


# -- permutations -------------------------------------------------------------

perms = st.integers(1, 6).flatmap(lambda r: st.permutations(range(1, r + 1))).map(Permutation)


@given(perms)
def test_reduced_word_round_trip(w):
    word = w.reduced_word()
    assert len(word) == w.length()
    assert Permutation.from_word(word, len(w)) == w


@given(perms, perms)
def test_length_subadditive(u, w):
    if len(u) != len(w):
        return
    assert (u * w).length() <= u.length() + w.length()
    assert (u * w).inverse() == w.inverse() * u.inverse()


# -- matrices from double cosets ----------------------------------------------

def test_triple_full_block():  # [TRIVIAL]
    assert matrix_from_triple((3,), Permutation.identity(3), (3,)).entries == ((3,),)


def test_triple_transposition():  # [DERIVED] brute-force double coset intersection
    s2 = Permutation.from_word([2], 4)
    assert matrix_from_triple((2, 2), s2, (2, 2), 1, 1).entries == ((1, 1), (1, 1))


def test_identity_triple_is_diagonal():  # [TRIVIAL]
    for lam in compositions(3, 3):
        assert matrix_from_triple(lam, Permutation.identity(3), lam, 2, 1) == SuperMatrix.diag(2, 1, lam)


def test_non_minimal_rep_rejected():
    with pytest.raises(NotMinimalRep):
        matrix_from_triple((2,), Permutation.from_word([1], 2), (2,))


def test_word_of_diagonal_is_empty():  # [TRIVIAL]
    assert word_from_matrix(SuperMatrix.diag(1, 1, (2, 1))) == ()


def test_word_of_transposition_matrix():  # [DERIVED] brute-force search over double coset reps
    A = SuperMatrix(1, 1, [[1, 1], [1, 1]])
    assert len(word_from_matrix(A)) == 1
    assert perm_of_matrix(A) == Permutation.from_word([2], 4)


def test_word_length_formula():  # [PAPER]
    for A in all_matrices():
        assert len(word_from_matrix(A)) == length_formula(A) == perm_of_matrix(A).length()


def test_round_trip_through_triples():
    for A in all_matrices():
        d = perm_of_matrix(A)
        assert in_double_reps(d, A.ro(), A.co())
        assert matrix_from_triple(A.ro(), d, A.co(), A.m, A.n) == A


def test_coset_reps_of_full_block():  # [TRIVIAL]
    assert coset_reps((4,)) == [Permutation.identity(4)]


def test_super_double_reps_count():  # [DERIVED] equals the matrix count by enumeration
    total = sum(len(super_double_reps(a, b, 1)) for a in compositions(2, 2) for b in compositions(2, 2))
    assert total == 8 == len(enumerate_matrices(1, 1, 2))


def test_coset_reps_inside_refinement():  # [PAPER]
    rho = (3, 2)
    rho1 = (1, 2, 2)
    inside = [d for d in coset_reps(rho1) if all(d(x) in (1, 2, 3) for x in (1, 2, 3))]
    expected = {Permutation.identity(5), Permutation.from_word([1], 5), Permutation.from_word([1, 2], 5)}
    assert set(inside) == expected
    assert len(double_reps(rho, rho)) == 3


def test_intersection_composition():
    s2 = Permutation.from_word([2], 4)
    assert intersection_composition((2, 2), s2, (2, 2)) == (1, 1, 1, 1)  # [DERIVED]
    lam = (2, 1)
    nu = intersection_composition(lam, Permutation.identity(3), lam)  # [TRIVIAL]
    assert nu == (2, 0, 0, 1)
    for rho, lam in itertools.product(compositions(3, 3), repeat=2):  # [TRIVIAL]
        for d in double_reps(rho, lam):
            assert sum(intersection_composition(rho, d, lam)) == 3


# -- enumeration --------------------------------------------------------------

def test_enumeration_counts():
    assert len(enumerate_matrices(1, 1, 2)) == 8  # [DERIVED] brute-force count
    assert len(enumerate_matrices(1, 1, 3)) == 12  # [DERIVED] brute-force count
    for m, n in SHAPES:
        assert enumerate_matrices(m, n, 0) == [SuperMatrix.zero(m, n)]  # [TRIVIAL]


def test_enumeration_matches_brute_force():  # [DERIVED]
    for m, n, r in [(1, 1, 3), (2, 1, 2), (1, 2, 3)]:
        N = m + n
        brute = set()
        for vals in itertools.product(range(r + 1), repeat=N * N):
            if sum(vals) == r:
                A = SuperMatrix(m, n, [vals[i * N:(i + 1) * N] for i in range(N)])
                if A.in_M():
                    brute.add(A)
        assert set(enumerate_matrices(m, n, r)) == brute


def test_unknown_family():
    with pytest.raises(InvalidArgs):
        enumerate_matrices(1, 1, 1, "odd")


# -- sign statistics ----------------------------------------------------------

def test_dhat_identity():  # [TRIVIAL]
    assert dhat((2, 1), Permutation.identity(3), 1) == 0


def test_dhat_all_odd():  # [TRIVIAL]
    for lam in compositions(2, 3):
        for d in coset_reps(lam):
            idx = d.act(tuple(1 + k for k, c in enumerate(lam) for _ in range(c)))
            inv = sum(1 for a, b in itertools.combinations(idx, 2) if a > b)
            assert dhat(lam, d, 0) == inv


def test_dhat_closed_form():  # [DERIVED]
    for A in all_matrices(shapes=[(1, 1), (2, 1), (1, 2), (0, 2), (2, 2)]):
        assert dhat(A.ro(), perm_of_matrix(A), A.m) == dhat_closed(A.ro(), A)
    for A in enumerate_matrices(1, 1, 3):
        assert dhat_closed(A.ro(), A) == dhat(A.co(), perm_of_matrix(A), 1)


def test_abar_examples():
    for mu in compositions(3, 2):  # [PAPER]
        D = SuperMatrix.diag(2, 1, mu)
        assert abar(D) == 0
        for h in (1, 2):
            assert abar(D.add_units([(h, h + 1, 1)])) == 0
    A = SuperMatrix(1, 2, [[0, 0, 1], [0, 1, 0], [0, 0, 0]])  # [DERIVED] direct evaluation
    assert abar(A) == 1


def test_norm_vanishes_exactly_on_diagonals():  # [TRIVIAL]
    for A in all_matrices():
        assert (norm(A) == 0) == A.is_diagonal()


def test_matrix_stat_dispatch():
    A = SuperMatrix(2, 1, [[1, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert matrix_stat(A, "dA") == d_A(A)
    assert matrix_stat(A, "norm") == norm(A)
    with pytest.raises(InvalidArgs):
        matrix_stat(A, "sigma")
    with pytest.raises(InvalidArgs):
        matrix_stat(A, "nope")


# -- orders -------------------------------------------------------------------

def test_orders_reflexive():  # [TRIVIAL]
    for A in all_matrices():
        assert order_leq(A, A, "bruhat") and order_leq(A, A, "preceq")


def test_diagonal_is_bruhat_minimal():  # [TRIVIAL]
    for A in all_matrices():
        if A.ro() == A.co():
            assert bruhat_leq(SuperMatrix.diag(A.m, A.n, A.ro()), A)


def test_bruhat_agrees_with_corner_sums():
    for m, n, r in [(1, 1, 3), (2, 1, 3), (1, 2, 2)]:
        mats = enumerate_matrices(m, n, r)
        for A, B in itertools.product(mats, repeat=2):
            if A.ro() == B.ro() and A.co() == B.co():
                assert bruhat_leq(A, B) == bruhat_leq_corner(A, B)


def test_order_chain():  # [PAPER]
    mats = enumerate_matrices(1, 1, 3)
    for A, B in itertools.permutations(mats, 2):
        if A.ro() == B.ro() and A.co() == B.co() and bruhat_leq(A, B):
            Ap, Bp = A.off_diagonal(), B.off_diagonal()
            assert preceq(Ap, Bp) and Ap != Bp and norm(Ap) < norm(Bp)


def test_bruhat_needs_matching_sums():
    with pytest.raises(ShapeMismatch):
        bruhat_leq(SuperMatrix.diag(1, 1, (1, 0)), SuperMatrix.diag(1, 1, (0, 1)))


# -- triples, chains, special matrices -----------------------------------------

def test_triple_sequence_examples():
    assert triple_sequence(3, "leq1") == [(2, 2, 3), (1, 1, 3), (1, 2, 3), (1, 1, 2)]  # [PAPER]
    assert triple_sequence(2, "leq1") == [(1, 1, 2)]  # [TRIVIAL]


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_triple_sequence_count(N):  # [DERIVED] brute-force triple count
    brute = sum(1 for i, h, j in itertools.product(range(1, N + 1), repeat=3) if i <= h < j)
    for ord in ("leq1", "leq2"):
        seq = triple_sequence(N, ord)
        assert len(seq) == len(set(seq)) == brute == N * (N * N - 1) // 6


def test_chain_of_diagonal():  # [TRIVIAL]
    E, F = chain_matrices(SuperMatrix.diag(2, 1, (1, 1, 1)))
    assert all(X.is_diagonal() for X in list(E.values()) + list(F.values()))


def test_chain_boundaries():
    for A in enumerate_matrices(1, 1, 2) + enumerate_matrices(2, 1, 2):
        E, F = chain_matrices(A)
        assert E[(1, 1, 2)].co() == A.co()  # [PAPER]
        assert next(iter(F.values())).ro() == A.ro()  # [DERIVED] chain bookkeeping


def test_special_matrices():
    lam = (2, 1, 1)
    assert special_matrix("U", 1, lam, 0, 2, 1) == SuperMatrix.diag(2, 1, lam)  # [TRIVIAL]
    for h in (1, 2):  # [PAPER]
        for p in (1,):
            U = special_matrix("U", h, lam, p, 2, 1)
            assert U.co() == lam
            assert U.ro() == tuple(x + p * ((k == h - 1) - (k == h)) for k, x in enumerate(lam))
    with pytest.raises(NotInM):  # [TRIVIAL]
        special_matrix("U", 1, (1, 2), 2, 1, 1)


# -- signed action consistency --------------------------------------------------

def test_column_reading_weight():
    for A in all_matrices():
        idx = column_reading(A)
        assert len(idx) == A.total()
        assert all(idx.count(i + 1) == A.ro()[i] for i in range(A.N))
