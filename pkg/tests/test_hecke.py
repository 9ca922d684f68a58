"""Hecke algebra multiplication and the signed action on tensor space."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qschur.errors import IndexOutOfRange, RankMismatch
from qschur.hecke import HeckeElement, TensorVector, act, act_elem, act_word
from qschur.qpoly import ONE, LaurentPoly
from qschur.weyl import (Permutation, block_index, column_reading, dhat, enumerate_matrices,
                         perm_of_matrix, word_from_matrix)

q = LaurentPoly.monomial(2)


def T(*word, r=3):
    return HeckeElement.T(Permutation.from_word(list(word), r))


def test_quadratic_relation():  # [PAPER]
    s = HeckeElement.generator(1, 2)
    assert s * s == s.scale(q - ONE) + HeckeElement.one(2).scale(q)


def test_identity_is_unit():  # [TRIVIAL]
    x = T(1, 2) + T(2).scale(q)
    assert HeckeElement.one(3) * x == x == x * HeckeElement.one(3)


def test_braid_relation():  # [DERIVED] expansion of both sides
    s1, s2 = HeckeElement.generator(1, 3), HeckeElement.generator(2, 3)
    assert s1 * s2 * s1 == s2 * s1 * s2 == T(1, 2, 1)


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        HeckeElement.one(2) * HeckeElement.one(3)


def test_action_increasing_pair():  # [PAPER]
    assert act(TensorVector.basis(1, 1, (1, 2)), 1) == TensorVector.basis(1, 1, (2, 1))


def test_action_equal_odd_pair():  # [PAPER]
    assert act(TensorVector.basis(1, 1, (2, 2)), 1) == TensorVector.basis(1, 1, (2, 2)).scale(-ONE)


def test_action_decreasing_pair():  # [DERIVED] direct substitution
    out = act(TensorVector.basis(1, 1, (2, 1)), 1)
    assert out == TensorVector(1, 1, 2, {(1, 2): q, (2, 1): q - ONE})


def test_empty_word():  # [TRIVIAL]
    v = TensorVector.basis(2, 1, (3, 1, 2))
    assert act_word(v, ()) == v


def test_reduced_words_agree():  # [DERIVED] all basis vectors, r = 3
    words = [(1, 2, 1), (2, 1, 2)]
    for m, n in [(1, 1), (2, 1), (1, 2)]:
        for idx in itertools.product(range(1, m + n + 2), repeat=3):
            if max(idx) > m + n:
                continue
            v = TensorVector.basis(m, n, idx)
            assert act_word(v, words[0]) == act_word(v, words[1])


def test_generator_out_of_range():
    with pytest.raises(IndexOutOfRange):
        act(TensorVector.basis(1, 1, (1, 2)), 2)


def test_signed_permutation_of_standard_vector():  # [PAPER]
    for A in enumerate_matrices(1, 1, 3):
        rho = A.ro()
        v = TensorVector.basis(1, 1, block_index(rho))
        sign = -1 if dhat(rho, perm_of_matrix(A), 1) % 2 else 1
        expect = TensorVector.basis(1, 1, column_reading(A)).scale(LaurentPoly.const(sign))
        assert act_word(v, word_from_matrix(A)) == expect


words = st.lists(st.integers(1, 3), max_size=6)
vectors = st.tuples(st.integers(1, 2), st.integers(1, 2)).flatmap(
    lambda mn: st.tuples(st.just(mn), st.lists(st.integers(1, sum(mn)), min_size=4, max_size=4)))


@settings(max_examples=60)
@given(vectors, words, words)
def test_action_is_right_module(shape_idx, u, w):
    (m, n), idx = shape_idx
    v = TensorVector.basis(m, n, idx)
    x = HeckeElement.T(Permutation.from_word(u, 4))
    y = HeckeElement.T(Permutation.from_word(w, 4))
    assert act_elem(act_elem(v, x), y) == act_elem(v, x * y)


@settings(max_examples=60)
@given(vectors)
def test_quadratic_relation_on_vectors(shape_idx):
    (m, n), idx = shape_idx
    v = TensorVector.basis(m, n, idx)
    for k in (1, 2, 3):
        assert act(act(v, k), k) == act(v, k).scale(q - ONE) + v.scale(q)


def test_tensor_json_round_trip():
    v = TensorVector(2, 1, 2, {(1, 3): q, (2, 2): ONE})
    assert TensorVector.from_json(v.to_json(), 2, 1) == v
