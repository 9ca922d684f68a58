"""The compiled kernels agree with the pure-Python fallback."""

import itertools
import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from qschur import BACKEND, _pykernels as py

cy = pytest.importorskip("qschur._ckernels")

raw = st.dictionaries(st.integers(-8, 8), st.integers(-9, 9).filter(bool), max_size=6)


@given(raw, raw)
def test_poly_kernels_agree(a, b):
    assert py.poly_add(a, b) == cy.poly_add(a, b)
    assert py.poly_sub(a, b) == cy.poly_sub(a, b)
    assert py.poly_mul(a, b) == cy.poly_mul(a, b)
    assert py.poly_scale_shift(a, 3, -2) == cy.poly_scale_shift(a, 3, -2)
    acc_py, acc_cy = dict(a), dict(a)
    py.poly_axpy(acc_py, a, b)
    cy.poly_axpy(acc_cy, a, b)
    assert {k: c for k, c in acc_py.items() if c} == {k: c for k, c in acc_cy.items() if c}


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (0, 2)])
def test_action_kernels_agree(m, n):
    N = m + n
    for idx in itertools.product(range(1, N + 1), repeat=3):
        terms = {idx: {1: 2, -1: -1}}
        for k in (1, 2):
            assert py.act_generator(terms, k, m) == cy.act_generator(terms, k, m)


def test_big_coefficients():
    a = {0: 10 ** 30, 5: -(10 ** 25)}
    assert py.poly_mul(a, a) == cy.poly_mul(a, a)


def test_backend_selection():
    forced = os.environ.get("QSCHUR_PURE_PYTHON", "") not in ("", "0")
    assert BACKEND == ("python" if forced else "cython")
    env = dict(os.environ, QSCHUR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import qschur; print(qschur.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
