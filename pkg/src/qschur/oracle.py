"""Brute-force model of S_q(m|n, r) as Hecke-equivariant endomorphisms.

Endomorphisms act on the right: ``(v)e``.  A product ``compose(e, f,
"apply_e_first")`` is the map ``v -> ((v)e)f``.

The relative norm element attached to A is

    N_{A'} = sum_{w in D_nu} q^{-l(w)} T_{w^-1} e_{lam, rho d} T_w,

with rho = ro(A), lam = co(A), d the minimal double coset representative
of A, nu the flattened column sequence of A, and e_{lam, rho d} the matrix
unit sending v_{i_lam} to v_{i_rho . d}.  It maps the weight-lam block to
the weight-rho block.  ``norm_endo(A)`` returns it.

The normalised element xi_A is the norm element of the transposed matrix
rescaled by (-1)^{t(A)} v^{-d(A)}, where t is ``weyl.transpose_sign``.  The
sign makes the identification of N_{A^T} with the transpose of N_A
multiplicative, so xi-products follow the transposed N-products.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Mapping

from . import _kernels as K
from .errors import InvalidArgs, NotInSpan, ShapeMismatch
from .qpoly import LaurentPoly, vpow
from .weyl import (Permutation, SuperMatrix, block_index, column_composition,
                   compositions, coset_reps, d_A, enumerate_matrices, perm_of_matrix,
                   require_M, transpose_sign, weight)

__all__ = [
    "Endomorphism",
    "norm_endo",
    "xi_endo",
    "compose",
    "expand_in_norm_basis",
    "expand_in_xi_basis",
    "check_module_morphism",
    "identity_endo",
    "norm_family_rank",
]


class Endomorphism:
    """Sparse matrix over LaurentPoly indexed by pairs of index tuples.

    ``rows[i][j]`` is the coefficient of v_j in (v_i)e, in raw dict form.
    """

    __slots__ = ("m", "n", "r", "rows")

    def __init__(self, m: int, n: int, r: int, rows: Mapping | None = None):
        self.m, self.n, self.r = m, n, r
        self.rows: dict = {}
        for i, row in (rows or {}).items():
            clean = {}
            for j, c in row.items():
                c = c._c if isinstance(c, LaurentPoly) else c
                if c:
                    clean[j] = c
            if clean:
                self.rows[i] = clean

    @classmethod
    def _trusted(cls, m, n, r, rows) -> "Endomorphism":
        e = object.__new__(cls)
        e.m, e.n, e.r, e.rows = m, n, r, rows
        return e

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.m, self.n, self.r)

    def entries(self) -> dict[tuple[tuple, tuple], LaurentPoly]:
        return {(i, j): LaurentPoly._raw(dict(c)) for i, row in self.rows.items() for j, c in row.items()}

    def entry(self, i: tuple, j: tuple) -> LaurentPoly:
        return LaurentPoly._raw(dict(self.rows.get(tuple(i), {}).get(tuple(j), {})))

    def row(self, i: tuple) -> dict[tuple, LaurentPoly]:
        return {j: LaurentPoly._raw(dict(c)) for j, c in self.rows.get(tuple(i), {}).items()}

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other):
        return isinstance(other, Endomorphism) and self.shape == other.shape and self.rows == other.rows

    def _check(self, other: "Endomorphism") -> None:
        if self.shape != other.shape:
            raise ShapeMismatch(f"endomorphisms of shapes {self.shape} and {other.shape}")

    def __add__(self, other: "Endomorphism") -> "Endomorphism":
        self._check(other)
        rows = {i: dict(row) for i, row in self.rows.items()}
        for i, row in other.rows.items():
            tgt = rows.setdefault(i, {})
            for j, c in row.items():
                s = K.poly_add(tgt.get(j, {}), c)
                if s:
                    tgt[j] = s
                else:
                    tgt.pop(j, None)
            if not tgt:
                del rows[i]
        return Endomorphism._trusted(self.m, self.n, self.r, rows)

    def __sub__(self, other: "Endomorphism") -> "Endomorphism":
        return self + other.scale(LaurentPoly.const(-1))

    def scale(self, c: LaurentPoly) -> "Endomorphism":
        if not c:
            return Endomorphism._trusted(self.m, self.n, self.r, {})
        cc = c._c
        return Endomorphism._trusted(self.m, self.n, self.r, {
            i: {j: K.poly_mul(x, cc) for j, x in row.items()} for i, row in self.rows.items()})

    def apply(self, vec):
        """(vec)e for a TensorVector."""
        from .hecke import TensorVector
        acc: dict = {}
        for i, c in vec.terms.items():
            for j, x in self.rows.get(i, {}).items():
                K.poly_axpy(acc.setdefault(j, {}), c._c, x)
        return TensorVector(vec.m, vec.n, vec.r, {j: LaurentPoly(c) for j, c in acc.items()})

    def __repr__(self):
        return f"Endomorphism(m={self.m}, n={self.n}, r={self.r}, nnz={sum(map(len, self.rows.values()))})"


def identity_endo(m: int, n: int, r: int) -> Endomorphism:
    rows = {i: {i: {0: 1}} for i in itertools.product(range(1, m + n + 1), repeat=r)}
    return Endomorphism._trusted(m, n, r, rows)


# ---------------------------------------------------------------------------
# Hecke action with memoisation
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _act_basis(m: int, idx: tuple, w: Permutation) -> tuple:
    """v_idx . T_w as a tuple of (tuple, raw coefficient) pairs."""
    if w.is_identity():
        return ((idx, {0: 1}),)
    word = w.reduced_word()
    k = word[-1]
    prefix = Permutation.from_word(word[:-1], len(w))
    raw = dict((i, dict(c)) for i, c in _act_basis(m, idx, prefix))
    return tuple(K.act_generator(raw, k, m).items())


def _tuples_of_weight(lam: tuple) -> list[tuple]:
    return sorted(set(itertools.permutations(block_index(lam))))


@lru_cache(maxsize=None)
def _norm_rows(A: SuperMatrix) -> dict:
    m = A.m
    rho, lam = A.ro(), A.co()
    r = A.total()
    d = perm_of_matrix(A)
    target = d.act(block_index(rho))
    source = block_index(lam)
    nu = column_composition(A)
    rows: dict = {}
    sources = _tuples_of_weight(lam)
    for w in coset_reps(nu):
        winv = w.inverse()
        lw = w.length()
        image = _act_basis(m, target, w)
        for i in sources:
            c = None
            for t, x in _act_basis(m, i, winv):
                if t == source:
                    c = x
                    break
            if c is None:
                continue
            c = K.poly_scale_shift(c, 1, -2 * lw)
            row = rows.setdefault(i, {})
            for j, y in image:
                row.setdefault(j, {})
                K.poly_axpy(row[j], c, y)
    clean = {}
    for i, row in rows.items():
        cr = {}
        for j, c in row.items():
            c = {e: x for e, x in c.items() if x}
            if c:
                cr[j] = c
        if cr:
            clean[i] = cr
    return clean


def norm_endo(A: SuperMatrix) -> Endomorphism:
    """N_{A'} as a matrix; it maps the weight co(A) block to the weight ro(A) block."""
    require_M(A)
    rows = _norm_rows(A)
    return Endomorphism._trusted(A.m, A.n, A.total(), {i: dict(row) for i, row in rows.items()})


def xi_endo(A: SuperMatrix, normalization: str = "v", signed: bool = True) -> Endomorphism:
    """xi_A = (-1)^{t(A)} v^{-d(A)} N_A, with t = ``transpose_sign``.

    ``normalization="q"`` gives the q^{-d(A)} variant and ``signed=False``
    drops the sign; both exist so that tests can show that these variants
    are inconsistent with the normalised multiplication formulas.
    """
    require_M(A)
    if normalization == "v":
        e = -d_A(A)
    elif normalization == "q":
        e = -2 * d_A(A)
    else:
        raise InvalidArgs(f"unknown normalization {normalization!r}")
    sign = -1 if signed and transpose_sign(A) % 2 else 1
    return norm_endo(A.transpose()).scale(LaurentPoly.monomial(e, sign))


def compose(e: Endomorphism, f: Endomorphism, convention: str = "apply_e_first") -> Endomorphism:
    if e.shape != f.shape:
        raise ShapeMismatch(f"endomorphisms of shapes {e.shape} and {f.shape}")
    if convention == "apply_f_first":
        e, f = f, e
    elif convention != "apply_e_first":
        raise InvalidArgs(f"unknown composition convention {convention!r}")
    rows = {}
    frows = f.rows
    for i, row in e.rows.items():
        acc: dict = {}
        for j, x in row.items():
            frow = frows.get(j)
            if not frow:
                continue
            for k, y in frow.items():
                K.poly_axpy(acc.setdefault(k, {}), x, y)
        out = {}
        for k, c in acc.items():
            c = {a: b for a, b in c.items() if b}
            if c:
                out[k] = c
        if out:
            rows[i] = out
    return Endomorphism._trusted(e.m, e.n, e.r, rows)


def _sorted_in_blocks(t: tuple, lam: tuple) -> bool:
    pos = 0
    for x in lam:
        for k in range(pos, pos + x - 1):
            if t[k] > t[k + 1]:
                return False
        pos += x
    return True


def _matrix_of_tuple(t: tuple, lam: tuple, m: int, n: int) -> SuperMatrix:
    N = m + n
    a = [[0] * N for _ in range(N)]
    pos = 0
    for j, x in enumerate(lam):
        for k in range(pos, pos + x):
            a[t[k] - 1][j] += 1
        pos += x
    return SuperMatrix(m, n, a)


def expand_in_norm_basis(e: Endomorphism, strict: bool = False) -> dict[SuperMatrix, LaurentPoly]:
    """Coefficients c_A with e = sum c_A N_{A'}.

    Each (v_lam)N_{A'} is supported on the tuples of the double coset of A
    and has coefficient 1 at the column-reading tuple of A, so the
    coefficient of N_{A'} is read off at that tuple; the residue must then
    vanish.  With ``strict`` the whole matrix is compared afterwards.
    """
    m, n, r = e.shape
    out: dict[SuperMatrix, LaurentPoly] = {}
    for lam in compositions(m + n, r):
        src = block_index(lam)
        row = e.rows.get(src)
        if not row:
            continue
        residue = {j: dict(c) for j, c in row.items()}
        for t, c in sorted(row.items()):
            if not _sorted_in_blocks(t, lam):
                continue
            A = _matrix_of_tuple(t, lam, m, n)
            if not A.in_M():
                raise NotInSpan(f"tuple {t} indexes a matrix outside M({m}|{n})")
            out[A] = LaurentPoly._raw(dict(c))
            nrow = _norm_rows(A).get(src, {})
            for j, x in nrow.items():
                s = K.poly_sub(residue.get(j, {}), K.poly_mul(x, c))
                if s:
                    residue[j] = s
                else:
                    residue.pop(j, None)
        if residue:
            raise NotInSpan(f"nonzero residue on the weight {lam} block")
    if strict:
        total = Endomorphism(m, n, r)
        for A, c in out.items():
            total = total + norm_endo(A).scale(c)
        if total != e:
            raise NotInSpan("endomorphism differs from its norm-basis expansion")
    return out


def expand_in_xi_basis(e: Endomorphism, strict: bool = False, signed: bool = True,
                       normalization: str = "v") -> dict[SuperMatrix, LaurentPoly]:
    """Coefficients in the basis xi_Z of ``xi_endo`` with the same options;
    the coefficient of xi_Z is (-1)^{t(Z)} v^{d(Z)} times the coefficient
    of N_{Z^T}."""
    if normalization not in ("v", "q"):
        raise InvalidArgs(f"unknown normalization {normalization!r}")
    k = 1 if normalization == "v" else 2
    out = {}
    for Y, c in expand_in_norm_basis(e, strict=strict).items():
        Z = Y.transpose()
        sign = -1 if signed and transpose_sign(Z) % 2 else 1
        out[Z] = c.scale(sign, k * d_A(Z))
    return out


def check_module_morphism(e: Endomorphism) -> bool:
    """Does e commute with every generator T_{s_k}?"""
    from .hecke import TensorVector, act
    m, n, r = e.shape
    for i in itertools.product(range(1, m + n + 1), repeat=r):
        v = TensorVector.basis(m, n, i)
        ve = e.apply(v)
        for k in range(1, r):
            if act(ve, k) != e.apply(act(v, k)):
                return False
    return True


_PRIME = 2_147_483_647


def _rank_at(vectors: list[dict], keys: list, t: int) -> int:
    from sympy import GF
    from sympy.polys.matrices import DomainMatrix

    F = GF(_PRIME)
    col = {k: c for c, k in enumerate(keys)}
    rows = {}
    for i, vec in enumerate(vectors):
        row = {}
        for k, c in vec.items():
            x = c.evaluate_mod(t, _PRIME)
            if x:
                row[col[k]] = F(x)
        if row:
            rows[i] = row
    return DomainMatrix(rows, (len(vectors), len(keys)), F).rank()


def norm_family_rank(m: int, n: int, r: int, points: Iterable[int] = (2, 3, 5)) -> int:
    """Rank of {N_{A'} : A in M(m|n, r)} over Q(v).

    Specialising v to an integer and reducing modulo a large prime can only
    lower the rank, so the maximum over a few points is a lower bound that
    is attained at generic points.
    """
    mats = enumerate_matrices(m, n, r)
    vecs = [norm_endo(A).entries() for A in mats]
    keys = sorted(set().union(*[v.keys() for v in vecs])) if vecs else []
    best = 0
    for t in points:
        best = max(best, _rank_at(vecs, keys, t))
        if best == len(vecs):
            break
    return best
