"""Symmetric-group and matrix combinatorics for the super setting.

Conventions used throughout the package:

* indices exposed in the API are 1-based;
* a permutation is stored in one-line notation, ``w = (w(1), ..., w(r))``,
  and products are function composition, ``(w * u)(k) = w(u(k))``;
* permutations act on index tuples from the right by place permutation,
  ``i . w = (i_{w(1)}, ..., i_{w(r)})``, so ``(i . w) . u = i . (w * u)``;
* the index h is even (parity 0) when ``h <= m`` and odd otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .errors import (ChainLeavesM, DegreeMismatch, IndexOutOfRange, InvalidArgs,
                     LengthMismatch, NotInM, NotMinimalRep, ShapeMismatch)

# ---------------------------------------------------------------------------
# parity and integer vectors
# ---------------------------------------------------------------------------


def parity_index(h: int, m: int, n: int | None = None) -> int:
    if h < 1 or (n is not None and h > m + n):
        raise IndexOutOfRange(f"index {h} outside [1, {m + n if n is not None else '...'}]")
    return 0 if h <= m else 1


def signed_dot(lam: Sequence[int], j: Sequence[int], m: int) -> int:
    """sum_i (-1)^{parity(i)} lam_i j_i."""
    if len(lam) != len(j):
        raise LengthMismatch(f"vectors of length {len(lam)} and {len(j)}")
    tot = 0
    for i, (a, b) in enumerate(zip(lam, j)):
        tot += a * b if i < m else -a * b
    return tot


def unit_vector(k: int, N: int) -> tuple[int, ...]:
    return tuple(1 if i == k - 1 else 0 for i in range(N))


def alpha(h: int, N: int) -> tuple[int, ...]:
    """e_h - e_{h+1}."""
    return tuple(1 if i == h - 1 else -1 if i == h else 0 for i in range(N))


def beta(h: int, N: int) -> tuple[int, ...]:
    """-e_h - e_{h+1}."""
    return tuple(-1 if i in (h - 1, h) else 0 for i in range(N))


def vadd(a: Sequence[int], b: Sequence[int], c: int = 1) -> tuple[int, ...]:
    return tuple(x + c * y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# compositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Composition:
    m: int
    n: int
    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(x) for x in self.parts))
        if len(self.parts) != self.m + self.n:
            raise LengthMismatch(f"composition needs {self.m + self.n} parts")
        if any(x < 0 for x in self.parts):
            raise InvalidArgs("composition parts must be nonnegative")

    @property
    def r(self) -> int:
        return sum(self.parts)

    def partial_sums(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate(self.parts))

    def even(self) -> tuple[int, ...]:
        return self.parts[: self.m]

    def odd(self) -> tuple[int, ...]:
        return self.parts[self.m:]

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "parts": list(self.parts)}

    @classmethod
    def from_json(cls, obj) -> "Composition":
        try:
            return cls(int(obj["m"]), int(obj["n"]), tuple(obj["parts"]))
        except (KeyError, TypeError) as exc:
            raise InvalidArgs(f"malformed composition JSON: {obj!r}") from exc


def _parts(c) -> tuple[int, ...]:
    return c.parts if isinstance(c, Composition) else tuple(c)


def blocks(lam) -> list[range]:
    """The consecutive blocks R_1, ..., R_N of {1..r} cut out by lam."""
    out, start = [], 1
    for x in _parts(lam):
        out.append(range(start, start + x))
        start += x
    return out


def block_index(lam) -> tuple[int, ...]:
    """The tuple i_lam = (1^{lam_1}, 2^{lam_2}, ...)."""
    return tuple(k + 1 for k, x in enumerate(_parts(lam)) for _ in range(x))


@lru_cache(maxsize=None)
def compositions(N: int, r: int) -> tuple[tuple[int, ...], ...]:
    """All compositions of r into N parts, lexicographically ordered."""
    if N == 0:
        return ((),) if r == 0 else ()
    out = []
    for first in range(r + 1):
        for rest in compositions(N - 1, r - first):
            out.append((first,) + rest)
    return tuple(out)


def weight(idx: Sequence[int], N: int) -> tuple[int, ...]:
    w = [0] * N
    for a in idx:
        w[a - 1] += 1
    return tuple(w)


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


class Permutation(tuple):
    """A permutation of {1..r} in one-line notation."""

    def __new__(cls, images: Iterable[int]):
        t = tuple.__new__(cls, (int(x) for x in images))
        if sorted(t) != list(range(1, len(t) + 1)):
            raise InvalidArgs(f"not a permutation: {tuple(t)}")
        return t

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, r: int) -> "Permutation":
        return cls._trusted(tuple(range(1, r + 1)))

    @classmethod
    def from_word(cls, word: Sequence[int], r: int) -> "Permutation":
        """The product s_{k_1} s_{k_2} ... of simple transpositions."""
        img = list(range(1, r + 1))
        for k in word:
            if not 1 <= k < r:
                raise IndexOutOfRange(f"generator s_{k} outside S_{r}")
            img[k - 1], img[k] = img[k], img[k - 1]
        return cls._trusted(tuple(img))

    @property
    def r(self) -> int:
        return len(self)

    def __call__(self, k: int) -> int:
        return self[k - 1]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other) != len(self):
            raise DegreeMismatch("permutations of different degree")
        return Permutation._trusted(tuple(self[x - 1] for x in other))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for k, x in enumerate(self, 1):
            inv[x - 1] = k
        return Permutation._trusted(tuple(inv))

    def length(self) -> int:
        n = len(self)
        return sum(1 for a in range(n) for b in range(a + 1, n) if self[a] > self[b])

    def is_identity(self) -> bool:
        return all(x == k for k, x in enumerate(self, 1))

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word, found by stripping the smallest right descent."""
        img = list(self)
        rev = []
        while True:
            for k in range(len(img) - 1):
                if img[k] > img[k + 1]:
                    img[k], img[k + 1] = img[k + 1], img[k]
                    rev.append(k + 1)
                    break
            else:
                break
        return tuple(reversed(rev))

    def act(self, idx: Sequence) -> tuple:
        """Place permutation i . w = (i_{w(1)}, ..., i_{w(r)})."""
        return tuple(idx[x - 1] for x in self)

    def __repr__(self):
        return f"Permutation({tuple(self)})"


def bruhat_leq_perm(u: Permutation, w: Permutation) -> bool:
    """Rank-matrix criterion: u <= w iff #{a<=i : u(a)>=k} <= #{a<=i : w(a)>=k}."""
    n = len(u)
    if len(w) != n:
        raise DegreeMismatch("permutations of different degree")
    cu = [0] * (n + 2)
    cw = [0] * (n + 2)
    for i in range(n):
        for k in range(1, u[i] + 1):
            cu[k] += 1
        for k in range(1, w[i] + 1):
            cw[k] += 1
        if any(cu[k] > cw[k] for k in range(1, n + 1)):
            return False
    return True


def perm_from_tuple(idx: Sequence[int], lam) -> Permutation:
    """The minimal d in D_lam with i_lam . d = idx."""
    bl = blocks(lam)
    nxt = [b.start for b in bl]
    img = []
    for a in idx:
        img.append(nxt[a - 1])
        nxt[a - 1] += 1
    if any(nxt[k] != bl[k].stop for k in range(len(bl))):
        raise DegreeMismatch(f"tuple {tuple(idx)} does not have weight {_parts(lam)}")
    return Permutation._trusted(tuple(img))


def _increasing_on_blocks(w: Sequence[int], lam) -> bool:
    for b in blocks(lam):
        for x in range(b.start, b.stop - 1):
            if w[x - 1] > w[x]:
                return False
    return True


def in_coset_reps(d: Permutation, lam) -> bool:
    """d in D_lam, the minimal length representatives of the cosets W_lam d."""
    return _increasing_on_blocks(d.inverse(), lam)


def in_double_reps(d: Permutation, rho, lam) -> bool:
    return _increasing_on_blocks(d.inverse(), rho) and _increasing_on_blocks(d, lam)


@lru_cache(maxsize=None)
def _coset_reps(lam: tuple[int, ...]) -> tuple[Permutation, ...]:
    base = block_index(lam)
    tuples = sorted(set(itertools.permutations(base)))
    return tuple(sorted(perm_from_tuple(t, lam) for t in tuples))


def coset_reps(lam) -> list[Permutation]:
    return list(_coset_reps(_parts(lam)))


def double_reps(rho, lam) -> list[Permutation]:
    rho, lam = _parts(rho), _parts(lam)
    if sum(rho) != sum(lam):
        raise DegreeMismatch("compositions of different degree")
    return [d for d in _coset_reps(rho) if _increasing_on_blocks(d, lam)]


def trivial_mixed_intersections(d: Permutation, rho, lam, m: int) -> bool:
    """W^d_{rho(0)} cap W_{lam(1)} = 1 = W^d_{rho(1)} cap W_{lam(0)}.

    Both groups are Young subgroups for set partitions of {1..r}, so the
    intersection is trivial exactly when the meet partition is discrete on
    the mixed-parity block pairs.
    """
    dinv = d.inverse()
    rb, lb = blocks(rho), blocks(lam)
    for i, R in enumerate(rb):
        pre = {dinv(x) for x in R}
        for j, L in enumerate(lb):
            if (i < m) != (j < m) and len(pre.intersection(L)) > 1:
                return False
    return True


def super_double_reps(rho, lam, m: int) -> list[Permutation]:
    return [d for d in double_reps(rho, lam) if trivial_mixed_intersections(d, rho, lam, m)]


# ---------------------------------------------------------------------------
# super matrices
# ---------------------------------------------------------------------------


class SuperMatrix:
    """Square matrix of natural numbers with an (m|n) block structure.

    Instances may hold any integer grid; ``in_M`` tells whether it lies in
    M(m|n) (nonnegative, off-diagonal blocks 0/1).
    """

    __slots__ = ("m", "n", "entries", "_hash")

    def __init__(self, m: int, n: int, entries: Sequence[Sequence[int]]):
        N = m + n
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if len(rows) != N or any(len(row) != N for row in rows):
            raise ShapeMismatch(f"expected a {N}x{N} grid")
        self.m, self.n, self.entries = m, n, rows
        self._hash = hash((m, n, rows))

    @classmethod
    def _trusted(cls, m: int, n: int, rows: tuple) -> "SuperMatrix":
        obj = object.__new__(cls)
        obj.m, obj.n, obj.entries = m, n, rows
        obj._hash = hash((m, n, rows))
        return obj

    @classmethod
    def zero(cls, m: int, n: int) -> "SuperMatrix":
        N = m + n
        return cls._trusted(m, n, tuple((0,) * N for _ in range(N)))

    @classmethod
    def diag(cls, m: int, n: int, parts: Sequence[int]) -> "SuperMatrix":
        N = m + n
        parts = _parts(parts)
        if len(parts) != N:
            raise LengthMismatch("diagonal of the wrong length")
        return cls._trusted(m, n, tuple(tuple(parts[i] if i == j else 0 for j in range(N))
                                        for i in range(N)))

    @classmethod
    def unit(cls, m: int, n: int, i: int, j: int, c: int = 1) -> "SuperMatrix":
        return cls.zero(m, n).add_units([(i, j, c)])

    @property
    def N(self) -> int:
        return self.m + self.n

    def __eq__(self, other):
        return (isinstance(other, SuperMatrix) and self._hash == other._hash
                and self.m == other.m and self.entries == other.entries)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.m, self.n, self.entries) < (other.m, other.n, other.entries)

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def __repr__(self):
        return f"SuperMatrix({self.m}, {self.n}, {[list(r) for r in self.entries]})"

    def __str__(self):
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.entries) + "]"

    def total(self) -> int:
        return sum(map(sum, self.entries))

    def ro(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.entries)

    def co(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.entries))

    def row(self, h: int) -> tuple[int, ...]:
        return self.entries[h - 1]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j - 1] for row in self.entries)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(self.N))

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, row in enumerate(self.entries) for j, x in enumerate(row) if i != j)

    def transpose(self) -> "SuperMatrix":
        return SuperMatrix._trusted(self.m, self.n, tuple(zip(*self.entries)))

    def parity(self) -> int:
        m = self.m
        tot = 0
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if (i < m) != (j < m):
                    tot += x
        return tot % 2

    def in_M(self) -> bool:
        m = self.m
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if x < 0 or ((i < m) != (j < m) and x > 1):
                    return False
        return True

    def off_diagonal(self) -> "SuperMatrix":
        """A^{+-}: A with its diagonal replaced by zeros."""
        return SuperMatrix._trusted(self.m, self.n, tuple(
            tuple(0 if i == j else x for j, x in enumerate(row)) for i, row in enumerate(self.entries)))

    def with_diagonal(self, parts: Sequence[int]) -> "SuperMatrix":
        parts = _parts(parts)
        return SuperMatrix._trusted(self.m, self.n, tuple(
            tuple(parts[i] if i == j else x for j, x in enumerate(row)) for i, row in enumerate(self.entries)))

    def add_units(self, units: Iterable[tuple[int, int, int]]) -> "SuperMatrix":
        """A + sum c E_{i,j}; the result may leave M(m|n)."""
        rows = [list(r) for r in self.entries]
        for i, j, c in units:
            rows[i - 1][j - 1] += c
        return SuperMatrix._trusted(self.m, self.n, tuple(tuple(r) for r in rows))

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        return SuperMatrix._trusted(self.m, self.n, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, obj) -> "SuperMatrix":
        if not isinstance(obj, dict):
            raise InvalidArgs(f"malformed matrix JSON: {obj!r}")
        try:
            m, n, entries = int(obj["m"]), int(obj["n"]), obj["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgs(f"malformed matrix JSON: {obj!r}") from exc
        if m < 0 or n < 0 or not isinstance(entries, list):
            raise InvalidArgs(f"malformed matrix JSON: {obj!r}")
        for row in entries:
            if not isinstance(row, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                                    for x in row):
                raise InvalidArgs(f"matrix rows must be integer lists: {row!r}")
        return cls(m, n, entries)


def require_M(A: SuperMatrix) -> None:
    if not A.in_M():
        raise NotInM(f"{A} is not in M({A.m}|{A.n})")


def _cells(m: int, n: int) -> list[tuple[int, int, bool]]:
    N = m + n
    return [(i, j, (i < m) != (j < m)) for i in range(N) for j in range(N)]


def enumerate_matrices(m: int, n: int, r: int, family: str = "all") -> list[SuperMatrix]:
    """M(m|n, r) (``all``) or the matrices of M(m|n)^{+-}, M(m|n)^+, M(m|n)^-
    with entry sum at most r (``zero_diag``, ``upper``, ``lower``)."""
    N = m + n
    if family == "all":
        allowed = lambda i, j: True  # noqa: E731
        exact = True
    elif family == "zero_diag":
        allowed = lambda i, j: i != j  # noqa: E731
        exact = False
    elif family == "upper":
        allowed = lambda i, j: i < j  # noqa: E731
        exact = False
    elif family == "lower":
        allowed = lambda i, j: i > j  # noqa: E731
        exact = False
    else:
        raise InvalidArgs(f"unknown matrix family {family!r}")
    cells = [(i, j, odd) for i, j, odd in _cells(m, n) if allowed(i, j)]
    out = []
    vals = [[0] * N for _ in range(N)]

    def rec(pos: int, left: int):
        if pos == len(cells):
            if not exact or left == 0:
                out.append(SuperMatrix._trusted(m, n, tuple(tuple(r) for r in vals)))
            return
        i, j, odd = cells[pos]
        top = min(left, 1) if odd else left
        for x in range(top + 1):
            vals[i][j] = x
            rec(pos + 1, left - x)
        vals[i][j] = 0

    rec(0, r)
    out.sort(key=lambda A: A.entries)
    return out


# ---------------------------------------------------------------------------
# double cosets and matrices
# ---------------------------------------------------------------------------


def matrix_from_triple(rho, d: Permutation, lam, m: int | None = None, n: int | None = None) -> SuperMatrix:
    """a_{ij} = |R^rho_i cap d(R^lam_j)|."""
    if isinstance(rho, Composition):
        m, n = rho.m, rho.n
    rho, lam = _parts(rho), _parts(lam)
    if m is None:
        m, n = len(rho), 0
    if sum(rho) != sum(lam) or len(d) != sum(rho):
        raise DegreeMismatch("degrees of rho, d, lam differ")
    if not in_double_reps(d, rho, lam):
        raise NotMinimalRep(f"{d} is not a minimal double coset representative")
    rb = [set(b) for b in blocks(rho)]
    img = [{d(x) for x in b} for b in blocks(lam)]
    return SuperMatrix(m, n, [[len(R & L) for L in img] for R in rb])


def column_reading(A: SuperMatrix) -> tuple[int, ...]:
    """(1^{a11}, 2^{a21}, ..., N^{aN1}, 1^{a12}, ...), the tuple of v^A."""
    N = A.N
    return tuple(i + 1 for j in range(N) for i in range(N) for _ in range(A.entries[i][j]))


def intersection_composition(rho, d: Permutation, lam, m: int | None = None) -> tuple[int, ...]:
    """nu = rho d cap lam, the flattened column sequence of the matrix of (rho, d, lam)."""
    A = matrix_from_triple(rho, d, lam, m=m if m is not None else None,
                           n=0 if m is not None else None)
    return column_composition(A)


def column_composition(A: SuperMatrix) -> tuple[int, ...]:
    N = A.N
    return tuple(A.entries[i][j] for j in range(N) for i in range(N))


def word_from_matrix(A: SuperMatrix) -> tuple[int, ...]:
    """Reduced word for the minimal double coset representative of A.

    The word is produced column by column: within column j, the a_{ij}
    letters i sitting in the i-th block of rho are moved, one at a time,
    down to the front of the unprocessed part of the tuple by descending
    runs of simple transpositions.
    """
    N = A.N
    a = A.entries
    rho = list(A.ro())
    lam = A.co()
    theta = 0
    word: list[int] = []
    for j in range(N - 1):
        if j > 0:
            for i in range(N):
                rho[i] -= a[i][j - 1]
            theta += lam[j - 1]
        rho_t = list(itertools.accumulate(rho))
        a_t = 0  # a_{1j} + ... + a_{i-1,j}
        for i in range(1, N):
            a_t += a[i - 1][j]
            for t in range(a[i][j]):
                top = theta + rho_t[i - 1] + t
                bottom = theta + a_t + 1 + t
                word.extend(range(top, bottom - 1, -1))
    return tuple(word)


def perm_of_matrix(A: SuperMatrix) -> Permutation:
    return Permutation.from_word(word_from_matrix(A), A.total())


def length_formula(A: SuperMatrix) -> int:
    """sum_{i<k, j>l} a_{ij} a_{kl}."""
    N, a = A.N, A.entries
    return sum(a[i][j] * a[k][l] for i in range(N) for k in range(i + 1, N)
               for j in range(N) for l in range(j))


def dhat(lam, d: Permutation, m: int) -> int:
    """sum over pairs k < l with i_k > i_l of parity(i_k) parity(i_l), i = i_lam . d."""
    idx = d.act(block_index(lam))
    tot = 0
    for k in range(len(idx)):
        if idx[k] <= m:
            continue
        for l in range(k + 1, len(idx)):
            if idx[l] > m and idx[k] > idx[l]:
                tot += 1
    return tot


def dhat_closed(rho, A: SuperMatrix) -> int:
    """Closed form of dhat in terms of the entries of A."""
    rho = _parts(rho)
    N, m, a = A.N, A.m, A.entries
    tot = 0
    for j in range(N - 1):
        for i in range(1, N):
            if i < m:
                continue
            for k in range(i):
                if k < m:
                    continue
                tot += a[i][j] * (rho[k] - sum(a[k][: j + 1]))
    return tot


# ---------------------------------------------------------------------------
# statistics on matrices
# ---------------------------------------------------------------------------


def d_A(A: SuperMatrix) -> int:
    N, m, a = A.N, A.m, A.entries
    tot = 0
    for i in range(N):
        for k in range(i):
            for j in range(N):
                if not a[i][j]:
                    continue
                for l in range(j + 1, N):
                    tot += a[i][j] * a[k][l]
    for i in range(N):
        s = 1 if i < m else -1
        row = a[i]
        for j in range(N):
            for l in range(j + 1, N):
                tot += s * row[j] * row[l]
    return tot


def abar(A: SuperMatrix) -> int:
    """sum over i > m >= k and m < j < l of a_{ij} a_{kl}."""
    N, m, a = A.N, A.m, A.entries
    tot = 0
    for i in range(m, N):
        for j in range(m, N):
            if not a[i][j]:
                continue
            for k in range(m):
                for l in range(j + 1, N):
                    tot += a[i][j] * a[k][l]
    return tot


def sigma(A: SuperMatrix, k: int) -> int:
    N, m, a = A.N, A.m, A.entries
    if not 1 <= k <= N:
        raise IndexOutOfRange(f"sigma index {k} outside [1, {N}]")
    if k <= m:
        return sum(a[i][j] for i in range(m, N) for j in range(k - 1))
    return (sum(a[i][j] for i in range(m) for j in range(k, N))
            + sum(a[i][j] for i in range(m, N) for j in range(m)))


def transpose_sign(A: SuperMatrix) -> int:
    """sum over cells (i,j), (k,l) with i < k and j > l of
    a_{ij} a_{kl} (p(i) p(k) + p(j) p(l)), the sign exponent picked up when
    the norm element of A^T is compared with the transpose of that of A."""
    N, m, a = A.N, A.m, A.entries
    tot = 0
    for i in range(N):
        for j in range(N):
            x = a[i][j]
            if not x:
                continue
            for k in range(i + 1, N):
                pk = (i >= m) and (k >= m)
                for l in range(j):
                    y = a[k][l]
                    if y:
                        tot += x * y * (int(pk) + int(j >= m and l >= m))
    return tot


def norm(A: SuperMatrix) -> int:
    N, a = A.N, A.entries
    return sum(comb(j - i + 1, 2) * (a[i][j] + a[j][i]) for i in range(N) for j in range(i + 1, N))


def matrix_stat(A: SuperMatrix, kind: str, k: int | None = None) -> int:
    if kind == "dA":
        return d_A(A)
    if kind == "abar":
        return abar(A)
    if kind == "norm":
        return norm(A)
    if kind == "tsign":
        return transpose_sign(A)
    if kind in ("sigma", "sigma_k"):
        if k is None:
            raise InvalidArgs("sigma needs an index k")
        return sigma(A, k)
    raise InvalidArgs(f"unknown statistic {kind!r}")


# ---------------------------------------------------------------------------
# orders
# ---------------------------------------------------------------------------


def preceq(A: SuperMatrix, B: SuperMatrix) -> bool:
    """The corner-sum order on off-diagonal parts."""
    if A.N != B.N:
        raise ShapeMismatch("matrices of different size")
    N, a, b = A.N, A.entries, B.entries
    for s in range(N):
        for t in range(N):
            if s < t:
                sa = sum(a[i][j] for i in range(s + 1) for j in range(t, N))
                sb = sum(b[i][j] for i in range(s + 1) for j in range(t, N))
            elif s > t:
                sa = sum(a[i][j] for i in range(s, N) for j in range(t + 1))
                sb = sum(b[i][j] for i in range(s, N) for j in range(t + 1))
            else:
                continue
            if sa > sb:
                return False
    return True


def bruhat_leq(A: SuperMatrix, B: SuperMatrix) -> bool:
    if A.ro() != B.ro() or A.co() != B.co():
        raise ShapeMismatch("Bruhat comparison needs equal row and column sums")
    return bruhat_leq_perm(perm_of_matrix(A), perm_of_matrix(B))


def bruhat_leq_corner(A: SuperMatrix, B: SuperMatrix) -> bool:
    """Bruhat order on double cosets via upper-right corner sums (cross-check)."""
    if A.ro() != B.ro() or A.co() != B.co():
        raise ShapeMismatch("Bruhat comparison needs equal row and column sums")
    N, a, b = A.N, A.entries, B.entries
    for s in range(N):
        for t in range(N):
            sa = sum(a[i][j] for i in range(s + 1) for j in range(t, N))
            sb = sum(b[i][j] for i in range(s + 1) for j in range(t, N))
            if sa > sb:
                return False
    return True


def order_leq(A: SuperMatrix, B: SuperMatrix, kind: str = "bruhat") -> bool:
    if kind == "bruhat":
        return bruhat_leq(A, B)
    if kind == "preceq":
        return preceq(A.off_diagonal(), B.off_diagonal())
    raise InvalidArgs(f"unknown order {kind!r}")


def triple_sequence(N: int, ord: str = "leq1") -> list[tuple[int, int, int]]:
    """The triples 1 <= i <= h < j <= N in ascending order of leq1 or leq2."""
    if N < 2:
        raise InvalidArgs("triple sequences need N >= 2")
    triples = [(i, h, j) for j in range(2, N + 1) for i in range(1, j) for h in range(i, j)]
    if ord == "leq1":
        return sorted(triples, key=lambda t: (-t[2], -t[0], t[1]))
    if ord == "leq2":
        return sorted(triples, key=lambda t: (t[0], t[2], -t[1]))
    raise InvalidArgs(f"unknown triple order {ord!r}")


# ---------------------------------------------------------------------------
# special matrices and chains
# ---------------------------------------------------------------------------


def special_matrix(kind: str, h: int, lam, p: int = 1, m: int | None = None,
                   n: int | None = None) -> SuperMatrix:
    """U_p, L_p (column sums lam) or the key-lemma matrices B, C (column sums lam)."""
    if isinstance(lam, Composition):
        m, n = lam.m, lam.n
    lam = _parts(lam)
    if m is None or n is None:
        raise InvalidArgs("special_matrix needs m and n")
    N = m + n
    if not 1 <= h < N:
        raise IndexOutOfRange(f"h={h} outside [1, {N})")
    base = SuperMatrix.diag(m, n, lam)
    if kind == "U":
        A = base.add_units([(h + 1, h + 1, -p), (h, h + 1, p)])
    elif kind == "L":
        A = base.add_units([(h, h, -p), (h + 1, h, p)])
    elif kind == "B":
        A = base.add_units([(h, h + 1, 1), (h + 1, h + 1, -1)])
    elif kind == "C":
        A = base.add_units([(h, h, -1), (h + 1, h, 1)])
    else:
        raise InvalidArgs(f"unknown special matrix kind {kind!r}")
    if not A.in_M():
        raise NotInM(f"{kind}_{p} at h={h} for {lam} leaves M({m}|{n})")
    return A


def chain_matrices(A: SuperMatrix):
    """The almost-diagonal chains E^{(A)} (along leq1) and F^{(A)} (along leq2).

    Returns two dicts keyed by triples, each iterating in ascending order of
    its total order.
    """
    m, n, N = A.m, A.n, A.N
    if N < 2:
        return {}, {}
    seq1 = triple_sequence(N, "leq1")
    seq2 = triple_sequence(N, "leq2")

    def build(target_co, p, h, lower):
        d = list(target_co)
        if lower:
            d[h - 1] -= p
            units = [(h + 1, h, p)]
        else:
            d[h] -= p
            units = [(h, h + 1, p)]
        if min(d) < 0:
            raise ChainLeavesM(f"chain member with diagonal {d}")
        X = SuperMatrix.diag(m, n, d).add_units(units)
        if not X.in_M():
            raise ChainLeavesM(f"chain member {X} leaves M({m}|{n})")
        return X

    E = {}
    co = A.co()
    for (i, h, j) in reversed(seq1):
        X = build(co, A[i, j], h, lower=False)
        E[(i, h, j)] = X
        co = X.ro()
    F = {}
    for (i, h, j) in reversed(seq2):
        X = build(co, A[j, i], h, lower=True)
        F[(i, h, j)] = X
        co = X.ro()
    return ({t: E[t] for t in seq1}, {t: F[t] for t in seq2})
