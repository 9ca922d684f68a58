"""Formula-driven arithmetic in the q-Schur superalgebra.

Two bases are used.  In the ``N`` basis a key X stands for the relative
norm element N_{X'} (as built by ``oracle.norm_endo(X)``), and products are
written in the order "left factor applied first", matching the right action
on tensor space.  In the ``xi`` basis a key X stands for xi_X and products
are written as ordinary left-to-right products, xi_X xi_Y being nonzero only
when co(X) = ro(Y).

Elements of the realisation space are stored as ``FormalCoord`` values:
coordinates on the basis {A(j)} indexed by zero-diagonal matrices A and
integer vectors j.  Generator products there create difference quotients
with denominator 1 - v^{-2}, so a ``FormalCoord`` carries a shared
denominator power ``den``: it represents (1 - v^{-2})^{-den} sum c A(j).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import (IndexOutOfRange, InvalidArgs, NonExactDivision, NotInM,
                     UnsupportedPower)
from .qpoly import ONE, ZERO, LaurentPoly, divide_exact, gauss_binomial, quantum_factorial, vpow
from .weyl import (SuperMatrix, abar, alpha, beta, chain_matrices, compositions, d_A,
                   parity_index, require_M, sigma, signed_dot, special_matrix,
                   triple_sequence, vadd)

D_POLY = LaurentPoly({0: 1, -2: -1})  # 1 - v^{-2}


def _sgn(x: int) -> int:
    return -1 if x % 2 else 1


def _vsign(h: int, m: int) -> int:
    """Exponent sign of v_h = v^{(-1)^{parity(h)}}."""
    return 1 if h <= m else -1


def _signed_mono(sign: int, exp: int) -> LaurentPoly:
    return LaurentPoly.monomial(exp, sign)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class SchurElement:
    """Finite combination of basis elements of S(m|n, r)."""

    __slots__ = ("basis", "m", "n", "r", "terms")

    def __init__(self, m: int, n: int, r: int, terms: Mapping[SuperMatrix, LaurentPoly] | None = None,
                 basis: str = "xi"):
        if basis not in ("xi", "N"):
            raise InvalidArgs(f"unknown basis tag {basis!r}")
        self.basis, self.m, self.n, self.r = basis, m, n, r
        self.terms: dict[SuperMatrix, LaurentPoly] = {}
        for A, c in (terms or {}).items():
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.const(c)
            if c:
                self.terms[A] = c

    def _like(self, terms) -> "SchurElement":
        return SchurElement(self.m, self.n, self.r, terms, self.basis)

    def __eq__(self, other):
        return (isinstance(other, SchurElement) and self.basis == other.basis
                and (self.m, self.n, self.r) == (other.m, other.n, other.r) and self.terms == other.terms)

    def __add__(self, other: "SchurElement") -> "SchurElement":
        if (other.basis, other.m, other.n, other.r) != (self.basis, self.m, self.n, self.r):
            raise InvalidArgs("adding elements of different algebras or bases")
        out = dict(self.terms)
        for A, c in other.terms.items():
            out[A] = out.get(A, ZERO) + c
        return self._like(out)

    def __sub__(self, other: "SchurElement") -> "SchurElement":
        return self + other.scale(LaurentPoly.const(-1))

    def scale(self, c: LaurentPoly) -> "SchurElement":
        return self._like({A: x * c for A, x in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, A: SuperMatrix) -> LaurentPoly:
        return self.terms.get(A, ZERO)

    def parities(self) -> set[int]:
        return {A.parity() for A in self.terms}

    def __repr__(self):
        body = ", ".join(f"({c}){A}" for A, c in sorted(self.terms.items()))
        return f"SchurElement[{self.basis}]({body})"

    def to_json(self) -> dict:
        return {"basis": self.basis, "m": self.m, "n": self.n, "r": self.r,
                "terms": [{"matrix": A.to_json(), "coeff": c.to_json()}
                          for A, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, obj) -> "SchurElement":
        try:
            basis = obj.get("basis", "xi")
            m, n, r = int(obj["m"]), int(obj["n"]), int(obj["r"])
            terms: dict = {}
            for t in obj["terms"]:
                A = SuperMatrix.from_json(t["matrix"])
                terms[A] = terms.get(A, ZERO) + LaurentPoly.from_json(t["coeff"])
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            raise InvalidArgs(f"malformed Schur element JSON: {exc}") from exc
        for A in terms:
            if (A.m, A.n) != (m, n) or A.total() != r or not A.in_M():
                raise InvalidArgs(f"matrix {A} is not in M({m}|{n},{r})")
        return cls(m, n, r, terms, basis)


def _acc(out: dict, key, c: LaurentPoly) -> None:
    s = out.get(key, ZERO) + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


class FormalCoord:
    """sum c_{A,j} A(j) / den, where den is a product of factor polynomials.

    The denominator is stored as a map factor -> exponent.  Factors are only
    ever 1 - v^{-2} (from difference quotients) and quantum integers (from
    divided powers); a factor is cancelled whenever every numerator is
    divisible by it.  Equality is decided by cross-multiplication, so two
    values compare equal exactly when they agree over Q(v).
    """

    __slots__ = ("m", "n", "terms", "den")

    def __init__(self, m: int, n: int, terms: Mapping | None = None,
                 den: Mapping[LaurentPoly, int] | None = None):
        self.m, self.n = m, n
        clean = {}
        for (A, j), c in (terms or {}).items():
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.const(c)
            if c:
                clean[(A, tuple(j))] = c
        self.terms = clean
        self.den = {f: e for f, e in (den or {}).items() if e > 0}
        self._reduce()

    def _reduce(self) -> None:
        if not self.terms:
            self.den = {}
            return
        for f in list(self.den):
            while self.den.get(f):
                try:
                    red = {k: divide_exact(c, f) for k, c in self.terms.items()}
                except NonExactDivision:
                    break
                self.terms = red
                self.den[f] -= 1
                if not self.den[f]:
                    del self.den[f]

    @classmethod
    def basis_element(cls, A: SuperMatrix, j: Sequence[int], c: LaurentPoly = ONE) -> "FormalCoord":
        return cls(A.m, A.n, {(A, tuple(j)): c})

    @classmethod
    def O(cls, m: int, n: int, j: Sequence[int] | None = None) -> "FormalCoord":
        j = tuple(j) if j is not None else (0,) * (m + n)
        return cls(m, n, {(SuperMatrix.zero(m, n), j): ONE})

    def den_poly(self) -> LaurentPoly:
        out = ONE
        for f, e in self.den.items():
            out = out * f ** e
        return out

    def _lift(self, den: Mapping[LaurentPoly, int]) -> dict:
        f = ONE
        for g, e in den.items():
            extra = e - self.den.get(g, 0)
            if extra:
                f = f * g ** extra
        if f == ONE:
            return dict(self.terms)
        return {k: c * f for k, c in self.terms.items()}

    def __add__(self, other: "FormalCoord") -> "FormalCoord":
        den = dict(self.den)
        for g, e in other.den.items():
            den[g] = max(den.get(g, 0), e)
        out = self._lift(den)
        for k, c in other._lift(den).items():
            _acc(out, k, c)
        return FormalCoord(self.m, self.n, out, den)

    def __sub__(self, other: "FormalCoord") -> "FormalCoord":
        return self + other.scale(LaurentPoly.const(-1))

    def scale(self, c: LaurentPoly) -> "FormalCoord":
        return FormalCoord(self.m, self.n, {k: x * c for k, x in self.terms.items()}, self.den)

    def divide(self, c: LaurentPoly) -> "FormalCoord":
        """Division by a nonzero polynomial (recorded as a denominator factor)."""
        if not c:
            raise InvalidArgs("division by the zero polynomial")
        den = dict(self.den)
        den[c] = den.get(c, 0) + 1
        return FormalCoord(self.m, self.n, dict(self.terms), den)

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return not self.den

    def __eq__(self, other):
        if not isinstance(other, FormalCoord) or (self.m, self.n) != (other.m, other.n):
            return False
        if self.den == other.den:
            return self.terms == other.terms
        a, b = self.den_poly(), other.den_poly()
        left = {k: c * b for k, c in self.terms.items()}
        right = {k: c * a for k, c in other.terms.items()}
        return left == right

    def coeff(self, A: SuperMatrix, j: Sequence[int]) -> tuple[LaurentPoly, LaurentPoly]:
        """The coordinate at (A, j) as a (numerator, denominator) pair."""
        return self.terms.get((A, tuple(j)), ZERO), self.den_poly()

    def coeff_equals(self, A: SuperMatrix, j: Sequence[int], value: LaurentPoly) -> bool:
        num, den = self.coeff(A, j)
        return num == value * den

    def support(self) -> list[tuple[SuperMatrix, tuple[int, ...]]]:
        return [k for k, _ in sorted(self.terms.items(), key=_fkey)]

    def matrices(self) -> set[SuperMatrix]:
        return {A for A, _ in self.terms}

    def __repr__(self):
        body = " + ".join(f"({c}){A}{list(j)}" for (A, j), c in sorted(self.terms.items(), key=_fkey))
        tail = f" / ({self.den_poly()})" if self.den else ""
        return f"FormalCoord({body or 0}{tail})"

    def to_json(self) -> dict:
        out = {"m": self.m, "n": self.n,
               "terms": [{"matrix": A.to_json(), "j": list(j), "coeff": c.to_json()}
                         for (A, j), c in sorted(self.terms.items(), key=_fkey)]}
        if self.den:
            out["den"] = self.den_poly().to_json()
        return out

    @classmethod
    def from_json(cls, obj) -> "FormalCoord":
        try:
            m, n = int(obj["m"]), int(obj["n"])
            den = LaurentPoly.from_json(obj["den"]) if "den" in obj else ONE
            terms: dict = {}
            for t in obj["terms"]:
                A = SuperMatrix.from_json(t["matrix"])
                j = tuple(int(x) for x in t["j"])
                terms[(A, j)] = terms.get((A, j), ZERO) + LaurentPoly.from_json(t["coeff"])
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            raise InvalidArgs(f"malformed formal coordinate JSON: {exc}") from exc
        if not den:
            raise InvalidArgs("zero denominator")
        for A, j in terms:
            if (A.m, A.n) != (m, n) or not A.in_M() or any(A.entries[i][i] for i in range(A.N)) or len(j) != A.N:
                raise InvalidArgs(f"bad basis pair {A}, {j}")
        return cls(m, n, terms, {} if den == ONE else {den: 1})


def _fkey(item):
    (A, j), _ = item
    return (A.entries, j)


# ---------------------------------------------------------------------------
# coefficient functions
# ---------------------------------------------------------------------------


def _row(A: SuperMatrix, h: int) -> tuple[int, ...]:
    return A.entries[h - 1]


def _check_h(A: SuperMatrix, h: int) -> None:
    if not 1 <= h < A.N:
        raise IndexOutOfRange(f"h={h} outside [1, {A.N})")


def _lower_left_sum(A: SuperMatrix, k: int) -> int:
    """sum over i > m, j < k of a_{ij}."""
    m, N = A.m, A.N
    return sum(A.entries[i][j] for i in range(m, N) for j in range(k - 1))


def f_k(A: SuperMatrix, h: int, k: int) -> LaurentPoly:
    """f_k(q; A, h) as a signed power of v."""
    _check_h(A, h)
    m = A.m
    rh, rh1 = _row(A, h), _row(A, h + 1)
    if h < m:
        return vpow(2 * sum(rh[k:]))
    if h == m:
        return _signed_mono(_sgn(_lower_left_sum(A, k)), 2 * (sum(rh[k:]) - sum(rh1[: k - 1])))
    return vpow(-2 * sum(rh1[: k - 1]))


def g_k(A: SuperMatrix, h: int, k: int) -> LaurentPoly:
    """g_k(q; A, h+1); ``h`` is the lower of the two row indices."""
    _check_h(A, h)
    m = A.m
    rh, rh1 = _row(A, h), _row(A, h + 1)
    if h < m:
        return vpow(2 * sum(rh1[: k - 1]))
    if h == m:
        return LaurentPoly.const(_sgn(_lower_left_sum(A, k)))
    return vpow(-2 * sum(rh[k:]))


def _pairs(nu: Sequence[int]) -> int:
    """sum over t < t' of nu_t nu_{t'}."""
    tot, run = 0, 0
    for x in nu:
        tot += run * x
        run += x
    return tot


def _single(nu: Sequence[int]) -> int | None:
    if sum(nu) == 1:
        return nu.index(1) + 1
    return None


def f_nu(A: SuperMatrix, h: int, nu: Sequence[int]) -> LaurentPoly:
    _check_h(A, h)
    nu = tuple(nu)
    p = sum(nu)
    if p == 0:
        return ONE
    if p == 1:
        return f_k(A, h, _single(nu))
    m = A.m
    if h == m:
        return ZERO
    if h < m:
        rh = _row(A, h)
        return vpow(2 * sum(nu[t] * sum(rh[t + 1:]) for t in range(len(nu))))
    rh1 = _row(A, h + 1)
    return vpow(2 * (_pairs(nu) - sum(nu[t] * sum(rh1[:t]) for t in range(len(nu)))))


def g_nu(A: SuperMatrix, h: int, nu: Sequence[int]) -> LaurentPoly:
    _check_h(A, h)
    nu = tuple(nu)
    p = sum(nu)
    if p == 0:
        return ONE
    if p == 1:
        return g_k(A, h, _single(nu))
    m = A.m
    if h == m:
        return ZERO
    if h < m:
        rh1 = _row(A, h + 1)
        return vpow(2 * sum(nu[t] * sum(rh1[:t]) for t in range(len(nu))))
    rh = _row(A, h)
    return vpow(2 * (_pairs(nu) - sum(nu[t] * sum(rh[t + 1:]) for t in range(len(nu)))))


def f_h_exp(nu: Sequence[int], A: SuperMatrix, h: int) -> int:
    """f_h(nu, A), the exponent of v_h in the normalised U-formula."""
    rh, rh1 = _row(A, h), _row(A, h + 1)
    return (sum(nu[t] * sum(rh[t:]) for t in range(len(nu)))
            - sum(nu[t] * sum(rh1[t + 1:]) for t in range(len(nu))) + _pairs(nu))


def fp_h_exp(nu: Sequence[int], A: SuperMatrix, h: int) -> int:
    """f'_h(nu, A), the exponent of v_{h+1} in the normalised L-formula."""
    rh, rh1 = _row(A, h), _row(A, h + 1)
    return (sum(nu[t] * sum(rh1[: t + 1]) for t in range(len(nu)))
            - sum(nu[t] * sum(rh[:t]) for t in range(len(nu))) + _pairs(nu))


def f_m_exp(k: int, A: SuperMatrix) -> int:
    m = A.m
    return sum(_row(A, m)[k - 1:]) + sum(_row(A, m + 1)[k:])


def fp_m_exp(k: int, A: SuperMatrix) -> int:
    m = A.m
    return sum(_row(A, m + 1)[:k]) + sum(_row(A, m)[: k - 1])


def epsilon(h: int, m: int) -> int:
    return (parity_index(h, m) + parity_index(h + 1, m)) % 2


def f_formal(A: SuperMatrix, h: int, k: int) -> int:
    """f(k) = sum_{j>=k} a_{h,j} - (-1)^eps sum_{j>k} a_{h+1,j}."""
    s = _sgn(epsilon(h, A.m))
    return sum(_row(A, h)[k - 1:]) - s * sum(_row(A, h + 1)[k:])


def fp_formal(A: SuperMatrix, h: int, k: int) -> int:
    """f'(k) = sum_{j<=k} a_{h+1,j} - (-1)^eps sum_{j<k} a_{h,j}."""
    s = _sgn(epsilon(h, A.m))
    return sum(_row(A, h + 1)[:k]) - s * sum(_row(A, h)[: k - 1])


def coefficient(kind: str, **args):
    """Dispatch to the coefficient functions by name."""
    table = {
        "f_k": lambda: f_k(args["A"], args["h"], args["k"]),
        "g_k": lambda: g_k(args["A"], args["h"], args["k"]),
        "f_nu": lambda: f_nu(args["A"], args["h"], args["nu"]),
        "g_nu": lambda: g_nu(args["A"], args["h"], args["nu"]),
        "f_h": lambda: f_h_exp(args["nu"], args["A"], args["h"]),
        "fp_h": lambda: fp_h_exp(args["nu"], args["A"], args["h"]),
        "f_m": lambda: f_m_exp(args["k"], args["A"]),
        "fp_m": lambda: fp_m_exp(args["k"], args["A"]),
        "f": lambda: f_formal(args["A"], args["h"], args["k"]),
        "fp": lambda: fp_formal(args["A"], args["h"], args["k"]),
        "epsilon": lambda: epsilon(args["h"], args["m"]),
    }
    if kind not in table:
        raise InvalidArgs(f"unknown coefficient kind {kind!r}")
    return table[kind]()


# ---------------------------------------------------------------------------
# products in the N basis
# ---------------------------------------------------------------------------


def _bounded_vectors(bound: Sequence[int], p: int) -> Iterable[tuple[int, ...]]:
    """All nu with |nu| = p and nu <= bound entrywise."""
    if not bound:
        if p == 0:
            yield ()
        return
    for x in range(min(p, bound[0]) + 1):
        for rest in _bounded_vectors(bound[1:], p - x):
            yield (x,) + rest


def _shift_rows(A: SuperMatrix, h: int, nu: Sequence[int], sign: int) -> SuperMatrix:
    """A + sign * sum_l nu_l (E_{h,l} - E_{h+1,l})."""
    rows = [list(r) for r in A.entries]
    for l, x in enumerate(nu):
        if x:
            rows[h - 1][l] += sign * x
            rows[h][l] -= sign * x
    return SuperMatrix._trusted(A.m, A.n, tuple(tuple(r) for r in rows))


def mul_key_N(A: SuperMatrix, h: int, dir: str) -> SchurElement:
    """N_{A'} N_{B'} (dir ``B``) or N_{A'} N_{C'} (dir ``C``) in the N basis."""
    require_M(A)
    _check_h(A, h)
    m, n, r = A.m, A.n, A.total()
    out: dict = {}
    N = A.N
    if dir == "B":
        s = _vsign(h, m)
        for k in range(1, N + 1):
            if A[h + 1, k] < 1:
                continue
            X = A.add_units([(h, k, 1), (h + 1, k, -1)])
            if not X.in_M():
                continue
            _acc(out, X, f_k(A, h, k) * gauss_binomial(A[h, k] + 1, 1, "bracket", s))
    elif dir == "C":
        s = _vsign(h + 1, m)
        for k in range(1, N + 1):
            if A[h, k] < 1:
                continue
            X = A.add_units([(h, k, -1), (h + 1, k, 1)])
            if not X.in_M():
                continue
            _acc(out, X, g_k(A, h, k) * gauss_binomial(A[h + 1, k] + 1, 1, "bracket", s))
    else:
        raise InvalidArgs(f"key-lemma direction must be B or C, got {dir!r}")
    return SchurElement(m, n, r, out, "N")


def mul_N_ULp(A: SuperMatrix, h: int, p: int, dir: str) -> SchurElement:
    """N_{A'} N_{U_p'} (dir ``U``) or N_{A'} N_{L_p'} (dir ``L``) in the N basis,
    with U_p, L_p built from ro(A)."""
    require_M(A)
    _check_h(A, h)
    m, n, r = A.m, A.n, A.total()
    if p < 0:
        raise InvalidArgs("p must be nonnegative")
    out: dict = {}
    if dir == "U":
        s = _vsign(h, m)
        for nu in _bounded_vectors(_row(A, h + 1), p):
            c = f_nu(A, h, nu)
            if not c:
                continue
            X = _shift_rows(A, h, nu, 1)
            if not X.in_M():
                continue
            for k, x in enumerate(nu):
                if x:
                    c = c * gauss_binomial(A.entries[h - 1][k] + x, x, "bracket", s)
            _acc(out, X, c)
    elif dir == "L":
        s = _vsign(h + 1, m)
        for nu in _bounded_vectors(_row(A, h), p):
            c = g_nu(A, h, nu)
            if not c:
                continue
            X = _shift_rows(A, h, nu, -1)
            if not X.in_M():
                continue
            for k, x in enumerate(nu):
                if x:
                    c = c * gauss_binomial(A.entries[h][k] + x, x, "bracket", s)
            _acc(out, X, c)
    else:
        raise InvalidArgs(f"direction must be U or L, got {dir!r}")
    return SchurElement(m, n, r, out, "N")


def mul_N_ULp_chain(A: SuperMatrix, h: int, p: int, dir: str) -> SchurElement:
    """N_{A'} N_{U_p'} computed by iterating the key lemma.

    Uses N_{U_p'} N_{B_p'} = [[p+1]] N_{U_{p+1}'}, so that
    N_{A'} N_{U_{p+1}'} = (N_{A'} N_{U_p'} N_{B_p'}) / [[p+1]]_{q_h}.
    """
    require_M(A)
    m, n, r = A.m, A.n, A.total()
    if p == 0:
        return SchurElement(m, n, r, {A: ONE}, "N")
    key_dir = "B" if dir == "U" else "C"
    cur = mul_key_N(A, h, key_dir)
    s = _vsign(h if dir == "U" else h + 1, m)
    for q in range(1, p):
        nxt = SchurElement(m, n, r, basis="N")
        for X, c in cur.terms.items():
            nxt = nxt + mul_key_N(X, h, key_dir).scale(c)
        den = gauss_binomial(q + 1, 1, "bracket", s)
        cur = SchurElement(m, n, r, {X: divide_exact(c, den) for X, c in nxt.terms.items()}, "N")
    return cur


# ---------------------------------------------------------------------------
# products in the xi basis
# ---------------------------------------------------------------------------


def mul_xi_ULp(A: SuperMatrix, h: int, p: int, dir: str) -> SchurElement:
    """xi_{U_p} xi_A (dir ``U``) or xi_{L_p} xi_A (dir ``L``) with U_p, L_p
    built from ro(A)."""
    require_M(A)
    _check_h(A, h)
    m, n, r = A.m, A.n, A.total()
    out: dict = {}
    if h == m:
        if p == 0:
            return SchurElement(m, n, r, {A: ONE})
        if p >= 2:
            return SchurElement(m, n, r)
        N = A.N
        if dir == "U":
            for k in range(1, N + 1):
                if A[m + 1, k] < 1:
                    continue
                X = A.add_units([(m, k, 1), (m + 1, k, -1)])
                if not X.in_M():
                    continue
                c = _signed_mono(_sgn(_lower_left_sum(A, k)), f_m_exp(k, A))
                _acc(out, X, c * gauss_binomial(A[m, k] + 1, 1, "bar", 1))
        elif dir == "L":
            for k in range(1, N + 1):
                if A[m, k] < 1:
                    continue
                X = A.add_units([(m, k, -1), (m + 1, k, 1)])
                if not X.in_M():
                    continue
                c = _signed_mono(_sgn(_lower_left_sum(A, k)), -fp_m_exp(k, A))
                _acc(out, X, c * gauss_binomial(A[m + 1, k] + 1, 1, "bar", -1))
        else:
            raise InvalidArgs(f"direction must be U or L, got {dir!r}")
        return SchurElement(m, n, r, out)
    s = _vsign(h, m)
    if dir == "U":
        for nu in _bounded_vectors(_row(A, h + 1), p):
            X = _shift_rows(A, h, nu, 1)
            if not X.in_M():
                continue
            c = vpow(f_h_exp(nu, A, h), s)
            for k, x in enumerate(nu):
                if x:
                    c = c * gauss_binomial(A.entries[h - 1][k] + x, x, "bar", s)
            _acc(out, X, c)
    elif dir == "L":
        for nu in _bounded_vectors(_row(A, h), p):
            X = _shift_rows(A, h, nu, -1)
            if not X.in_M():
                continue
            c = vpow(fp_h_exp(nu, A, h), s)
            for k, x in enumerate(nu):
                if x:
                    c = c * gauss_binomial(A.entries[h][k] + x, x, "bar", s)
            _acc(out, X, c)
    else:
        raise InvalidArgs(f"direction must be U or L, got {dir!r}")
    return SchurElement(m, n, r, out)


def xi_from_N_product(A: SuperMatrix, h: int, p: int, dir: str, tau_sign: bool) -> SchurElement:
    """xi_{U_p} xi_A obtained from the N-basis product N_{A'} N_{U_p'}.

    Applying the transpose anti-automorphism and rescaling gives
    xi_{U} xi_A = sign * sum_X c_X v^{d(X) - d(U) - d(A)} xi_X, where sign is
    (-1)^{parity(U) parity(A)} when ``tau_sign`` holds and 1 otherwise.
    """
    require_M(A)
    m, n, r = A.m, A.n, A.total()
    try:
        U = special_matrix(dir, h, A.ro(), p, m, n)
    except NotInM:
        return SchurElement(m, n, r)
    base = -d_A(U) - d_A(A)
    sign = _sgn(U.parity() * A.parity()) if tau_sign else 1
    prod = mul_N_ULp(A, h, p, dir)
    return SchurElement(m, n, r, {X: c.scale(sign, d_A(X) + base) for X, c in prod.terms.items()})


def mul_xi_generator(h: int, dir: str, Y: SchurElement, p: int = 1) -> SchurElement:
    """sum over U-type (or L-type) p-matrices M of xi_M times Y."""
    out = SchurElement(Y.m, Y.n, Y.r)
    for B, c in Y.terms.items():
        out = out + mul_xi_ULp(B, h, p, dir).scale(c)
    return out


def mul_xi_diag(weights: Mapping[tuple, LaurentPoly], Y: SchurElement) -> SchurElement:
    """(sum_lam c_lam xi_{diag lam}) * Y."""
    out = {}
    for B, c in Y.terms.items():
        w = weights.get(B.ro())
        if w:
            out[B] = c * w
    return SchurElement(Y.m, Y.n, Y.r, out)


def mul_xi_structured(left: SchurElement, right: SchurElement) -> SchurElement:
    """left * right when left is diagonal or a sum of U_p / L_p type elements.

    Raises InvalidArgs for left factors not covered by the multiplication
    formulas (general products are computed by the oracle).
    """
    if left.basis != "xi" or right.basis != "xi":
        raise InvalidArgs("structured products use the xi basis")
    if (left.m, left.n, left.r) != (right.m, right.n, right.r):
        raise InvalidArgs("factors from different algebras")
    if not left.terms:
        return SchurElement(left.m, left.n, left.r)
    if all(A.is_diagonal() for A in left.terms):
        return mul_xi_diag({A.diagonal(): c for A, c in left.terms.items()}, right)
    out = SchurElement(right.m, right.n, right.r)
    for M, c in left.terms.items():
        kind = _ul_type(M)
        if kind is None:
            raise InvalidArgs(f"{M} is neither diagonal nor of U_p or L_p shape")
        h, p, dir = kind
        for B, x in right.terms.items():
            if B.ro() != M.co():
                continue
            out = out + mul_xi_ULp(B, h, p, dir).scale(c * x)
    return out


def _ul_type(M: SuperMatrix):
    off = [(i, j, x) for i, row in enumerate(M.entries, 1) for j, x in enumerate(row, 1) if i != j and x]
    if M.is_diagonal():
        return None
    if len(off) != 1:
        return None
    i, j, x = off[0]
    if j == i + 1:
        return (i, x, "U")
    if i == j + 1:
        return (j, x, "L")
    return None


# ---------------------------------------------------------------------------
# the elements A(j, r)
# ---------------------------------------------------------------------------


def _check_zero_diag(A: SuperMatrix) -> None:
    if any(A.entries[i][i] for i in range(A.N)):
        raise InvalidArgs(f"{A} must have zero diagonal")


def a_element(A: SuperMatrix, j: Sequence[int], r: int) -> SchurElement:
    """A(j, r) = sum_lam (-1)^{abar(A + lam)} v^{lam . j} xi_{A + lam}."""
    _check_zero_diag(A)
    m, n, N = A.m, A.n, A.N
    j = tuple(j)
    if len(j) != N:
        raise InvalidArgs("j has the wrong length")
    s = A.total()
    if s > r or not A.in_M():
        return SchurElement(m, n, r)
    out = {}
    for lam in compositions(N, r - s):
        X = A.with_diagonal(lam)
        out[X] = _signed_mono(_sgn(abar(X)), signed_dot(lam, j, m))
    return SchurElement(m, n, r, out)


def o_element(j: Sequence[int], r: int, m: int, n: int) -> SchurElement:
    return a_element(SuperMatrix.zero(m, n), j, r)


def truncate(X: FormalCoord, r: int) -> SchurElement:
    """The image of X in S(m|n, r); raises NonExactDivision when a
    denominator of X survives at level r."""
    out = SchurElement(X.m, X.n, r)
    for (A, j), c in X.terms.items():
        out = out + a_element(A, j, r).scale(c)
    if X.den:
        f = X.den_poly()
        out = SchurElement(X.m, X.n, r, {B: divide_exact(c, f) for B, c in out.terms.items()})
    return out


# ---------------------------------------------------------------------------
# formal products
# ---------------------------------------------------------------------------


def mul_o_formal(j: Sequence[int], X: FormalCoord, side: str = "left") -> FormalCoord:
    """O(j) X (``left``) or X O(j) (``right``)."""
    j = tuple(j)
    m = X.m
    out = {}
    for (A, jj), c in X.terms.items():
        w = A.ro() if side == "left" else A.co() if side == "right" else None
        if w is None:
            raise InvalidArgs(f"side must be left or right, got {side!r}")
        _acc(out, (A, vadd(jj, j)), c.shift(signed_dot(w, j, m)))
    return FormalCoord(X.m, X.n, out, X.den)


def _ok_pm(A: SuperMatrix) -> bool:
    return A.in_M() and not any(A.entries[i][i] for i in range(A.N))


def mul_gen_formal(gen: str, h: int, X: FormalCoord) -> FormalCoord:
    """E_{h,h+1}(0) X (gen ``E``) or E_{h+1,h}(0) X (gen ``F``)."""
    m, n = X.m, X.n
    N = m + n
    if not 1 <= h < N:
        raise IndexOutOfRange(f"h={h} outside [1, {N})")
    eps = epsilon(h, m)
    s_eps = _sgn(eps)
    al, be = alpha(h, N), beta(h, N)
    plain: dict = {}
    quot: dict = {}
    for (A, j), c in X.terms.items():
        if gen == "E":
            vs = _vsign(h, m)

            def sg(k):
                return _sgn(eps * sigma(A, k))

            for k in range(1, N + 1):
                if k in (h, h + 1) or A[h + 1, k] < 1:
                    continue
                Y = A.add_units([(h, k, 1), (h + 1, k, -1)])
                if not _ok_pm(Y):
                    continue
                coef = _signed_mono(sg(k), vs * f_formal(A, h, k)) * gauss_binomial(A[h, k] + 1, 1, "bar", vs)
                _acc(plain, (Y, vadd(j, al) if k < h else j), c * coef)
            Y = A.add_units([(h, h + 1, 1)])
            if _ok_pm(Y):
                e = f_formal(A, h, h + 1) + s_eps * j[h]
                coef = _signed_mono(sg(h + 1), vs * e) * gauss_binomial(A[h, h + 1] + 1, 1, "bar", vs)
                _acc(plain, (Y, j), c * coef)
            if A[h + 1, h] >= 1:
                Y = A.add_units([(h + 1, h, -1)])
                e = f_formal(A, h, h) - j[h - 1] - 1
                coef = _signed_mono(sg(h), vs * e) * _inv_D_unit(vs)
                _acc(quot, (Y, vadd(j, al)), c * coef)
                _acc(quot, (Y, vadd(j, be)), -(c * coef))
        elif gen == "F":
            vs = _vsign(h + 1, m)

            def sg(k):
                return _sgn(eps * sigma(A, k))

            for k in range(1, N + 1):
                if k in (h, h + 1) or A[h, k] < 1:
                    continue
                Y = A.add_units([(h, k, -1), (h + 1, k, 1)])
                if not _ok_pm(Y):
                    continue
                coef = _signed_mono(sg(k), vs * fp_formal(A, h, k)) * gauss_binomial(A[h + 1, k] + 1, 1, "bar", vs)
                _acc(plain, (Y, j if k < h else vadd(j, al, -1)), c * coef)
            Y = A.add_units([(h + 1, h, 1)])
            if _ok_pm(Y):
                e = fp_formal(A, h, h) + s_eps * j[h - 1]
                coef = _signed_mono(sg(h), vs * e) * gauss_binomial(A[h + 1, h] + 1, 1, "bar", vs)
                _acc(plain, (Y, j), c * coef)
            if A[h, h + 1] >= 1:
                Y = A.add_units([(h, h + 1, -1)])
                e = fp_formal(A, h, h + 1) - j[h] - 1
                coef = _signed_mono(sg(h + 1), vs * e) * _inv_D_unit(vs)
                _acc(quot, (Y, vadd(j, al, -1)), c * coef)
                _acc(quot, (Y, vadd(j, be)), -(c * coef))
        else:
            raise InvalidArgs(f"generator must be E or F, got {gen!r}")
    out = FormalCoord(m, n, plain, X.den)
    if quot:
        den = dict(X.den)
        den[D_POLY] = den.get(D_POLY, 0) + 1
        out = out + FormalCoord(m, n, quot, den)
    return out


def _inv_D_unit(vs: int) -> LaurentPoly:
    """u with 1/(1 - v_h^{-2}) = u / (1 - v^{-2})."""
    if vs > 0:
        return ONE
    return LaurentPoly.monomial(-2, -1)  # 1/(1 - v^2) = -v^{-2}/(1 - v^{-2})


def divided_power_formal(gen: str, h: int, k: int, X: FormalCoord, m: int) -> FormalCoord:
    """(k E)(0) X = gen^k X / [k]!_{v_h} (v_{h+1} for F)."""
    if k <= 1:
        return X if k == 0 else mul_gen_formal(gen, h, X)
    if h == m:
        raise UnsupportedPower("divided powers of odd generators vanish beyond k = 1")
    for _ in range(k):
        X = mul_gen_formal(gen, h, X)
    return X.divide(quantum_factorial(k, "symmetric_v"))


# ---------------------------------------------------------------------------
# triangular products
# ---------------------------------------------------------------------------


def psi_product(A: SuperMatrix) -> SchurElement:
    """Psi_A: the chain product of xi_F factors (leq2) and xi_E factors (leq1)."""
    require_M(A)
    m, n, r = A.m, A.n, A.total()
    N = A.N
    if N < 2:
        return SchurElement(m, n, r, {A: ONE})
    E, F = chain_matrices(A)
    seq1 = triple_sequence(N, "leq1")
    seq2 = triple_sequence(N, "leq2")
    acc = SchurElement(m, n, r, {E[seq1[-1]]: ONE})
    for t in reversed(seq1[:-1]):
        i, h, j = t
        p = A[i, j]
        if p:
            acc = mul_xi_generator(h, "U", acc, p)
    for t in reversed(seq2):
        i, h, j = t
        p = A[j, i]
        if p:
            acc = mul_xi_generator(h, "L", acc, p)
    return acc


def monomial_formal(A: SuperMatrix, j: Sequence[int] | None = None) -> FormalCoord:
    """M_{A,j}: divided powers of E along leq1, then O(j), then divided powers of F along leq2."""
    _check_zero_diag(A)
    require_M(A)
    m, n, N = A.m, A.n, A.N
    j = tuple(j) if j is not None else (0,) * N
    X = FormalCoord.O(m, n)
    if N < 2:
        return mul_o_formal(j, X)
    for (i, h, jj) in reversed(triple_sequence(N, "leq1")):
        X = divided_power_formal("E", h, A[i, jj], X, m)
    X = mul_o_formal(j, X)
    for (i, h, jj) in reversed(triple_sequence(N, "leq2")):
        X = divided_power_formal("F", h, A[jj, i], X, m)
    return X
