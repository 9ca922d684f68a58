"""Exact Laurent polynomials in one variable v (with q = v**2) and quantum scalars.

A ``LaurentPoly`` is an immutable map ``exponent -> integer`` with no zero
values.  Every quantum number used elsewhere in the package is built here:

* quantum integers ``[[n]] = 1 + q + ... + q**(n-1)`` and the balanced
  ``[n] = (v**n - v**-n) / (v - v**-1)``,
* their factorials and Gaussian binomials, including the bar-normalised
  binomial ``q**(-s(N-s)) [[N, s]]``.

The parity-twisted variables ``q_h`` and ``v_h`` are not separate ring
elements: a ``sign`` argument of ``-1`` substitutes ``v -> v**-1``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from . import _kernels as K
from .errors import InvalidArgs, NonExactDivision

__all__ = [
    "LaurentPoly",
    "ZERO",
    "ONE",
    "V",
    "Q",
    "vpow",
    "poly_arith",
    "quantum_int",
    "quantum_factorial",
    "gauss_binomial",
    "divide_exact",
]


class LaurentPoly:
    """Integer Laurent polynomial in v.

    >>> p = LaurentPoly({1: 1, -1: 1})
    >>> p * LaurentPoly({1: 1, -1: -1}) == LaurentPoly({2: 1, -2: -1})
    True
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        if coeffs:
            self._c = {int(e): int(c) for e, c in coeffs.items() if c}
        else:
            self._c = {}
        self._hash = None

    @classmethod
    def _raw(cls, d: dict) -> "LaurentPoly":
        # trusted constructor: ``d`` has int keys, no zero values, and is not shared
        p = object.__new__(cls)
        p._c = d
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exp: coeff} if coeff else {})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls.monomial(0, c)

    # -- inspection -------------------------------------------------------
    def items(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.items())

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_unit(self) -> bool:
        """True for the units of Z[v, v^-1], i.e. +-v**k."""
        return len(self._c) == 1 and abs(next(iter(self._c.values()))) == 1

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LaurentPoly._raw(K.poly_add(self._c, o._c))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LaurentPoly._raw(K.poly_sub(self._c, o._c))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LaurentPoly._raw(K.poly_sub(o._c, self._c))

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: c * other for e, c in self._c.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LaurentPoly._raw(K.poly_mul(self._c, o._c))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise InvalidArgs("negative power of a non-unit")
            (e, c), = self._c.items()
            return LaurentPoly._raw({e * k: c ** (-k)})  # c is +-1
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v**k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._c.items()})

    def scale(self, c: int, k: int = 0) -> "LaurentPoly":
        """Return c * v**k * self."""
        return LaurentPoly._raw(K.poly_scale_shift(self._c, c, k))

    def bar(self) -> "LaurentPoly":
        """The involution v -> v**-1."""
        return LaurentPoly._raw({-e: c for e, c in self._c.items()})

    def twist(self, sign: int) -> "LaurentPoly":
        """Substitute v -> v**sign (sign = +-1)."""
        return self if sign > 0 else self.bar()

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        return sum((Fraction(c) * x ** e for e, c in self._c.items()), Fraction(0))

    def evaluate_mod(self, x: int, p: int) -> int:
        """Value at v = x in Z/p (x must be invertible mod p)."""
        inv = pow(x, -1, p)
        tot = 0
        for e, c in self._c.items():
            tot += c * (pow(x, e, p) if e >= 0 else pow(inv, -e, p))
        return tot % p

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- presentation -----------------------------------------------------
    def __repr__(self):
        return f"LaurentPoly({dict(self.items())!r})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, c in sorted(self._c.items(), reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "v" if e == 1 else f"v^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, body in parts[1:]:
            out += f" {s} {body}"
        return out

    def to_json(self) -> dict:
        return {"v": {str(e): c for e, c in self.items()}}

    @classmethod
    def from_json(cls, obj) -> "LaurentPoly":
        if isinstance(obj, int):
            return cls.const(obj)
        if not isinstance(obj, dict) or "v" not in obj or not isinstance(obj["v"], dict):
            raise InvalidArgs(f"malformed LaurentPoly JSON: {obj!r}")
        out = {}
        for k, c in obj["v"].items():
            if not isinstance(c, int) or isinstance(c, bool):
                raise InvalidArgs(f"non-integer coefficient {c!r}")
            try:
                e = int(k)
            except ValueError:
                raise InvalidArgs(f"bad exponent key {k!r}") from None
            if c:
                out[e] = out.get(e, 0) + c
        return cls(out)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
V = LaurentPoly.monomial(1)
Q = LaurentPoly.monomial(2)


def vpow(e: int, sign: int = 1) -> LaurentPoly:
    """v_h**e where v_h = v**sign."""
    return LaurentPoly._raw({e * sign: 1})


def psum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    acc: dict = {}
    for p in polys:
        for e, c in p._c.items():
            acc[e] = acc.get(e, 0) + c
    return LaurentPoly(acc)


def poly_arith(a: LaurentPoly, b: LaurentPoly, kind: str) -> LaurentPoly:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise InvalidArgs(f"unknown arithmetic kind {kind!r}")


def _sign(sign) -> int:
    if sign in (1, "+", "+1"):
        return 1
    if sign in (-1, "-", "-1", "−"):
        return -1
    raise InvalidArgs(f"sign must be + or -, got {sign!r}")


@lru_cache(maxsize=None)
def _qint(n: int, variant: str, sign: int) -> LaurentPoly:
    if n < 0:
        raise InvalidArgs("quantum integer of a negative number")
    if variant == "bracket_q":
        return LaurentPoly({2 * k * sign: 1 for k in range(n)})
    if variant == "symmetric_v":
        # [n] is bar-invariant, so the sign has no effect
        return LaurentPoly({n - 1 - 2 * k: 1 for k in range(n)})
    raise InvalidArgs(f"unknown quantum integer variant {variant!r}")


def quantum_int(n: int, variant: str = "bracket_q", sign=1) -> LaurentPoly:
    """[[n]] in q_h (``bracket_q``) or [n] in v_h (``symmetric_v``)."""
    return _qint(n, variant, _sign(sign))


@lru_cache(maxsize=None)
def _qfact(n: int, variant: str, sign: int) -> LaurentPoly:
    out = ONE
    for k in range(2, n + 1):
        out = out * _qint(k, variant, sign)
    return out


def quantum_factorial(n: int, variant: str = "bracket_q", sign=1) -> LaurentPoly:
    return _qfact(n, variant, _sign(sign))


@lru_cache(maxsize=None)
def _gauss(N: int, s: int, variant: str, sign: int) -> LaurentPoly:
    if s < 0 or N < 0 or s > N:
        raise InvalidArgs(f"Gaussian binomial needs 0 <= s <= N, got N={N}, s={s}")
    if variant == "bar":
        return _gauss(N, s, "bracket", sign).shift(-2 * s * (N - s) * sign)
    base = {"bracket": "bracket_q", "symmetric": "symmetric_v"}.get(variant)
    if base is None:
        raise InvalidArgs(f"unknown Gaussian binomial variant {variant!r}")
    s = min(s, N - s)
    num = ONE
    for k in range(N - s + 1, N + 1):
        num = num * _qint(k, base, sign)
    return divide_exact(num, _qfact(s, base, sign))


def gauss_binomial(N: int, s: int, variant: str = "bracket", sign=1) -> LaurentPoly:
    """Gaussian binomial [[N, s]] (``bracket``), [N, s] (``symmetric``) or the
    bar-normalised q_h**(-s(N-s)) [[N, s]] (``bar``)."""
    return _gauss(N, s, variant, _sign(sign))


def divide_exact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Quotient ``num / den`` in Z[v, v^-1]; raises ``NonExactDivision``.

    >>> divide_exact(LaurentPoly({4: 1, -4: -1}), LaurentPoly({2: 1, -2: -1}))
    LaurentPoly({-2: 1, 2: 1})
    """
    if not den:
        raise InvalidArgs("division by the zero polynomial")
    if not num:
        return ZERO
    dc = den._c
    if len(dc) == 1:
        (de, dv), = dc.items()
        out = {}
        for e, c in num._c.items():
            qv, r = divmod(c, dv)
            if r:
                raise NonExactDivision(f"{num} is not divisible by {den}")
            out[e - de] = qv
        return LaurentPoly._raw(out)
    dmax = max(dc)
    dmin = min(dc)
    lead = dc[dmax]
    rem = dict(num._c)
    floor = min(rem) - dmin  # smallest exponent a quotient term could have
    quot = {}
    while rem:
        top = max(rem)
        e = top - dmax
        if e < floor:
            raise NonExactDivision(f"{num} is not divisible by {den}")
        qv, r = divmod(rem[top], lead)
        if r:
            raise NonExactDivision(f"{num} is not divisible by {den}")
        quot[e] = qv
        for de, dv in dc.items():
            k = de + e
            s = rem.get(k, 0) - qv * dv
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return LaurentPoly._raw(quot)
