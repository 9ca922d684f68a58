"""Generator words of the quantum supergroup U(gl_{m|n}) and their images in
the realisation space.

A token is ``("K", a, e)`` for K_a^e, ``("E", h)`` or ``("F", h)``.  A
``GenWord`` is a finite combination of token words with Laurent polynomial
coefficients and an optional common divisor (used for divided powers).
``eta`` evaluates a word right to left starting from O(0), so that a word
t_1 t_2 ... t_k represents the product t_1 t_2 ... t_k.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import IndexOutOfRange, InvalidArgs, InvalidIndices, UnsupportedPower
from .qpoly import ONE, ZERO, LaurentPoly, quantum_factorial
from .schur import FormalCoord, mul_gen_formal, mul_o_formal
from .weyl import SuperMatrix, parity_index, triple_sequence, unit_vector

Token = tuple

_TOKEN_RE = re.compile(r"^(?:K(\d+)(?:\^(-?\d+))?|([EF])(\d+))$")


def _vsign(a: int, m: int) -> int:
    return 1 if a <= m else -1


def parse_token(text: str) -> Token:
    mt = _TOKEN_RE.match(text.strip())
    if not mt:
        raise InvalidArgs(f"cannot parse generator token {text!r}")
    if mt.group(1) is not None:
        return ("K", int(mt.group(1)), int(mt.group(2) or 1))
    return (mt.group(3), int(mt.group(4)))


def format_token(tok: Token) -> str:
    if tok[0] == "K":
        return f"K{tok[1]}" if tok[2] == 1 else f"K{tok[1]}^{tok[2]}"
    return f"{tok[0]}{tok[1]}"


def parse_word(text: str) -> tuple[Token, ...]:
    return tuple(parse_token(t) for t in text.split())


def format_word(word: Sequence[Token]) -> str:
    return " ".join(format_token(t) for t in word)


def _check_token(tok: Token, m: int, n: int) -> None:
    N = m + n
    if tok[0] == "K":
        if not 1 <= tok[1] <= N:
            raise IndexOutOfRange(f"K index {tok[1]} outside [1, {N}]")
    elif tok[0] in ("E", "F"):
        if not 1 <= tok[1] < N:
            raise IndexOutOfRange(f"{tok[0]} index {tok[1]} outside [1, {N})")
    else:
        raise InvalidArgs(f"unknown token {tok!r}")


def word_parity(word: Sequence[Token], m: int) -> int:
    return sum(1 for t in word if t[0] in ("E", "F") and t[1] == m) % 2


@dataclass
class GenWord:
    """sum_w c_w w / divisor."""

    m: int
    n: int
    terms: dict = field(default_factory=dict)
    divisor: LaurentPoly = ONE

    def __post_init__(self):
        clean = {}
        for w, c in self.terms.items():
            w = tuple(w)
            for t in w:
                _check_token(t, self.m, self.n)
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.const(c)
            s = clean.get(w, ZERO) + c
            if s:
                clean[w] = s
            else:
                clean.pop(w, None)
        self.terms = clean

    @classmethod
    def word(cls, m: int, n: int, word: Iterable[Token] | str, coeff: LaurentPoly = ONE) -> "GenWord":
        if isinstance(word, str):
            word = parse_word(word)
        return cls(m, n, {tuple(word): coeff})

    @classmethod
    def one(cls, m: int, n: int) -> "GenWord":
        return cls.word(m, n, ())

    def _compatible(self, other: "GenWord") -> None:
        if (self.m, self.n) != (other.m, other.n):
            raise InvalidArgs("words over different (m|n)")
        if self.divisor != other.divisor:
            raise InvalidArgs("combining words with different divisors")

    def __add__(self, other: "GenWord") -> "GenWord":
        self._compatible(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return GenWord(self.m, self.n, out, self.divisor)

    def __sub__(self, other: "GenWord") -> "GenWord":
        return self + other.scale(LaurentPoly.const(-1))

    def scale(self, c: LaurentPoly) -> "GenWord":
        return GenWord(self.m, self.n, {w: x * c for w, x in self.terms.items()}, self.divisor)

    def __mul__(self, other: "GenWord") -> "GenWord":
        if (self.m, self.n) != (other.m, other.n):
            raise InvalidArgs("words over different (m|n)")
        out: dict = {}
        for (w1, c1), (w2, c2) in itertools.product(self.terms.items(), other.terms.items()):
            w = w1 + w2
            out[w] = out.get(w, ZERO) + c1 * c2
        return GenWord(self.m, self.n, out, self.divisor * other.divisor)

    def parity(self) -> int:
        """Parity of a homogeneous combination; raises for mixed parities."""
        ps = {word_parity(w, self.m) for w in self.terms}
        if len(ps) > 1:
            raise InvalidArgs("combination is not homogeneous")
        return ps.pop() if ps else 0

    def to_json(self) -> dict:
        out = {"terms": [{"coeff": c.to_json(), "word": [format_token(t) for t in w]}
                         for w, c in sorted(self.terms.items())]}
        if self.divisor != ONE:
            out["divisor"] = self.divisor.to_json()
        return out

    @classmethod
    def from_json(cls, obj, m: int, n: int) -> "GenWord":
        try:
            terms: dict = {}
            for t in obj["terms"]:
                w = tuple(parse_token(x) for x in t["word"])
                c = LaurentPoly.from_json(t["coeff"]) if "coeff" in t else ONE
                terms[w] = terms.get(w, ZERO) + c
            divisor = LaurentPoly.from_json(obj["divisor"]) if "divisor" in obj else ONE
        except (KeyError, TypeError, AttributeError) as exc:
            raise InvalidArgs(f"malformed word combination JSON: {exc}") from exc
        if not divisor:
            raise InvalidArgs("zero divisor")
        return cls(m, n, terms, divisor)

    def __str__(self):
        body = " + ".join(f"({c}) {format_word(w) or '1'}" for w, c in sorted(self.terms.items()))
        if self.divisor != ONE:
            body = f"[{body}] / ({self.divisor})"
        return body or "0"


def super_commutator(x: GenWord, y: GenWord) -> GenWord:
    """[x, y] = xy - (-1)^{parity(x) parity(y)} yx."""
    sign = -1 if x.parity() * y.parity() else 1
    return x * y - (y * x).scale(LaurentPoly.const(sign))


# ---------------------------------------------------------------------------
# the realisation map
# ---------------------------------------------------------------------------


def eta_word(word: Sequence[Token], m: int, n: int, start: FormalCoord | None = None) -> FormalCoord:
    X = start if start is not None else FormalCoord.O(m, n)
    N = m + n
    for tok in reversed(tuple(word)):
        _check_token(tok, m, n)
        if tok[0] == "K":
            j = tuple(tok[2] * x for x in unit_vector(tok[1], N))
            X = mul_o_formal(j, X, "left")
        else:
            X = mul_gen_formal(tok[0], tok[1], X)
        if X.is_zero():
            break
    return X


def eta(w: GenWord) -> FormalCoord:
    out = FormalCoord(w.m, w.n)
    for word, c in w.terms.items():
        out = out + eta_word(word, w.m, w.n).scale(c)
    if w.divisor != ONE:
        out = out.divide(w.divisor)
    return out


# ---------------------------------------------------------------------------
# root vectors
# ---------------------------------------------------------------------------


def _gen(m: int, n: int, a: int, b: int) -> GenWord:
    """The one-step generator E_{a,b} with |a - b| = 1."""
    if b == a + 1:
        return GenWord.word(m, n, [("E", a)])
    if a == b + 1:
        return GenWord.word(m, n, [("F", b)])
    raise InvalidIndices(f"E_{{{a},{b}}} is not a generator")


def root_vector(a: int, b: int, m: int, n: int, c: int | None = None) -> GenWord:
    """The quantum root vector E_{a,b} expanded into generator words.

    The intermediate index defaults to the one adjacent to b; recursive
    steps use the same rule.
    """
    N = m + n
    if not (1 <= a <= N and 1 <= b <= N) or a == b:
        raise InvalidIndices(f"bad root vector indices ({a}, {b})")
    if abs(a - b) == 1:
        if c is not None:
            raise InvalidIndices("a simple root vector takes no pivot")
        return _gen(m, n, a, b)
    if c is None:
        c = b - 1 if a < b else b + 1
    if not min(a, b) < c < max(a, b):
        raise InvalidIndices(f"pivot {c} is not strictly between {a} and {b}")
    left = root_vector(a, c, m, n)
    right = root_vector(c, b, m, n)
    e = -1 if a < b else 1
    coeff = LaurentPoly.monomial(e * _vsign(c, m))
    return left * right - (right * left).scale(coeff)


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------


def _K(m, n, a, e=1) -> GenWord:
    return GenWord.word(m, n, [("K", a, e)])


def _E(m, n, h) -> GenWord:
    return GenWord.word(m, n, [("E", h)])


def _F(m, n, h) -> GenWord:
    return GenWord.word(m, n, [("F", h)])


def relation_instances(rel: str, m: int, n: int) -> list[tuple[str, GenWord]]:
    """All index instances of a defining relation as (label, LHS - RHS)."""
    N = m + n
    one = GenWord.one(m, n)
    out: list[tuple[str, GenWord]] = []
    if rel == "QS1":
        for a in range(1, N + 1):
            out.append((f"K{a}K{a}^-1=1", _K(m, n, a) * _K(m, n, a, -1) - one))
            out.append((f"K{a}^-1K{a}=1", _K(m, n, a, -1) * _K(m, n, a) - one))
            for b in range(a + 1, N + 1):
                out.append((f"K{a}K{b}=K{b}K{a}", _K(m, n, a) * _K(m, n, b) - _K(m, n, b) * _K(m, n, a)))
    elif rel == "QS2":
        for a in range(1, N + 1):
            s = _vsign(a, m)
            for h in range(1, N):
                d = int(a == h) - int(a == h + 1)
                c = LaurentPoly.monomial(s * d)
                out.append((f"K{a}E{h}", _K(m, n, a) * _E(m, n, h) - (_E(m, n, h) * _K(m, n, a)).scale(c)))
                c = LaurentPoly.monomial(-s * d)
                out.append((f"K{a}F{h}", _K(m, n, a) * _F(m, n, h) - (_F(m, n, h) * _K(m, n, a)).scale(c)))
    elif rel == "QS3":
        for h in range(1, N):
            s = _vsign(h, m)
            vdiff = LaurentPoly({s: 1, -s: -1})
            for k in range(1, N):
                lhs = super_commutator(_E(m, n, h), _F(m, n, k)).scale(vdiff)
                if h == k:
                    rhs = _K(m, n, h) * _K(m, n, h + 1, -1) - _K(m, n, h, -1) * _K(m, n, h + 1)
                    lhs = lhs - rhs
                out.append((f"[E{h},F{k}]", lhs))
    elif rel == "QS4":
        for h in range(1, N):
            for k in range(h + 2, N):
                out.append((f"E{h}E{k}", _E(m, n, h) * _E(m, n, k) - _E(m, n, k) * _E(m, n, h)))
                out.append((f"F{h}F{k}", _F(m, n, h) * _F(m, n, k) - _F(m, n, k) * _F(m, n, h)))
    elif rel == "QS5":
        for h in range(1, N):
            if h == m:
                continue
            s = _vsign(h, m)
            two = LaurentPoly({s: 1, -s: 1})
            for gen in (_E, _F):
                X = gen(m, n, h)
                for k in (h + 1, h - 1):
                    if not 1 <= k < N:
                        continue
                    Y = gen(m, n, k)
                    rel_w = X * X * Y - (X * Y * X).scale(two) + Y * X * X
                    out.append((f"serre {'E' if gen is _E else 'F'}{h},{k}", rel_w))
    elif rel == "QS6":
        if m >= 1 and n >= 1:
            out.append((f"E{m}^2", _E(m, n, m) * _E(m, n, m)))
            out.append((f"F{m}^2", _F(m, n, m) * _F(m, n, m)))
            if m >= 2 and n >= 2:
                out.append((f"[E{m},E_{m - 1},{m + 2}]",
                            super_commutator(_E(m, n, m), root_vector(m - 1, m + 2, m, n))))
                out.append((f"[F{m},E_{m + 2},{m - 1}]",
                            super_commutator(_F(m, n, m), root_vector(m + 2, m - 1, m, n))))
    else:
        raise InvalidArgs(f"unknown relation {rel!r}")
    return out


RELATIONS = ("QS1", "QS2", "QS3", "QS4", "QS5", "QS6")


def verify_relation(rel: str, m: int, n: int) -> list[dict]:
    """One report entry per instance: label, pass flag and the residue."""
    report = []
    for label, w in relation_instances(rel, m, n):
        res = eta(w)
        report.append({"relation": rel, "instance": label, "pass": res.is_zero(),
                       "residue": res.to_json()})
    return report


# ---------------------------------------------------------------------------
# the monomial basis
# ---------------------------------------------------------------------------


def monomial_word(A: SuperMatrix, j: Sequence[int] | None = None) -> GenWord:
    """The word M^{A,j} with its divided-power divisor prod [a]!."""
    m, n, N = A.m, A.n, A.N
    if any(A.entries[i][i] for i in range(N)):
        raise InvalidArgs(f"{A} must have zero diagonal")
    if not A.in_M():
        raise UnsupportedPower(f"{A} has an odd-block entry larger than 1")
    j = tuple(j) if j is not None else (0,) * N
    if len(j) != N:
        raise InvalidArgs("j has the wrong length")
    word: list[Token] = []
    divisor = ONE
    if N >= 2:
        for (i, h, jj) in triple_sequence(N, "leq2"):
            a = A[jj, i]
            word.extend([("F", h)] * a)
            divisor = divisor * quantum_factorial(a, "symmetric_v")
    word.extend(("K", a, e) for a, e in enumerate(j, 1) if e)
    if N >= 2:
        for (i, h, jj) in triple_sequence(N, "leq1"):
            a = A[i, jj]
            word.extend([("E", h)] * a)
            divisor = divisor * quantum_factorial(a, "symmetric_v")
    return GenWord(m, n, {tuple(word): ONE}, divisor)
