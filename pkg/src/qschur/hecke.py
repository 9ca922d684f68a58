"""The Hecke algebra H_q(r) in its T-basis and its signed right action on
the tensor superspace V(m|n)^{(x) r}.

Basis vectors of the tensor space are indexed by tuples with entries in
1..m+n; the generator T_{s_k} acts on positions k, k+1 according to the
relative order and parities of the two entries there.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from . import _kernels as K
from .errors import IndexOutOfRange, InvalidArgs, RankMismatch
from .qpoly import ONE, LaurentPoly
from .weyl import Permutation

_Q = LaurentPoly.monomial(2)
_QM1 = LaurentPoly({2: 1, 0: -1})


class HeckeElement:
    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: Mapping[Permutation, LaurentPoly] | None = None):
        self.r = r
        self.terms = {w: c for w, c in (terms or {}).items() if c}
        for w in self.terms:
            if len(w) != r:
                raise RankMismatch(f"{w} is not in S_{r}")

    @classmethod
    def T(cls, w: Permutation | Sequence[int]) -> "HeckeElement":
        w = w if isinstance(w, Permutation) else Permutation(w)
        return cls(len(w), {w: ONE})

    @classmethod
    def generator(cls, k: int, r: int) -> "HeckeElement":
        return cls.T(Permutation.from_word([k], r))

    @classmethod
    def one(cls, r: int) -> "HeckeElement":
        return cls.T(Permutation.identity(r))

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and self.r == other.r and self.terms == other.terms

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if other.r != self.r:
            raise RankMismatch("Hecke elements of different rank")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return HeckeElement(self.r, out)

    def scale(self, c: LaurentPoly) -> "HeckeElement":
        return HeckeElement(self.r, {w: x * c for w, x in self.terms.items()})

    def mul_generator(self, k: int) -> "HeckeElement":
        """Right multiplication by T_{s_k}."""
        out: dict = {}
        for w, c in self.terms.items():
            ws = list(w)
            ws[k - 1], ws[k] = ws[k], ws[k - 1]
            ws = Permutation._trusted(tuple(ws))
            if w[k - 1] < w[k]:  # l(ws) > l(w)
                out[ws] = out.get(ws, 0) + c
            else:
                out[w] = out.get(w, 0) + c * _QM1
                out[ws] = out.get(ws, 0) + c * _Q
        return HeckeElement(self.r, out)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return t_mul(self, other)

    def __repr__(self):
        return "HeckeElement(" + ", ".join(f"({c})T{tuple(w)}" for w, c in sorted(self.terms.items())) + ")"


def t_mul(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    if x.r != y.r:
        raise RankMismatch("Hecke elements of different rank")
    out = HeckeElement(x.r)
    for w, c in y.terms.items():
        part = x
        for k in w.reduced_word():
            part = part.mul_generator(k)
        out = out + part.scale(c)
    return out


class TensorVector:
    """A vector of V(m|n)^{(x) r}: map index tuple -> LaurentPoly."""

    __slots__ = ("m", "n", "r", "terms")

    def __init__(self, m: int, n: int, r: int, terms: Mapping[tuple, LaurentPoly] | None = None):
        self.m, self.n, self.r = m, n, r
        self.terms = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != r or any(not 1 <= a <= m + n for a in idx):
                raise IndexOutOfRange(f"bad index tuple {idx}")
            if c:
                self.terms[idx] = c if isinstance(c, LaurentPoly) else LaurentPoly.const(c)

    @classmethod
    def basis(cls, m: int, n: int, idx: Sequence[int]) -> "TensorVector":
        return cls(m, n, len(idx), {tuple(idx): ONE})

    @classmethod
    def _from_raw(cls, m, n, r, raw: dict) -> "TensorVector":
        v = object.__new__(cls)
        v.m, v.n, v.r = m, n, r
        v.terms = {i: LaurentPoly._raw(c) for i, c in raw.items()}
        return v

    def _raw(self) -> dict:
        return {i: c._c for i, c in self.terms.items()}

    def __eq__(self, other):
        return (isinstance(other, TensorVector) and (self.m, self.n, self.r) == (other.m, other.n, other.r)
                and self.terms == other.terms)

    def __add__(self, other: "TensorVector") -> "TensorVector":
        out = dict(self.terms)
        for i, c in other.terms.items():
            out[i] = out.get(i, 0) + c
        return TensorVector(self.m, self.n, self.r, out)

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + other.scale(LaurentPoly.const(-1))

    def scale(self, c: LaurentPoly) -> "TensorVector":
        return TensorVector(self.m, self.n, self.r, {i: x * c for i, x in self.terms.items()})

    def __repr__(self):
        return "TensorVector(" + ", ".join(f"({c})v{i}" for i, c in sorted(self.terms.items())) + ")"

    def to_json(self) -> dict:
        return {"r": self.r, "terms": [{"idx": list(i), "coeff": c.to_json()}
                                       for i, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, obj, m: int, n: int) -> "TensorVector":
        try:
            r = int(obj["r"])
            terms = {}
            for t in obj["terms"]:
                idx = tuple(int(x) for x in t["idx"])
                terms[idx] = terms.get(idx, 0) + LaurentPoly.from_json(t["coeff"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgs(f"malformed tensor vector JSON: {obj!r}") from exc
        return cls(m, n, r, terms)


def _check_gen(k: int, r: int) -> None:
    if not 1 <= k < r:
        raise IndexOutOfRange(f"generator index {k} outside [1, {r - 1}]")


def act(vec: TensorVector, k: int) -> TensorVector:
    """vec . T_{s_k}."""
    _check_gen(k, vec.r)
    return TensorVector._from_raw(vec.m, vec.n, vec.r, K.act_generator(vec._raw(), k, vec.m))


def act_word(vec: TensorVector, word: Sequence[int]) -> TensorVector:
    raw = vec._raw()
    for k in word:
        _check_gen(k, vec.r)
        raw = K.act_generator(raw, k, vec.m)
    return TensorVector._from_raw(vec.m, vec.n, vec.r, raw)


def act_elem(vec: TensorVector, x: HeckeElement) -> TensorVector:
    if x.r != vec.r:
        raise RankMismatch("Hecke element and tensor of different rank")
    out = TensorVector(vec.m, vec.n, vec.r)
    for w, c in x.terms.items():
        out = out + act_word(vec, w.reduced_word()).scale(c)
    return out
