"""The product convention linking oracle endomorphisms to the xi basis.

Four binary choices are open when xi-products are computed from matrices:

* ``order``: whether xi_X xi_Y applies the matrix of X first
  (``apply_left_first``) or that of Y first;
* ``product_sign``: whether the product carries the super sign
  (-1)^{parity(X) parity(Y)};
* ``basis_sign``: whether xi_A carries the sign (-1)^{t(A)} of
  ``weyl.transpose_sign``;
* ``normalization``: v^{-d(A)} or q^{-d(A)}.

``calibrate`` compares every candidate against the explicit normalised
formulas on a grid of generator products and keeps those with no
mismatch.  Exactly one survives; it is frozen as ``CALIBRATED`` and every
oracle xi-product in the package uses it.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass
from typing import Iterable

from .errors import InvalidArgs, NotInM, ShapeMismatch
from .oracle import compose, expand_in_xi_basis, xi_endo
from .qpoly import ZERO, LaurentPoly
from .schur import SchurElement, mul_xi_ULp
from .weyl import SuperMatrix, enumerate_matrices, special_matrix

DEFAULT_GRID = ((1, 1, 2), (1, 1, 3), (2, 1, 2), (1, 2, 2))


@dataclass(frozen=True)
class Convention:
    order: str
    product_sign: str
    basis_sign: str
    normalization: str

    def __post_init__(self):
        if self.order not in ("apply_left_first", "apply_right_first"):
            raise InvalidArgs(f"bad order {self.order!r}")
        if self.product_sign not in ("none", "super"):
            raise InvalidArgs(f"bad product sign {self.product_sign!r}")
        if self.basis_sign not in ("none", "transpose"):
            raise InvalidArgs(f"bad basis sign {self.basis_sign!r}")
        if self.normalization not in ("v", "q"):
            raise InvalidArgs(f"bad normalization {self.normalization!r}")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj) -> "Convention":
        try:
            return cls(**{k: obj[k] for k in ("order", "product_sign", "basis_sign", "normalization")})
        except (KeyError, TypeError) as exc:
            raise InvalidArgs(f"malformed convention record: {exc}") from exc


CANDIDATES = tuple(Convention(*c) for c in itertools.product(
    ("apply_left_first", "apply_right_first"), ("none", "super"), ("none", "transpose"), ("v", "q")))

CALIBRATED = Convention("apply_left_first", "none", "transpose", "v")


def xi_endo_for(A: SuperMatrix, conv: Convention = CALIBRATED):
    return xi_endo(A, normalization=conv.normalization, signed=conv.basis_sign == "transpose")


def oracle_xi_pair(X: SuperMatrix, Y: SuperMatrix, conv: Convention = CALIBRATED) -> dict:
    """xi_X xi_Y expanded in the xi basis of ``conv``."""
    order = "apply_e_first" if conv.order == "apply_left_first" else "apply_f_first"
    e = compose(xi_endo_for(X, conv), xi_endo_for(Y, conv), order)
    out = expand_in_xi_basis(e, signed=conv.basis_sign == "transpose", normalization=conv.normalization)
    if conv.product_sign == "super" and X.parity() * Y.parity():
        out = {Z: -c for Z, c in out.items()}
    return out


def oracle_xi_product(left: SchurElement, right: SchurElement, conv: Convention = CALIBRATED) -> SchurElement:
    """left * right computed through the endomorphism model."""
    if (left.m, left.n, left.r) != (right.m, right.n, right.r):
        raise ShapeMismatch("factors from different algebras")
    if left.basis != "xi" or right.basis != "xi":
        raise InvalidArgs("oracle xi-products need xi-basis inputs")
    acc: dict = {}
    for X, a in left.terms.items():
        for Y, b in right.terms.items():
            if X.co() != Y.ro():
                continue
            for Z, c in oracle_xi_pair(X, Y, conv).items():
                acc[Z] = acc.get(Z, ZERO) + a * b * c
    return SchurElement(left.m, left.n, left.r, acc)


def mismatches(conv: Convention, grid: Iterable[tuple[int, int, int]] = DEFAULT_GRID) -> tuple[int, int]:
    """(mismatch count, instance count) of ``conv`` against the normalised
    U_p / L_p formulas on every (A, h, p, dir) of the grid."""
    bad = total = 0
    for m, n, r in grid:
        for A in enumerate_matrices(m, n, r):
            for h in range(1, m + n):
                for dir in ("U", "L"):
                    for p in range(r + 1):
                        try:
                            U = special_matrix(dir, h, A.ro(), p, m, n)
                        except NotInM:
                            continue
                        total += 1
                        if oracle_xi_pair(U, A, conv) != mul_xi_ULp(A, h, p, dir).terms:
                            bad += 1
    return bad, total


def calibrate(grid: Iterable[tuple[int, int, int]] = DEFAULT_GRID) -> dict:
    """Score all candidates and return the configuration record."""
    grid = tuple(tuple(g) for g in grid)
    scores = []
    for conv in CANDIDATES:
        bad, total = mismatches(conv, grid)
        scores.append({"convention": conv.to_json(), "mismatches": bad, "instances": total})
    passing = [s["convention"] for s in scores if s["mismatches"] == 0]
    return {"schema": 1, "grid": [list(g) for g in grid], "scores": scores, "passing": passing,
            "selected": passing[0] if len(passing) == 1 else None}


def write_record(path: str, grid: Iterable[tuple[int, int, int]] = DEFAULT_GRID) -> dict:
    record = calibrate(grid)
    with open(path, "w") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
    return record
