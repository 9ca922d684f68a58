"""Verification sweeps shared by the command line and the test suite.

Each suite turns its parameters into a list of picklable cases and checks
them one at a time.  A check returns a result record; failing records carry
both computed sides.  ``run_suite`` assembles a versioned report.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .calibration import CALIBRATED, oracle_xi_pair
from .errors import InvalidArgs, NotInM
from .hecke import TensorVector, act_word
from .oracle import compose, expand_in_norm_basis, norm_endo, norm_family_rank
from .qpoly import LaurentPoly, quantum_factorial
from .schur import (FormalCoord, SchurElement, a_element, monomial_formal, mul_gen_formal,
                    mul_key_N, mul_N_ULp, mul_N_ULp_chain, mul_xi_generator, mul_xi_ULp,
                    psi_product, truncate, xi_from_N_product)
from .ugl import RELATIONS, eta, monomial_word, relation_instances
from .weyl import (SuperMatrix, abar, block_index, bruhat_leq, column_reading, dhat,
                   dhat_closed, enumerate_matrices, length_formula, matrix_from_triple, norm,
                   perm_of_matrix, preceq, special_matrix, super_double_reps, word_from_matrix)

SCHEMA = 1
# these names are part of the command-line interface
SUITES = ("key-lemma", "theorem42", "prop52", "prop53", "prop66", "qs-relations",
          "divided-powers", "triangular", "monomial", "combinatorics")


@dataclass(frozen=True)
class Params:
    m: int
    n: int
    r_max: int = 3
    norm_max: int = 4
    seed: int = 0
    sample: int = 0


def _terms_json(terms: dict) -> list:
    return [{"matrix": A.to_json(), "coeff": c.to_json()} for A, c in sorted(terms.items())]


def _result(instance: dict, ok: bool, lhs=None, rhs=None) -> dict:
    out = {"instance": instance, "pass": bool(ok)}
    if not ok:
        out["lhs"] = lhs
        out["rhs"] = rhs
    return out


def _mat_cases(p: Params, r_min: int = 1):
    for r in range(r_min, p.r_max + 1):
        yield from enumerate_matrices(p.m, p.n, r)


# ---------------------------------------------------------------------------
# products with the special matrices
# ---------------------------------------------------------------------------


def _oracle_N(A: SuperMatrix, kind: str, h: int, p: int = 1) -> dict:
    try:
        B = special_matrix(kind, h, A.ro(), p, A.m, A.n)
    except NotInM:
        return {}
    return expand_in_norm_basis(compose(norm_endo(A), norm_endo(B), "apply_e_first"), strict=True)


def cases_key_lemma(p: Params):
    for A in _mat_cases(p):
        for h in range(1, A.N):
            for dir in ("B", "C"):
                yield (A, h, dir)


def check_key_lemma(case) -> dict:
    A, h, dir = case
    lhs = mul_key_N(A, h, dir).terms
    rhs = _oracle_N(A, dir, h)
    inst = {"m": A.m, "n": A.n, "r": A.total(), "A": A.to_json(), "h": h, "dir": dir}
    return _result(inst, lhs == rhs, _terms_json(lhs), _terms_json(rhs))


def cases_ulp(p: Params):
    for A in _mat_cases(p):
        for h in range(1, A.N):
            for dir in ("U", "L"):
                for k in range(0, 4):
                    yield (A, h, dir, k)


def check_ulp(case) -> dict:
    A, h, dir, k = case
    got = mul_N_ULp(A, h, k, dir).terms
    oracle = _oracle_N(A, dir, h, k)
    chain = mul_N_ULp_chain(A, h, k, dir).terms
    inst = {"m": A.m, "n": A.n, "r": A.total(), "A": A.to_json(), "h": h, "dir": dir, "p": k}
    return _result(inst, got == oracle == chain, _terms_json(got),
                   {"oracle": _terms_json(oracle), "chain": _terms_json(chain)})


def _cases_normalised(p: Params, odd: bool):
    for A in _mat_cases(p):
        for h in range(1, A.N):
            if (h == A.m) != odd:
                continue
            for dir in ("U", "L"):
                for k in ((1,) if odd else range(0, 4)):
                    yield (A, h, dir, k)


def check_normalised(case) -> dict:
    A, h, dir, k = case
    got = mul_xi_ULp(A, h, k, dir).terms
    via_N = xi_from_N_product(A, h, k, dir, tau_sign=False).terms
    try:
        U = special_matrix(dir, h, A.ro(), k, A.m, A.n)
        oracle = oracle_xi_pair(U, A, CALIBRATED)
    except NotInM:
        oracle = {}
    inst = {"m": A.m, "n": A.n, "r": A.total(), "A": A.to_json(), "h": h, "dir": dir, "p": k}
    return _result(inst, got == via_N == oracle, _terms_json(got),
                   {"from_N": _terms_json(via_N), "oracle": _terms_json(oracle)})


# ---------------------------------------------------------------------------
# realisation space
# ---------------------------------------------------------------------------


def cases_uniform(p: Params):
    N = p.m + p.n
    js = list(itertools.product((-1, 0, 1), repeat=N))
    if p.sample:
        rng = random.Random(p.seed)
        js = rng.sample(js, min(p.sample, len(js)))
    for A in enumerate_matrices(p.m, p.n, 3, "zero_diag"):
        for j in js:
            for gen in ("E", "F"):
                for h in range(1, N):
                    yield (A, j, gen, h, p.r_max)


def check_uniform(case) -> dict:
    A, j, gen, h, r_max = case
    X = mul_gen_formal(gen, h, FormalCoord.basis_element(A, j))
    dir = "U" if gen == "E" else "L"
    inst = {"m": A.m, "n": A.n, "A": A.to_json(), "j": list(j), "gen": gen, "h": h}
    for r in range(A.total(), r_max + 1):
        lhs = truncate(X, r)
        rhs = mul_xi_generator(h, dir, a_element(A, j, r))
        if lhs != rhs:
            inst["r"] = r
            return _result(inst, False, _terms_json(lhs.terms), _terms_json(rhs.terms))
    return _result(inst, True)


def cases_relations(p: Params):
    for rel in RELATIONS:
        for idx, _ in enumerate(relation_instances(rel, p.m, p.n)):
            yield (rel, p.m, p.n, idx)


def check_relation(case) -> dict:
    rel, m, n, idx = case
    label, w = relation_instances(rel, m, n)[idx]
    res = eta(w)
    return _result({"relation": rel, "label": label, "m": m, "n": n}, res.is_zero(), res.to_json(), 0)


def cases_divided_powers(p: Params):
    for h in range(1, p.m + p.n):
        for gen in ("E", "F"):
            for k in range(1, 5):
                yield (p.m, p.n, gen, h, k)


def check_divided_power(case) -> dict:
    m, n, gen, h, k = case
    X = FormalCoord.O(m, n)
    for _ in range(k):
        X = mul_gen_formal(gen, h, X)
    if h == m:
        expect = mul_gen_formal(gen, h, FormalCoord.O(m, n)) if k == 1 else FormalCoord(m, n)
    else:
        U = SuperMatrix.unit(m, n, h, h + 1, k) if gen == "E" else SuperMatrix.unit(m, n, h + 1, h, k)
        expect = FormalCoord.basis_element(U, (0,) * (m + n), quantum_factorial(k, "symmetric_v"))
    inst = {"m": m, "n": n, "gen": gen, "h": h, "k": k}
    return _result(inst, X == expect, X.to_json(), expect.to_json())


# ---------------------------------------------------------------------------
# triangular relations
# ---------------------------------------------------------------------------


def cases_triangular(p: Params):
    yield from _mat_cases(p)


def check_triangular(A: SuperMatrix) -> dict:
    P = psi_product(A)
    lead = P.coeff(A)
    sign = LaurentPoly.const(-1 if abar(A) % 2 else 1)
    ok = lead == sign and all(B == A or (B.ro() == A.ro() and B.co() == A.co() and bruhat_leq(B, A))
                              for B in P.terms)
    inst = {"m": A.m, "n": A.n, "r": A.total(), "A": A.to_json(), "abar": abar(A)}
    return _result(inst, ok, _terms_json(P.terms), {"leading": sign.to_json()})


def cases_monomial(p: Params):
    for A in enumerate_matrices(p.m, p.n, p.norm_max, "zero_diag"):
        if norm(A) <= p.norm_max:
            yield A


def check_monomial(A: SuperMatrix) -> dict:
    zero = (0,) * A.N
    X = monomial_formal(A, zero)
    ok = X.coeff_equals(A, zero, LaurentPoly.const(1))
    ok = ok and all((B, j) == (A, zero) or (B != A and preceq(B, A)) for B, j in X.support())
    W = eta(monomial_word(A, zero))
    ok = ok and W == X
    inst = {"m": A.m, "n": A.n, "A": A.to_json(), "norm": norm(A)}
    return _result(inst, ok, X.to_json(), W.to_json())


# ---------------------------------------------------------------------------
# combinatorics
# ---------------------------------------------------------------------------


def cases_combinatorics(p: Params):
    for A in _mat_cases(p, r_min=0):
        yield ("matrix", A)
    for r in range(0, p.r_max + 1):
        yield ("orders", p.m, p.n, r)
        yield ("dimension", p.m, p.n, r)


def _check_matrix(A: SuperMatrix) -> tuple[bool, dict]:
    rho, lam, m = A.ro(), A.co(), A.m
    w = word_from_matrix(A)
    d = perm_of_matrix(A)
    facts = {
        "length": len(w) == d.length() == length_formula(A),
        "round_trip": matrix_from_triple(rho, d, lam, A.m, A.n) == A,
        "super_rep": d in super_double_reps(rho, lam, m),
        "dhat": dhat(rho, d, m) == dhat_closed(rho, A),
    }
    v = TensorVector.basis(A.m, A.n, block_index(rho))
    sign = -1 if dhat(rho, d, m) % 2 else 1
    facts["algorithm_2_2"] = act_word(v, w) == TensorVector.basis(A.m, A.n, column_reading(A)).scale(
        LaurentPoly.const(sign))
    return all(facts.values()), facts


def _check_orders(m: int, n: int, r: int) -> tuple[bool, dict]:
    mats = enumerate_matrices(m, n, r)
    pairs = bad = 0
    for A, B in itertools.permutations(mats, 2):
        if A.ro() != B.ro() or A.co() != B.co() or not bruhat_leq(A, B):
            continue
        pairs += 1
        Ap, Bp = A.off_diagonal(), B.off_diagonal()
        if not (preceq(Ap, Bp) and Ap != Bp and norm(Ap) < norm(Bp)):
            bad += 1
    return bad == 0, {"comparable_pairs": pairs, "violations": bad}


def _check_dimension(m: int, n: int, r: int) -> tuple[bool, dict]:
    count = len(enumerate_matrices(m, n, r))
    reps = sum(len(super_double_reps(rho, lam, m)) for rho in _comps(m + n, r) for lam in _comps(m + n, r))
    rank = norm_family_rank(m, n, r)
    return count == reps == rank, {"matrices": count, "super_double_cosets": reps, "rank": rank}


def _comps(N, r):
    from .weyl import compositions
    return compositions(N, r)


def check_combinatorics(case) -> dict:
    kind = case[0]
    if kind == "matrix":
        A = case[1]
        ok, facts = _check_matrix(A)
        inst = {"kind": kind, "m": A.m, "n": A.n, "A": A.to_json()}
    elif kind == "orders":
        ok, facts = _check_orders(*case[1:])
        inst = {"kind": kind, "m": case[1], "n": case[2], "r": case[3]}
    else:
        ok, facts = _check_dimension(*case[1:])
        inst = {"kind": kind, "m": case[1], "n": case[2], "r": case[3]}
    inst.update(facts)
    return _result(inst, ok, facts, None)


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


REGISTRY: dict[str, tuple[Callable, Callable]] = {
    "key-lemma": (cases_key_lemma, check_key_lemma),
    "theorem42": (cases_ulp, check_ulp),
    "prop52": (lambda p: _cases_normalised(p, False), check_normalised),
    "prop53": (lambda p: _cases_normalised(p, True), check_normalised),
    "prop66": (cases_uniform, check_uniform),
    "qs-relations": (cases_relations, check_relation),
    "divided-powers": (cases_divided_powers, check_divided_power),
    "triangular": (cases_triangular, check_triangular),
    "monomial": (cases_monomial, check_monomial),
    "combinatorics": (cases_combinatorics, check_combinatorics),
}


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("QSS_JOBS", "1")))
    except ValueError:
        return 1


def run_suite(name: str, params: Params, jobs: int | None = None) -> dict:
    if name not in REGISTRY:
        raise InvalidArgs(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    make, check = REGISTRY[name]
    cases = list(make(params))
    jobs = default_jobs() if jobs is None else jobs
    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(check, cases, chunksize=max(1, len(cases) // (4 * jobs))))
    else:
        results = [check(c) for c in cases]
    failures = [r for r in results if not r["pass"]]
    return {
        "schema": SCHEMA,
        "suite": name,
        "params": {"m": params.m, "n": params.n, "r_max": params.r_max, "norm_max": params.norm_max,
                   "seed": params.seed, "sample": params.sample},
        "instances": len(results),
        "passed": len(results) - len(failures),
        "failures": failures,
    }
