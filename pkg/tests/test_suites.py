"""The shared verification sweeps."""

import pytest

from qschur.errors import InvalidArgs
from qschur.suites import SUITES, Params, run_suite


@pytest.mark.parametrize("name", SUITES)
def test_every_suite_passes_on_smallest_shape(name):
    rep = run_suite(name, Params(1, 1, r_max=2, norm_max=3), jobs=1)
    assert rep["schema"] == 1 and rep["suite"] == name
    assert rep["passed"] + len(rep["failures"]) == rep["instances"]
    assert not rep["failures"]


def test_parallel_matches_serial():
    p = Params(2, 1, r_max=2)
    assert run_suite("theorem42", p, jobs=1) == run_suite("theorem42", p, jobs=3)


def test_sampled_sweep_is_seeded():
    a = run_suite("prop66", Params(2, 1, r_max=3, sample=5, seed=7), jobs=1)
    b = run_suite("prop66", Params(2, 1, r_max=3, sample=5, seed=7), jobs=1)
    assert a == b and a["instances"] < run_suite("prop66", Params(2, 1, r_max=3), jobs=1)["instances"]


def test_unknown_suite():
    with pytest.raises(InvalidArgs):
        run_suite("nope", Params(1, 1))


def test_failures_carry_both_sides(monkeypatch):
    from qschur import suites
    monkeypatch.setattr(suites, "mul_key_N", lambda A, h, d: suites.SchurElement(A.m, A.n, A.total()))
    monkeypatch.setitem(suites.REGISTRY, "key-lemma", (suites.cases_key_lemma, suites.check_key_lemma))
    rep = run_suite("key-lemma", Params(1, 1, r_max=2), jobs=1)
    assert rep["failures"]
    f = rep["failures"][0]
    assert {"instance", "lhs", "rhs"} <= set(f) and f["lhs"] == []
