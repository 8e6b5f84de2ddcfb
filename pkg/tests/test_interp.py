from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from protoalg.errors import ArityMismatch, DomainViolation, EvalOverflow, ExtentTooLarge, UnknownSymbol
from protoalg.graph import Alphabet
from protoalg.interp import (
    Arg,
    Bin,
    Boxed,
    DomainDecl,
    Finite,
    Interpretation,
    Lit,
    Proj,
    Vec,
    check_interpretation,
    enumerate_domain,
    eval_expr,
    eval_fun,
    infer_arity,
    reachable_closure,
    unreachable_values,
)


def test_eval_fun_countdown_examples(cd):
    assert eval_fun(cd.interp, "dec", (3,)) == (2,)
    assert eval_fun(cd.interp, "iszero", (0,)) == (1,)
    assert eval_fun(cd.interp, "iszero", (2,)) == (0,)


def test_eval_fun_swap_example(swap_pair):
    a, _ = swap_pair
    assert eval_fun(a.interp, "incA", (2, 5)) == (3, 5)
    assert eval_fun(a.interp, "incB", (2, 5)) == (2, 0)


def test_eval_fun_errors(cd):
    with pytest.raises(UnknownSymbol):
        eval_fun(cd.interp, "mystery", (0,))
    with pytest.raises(ArityMismatch):
        eval_fun(cd.interp, "dec", (0, 0))
    with pytest.raises(DomainViolation):
        eval_fun(cd.interp, "dec", (9,))


def test_enumerate_boxed_unary():
    decl = DomainDecl("main", 1, Boxed(((0, 3),)))
    assert list(enumerate_domain(decl)) == [(0,), (1,), (2,), (3,)]


def test_enumerate_finite_sorted():
    decl = DomainDecl("main", 2, Finite(((2, 1), (0, 0))))
    assert list(enumerate_domain(decl)) == [(0, 0), (2, 1)]


def test_enumerate_boxed_pairs_lexicographic():
    decl = DomainDecl("main", 2, Boxed(((0, 1), (0, 1))))
    assert list(enumerate_domain(decl)) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_extent_cap_is_refused():
    decl = DomainDecl("main", 1, Boxed(((0, 10**7),)))
    with pytest.raises(ExtentTooLarge):
        list(enumerate_domain(decl))
    alphabet = Alphabet(("ini", "fin"), ())
    interp = Interpretation(alphabet, decl,
                            DomainDecl("input", 1, Boxed(((0, 1),))),
                            DomainDecl("output", 1, Boxed(((0, 1),))),
                            {"ini": Arg(), "fin": Arg()})
    with pytest.raises(ExtentTooLarge):
        check_interpretation(alphabet, interp)


def test_countdown_interpretation_is_minimal(cd):
    assert check_interpretation(cd.alphabet, cd.interp).ok
    assert unreachable_values(cd.interp) == []


def _widened_countdown(cd):
    wide = DomainDecl("main", 1, Boxed(((0, 5),)))
    wide_out = DomainDecl("output", 1, Boxed(((0, 5),)))
    return Interpretation(cd.alphabet, wide, cd.interp.input, wide_out, dict(cd.interp.assignment))


def test_widened_domain_reports_unreachable_values(cd):
    interp = _widened_countdown(cd)
    report = check_interpretation(cd.alphabet, interp)
    assert not report.ok
    assert any(v.clause == "minimality" for v in report.entries)
    assert unreachable_values(interp) == [(4,), (5,)]


def test_minimality_restriction_is_idempotent(cd):
    interp = _widened_countdown(cd)
    closure = sorted(reachable_closure(interp))
    restricted = Interpretation(
        cd.alphabet,
        DomainDecl("main", 1, Finite(tuple(closure))),
        interp.input,
        interp.output,
        dict(interp.assignment),
    )
    assert not any(v.clause == "minimality"
                   for v in check_interpretation(cd.alphabet, restricted).entries)


def test_predicate_escaping_bits_is_reported(cd):
    bad = dict(cd.interp.assignment)
    bad["iszero"] = Bin("+", Proj(0), Lit(1))  # masquerading as a predicate
    interp = Interpretation(cd.alphabet, cd.interp.main, cd.interp.input, cd.interp.output, bad)
    report = check_interpretation(cd.alphabet, interp)
    offending = [v for v in report.entries if v.subject == "iszero"]
    assert offending and "(1,)" in offending[0].detail


def test_missing_and_extra_assignments_reported(cd):
    partial = {k: v for k, v in cd.interp.assignment.items() if k != "dec"}
    partial["ghost"] = Arg()
    interp = Interpretation(cd.alphabet, cd.interp.main, cd.interp.input, cd.interp.output, partial)
    report = check_interpretation(cd.alphabet, interp)
    subjects = {v.subject for v in report.entries if v.clause == "assignment"}
    assert {"dec", "ghost"} <= subjects


def test_division_and_modulo_by_zero_are_total():
    assert eval_expr(Bin("div", Lit(7), Lit(0)), (0,)) == (0,)
    assert eval_expr(Bin("mod", Lit(7), Lit(0)), (0,)) == (0,)
    assert eval_expr(Bin("div", Lit(-7), Lit(2)), (0,)) == (-4,)  # floor convention


def test_overflow_is_checked():
    big = Bin("*", Lit(2**62), Lit(4))
    with pytest.raises(EvalOverflow):
        eval_expr(big, (0,))


def test_arity_inference():
    assert infer_arity(Vec((Lit(1), Lit(2))), 1) == 2
    assert infer_arity(Arg(), 3) == 3
    with pytest.raises(ArityMismatch):
        infer_arity(Proj(2), 2)
    with pytest.raises(ArityMismatch):
        infer_arity(Bin("+", Arg(), Lit(1)), 2)  # vector operand


@given(st.integers(min_value=0, max_value=3))
def test_evaluation_is_deterministic_and_total(d, cd):
    """Every symbol evaluates on every domain value, twice identically."""
    for symbol in cd.alphabet.symbols:
        first = eval_fun(cd.interp, symbol, (d,)) if symbol != "ini" else eval_fun(cd.interp, "ini", (d,))
        second = eval_fun(cd.interp, symbol, (d,))
        assert first == second
