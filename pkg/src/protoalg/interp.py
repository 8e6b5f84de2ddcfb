"""Interpretations: finite value domains and a total expression language.

Values are fixed-arity vectors of checked signed-64-bit integers. Every
symbol of the alphabet is assigned one expression over a single argument
`x`; all operators are total (division and modulo by zero yield 0), so
evaluation cannot get stuck. Domains are finite by construction, which
keeps the closure and minimality checks exhaustive and decidable.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .errors import (
    ArityMismatch,
    DomainViolation,
    EvalOverflow,
    ExtentTooLarge,
    UnknownSymbol,
)
from .graph import FIN, INI, Alphabet, ValidationReport, Violation

Value = tuple[int, ...]

I64_MIN = -(2**63)
I64_MAX = 2**63 - 1

DEFAULT_EXTENT_CAP = 10**6

MAIN = "main"
INPUT = "input"
OUTPUT = "output"

# Report clause identifiers.
CLAUSE_ASSIGNMENT = "assignment"
CLAUSE_CODOMAIN = "codomain"
CLAUSE_MINIMAL = "minimality"


def _check_i64(n: int) -> int:
    if n < I64_MIN or n > I64_MAX:
        raise EvalOverflow(f"value {n} leaves the signed 64-bit range")
    return n


# ---------------------------------------------------------------------------
# Domain declarations


@dataclass(frozen=True)
class Finite:
    values: tuple[Value, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("finite extent must be non-empty")
        if len(set(self.values)) != len(self.values):
            raise ValueError("finite extent has duplicates")
        arities = {len(v) for v in self.values}
        if len(arities) != 1:
            raise ValueError("finite extent mixes arities")


@dataclass(frozen=True)
class Boxed:
    """Per-component inclusive integer ranges; finite by construction."""

    ranges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.ranges:
            raise ValueError("boxed extent needs at least one range")
        for lo, hi in self.ranges:
            if lo > hi:
                raise ValueError(f"empty range {lo}..{hi}")


Extent = Union[Finite, Boxed]


@dataclass(frozen=True)
class DomainDecl:
    name: str  # main | input | output
    arity: int
    extent: Extent

    def __post_init__(self):
        if self.name not in (MAIN, INPUT, OUTPUT):
            raise ValueError(f"unknown domain name {self.name!r}")
        if self.arity < 1:
            raise ValueError("arity must be at least 1")
        if isinstance(self.extent, Boxed) and len(self.extent.ranges) != self.arity:
            raise ValueError("boxed extent does not match the declared arity")
        if isinstance(self.extent, Finite) and len(self.extent.values[0]) != self.arity:
            raise ValueError("finite extent does not match the declared arity")

    def size(self) -> int:
        if isinstance(self.extent, Finite):
            return len(self.extent.values)
        n = 1
        for lo, hi in self.extent.ranges:
            n *= hi - lo + 1
        return n

    def contains(self, v: Value) -> bool:
        if len(v) != self.arity:
            return False
        if isinstance(self.extent, Finite):
            return v in set(self.extent.values)
        return all(lo <= c <= hi for c, (lo, hi) in zip(v, self.extent.ranges))


def enumerate_domain(decl: DomainDecl, cap: int = DEFAULT_EXTENT_CAP) -> Iterator[Value]:
    """Duplicate-free lexicographic stream of the domain's values."""
    if decl.size() > cap:
        raise ExtentTooLarge(f"domain {decl.name} has {decl.size()} values, cap is {cap}")
    if isinstance(decl.extent, Finite):
        yield from sorted(decl.extent.values)
    else:
        axes = [range(lo, hi + 1) for lo, hi in decl.extent.ranges]
        for combo in itertools.product(*axes):
            yield tuple(combo)


# ---------------------------------------------------------------------------
# Expressions


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Arg:
    """The whole argument vector `x`."""


@dataclass(frozen=True)
class Proj:
    """Component projection `x[i]`."""

    index: int


@dataclass(frozen=True)
class Bin:
    op: str  # + - * div mod = < <=
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class If:
    cond: "Expr"
    then: "Expr"
    orelse: "Expr"


@dataclass(frozen=True)
class Vec:
    items: tuple["Expr", ...]


Expr = Union[Lit, Arg, Proj, Bin, If, Vec]

_BIN_OPS = ("+", "-", "*", "div", "mod", "=", "<", "<=")


def infer_arity(expr: Expr, arg_arity: int) -> int:
    """Static result arity; raises ArityMismatch on ill-formed expressions."""
    match expr:
        case Lit():
            return 1
        case Arg():
            return arg_arity
        case Proj(index=i):
            if not 0 <= i < arg_arity:
                raise ArityMismatch(f"projection x[{i}] outside arity {arg_arity}")
            return 1
        case Bin(op=op, left=l, right=r):
            if op not in _BIN_OPS:
                raise ArityMismatch(f"unknown operator {op!r}")
            if infer_arity(l, arg_arity) != 1 or infer_arity(r, arg_arity) != 1:
                raise ArityMismatch(f"operator {op!r} needs scalar operands")
            return 1
        case If(cond=c, then=t, orelse=e):
            if infer_arity(c, arg_arity) != 1:
                raise ArityMismatch("if-condition must be scalar")
            at, ae = infer_arity(t, arg_arity), infer_arity(e, arg_arity)
            if at != ae:
                raise ArityMismatch(f"if-branches disagree on arity ({at} vs {ae})")
            return at
        case Vec(items=items):
            if not items:
                raise ArityMismatch("empty vector")
            for it in items:
                if infer_arity(it, arg_arity) != 1:
                    raise ArityMismatch("vector components must be scalar")
            return len(items)
    raise ArityMismatch(f"unknown expression node {expr!r}")


def eval_expr(expr: Expr, x: Value) -> Value:
    """Evaluate on one argument vector; total, deterministic, i64-checked."""

    def scalar(e: Expr) -> int:
        v = go(e)
        if len(v) != 1:
            raise ArityMismatch("scalar position got a vector")
        return v[0]

    def go(e: Expr) -> Value:
        match e:
            case Lit(value=n):
                return (_check_i64(n),)
            case Arg():
                return x
            case Proj(index=i):
                if not 0 <= i < len(x):
                    raise ArityMismatch(f"projection x[{i}] outside arity {len(x)}")
                return (x[i],)
            case Bin(op=op, left=l, right=r):
                a, b = scalar(l), scalar(r)
                if op == "+":
                    return (_check_i64(a + b),)
                if op == "-":
                    return (_check_i64(a - b),)
                if op == "*":
                    return (_check_i64(a * b),)
                if op == "div":
                    return (_check_i64(a // b) if b != 0 else 0,)
                if op == "mod":
                    return (_check_i64(a % b) if b != 0 else 0,)
                if op == "=":
                    return (1 if a == b else 0,)
                if op == "<":
                    return (1 if a < b else 0,)
                if op == "<=":
                    return (1 if a <= b else 0,)
                raise ArityMismatch(f"unknown operator {op!r}")
            case If(cond=c, then=t, orelse=o):
                return go(t) if scalar(c) != 0 else go(o)
            case Vec(items=items):
                return tuple(scalar(it) for it in items)
        raise ArityMismatch(f"unknown expression node {e!r}")

    return go(expr)


# ---------------------------------------------------------------------------
# Interpretations

BIT_DOMAIN = DomainDecl(OUTPUT, 1, Boxed(((0, 1),)))  # codomain of predicates


@dataclass(frozen=True)
class Interpretation:
    """Symbol assignments over declared main/input/output domains.

    The alphabet is carried so the codomain of each symbol is knowable
    locally: ini maps input→main, fin maps main→output, proper function
    symbols map main→main, predicates map main→{0,1}.
    """

    alphabet: Alphabet
    main: DomainDecl
    input: DomainDecl
    output: DomainDecl
    assignment: Mapping[str, Expr]

    def __post_init__(self):
        if (self.main.name, self.input.name, self.output.name) != (MAIN, INPUT, OUTPUT):
            raise ValueError("domain declarations out of place")

    def signature(self, symbol: str) -> tuple[DomainDecl, DomainDecl]:
        """(domain, codomain) declarations for a symbol."""
        if symbol == INI:
            return self.input, self.main
        if symbol == FIN:
            return self.main, self.output
        if self.alphabet.is_function(symbol):
            return self.main, self.main
        if self.alphabet.is_predicate(symbol):
            return self.main, BIT_DOMAIN
        raise UnknownSymbol(f"symbol {symbol!r} not in the alphabet")

    def expr_for(self, symbol: str) -> Expr:
        if symbol not in self.alphabet.symbols:
            raise UnknownSymbol(f"symbol {symbol!r} not in the alphabet")
        try:
            return self.assignment[symbol]
        except KeyError:
            raise UnknownSymbol(f"symbol {symbol!r} has no assignment") from None


def apply_symbol(interp: Interpretation, symbol: str, v: Value) -> Value:
    """Apply a symbol's expression with arity checking only.

    Interpretations are extended arbitrarily outside their declared
    domains and only ever applied inside them by well-formed callers;
    this entry point leaves membership to the caller.
    """
    expr = interp.expr_for(symbol)
    dom, _ = interp.signature(symbol)
    if len(v) != dom.arity:
        raise ArityMismatch(f"{symbol!r} expects arity {dom.arity}, got {len(v)}")
    return eval_expr(expr, v)


def eval_fun(interp: Interpretation, symbol: str, v: Value) -> Value:
    """Domain-checked symbol application.

    Raises DomainViolation when the argument is outside the symbol's
    domain or the result escapes its codomain (a broken interpretation).
    """
    dom, cod = interp.signature(symbol)
    if len(v) != dom.arity:
        raise ArityMismatch(f"{symbol!r} expects arity {dom.arity}, got {len(v)}")
    if not dom.contains(v):
        raise DomainViolation(f"argument {v} outside the domain of {symbol!r}", witness=v)
    result = eval_expr(interp.expr_for(symbol), v)
    if not cod.contains(result):
        raise DomainViolation(
            f"{symbol!r} maps {v} to {result}, outside its codomain", witness=v
        )
    return result


def reachable_closure(interp: Interpretation, cap: int = DEFAULT_EXTENT_CAP) -> set[Value]:
    """Forward closure of the ini-images of the input domain under the proper functions.

    Values escaping the main domain are not chased (they show up as
    codomain violations in check_interpretation instead).
    """
    seeds: set[Value] = set()
    for d in enumerate_domain(interp.input, cap):
        try:
            img = apply_symbol(interp, INI, d)
        except (ArityMismatch, EvalOverflow):
            continue
        if interp.main.contains(img):
            seeds.add(img)
    closure = set(seeds)
    frontier = list(seeds)
    while frontier:
        d = frontier.pop()
        for f in interp.alphabet.proper_functions:
            try:
                img = apply_symbol(interp, f, d)
            except (ArityMismatch, EvalOverflow):
                continue
            if interp.main.contains(img) and img not in closure:
                closure.add(img)
                frontier.append(img)
    return closure


def check_interpretation(
    alphabet: Alphabet, interp: Interpretation, cap: int = DEFAULT_EXTENT_CAP
) -> ValidationReport:
    """Exhaustive well-formedness check over the finite extents.

    Reports missing/extra/ill-typed assignments, codomain escapes with a
    witness value, and a minimality violation listing the main-domain
    values unreachable from the ini-images under the proper functions.
    """
    out: list[Violation] = []
    if interp.alphabet != alphabet:
        out.append(Violation(CLAUSE_ASSIGNMENT, "-", "interpretation built for a different alphabet"))
        return ValidationReport(tuple(out))

    for decl in (interp.main, interp.input, interp.output):
        if decl.size() > cap:
            raise ExtentTooLarge(f"domain {decl.name} has {decl.size()} values, cap is {cap}")

    expected = set(alphabet.symbols)
    for sym in sorted(set(interp.assignment) - expected):
        out.append(Violation(CLAUSE_ASSIGNMENT, sym, "assignment for a symbol outside the alphabet"))
    for sym in sorted(expected - set(interp.assignment)):
        out.append(Violation(CLAUSE_ASSIGNMENT, sym, "symbol has no assignment"))
        expected.discard(sym)

    for sym in sorted(expected):
        dom, cod = interp.signature(sym)
        try:
            if infer_arity(interp.assignment[sym], dom.arity) != cod.arity:
                out.append(
                    Violation(CLAUSE_ASSIGNMENT, sym, f"expression arity does not match codomain arity {cod.arity}")
                )
                expected.discard(sym)
        except ArityMismatch as exc:
            out.append(Violation(CLAUSE_ASSIGNMENT, sym, str(exc)))
            expected.discard(sym)

    # Codomain closure, exhaustively over the symbol's domain.
    for sym in sorted(expected):
        dom, cod = interp.signature(sym)
        for v in enumerate_domain(dom, cap):
            try:
                result = eval_expr(interp.assignment[sym], v)
            except (ArityMismatch, EvalOverflow) as exc:
                out.append(Violation(CLAUSE_CODOMAIN, sym, f"evaluation failed at {v}: {exc}"))
                break
            if not cod.contains(result):
                out.append(
                    Violation(CLAUSE_CODOMAIN, sym, f"maps {v} to {result}, outside its codomain")
                )
                break

    # Minimality: the main domain must equal the reachable closure.
    if not any(v.clause == CLAUSE_CODOMAIN for v in out):
        closure = reachable_closure(interp, cap)
        missing = sorted(set(enumerate_domain(interp.main, cap)) - closure)
        if missing:
            shown = ", ".join(str(m) for m in missing[:8])
            out.append(
                Violation(
                    CLAUSE_MINIMAL,
                    MAIN,
                    f"{len(missing)} value(s) unreachable from the ini-images: {shown}",
                )
            )
    return ValidationReport(tuple(out))


def unreachable_values(interp: Interpretation, cap: int = DEFAULT_EXTENT_CAP) -> list[Value]:
    """Main-domain values outside the reachable closure (empty iff minimal)."""
    closure = reachable_closure(interp, cap)
    return sorted(set(enumerate_domain(interp.main, cap)) - closure)
