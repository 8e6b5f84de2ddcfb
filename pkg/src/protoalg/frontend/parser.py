"""Line-oriented parser for .palg definition files.

A file has an ALPHABET section, then any of GRAPH, INTERP, and PROCESS.
`#` starts a comment. Diagnostics carry line, column, and an error code;
the parser collects as many as it can instead of stopping at the first.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import NonLinearSpec, ProtoAlgError
from ..graph import Alphabet, RootedLabeledDigraph, make_digraph
from ..interp import (
    Arg,
    Bin,
    Boxed,
    DomainDecl,
    Expr,
    Finite,
    If,
    Interpretation,
    Lit,
    Proj,
    Value,
    Vec,
    infer_arity,
)
from ..procalg import (
    Alt,
    And,
    Assign,
    Act,
    CFalse,
    CTrue,
    CondTerm,
    DataApp,
    DataConst,
    DataEq,
    DataTerm,
    Empty,
    FlexVar,
    Guard,
    Imp,
    Inaction,
    LinearSpec,
    Not,
    Or,
    PredEq,
    ProcTerm,
    ProcVar,
    Rec,
    Seq,
)
from ..errors import ArityMismatch

SECTIONS = ("ALPHABET:", "GRAPH:", "INTERP:", "PROCESS:")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: [{self.code}] {self.message}"


class ParseFailure(ProtoAlgError):
    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__("; ".join(str(d) for d in diagnostics) or "parse failed")
        self.diagnostics = diagnostics


@dataclass
class Document:
    alphabet: Alphabet | None = None
    graph: RootedLabeledDigraph | None = None
    interp: Interpretation | None = None
    process: Rec | None = None

    def __eq__(self, other):
        if not isinstance(other, Document):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.graph == other.graph
            and self.interp == other.interp
            and self.process == other.process
        )


@dataclass
class ParseResult:
    document: Document | None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.document is not None and not self.diagnostics


# ---------------------------------------------------------------------------
# Tokenizer shared by expressions, process terms, and values

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<num>\d+)"
    r"|(?P<id>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op><=|:->|:=|=>|\.\.|->|[-+*=<>,()\[\].])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num | id | op | end
    text: str
    col: int


class _SyntaxIssue(Exception):
    def __init__(self, col: int, message: str):
        super().__init__(message)
        self.col = col
        self.message = message


def _tokenize(text: str, col_base: int = 1) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise _SyntaxIssue(col_base + pos, f"unexpected character {text[pos]!r}")
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        tokens.append(Token(m.lastgroup, m.group(), col_base + m.start()))
    tokens.append(Token("end", "", col_base + len(text)))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "end":
            self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.peek().text == text and self.peek().kind != "end":
            self.next()
            return True
        return False

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text or t.kind == "end":
            raise _SyntaxIssue(t.col, f"expected {text!r}, found {t.text or 'end of line'!r}")
        return self.next()

    def expect_kind(self, kind: str, what: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            raise _SyntaxIssue(t.col, f"expected {what}, found {t.text or 'end of line'!r}")
        return self.next()

    def at_end(self) -> bool:
        return self.peek().kind == "end"

    def expect_end(self) -> None:
        t = self.peek()
        if t.kind != "end":
            raise _SyntaxIssue(t.col, f"trailing input {t.text!r}")


# ---------------------------------------------------------------------------
# Expression parsing (INTERP)


def _parse_expr(cur: _Cursor) -> Expr:
    if cur.accept("if"):
        cond = _parse_expr(cur)
        cur.expect("then")
        then = _parse_expr(cur)
        cur.expect("else")
        orelse = _parse_expr(cur)
        return If(cond, then, orelse)
    return _parse_cmp(cur)


def _parse_cmp(cur: _Cursor) -> Expr:
    left = _parse_add(cur)
    for op in ("<=", "=", "<"):
        if cur.peek().text == op and cur.peek().kind == "op":
            cur.next()
            return Bin(op, left, _parse_add(cur))
    return left


def _parse_add(cur: _Cursor) -> Expr:
    e = _parse_mul(cur)
    while cur.peek().text in ("+", "-") and cur.peek().kind == "op":
        op = cur.next().text
        e = Bin(op, e, _parse_mul(cur))
    return e


def _parse_mul(cur: _Cursor) -> Expr:
    e = _parse_unary(cur)
    while (cur.peek().text == "*" and cur.peek().kind == "op") or cur.peek().text in ("div", "mod"):
        op = cur.next().text
        e = Bin(op, e, _parse_unary(cur))
    return e


def _parse_unary(cur: _Cursor) -> Expr:
    if cur.peek().text == "-" and cur.peek().kind == "op":
        cur.next()
        inner = _parse_unary(cur)
        if isinstance(inner, Lit):
            return Lit(-inner.value)
        return Bin("-", Lit(0), inner)
    return _parse_atom(cur)


def _parse_atom(cur: _Cursor) -> Expr:
    t = cur.peek()
    if t.kind == "num":
        cur.next()
        return Lit(int(t.text))
    if t.text == "x":
        cur.next()
        if cur.accept("["):
            idx = cur.expect_kind("num", "a component index")
            cur.expect("]")
            return Proj(int(idx.text))
        return Arg()
    if cur.accept("("):
        e = _parse_expr(cur)
        cur.expect(")")
        return e
    if cur.accept("<"):
        items = [_parse_expr(cur)]
        while cur.accept(","):
            items.append(_parse_expr(cur))
        cur.expect(">")
        return Vec(tuple(items))
    raise _SyntaxIssue(t.col, f"expected an expression, found {t.text or 'end of line'!r}")


def parse_expression(text: str, col_base: int = 1) -> Expr:
    cur = _Cursor(_tokenize(text, col_base))
    e = _parse_expr(cur)
    cur.expect_end()
    return e


# ---------------------------------------------------------------------------
# Value literals (CLI inputs, finite extents)


def _parse_signed(cur: _Cursor) -> int:
    neg = cur.accept("-")
    num = cur.expect_kind("num", "an integer")
    return -int(num.text) if neg else int(num.text)


def _parse_vector(cur: _Cursor) -> Value:
    cur.expect("<")
    items = [_parse_signed(cur)]
    while cur.accept(","):
        items.append(_parse_signed(cur))
    cur.expect(">")
    return tuple(items)


def parse_value(text: str) -> Value:
    """Parse `<1,2>` or a bare integer as an arity-1 value."""
    cur = _Cursor(_tokenize(text))
    if cur.peek().text == "<":
        v = _parse_vector(cur)
    else:
        v = (_parse_signed(cur),)
    cur.expect_end()
    return v


# ---------------------------------------------------------------------------
# Process terms (PROCESS)


def _parse_data(cur: _Cursor, alphabet: Alphabet) -> DataTerm:
    t = cur.peek()
    if t.text == "<":
        return DataConst(_parse_vector(cur))
    name = cur.expect_kind("id", "a data term").text
    if cur.accept("("):
        arg = _parse_data(cur, alphabet)
        cur.expect(")")
        if not alphabet.is_function(name):
            raise _SyntaxIssue(t.col, f"{name!r} is not a function symbol")
        return DataApp(name, arg)
    return FlexVar(name)


def _parse_cond_atom(cur: _Cursor, alphabet: Alphabet) -> CondTerm:
    t = cur.peek()
    if cur.accept("true"):
        return CTrue()
    if cur.accept("false"):
        return CFalse()
    if cur.accept("("):
        c = _parse_cond(cur, alphabet)
        cur.expect(")")
        return c
    if t.kind == "id" and alphabet.is_predicate(t.text):
        name = cur.next().text
        cur.expect("(")
        arg = _parse_data(cur, alphabet)
        cur.expect(")")
        cur.expect("=")
        bit = cur.expect_kind("num", "a bit")
        if bit.text not in ("0", "1"):
            raise _SyntaxIssue(bit.col, "predicate comparisons use bits 0 or 1")
        return PredEq(name, arg, int(bit.text))
    left = _parse_data(cur, alphabet)
    cur.expect("=")
    right = _parse_data(cur, alphabet)
    return DataEq(left, right)


def _parse_cond_not(cur: _Cursor, alphabet: Alphabet) -> CondTerm:
    if cur.accept("not"):
        return Not(_parse_cond_not(cur, alphabet))
    return _parse_cond_atom(cur, alphabet)


def _parse_cond_and(cur: _Cursor, alphabet: Alphabet) -> CondTerm:
    c = _parse_cond_not(cur, alphabet)
    while cur.accept("and"):
        c = And(c, _parse_cond_not(cur, alphabet))
    return c


def _parse_cond_or(cur: _Cursor, alphabet: Alphabet) -> CondTerm:
    c = _parse_cond_and(cur, alphabet)
    while cur.accept("or"):
        c = Or(c, _parse_cond_and(cur, alphabet))
    return c


def _parse_cond(cur: _Cursor, alphabet: Alphabet) -> CondTerm:
    c = _parse_cond_or(cur, alphabet)
    if cur.accept("=>"):
        return Imp(c, _parse_cond(cur, alphabet))
    return c


def _parse_summand(cur: _Cursor, alphabet: Alphabet) -> ProcTerm:
    cond = _parse_cond(cur, alphabet)
    cur.expect(":->")
    if cur.accept("eps"):
        return Guard(cond, Empty())
    name = cur.expect_kind("id", "an action").text
    if cur.accept(":="):
        expr = _parse_data(cur, alphabet)
        action: ProcTerm = Assign(name, expr)
    else:
        action = Act(name)
    cur.expect(".")
    target = cur.expect_kind("id", "a continuation variable").text
    return Guard(cond, Seq(action, ProcVar(target)))


def parse_linear_term(text: str, alphabet: Alphabet, col_base: int = 1) -> ProcTerm:
    cur = _Cursor(_tokenize(text, col_base))
    if cur.accept("delta"):
        cur.expect_end()
        return Inaction()
    term: ProcTerm = _parse_summand(cur, alphabet)
    while cur.accept("+"):
        term = Alt(term, _parse_summand(cur, alphabet))
    cur.expect_end()
    return term


# ---------------------------------------------------------------------------
# Section assembly

_DOMAIN_RE = re.compile(r"^domain\s+(\w+)\s+arity\s+(\d+)\s+(range|values)\s+(.*)$")
_FUN_RE = re.compile(r"^(fun|pred)\s+(\w+)\s*\(\s*x\s*\)\s*=\s*(.*)$")
_EQ_RE = re.compile(r"^(\w+)\s*=\s*(.*)$")


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.diags: list[Diagnostic] = []
        self.alpha_funs: list[str] = []
        self.alpha_preds: list[str] = []
        self.alphabet: Alphabet | None = None
        self.g_root: tuple[str, int] | None = None
        self.g_vertices: list[tuple[str, str, int]] = []
        self.g_edges: list[tuple[str, int | None, str, int]] = []
        self.domains: dict[str, tuple[DomainDecl, int]] = {}
        self.exprs: dict[str, tuple[str, Expr, int]] = {}
        self.p_root: tuple[str, int] | None = None
        self.p_equations: list[tuple[str, ProcTerm, int]] = []

    def diag(self, line: int, col: int, code: str, message: str) -> None:
        self.diags.append(Diagnostic(line, col, code, message))

    def run(self) -> ParseResult:
        section = None
        seen: set[str] = set()
        for lineno, raw in enumerate(self.lines, start=1):
            content = raw.split("#", 1)[0].rstrip()
            if not content.strip():
                continue
            stripped = content.strip()
            if stripped in SECTIONS:
                if stripped in seen:
                    self.diag(lineno, 1, "dup-section", f"section {stripped} repeated")
                seen.add(stripped)
                section = stripped
                if section != "ALPHABET:" and self.alphabet is None:
                    self.finish_alphabet(lineno)
                continue
            if section is None:
                self.diag(lineno, 1, "missing-section", "content before the first section header")
                continue
            indent = len(content) - len(content.lstrip()) + 1
            handler = {
                "ALPHABET:": self.alphabet_line,
                "GRAPH:": self.graph_line,
                "INTERP:": self.interp_line,
                "PROCESS:": self.process_line,
            }[section]
            handler(lineno, indent, stripped)

        if "ALPHABET:" not in seen:
            self.diag(len(self.lines) + 1, 1, "missing-section", "missing ALPHABET section")
            return ParseResult(None, self.diags)
        if self.alphabet is None:
            self.finish_alphabet(len(self.lines) + 1)
        doc = Document(alphabet=self.alphabet)
        if "GRAPH:" in seen:
            doc.graph = self.finish_graph()
        if "INTERP:" in seen:
            doc.interp = self.finish_interp()
        if "PROCESS:" in seen:
            doc.process = self.finish_process()
        if self.diags:
            return ParseResult(None, self.diags)
        return ParseResult(doc, self.diags)

    # -- ALPHABET

    def alphabet_line(self, lineno: int, col: int, text: str) -> None:
        parts = text.split()
        if parts[0] == "fun" and len(parts) >= 2:
            self.alpha_funs.extend(parts[1:])
        elif parts[0] == "pred":
            self.alpha_preds.extend(parts[1:])
        else:
            self.diag(lineno, col, "syntax", "expected `fun <names>` or `pred <names>`")

    def finish_alphabet(self, lineno: int) -> None:
        try:
            self.alphabet = Alphabet(tuple(self.alpha_funs), tuple(self.alpha_preds))
        except ValueError as exc:
            self.diag(lineno, 1, "alphabet", str(exc))
            self.alphabet = Alphabet(("ini", "fin"), ())  # placeholder to keep parsing

    # -- GRAPH

    def graph_line(self, lineno: int, col: int, text: str) -> None:
        parts = text.split()
        if parts[0] == "root" and len(parts) == 2:
            if self.g_root is not None:
                self.diag(lineno, col, "dup-root", "root declared twice")
            self.g_root = (parts[1], lineno)
        elif parts[0] == "v" and len(parts) == 4 and parts[2] == ":":
            self.g_vertices.append((parts[1], parts[3], lineno))
        elif parts[0] == "edge" and len(parts) == 4 and parts[2] in ("->", "->0", "->1"):
            bit = None if parts[2] == "->" else int(parts[2][2])
            self.g_edges.append((parts[1], bit, parts[3], lineno))
        else:
            self.diag(lineno, col, "syntax", "expected `root`, `v <id> : <symbol>`, or `edge <id> -> <id>`")

    def finish_graph(self) -> RootedLabeledDigraph | None:
        assert self.alphabet is not None
        names: list[str] = []
        labels: dict[str, str] = {}
        for name, symbol, lineno in self.g_vertices:
            if name in labels:
                self.diag(lineno, 1, "dup-vertex", f"vertex {name!r} declared twice")
                continue
            if symbol not in self.alphabet.symbols:
                self.diag(lineno, 1, "unknown-symbol", f"label {symbol!r} not declared in ALPHABET")
            names.append(name)
            labels[name] = symbol
        edges: set[tuple[str, str]] = set()
        edge_labels: dict[tuple[str, str], int] = {}
        labelled_out: dict[tuple[str, int], int] = {}
        for src, bit, dst, lineno in self.g_edges:
            for endpoint in (src, dst):
                if endpoint not in labels:
                    self.diag(lineno, 1, "unknown-vertex", f"edge endpoint {endpoint!r} not declared")
            if (src, dst) in edges:
                self.diag(lineno, 1, "dup-edge", f"edge {src}->{dst} declared twice")
                continue
            if bit is not None:
                if (src, bit) in labelled_out:
                    self.diag(
                        lineno, 1, "dup-edge-label",
                        f"duplicate edge label {bit} on the out-edges of {src!r}",
                    )
                labelled_out[(src, bit)] = lineno
                edge_labels[(src, dst)] = bit
            edges.add((src, dst))
        if self.g_root is None:
            self.diag(self.g_vertices[0][2] if self.g_vertices else 1, 1, "missing-root", "GRAPH has no root line")
            return None
        root, root_line = self.g_root
        if root not in labels:
            self.diag(root_line, 1, "unknown-vertex", f"root {root!r} not declared")
            return None
        if self.diags:
            return None
        try:
            return make_digraph(names, edges, labels, edge_labels, root)
        except ValueError as exc:
            self.diag(root_line, 1, "graph", str(exc))
            return None

    # -- INTERP

    def interp_line(self, lineno: int, col: int, text: str) -> None:
        assert self.alphabet is not None
        m = _DOMAIN_RE.match(text)
        if m:
            self.domain_line(lineno, col, m)
            return
        m = _FUN_RE.match(text)
        if m:
            kind, name, body = m.groups()
            if name not in self.alphabet.symbols:
                self.diag(lineno, col, "unknown-symbol", f"{name!r} not declared in ALPHABET")
                return
            wants_pred = self.alphabet.is_predicate(name)
            if (kind == "pred") != wants_pred:
                self.diag(lineno, col, "symbol-kind", f"{name!r} declared as {'pred' if wants_pred else 'fun'} in ALPHABET")
                return
            if name in self.exprs:
                self.diag(lineno, col, "dup-assignment", f"{name!r} assigned twice")
                return
            col_base = m.start(3) + col
            try:
                expr = parse_expression(body, col_base)
            except _SyntaxIssue as issue:
                self.diag(lineno, issue.col, "syntax", issue.message)
                return
            self.exprs[name] = (kind, expr, lineno)
            return
        self.diag(lineno, col, "syntax", "expected `domain`, `fun`, or `pred` line")

    def domain_line(self, lineno: int, col: int, m: re.Match) -> None:
        name, arity_text, kind, rest = m.groups()
        if name not in ("main", "input", "output"):
            self.diag(lineno, col, "syntax", f"domain name must be main/input/output, got {name!r}")
            return
        if name in self.domains:
            self.diag(lineno, col, "dup-domain", f"domain {name!r} declared twice")
            return
        arity = int(arity_text)
        try:
            if kind == "range":
                ranges = []
                for piece in rest.split(","):
                    rm = re.match(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$", piece)
                    if rm is None:
                        raise ValueError(f"bad range {piece.strip()!r}, expected lo..hi")
                    ranges.append((int(rm.group(1)), int(rm.group(2))))
                decl = DomainDecl(name, arity, Boxed(tuple(ranges)))
            else:
                cur = _Cursor(_tokenize(rest, col))
                values = []
                while not cur.at_end():
                    values.append(_parse_vector(cur))
                decl = DomainDecl(name, arity, Finite(tuple(values)))
        except (_SyntaxIssue, ValueError) as exc:
            message = exc.message if isinstance(exc, _SyntaxIssue) else str(exc)
            self.diag(lineno, col, "domain", message)
            return
        self.domains[name] = (decl, lineno)

    def finish_interp(self) -> Interpretation | None:
        assert self.alphabet is not None
        missing = [n for n in ("main", "input", "output") if n not in self.domains]
        if missing:
            self.diag(len(self.lines), 1, "missing-domain", f"INTERP lacks domain(s): {', '.join(missing)}")
            return None
        main, inp, out = (self.domains[n][0] for n in ("main", "input", "output"))
        interp = Interpretation(self.alphabet, main, inp, out, {n: e for n, (_, e, _) in self.exprs.items()})
        for name, (_, expr, lineno) in sorted(self.exprs.items()):
            dom, cod = interp.signature(name)
            try:
                got = infer_arity(expr, dom.arity)
            except ArityMismatch as exc:
                self.diag(lineno, 1, "arity", f"{name!r}: {exc}")
                continue
            if got != cod.arity:
                self.diag(lineno, 1, "arity", f"{name!r}: expression arity {got}, codomain needs {cod.arity}")
        if self.diags:
            return None
        return interp

    # -- PROCESS

    def process_line(self, lineno: int, col: int, text: str) -> None:
        assert self.alphabet is not None
        parts = text.split()
        if parts[0] == "root" and len(parts) == 2:
            if self.p_root is not None:
                self.diag(lineno, col, "dup-root", "process root declared twice")
            self.p_root = (parts[1], lineno)
            return
        m = _EQ_RE.match(text)
        if m is None:
            self.diag(lineno, col, "syntax", "expected `root <var>` or `<var> = <term>`")
            return
        name, body = m.groups()
        col_base = m.start(2) + col
        try:
            term = parse_linear_term(body, self.alphabet, col_base)
        except _SyntaxIssue as issue:
            self.diag(lineno, issue.col, "syntax", issue.message)
            return
        self.p_equations.append((name, term, lineno))

    def finish_process(self) -> Rec | None:
        if self.p_root is None:
            self.diag(len(self.lines), 1, "missing-root", "PROCESS has no root line")
            return None
        names = [n for n, _, _ in self.p_equations]
        for name, _, lineno in self.p_equations:
            if names.count(name) > 1:
                self.diag(lineno, 1, "dup-equation", f"equation {name!r} repeated")
                return None
        root, root_line = self.p_root
        if root not in names:
            self.diag(root_line, 1, "unknown-variable", f"process root {root!r} has no equation")
            return None
        try:
            spec = LinearSpec(tuple((n, t) for n, t, _ in self.p_equations))
        except NonLinearSpec as exc:
            self.diag(root_line, 1, "non-linear", str(exc))
            return None
        if self.diags:
            return None
        return Rec(root, spec)


def parse(text: str) -> ParseResult:
    return _Parser(text).run()


def parse_or_raise(text: str) -> Document:
    result = parse(text)
    if result.document is None or result.diagnostics:
        raise ParseFailure(result.diagnostics)
    return result.document
