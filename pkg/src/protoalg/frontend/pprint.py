"""Deterministic printers for expressions, terms, and whole definitions.

Printing then reparsing yields an identical document; the printers are
the other half of the .palg grammar.
"""
from __future__ import annotations

from ..graph import AlgorithmGraph, Alphabet, RootedLabeledDigraph
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
)
from ..procalg import (
    Act,
    Alt,
    And,
    Assign,
    CFalse,
    CTrue,
    CondTerm,
    DataApp,
    DataConst,
    DataEq,
    DataTerm,
    Empty,
    Eval,
    FlexVar,
    Guard,
    Imp,
    Inaction,
    Not,
    Or,
    PredEq,
    ProcTerm,
    ProcVar,
    Rec,
    Seq,
)

_LEVEL_IF, _LEVEL_CMP, _LEVEL_ADD, _LEVEL_MUL, _LEVEL_ATOM = range(5)
_BIN_LEVEL = {"=": _LEVEL_CMP, "<": _LEVEL_CMP, "<=": _LEVEL_CMP,
              "+": _LEVEL_ADD, "-": _LEVEL_ADD,
              "*": _LEVEL_MUL, "div": _LEVEL_MUL, "mod": _LEVEL_MUL}


def print_value(v: Value) -> str:
    return "<" + ",".join(str(c) for c in v) + ">"


def print_expr(expr: Expr) -> str:
    return _expr(expr, _LEVEL_IF)


def _expr(e: Expr, level: int) -> str:
    match e:
        case Lit(value=n):
            text, own = str(n), _LEVEL_ATOM
        case Arg():
            text, own = "x", _LEVEL_ATOM
        case Proj(index=i):
            text, own = f"x[{i}]", _LEVEL_ATOM
        case Vec(items=items):
            text = "<" + ", ".join(_expr(it, _LEVEL_IF) for it in items) + ">"
            own = _LEVEL_ATOM
        case If(cond=c, then=t, orelse=o):
            text = f"if {_expr(c, _LEVEL_CMP)} then {_expr(t, _LEVEL_IF)} else {_expr(o, _LEVEL_IF)}"
            own = _LEVEL_IF
        case Bin(op=op, left=l, right=r):
            own = _BIN_LEVEL[op]
            # comparisons are non-associative; arithmetic associates left
            left_level = own + 1 if own == _LEVEL_CMP else own
            text = f"{_expr(l, left_level)} {op} {_expr(r, own + 1)}"
        case _:
            raise TypeError(f"not an expression: {e!r}")
    return f"({text})" if own < level else text


def print_domain(decl: DomainDecl) -> str:
    if isinstance(decl.extent, Boxed):
        ranges = ", ".join(f"{lo}..{hi}" for lo, hi in decl.extent.ranges)
        return f"domain {decl.name} arity {decl.arity} range {ranges}"
    values = " ".join(print_value(v) for v in decl.extent.values)
    return f"domain {decl.name} arity {decl.arity} values {values}"


def print_data(e: DataTerm) -> str:
    match e:
        case FlexVar(name=n):
            return n
        case DataConst(value=v):
            return print_value(v)
        case DataApp(symbol=s, arg=a):
            return f"{s}({print_data(a)})"
    raise TypeError(f"not a data term: {e!r}")


_COND_IMP, _COND_OR, _COND_AND, _COND_NOT, _COND_ATOM = range(5)


def print_cond(phi: CondTerm) -> str:
    return _cond(phi, _COND_IMP)


def _cond(phi: CondTerm, level: int) -> str:
    match phi:
        case CTrue():
            text, own = "true", _COND_ATOM
        case CFalse():
            text, own = "false", _COND_ATOM
        case DataEq(left=l, right=r):
            text, own = f"{print_data(l)} = {print_data(r)}", _COND_ATOM
        case PredEq(symbol=s, arg=a, bit=b):
            text, own = f"{s}({print_data(a)}) = {b}", _COND_ATOM
        case Not(body=b):
            text, own = f"not {_cond(b, _COND_NOT)}", _COND_NOT
        case And(left=l, right=r):
            text, own = f"{_cond(l, _COND_AND)} and {_cond(r, _COND_NOT)}", _COND_AND
        case Or(left=l, right=r):
            text, own = f"{_cond(l, _COND_OR)} or {_cond(r, _COND_AND)}", _COND_OR
        case Imp(left=l, right=r):
            text, own = f"{_cond(l, _COND_OR)} => {_cond(r, _COND_IMP)}", _COND_IMP
        case _:
            raise TypeError(f"not a condition: {phi!r}")
    return f"({text})" if own < level else text


def print_linear_term(t: ProcTerm) -> str:
    match t:
        case Inaction():
            return "delta"
        case Alt(left=l, right=r):
            return f"{print_linear_term(l)} + {print_linear_term(r)}"
        case Guard(cond=c, body=Empty()):
            return f"{print_cond(c)} :-> eps"
        case Guard(cond=c, body=Seq(left=action, right=ProcVar(name=target))):
            return f"{print_cond(c)} :-> {_action(action)} . {target}"
    raise TypeError(f"not a linear term: {t!r}")


def _action(a: ProcTerm) -> str:
    match a:
        case Assign(var=v, expr=e):
            return f"{v} := {print_data(e)}"
        case Act(name=n):
            return n
    raise TypeError(f"not an atomic action: {a!r}")


def print_proc_term(t: ProcTerm) -> str:
    """General term printer for messages and logs (not part of the file grammar)."""
    match t:
        case Eval(valuation=rho, body=b):
            binding = ", ".join(f"{n}={print_value(v)}" for n, v in rho.entries)
            return f"eval[{binding}]({print_proc_term(b)})"
        case Rec(var=x):
            return f"<{x}|S>"
        case Seq(left=l, right=r):
            return f"{print_proc_term(l)} . {print_proc_term(r)}"
        case Alt(left=l, right=r):
            return f"{print_proc_term(l)} + {print_proc_term(r)}"
        case Guard(cond=c, body=b):
            return f"{print_cond(c)} :-> {print_proc_term(b)}"
        case Assign() | Act():
            return _action(t)
        case Empty():
            return "eps"
        case Inaction():
            return "delta"
        case ProcVar(name=n):
            return n
    raise TypeError(f"not a process term: {t!r}")


def print_alphabet_section(alphabet: Alphabet) -> list[str]:
    lines = ["ALPHABET:", "fun " + " ".join(alphabet.function_symbols)]
    if alphabet.predicate_symbols:
        lines.append("pred " + " ".join(alphabet.predicate_symbols))
    return lines


def print_graph_section(g: RootedLabeledDigraph) -> list[str]:
    lines = ["GRAPH:", f"root {g.root}"]
    for v in g.vertices:
        lines.append(f"v {v} : {g.vertex_label[v]}")
    for a, b in g.sorted_edges():
        bit = g.edge_label.get((a, b))
        arrow = "->" if bit is None else f"->{bit}"
        lines.append(f"edge {a} {arrow} {b}")
    return lines


def print_interp_section(interp: Interpretation) -> list[str]:
    lines = ["INTERP:"]
    for decl in (interp.main, interp.input, interp.output):
        lines.append(print_domain(decl))
    for name in interp.alphabet.symbols:
        if name not in interp.assignment:
            continue
        kind = "pred" if interp.alphabet.is_predicate(name) else "fun"
        lines.append(f"{kind} {name}(x) = {print_expr(interp.assignment[name])}")
    return lines


def print_process_section(proc: Rec) -> list[str]:
    lines = ["PROCESS:", f"root {proc.var}"]
    for name, rhs in proc.spec.equations:
        lines.append(f"{name} = {print_linear_term(rhs)}")
    return lines


def print_algorithm(alphabet: Alphabet, graph: RootedLabeledDigraph | None,
                    interp: Interpretation | None, process: Rec | None = None) -> str:
    chunks: list[list[str]] = [print_alphabet_section(alphabet)]
    if graph is not None:
        chunks.append(print_graph_section(graph))
    if interp is not None:
        chunks.append(print_interp_section(interp))
    if process is not None:
        chunks.append(print_process_section(process))
    return "\n\n".join("\n".join(chunk) for chunk in chunks) + "\n"


def print_algorithm_graph(ag: AlgorithmGraph, interp: Interpretation | None = None) -> str:
    return print_algorithm(ag.alphabet, ag.graph, interp)
