"""Independent replay of head-normal-form axiom logs.

Each log entry names an axiom and a position; this module applies the
named axiom schema mechanically at that position, refusing anything that
is not a legal instance. It shares the term types with the unfolding
engine but none of its strategy or shortcut logic, so replaying a log
and comparing against the engine's result checks the engine.
"""
from __future__ import annotations

from .errors import ProtoAlgError
from .interp import Interpretation
from .procalg import (
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
    LogEntry,
    Not,
    Or,
    Path,
    PredEq,
    ProcTerm,
    ProcVar,
    Rec,
    Seq,
    Valuation,
    eval_cond,
    eval_data,
    subst_cond,
    subst_data,
    subst_vars,
)

Node = ProcTerm | CondTerm | DataTerm


class ReplayError(ProtoAlgError):
    """A log entry is not a legal instance of the named axiom schema."""


def _children(node: Node) -> tuple[Node, ...]:
    match node:
        case Alt(left=l, right=r) | Seq(left=l, right=r):
            return (l, r)
        case Guard(cond=c, body=b):
            return (c, b)
        case Eval(body=b):
            return (b,)
        case Assign(expr=e):
            return (e,)
        case DataApp(arg=a):
            return (a,)
        case Not(body=b):
            return (b,)
        case And(left=l, right=r) | Or(left=l, right=r) | Imp(left=l, right=r):
            return (l, r)
        case DataEq(left=l, right=r):
            return (l, r)
        case PredEq(arg=a):
            return (a,)
    return ()


def _rebuild(node: Node, index: int, child: Node) -> Node:
    match node:
        case Alt(left=l, right=r):
            return Alt(child, r) if index == 0 else Alt(l, child)
        case Seq(left=l, right=r):
            return Seq(child, r) if index == 0 else Seq(l, child)
        case Guard(cond=c, body=b):
            return Guard(child, b) if index == 0 else Guard(c, child)
        case Eval(valuation=rho):
            return Eval(rho, child)
        case Assign(var=v):
            return Assign(v, child)
        case DataApp(symbol=s):
            return DataApp(s, child)
        case Not():
            return Not(child)
        case And(left=l, right=r):
            return And(child, r) if index == 0 else And(l, child)
        case Or(left=l, right=r):
            return Or(child, r) if index == 0 else Or(l, child)
        case Imp(left=l, right=r):
            return Imp(child, r) if index == 0 else Imp(l, child)
        case DataEq(left=l, right=r):
            return DataEq(child, r) if index == 0 else DataEq(l, child)
        case PredEq(symbol=s, bit=b):
            return PredEq(s, child, b)
    raise ReplayError(f"node {node!r} has no child {index}")


def _at(node: Node, path: Path) -> Node:
    for i in path:
        kids = _children(node)
        if i >= len(kids):
            raise ReplayError(f"path {path} leaves the term")
        node = kids[i]
    return node


def _replace(node: Node, path: Path, new: Node) -> Node:
    if not path:
        return new
    kids = _children(node)
    if path[0] >= len(kids):
        raise ReplayError(f"path {path} leaves the term")
    return _rebuild(node, path[0], _replace(kids[path[0]], path[1:], new))


def _is_closed_data(e: DataTerm) -> bool:
    match e:
        case FlexVar():
            return False
        case DataApp(arg=a):
            return _is_closed_data(a)
    return True


def _is_closed_cond(phi: CondTerm) -> bool:
    match phi:
        case DataEq(left=l, right=r):
            return _is_closed_data(l) and _is_closed_data(r)
        case PredEq(arg=a):
            return _is_closed_data(a)
        case Not(body=b):
            return _is_closed_cond(b)
        case And(left=l, right=r) | Or(left=l, right=r) | Imp(left=l, right=r):
            return _is_closed_cond(l) and _is_closed_cond(r)
    return True


_EMPTY_RHO = Valuation()


def apply_axiom(interp: Interpretation, term: ProcTerm, axiom: str, path: Path) -> ProcTerm:
    """One axiom application at one position; raises ReplayError off-schema."""
    node = _at(term, path)
    new: Node
    match axiom:
        case "RDP":
            if not isinstance(node, Rec):
                raise ReplayError("RDP applies to a recursion constant")
            spec = node.spec
            binding = {name: Rec(name, spec) for name in spec.names()}
            new = subst_vars(spec.rhs(node.var), binding)
        case "V1":
            if not (isinstance(node, Eval) and isinstance(node.body, Empty)):
                raise ReplayError("V1 applies to eval of the empty process")
            new = Empty()
        case "V2":
            if not (
                isinstance(node, Eval)
                and isinstance(node.body, Seq)
                and isinstance(node.body.left, Act)
            ):
                raise ReplayError("V2 applies to eval of a basic action followed by a term")
            new = Seq(node.body.left, Eval(node.valuation, node.body.right))
        case "V3":
            if not (
                isinstance(node, Eval)
                and isinstance(node.body, Seq)
                and isinstance(node.body.left, Assign)
            ):
                raise ReplayError("V3 applies to eval of an assignment followed by a term")
            rho = node.valuation
            assign = node.body.left
            closed = subst_data(rho, assign.expr)
            value = eval_data(interp, rho, assign.expr)
            new = Seq(Assign(assign.var, closed), Eval(rho.update(assign.var, value), node.body.right))
        case "V4":
            if not (isinstance(node, Eval) and isinstance(node.body, Alt)):
                raise ReplayError("V4 applies to eval of an alternative composition")
            new = Alt(Eval(node.valuation, node.body.left), Eval(node.valuation, node.body.right))
        case "V5":
            if not (isinstance(node, Eval) and isinstance(node.body, Guard)):
                raise ReplayError("V5 applies to eval of a guarded command")
            new = Guard(subst_cond(node.valuation, node.body.cond), Eval(node.valuation, node.body.body))
        case "IMP1":
            if not (isinstance(node, (DataApp, DataConst, FlexVar)) and _is_closed_data(node)):
                raise ReplayError("IMP1 applies to a closed data term")
            new = DataConst(eval_data(interp, _EMPTY_RHO, node))
        case "IMP2":
            if not (
                isinstance(node, (CTrue, CFalse, DataEq, PredEq, Not, And, Or, Imp))
                and _is_closed_cond(node)
            ):
                raise ReplayError("IMP2 applies to a closed condition")
            new = CTrue() if eval_cond(interp, _EMPTY_RHO, node) == 1 else CFalse()
        case "GC1":
            if not (isinstance(node, Guard) and isinstance(node.cond, CTrue)):
                raise ReplayError("GC1 applies to a guard with condition true")
            new = node.body
        case "GC2":
            if not (isinstance(node, Guard) and isinstance(node.cond, CFalse)):
                raise ReplayError("GC2 applies to a guard with condition false")
            new = Inaction()
        case "A1":
            if not isinstance(node, Alt):
                raise ReplayError("A1 applies to an alternative composition")
            new = Alt(node.right, node.left)
        case "A3":
            if not (isinstance(node, Alt) and node.left == node.right):
                raise ReplayError("A3 applies to a sum of two identical terms")
            new = node.left
        case "A6":
            if not (isinstance(node, Alt) and isinstance(node.right, Inaction)):
                raise ReplayError("A6 applies to a sum whose right summand is inaction")
            new = node.left
        case _:
            raise ReplayError(f"axiom {axiom!r} is not part of the unfolding set")
    return _replace(term, path, new)


def replay_log(interp: Interpretation, term: ProcTerm, log: tuple[LogEntry, ...]) -> ProcTerm:
    """Apply a whole log in order; the result should match the engine's term."""
    for axiom, path in log:
        term = apply_axiom(interp, term, axiom, path)
    return term
