"""Between algorithm graphs and algorithm processes.

graph_to_process emits one recursion equation per vertex plus the
termination equation, with deterministic variable names (X for the root,
X_<vertex> otherwise, X_eps for termination), so it is a genuine
function of the graph. process_to_graph inverts it for any recognized
algorithm process; round trips are identities up to vertex renaming on
one side and up to canonical variable renaming on the other.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidGraph, NotAlgorithmProcess
from .graph import (
    FIN,
    INI,
    AlgorithmGraph,
    Alphabet,
    RootedLabeledDigraph,
    make_digraph,
)
from .procalg import (
    Alt,
    Assign,
    CTrue,
    DataApp,
    Empty,
    FlexVar,
    Guard,
    LinearSpec,
    MEM,
    PredEq,
    ProcTerm,
    ProcVar,
    Rec,
    Seq,
)

EPS_VAR = "X_eps"
ROOT_VAR = "X"


def variable_name(g: RootedLabeledDigraph, v: str) -> str:
    return ROOT_VAR if v == g.root else f"X_{v}"


def _step_equation(symbol: str, target: str) -> ProcTerm:
    return Guard(CTrue(), Seq(Assign(MEM, DataApp(symbol, FlexVar(MEM))), ProcVar(target)))


def _branch_equation(symbol: str, target1: str, target0: str) -> ProcTerm:
    def side(bit: int, target: str) -> ProcTerm:
        return Guard(PredEq(symbol, FlexVar(MEM), bit), Seq(Assign(MEM, FlexVar(MEM)), ProcVar(target)))

    return Alt(side(1, target1), side(0, target0))


def graph_to_process(ag: AlgorithmGraph) -> Rec:
    """Translate a valid algorithm graph into its recursion constant."""
    g = ag.graph
    if "eps" in g.vertices:
        raise InvalidGraph("vertex id 'eps' is reserved by the translation")

    equations: list[tuple[str, ProcTerm]] = []
    for v in g.vertices:
        label = ag.label(v)
        name = variable_name(g, v)
        if label == INI:
            rhs = _step_equation(INI, variable_name(g, ag.unique_successor(v)))
        elif label == FIN:
            rhs = _step_equation(FIN, EPS_VAR)
        elif ag.alphabet.is_predicate(label):
            rhs = _branch_equation(
                label,
                variable_name(g, ag.branch(v, 1)),
                variable_name(g, ag.branch(v, 0)),
            )
        else:
            rhs = _step_equation(label, variable_name(g, ag.unique_successor(v)))
        equations.append((name, rhs))
    equations.append((EPS_VAR, Guard(CTrue(), Empty())))
    return Rec(variable_name(g, g.root), LinearSpec(tuple(equations)))


@dataclass(frozen=True)
class _EquationShape:
    form: int  # 1..5
    symbol: str | None = None
    targets: tuple[str, ...] = ()  # form 3: (one-branch, zero-branch)


def _match_step(rhs: ProcTerm) -> tuple[str, str] | None:
    """Guard(true, MEM := sym(MEM) . Z) -> (sym, Z)."""
    match rhs:
        case Guard(
            cond=CTrue(),
            body=Seq(
                left=Assign(var=var, expr=DataApp(symbol=sym, arg=FlexVar(name=arg))),
                right=ProcVar(name=target),
            ),
        ) if var == MEM and arg == MEM:
            return sym, target
    return None


def _match_branch_side(t: ProcTerm) -> tuple[str, int, str] | None:
    """Guard(p(MEM) = bit, MEM := MEM . Z) -> (p, bit, Z)."""
    match t:
        case Guard(
            cond=PredEq(symbol=p, arg=FlexVar(name=arg), bit=bit),
            body=Seq(left=Assign(var=var, expr=FlexVar(name=src)), right=ProcVar(name=target)),
        ) if arg == MEM and var == MEM and src == MEM:
            return p, bit, target
    return None


def _classify_equation(name: str, rhs: ProcTerm, alphabet: Alphabet) -> tuple[_EquationShape | None, str | None]:
    """Shape of one equation, or a diagnosis of why it fits no form."""
    if rhs == Guard(CTrue(), Empty()):
        return _EquationShape(5), None
    step = _match_step(rhs)
    if step is not None:
        sym, target = step
        if sym == INI:
            return _EquationShape(1, sym, (target,)), None
        if sym == FIN:
            return _EquationShape(4, sym, (target,)), None
        if sym in alphabet.proper_functions:
            return _EquationShape(2, sym, (target,)), None
        return None, f"equation {name}: symbol {sym!r} is not in the alphabet"
    if isinstance(rhs, Alt):
        sides = (_match_branch_side(rhs.left), _match_branch_side(rhs.right))
        if all(s is not None for s in sides):
            by_bit = {bit: (p, target) for p, bit, target in sides}
            if len(by_bit) != 2:
                return None, f"equation {name}: the two branches share the same guard bit (form 3)"
            (p1, t1), (p0, t0) = by_bit[1], by_bit[0]
            if p1 != p0:
                return None, f"equation {name}: branches inspect different predicates (form 3)"
            if not alphabet.is_predicate(p1):
                return None, f"equation {name}: symbol {p1!r} is not a predicate"
            if t1 == t0:
                return None, f"equation {name}: branch continuations must be distinct (form 3)"
            return _EquationShape(3, p1, (t1, t0)), None
    return None, f"equation {name}: right-hand side matches no equation form"


def is_algorithm_process(proc: Rec, alphabet: Alphabet) -> tuple[bool, str | None]:
    """Recognize the algorithm-process shape; returns (ok, diagnosis)."""
    spec = proc.spec
    names = spec.names()
    if proc.var not in names:
        return False, f"root variable {proc.var!r} has no equation"

    shapes: dict[str, _EquationShape] = {}
    for name, rhs in spec.equations:
        shape, diagnosis = _classify_equation(name, rhs, alphabet)
        if shape is None:
            return False, diagnosis
        shapes[name] = shape

    eps_vars = [n for n, s in shapes.items() if s.form == 5]
    if len(eps_vars) != 1:
        return False, f"need exactly one termination equation (form 5), found {len(eps_vars)}"
    eps = eps_vars[0]
    root_forms = [n for n, s in shapes.items() if s.form == 1]
    if root_forms != [proc.var]:
        return (
            False,
            f"exactly the root must have the input equation (form 1), found {root_forms}",
        )

    referenced: set[str] = set()
    for name, shape in shapes.items():
        for i, target in enumerate(shape.targets):
            referenced.add(target)
            if shape.form == 4:
                if target != eps:
                    return False, f"equation {name}: output continues to {target!r}, not the termination variable"
            elif target == eps:
                return False, f"equation {name}: only output equations may continue to the termination variable"
            elif target not in names:
                return False, f"equation {name}: continuation {target!r} has no equation"
    if proc.var in referenced:
        return False, f"root variable {proc.var!r} may not occur in a right-hand side"
    unreferenced = [n for n in names if n not in referenced and n not in (proc.var, eps)]
    if unreferenced:
        return False, f"equations never continued to: {unreferenced}"

    # A cycle of branch equations would make the constructed graph invalid.
    branch_adj = {
        n: [t for t in s.targets if shapes.get(t) and shapes[t].form == 3]
        for n, s in shapes.items()
        if s.form == 3
    }
    state: dict[str, int] = {}

    def cyclic(n: str) -> bool:
        state[n] = 1
        for t in branch_adj.get(n, ()):  # noqa: B023 - local recursion
            s = state.get(t)
            if s == 1 or (s is None and cyclic(t)):
                return True
        state[n] = 2
        return False

    for n in branch_adj:
        if state.get(n) is None and cyclic(n):
            return False, "branch equations form a cycle with no operation between them"
    return True, None


def termination_variable(proc: Rec) -> str:
    """Name of the (unique) form-5 equation's variable."""
    for name, rhs in proc.spec.equations:
        if rhs == Guard(CTrue(), Empty()):
            return name
    raise NotAlgorithmProcess("no termination equation")


def process_to_graph(proc: Rec, alphabet: Alphabet) -> AlgorithmGraph:
    """Rebuild the graph an algorithm process came from (vertex ids = variable names)."""
    ok, diagnosis = is_algorithm_process(proc, alphabet)
    if not ok:
        raise NotAlgorithmProcess("not an algorithm process", diagnosis)
    eps = termination_variable(proc)

    vertices = [n for n in proc.spec.names() if n != eps]
    labels: dict[str, str] = {}
    edges: set[tuple[str, str]] = set()
    edge_labels: dict[tuple[str, str], int] = {}
    for name, rhs in proc.spec.equations:
        if name == eps:
            continue
        step = _match_step(rhs)
        if step is not None:
            sym, target = step
            labels[name] = sym
            if sym != FIN:
                edges.add((name, target))
            continue
        assert isinstance(rhs, Alt)
        p, bit, target = _match_branch_side(rhs.left)
        p2, bit2, target2 = _match_branch_side(rhs.right)
        labels[name] = p
        edges.add((name, target))
        edge_labels[(name, target)] = bit
        edges.add((name, target2))
        edge_labels[(name, target2)] = bit2

    digraph = make_digraph(vertices, edges, labels, edge_labels, proc.var)
    return AlgorithmGraph.checked(alphabet, digraph)


def canonical_form(proc: Rec) -> Rec:
    """Rename variables canonically: X for the root, X1.. in reachability order,
    X_eps for termination; equations reordered to match."""
    eps = termination_variable(proc)
    shapes = {name: rhs for name, rhs in proc.spec.equations}

    renaming = {proc.var: ROOT_VAR, eps: EPS_VAR}
    order = [proc.var]
    queue = [proc.var]
    counter = 0

    def successors(rhs: ProcTerm) -> list[str]:
        step = _match_step(rhs)
        if step is not None:
            return [step[1]]
        if isinstance(rhs, Alt):
            one = _match_branch_side(rhs.left)
            zero = _match_branch_side(rhs.right)
            if one is not None and zero is not None:
                ordered = sorted((one, zero), key=lambda s: -s[1])
                return [s[2] for s in ordered]
        return []

    while queue:
        current = queue.pop(0)
        for nxt in successors(shapes[current]):
            if nxt not in renaming:
                counter += 1
                renaming[nxt] = f"X{counter}"
                order.append(nxt)
                queue.append(nxt)
    for leftover in sorted(shapes):
        if leftover not in renaming:
            counter += 1
            renaming[leftover] = f"X{counter}"
            order.append(leftover)
    if eps not in order:
        order.append(eps)
    elif order[-1] != eps:
        order.remove(eps)
        order.append(eps)

    def rename(term: ProcTerm) -> ProcTerm:
        match term:
            case ProcVar(name=n):
                return ProcVar(renaming[n])
            case Alt(left=l, right=r):
                return Alt(rename(l), rename(r))
            case Seq(left=l, right=r):
                return Seq(rename(l), rename(r))
            case Guard(cond=c, body=b):
                return Guard(c, rename(b))
        return term

    equations = tuple((renaming[name], rename(shapes[name])) for name in order)
    return Rec(renaming[proc.var], LinearSpec(equations))
