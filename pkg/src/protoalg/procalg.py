"""Imperative process terms and the head-normal-form engine.

Terms combine basic actions, inaction, the empty process, alternative
and sequential composition, assignment actions over flexible variables,
guarded commands, evaluation wrappers, and constants for solutions of
linear recursive specifications. Unfolding an eval-wrapped constant one
head step at a time uses only the unfolding axiom (RDP), the evaluation
axioms (V1-V5), the guarded-command axioms (GC1, GC2), sum laws
(A1, A3, A6), and evaluation of closed data/condition terms (IMP1,
IMP2); every application is logged as an (axiom, position) pair so the
sequence can be replayed by an independent checker.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .errors import AmbiguousGuards, NonLinearSpec, OpenCondition
from .interp import Interpretation, Value, apply_symbol
from .verdict import Verdict

MEM = "MEM"

TERMINATED = "terminated"
STEP = "step"
STUCK = "stuck"

DEFAULT_UNFOLD_BOUND = 10_000


# ---------------------------------------------------------------------------
# Data terms


@dataclass(frozen=True)
class FlexVar:
    name: str


@dataclass(frozen=True)
class DataConst:
    value: Value


@dataclass(frozen=True)
class DataApp:
    symbol: str
    arg: "DataTerm"


DataTerm = Union[FlexVar, DataConst, DataApp]


# ---------------------------------------------------------------------------
# Condition terms


@dataclass(frozen=True)
class CTrue:
    pass


@dataclass(frozen=True)
class CFalse:
    pass


@dataclass(frozen=True)
class DataEq:
    left: DataTerm
    right: DataTerm


@dataclass(frozen=True)
class PredEq:
    """Predicate application compared against a bit: p(e) = 0 or p(e) = 1."""

    symbol: str
    arg: DataTerm
    bit: int


@dataclass(frozen=True)
class Not:
    body: "CondTerm"


@dataclass(frozen=True)
class And:
    left: "CondTerm"
    right: "CondTerm"


@dataclass(frozen=True)
class Or:
    left: "CondTerm"
    right: "CondTerm"


@dataclass(frozen=True)
class Imp:
    left: "CondTerm"
    right: "CondTerm"


CondTerm = Union[CTrue, CFalse, DataEq, PredEq, Not, And, Or, Imp]


# ---------------------------------------------------------------------------
# Process terms


@dataclass(frozen=True)
class Act:
    """Basic action constant."""

    name: str


@dataclass(frozen=True)
class Assign:
    """Assignment action v := e."""

    var: str
    expr: DataTerm


@dataclass(frozen=True)
class Inaction:
    pass


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Alt:
    left: "ProcTerm"
    right: "ProcTerm"


@dataclass(frozen=True)
class Seq:
    left: "ProcTerm"
    right: "ProcTerm"


@dataclass(frozen=True)
class Guard:
    cond: CondTerm
    body: "ProcTerm"


@dataclass(frozen=True)
class ProcVar:
    """Recursion variable occurrence inside specification right-hand sides."""

    name: str


@dataclass(frozen=True)
class Valuation:
    """Total map from flexible variables to closed values.

    Realized as a finite map plus an optional default; a lookup that
    misses with no default raises OpenCondition.
    """

    entries: tuple[tuple[str, Value], ...] = ()
    default: Value | None = None

    @staticmethod
    def of(mapping: Mapping[str, Value], default: Value | None = None) -> "Valuation":
        return Valuation(tuple(sorted(mapping.items())), default)

    def lookup(self, var: str) -> Value:
        for name, value in self.entries:
            if name == var:
                return value
        if self.default is not None:
            return self.default
        raise OpenCondition(f"flexible variable {var!r} not bound by the valuation")

    def update(self, var: str, value: Value) -> "Valuation":
        kept = tuple((n, v) for n, v in self.entries if n != var)
        return Valuation(tuple(sorted(kept + ((var, value),))), self.default)

    def as_dict(self) -> dict[str, Value]:
        return dict(self.entries)


@dataclass(frozen=True)
class Rec:
    """Constant for the var-component of the solution of a linear specification."""

    var: str
    spec: "LinearSpec"


@dataclass(frozen=True)
class Eval:
    valuation: Valuation
    body: "ProcTerm"


ProcTerm = Union[Act, Assign, Inaction, Empty, Alt, Seq, Guard, ProcVar, Rec, Eval]


def is_linear(t: ProcTerm) -> bool:
    """Exact membership in the linear fragment.

    Inaction is linear; so are guarded termination, a guarded atomic
    action followed by a variable, and sums of linear non-inaction terms.
    """
    match t:
        case Inaction():
            return True
        case Guard(body=Empty()):
            return True
        case Guard(body=Seq(left=Act() | Assign(), right=ProcVar())):
            return True
        case Alt(left=l, right=r):
            if isinstance(l, Inaction) or isinstance(r, Inaction):
                return False
            return is_linear(l) and is_linear(r)
    return False


def _rhs_vars(t: ProcTerm) -> set[str]:
    match t:
        case ProcVar(name=n):
            return {n}
        case Alt(left=l, right=r) | Seq(left=l, right=r):
            return _rhs_vars(l) | _rhs_vars(r)
        case Guard(body=b):
            return _rhs_vars(b)
    return set()


@dataclass(frozen=True)
class LinearSpec:
    """Finite set of recursion equations with linear right-hand sides."""

    equations: tuple[tuple[str, ProcTerm], ...]

    def __post_init__(self):
        names = [n for n, _ in self.equations]
        if len(set(names)) != len(names):
            raise NonLinearSpec("duplicate equation name")
        for name, rhs in self.equations:
            if not is_linear(rhs):
                raise NonLinearSpec(f"right-hand side of {name} is not linear")
            dangling = _rhs_vars(rhs) - set(names)
            if dangling:
                raise NonLinearSpec(f"equation {name} references unbound {sorted(dangling)}")

    @staticmethod
    def of(mapping: Mapping[str, ProcTerm]) -> "LinearSpec":
        return LinearSpec(tuple(mapping.items()))

    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.equations)

    def rhs(self, name: str) -> ProcTerm:
        for n, t in self.equations:
            if n == name:
                return t
        raise KeyError(name)

    def as_dict(self) -> dict[str, ProcTerm]:
        return dict(self.equations)


def subst_vars(t: ProcTerm, binding: Mapping[str, ProcTerm]) -> ProcTerm:
    """Replace recursion-variable occurrences; used by the unfolding axiom."""
    match t:
        case ProcVar(name=n):
            return binding.get(n, t)
        case Alt(left=l, right=r):
            return Alt(subst_vars(l, binding), subst_vars(r, binding))
        case Seq(left=l, right=r):
            return Seq(subst_vars(l, binding), subst_vars(r, binding))
        case Guard(cond=c, body=b):
            return Guard(c, subst_vars(b, binding))
    return t


# ---------------------------------------------------------------------------
# Evaluation of data and condition terms


def subst_data(rho: Valuation, e: DataTerm) -> DataTerm:
    """Homomorphic extension of the valuation to data terms."""
    match e:
        case FlexVar(name=n):
            return DataConst(rho.lookup(n))
        case DataApp(symbol=s, arg=a):
            return DataApp(s, subst_data(rho, a))
    return e


def subst_cond(rho: Valuation, phi: CondTerm) -> CondTerm:
    match phi:
        case DataEq(left=l, right=r):
            return DataEq(subst_data(rho, l), subst_data(rho, r))
        case PredEq(symbol=s, arg=a, bit=b):
            return PredEq(s, subst_data(rho, a), b)
        case Not(body=b):
            return Not(subst_cond(rho, b))
        case And(left=l, right=r):
            return And(subst_cond(rho, l), subst_cond(rho, r))
        case Or(left=l, right=r):
            return Or(subst_cond(rho, l), subst_cond(rho, r))
        case Imp(left=l, right=r):
            return Imp(subst_cond(rho, l), subst_cond(rho, r))
    return phi


def eval_data(interp: Interpretation, rho: Valuation, e: DataTerm) -> Value:
    match e:
        case FlexVar(name=n):
            return rho.lookup(n)
        case DataConst(value=v):
            return v
        case DataApp(symbol=s, arg=a):
            return apply_symbol(interp, s, eval_data(interp, rho, a))
    raise TypeError(f"not a data term: {e!r}")


def eval_cond(interp: Interpretation, rho: Valuation, phi: CondTerm) -> int:
    """Truth value of the condition under the valuation, as a bit."""
    match phi:
        case CTrue():
            return 1
        case CFalse():
            return 0
        case DataEq(left=l, right=r):
            return 1 if eval_data(interp, rho, l) == eval_data(interp, rho, r) else 0
        case PredEq(symbol=s, arg=a, bit=b):
            return 1 if apply_symbol(interp, s, eval_data(interp, rho, a))[0] == b else 0
        case Not(body=b):
            return 1 - eval_cond(interp, rho, b)
        case And(left=l, right=r):
            return eval_cond(interp, rho, l) & eval_cond(interp, rho, r)
        case Or(left=l, right=r):
            return eval_cond(interp, rho, l) | eval_cond(interp, rho, r)
        case Imp(left=l, right=r):
            return (1 - eval_cond(interp, rho, l)) | eval_cond(interp, rho, r)
    raise TypeError(f"not a condition term: {phi!r}")


# ---------------------------------------------------------------------------
# Head normal form

Path = tuple[int, ...]
LogEntry = tuple[str, Path]


@dataclass(frozen=True)
class HNF:
    """One unfolding step of an eval-wrapped recursion constant.

    kind is terminated (the term equals the empty process), step (the
    term equals action . eval-wrapped next constant), or stuck (all
    guards false, the term equals inaction). `term` is the rewritten
    form the log arrives at; `bare_delta` marks the stuck case coming
    from a literal inaction right-hand side, where no rewriting beyond
    the unfolding itself is claimed.
    """

    kind: str
    log: tuple[LogEntry, ...]
    term: ProcTerm
    action: ProcTerm | None = None
    valuation: Valuation | None = None
    next_var: str | None = None
    bare_delta: bool = False


def head_normal_form(interp: Interpretation, term: ProcTerm) -> HNF:
    """Rewrite eval_rho(<X|S>) to its head normal form, logging each axiom."""
    if not (isinstance(term, Eval) and isinstance(term.body, Rec)):
        raise ValueError("head_normal_form expects an eval-wrapped recursion constant")
    rho, const = term.valuation, term.body
    spec = const.spec
    log: list[LogEntry] = []

    binding = {name: Rec(name, spec) for name in spec.names()}
    body = subst_vars(spec.rhs(const.var), binding)
    log.append(("RDP", (0,)))
    current = _normalize(interp, Eval(rho, body), (), log)
    current = _clean_sums(current, (), log)

    return _classify(current, log)


def _normalize(interp: Interpretation, term: ProcTerm, path: Path, log: list[LogEntry]) -> ProcTerm:
    """Push an eval wrapper through a linear body, logging V/GC/IMP steps."""
    assert isinstance(term, Eval)
    rho, body = term.valuation, term.body
    match body:
        case Alt(left=l, right=r):
            log.append(("V4", path))
            left = _normalize(interp, Eval(rho, l), path + (0,), log)
            right = _normalize(interp, Eval(rho, r), path + (1,), log)
            return Alt(left, right)
        case Guard(cond=phi, body=inner):
            log.append(("V5", path))
            closed = subst_cond(rho, phi)
            if not isinstance(closed, (CTrue, CFalse)):
                log.append(("IMP2", path + (0,)))
            truth = eval_cond(interp, rho, phi)
            if truth == 0:
                log.append(("GC2", path))
                return Inaction()
            log.append(("GC1", path))
            return _normalize(interp, Eval(rho, inner), path, log)
        case Seq(left=Assign(var=v, expr=e), right=cont):
            log.append(("V3", path))
            closed = subst_data(rho, e)
            value = eval_data(interp, rho, e)
            if not isinstance(closed, DataConst):
                log.append(("IMP1", path + (0, 0)))
            rho2 = rho.update(v, value)
            return Seq(Assign(v, DataConst(value)), _wrap(interp, rho2, cont))
        case Seq(left=Act(name=a), right=cont):
            log.append(("V2", path))
            return Seq(Act(a), _wrap(interp, rho, cont))
        case Empty():
            log.append(("V1", path))
            return Empty()
        case Inaction():
            # No axiom rewrites eval over inaction; left in place.
            return term
    raise NonLinearSpec(f"cannot head-normalize body {body!r}")


def _wrap(interp: Interpretation, rho: Valuation, cont: ProcTerm) -> ProcTerm:
    if isinstance(cont, Rec):
        return Eval(rho, cont)
    raise NonLinearSpec(f"continuation is not a recursion constant: {cont!r}")


def _clean_sums(term: ProcTerm, path: Path, log: list[LogEntry]) -> ProcTerm:
    """Remove dead summands with A1/A6 and merge duplicates with A3."""
    if not isinstance(term, Alt):
        return term
    left = _clean_sums(term.left, path + (0,), log)
    right = _clean_sums(term.right, path + (1,), log)
    if isinstance(right, Inaction):
        log.append(("A6", path))
        return left
    if isinstance(left, Inaction):
        log.append(("A1", path))
        log.append(("A6", path))
        return right
    if left == right:
        log.append(("A3", path))
        return left
    return Alt(left, right)


def _classify(term: ProcTerm, log: list[LogEntry]) -> HNF:
    entries = tuple(log)
    match term:
        case Empty():
            return HNF(TERMINATED, entries, term)
        case Inaction():
            return HNF(STUCK, entries, term)
        case Eval(body=Inaction()):
            return HNF(STUCK, entries, term, bare_delta=True)
        case Seq(left=action, right=Eval(valuation=rho2, body=Rec(var=y))):
            return HNF(STEP, entries, term, action=action, valuation=rho2, next_var=y)
        case Alt():
            raise AmbiguousGuards("more than one summand survived guard evaluation")
    raise NonLinearSpec(f"unexpected head normal form {term!r}")


# ---------------------------------------------------------------------------
# Derivable equality by co-unfolding


@dataclass(frozen=True)
class DerivEqWitness:
    """Identical action sequence plus the axiom logs of every unfolding.

    Each log segment applies to the eval-wrapped term the corresponding
    unfolding started from (the terms are also recorded so the segments
    can be replayed independently).
    """

    actions: tuple[ProcTerm, ...]
    left_terms: tuple[ProcTerm, ...]
    right_terms: tuple[ProcTerm, ...]
    left_segments: tuple[tuple[LogEntry, ...], ...]
    right_segments: tuple[tuple[LogEntry, ...], ...]
    reflexive: bool = False

    @property
    def left_log(self) -> tuple[LogEntry, ...]:
        return tuple(entry for segment in self.left_segments for entry in segment)

    @property
    def right_log(self) -> tuple[LogEntry, ...]:
        return tuple(entry for segment in self.right_segments for entry in segment)


@dataclass(frozen=True)
class DerivEqRefutation:
    index: int
    left: ProcTerm | str
    right: ProcTerm | str
    prefix: tuple[ProcTerm, ...]


def derivably_equal(
    interp: Interpretation,
    left: ProcTerm,
    right: ProcTerm,
    bound: int = DEFAULT_UNFOLD_BOUND,
) -> Verdict:
    """Decide derivable equality of two eval-wrapped constants by co-unfolding.

    Proven when both terminate at the same index with identical action
    sequences (assignment actions compare by variable and closed value);
    Refuted at the first index where the actions differ or exactly one
    side terminates; UnknownAtBound when both are still stepping at the
    bound. Stuck meets stuck counts as equal (both sides equal inaction)
    except that a literal-inaction body is never claimed equal to a
    guard-collapsed one.
    """
    if left == right:
        return Verdict.proven(DerivEqWitness((), (), (), (), (), reflexive=True))

    actions: list[ProcTerm] = []
    terms1, terms2 = [left], [right]
    segments1: list[tuple[LogEntry, ...]] = []
    segments2: list[tuple[LogEntry, ...]] = []
    t1, t2 = left, right

    def witness() -> DerivEqWitness:
        return DerivEqWitness(
            tuple(actions), tuple(terms1), tuple(terms2), tuple(segments1), tuple(segments2)
        )

    for index in range(bound):
        h1 = head_normal_form(interp, t1)
        h2 = head_normal_form(interp, t2)
        segments1.append(h1.log)
        segments2.append(h2.log)
        if h1.kind == TERMINATED and h2.kind == TERMINATED:
            return Verdict.proven(witness())
        if h1.kind == STUCK and h2.kind == STUCK:
            if h1.bare_delta != h2.bare_delta:
                return Verdict.unknown(index)
            return Verdict.proven(witness())
        if h1.kind != STEP or h2.kind != STEP:
            marker1 = h1.kind if h1.kind != STEP else h1.action
            marker2 = h2.kind if h2.kind != STEP else h2.action
            return Verdict.refuted(DerivEqRefutation(index, marker1, marker2, tuple(actions)))
        if h1.action != h2.action:
            return Verdict.refuted(DerivEqRefutation(index, h1.action, h2.action, tuple(actions)))
        actions.append(h1.action)
        t1 = Eval(h1.valuation, Rec(h1.next_var, t1.body.spec))
        t2 = Eval(h2.valuation, Rec(h2.next_var, t2.body.spec))
        terms1.append(t1)
        terms2.append(t2)
    return Verdict.unknown(bound)
