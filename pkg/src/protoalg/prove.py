"""Certifying algorithmic equivalence through process-term equality.

Two proto-algorithms over the same alphabet and interpretation are
algorithmically equivalent if, for every input value, the eval-wrapped
translations of their graphs are derivably equal. The method only ever
certifies: a failed term equality is reported as MethodInconclusive,
never as a refutation of the equivalence itself, because interchanging
commuting operations (for example) changes the terms but not the
behaviour.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import MismatchedSignature
from .execution import (
    InputState,
    InternalState,
    OutputState,
    ProtoAlgorithm,
    algorithmic_step,
    reachable_states,
)
from .interp import Value
from .procalg import (
    MEM,
    Assign,
    DataConst,
    Eval,
    Rec,
    Valuation,
    derivably_equal,
    head_normal_form,
)
from .translate import EPS_VAR, graph_to_process, variable_name
from .verdict import PROVEN, REFUTED, UNKNOWN

PROVEN_INPUT = "proven"
METHOD_INCONCLUSIVE = "method_inconclusive"
UNKNOWN_INPUT = "unknown"

DEFAULT_PROVE_BOUND = 10_000


@dataclass(frozen=True)
class InputVerdict:
    input: Value
    verdict: str  # proven | method_inconclusive | unknown
    divergence_index: int | None = None
    trace_prefix: tuple = ()  # actions agreed on before the divergence


@dataclass(frozen=True)
class ProveReport:
    overall: str  # proven | method_inconclusive | unknown
    inputs: tuple[InputVerdict, ...]

    @property
    def certified(self) -> bool:
        return self.overall == PROVEN_INPUT


def prove_aeqv(
    a: ProtoAlgorithm,
    b: ProtoAlgorithm,
    inputs: list[Value] | None = None,
    bound: int = DEFAULT_PROVE_BOUND,
) -> ProveReport:
    """Run the per-input term-equality method over the input domain.

    All inputs Proven certifies algorithmic equivalence. Any refuted
    term equality makes the whole method inconclusive; any budget
    exhaustion leaves it unknown.
    """
    if a.alphabet != b.alphabet or a.interp != b.interp:
        raise MismatchedSignature("the method needs a shared alphabet and interpretation")
    proc_a = graph_to_process(a.graph)
    proc_b = graph_to_process(b.graph)

    chosen = inputs if inputs is not None else a.input_values()
    per_input: list[InputVerdict] = []
    for d in chosen:
        rho = Valuation.of({MEM: d})
        verdict = derivably_equal(a.interp, Eval(rho, proc_a), Eval(rho, proc_b), bound)
        if verdict.status == PROVEN:
            per_input.append(InputVerdict(d, PROVEN_INPUT))
        elif verdict.status == REFUTED:
            cx = verdict.counterexample
            per_input.append(InputVerdict(d, METHOD_INCONCLUSIVE, cx.index, cx.prefix))
        else:
            per_input.append(InputVerdict(d, UNKNOWN_INPUT))

    if any(v.verdict == METHOD_INCONCLUSIVE for v in per_input):
        overall = METHOD_INCONCLUSIVE
    elif any(v.verdict == UNKNOWN_INPUT for v in per_input):
        overall = UNKNOWN_INPUT
    else:
        overall = PROVEN_INPUT
    return ProveReport(overall, tuple(per_input))


def cross_validate_unfolding(a: ProtoAlgorithm, max_steps: int = DEFAULT_PROVE_BOUND) -> list[str]:
    """Compare the step function against head-normal unfolding, state by state.

    For every reachable state the translated process must unfold to
    exactly the assignment action and continuation that the step
    function predicts. A non-empty result indicates an implementation
    bug somewhere between the two lanes.
    """
    proc = graph_to_process(a.graph)
    spec = proc.spec
    g = a.graph.graph
    mismatches: list[str] = []

    def expect(state_desc: str, rho_value: Value, var: str, want_value: Value, want_next: str):
        hnf = head_normal_form(a.interp, Eval(Valuation.of({MEM: rho_value}), Rec(var, spec)))
        if hnf.kind != "step":
            mismatches.append(f"{state_desc}: unfolding gave {hnf.kind}, expected a step")
            return
        want_action = Assign(MEM, DataConst(want_value))
        if hnf.action != want_action or hnf.next_var != want_next:
            mismatches.append(
                f"{state_desc}: unfolding gave {hnf.action} -> {hnf.next_var}, "
                f"expected {want_action} -> {want_next}"
            )
        if hnf.valuation.lookup(MEM) != want_value:
            mismatches.append(f"{state_desc}: valuation not updated to {want_value}")

    for state in reachable_states(a, max_steps):
        if isinstance(state, OutputState):
            continue
        nxt = algorithmic_step(a, state)
        if isinstance(state, InputState):
            var = variable_name(g, g.root)
            desc = f"input {state.value}"
        else:
            var = variable_name(g, state.vertex)
            desc = f"internal ({state.vertex}, {state.value})"
        if isinstance(nxt, InternalState):
            expect(desc, _data_of(state), var, nxt.value, variable_name(g, nxt.vertex))
        else:
            assert isinstance(nxt, OutputState)
            expect(desc, _data_of(state), var, nxt.value, EPS_VAR)
    return mismatches


def _data_of(state) -> Value:
    return state.value
