"""Step semantics of proto-algorithms.

A proto-algorithm goes through states: an input value, an internal
(vertex, value) pair, or an output value. The algorithmic step function
advances one vertex at a time; the computational step function is the
same except that predicate inspections are concealed, i.e. collapsed
into the following operation or output step. Output states are fixpoints
of both.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import (
    InputNotInDomain,
    InvalidGraph,
    MalformedState,
    PredicateCycleError,
)
from .graph import FIN, INI, AlgorithmGraph, Alphabet, validate_algorithm_graph
from .interp import Interpretation, Value, check_interpretation, eval_fun

DEFAULT_MAX_STEPS = 10_000


@dataclass(frozen=True)
class InputState:
    value: Value


@dataclass(frozen=True)
class InternalState:
    vertex: str
    value: Value


@dataclass(frozen=True)
class OutputState:
    value: Value


State = Union[InputState, InternalState, OutputState]


@dataclass(frozen=True)
class ProtoAlgorithm:
    """Alphabet, algorithm graph, and interpretation, as one unit.

    `checked` validates the triple; the bare constructor does not, so
    tests can build deliberately broken instances.
    """

    alphabet: Alphabet
    graph: AlgorithmGraph
    interp: Interpretation

    @staticmethod
    def checked(alphabet: Alphabet, graph: AlgorithmGraph, interp: Interpretation) -> "ProtoAlgorithm":
        if graph.alphabet != alphabet or interp.alphabet != alphabet:
            raise InvalidGraph("graph/interpretation alphabets disagree with the triple's")
        g_report = validate_algorithm_graph(alphabet, graph.graph)
        if not g_report.ok:
            raise InvalidGraph(f"algorithm-graph conditions violated:\n{g_report}")
        i_report = check_interpretation(alphabet, interp)
        if not i_report.ok:
            raise InvalidGraph(f"interpretation conditions violated:\n{i_report}")
        return ProtoAlgorithm(alphabet, graph, interp)

    def input_values(self) -> list[Value]:
        from .interp import enumerate_domain

        return list(enumerate_domain(self.interp.input))

    def output_values(self) -> list[Value]:
        from .interp import enumerate_domain

        return list(enumerate_domain(self.interp.output))


def _check_state(a: ProtoAlgorithm, s: State) -> None:
    if isinstance(s, InputState):
        if not a.interp.input.contains(s.value):
            raise MalformedState(f"input value {s.value} outside the input domain")
    elif isinstance(s, InternalState):
        if not a.graph.graph.has_vertex(s.vertex):
            raise MalformedState(f"unknown vertex {s.vertex!r}")
        if not a.interp.main.contains(s.value):
            raise MalformedState(f"internal value {s.value} outside the main domain")
    elif isinstance(s, OutputState):
        if not a.interp.output.contains(s.value):
            raise MalformedState(f"output value {s.value} outside the output domain")
    else:
        raise MalformedState(f"not a state: {s!r}")


def algorithmic_step(a: ProtoAlgorithm, s: State) -> State:
    """One step: total and deterministic on well-formed states."""
    _check_state(a, s)
    g = a.graph
    if isinstance(s, InputState):
        return InternalState(g.unique_successor(g.graph.root), eval_fun(a.interp, INI, s.value))
    if isinstance(s, OutputState):
        return s
    label = g.label(s.vertex)
    if label == FIN:
        return OutputState(eval_fun(a.interp, FIN, s.value))
    if a.alphabet.is_predicate(label):
        bit = eval_fun(a.interp, label, s.value)[0]
        return InternalState(g.branch(s.vertex, bit), s.value)
    return InternalState(g.unique_successor(s.vertex), eval_fun(a.interp, label, s.value))


def computational_step(a: ProtoAlgorithm, s: State) -> State:
    """One step with predicate inspections concealed.

    From a predicate vertex the chosen branches are followed until a
    non-predicate vertex acts. Terminates on validated graphs (no
    predicate-only cycles); on broken graphs a revisited predicate
    raises PredicateCycleError instead of looping.
    """
    _check_state(a, s)
    if isinstance(s, (InputState, OutputState)):
        return algorithmic_step(a, s)
    g = a.graph
    vertex, value = s.vertex, s.value
    visited: set[str] = set()
    while a.alphabet.is_predicate(g.label(vertex)):
        if vertex in visited:
            raise PredicateCycleError(f"predicate-only cycle through {vertex!r}")
        visited.add(vertex)
        bit = eval_fun(a.interp, g.label(vertex), value)[0]
        vertex = g.branch(vertex, bit)
    return algorithmic_step(a, InternalState(vertex, value))


@dataclass(frozen=True)
class Converged:
    output: Value
    step_count: int  # minimal number of algorithmic steps to the output


@dataclass(frozen=True)
class DivergedAtBound:
    bound: int


Outcome = Union[Converged, DivergedAtBound]


@dataclass(frozen=True)
class RunResult:
    outcome: Outcome
    algorithmic_trace: tuple[State, ...] | None = None
    computational_trace: tuple[State, ...] | None = None

    @property
    def converged(self) -> bool:
        return isinstance(self.outcome, Converged)


def _iterate(a: ProtoAlgorithm, step, d: Value, max_steps: int, record: bool):
    state: State = InputState(d)
    trace = [state] if record else None
    for n in range(1, max_steps + 1):
        state = step(a, state)
        if record:
            trace.append(state)
        if isinstance(state, OutputState):
            return Converged(state.value, n), trace
    return DivergedAtBound(max_steps), trace


def run(
    a: ProtoAlgorithm,
    d: Value,
    max_steps: int = DEFAULT_MAX_STEPS,
    record_algorithmic: bool = False,
    record_computational: bool = False,
) -> RunResult:
    """Iterate the algorithmic step function from the input value.

    Partiality of the computed function is represented by DivergedAtBound,
    never by an exception. The computational trace, when requested, is
    produced by iterating the concealed step function; on converging
    inputs both traces end in the same output value.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    if not a.interp.input.contains(d):
        raise InputNotInDomain(f"value {d} outside the input domain")
    outcome, a_trace = _iterate(a, algorithmic_step, d, max_steps, record_algorithmic)
    c_trace = None
    if record_computational:
        _, c_trace = _iterate(a, computational_step, d, max_steps, True)
    return RunResult(
        outcome,
        tuple(a_trace) if a_trace is not None else None,
        tuple(c_trace) if c_trace is not None else None,
    )


def computed_function(
    a: ProtoAlgorithm, max_steps: int = DEFAULT_MAX_STEPS
) -> dict[Value, Value | None]:
    """Input→output table of the computed function; None marks divergence at the bound."""
    table: dict[Value, Value | None] = {}
    for d in a.input_values():
        outcome = run(a, d, max_steps).outcome
        table[d] = outcome.output if isinstance(outcome, Converged) else None
    return table


def reachable_states(a: ProtoAlgorithm, max_steps: int = DEFAULT_MAX_STEPS) -> list[State]:
    """All states reachable from some input state, inputs included, in a stable order."""
    seen: dict[State, None] = {}
    for d in a.input_values():
        s: State = InputState(d)
        steps = 0
        while s not in seen and steps <= max_steps:
            seen[s] = None
            if isinstance(s, OutputState):
                break
            s = algorithmic_step(a, s)
            steps += 1
    return list(seen)
