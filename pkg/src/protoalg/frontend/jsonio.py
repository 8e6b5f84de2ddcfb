"""JSON forms of traces, witnesses, counterexamples, and reports.

All dumps are key-sorted and contain no timestamps or object ids, so a
fixed invocation produces byte-identical output.
"""
from __future__ import annotations

import json
from typing import Any

from ..equiv import (
    EqvRefutation,
    EqvWitness,
    IsoRefutation,
    IsoWitness,
    LockstepBreak,
    OutputClash,
    SimRefutation,
    SimulationWitness,
    TransportReport,
)
from ..execution import (
    Converged,
    DivergedAtBound,
    InputState,
    InternalState,
    OutputState,
    RunResult,
    State,
)
from ..graph import ValidationReport
from ..procalg import DerivEqRefutation, DerivEqWitness, ProcTerm
from ..prove import ProveReport
from ..verdict import Verdict
from .pprint import print_proc_term


def value_json(v) -> list[int]:
    return list(v)


def state_json(s: State) -> dict[str, Any]:
    if isinstance(s, InputState):
        return {"kind": "input", "value": value_json(s.value)}
    if isinstance(s, InternalState):
        return {"kind": "internal", "vertex": s.vertex, "value": value_json(s.value)}
    if isinstance(s, OutputState):
        return {"kind": "output", "value": value_json(s.value)}
    raise TypeError(f"not a state: {s!r}")


def trace_json(trace: tuple[State, ...] | None) -> list[dict] | None:
    if trace is None:
        return None
    return [state_json(s) for s in trace]


def run_result_json(r: RunResult) -> dict[str, Any]:
    out: dict[str, Any] = {}
    if isinstance(r.outcome, Converged):
        out["outcome"] = "converged"
        out["output"] = value_json(r.outcome.output)
        out["step_count"] = r.outcome.step_count
    else:
        assert isinstance(r.outcome, DivergedAtBound)
        out["outcome"] = "diverged_at_bound"
        out["bound"] = r.outcome.bound
    if r.algorithmic_trace is not None:
        out["algorithmic_trace"] = trace_json(r.algorithmic_trace)
    if r.computational_trace is not None:
        out["computational_trace"] = trace_json(r.computational_trace)
    return out


def validation_report_json(report: ValidationReport) -> dict[str, Any]:
    return {
        "ok": report.ok,
        "violations": [
            {"clause": v.clause, "subject": v.subject, "detail": v.detail}
            for v in report.entries
        ],
    }


def _pairs_json(pairs, key=value_json, val=value_json) -> list[list]:
    return [[key(a), val(b)] for a, b in pairs]


def iso_witness_json(w: IsoWitness) -> dict[str, Any]:
    return {
        "beta_f": [[a, b] for a, b in w.beta_f],
        "beta_p": [[a, b] for a, b in w.beta_p],
        "beta_v": [[a, b] for a, b in w.beta_v],
        "beta_d": _pairs_json(w.beta_d),
        "beta_i": _pairs_json(w.beta_i),
        "beta_o": _pairs_json(w.beta_o),
        "beta_b": w.beta_b,
    }


def sim_witness_json(w: SimulationWitness) -> dict[str, Any]:
    relation = sorted(
        ([state_json(left), state_json(right)] for left, right in w.relation),
        key=lambda pair: json.dumps(pair, sort_keys=True),
    )
    return {
        "kind": w.kind,
        "input_map": _pairs_json(w.input_map),
        "output_map": _pairs_json(w.output_map),
        "relation": relation,
    }


def counterexample_json(cx) -> dict[str, Any]:
    if isinstance(cx, LockstepBreak):
        return {
            "type": "lockstep_break",
            "input": value_json(cx.input),
            "step": cx.step,
            "left": state_json(cx.left),
            "right": state_json(cx.right),
        }
    if isinstance(cx, OutputClash):
        return {
            "type": "output_clash",
            "output_right": value_json(cx.output_right),
            "partners": [value_json(p) for p in cx.partners],
            "witnesses": [[value_json(d), n] for d, n in cx.witnesses],
        }
    if isinstance(cx, SimRefutation):
        return {
            "type": "simulation_refuted",
            "kind": cx.kind,
            "input_map": _pairs_json(cx.input_map),
            "reason": counterexample_json(cx.reason),
            "candidates_tried": cx.candidates_tried,
        }
    if isinstance(cx, EqvRefutation):
        return {
            "type": "equivalence_refuted",
            "direction": cx.direction,
            "refutation": counterexample_json(cx.refutation),
        }
    if isinstance(cx, IsoRefutation):
        return {"type": "isomorphism_refuted", "reason": cx.reason, "detail": cx.detail}
    if isinstance(cx, DerivEqRefutation):
        return {
            "type": "actions_diverge",
            "index": cx.index,
            "left": _action_json(cx.left),
            "right": _action_json(cx.right),
            "prefix": [_action_json(a) for a in cx.prefix],
        }
    raise TypeError(f"no JSON form for {cx!r}")


def _action_json(a: ProcTerm | str) -> str:
    return a if isinstance(a, str) else print_proc_term(a)


def witness_json(w) -> Any:
    if isinstance(w, IsoWitness):
        return iso_witness_json(w)
    if isinstance(w, SimulationWitness):
        return sim_witness_json(w)
    if isinstance(w, EqvWitness):
        return {"forward": sim_witness_json(w.forward), "backward": sim_witness_json(w.backward)}
    if isinstance(w, DerivEqWitness):
        return {
            "reflexive": w.reflexive,
            "actions": [_action_json(a) for a in w.actions],
            "left_log": proof_log_json(w.left_log),
            "right_log": proof_log_json(w.right_log),
        }
    if w is None:
        return None
    raise TypeError(f"no JSON form for {w!r}")


def proof_log_json(log) -> list[list]:
    return [[axiom, list(path)] for axiom, path in log]


def verdict_json(v: Verdict) -> dict[str, Any]:
    out: dict[str, Any] = {"status": v.status}
    if v.is_proven:
        out["witness"] = witness_json(v.witness)
    elif v.is_refuted:
        out["counterexample"] = counterexample_json(v.counterexample)
    else:
        out["bound"] = v.bound
    return out


def transport_report_json(r: TransportReport) -> dict[str, Any]:
    return {
        "ok": r.ok,
        "violations": [
            {"clause": v.clause, "input": value_json(v.input), "detail": v.detail}
            for v in r.violations
        ],
    }


def prove_report_json(r: ProveReport) -> dict[str, Any]:
    return {
        "overall": r.overall,
        "inputs": [
            {
                "input": value_json(iv.input),
                "verdict": iv.verdict,
                **(
                    {
                        "divergence_index": iv.divergence_index,
                        "trace_prefix_on_divergence": [_action_json(a) for a in iv.trace_prefix],
                    }
                    if iv.verdict == "method_inconclusive"
                    else {}
                ),
            }
            for iv in r.inputs
        ],
    }


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
