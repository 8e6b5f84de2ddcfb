"""Proto-algorithms: graph definitions, step semantics, equivalence checking,
and process-term equality proofs."""

from .equiv import (
    check_aeqv,
    check_ceqv,
    check_isomorphism,
    check_simulation,
    verify_iso_witness,
    verify_simulation_transport,
    verify_simulation_witness,
)
from .execution import (
    InputState,
    InternalState,
    OutputState,
    ProtoAlgorithm,
    algorithmic_step,
    computational_step,
    run,
)
from .graph import (
    AlgorithmGraph,
    Alphabet,
    RootedLabeledDigraph,
    degrees,
    predicate_only_cycles,
    validate_algorithm_graph,
)
from .interp import Interpretation, check_interpretation, enumerate_domain, eval_fun
from .procalg import derivably_equal, eval_cond, head_normal_form, is_linear
from .prove import cross_validate_unfolding, prove_aeqv
from .translate import canonical_form, graph_to_process, is_algorithm_process, process_to_graph
from .verdict import Verdict

__all__ = [
    "AlgorithmGraph",
    "Alphabet",
    "InputState",
    "InternalState",
    "Interpretation",
    "OutputState",
    "ProtoAlgorithm",
    "RootedLabeledDigraph",
    "Verdict",
    "algorithmic_step",
    "canonical_form",
    "check_aeqv",
    "check_ceqv",
    "check_interpretation",
    "check_isomorphism",
    "check_simulation",
    "computational_step",
    "cross_validate_unfolding",
    "degrees",
    "derivably_equal",
    "enumerate_domain",
    "eval_cond",
    "eval_fun",
    "graph_to_process",
    "head_normal_form",
    "is_algorithm_process",
    "is_linear",
    "predicate_only_cycles",
    "process_to_graph",
    "prove_aeqv",
    "run",
    "validate_algorithm_graph",
    "verify_iso_witness",
    "verify_simulation_transport",
    "verify_simulation_witness",
]
