from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from protoalg.errors import InvalidGraph, InvalidVertex, PredicateCycleError
from protoalg.execution import InternalState, ProtoAlgorithm, computational_step
from protoalg.frontend.gen import generate_random
from protoalg.graph import (
    CLAUSE_PRED_CYCLE,
    CLAUSE_PRED_DEGREE,
    AlgorithmGraph,
    Alphabet,
    degrees,
    make_digraph,
    predicate_only_cycles,
    to_dot,
    validate_algorithm_graph,
)
from protoalg.interp import Interpretation, Lit
from helpers import cd_mutants


def test_alphabet_invariants():
    a = Alphabet(("ini", "fin", "dec"), ("iszero",))
    assert a.proper_functions == ("dec",)
    with pytest.raises(ValueError):
        Alphabet(("ini",), ())
    with pytest.raises(ValueError):
        Alphabet(("ini", "fin", "p"), ("p",))
    with pytest.raises(ValueError):
        Alphabet(("ini", "fin", "fin"), ())


def test_degrees_isolated_root():
    g = make_digraph(["r"], [], {"r": "ini"}, {}, "r")
    assert degrees(g, "r") == (0, 0)


def test_degrees_countdown(cd):
    g = cd.graph.graph
    assert degrees(g, "c") == (2, 2)
    assert degrees(g, "r") == (0, 1)


def test_degrees_unknown_vertex(cd):
    with pytest.raises(InvalidVertex):
        degrees(cd.graph.graph, "nope")


def test_countdown_is_valid(cd):
    assert validate_algorithm_graph(cd.alphabet, cd.graph.graph).ok


@pytest.mark.parametrize("clause_index", range(7))
def test_each_clause_mutant_is_flagged(cd, clause_index):
    clause, mutant = cd_mutants(cd.graph.graph)[clause_index]
    report = validate_algorithm_graph(cd.alphabet, mutant)
    assert not report.ok
    assert clause in report.clauses()


def test_deleted_zero_branch_cites_predicate_degrees(cd):
    mutants = dict(cd_mutants(cd.graph.graph))
    report = validate_algorithm_graph(cd.alphabet, mutants[CLAUSE_PRED_DEGREE])
    flagged = [v for v in report.entries if v.clause == CLAUSE_PRED_DEGREE]
    assert flagged and flagged[0].subject == "c"


def _two_predicate_loop():
    alphabet = Alphabet(("ini", "fin"), ("p", "q"))
    g = make_digraph(
        ["r", "p1", "p2", "f"],
        [("r", "p1"), ("p1", "p2"), ("p1", "f"), ("p2", "p1"), ("p2", "f")],
        {"r": "ini", "p1": "p", "p2": "q", "f": "fin"},
        {("p1", "p2"): 1, ("p1", "f"): 0, ("p2", "p1"): 1, ("p2", "f"): 0},
        "r",
    )
    return alphabet, g


def test_predicate_only_cycle_is_flagged():
    alphabet, g = _two_predicate_loop()
    report = validate_algorithm_graph(alphabet, g)
    assert CLAUSE_PRED_CYCLE in report.clauses()
    cycles = predicate_only_cycles(g, alphabet)
    assert cycles == [["p1", "p2", "p1"]]


def test_no_predicate_cycles_in_fixtures(cd, diamond_pair):
    assert predicate_only_cycles(cd.graph.graph, cd.alphabet) == []
    a, _ = diamond_pair
    assert predicate_only_cycles(a.graph.graph, a.alphabet) == []


def test_cycle_enumeration_cap():
    alphabet, g = _two_predicate_loop()
    assert predicate_only_cycles(g, alphabet, cap=0) == []


def test_checked_constructor_rejects_invalid(cd):
    _, mutant = cd_mutants(cd.graph.graph)[0]
    with pytest.raises(InvalidGraph):
        AlgorithmGraph.checked(cd.alphabet, mutant)


@given(st.integers(min_value=0, max_value=200), st.integers(min_value=0, max_value=3))
def test_generated_graphs_accepted_and_mutations_flagged(seed, which):
    """The generator builds by the clauses; any single structural mutation breaks one."""
    base = generate_random(seed).base
    g = base.graph.graph
    assert validate_algorithm_graph(base.alphabet, g).ok

    edges = sorted(g.edges)
    if which == 0:  # delete an edge
        mutated = make_digraph(g.vertices, set(edges[:-1]), g.vertex_label,
                               {e: b for e, b in g.edge_label.items() if e != edges[-1]}, g.root)
    elif which == 1:  # unlabel the root
        labels = {v: lab for v, lab in g.vertex_label.items() if v != g.root}
        mutated = make_digraph(g.vertices, g.edges, labels, g.edge_label, g.root)
    elif which == 2:  # swap the root to a non-ini vertex
        other = next(v for v in g.vertices if v != g.root)
        mutated = make_digraph(g.vertices, g.edges, g.vertex_label, g.edge_label, other)
    else:  # relabel a function vertex as a predicate
        target = next(v for v in g.vertices if g.vertex_label[v] not in ("ini", "fin"))
        labels = dict(g.vertex_label)
        labels[target] = "p1" if labels[target] != "p1" else "p2"
        mutated = make_digraph(g.vertices, g.edges, labels, g.edge_label, g.root)
    assert not validate_algorithm_graph(base.alphabet, mutated).ok


def test_predicate_cycles_empty_iff_concealed_step_terminates(cd):
    """Cross-module: the concealed step function terminates exactly when
    the predicate-induced subgraph is acyclic."""
    assert predicate_only_cycles(cd.graph.graph, cd.alphabet) == []
    for v in cd.graph.graph.vertices:
        for d in range(4):
            computational_step(cd, InternalState(v, (d,)))  # must not raise

    alphabet, g = _two_predicate_loop()
    interp = cd.interp
    broken = ProtoAlgorithm(
        alphabet,
        AlgorithmGraph(alphabet, g),
        # reuse countdown domains with always-true predicates to force the loop
        Interpretation(
            alphabet,
            interp.main,
            interp.input,
            interp.output,
            {
                "ini": interp.assignment["ini"],
                "fin": interp.assignment["fin"],
                "p": Lit(1),
                "q": Lit(1),
            },
        ),
    )
    assert predicate_only_cycles(g, alphabet) != []
    with pytest.raises(PredicateCycleError):
        computational_step(broken, InternalState("p1", (0,)))


def test_dot_export_mentions_every_vertex(cd):
    dot = to_dot(cd.graph)
    for v in cd.graph.graph.vertices:
        assert f'"{v}"' in dot
