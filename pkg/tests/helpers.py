"""Shared builders: countdown mutants and miniature instances for oracles."""
from __future__ import annotations

import random

from protoalg.execution import ProtoAlgorithm
from protoalg.graph import (
    CLAUSE_FIN_DEGREE,
    CLAUSE_FUN_DEGREE,
    CLAUSE_INI_DEGREE,
    CLAUSE_INI_ROOT,
    CLAUSE_LABEL_TOTAL,
    CLAUSE_PRED_CYCLE,
    CLAUSE_PRED_DEGREE,
    AlgorithmGraph,
    Alphabet,
    RootedLabeledDigraph,
    make_digraph,
)
from protoalg.interp import Arg, Bin, DomainDecl, Finite, If, Interpretation, Lit, Proj


def cd_mutants(g: RootedLabeledDigraph) -> list[tuple[str, RootedLabeledDigraph]]:
    """One minimal mutant of the countdown graph per validation clause."""

    def rebuild(vertices=None, edges=None, labels=None, edge_labels=None, root=None):
        return make_digraph(
            vertices if vertices is not None else g.vertices,
            edges if edges is not None else set(g.edges),
            labels if labels is not None else dict(g.vertex_label),
            edge_labels if edge_labels is not None else dict(g.edge_label),
            root if root is not None else g.root,
        )

    relabeled_root = dict(g.vertex_label)
    relabeled_root["r"] = "dec"

    labeled_ini_edge = dict(g.edge_label)
    labeled_ini_edge[("r", "c")] = 0

    fin_outgoing = set(g.edges) | {("h", "c")}

    no_loop_back = set(g.edges) - {("g", "c")}

    no_zero_branch = set(g.edges) - {("c", "g")}
    no_zero_labels = {e: b for e, b in g.edge_label.items() if e != ("c", "g")}

    unlabeled_g = {v: lab for v, lab in g.vertex_label.items() if v != "g"}

    pred_cycle_labels = dict(g.vertex_label)
    pred_cycle_labels["g"] = "iszero"
    pred_cycle_edges = set(g.edges) | {("g", "h")}
    pred_cycle_edge_labels = dict(g.edge_label)
    pred_cycle_edge_labels[("g", "c")] = 1
    pred_cycle_edge_labels[("g", "h")] = 0

    return [
        (CLAUSE_INI_ROOT, rebuild(labels=relabeled_root)),
        (CLAUSE_INI_DEGREE, rebuild(edge_labels=labeled_ini_edge)),
        (CLAUSE_FIN_DEGREE, rebuild(edges=fin_outgoing)),
        (CLAUSE_FUN_DEGREE, rebuild(edges=no_loop_back)),
        (CLAUSE_PRED_DEGREE, rebuild(edges=no_zero_branch, edge_labels=no_zero_labels)),
        (CLAUSE_LABEL_TOTAL, rebuild(labels=unlabeled_g)),
        (
            CLAUSE_PRED_CYCLE,
            rebuild(labels=pred_cycle_labels, edges=pred_cycle_edges, edge_labels=pred_cycle_edge_labels),
        ),
    ]


def _table(values: dict[tuple[int, ...], int]) -> If | Lit:
    """Point table over arity-1 finite values as nested conditionals."""
    items = sorted(values.items())
    expr = Lit(items[-1][1])
    for key, result in reversed(items[:-1]):
        expr = If(Bin("=", Proj(0), Lit(key[0])), Lit(result), expr)
    return expr


def make_micro(seed: int) -> ProtoAlgorithm:
    """A tiny all-convergent instance with at most 3 reachable internal states.

    Values live in {0, 1}; the main domain is the exact reachable closure
    so minimality holds by construction; the output domain is always
    {0, 1}, leaving unreached outputs for padding to cover.
    """
    rng = random.Random(seed)
    shape = rng.choice(["chain1", "chain2", "pred"])
    din_values = [(0,)] if rng.random() < 0.4 else [(0,), (1,)]
    tables = {
        "op1": {(0,): rng.randint(0, 1), (1,): rng.randint(0, 1)},
        "op2": {(0,): rng.randint(0, 1), (1,): rng.randint(0, 1)},
    }
    fin_table = {(0,): rng.randint(0, 1), (1,): rng.randint(0, 1)}
    pred_table = {(0,): rng.randint(0, 1), (1,): rng.randint(0, 1)}

    closure = {d for d in din_values}
    if shape != "pred":  # the pred shape has no proper function symbols
        frontier = list(closure)
        while frontier:
            d = frontier.pop()
            for t in (tables["op1"], tables["op2"]):
                img = (t[d],)
                if img not in closure:
                    closure.add(img)
                    frontier.append(img)

    if shape == "pred":
        alphabet = Alphabet(("ini", "fin"), ("p",))
        vertices = [("r", "ini"), ("c", "p"), ("f1", "fin"), ("f2", "fin")]
        edges = [("r", "c"), ("c", "f1"), ("c", "f2")]
        edge_labels = {("c", "f1"): 1, ("c", "f2"): 0}
        assignment = {
            "ini": Arg(),
            "fin": _table({d: fin_table[d] for d in sorted(closure)}),
            "p": _table({d: pred_table[d] for d in sorted(closure)}),
        }
    else:
        alphabet = Alphabet(("ini", "fin", "op1", "op2"), ())
        ops = ["op1"] if shape == "chain1" else ["op1", "op2"]
        vertices = [("r", "ini")] + [(f"n{i}", op) for i, op in enumerate(ops)] + [("f", "fin")]
        path = [v for v, _ in vertices]
        edges = list(zip(path, path[1:]))
        edge_labels = {}
        assignment = {
            "ini": Arg(),
            "fin": _table({d: fin_table[d] for d in sorted(closure)}),
            "op1": _table({d: tables["op1"][d] for d in sorted(closure)}),
            "op2": _table({d: tables["op2"][d] for d in sorted(closure)}),
        }

    main = DomainDecl("main", 1, Finite(tuple(sorted(closure))))
    interp = Interpretation(
        alphabet,
        main,
        DomainDecl("input", 1, Finite(tuple(din_values))),
        DomainDecl("output", 1, Finite(((0,), (1,)))),
        assignment,
    )
    digraph = make_digraph([v for v, _ in vertices], edges, dict(vertices), edge_labels, "r")
    graph = AlgorithmGraph.checked(alphabet, digraph)
    return ProtoAlgorithm.checked(alphabet, graph, interp)
