"""Rooted labeled directed graphs and the algorithm-graph conditions.

An algorithm graph over an alphabet (F, P) is a rooted labeled digraph
whose root is the unique ini-labeled vertex, whose fin vertices are sinks,
whose proper function vertices have one unlabeled out-edge, whose
predicate vertices have a 0-labeled and a 1-labeled out-edge, and which
has no cycle consisting of predicate vertices only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InvalidVertex

INI = "ini"
FIN = "fin"

Edge = tuple[str, str]

# Clause identifiers used in validation reports.
CLAUSE_INI_ROOT = "ini-root"
CLAUSE_INI_DEGREE = "ini-degree"
CLAUSE_FIN_DEGREE = "fin-degree"
CLAUSE_FUN_DEGREE = "fun-degree"
CLAUSE_PRED_DEGREE = "pred-degree"
CLAUSE_LABEL_TOTAL = "label-total"
CLAUSE_PRED_CYCLE = "pred-cycle"

ALL_CLAUSES = (
    CLAUSE_INI_ROOT,
    CLAUSE_INI_DEGREE,
    CLAUSE_FIN_DEGREE,
    CLAUSE_FUN_DEGREE,
    CLAUSE_PRED_DEGREE,
    CLAUSE_LABEL_TOTAL,
    CLAUSE_PRED_CYCLE,
)


@dataclass(frozen=True)
class Violation:
    clause: str
    subject: str
    detail: str

    def __str__(self) -> str:
        return f"[{self.clause}] {self.subject}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    entries: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.entries

    def clauses(self) -> set[str]:
        return {v.clause for v in self.entries}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.entries)


@dataclass(frozen=True)
class Alphabet:
    """Function and predicate symbols; ini and fin are always functions."""

    function_symbols: tuple[str, ...]
    predicate_symbols: tuple[str, ...] = ()

    def __post_init__(self):
        funs, preds = self.function_symbols, self.predicate_symbols
        if len(set(funs)) != len(funs) or len(set(preds)) != len(preds):
            raise ValueError("duplicate symbol in alphabet")
        if set(funs) & set(preds):
            raise ValueError("function and predicate symbols must be disjoint")
        if INI not in funs or FIN not in funs:
            raise ValueError(f"alphabet must contain {INI!r} and {FIN!r}")

    @property
    def proper_functions(self) -> tuple[str, ...]:
        """Function symbols other than ini and fin."""
        return tuple(f for f in self.function_symbols if f not in (INI, FIN))

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.function_symbols + self.predicate_symbols

    def is_function(self, s: str) -> bool:
        return s in self.function_symbols

    def is_predicate(self, s: str) -> bool:
        return s in self.predicate_symbols


@dataclass(frozen=True)
class RootedLabeledDigraph:
    """Finite digraph with a root, partial vertex labels, and partial 0/1 edge labels.

    Vertex order is the declaration order; it fixes iteration order so
    reports and generated artifacts are deterministic.
    """

    vertices: tuple[str, ...]
    edges: frozenset[Edge]
    vertex_label: Mapping[str, str]
    edge_label: Mapping[Edge, int]
    root: str

    def __post_init__(self):
        vs = set(self.vertices)
        if not self.vertices:
            raise ValueError("graph needs at least one vertex")
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        if any(not v for v in self.vertices):
            raise ValueError("empty vertex id")
        if self.root not in vs:
            raise ValueError(f"root {self.root!r} not a vertex")
        for a, b in self.edges:
            if a not in vs or b not in vs:
                raise ValueError(f"edge ({a!r}, {b!r}) leaves the vertex set")
        for e in self.edge_label:
            if e not in self.edges:
                raise ValueError(f"label on non-edge {e!r}")
        for e, bit in self.edge_label.items():
            if bit not in (0, 1):
                raise ValueError(f"edge label must be 0 or 1, got {bit!r} on {e!r}")

    def has_vertex(self, v: str) -> bool:
        return v in set(self.vertices)

    def out_edges(self, v: str) -> list[Edge]:
        return sorted(e for e in self.edges if e[0] == v)

    def in_edges(self, v: str) -> list[Edge]:
        return sorted(e for e in self.edges if e[1] == v)

    def successors(self, v: str) -> list[str]:
        return [b for _, b in self.out_edges(v)]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


def make_digraph(
    vertices: Iterable[str],
    edges: Iterable[Edge],
    vertex_label: Mapping[str, str],
    edge_label: Mapping[Edge, int],
    root: str,
) -> RootedLabeledDigraph:
    return RootedLabeledDigraph(
        vertices=tuple(vertices),
        edges=frozenset(edges),
        vertex_label=dict(vertex_label),
        edge_label={tuple(e): b for e, b in edge_label.items()},
        root=root,
    )


def degrees(g: RootedLabeledDigraph, v: str) -> tuple[int, int]:
    """(indegree, outdegree) of v; raises InvalidVertex on unknown ids."""
    if v not in set(g.vertices):
        raise InvalidVertex(f"unknown vertex {v!r}")
    indeg = sum(1 for (_, b) in g.edges if b == v)
    outdeg = sum(1 for (a, _) in g.edges if a == v)
    return indeg, outdeg


def _predicate_subgraph(g: RootedLabeledDigraph, alphabet: Alphabet) -> dict[str, list[str]]:
    pred_vs = {v for v in g.vertices if alphabet.is_predicate(g.vertex_label.get(v, ""))}
    return {
        v: sorted(b for (a, b) in g.edges if a == v and b in pred_vs)
        for v in sorted(pred_vs)
    }


def _has_cycle(adj: Mapping[str, list[str]]) -> bool:
    seen: dict[str, int] = {}  # 1 = on stack, 2 = done

    def visit(v: str) -> bool:
        seen[v] = 1
        for w in adj[v]:
            s = seen.get(w)
            if s == 1 or (s is None and visit(w)):
                return True
        seen[v] = 2
        return False

    return any(seen.get(v) is None and visit(v) for v in adj)


def predicate_only_cycles(
    g: RootedLabeledDigraph, alphabet: Alphabet, cap: int = 16
) -> list[list[str]]:
    """Simple cycles whose vertices are all predicate-labeled.

    Enumerates within the subgraph induced by predicate vertices, at most
    `cap` cycles. Each cycle is returned closed (first vertex repeated).
    """
    adj = _predicate_subgraph(g, alphabet)
    cycles: list[list[str]] = []
    order = sorted(adj)
    for start in order:
        # Johnson-style restriction: only search cycles whose least vertex is `start`.
        path = [start]
        on_path = {start}

        def extend() -> bool:
            if len(cycles) >= cap:
                return True
            v = path[-1]
            for w in adj[v]:
                if w < start:
                    continue
                if w == start:
                    cycles.append(path + [start])
                    if len(cycles) >= cap:
                        return True
                elif w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    if extend():
                        return True
                    on_path.remove(path.pop())
            return False

        if extend():
            break
    return cycles


def validate_algorithm_graph(alphabet: Alphabet, g: RootedLabeledDigraph) -> ValidationReport:
    """Check every algorithm-graph clause; violations become report entries."""
    out: list[Violation] = []
    label = g.vertex_label

    for v in g.vertices:
        lv = label.get(v)
        if lv is None:
            out.append(Violation(CLAUSE_LABEL_TOTAL, v, "vertex has no label"))
            continue
        if lv not in alphabet.symbols:
            out.append(Violation(CLAUSE_LABEL_TOTAL, v, f"label {lv!r} not in the alphabet"))
            continue

        indeg, outdeg = degrees(g, v)
        is_root = v == g.root
        if (lv == INI) != is_root:
            which = "root is not labeled ini" if is_root else "ini label on a non-root vertex"
            out.append(Violation(CLAUSE_INI_ROOT, v, which))

        if lv == INI:
            if indeg != 0 or outdeg != 1:
                out.append(
                    Violation(CLAUSE_INI_DEGREE, v, f"ini vertex has degrees ({indeg},{outdeg}), need (0,1)")
                )
            elif g.out_edges(v)[0] in g.edge_label:
                out.append(Violation(CLAUSE_INI_DEGREE, v, "ini out-edge must be unlabeled"))
        elif lv == FIN:
            if indeg == 0 or outdeg != 0:
                out.append(
                    Violation(CLAUSE_FIN_DEGREE, v, f"fin vertex has degrees ({indeg},{outdeg}), need (>0,0)")
                )
        elif alphabet.is_function(lv):
            if indeg == 0 or outdeg != 1:
                out.append(
                    Violation(CLAUSE_FUN_DEGREE, v, f"function vertex has degrees ({indeg},{outdeg}), need (>0,1)")
                )
            elif g.out_edges(v)[0] in g.edge_label:
                out.append(Violation(CLAUSE_FUN_DEGREE, v, "function out-edge must be unlabeled"))
        else:  # predicate
            if indeg == 0 or outdeg != 2:
                out.append(
                    Violation(CLAUSE_PRED_DEGREE, v, f"predicate vertex has degrees ({indeg},{outdeg}), need (>0,2)")
                )
            else:
                bits = sorted(g.edge_label.get(e, -1) for e in g.out_edges(v))
                if bits != [0, 1]:
                    out.append(
                        Violation(CLAUSE_PRED_DEGREE, v, "predicate out-edges must carry distinct labels 0 and 1")
                    )

    # Cycle clause: a predicate-only cycle exists iff the predicate-induced
    # subgraph has any cycle; enumerate a few for the report.
    if _has_cycle(_predicate_subgraph(g, alphabet)):
        for cyc in predicate_only_cycles(g, alphabet, cap=4):
            out.append(
                Violation(CLAUSE_PRED_CYCLE, "->".join(cyc), "cycle without a function-labeled vertex")
            )
    return ValidationReport(tuple(out))


@dataclass(frozen=True)
class AlgorithmGraph:
    """A digraph paired with its alphabet; construct via `checked` to validate."""

    alphabet: Alphabet
    graph: RootedLabeledDigraph

    @staticmethod
    def checked(alphabet: Alphabet, graph: RootedLabeledDigraph) -> "AlgorithmGraph":
        from .errors import InvalidGraph

        report = validate_algorithm_graph(alphabet, graph)
        if not report.ok:
            raise InvalidGraph(str(report))
        return AlgorithmGraph(alphabet, graph)

    def label(self, v: str) -> str:
        return self.graph.vertex_label[v]

    def unique_successor(self, v: str) -> str:
        """Target of the single out-edge of an ini or function vertex."""
        return self.graph.out_edges(v)[0][1]

    def branch(self, v: str, bit: int) -> str:
        """Target of the bit-labeled out-edge of a predicate vertex."""
        for e in self.graph.out_edges(v):
            if self.graph.edge_label.get(e) == bit:
                return e[1]
        raise InvalidVertex(f"vertex {v!r} has no {bit}-labeled out-edge")


def to_dot(ag: AlgorithmGraph) -> str:
    """DOT rendering of an algorithm graph (plumbing for eyeballing only)."""
    g = ag.graph
    lines = ["digraph algorithm {", "  rankdir=TB;"]
    for v in g.vertices:
        shape = "diamond" if ag.alphabet.is_predicate(g.vertex_label.get(v, "")) else "box"
        lines.append(f'  "{v}" [label="{v}: {g.vertex_label.get(v, "?")}", shape={shape}];')
    for a, b in g.sorted_edges():
        bit = g.edge_label.get((a, b))
        attr = f' [label="{bit}"]' if bit is not None else ""
        lines.append(f'  "{a}" -> "{b}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"
