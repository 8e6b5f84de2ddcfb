"""Seeded random proto-algorithms plus variants with known relations.

Each family has a base instance and tagged variants: `iso` and
`iso-rename` are isomorphic by construction (renaming, optional edge-bit
flip with complemented predicates, optional value permutations); `split`
duplicates a function vertex with several predecessors (equivalent but
not isomorphic); `cycle-dup` prefixes a predicate loop with a copy
guarded by a weaker predicate (computationally but not algorithmically
equivalent); `op-swap` interchanges two consecutive commuting operations
(equivalent, but the translated process terms differ). Variants whose
semantic side conditions cannot be established for the sampled instance
are skipped rather than mis-tagged.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from ..execution import (
    InputState,
    InternalState,
    OutputState,
    ProtoAlgorithm,
    algorithmic_step,
    computational_step,
    run,
)
from ..graph import FIN, INI, AlgorithmGraph, Alphabet, make_digraph
from ..interp import (
    Arg,
    Bin,
    Boxed,
    DomainDecl,
    Expr,
    If,
    Interpretation,
    Lit,
    Proj,
    Value,
    apply_symbol,
    enumerate_domain,
)

TAG_ISO = "iso"
TAG_ISO_RENAME = "iso-rename"
TAG_SPLIT = "split"
TAG_CYCLE_DUP = "cycle-dup"
TAG_OP_SWAP = "op-swap"

_GATE_STEPS = 400


@dataclass(frozen=True)
class TaggedVariant:
    tag: str
    algorithm: ProtoAlgorithm
    same_signature: bool  # shares alphabet and interpretation with the base


@dataclass(frozen=True)
class GeneratedFamily:
    seed: int
    base: ProtoAlgorithm
    variants: tuple[TaggedVariant, ...]

    def variant(self, tag: str) -> TaggedVariant | None:
        for v in self.variants:
            if v.tag == tag:
                return v
        return None


def _table_expr(values: list[int]) -> Expr:
    """Point table over an arity-1 domain 0..m-1 as nested conditionals."""
    expr: Expr = Lit(values[-1])
    for i in range(len(values) - 2, -1, -1):
        expr = If(Bin("=", Proj(0), Lit(i)), Lit(values[i]), expr)
    return expr


def _additive_expr(shift: int, modulus: int) -> Expr:
    return Bin("mod", Bin("+", Proj(0), Lit(shift)), Lit(modulus))


def _fn_table(interp: Interpretation, symbol: str, m: int) -> list[int]:
    return [apply_symbol(interp, symbol, (d,))[0] for d in range(m)]


@dataclass
class _Draft:
    m: int
    additive: bool
    op_symbols: list[str]
    shifts: dict[str, int]
    pred_bits: dict[str, list[int]]
    fin_table: list[int] | None  # None = identity
    shape: str
    vertices: list[tuple[str, str]]  # (id, label)
    edges: list[tuple[str, str]]
    edge_labels: dict[tuple[str, str], int]
    tables: dict[str, list[int]] | None = None  # table family only
    loop_head: str | None = None
    loop_body: tuple[str, ...] = ()

    def alphabet(self) -> Alphabet:
        return Alphabet((INI, FIN, *self.op_symbols), ("p1", "p2"))

    def interpretation(self) -> Interpretation:
        m = self.m
        main = DomainDecl("main", 1, Boxed(((0, m - 1),)))
        inp = DomainDecl("input", 1, Boxed(((0, m - 1),)))
        out = DomainDecl("output", 1, Boxed(((0, m - 1),)))
        assignment: dict[str, Expr] = {INI: Arg()}
        assignment[FIN] = Arg() if self.fin_table is None else _table_expr(self.fin_table)
        for sym in self.op_symbols:
            if self.additive:
                assignment[sym] = _additive_expr(self.shifts[sym], m)
            else:
                assignment[sym] = _table_expr(self.tables[sym])
        for pred, bits in self.pred_bits.items():
            assignment[pred] = _table_expr(bits)
        return Interpretation(self.alphabet(), main, inp, out, assignment)

    def build(self) -> ProtoAlgorithm:
        alphabet = self.alphabet()
        digraph = make_digraph(
            [v for v, _ in self.vertices],
            self.edges,
            dict(self.vertices),
            self.edge_labels,
            self.vertices[0][0],
        )
        graph = AlgorithmGraph.checked(alphabet, digraph)
        return ProtoAlgorithm.checked(alphabet, graph, self.interpretation())


def _draw_base(rng: random.Random) -> _Draft:
    m = rng.randint(2, 4)
    n_ops = rng.randint(1, 3)
    op_symbols = [f"op{i + 1}" for i in range(n_ops)]
    additive = rng.random() < 0.6
    draft = _Draft(
        m=m,
        additive=additive,
        op_symbols=op_symbols,
        shifts={},
        pred_bits={},
        fin_table=None if rng.random() < 0.5 else [rng.randrange(m) for _ in range(m)],
        shape=rng.choices(["chain", "branch", "loop"], weights=[2, 3, 3])[0],
        vertices=[],
        edges=[],
        edge_labels={},
    )
    if additive:
        # distinct shifts keep distinct symbols semantically distinct
        pool = rng.sample(range(m), min(n_ops, m))
        for i, sym in enumerate(op_symbols):
            draft.shifts[sym] = pool[i % len(pool)]
    else:
        draft.tables = {sym: [rng.randrange(m) for _ in range(m)] for sym in op_symbols}
        draft.shifts = {sym: 0 for sym in op_symbols}
    bits1 = [rng.randint(0, 1) for _ in range(m)]
    if not any(bits1):
        bits1[rng.randrange(m)] = 1
    bits2 = [b | rng.randint(0, 1) for b in bits1]  # implied by bits1 pointwise
    draft.pred_bits = {"p1": bits1, "p2": bits2}

    def chain(prefix: str, count: int) -> list[str]:
        ids = [f"{prefix}{i + 1}" for i in range(count)]
        previous: str | None = None
        for vid in ids:
            choices = [s for s in op_symbols if s != previous] or op_symbols
            label = rng.choice(choices)
            draft.vertices.append((vid, label))
            previous = label
        return ids

    draft.vertices.append(("r", INI))
    if draft.shape == "chain":
        ids = chain("n", rng.randint(1, 3))
        draft.vertices.append(("f", FIN))
        path = ["r", *ids, "f"]
        draft.edges = list(zip(path, path[1:]))
    elif draft.shape == "branch":
        draft.vertices.append(("c", "p1"))
        shared = rng.random() < 0.8
        left_n = rng.randint(0, 2)
        right_n = rng.randint(0, 2)
        if shared and left_n == 0 and right_n == 0:
            left_n = 1
        left = chain("a", left_n)
        right = chain("b", right_n)
        draft.vertices.append(("f", FIN))
        if not shared:
            draft.vertices.append(("f2", FIN))
        left_end, right_end = "f", ("f" if shared else "f2")
        draft.edges.append(("r", "c"))
        lpath = ["c", *left, left_end]
        rpath = ["c", *right, right_end]
        draft.edges.extend(zip(lpath, lpath[1:]))
        draft.edges.extend(zip(rpath, rpath[1:]))
        draft.edge_labels[("c", lpath[1])] = 1
        draft.edge_labels[("c", rpath[1])] = 0
    else:  # loop
        draft.vertices.append(("c", "p1"))
        exit_ids = chain("e", rng.randint(0, 1))
        body_ids = chain("b", rng.randint(1, 2))
        draft.vertices.append(("f", FIN))
        draft.edges.append(("r", "c"))
        epath = ["c", *exit_ids, "f"]
        draft.edges.extend(zip(epath, epath[1:]))
        bpath = ["c", *body_ids, "c"]
        draft.edges.extend(zip(bpath, bpath[1:]))
        draft.edge_labels[("c", epath[1])] = 1
        draft.edge_labels[("c", bpath[1])] = 0
        draft.loop_head = "c"
        draft.loop_body = tuple(body_ids)
    return draft


# ---------------------------------------------------------------------------
# Variant constructions


def _rename_vertices(a: ProtoAlgorithm, rng: random.Random) -> ProtoAlgorithm:
    g = a.graph.graph
    order = list(range(len(g.vertices)))
    rng.shuffle(order)
    mapping = {v: f"u{order[i]}" for i, v in enumerate(g.vertices)}
    digraph = make_digraph(
        [mapping[v] for v in g.vertices],
        [(mapping[x], mapping[y]) for x, y in g.edges],
        {mapping[v]: lab for v, lab in g.vertex_label.items()},
        {(mapping[x], mapping[y]): b for (x, y), b in g.edge_label.items()},
        mapping[g.root],
    )
    graph = AlgorithmGraph.checked(a.alphabet, digraph)
    return ProtoAlgorithm.checked(a.alphabet, graph, a.interp)


def _iso_variant(a: ProtoAlgorithm, rng: random.Random, m: int) -> ProtoAlgorithm:
    flip = rng.random() < 0.5
    permute = rng.random() < 0.5

    renamed_funs = {INI: INI, FIN: FIN}
    renamed_funs.update({f: f"q{i + 1}" for i, f in enumerate(a.alphabet.proper_functions)})
    renamed_preds = {p: f"w{i + 1}" for i, p in enumerate(a.alphabet.predicate_symbols)}
    alphabet = Alphabet(
        tuple(renamed_funs[f] for f in a.alphabet.function_symbols),
        tuple(renamed_preds[p] for p in a.alphabet.predicate_symbols),
    )

    identity = list(range(m))
    pi = identity[:] if not permute else rng.sample(identity, m)
    pi_in = identity[:] if not permute else rng.sample(identity, m)
    pi_out = identity[:] if not permute else rng.sample(identity, m)
    inv_pi = [pi.index(i) for i in identity]
    inv_pi_in = [pi_in.index(i) for i in identity]

    def conj_main(table: list[int]) -> list[int]:
        return [pi[table[inv_pi[d]]] for d in range(m)]

    assignment: dict[str, Expr] = {}
    ini_table = [apply_symbol(a.interp, INI, (inv_pi_in[d],))[0] for d in range(m)]
    assignment[INI] = _table_expr([pi[v] for v in ini_table])
    fin_table = [apply_symbol(a.interp, FIN, (inv_pi[d],))[0] for d in range(m)]
    assignment[FIN] = _table_expr([pi_out[v] for v in fin_table])
    for f in a.alphabet.proper_functions:
        assignment[renamed_funs[f]] = _table_expr(conj_main(_fn_table(a.interp, f, m)))
    for p in a.alphabet.predicate_symbols:
        bits = [apply_symbol(a.interp, p, (inv_pi[d],))[0] for d in range(m)]
        if flip:
            bits = [1 - b for b in bits]
        assignment[renamed_preds[p]] = _table_expr(bits)

    interp = Interpretation(alphabet, a.interp.main, a.interp.input, a.interp.output, assignment)

    g = a.graph.graph
    mapping = {v: f"w{i}" for i, v in enumerate(g.vertices)}
    relabel = {**renamed_funs, **renamed_preds}
    digraph = make_digraph(
        [mapping[v] for v in g.vertices],
        [(mapping[x], mapping[y]) for x, y in g.edges],
        {mapping[v]: relabel[lab] for v, lab in g.vertex_label.items()},
        {(mapping[x], mapping[y]): (1 - b if flip else b) for (x, y), b in g.edge_label.items()},
        mapping[g.root],
    )
    graph = AlgorithmGraph.checked(alphabet, digraph)
    return ProtoAlgorithm.checked(alphabet, graph, interp)


def _split_variant(a: ProtoAlgorithm, rng: random.Random) -> ProtoAlgorithm | None:
    g = a.graph.graph
    candidates = sorted(
        v
        for v in g.vertices
        if a.graph.label(v) != INI
        and not a.alphabet.is_predicate(a.graph.label(v))
        and len(g.in_edges(v)) >= 2
    )
    if not candidates:
        return None
    target = rng.choice(candidates)
    incoming = g.in_edges(target)
    cut = rng.randint(1, len(incoming) - 1)
    moved = set(incoming[:cut])

    twin = "wsplit"
    vertices = list(g.vertices) + [twin]
    edges = set(g.edges)
    labels = dict(g.vertex_label)
    labels[twin] = a.graph.label(target)
    edge_labels = dict(g.edge_label)
    for (u, _) in moved:
        edges.discard((u, target))
        edges.add((u, twin))
        if (u, target) in edge_labels:
            edge_labels[(u, twin)] = edge_labels.pop((u, target))
    for (_, succ) in g.out_edges(target):
        edges.add((twin, succ))
    digraph = make_digraph(vertices, edges, labels, edge_labels, g.root)
    graph = AlgorithmGraph.checked(a.alphabet, digraph)
    return ProtoAlgorithm.checked(a.alphabet, graph, a.interp)


def _cycle_dup_variant(a: ProtoAlgorithm, draft: _Draft) -> ProtoAlgorithm | None:
    if draft.loop_head is None:
        return None
    g = a.graph.graph
    head, body = draft.loop_head, list(draft.loop_body)
    cycle = {head, *body}

    copies = {head: "cdup", **{b: f"{b}dup" for b in body}}
    vertices = list(g.vertices) + [copies[head]] + [copies[b] for b in body]
    labels = dict(g.vertex_label)
    labels[copies[head]] = "p2"
    for b in body:
        labels[copies[b]] = g.vertex_label[b]
    edges = set(g.edges)
    edge_labels = dict(g.edge_label)
    # entries into the loop go to the copy instead
    for (u, v) in list(edges):
        if v == head and u not in cycle:
            edges.discard((u, v))
            edges.add((u, copies[head]))
            if (u, v) in edge_labels:
                edge_labels[(u, copies[head])] = edge_labels.pop((u, v))
    # the copy exits into the original loop head
    edges.add((copies[head], head))
    edge_labels[(copies[head], head)] = 1
    cpath = [copies[head], *[copies[b] for b in body], copies[head]]
    edges.update(zip(cpath, cpath[1:]))
    edge_labels[(copies[head], cpath[1])] = 0
    digraph = make_digraph(vertices, edges, labels, edge_labels, g.root)
    graph = AlgorithmGraph.checked(a.alphabet, digraph)
    variant = ProtoAlgorithm.checked(a.alphabet, graph, a.interp)

    if not _cycle_dup_gates(a, variant, head):
        return None
    return variant


def _cycle_dup_gates(a: ProtoAlgorithm, b: ProtoAlgorithm, head: str) -> bool:
    """Execution-level facts that pin the tag's expected verdicts.

    The weaker-predicate side condition is checked exhaustively; the
    step-count sets must make an algorithmic simulation impossible in at
    least one direction, while concealed runs must agree pointwise.
    """
    for d in enumerate_domain(a.interp.main):
        if apply_symbol(a.interp, "p1", d)[0] == 1 and apply_symbol(a.interp, "p2", d)[0] != 1:
            return False

    nas_a: dict[Value, int] = {}
    nas_b: dict[Value, int] = {}
    visits_head = False
    for d in a.input_values():
        ra = run(a, d, _GATE_STEPS, record_algorithmic=True)
        rb = run(b, d, _GATE_STEPS)
        if ra.converged:
            nas_a[d] = ra.outcome.step_count
            if any(isinstance(s, InternalState) and s.vertex == head for s in ra.algorithmic_trace):
                visits_head = True
        if rb.converged:
            nas_b[d] = rb.outcome.step_count
    if not visits_head or not nas_a:
        return False
    if not any(n not in set(nas_b.values()) for n in nas_a.values()):
        return False

    # concealed runs agree pointwise (same length, same output)
    for d in a.input_values():
        la, oa = _concealed_run(a, d)
        lb, ob = _concealed_run(b, d)
        if (la, oa) != (lb, ob):
            return False
    return True


def _concealed_run(a: ProtoAlgorithm, d: Value, bound: int = _GATE_STEPS):
    state = InputState(d)
    for n in range(1, bound + 1):
        state = computational_step(a, state)
        if isinstance(state, OutputState):
            return n, state.value
    return None, None


def _op_swap_variant(a: ProtoAlgorithm, draft: _Draft, rng: random.Random) -> ProtoAlgorithm | None:
    if not draft.additive:
        return None
    g = a.graph.graph
    labels = g.vertex_label
    candidates = []
    for (u, v) in sorted(g.edges):
        lu, lv = labels[u], labels[v]
        if lu in draft.op_symbols and lv in draft.op_symbols and lu != lv:
            if draft.shifts[lu] % draft.m != draft.shifts[lv] % draft.m and len(g.in_edges(v)) == 1:
                candidates.append((u, v))
    rng.shuffle(candidates)
    for (u, v) in candidates:
        if not _some_run_visits(a, u):
            continue
        new_labels = dict(labels)
        new_labels[u], new_labels[v] = labels[v], labels[u]
        digraph = make_digraph(g.vertices, g.edges, new_labels, g.edge_label, g.root)
        graph = AlgorithmGraph.checked(a.alphabet, digraph)
        return ProtoAlgorithm.checked(a.alphabet, graph, a.interp)
    return None


def _some_run_visits(a: ProtoAlgorithm, vertex: str, bound: int = _GATE_STEPS) -> bool:
    for d in a.input_values():
        state = InputState(d)
        seen = set()
        for _ in range(bound):
            state = algorithmic_step(a, state)
            if isinstance(state, InternalState):
                if state.vertex == vertex:
                    return True
                if state in seen:
                    break
                seen.add(state)
            else:
                break
    return False


def generate_random(seed: int) -> GeneratedFamily:
    """One seeded family: a valid base plus every variant whose gates hold."""
    rng = random.Random(seed)
    draft = _draw_base(rng)
    base = draft.build()

    variants: list[TaggedVariant] = [
        TaggedVariant(TAG_ISO_RENAME, _rename_vertices(base, rng), True),
        TaggedVariant(TAG_ISO, _iso_variant(base, rng, draft.m), False),
    ]
    split = _split_variant(base, rng)
    if split is not None:
        variants.append(TaggedVariant(TAG_SPLIT, split, True))
    dup = _cycle_dup_variant(base, draft)
    if dup is not None:
        variants.append(TaggedVariant(TAG_CYCLE_DUP, dup, True))
    swap = _op_swap_variant(base, draft, rng)
    if swap is not None:
        variants.append(TaggedVariant(TAG_OP_SWAP, swap, True))
    return GeneratedFamily(seed, base, tuple(variants))


# ---------------------------------------------------------------------------
# Self-check harness shared by the CLI and the test suite

EXPECTED = {
    TAG_ISO: {"iso": "proven", "aeqv": "proven", "ceqv": "proven"},
    TAG_ISO_RENAME: {"iso": "proven", "aeqv": "proven", "ceqv": "proven", "prove": "proven"},
    TAG_SPLIT: {"iso": "refuted", "aeqv": "proven", "ceqv": "proven"},
    TAG_CYCLE_DUP: {"aeqv": "refuted", "ceqv": "proven"},
    TAG_OP_SWAP: {"aeqv": "proven", "ceqv": "proven", "prove": "method_inconclusive"},
}


def verify_family(family: GeneratedFamily, checks: tuple[str, ...] | None = None) -> list[str]:
    """Run the checkers against each variant's expected verdicts.

    The certify-method check on renamed twins only applies when the base
    converges everywhere: co-unfolding two diverging equal-trace terms
    is UnknownAtBound by design, not a certification.
    """
    from ..equiv import check_aeqv, check_ceqv, check_isomorphism
    from ..prove import prove_aeqv
    from ..graph import validate_algorithm_graph
    from ..interp import check_interpretation

    failures: list[str] = []
    instances = [("base", family.base)] + [(v.tag, v.algorithm) for v in family.variants]
    for name, alg in instances:
        if not validate_algorithm_graph(alg.alphabet, alg.graph.graph).ok:
            failures.append(f"seed {family.seed}: {name} graph invalid")
        if not check_interpretation(alg.alphabet, alg.interp).ok:
            failures.append(f"seed {family.seed}: {name} interpretation invalid")

    all_converge = all(run(family.base, d, _GATE_STEPS).converged for d in family.base.input_values())
    for variant in family.variants:
        expected = EXPECTED[variant.tag]
        for check, want in expected.items():
            if checks is not None and check not in checks:
                continue
            if check == "iso":
                got = check_isomorphism(family.base, variant.algorithm).status
            elif check == "aeqv":
                got = check_aeqv(family.base, variant.algorithm).status
            elif check == "ceqv":
                got = check_ceqv(family.base, variant.algorithm).status
            else:
                if want == "proven" and not all_converge:
                    continue
                got = prove_aeqv(family.base, variant.algorithm, bound=2 * _GATE_STEPS).overall
            if got != want:
                failures.append(
                    f"seed {family.seed}: {variant.tag} expected {check}={want}, got {got}"
                )
    return failures


def run_selftest(
    seed: int, count: int, checks: tuple[str, ...] | None = None
) -> dict:
    failures: list[str] = []
    tags: dict[str, int] = {}
    for i in range(count):
        family = generate_random(seed + i)
        for v in family.variants:
            tags[v.tag] = tags.get(v.tag, 0) + 1
        failures.extend(verify_family(family, checks))
    return {
        "seed": seed,
        "families": count,
        "variants": {k: tags[k] for k in sorted(tags)},
        "failures": failures,
        "ok": not failures,
    }
