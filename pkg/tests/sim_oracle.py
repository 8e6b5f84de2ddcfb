"""Brute-force simulation oracle: enumerate candidate relations outright.

For a fixed input map, a candidate relation is the set of input pairs
given by the map plus any subset of (reachable internal x reachable
internal) and (output x output) pairs. Each candidate is checked against
the three defining clauses directly. This is exponential and only usable
on miniature instances; it shares no logic with the closure-based
checker it validates.
"""
from __future__ import annotations

from protoalg.equiv import ALGORITHMIC, _step_for
from protoalg.execution import (
    InputState,
    InternalState,
    OutputState,
    ProtoAlgorithm,
    State,
    algorithmic_step,
)


def reachable_internals(a: ProtoAlgorithm, bound: int = 200) -> list[InternalState]:
    seen: set[State] = set()
    for d in a.input_values():
        s: State = InputState(d)
        for _ in range(bound):
            s = algorithmic_step(a, s)
            if isinstance(s, OutputState) or s in seen:
                break
            seen.add(s)
    return sorted(seen, key=lambda s: (s.vertex, s.value))


def brute_force_simulation_exists(
    a: ProtoAlgorithm,
    b: ProtoAlgorithm,
    input_map: dict,
    kind: str = ALGORITHMIC,
    max_free_pairs: int = 16,
) -> bool:
    step = _step_for(kind)
    base = [(InputState(d), InputState(input_map[d])) for d in sorted(input_map)]
    free: list[tuple[State, State]] = [
        (s, t) for s in reachable_internals(a) for t in reachable_internals(b)
    ] + [
        (OutputState(u), OutputState(v))
        for u in a.output_values()
        for v in b.output_values()
    ]
    n = len(free)
    if n > max_free_pairs:
        raise ValueError(f"instance too large for the brute force ({n} free pairs)")
    index = {pair: i for i, pair in enumerate(free)}

    # successor of each candidate pair, as an index into free (or a base pair)
    def successor_bit(pair) -> int | None:
        """Index the pair's successor must occupy, or None if it can never be in a relation."""
        left, right = step(a, pair[0]), step(b, pair[1])
        return index.get((left, right))

    base_succ = [successor_bit(p) for p in base]
    if any(s is None for s in base_succ):
        # even the forced pairs step outside every candidate relation
        return False
    free_succ = [successor_bit(p) for p in free]

    outputs_b = b.output_values()
    partner_masks = {
        v: sum(1 << i for i, (l, r) in enumerate(free) if isinstance(r, OutputState) and r.value == v)
        for v in outputs_b
    }

    base_mask = 0
    for s in base_succ:
        base_mask |= 1 << s

    for mask in range(1 << n):
        if base_mask & ~mask:
            continue  # a forced successor is missing
        ok = True
        rest = mask
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            rest ^= low
            s = free_succ[i]
            if s is None or not (mask >> s) & 1:
                ok = False
                break
        if not ok:
            continue
        if all(bin(mask & pm).count("1") == 1 for pm in partner_masks.values()):
            return True
    return False
