"""Serial composition, inversion and parallel composition."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .fst import AlphabetMismatch, Arc, Fst, trim_with_map
from .symbols import EPS, SymbolTable


@dataclass(frozen=True)
class CompositionTrace:
    """Maps each state of a composed machine to its (left, right) state pair."""
    state_pairs: dict

    def pair(self, q: int) -> tuple:
        return self.state_pairs[q]


def compose_traced(a: Fst, b: Fst, trim: bool = True) -> tuple[Fst, CompositionTrace]:
    """Product of a and b, where a's output feeds b's input.

    From a pair (p, q) the product has: matched moves on a shared symbol,
    a's moves with epsilon output while b waits, and b's moves with epsilon
    input while a waits. Only pairs reachable from the initial pair are built.
    """
    if a.osyms != b.isyms:
        raise AlphabetMismatch("compose: left output alphabet differs from right input alphabet")
    start = (a.initial, b.initial)
    index = {start: 0}
    pairs = [start]
    queue = deque([start])
    arcs = []
    a_out, b_in = a.out_arcs, b.by_ilabel

    def visit(pair):
        k = index.get(pair)
        if k is None:
            k = index[pair] = len(pairs)
            pairs.append(pair)
            queue.append(pair)
        return k

    while queue:
        pq = queue.popleft()
        src = index[pq]
        p, q = pq
        bq = b_in[q]
        for x in a_out[p]:
            if x.olabel == EPS:
                arcs.append(Arc(src, x.ilabel, EPS, visit((x.dst, q))))
            else:
                for y in bq.get(x.olabel, ()):
                    arcs.append(Arc(src, x.ilabel, y.olabel, visit((x.dst, y.dst))))
        for y in bq.get(EPS, ()):
            arcs.append(Arc(src, EPS, y.olabel, visit((p, y.dst))))
    finals = frozenset(k for k, (p, q) in enumerate(pairs) if p in a.finals and q in b.finals)
    out = Fst(len(pairs), 0, a.isyms, b.osyms, tuple(arcs), finals)
    mapping = dict(enumerate(pairs))
    if trim:
        out, remap = trim_with_map(out)
        mapping = {remap[k]: v for k, v in mapping.items() if k in remap}
    return out, CompositionTrace(mapping)


def compose(a: Fst, b: Fst, trim: bool = True) -> Fst:
    """Relation composition: (I, O) with some M such that (I, M) in a and (M, O) in b."""
    return compose_traced(a, b, trim)[0]


def compose_all(*machines: Fst) -> Fst:
    out = machines[0]
    for m in machines[1:]:
        out = compose(out, m)
    return out


def invert(a: Fst) -> Fst:
    """Swap input and output on every arc."""
    arcs = tuple(Arc(x.src, x.olabel, x.ilabel, x.dst) for x in a.arcs)
    return Fst(a.num_states, a.initial, a.osyms, a.isyms, arcs, a.finals)


def parallel(a: Fst, b: Fst) -> Fst:
    """Union of relations: disjoint copies behind a fresh initial state with eps|eps moves."""
    if a.isyms != b.isyms or a.osyms != b.osyms:
        raise AlphabetMismatch("parallel: alphabets differ")
    off_a, off_b = 1, 1 + a.num_states
    arcs = [Arc(0, EPS, EPS, a.initial + off_a), Arc(0, EPS, EPS, b.initial + off_b)]
    arcs += [Arc(x.src + off_a, x.ilabel, x.olabel, x.dst + off_a) for x in a.arcs]
    arcs += [Arc(x.src + off_b, x.ilabel, x.olabel, x.dst + off_b) for x in b.arcs]
    finals = {q + off_a for q in a.finals} | {q + off_b for q in b.finals}
    return Fst(1 + a.num_states + b.num_states, 0, a.isyms, a.osyms, tuple(arcs), frozenset(finals))


def parallel_all(machines) -> Fst:
    machines = list(machines)
    out = machines[0]
    for m in machines[1:]:
        out = parallel(out, m)
    return out


def identity(syms: SymbolTable) -> Fst:
    """x|x for every symbol, one final state."""
    return Fst(1, 0, syms, syms, tuple(Arc(0, x, x, 0) for x in syms.symbols), frozenset({0}))
