"""Automata as identity-labelled transducers: projections, subset construction,
language inclusion and bounded enumeration."""
from __future__ import annotations

from collections import deque
from typing import Iterable, Optional, Sequence

from .fst import AlphabetMismatch, Arc, Fst, Verdict, eps_closure, rm_epsilon, trim
from .symbols import EPS, SymbolTable, Word


def _as_acceptor(fst: Fst, side: str) -> Fst:
    syms = fst.isyms if side == "in" else fst.osyms
    arcs = []
    for a in fst.arcs:
        x = a.ilabel if side == "in" else a.olabel
        arcs.append(Arc(a.src, x, x, a.dst))
    return Fst(fst.num_states, fst.initial, syms, syms, tuple(arcs), fst.finals)


def project_input(fst: Fst) -> Fst:
    """Automaton for the input language; epsilon moves removed."""
    return rm_epsilon(trim(_as_acceptor(fst, "in")))


def project_output(fst: Fst) -> Fst:
    return rm_epsilon(trim(_as_acceptor(fst, "out")))


def _require_acceptor(fst: Fst, what: str) -> None:
    if not fst.is_acceptor:
        raise ValueError(f"{what} must be identity-labelled")


def subset_construction(aut: Fst) -> tuple[Fst, list]:
    """Determinize; also return the epsilon-closed state subset behind each DFA state."""
    _require_acceptor(aut, "determinize input")
    start = eps_closure(aut, [aut.initial])
    index = {start: 0}
    subsets = [start]
    arcs = []
    queue = deque([start])
    by_i = aut.by_ilabel
    while queue:
        s = queue.popleft()
        src = index[s]
        moves: dict = {}
        for q in s:
            for x, lst in by_i[q].items():
                if x == EPS:
                    continue
                moves.setdefault(x, set()).update(a.dst for a in lst)
        for x in sorted(moves):
            t = eps_closure(aut, moves[x])
            if t not in index:
                index[t] = len(subsets)
                subsets.append(t)
                queue.append(t)
            arcs.append(Arc(src, x, x, index[t]))
    finals = frozenset(k for k, s in enumerate(subsets) if s & aut.finals)
    dfa = Fst(len(subsets), 0, aut.isyms, aut.osyms, tuple(arcs), finals)
    return dfa, subsets


def determinize(aut: Fst) -> Fst:
    """Equivalent deterministic, epsilon-free automaton (powerset construction)."""
    return subset_construction(aut)[0]


def is_deterministic(aut: Fst) -> bool:
    for arcs in aut.out_arcs:
        labels = [a.ilabel for a in arcs]
        if EPS in labels or len(labels) != len(set(labels)):
            return False
    return True


def complete(dfa: Fst, symbols: Optional[Iterable[int]] = None) -> Fst:
    """Add a dead state so every state has an arc on every symbol."""
    symbols = list(dfa.isyms.symbols if symbols is None else symbols)
    sink = dfa.num_states
    arcs = list(dfa.arcs)
    need_sink = False
    for q in range(dfa.num_states):
        have = {a.ilabel for a in dfa.out_arcs[q]}
        for x in symbols:
            if x not in have:
                arcs.append(Arc(q, x, x, sink))
                need_sink = True
    if not need_sink:
        return dfa
    arcs += [Arc(sink, x, x, sink) for x in symbols]
    return Fst(sink + 1, dfa.initial, dfa.isyms, dfa.osyms, tuple(arcs), dfa.finals)


def complement(aut: Fst) -> Fst:
    dfa = complete(determinize(aut))
    return dfa.replace(finals=frozenset(range(dfa.num_states)) - dfa.finals)


def language_included(a: Fst, b: Fst) -> Verdict:
    """Decide L(a) <= L(b); on failure the witness is the shortlex-least word of L(a) - L(b)."""
    _require_acceptor(a, "left operand")
    _require_acceptor(b, "right operand")
    if a.isyms != b.isyms:
        raise AlphabetMismatch("language_included: alphabets differ")
    na = rm_epsilon(trim(a))
    if not na.finals:
        return Verdict(True)
    db = complete(determinize(b))
    db_next = [{x.ilabel: x.dst for x in arcs} for arcs in db.out_arcs]
    start = (na.initial, db.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        p, q = node
        if p in na.finals and q not in db.finals:
            word = []
            while parent[node] is not None:
                node, x = parent[node]
                word.append(x)
            return Verdict(False, tuple(reversed(word)))
        for arc in sorted(na.out_arcs[p], key=lambda a: (a.ilabel, a.dst)):
            nxt = (arc.dst, db_next[q][arc.ilabel])
            if nxt not in parent:
                parent[nxt] = (node, arc.ilabel)
                queue.append(nxt)
    return Verdict(True)


def language_equal(a: Fst, b: Fst) -> Verdict:
    """Exact language equality; the witness is (word, side-that-has-it)."""
    v = language_included(a, b)
    if not v:
        return Verdict(False, v.witness)
    v = language_included(b, a)
    if not v:
        return Verdict(False, v.witness)
    return Verdict(True)


def words_upto(aut: Fst, max_len: int) -> frozenset:
    """All accepted words of length <= max_len."""
    dfa = trim(determinize(aut))
    if not dfa.finals:
        return frozenset()
    found = set()
    frontier = [(dfa.initial, ())]
    for depth in range(max_len + 1):
        nxt = []
        for q, w in frontier:
            if q in dfa.finals:
                found.add(w)
            if depth < max_len:
                nxt.extend((a.dst, w + (a.ilabel,)) for a in dfa.out_arcs[q])
        frontier = nxt
    return frozenset(found)


def all_words_upto(symbols: Sequence[int], max_len: int):
    """Every word over ``symbols`` of length <= max_len, shortest first."""
    layer = [()]
    for _ in range(max_len + 1):
        yield from layer
        layer = [w + (x,) for w in layer for x in symbols]


def intersect(a: Fst, b: Fst) -> Fst:
    """Product automaton for L(a) & L(b)."""
    _require_acceptor(a, "left operand")
    _require_acceptor(b, "right operand")
    if a.isyms != b.isyms:
        raise AlphabetMismatch("intersect: alphabets differ")
    a, b = rm_epsilon(a), rm_epsilon(b)
    start = (a.initial, b.initial)
    index = {start: 0}
    queue = deque([start])
    arcs = []
    while queue:
        p, q = node = queue.popleft()
        for x, la in a.by_ilabel[p].items():
            for arc_a in la:
                for arc_b in b.by_ilabel[q].get(x, ()):
                    nxt = (arc_a.dst, arc_b.dst)
                    if nxt not in index:
                        index[nxt] = len(index)
                        queue.append(nxt)
                    arcs.append(Arc(index[node], x, x, index[nxt]))
    finals = frozenset(k for (p, q), k in index.items() if p in a.finals and q in b.finals)
    return trim(Fst(len(index), 0, a.isyms, a.osyms, tuple(arcs), finals))


def union(a: Fst, b: Fst) -> Fst:
    from .algebra import parallel
    return rm_epsilon(parallel(a, b))


def is_prefix_closed(aut: Fst) -> bool:
    """In a trimmed DFA a prefix-closed language makes every state final."""
    dfa = trim(determinize(aut))
    return dfa.num_states == len(dfa.finals) or not dfa.finals


def prefix_closure(aut: Fst) -> Fst:
    t = trim(aut)
    if not t.finals:
        return t
    return t.replace(finals=frozenset(range(t.num_states)))


def from_words(syms: SymbolTable, words: Iterable[Sequence[int]]) -> Fst:
    """Trie automaton accepting exactly the given words."""
    children: list = [{}]
    finals = set()
    arcs = []
    for w in words:
        q = 0
        for x in w:
            if x == EPS:
                continue
            nxt = children[q].get(x)
            if nxt is None:
                nxt = len(children)
                children.append({})
                children[q][x] = nxt
                arcs.append(Arc(q, x, x, nxt))
            q = nxt
        finals.add(q)
    return Fst(len(children), 0, syms, syms, tuple(arcs), frozenset(finals))


def minimize(aut: Fst) -> Fst:
    """Minimal DFA by partition refinement (Moore)."""
    dfa = trim(determinize(aut))
    if not dfa.finals:
        return dfa
    symbols = sorted({a.ilabel for a in dfa.arcs})
    nxt = [{a.ilabel: a.dst for a in arcs} for arcs in dfa.out_arcs]
    block = [1 if q in dfa.finals else 0 for q in range(dfa.num_states)]
    while True:
        sig = [(block[q],) + tuple(block[nxt[q][x]] if x in nxt[q] else -1 for x in symbols)
               for q in range(dfa.num_states)]
        ids: dict = {}
        new = [ids.setdefault(s, len(ids)) for s in sig]
        if len(ids) == len(set(block)):
            block = new
            break
        block = new
    arcs = {Arc(block[a.src], a.ilabel, a.olabel, block[a.dst]) for a in dfa.arcs}
    finals = frozenset(block[q] for q in dfa.finals)
    return Fst(len(set(block)), block[dfa.initial], dfa.isyms, dfa.osyms, tuple(arcs), finals)


__all__ = [
    "project_input", "project_output", "subset_construction", "determinize", "is_deterministic",
    "complete", "complement", "language_included", "language_equal", "words_upto",
    "all_words_upto", "intersect", "union", "is_prefix_closed", "prefix_closure", "from_words",
    "minimize", "Word",
]
