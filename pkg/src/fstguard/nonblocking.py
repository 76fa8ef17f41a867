"""Subset construction over input/output pairs and the nonblocking check.

A transducer is read as an automaton over the pair alphabet
(I + eps) x (O + eps) minus (eps, eps); eps|eps arcs are silent moves.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import compose
from .automata import project_output
from .fst import AlphabetMismatch, Fst, Verdict, eps_closure, rm_epsilon, trim
from .symbols import EPS

Pair = tuple  # (ilabel, olabel)


@dataclass(frozen=True)
class DeterminizedMachine:
    source: Fst
    subsets: tuple          # state id -> frozenset of source states
    transitions: dict       # (state id, pair) -> state id
    finals: frozenset
    initial: int = 0

    @property
    def pair_alphabet(self) -> frozenset:
        return frozenset(p for _, p in self.transitions)

    def run(self, pairs: Sequence[Pair]) -> Optional[int]:
        q = self.initial
        for p in pairs:
            q = self.transitions.get((q, tuple(p)))
            if q is None:
                return None
        return q

    def accepts(self, pairs: Sequence[Pair]) -> bool:
        q = self.run(pairs)
        return q is not None and q in self.finals


def _pair_moves(fst: Fst, states) -> dict:
    moves: dict = {}
    for s in states:
        for a in fst.out_arcs[s]:
            if a.ilabel == EPS and a.olabel == EPS:
                continue
            moves.setdefault((a.ilabel, a.olabel), set()).add(a.dst)
    return moves


def determinize_pairs(fst: Fst) -> DeterminizedMachine:
    start = eps_closure(fst, [fst.initial])
    index = {start: 0}
    subsets = [start]
    trans = {}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        moves = _pair_moves(fst, s)
        for pair in sorted(moves):
            t = eps_closure(fst, moves[pair])
            if t not in index:
                index[t] = len(subsets)
                subsets.append(t)
                queue.append(t)
            trans[(index[s], pair)] = index[t]
    finals = frozenset(k for k, s in enumerate(subsets) if s & fst.finals)
    return DeterminizedMachine(fst, tuple(subsets), trans, finals)


def _pair_nfa(fst: Fst) -> Fst:
    return rm_epsilon(trim(fst))


def pair_language_included(a: Fst, b: Fst) -> Verdict:
    """Pair-language inclusion; the witness is the shortest pair sequence in a but not b."""
    if a.isyms != b.isyms or a.osyms != b.osyms:
        raise AlphabetMismatch("pair_language_included: alphabets differ")
    na = _pair_nfa(a)
    if not na.finals:
        return Verdict(True)
    db = determinize_pairs(b)
    dead = -1
    start = (na.initial, db.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        p, q = node
        if p in na.finals and (q == dead or q not in db.finals):
            seq = []
            while parent[node] is not None:
                node, pair = parent[node]
                seq.append(pair)
            return Verdict(False, tuple(reversed(seq)))
        for arc in sorted(na.out_arcs[p], key=lambda a: (a.ilabel, a.olabel, a.dst)):
            pair = (arc.ilabel, arc.olabel)
            q2 = dead if q == dead else db.transitions.get((q, pair), dead)
            nxt = (arc.dst, q2)
            if nxt not in parent:
                parent[nxt] = (node, pair)
                queue.append(nxt)
    return Verdict(True)


@dataclass(frozen=True)
class Violation:
    subset: frozenset
    pair: Pair
    union_successor: frozenset
    common_successor: frozenset


@dataclass(frozen=True)
class NonblockingReport:
    nonblocking: bool
    violation: Optional[Violation] = None
    witness: Optional[tuple] = None   # (input word, output word) reaching violation.subset
    witness_pairs: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.nonblocking


def _split(pairs) -> tuple:
    i = tuple(p[0] for p in pairs if p[0] != EPS)
    o = tuple(p[1] for p in pairs if p[1] != EPS)
    return i, o


def check_nonblocking(fst: Fst, relation: Fst, check_containment: bool = True) -> NonblockingReport:
    """Check that along every run of ``relation`` each reachable subset moves as one.

    For every subset S reached while reading a prefix of the relation and
    every pair the relation can read next, the successor computed from the
    whole subset must equal what every single state of S reaches on its own.
    Both sides are closed under silent moves.
    """
    if check_containment:
        v = pair_language_included(relation, fst)
        if not v:
            raise ValueError(f"relation is not contained in the transducer; witness pairs {v.witness}")
    det = determinize_pairs(fst)
    rel = _pair_nfa(relation)
    if not rel.finals:
        return NonblockingReport(True)
    per_state: dict = {}

    def own(s, pair):
        key = (s, pair)
        if key not in per_state:
            clo = eps_closure(fst, [s])
            dst = set()
            for t in clo:
                dst |= {a.dst for a in fst.out_arcs[t] if (a.ilabel, a.olabel) == pair}
            per_state[key] = eps_closure(fst, dst)
        return per_state[key]

    start = (rel.initial, det.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        r, k = node
        for arc in sorted(rel.out_arcs[r], key=lambda a: (a.ilabel, a.olabel, a.dst)):
            pair = (arc.ilabel, arc.olabel)
            k2 = det.transitions.get((k, pair))
            if k2 is None:
                continue
            subset = det.subsets[k]
            union = det.subsets[k2]
            common = None
            for s in subset:
                common = own(s, pair) if common is None else common & own(s, pair)
            if common != union:
                seq = []
                cur = node
                while parent[cur] is not None:
                    cur, p = parent[cur]
                    seq.append(p)
                seq = tuple(reversed(seq))
                return NonblockingReport(False, Violation(subset, pair, union, frozenset(common)),
                                         _split(seq), seq)
            nxt = (arc.dst, k2)
            if nxt not in parent:
                parent[nxt] = (node, pair)
                queue.append(nxt)
    return NonblockingReport(True)


def induced_relation(supervisor: Fst, loop: Fst) -> Fst:
    """The part of ``loop`` driven by words the supervisor can emit."""
    words = project_output(supervisor)
    return compose(words, loop)


def loop_machine(plant: Fst, sensor_attack: Optional[Fst], actuator_attack: Optional[Fst],
                 mode: str) -> Fst:
    if mode == "sensor":
        return compose(plant, sensor_attack)
    if mode == "actuator":
        return compose(actuator_attack, plant)
    if mode == "both":
        return compose(compose(actuator_attack, plant), sensor_attack)
    raise ValueError(f"unknown mode {mode!r}")


def check_closed_loop_nonblocking(plant: Fst, sensor_attack: Optional[Fst],
                                  actuator_attack: Optional[Fst], supervisor: Fst, mode: str,
                                  relation: Optional[Fst] = None) -> NonblockingReport:
    """Nonblocking check of the attacked plant for the relation the supervisor induces.

    ``relation`` overrides the induced relation when given.
    """
    loop = loop_machine(plant, sensor_attack, actuator_attack, mode)
    rel = relation if relation is not None else induced_relation(supervisor, loop)
    return check_nonblocking(loop, rel)
