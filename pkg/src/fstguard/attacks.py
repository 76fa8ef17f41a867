"""Builders for attack transducers.

Symbol sets may be given as names or ids. Every builder works over the full
symbol table it is handed; the attack maps words over that table to words over
the same table.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping

from .algebra import parallel_all
from .fst import Arc, Fst, trim
from .symbols import EPS, SymbolTable


def _one_state(syms: SymbolTable, arcs) -> Fst:
    return Fst(1, 0, syms, syms, tuple(Arc(0, i, o, 0) for i, o in arcs), frozenset({0}))


def identity_attack(syms: SymbolTable) -> Fst:
    return _one_state(syms, [(x, x) for x in syms.symbols])


def projection_attack(syms: SymbolTable, keep: Iterable) -> Fst:
    """Erase every symbol outside ``keep``."""
    keep = syms.ids(keep)
    return _one_state(syms, [(x, x if x in keep else EPS) for x in syms.symbols])


def deletion_attack(syms: SymbolTable, protected: Iterable = ()) -> Fst:
    """Each unprotected symbol may or may not be erased."""
    protected = syms.ids(protected)
    arcs = [(x, x) for x in syms.symbols]
    arcs += [(x, EPS) for x in syms.symbols if x not in protected]
    return _one_state(syms, arcs)


def injection_attack(syms: SymbolTable, injectable: Iterable) -> Fst:
    """Symbols from ``injectable`` may be inserted anywhere, any number of times."""
    injectable = syms.ids(injectable)
    arcs = [(x, x) for x in syms.symbols] + [(EPS, y) for y in sorted(injectable)]
    return _one_state(syms, arcs)


@dataclass(frozen=True)
class ReplacementRule:
    """Each symbol id maps to the set of its possible images; 0 stands for erasure."""
    syms: SymbolTable
    mapping: Mapping

    def __post_init__(self):
        norm = {}
        for k, images in self.mapping.items():
            key = self.syms.id(k)
            if key == EPS:
                raise ValueError("a replacement rule cannot rewrite epsilon")
            imgs = frozenset(self.syms.id(v) for v in images)
            if not imgs:
                raise ValueError(f"empty image for {self.syms.name(key)}")
            norm[key] = imgs
        missing = [self.syms.name(x) for x in self.syms.symbols if x not in norm]
        if missing:
            raise ValueError(f"rule does not cover: {', '.join(missing)}")
        object.__setattr__(self, "mapping", norm)

    @classmethod
    def with_defaults(cls, syms: SymbolTable, overrides: Mapping) -> "ReplacementRule":
        """Identity everywhere except the given symbols."""
        full = {x: {x} for x in syms.symbols}
        for k, v in overrides.items():
            full[syms.id(k)] = set(v)
        return cls(syms, full)


def replacement_removal_attack(rule: ReplacementRule) -> Fst:
    arcs = [(x, y) for x in sorted(rule.mapping) for y in sorted(rule.mapping[x])]
    return _one_state(rule.syms, arcs)


def injection_removal_attack(syms: SymbolTable, vulnerable: Iterable) -> Fst:
    """Vulnerable symbols may be inserted or erased freely; others pass through."""
    vulnerable = syms.ids(vulnerable)
    arcs = []
    for x in syms.symbols:
        if x in vulnerable:
            arcs += [(x, EPS), (EPS, x)]
        else:
            arcs.append((x, x))
    return _one_state(syms, arcs)


def _replay_branch(syms: SymbolTable, k: int) -> Fst:
    """Copy the first k symbols, then replay them cyclically on every further input."""
    symbols = list(syms.symbols)
    ids: dict = {}

    def sid(key):
        return ids.setdefault(key, len(ids))

    arcs = []
    # recording states are prefixes shorter than k
    layer = [()]
    sid(())
    for depth in range(k):
        nxt = []
        for p in layer:
            for x in symbols:
                q = p + (x,)
                # a complete record starts replay at its first symbol
                dst = sid(q) if depth + 1 < k else sid((q, 0))
                arcs.append(Arc(ids[p], x, x, dst))
                nxt.append(q)
        layer = nxt
    for rec in product(symbols, repeat=k):
        for j in range(k):
            src, dst = sid((rec, j)), sid((rec, (j + 1) % k))
            arcs += [Arc(src, x, rec[j], dst) for x in symbols]
    n = len(ids)
    return Fst(n, 0, syms, syms, tuple(arcs), frozenset(range(n)))


def replay_attack(syms: SymbolTable, memory: int) -> Fst:
    """Union over k = 1..memory of the record-k-then-replay branch."""
    if memory < 1:
        raise ValueError("replay memory must be at least 1")
    return parallel_all(_replay_branch(syms, k) for k in range(1, memory + 1))


COUNTER_SYMBOLS = SymbolTable.from_names(["D", "E"])


@dataclass(frozen=True)
class FrequencyCounter:
    """Automaton over {D, E}: each input symbol the attack reads follows one
    counter arc; on E arcs the attack may rewrite, on D arcs it passes through."""
    automaton: Fst

    def __post_init__(self):
        a = self.automaton
        if not a.is_acceptor:
            raise ValueError("frequency counter must be identity-labelled")
        names = set(a.isyms.names[1:])
        if not names <= {"D", "E"}:
            raise ValueError(f"frequency counter uses labels outside D/E: {sorted(names - {'D', 'E'})}")
        if any(x.ilabel == EPS for x in a.arcs):
            raise ValueError("frequency counter cannot have epsilon moves")
        if a.finals != frozenset(range(a.num_states)):
            raise ValueError("every counter state must be final")

    @classmethod
    def cycle(cls, pattern: str) -> "FrequencyCounter":
        """A ring of len(pattern) states, e.g. "DDE" enables the attack every third step."""
        pattern = pattern.strip().upper()
        if not pattern or set(pattern) - {"D", "E"}:
            raise ValueError("pattern must be a nonempty string over D and E")
        n = len(pattern)
        arcs = tuple(Arc(k, COUNTER_SYMBOLS.id(c), COUNTER_SYMBOLS.id(c), (k + 1) % n)
                     for k, c in enumerate(pattern))
        return cls(Fst(n, 0, COUNTER_SYMBOLS, COUNTER_SYMBOLS, arcs, frozenset(range(n))))

    def label(self, x: int) -> str:
        return self.automaton.isyms.name(x)


def frequency_constrain(attack: Fst, counter: FrequencyCounter) -> Fst:
    """Run the attack in lockstep with the counter.

    A product state is (counter state, attack state). Reading a symbol moves
    both; on an E step the attack arc is used as is, on a D step its output is
    replaced by its input. Attack moves that read nothing leave the counter in
    place: they keep their output only where the counter has an E arc next,
    and become silent moves otherwise.
    """
    if attack.isyms != attack.osyms:
        raise ValueError("frequency_constrain needs an attack with equal input and output alphabets")
    c = counter.automaton
    c_arcs = [(x.src, counter.label(x.ilabel), x.dst) for x in c.arcs]
    c_out = [[] for _ in range(c.num_states)]
    for q, lab, q2 in c_arcs:
        c_out[q].append((lab, q2))
    index = {}
    arcs = []

    def sid(pair):
        if pair not in index:
            index[pair] = len(index)
            queue.append(pair)
        return index[pair]

    queue: deque = deque()
    sid((c.initial, attack.initial))
    while queue:
        q, s = pair = queue.popleft()
        src = index[pair]
        enabled = any(lab == "E" for lab, _ in c_out[q])
        for a in attack.out_arcs[s]:
            if a.ilabel == EPS:
                out = a.olabel if enabled else EPS
                arcs.append(Arc(src, EPS, out, sid((q, a.dst))))
                if enabled and a.olabel != EPS and any(lab == "D" for lab, _ in c_out[q]):
                    arcs.append(Arc(src, EPS, EPS, sid((q, a.dst))))
                continue
            for lab, q2 in c_out[q]:
                out = a.olabel if lab == "E" else a.ilabel
                arcs.append(Arc(src, a.ilabel, out, sid((q2, a.dst))))
    finals = frozenset(k for (q, s), k in index.items() if q in c.finals and s in attack.finals)
    return trim(Fst(len(index), 0, attack.isyms, attack.osyms, tuple(arcs), finals))
