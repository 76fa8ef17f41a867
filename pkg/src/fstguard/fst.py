"""Normalized finite-state transducers.

Every arc carries at most one input and at most one output symbol; id 0 is
epsilon on either side. An automaton is an Fst whose arcs all have equal input
and output labels.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

from .symbols import EPS, Label, SymbolTable, Word


class Arc(NamedTuple):
    src: int
    ilabel: int
    olabel: int
    dst: int


class AlphabetMismatch(ValueError):
    pass


class UnsupportedLabelError(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[object] = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True, eq=True)
class Fst:
    num_states: int
    initial: int
    isyms: SymbolTable
    osyms: SymbolTable
    arcs: tuple = ()
    finals: frozenset = frozenset()

    def __post_init__(self):
        arcs = tuple(sorted(set(Arc(*a) for a in self.arcs)))
        finals = frozenset(self.finals)
        n = self.num_states
        if n < 1:
            raise ValueError("an Fst needs at least one state")
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} out of range")
        ni, no = len(self.isyms), len(self.osyms)
        for a in arcs:
            if not (0 <= a.src < n and 0 <= a.dst < n):
                raise ValueError(f"arc {a} references a missing state")
            if not 0 <= a.ilabel < ni:
                raise ValueError(f"arc {a} has an unknown input label")
            if not 0 <= a.olabel < no:
                raise ValueError(f"arc {a} has an unknown output label")
        for q in finals:
            if not 0 <= q < n:
                raise ValueError(f"final state {q} out of range")
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "finals", finals)

    # adjacency indexes, built lazily and cached on the (immutable) instance
    @cached_property
    def out_arcs(self) -> tuple:
        out = [[] for _ in range(self.num_states)]
        for a in self.arcs:
            out[a.src].append(a)
        return tuple(tuple(x) for x in out)

    @cached_property
    def by_ilabel(self) -> tuple:
        """Per state: dict ilabel -> arcs."""
        res = []
        for arcs in self.out_arcs:
            d: dict = {}
            for a in arcs:
                d.setdefault(a.ilabel, []).append(a)
            res.append(d)
        return tuple(res)

    @cached_property
    def by_olabel(self) -> tuple:
        res = []
        for arcs in self.out_arcs:
            d: dict = {}
            for a in arcs:
                d.setdefault(a.olabel, []).append(a)
            res.append(d)
        return tuple(res)

    @property
    def is_acceptor(self) -> bool:
        return self.isyms == self.osyms and all(a.ilabel == a.olabel for a in self.arcs)

    @property
    def has_eps_moves(self) -> bool:
        return any(a.ilabel == EPS and a.olabel == EPS for a in self.arcs)

    def replace(self, **kw) -> "Fst":
        d = dict(num_states=self.num_states, initial=self.initial, isyms=self.isyms,
                 osyms=self.osyms, arcs=self.arcs, finals=self.finals)
        d.update(kw)
        return Fst(**d)

    def describe(self) -> str:
        return f"Fst({self.num_states} states, {len(self.arcs)} arcs, {len(self.finals)} finals)"


def empty_fst(isyms: SymbolTable, osyms: Optional[SymbolTable] = None) -> Fst:
    """The empty relation: one non-final state."""
    return Fst(1, 0, isyms, osyms if osyms is not None else isyms)


def make_fst(
    isyms: SymbolTable,
    osyms: Optional[SymbolTable],
    arcs: Iterable[tuple],
    finals: Iterable[int],
    initial: int = 0,
    num_states: Optional[int] = None,
) -> Fst:
    """Build an Fst from (src, ilabel, olabel, dst) tuples with name or id labels.

    ``None``, ``""`` and ``"<eps>"`` all mean epsilon.
    """
    osyms = isyms if osyms is None else osyms
    arcs = [Arc(s, isyms.id(i), osyms.id(o), d) for s, i, o, d in arcs]
    finals = frozenset(finals)
    if num_states is None:
        mentioned = [initial, *finals] + [a.src for a in arcs] + [a.dst for a in arcs]
        num_states = max(mentioned) + 1
    return Fst(num_states, initial, isyms, osyms, tuple(arcs), finals)


def acceptor(syms: SymbolTable, arcs: Iterable[tuple], finals: Iterable[int],
             initial: int = 0, num_states: Optional[int] = None) -> Fst:
    """Automaton from (src, label, dst) triples."""
    return make_fst(syms, syms, [(s, l, l, d) for s, l, d in arcs], finals, initial, num_states)


def word_acceptor(syms: SymbolTable, word: Sequence[int]) -> Fst:
    """Chain automaton accepting exactly one word."""
    arcs = [Arc(k, x, x, k + 1) for k, x in enumerate(word)]
    return Fst(len(word) + 1, 0, syms, syms, tuple(arcs), frozenset({len(word)}))


def universal(syms: SymbolTable, symbols: Optional[Iterable[int]] = None) -> Fst:
    """One-state automaton accepting every word over ``symbols`` (default: all)."""
    symbols = syms.symbols if symbols is None else symbols
    return Fst(1, 0, syms, syms, tuple(Arc(0, x, x, 0) for x in symbols), frozenset({0}))


def identity_on(fst: Fst) -> Fst:
    """Keep the input side of every arc on both tapes (pass-through copy)."""
    return Fst(fst.num_states, fst.initial, fst.isyms, fst.isyms,
               tuple(Arc(a.src, a.ilabel, a.ilabel, a.dst) for a in fst.arcs), fst.finals)


def _reachable(fst: Fst) -> set:
    seen = {fst.initial}
    stack = [fst.initial]
    out = fst.out_arcs
    while stack:
        q = stack.pop()
        for a in out[q]:
            if a.dst not in seen:
                seen.add(a.dst)
                stack.append(a.dst)
    return seen


def coreachable(fst: Fst) -> set:
    preds = [[] for _ in range(fst.num_states)]
    for a in fst.arcs:
        preds[a.dst].append(a.src)
    seen = set(fst.finals)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for p in preds[q]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def trim_with_map(fst: Fst) -> tuple[Fst, dict]:
    """Trim and also return the old-state -> new-state map."""
    keep = _reachable(fst) & coreachable(fst)
    if fst.initial not in keep:
        return empty_fst(fst.isyms, fst.osyms), {fst.initial: 0}
    order = sorted(keep)
    # keep the initial state's relative order but renumber densely
    remap = {q: k for k, q in enumerate(order)}
    arcs = tuple(
        Arc(remap[a.src], a.ilabel, a.olabel, remap[a.dst])
        for a in fst.arcs
        if a.src in keep and a.dst in keep
    )
    finals = frozenset(remap[q] for q in fst.finals if q in keep)
    return Fst(len(order), remap[fst.initial], fst.isyms, fst.osyms, arcs, finals), remap


def trim(fst: Fst) -> Fst:
    """Drop states that are unreachable or cannot reach a final state."""
    return trim_with_map(fst)[0]


def eps_closure(fst: Fst, states: Iterable[int]) -> frozenset:
    """Closure under eps|eps arcs."""
    seen = set(states)
    stack = list(seen)
    by_i = fst.by_ilabel
    while stack:
        q = stack.pop()
        for a in by_i[q].get(EPS, ()):
            if a.olabel == EPS and a.dst not in seen:
                seen.add(a.dst)
                stack.append(a.dst)
    return frozenset(seen)


def rm_epsilon(fst: Fst) -> Fst:
    """Remove eps|eps arcs, keeping the relation.

    State q gets every non-free arc leaving its free closure, and becomes final
    when the closure holds a final state.
    """
    if not fst.has_eps_moves:
        return fst
    arcs = []
    finals = set()
    for q in range(fst.num_states):
        clo = eps_closure(fst, [q])
        if clo & fst.finals:
            finals.add(q)
        for r in clo:
            for a in fst.out_arcs[r]:
                if a.ilabel != EPS or a.olabel != EPS:
                    arcs.append(Arc(q, a.ilabel, a.olabel, a.dst))
    return trim(Fst(fst.num_states, fst.initial, fst.isyms, fst.osyms, tuple(arcs), frozenset(finals)))


def canonicalize(fst: Fst) -> Fst:
    """Renumber states in BFS order from the initial state.

    Arcs are explored in (ilabel, olabel, old dst) order; unreachable states
    are dropped. The result is independent of the input's state numbering up
    to ties among identically labelled arcs.
    """
    order = {fst.initial: 0}
    queue = deque([fst.initial])
    out = fst.out_arcs
    while queue:
        q = queue.popleft()
        for a in sorted(out[q], key=lambda a: (a.ilabel, a.olabel, a.dst)):
            if a.dst not in order:
                order[a.dst] = len(order)
                queue.append(a.dst)
    arcs = tuple(
        Arc(order[a.src], a.ilabel, a.olabel, order[a.dst]) for a in fst.arcs if a.src in order
    )
    finals = frozenset(order[q] for q in fst.finals if q in order)
    return Fst(len(order), 0, fst.isyms, fst.osyms, arcs, finals)


class WordArc(NamedTuple):
    """An arc whose labels are words (sequences of names or ids)."""
    src: int
    inp: object
    out: object
    dst: int


_REGEX_CHARS = set("*+?|()[]{}")


def _word(syms: SymbolTable, label) -> Word:
    if label is None:
        return ()
    if isinstance(label, str):
        if any(c in _REGEX_CHARS for c in label) and label not in syms:
            raise UnsupportedLabelError(f"regular-expression labels are not supported: {label!r}")
        return syms.encode(label)
    if isinstance(label, int):
        return syms.encode([label])
    return syms.encode(list(label))


def normalize(
    isyms: SymbolTable,
    osyms: Optional[SymbolTable],
    arcs: Iterable[tuple],
    finals: Iterable[int],
    initial: int = 0,
    num_states: Optional[int] = None,
) -> Fst:
    """Split word-labelled arcs into chains of single-symbol arcs.

    An arc with input word I and output word O becomes a chain of
    max(|I|, |O|) links; link k reads I[k] and writes O[k] (or epsilon past
    the end), so output is emitted as early as possible. An arc with both
    words empty becomes one eps|eps move.
    """
    osyms = isyms if osyms is None else osyms
    warcs = [WordArc(*a) for a in arcs]
    finals = frozenset(finals)
    if num_states is None:
        mentioned = [initial, *finals] + [a.src for a in warcs] + [a.dst for a in warcs]
        num_states = max(mentioned) + 1
    n = num_states
    out = []
    for a in warcs:
        iw, ow = _word(isyms, a.inp), _word(osyms, a.out)
        length = max(len(iw), len(ow), 1)
        chain = [a.src] + list(range(n, n + length - 1)) + [a.dst]
        n += length - 1
        for k in range(length):
            il = iw[k] if k < len(iw) else EPS
            ol = ow[k] if k < len(ow) else EPS
            out.append(Arc(chain[k], il, ol, chain[k + 1]))
    return Fst(n, initial, isyms, osyms, tuple(out), finals)


def require_same(a: SymbolTable, b: SymbolTable, what: str) -> None:
    if a != b:
        raise AlphabetMismatch(f"{what}: symbol tables differ")
