"""Bounded oracle for the language that reaches the plant in closed loop.

The loop is the cascade plant -> sensor attack -> supervisor -> actuator
attack, where the last stage's output is the word delivered to the plant's
input. The simulator here does not build any product transducer: it keeps one
state per stage and pushes each emitted symbol down the cascade immediately.

A word I is in the closed-loop language when the cascade can deliver I, for
some plant run. With ``diagonal=True`` the plant run must itself be driven by
I, that is (I, I) lies in the cascade's relation.
"""
from __future__ import annotations

from typing import Optional, Sequence

from .automata import all_words_upto
from .fst import AlphabetMismatch, Fst
from .symbols import EPS


def _stages(plant, sensor_attack, supervisor, actuator_attack) -> list:
    stages = [m for m in (plant, sensor_attack, supervisor, actuator_attack) if m is not None]
    for left, right in zip(stages, stages[1:]):
        if left.osyms != right.isyms:
            raise AlphabetMismatch("closed loop: adjacent stages disagree on alphabet")
    if stages[-1].osyms != plant.isyms:
        raise AlphabetMismatch("closed loop: last stage must emit plant inputs")
    return stages


class Cascade:
    """Nondeterministic simulator for a chain of transducers."""

    def __init__(self, stages: Sequence[Fst]):
        self.stages = list(stages)

    @property
    def start(self) -> tuple:
        return tuple(m.initial for m in self.stages)

    def accepting(self, conf: tuple) -> bool:
        return all(q in m.finals for q, m in zip(conf, self.stages))

    def _push(self, conf: tuple, k: int, symbol: int):
        """Stage k reads ``symbol`` now.

        Silent-input moves of stage k are not interleaved here: they commute
        with upstream moves, so ``moves`` offers them as separate steps.
        Yields (configuration, emitted symbol of the last stage or EPS).
        """
        m = self.stages[k]
        for a in m.by_ilabel[conf[k]].get(symbol, ()):
            nxt = conf[:k] + (a.dst,) + conf[k + 1:]
            yield from self._emit(nxt, k, a.olabel)

    def _emit(self, conf: tuple, k: int, symbol: int):
        if symbol == EPS:
            yield conf, EPS
        elif k == len(self.stages) - 1:
            yield conf, symbol
        else:
            yield from self._push(conf, k + 1, symbol)

    def moves(self, conf: tuple, first_input: Optional[int] = None):
        """Every single move: stage 0 takes any arc (or one reading ``first_input``
        when given), or a later stage takes a silent-input arc.

        Yields (configuration, symbol read by stage 0 or EPS, emitted symbol or EPS).
        """
        m0 = self.stages[0]
        for a in m0.out_arcs[conf[0]]:
            if first_input is not None and a.ilabel not in (EPS, first_input):
                continue
            nxt = (a.dst,) + conf[1:]
            for c, out in self._emit(nxt, 0, a.olabel):
                yield c, a.ilabel, out
        for k in range(1, len(self.stages)):
            for a in self.stages[k].by_ilabel[conf[k]].get(EPS, ()):
                nxt = conf[:k] + (a.dst,) + conf[k + 1:]
                for c, out in self._emit(nxt, k, a.olabel):
                    yield c, EPS, out

    def _closure(self, confs) -> frozenset:
        seen = set(confs)
        stack = list(seen)
        while stack:
            c = stack.pop()
            for c2, _, out in self.moves(c):
                if out == EPS and c2 not in seen:
                    seen.add(c2)
                    stack.append(c2)
        return frozenset(seen)

    def _step(self, confs, symbol: int) -> frozenset:
        nxt = set()
        for c in confs:
            for c2, _, out in self.moves(c):
                if out == symbol:
                    nxt.add(c2)
        return self._closure(nxt)

    def output_member(self, word: Sequence[int]) -> bool:
        cur = self._closure([self.start])
        for x in word:
            if not cur:
                return False
            cur = self._step(cur, x)
        return any(self.accepting(c) for c in cur)

    def output_language_upto(self, max_len: int) -> frozenset:
        symbols = list(self.stages[-1].osyms.symbols)
        found = set()
        memo = {}

        def walk(confs, prefix):
            if any(self.accepting(c) for c in confs):
                found.add(prefix)
            if len(prefix) == max_len:
                return
            for x in symbols:
                key = (confs, x)
                if key not in memo:
                    memo[key] = self._step(confs, x)
                nxt = memo[key]
                if nxt:
                    walk(nxt, prefix + (x,))

        start = self._closure([self.start])
        walk(start, ())
        return frozenset(found)

    def diagonal_member(self, word: Sequence[int]) -> bool:
        """Whether (word, word) is in the cascade's relation."""
        word = tuple(word)
        n = len(word)
        start = (self.start, 0, 0)
        seen = {start}
        stack = [start]
        while stack:
            conf, i, j = stack.pop()
            if i == n and j == n and self.accepting(conf):
                return True
            nxt_in = word[i] if i < n else -1
            for c2, read, out in self.moves(conf, nxt_in):
                i2 = i + (read != EPS)
                if out == EPS:
                    j2 = j
                elif j < n and word[j] == out:
                    j2 = j + 1
                else:
                    continue
                item = (c2, i2, j2)
                if item not in seen:
                    seen.add(item)
                    stack.append(item)
        return False


def closed_loop_member(plant: Fst, sensor_attack: Optional[Fst], supervisor: Fst,
                       actuator_attack: Optional[Fst], word: Sequence[int],
                       diagonal: bool = False) -> bool:
    cascade = Cascade(_stages(plant, sensor_attack, supervisor, actuator_attack))
    return cascade.diagonal_member(word) if diagonal else cascade.output_member(word)


def closed_loop_language_upto(plant: Fst, sensor_attack: Optional[Fst], supervisor: Fst,
                              actuator_attack: Optional[Fst], max_len: int,
                              diagonal: bool = False) -> frozenset:
    """Every word of length <= max_len the closed loop can deliver to the plant."""
    cascade = Cascade(_stages(plant, sensor_attack, supervisor, actuator_attack))
    if not diagonal:
        return cascade.output_language_upto(max_len)
    symbols = list(plant.isyms.symbols)
    return frozenset(w for w in all_words_upto(symbols, max_len) if cascade.diagonal_member(w))
