"""Word-level semantics: applying a transducer and bounded relation enumeration."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fst import Fst, Verdict, trim
from .symbols import EPS, Word


class BoundedImage(frozenset):
    """A set of output words; ``truncated`` is set when longer outputs exist."""

    truncated: bool = False

    def __new__(cls, words=(), truncated: bool = False):
        obj = super().__new__(cls, words)
        obj.truncated = truncated
        return obj


def _alive(fst: Fst, word: Sequence[int]) -> set:
    """(state, pos) pairs from which word[pos:] can still be read to acceptance."""
    n = len(word)
    back: dict = {}
    for a in fst.arcs:
        back.setdefault(a.dst, []).append(a)
    alive = {(f, n) for f in fst.finals}
    stack = list(alive)
    while stack:
        q, k = stack.pop()
        for a in back.get(q, ()):
            if a.ilabel == EPS:
                prev = (a.src, k)
            elif k > 0 and word[k - 1] == a.ilabel:
                prev = (a.src, k - 1)
            else:
                continue
            if prev not in alive:
                alive.add(prev)
                stack.append(prev)
    return alive


def apply(fst: Fst, word: Sequence[int], max_out_len: int) -> BoundedImage:
    """All outputs O with (word, O) in the relation and |O| <= max_out_len."""
    word = tuple(word)
    if max_out_len < 0:
        raise ValueError("max_out_len must be non-negative")
    alive = _alive(fst, word)
    if (fst.initial, 0) not in alive:
        return BoundedImage()
    n = len(word)
    out_arcs = fst.out_arcs
    start = (fst.initial, 0, ())
    seen = {start}
    stack = [start]
    results = set()
    truncated = False
    while stack:
        q, k, o = stack.pop()
        if k == n and q in fst.finals:
            results.add(o)
        for a in out_arcs[q]:
            if a.ilabel == EPS:
                k2 = k
            elif k < n and word[k] == a.ilabel:
                k2 = k + 1
            else:
                continue
            if (a.dst, k2) not in alive:
                continue
            if a.olabel == EPS:
                o2 = o
            elif len(o) < max_out_len:
                o2 = o + (a.olabel,)
            else:
                truncated = True
                continue
            c = (a.dst, k2, o2)
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return BoundedImage(results, truncated)


def accepts(fst: Fst, word: Sequence[int]) -> bool:
    """Membership in the input language."""
    return (fst.initial, 0) in _alive(fst, tuple(word))


def accepts_pair(fst: Fst, inp: Sequence[int], out: Sequence[int]) -> bool:
    inp, out = tuple(inp), tuple(out)
    start = (fst.initial, 0, 0)
    seen = {start}
    stack = [start]
    while stack:
        q, i, j = stack.pop()
        if i == len(inp) and j == len(out) and q in fst.finals:
            return True
        for a in fst.out_arcs[q]:
            if a.ilabel == EPS:
                i2 = i
            elif i < len(inp) and inp[i] == a.ilabel:
                i2 = i + 1
            else:
                continue
            if a.olabel == EPS:
                j2 = j
            elif j < len(out) and out[j] == a.olabel:
                j2 = j + 1
            else:
                continue
            c = (a.dst, i2, j2)
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return False


def relation_upto(fst: Fst, max_len: int) -> frozenset:
    """Every pair (I, O) of the relation with |I| <= max_len and |O| <= max_len."""
    fst = trim(fst)
    if not fst.finals:
        return frozenset()
    start = (fst.initial, (), ())
    seen = {start}
    stack = [start]
    pairs = set()
    while stack:
        q, i, o = stack.pop()
        if q in fst.finals:
            pairs.add((i, o))
        for a in fst.out_arcs[q]:
            i2 = i if a.ilabel == EPS else i + (a.ilabel,)
            o2 = o if a.olabel == EPS else o + (a.olabel,)
            if len(i2) > max_len or len(o2) > max_len:
                continue
            c = (a.dst, i2, o2)
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return frozenset(pairs)


def _pair_key(p):
    i, o = p
    return (len(i) + len(o), i, o)


def relation_equal_upto(a: Fst, b: Fst, max_len: int) -> Verdict:
    """Bounded relation equality; the witness is the smallest differing (I, O)."""
    ra, rb = relation_upto(a, max_len), relation_upto(b, max_len)
    diff = ra ^ rb
    if not diff:
        return Verdict(True)
    return Verdict(False, min(diff, key=_pair_key))


@dataclass(frozen=True)
class PairDiff:
    only_left: frozenset
    only_right: frozenset


def relation_diff_upto(a: Fst, b: Fst, max_len: int) -> PairDiff:
    ra, rb = relation_upto(a, max_len), relation_upto(b, max_len)
    return PairDiff(ra - rb, rb - ra)


def decode_pair(fst: Fst, pair) -> str:
    i, o = pair
    return f"({fst.isyms.decode(i) or '<eps>'} , {fst.osyms.decode(o) or '<eps>'})"


__all__ = [
    "BoundedImage", "apply", "accepts", "accepts_pair", "relation_upto",
    "relation_equal_upto", "relation_diff_upto", "PairDiff", "decode_pair", "Word",
]
