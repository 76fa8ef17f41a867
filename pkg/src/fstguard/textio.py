"""Line-oriented text format for transducers and symbol tables.

Arc lines are ``src<TAB>dst<TAB>ilabel<TAB>olabel`` and final lines hold a
single state. The state on the first line is the initial state. Lines starting
with ``#`` are comments, except two pragmas the writer emits only when the
plain format cannot express the machine: ``#start N`` (initial state with no
line of its own) and ``#states N`` (states mentioned nowhere).
"""
from __future__ import annotations

import re
from typing import Iterable, Optional

from .fst import Arc, Fst
from .symbols import EPS_NAME, SymbolTable


class FormatError(ValueError):
    def __init__(self, msg: str, lineno: Optional[int] = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno is not None else msg)


def natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        yield lineno, line


def label_names(text: str) -> set:
    """All label names used in an FST text, excluding epsilon."""
    names = set()
    for lineno, line in _records(text):
        if line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 4:
            names.update(parts[2:])
        elif len(parts) == 3:
            names.add(parts[2])
    names.discard(EPS_NAME)
    return names


def infer_symbols(texts: Iterable[str]) -> SymbolTable:
    names = set()
    for t in texts:
        names |= label_names(t)
    return SymbolTable.from_names(sorted(names, key=natural_key))


def _state(tok: str, lineno: int) -> int:
    try:
        q = int(tok)
    except ValueError:
        raise FormatError(f"bad state id {tok!r}", lineno) from None
    if q < 0:
        raise FormatError(f"negative state id {q}", lineno)
    return q


def read_fst(text: str, isyms: Optional[SymbolTable] = None,
             osyms: Optional[SymbolTable] = None) -> Fst:
    """Parse an FST. Without tables, one shared table is inferred from the labels.

    A three-column arc line ``src dst label`` is accepted as shorthand for an
    identity arc.
    """
    if isyms is None:
        isyms = osyms if osyms is not None else infer_symbols([text])
    if osyms is None:
        osyms = isyms
    initial = None
    declared_states = 0
    arcs = []
    finals = set()
    biggest = -1
    for lineno, line in _records(text):
        if line.startswith("#"):
            m = re.fullmatch(r"#\s*(start|states)\s+(\S+)", line)
            if m:
                q = _state(m.group(2), lineno)
                if m.group(1) == "start":
                    if initial is not None:
                        raise FormatError("#start after the initial state is fixed", lineno)
                    initial = q
                    biggest = max(biggest, q)
                else:
                    declared_states = q
            continue
        parts = line.split()
        if len(parts) == 1:
            q = _state(parts[0], lineno)
            if q in finals:
                raise FormatError(f"duplicate final declaration for state {q}", lineno)
            finals.add(q)
            if initial is None:
                initial = q
            biggest = max(biggest, q)
        elif len(parts) in (3, 4):
            src, dst = _state(parts[0], lineno), _state(parts[1], lineno)
            iname = parts[2]
            oname = parts[3] if len(parts) == 4 else parts[2]
            if iname not in isyms:
                raise FormatError(f"unknown input symbol {iname!r}", lineno)
            if oname not in osyms:
                raise FormatError(f"unknown output symbol {oname!r}", lineno)
            if initial is None:
                initial = src
            arcs.append(Arc(src, isyms.id(iname), osyms.id(oname), dst))
            biggest = max(biggest, src, dst)
        else:
            raise FormatError(f"expected 1, 3 or 4 fields, got {len(parts)}", lineno)
    if initial is None:
        raise FormatError("no initial state")
    n = max(biggest + 1, declared_states)
    return Fst(n, initial, isyms, osyms, tuple(arcs), frozenset(finals))


def write_fst(fst: Fst) -> str:
    isyms, osyms = fst.isyms, fst.osyms
    # initial state's arcs first so the first line names it
    arcs = sorted(fst.arcs, key=lambda a: (a.src != fst.initial, a))
    lines = [f"{a.src}\t{a.dst}\t{isyms.name(a.ilabel)}\t{osyms.name(a.olabel)}" for a in arcs]
    finals = sorted(fst.finals, key=lambda q: (q != fst.initial or bool(arcs), q))
    lines += [str(q) for q in finals]
    first = arcs[0].src if arcs else (finals[0] if finals else None)
    head = []
    if first != fst.initial:
        head.append(f"#start {fst.initial}")
    mentioned = {fst.initial, *fst.finals}
    for a in fst.arcs:
        mentioned.update((a.src, a.dst))
    if max(mentioned) + 1 != fst.num_states:
        head.append(f"#states {fst.num_states}")
    return "".join(line + "\n" for line in head + lines)


def read_symbols(text: str) -> SymbolTable:
    try:
        return SymbolTable.from_text(text)
    except ValueError as e:
        raise FormatError(str(e)) from None


def write_symbols(syms: SymbolTable) -> str:
    return syms.to_text()


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(fst: Fst, name: str = "fst") -> str:
    """Graphviz rendering; epsilon is drawn as the Greek letter."""
    def lab(syms, i):
        return "ε" if i == 0 else syms.name(i)

    out = [f'digraph "{_dot_escape(name)}" {{', "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(fst.num_states):
        shape = "doublecircle" if q in fst.finals else "circle"
        out.append(f"  {q} [shape={shape}];")
    out.append(f"  __start -> {fst.initial};")
    for a in fst.arcs:
        text = f"{lab(fst.isyms, a.ilabel)}|{lab(fst.osyms, a.olabel)}"
        out.append(f'  {a.src} -> {a.dst} [label="{_dot_escape(text)}"];')
    out.append("}")
    return "\n".join(out) + "\n"
