"""Hypothesis strategies for small transducers and automata."""
from hypothesis import strategies as st

from fstguard import Arc, Fst, SymbolTable

SIGMA = SymbolTable.from_names(["a", "b"])
SIGMA3 = SymbolTable.from_names(["a", "b", "c"])


@st.composite
def fsts(draw, syms=SIGMA, max_states=5, max_arcs=10, eps=True, eps_moves=False, osyms=None,
         in_eps=True):
    osyms = syms if osyms is None else osyms
    n = draw(st.integers(1, max_states))
    ilabels = st.integers(0 if eps and in_eps else 1, len(syms) - 1)
    olabels = st.integers(0 if eps else 1, len(osyms) - 1)
    raw = draw(st.lists(st.tuples(st.integers(0, n - 1), ilabels, olabels, st.integers(0, n - 1)),
                        max_size=max_arcs))
    arcs = []
    for s, i, o, d in raw:
        if i == 0 and o == 0 and not eps_moves:
            o = 1
        arcs.append(Arc(s, i, o, d))
    finals = draw(st.frozensets(st.integers(0, n - 1)))
    return Fst(n, 0, syms, osyms, tuple(arcs), finals)


@st.composite
def automata(draw, syms=SIGMA, max_states=5, max_arcs=10, eps=False):
    n = draw(st.integers(1, max_states))
    labels = st.integers(0 if eps else 1, len(syms) - 1)
    raw = draw(st.lists(st.tuples(st.integers(0, n - 1), labels, st.integers(0, n - 1)),
                        max_size=max_arcs))
    finals = draw(st.frozensets(st.integers(0, n - 1)))
    return Fst(n, 0, syms, syms, tuple(Arc(s, x, x, d) for s, x, d in raw), finals)


def words(syms=SIGMA, max_len=4):
    return st.lists(st.integers(1, len(syms) - 1), max_size=max_len).map(tuple)
