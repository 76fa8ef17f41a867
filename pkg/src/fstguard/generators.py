"""Seeded random machines for property tests and the CLI property harness."""
from __future__ import annotations

import random
from typing import Optional

from .algebra import compose
from .attacks import (deletion_attack, identity_attack, injection_attack, injection_removal_attack,
                      replacement_removal_attack, ReplacementRule)
from .automata import determinize, project_input, project_output
from .fst import Arc, Fst, trim
from .symbols import EPS, SymbolTable


def alphabet(k: int, prefix: str = "a") -> SymbolTable:
    return SymbolTable.from_names(f"{prefix}{i}" for i in range(1, k + 1))


def random_fst(rng: random.Random, isyms: SymbolTable, osyms: Optional[SymbolTable] = None,
               max_states: int = 5, max_arcs: Optional[int] = None, eps_rate: float = 0.2,
               final_rate: float = 0.4, allow_eps_moves: bool = False) -> Fst:
    osyms = isyms if osyms is None else osyms
    n = rng.randint(1, max_states)
    max_arcs = max_arcs if max_arcs is not None else 3 * n
    arcs = []
    for _ in range(rng.randint(0, max_arcs)):
        i = EPS if rng.random() < eps_rate else rng.choice(list(isyms.symbols))
        o = EPS if rng.random() < eps_rate else rng.choice(list(osyms.symbols))
        if i == EPS and o == EPS and not allow_eps_moves:
            o = rng.choice(list(osyms.symbols))
        arcs.append(Arc(rng.randrange(n), i, o, rng.randrange(n)))
    finals = frozenset(q for q in range(n) if rng.random() < final_rate)
    return Fst(n, 0, isyms, osyms, tuple(arcs), finals)


def random_automaton(rng: random.Random, syms: SymbolTable, max_states: int = 5,
                     eps_rate: float = 0.0, final_rate: float = 0.5) -> Fst:
    n = rng.randint(1, max_states)
    arcs = []
    for _ in range(rng.randint(0, 3 * n)):
        x = EPS if rng.random() < eps_rate else rng.choice(list(syms.symbols))
        arcs.append(Arc(rng.randrange(n), x, x, rng.randrange(n)))
    finals = frozenset(q for q in range(n) if rng.random() < final_rate)
    return Fst(n, 0, syms, syms, tuple(arcs), finals)


def random_dfa(rng: random.Random, syms: SymbolTable, max_states: int = 4,
               density: float = 0.6, all_final: bool = True) -> Fst:
    """Random deterministic automaton; with ``all_final`` its language is prefix-closed."""
    n = rng.randint(1, max_states)
    arcs = []
    for q in range(n):
        for x in syms.symbols:
            if rng.random() < density:
                arcs.append(Arc(q, x, x, rng.randrange(n)))
    finals = frozenset(range(n)) if all_final else frozenset(q for q in range(n) if rng.random() < 0.5)
    return Fst(n, 0, syms, syms, tuple(arcs), finals)


def random_plant(rng: random.Random, syms: SymbolTable, max_states: int = 4,
                 relabel: bool = False) -> Fst:
    """Deterministic plant with prefix-closed input language.

    With ``relabel`` each arc gets a random output symbol (input stays
    deterministic); otherwise the plant echoes its input.
    """
    dfa = random_dfa(rng, syms, max_states)
    if not relabel:
        return dfa
    arcs = tuple(Arc(a.src, a.ilabel, rng.choice(list(syms.symbols)), a.dst) for a in dfa.arcs)
    return dfa.replace(arcs=arcs)


def random_desired(rng: random.Random, plant: Fst, max_states: int = 5):
    """Random prefix-closed language inside the plant's input language."""
    from .automata import intersect
    from .synthesis import DesiredLanguage
    syms = plant.isyms
    raw = random_dfa(rng, syms, max_states)
    k = trim(determinize(intersect(raw, project_input(plant))))
    if not k.finals:
        k = Fst(1, 0, syms, syms, (), frozenset({0}))
    return DesiredLanguage(k)


ATTACK_KINDS = ("identity", "deletion", "injection", "replacement", "injection_removal")


def random_base_attack(rng: random.Random, syms: SymbolTable, kind: Optional[str] = None) -> Fst:
    """A one-state attack from the builders; every kind contains the identity."""
    kind = kind or rng.choice(ATTACK_KINDS)
    symbols = list(syms.symbols)
    subset = [x for x in symbols if rng.random() < 0.5]
    if kind == "identity":
        return identity_attack(syms)
    if kind == "deletion":
        return deletion_attack(syms, [x for x in symbols if x not in subset])
    if kind == "injection":
        return injection_attack(syms, subset)
    if kind == "replacement":
        overrides = {}
        for x in subset:
            overrides[x] = {x} | {rng.choice(symbols + [EPS])}
        return replacement_removal_attack(ReplacementRule.with_defaults(syms, overrides))
    if kind == "injection_removal":
        return injection_removal_attack(syms, subset)
    raise ValueError(f"unknown attack kind {kind!r}")


def sensor_attack_for(plant: Fst, base: Fst) -> Fst:
    """Restrict a total attack to read exactly the plant's outputs."""
    return trim(compose(project_output(plant), base))


def actuator_attack_for(plant: Fst, base: Fst) -> Fst:
    """Restrict an identity-containing attack to emit exactly the plant's inputs."""
    return trim(compose(base, project_input(plant)))
