"""Supervisor synthesis under sensor and/or actuator attacks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import compose, invert
from .automata import (determinize, is_prefix_closed, language_equal, language_included,
                       project_input, project_output)
from .fst import AlphabetMismatch, Arc, Fst, Verdict, trim
from .symbols import EPS, SymbolTable


class AssumptionError(ValueError):
    """An attack or desired language violates a precondition of synthesis."""


@dataclass(frozen=True)
class DesiredLanguage:
    """A prefix-closed regular language, given by an identity-labelled automaton."""
    automaton: Fst
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        a = self.automaton
        if not a.is_acceptor:
            raise ValueError("desired language must be an identity-labelled automaton")
        if self.check and not is_prefix_closed(a):
            raise ValueError("desired language must be prefix-closed")

    @property
    def syms(self) -> SymbolTable:
        return self.automaton.isyms

    def model(self) -> Fst:
        """Deterministic trimmed automaton for the language."""
        return trim(determinize(self.automaton))


@dataclass(frozen=True)
class SynthesisReport:
    supervisor: Fst
    controllable: bool
    weakly_controllable: bool
    minimal_superset: Fst
    witness: Optional[tuple] = None
    peak_transitions: int = 0

    def summary(self) -> str:
        verdict = "controllable" if self.controllable else "not controllable (weakly controllable)"
        return verdict


class _Peak:
    def __init__(self):
        self.value = 0

    def __call__(self, fst: Fst) -> Fst:
        self.value = max(self.value, len(fst.arcs))
        return fst


def _check(v: Verdict, message: str, syms: SymbolTable) -> None:
    if not v:
        raise AssumptionError(f"{message}; witness: {syms.decode(v.witness) or '<eps>'}")


def check_desired_in_plant(plant: Fst, desired: DesiredLanguage) -> None:
    if desired.syms != plant.isyms:
        raise AlphabetMismatch("desired language must use the plant's input alphabet")
    _check(language_included(desired.automaton, project_input(plant)),
           "desired language is not contained in the plant's input language", desired.syms)


def check_sensor_assumption(plant: Fst, sensor_attack: Fst) -> None:
    """The sensor attack accepts exactly the words the plant can output."""
    if sensor_attack.isyms != plant.osyms:
        raise AlphabetMismatch("sensor attack input alphabet must be the plant's output alphabet")
    lin, lout = project_input(sensor_attack), project_output(plant)
    _check(language_included(lout, lin),
           "sensor attack does not accept every plant output", plant.osyms)
    _check(language_included(lin, lout),
           "sensor attack accepts words the plant cannot output", plant.osyms)


def check_actuator_assumption(plant: Fst, actuator_attack: Fst) -> None:
    """The actuator attack generates exactly the words the plant accepts."""
    if actuator_attack.osyms != plant.isyms:
        raise AlphabetMismatch("actuator attack output alphabet must be the plant's input alphabet")
    lout, lin = project_output(actuator_attack), project_input(plant)
    _check(language_included(lin, lout),
           "actuator attack cannot generate every plant input", plant.isyms)
    _check(language_included(lout, lin),
           "actuator attack generates words the plant does not accept", plant.isyms)


def filter_fst(desired: DesiredLanguage, plant_input_language: Optional[Fst] = None,
               total: bool = True) -> Fst:
    """Transducer sending each word to its longest prefix inside the desired language.

    With ``total=False`` the arcs that erase are dropped and the result is
    the identity on the desired language only.
    """
    if plant_input_language is not None:
        if plant_input_language.isyms != desired.syms:
            raise AlphabetMismatch("filter: plant language uses a different alphabet")
        _check(language_included(desired.automaton, plant_input_language),
               "desired language is not contained in the plant's input language", desired.syms)
    dfa = desired.model()
    if not total:
        return dfa
    if not dfa.finals:
        raise ValueError("filter: desired language is empty")
    syms = dfa.isyms
    sink = dfa.num_states
    arcs = [Arc(a.src, a.ilabel, a.ilabel, a.dst) for a in dfa.arcs]
    for q in range(dfa.num_states):
        have = {a.ilabel for a in dfa.out_arcs[q]}
        arcs += [Arc(q, x, EPS, sink) for x in syms.symbols if x not in have]
    arcs += [Arc(sink, x, EPS, sink) for x in syms.symbols]
    return Fst(sink + 1, dfa.initial, syms, syms, tuple(arcs), frozenset(range(sink + 1)))


def minimal_superset(desired: DesiredLanguage, actuator_attack: Fst) -> Fst:
    """Output language of (desired identity) then inverse attack then attack."""
    model = desired.model()
    chain = compose(compose(model, invert(actuator_attack)), actuator_attack)
    return trim(determinize(project_output(chain)))


def _superset_verdict(desired: DesiredLanguage, actuator_attack: Fst):
    sup = minimal_superset(desired, actuator_attack)
    v = language_included(sup, desired.automaton)
    return sup, v


def synth_sensor(plant: Fst, sensor_attack: Fst, desired: DesiredLanguage,
                 check_assumptions: bool = True) -> SynthesisReport:
    """Supervisor undoing the sensor attack: inverse of (plant then attack), then the desired model."""
    if check_assumptions:
        check_sensor_assumption(plant, sensor_attack)
        check_desired_in_plant(plant, desired)
    peak = _Peak()
    observed = peak(compose(plant, sensor_attack))
    sup = peak(compose(invert(observed), desired.model()))
    return SynthesisReport(sup, True, True, desired.model(), None, peak.value)


def synth_actuator(plant: Fst, actuator_attack: Fst, desired: DesiredLanguage,
                   check_assumptions: bool = True, total_filter: bool = False,
                   drop_plant_inverse: bool = False) -> SynthesisReport:
    if check_assumptions:
        check_actuator_assumption(plant, actuator_attack)
        check_desired_in_plant(plant, desired)
    peak = _Peak()
    filt = peak(filter_fst(desired, None, total=total_filter))
    tail = peak(compose(filt, invert(actuator_attack)))
    sup = tail if drop_plant_inverse else peak(compose(invert(plant), tail))
    superset, v = _superset_verdict(desired, actuator_attack)
    peak(superset)
    return SynthesisReport(sup, v.holds, True, superset, v.witness, peak.value)


def synth_both(plant: Fst, actuator_attack: Fst, sensor_attack: Fst, desired: DesiredLanguage,
               check_assumptions: bool = True, total_filter: bool = False,
               drop_plant_inverse: bool = False) -> SynthesisReport:
    """Supervisor for attacks on both sides.

    With ``drop_plant_inverse`` the plant inverse is left out and the
    supervisor is (inverse sensor attack then desired model) then inverse
    actuator attack; this needs a plant whose input and output alphabets agree.
    """
    if check_assumptions:
        check_sensor_assumption(plant, sensor_attack)
        check_actuator_assumption(plant, actuator_attack)
        check_desired_in_plant(plant, desired)
    peak = _Peak()
    filt = peak(filter_fst(desired, None, total=total_filter))
    if drop_plant_inverse:
        head = peak(compose(invert(sensor_attack), filt))
        sup = peak(compose(head, invert(actuator_attack)))
    else:
        tail = peak(compose(filt, invert(actuator_attack)))
        observed = peak(compose(plant, sensor_attack))
        sup = peak(compose(invert(observed), tail))
    superset, v = _superset_verdict(desired, actuator_attack)
    peak(superset)
    return SynthesisReport(sup, v.holds, True, superset, v.witness, peak.value)


def check_controllable_relaxed(actuator_attack: Fst, plant: Fst, desired: DesiredLanguage) -> Verdict:
    """Controllability when the attack generates only part of the plant's input language."""
    lout = project_output(actuator_attack)
    _check(language_included(lout, project_input(plant)),
           "actuator attack generates words the plant does not accept", plant.isyms)
    _, v = _superset_verdict(desired, actuator_attack)
    if not v:
        return v
    return language_included(desired.automaton, lout)


def superset_equals_desired(report: SynthesisReport, desired: DesiredLanguage) -> Verdict:
    return language_equal(report.minimal_superset, desired.automaton)


def run_deterministic(supervisor: Fst, word: Sequence[int]) -> Optional[tuple]:
    """Resolve nondeterminism by taking the least accepting path.

    Arcs are tried in (ilabel, olabel, dst) order and the first accepting
    run over the whole input is returned as its output word, or None when the
    supervisor rejects the input.
    """
    word = tuple(word)
    order = [sorted(arcs, key=lambda a: (a.ilabel, a.olabel, a.dst)) for arcs in supervisor.out_arcs]
    seen = set()

    def dfs(q, k):
        if (q, k) in seen:
            return None
        seen.add((q, k))
        if k == len(word) and q in supervisor.finals:
            return ()
        for a in order[q]:
            if a.ilabel == EPS:
                k2 = k
            elif k < len(word) and word[k] == a.ilabel:
                k2 = k + 1
            else:
                continue
            rest = dfs(a.dst, k2)
            if rest is not None:
                return ((a.olabel,) if a.olabel != EPS else ()) + rest
        return None

    return dfs(supervisor.initial, 0)
