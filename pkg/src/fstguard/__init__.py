"""Finite-state transducers for modelling attacks on discrete-event systems and
synthesizing supervisors that withstand them."""
from .symbols import EPS, EPS_NAME, SymbolTable
from .fst import (AlphabetMismatch, Arc, Fst, UnsupportedLabelError, Verdict, acceptor, canonicalize,
                  empty_fst, make_fst, normalize, rm_epsilon, trim, universal, word_acceptor)
from .textio import FormatError, read_fst, read_symbols, to_dot, write_fst, write_symbols
from .relation import BoundedImage, accepts, accepts_pair, apply, relation_equal_upto, relation_upto
from .automata import (complete, determinize, from_words, intersect, is_prefix_closed,
                       language_equal, language_included, project_input, project_output, words_upto)
from .algebra import CompositionTrace, compose, compose_traced, identity, invert, parallel
from .attacks import (FrequencyCounter, ReplacementRule, deletion_attack, frequency_constrain,
                      identity_attack, injection_attack, injection_removal_attack,
                      projection_attack, replacement_removal_attack, replay_attack)
from .synthesis import (AssumptionError, DesiredLanguage, SynthesisReport, check_controllable_relaxed,
                        filter_fst, minimal_superset, run_deterministic, synth_actuator, synth_both,
                        synth_sensor)
from .closedloop import closed_loop_language_upto, closed_loop_member
from .nonblocking import (DeterminizedMachine, NonblockingReport, check_closed_loop_nonblocking,
                          check_nonblocking, determinize_pairs)

__version__ = "0.1.0"
