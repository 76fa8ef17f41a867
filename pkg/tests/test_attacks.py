import pytest

from fstguard import (FrequencyCounter, ReplacementRule, apply, deletion_attack, frequency_constrain,
                      identity_attack, injection_attack, injection_removal_attack, make_fst,
                      projection_attack, relation_equal_upto, replacement_removal_attack,
                      replay_attack)
from fstguard.relation import accepts_pair

import machines as ref

SYMS = ref.I12
SYMS3 = ref.I123


def test_identity_attack():
    assert apply(identity_attack(SYMS), (1, 2, 1), 4) == {(1, 2, 1)}


def test_projection_keeps_selected_symbols():
    a = projection_attack(SYMS3, ["i1", "i3"])
    assert apply(a, (1, 2, 3, 2), 5) == {(1, 3)}


def test_deletion_any_subset_of_unprotected():
    a = deletion_attack(SYMS3, ["i2"])
    assert apply(a, (1, 2, 3), 4) == {(1, 2, 3), (2, 3), (1, 2), (2,)}


def test_injection_inserts_anywhere():
    a = injection_attack(SYMS, ["i2"])
    assert apply(a, (1,), 3) == {(1,), (2, 1), (1, 2), (2, 2, 1), (2, 1, 2), (1, 2, 2)}


def test_replacement_rule():
    rule = ReplacementRule.with_defaults(SYMS, {"i1": {"i1", "i2", None}})
    a = replacement_removal_attack(rule)
    assert apply(a, (1, 2), 3) == {(1, 2), (2, 2), (2,)}


def test_replacement_rule_rejects_unknown():
    with pytest.raises((ValueError, KeyError)):
        ReplacementRule.with_defaults(SYMS, {"zz": {"i1"}})


def test_injection_removal():
    a = injection_removal_attack(SYMS3, ["i3"])
    assert apply(a, (3,), 2) == {(), (3,), (3, 3)}
    assert apply(a, (1,), 2) >= {(1,), (3, 1), (1, 3)}
    assert not accepts_pair(a, (1,), ())


class TestReplay:
    def test_matches_hand_machine(self):
        assert relation_equal_upto(replay_attack(SYMS, 2), ref.replay2_by_hand(), 4)

    def test_short_inputs_pass_through(self):
        a = replay_attack(SYMS, 2)
        for w in [(), (1,), (2,), (1, 2), (2, 2)]:
            assert w in apply(a, w, len(w))

    def test_memory_one_repeats_first(self):
        a = replay_attack(SYMS, 1)
        assert apply(a, (2, 1, 1), 3) == {(2, 2, 2)}

    def test_lengths_preserved(self):
        a = replay_attack(SYMS, 2)
        for out in apply(a, (1, 2, 1, 2, 2), 6):
            assert len(out) == 5

    def test_memory_must_be_positive(self):
        with pytest.raises(ValueError):
            replay_attack(SYMS, 0)


class TestFrequency:
    def test_ring_shape(self):
        c = FrequencyCounter.cycle("DDE")
        assert c.automaton.num_states == 3

    def test_only_every_third_symbol_rewritten(self):
        swap = make_fst(SYMS, SYMS, [(0, "i1", "i2", 0), (0, "i2", "i1", 0)], {0})
        f = frequency_constrain(swap, FrequencyCounter.cycle("DDE"))
        assert apply(f, (1, 1, 1, 1, 1, 1), 6) == {(1, 1, 2, 1, 1, 2)}

    def test_all_enabled_is_the_attack(self):
        a = ref.any_i1_attack()
        assert relation_equal_upto(frequency_constrain(a, FrequencyCounter.cycle("E")), a, 4)

    def test_all_disabled_is_identity(self):
        a = ref.any_i1_attack()
        f = frequency_constrain(a, FrequencyCounter.cycle("D"))
        assert relation_equal_upto(f, identity_attack(SYMS), 4)

    def test_injection_respects_counter(self):
        inj = injection_attack(SYMS, ["i2"])
        f = frequency_constrain(inj, FrequencyCounter.cycle("DE"))
        # injection at step 0 is blocked (counter on D), allowed once the counter reaches E
        assert (2, 1) not in apply(f, (1,), 2)
        assert (1, 2, 1) in apply(f, (1, 1), 3)

    def test_bad_patterns(self):
        with pytest.raises(ValueError):
            FrequencyCounter.cycle("DXE")
        with pytest.raises(ValueError):
            FrequencyCounter.cycle("")
