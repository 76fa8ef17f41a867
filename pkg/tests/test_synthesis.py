import pytest

from fstguard import (AssumptionError, DesiredLanguage, acceptor, apply, check_controllable_relaxed,
                      compose, filter_fst, identity_attack, language_equal, make_fst,
                      minimal_superset, relation_equal_upto, run_deterministic, synth_actuator,
                      synth_both, synth_sensor, words_upto)
from fstguard.automata import project_output
from fstguard.synthesis import superset_equals_desired

import machines as ref

SYMS = ref.I12


class TestDesiredLanguage:
    def test_rejects_non_prefix_closed(self):
        with pytest.raises(ValueError):
            DesiredLanguage(acceptor(SYMS, [(0, "i1", 1)], {1}))

    def test_rejects_transducer(self):
        with pytest.raises(ValueError):
            DesiredLanguage(ref.swap_sensor_attack())

    def test_model_is_deterministic(self):
        from fstguard.automata import is_deterministic
        goal = DesiredLanguage(acceptor(SYMS, [(0, "i1", 1), (0, "i1", 2)], {0, 1, 2}))
        assert is_deterministic(goal.model())


class TestFilter:
    def test_total_filter_is_longest_prefix(self):
        f = filter_fst(DesiredLanguage(ref.short_desired()), total=True)
        assert relation_equal_upto(f, ref.longest_prefix_filter(), 5)
        assert apply(f, (1, 1, 2), 3) == {(1,)}
        assert apply(f, (2, 2, 2), 3) == {(2, 2)}

    def test_trimmed_filter_is_identity_on_language(self):
        goal = DesiredLanguage(ref.short_desired())
        f = filter_fst(goal, total=False)
        assert apply(f, (1, 2), 2) == {(1, 2)}
        assert apply(f, (1, 1), 2) == set()

    def test_plant_language_checked(self):
        goal = DesiredLanguage(ref.short_desired())
        tiny = acceptor(SYMS, [(0, "i1", 1)], {0, 1})
        with pytest.raises(AssumptionError):
            filter_fst(goal, tiny)


class TestSensor:
    def test_supervisor_matches_reference(self):
        goal = DesiredLanguage(ref.alternating_desired())
        rep = synth_sensor(ref.echo_i2_plant(), ref.swap_sensor_attack(), goal)
        assert rep.controllable
        assert relation_equal_upto(rep.supervisor, ref.alternating_supervisor(), 6)

    def test_attack_must_read_plant_outputs(self):
        goal = DesiredLanguage(ref.alternating_desired())
        with pytest.raises(AssumptionError):
            synth_sensor(ref.echo_i2_plant(), make_fst(SYMS, SYMS, [(0, "i1", "i1", 0)], {0}), goal)

    def test_desired_inside_plant(self):
        plant = make_fst(SYMS, SYMS, [(0, "i2", "i2", 0)], {0})
        with pytest.raises(AssumptionError):
            synth_sensor(plant, identity_attack(SYMS), DesiredLanguage(ref.alternating_desired()))


class TestActuator:
    def test_first_i1_controllable(self):
        goal = DesiredLanguage(ref.short_desired())
        rep = synth_actuator(ref.free_plant(), ref.first_i1_attack(), goal)
        assert rep.controllable and rep.witness is None
        assert relation_equal_upto(rep.supervisor, ref.supervisor_first_i1(), 5)
        assert language_equal(project_output(compose(rep.supervisor, ref.first_i1_attack())),
                              ref.short_desired())

    def test_any_i1_not_controllable(self):
        goal = DesiredLanguage(ref.short_desired())
        rep = synth_actuator(ref.free_plant(), ref.any_i1_attack(), goal)
        assert not rep.controllable and rep.weakly_controllable
        assert rep.witness == (1, 1)
        assert language_equal(rep.minimal_superset, ref.wide_desired())
        assert relation_equal_upto(rep.supervisor, ref.supervisor_any_i1(), 5)
        assert rep.summary() == "not controllable (weakly controllable)"

    def test_superset_contains_desired(self):
        goal = DesiredLanguage(ref.short_desired())
        sup = minimal_superset(goal, ref.any_i1_attack())
        from fstguard import language_included
        assert language_included(ref.short_desired(), sup)

    def test_identity_attack_superset_is_desired(self):
        goal = DesiredLanguage(ref.short_desired())
        rep = synth_actuator(ref.free_plant(), identity_attack(SYMS), goal)
        assert rep.controllable and superset_equals_desired(rep, goal)

    def test_total_filter_keeps_verdict(self):
        goal = DesiredLanguage(ref.short_desired())
        a = synth_actuator(ref.free_plant(), ref.any_i1_attack(), goal, total_filter=True)
        b = synth_actuator(ref.free_plant(), ref.any_i1_attack(), goal)
        assert a.controllable == b.controllable

    def test_relaxed_check(self):
        goal = DesiredLanguage(ref.short_desired())
        assert check_controllable_relaxed(ref.first_i1_attack(), ref.free_plant(), goal)
        assert not check_controllable_relaxed(ref.any_i1_attack(), ref.free_plant(), goal)


class TestBoth:
    def test_case_one(self):
        goal = DesiredLanguage(ref.short_desired())
        rep = synth_both(ref.free_plant(), ref.first_i1_attack(), ref.drop_i2_sensor_attack(), goal)
        assert rep.controllable
        assert relation_equal_upto(rep.supervisor, ref.both_supervisor_first(), 5)

    def test_case_two(self):
        goal = DesiredLanguage(ref.short_desired())
        rep = synth_both(ref.free_plant(), ref.any_i1_attack(), ref.all_to_i2_sensor_attack(), goal)
        assert not rep.controllable

    def test_drop_plant_inverse_same_relation_on_echo_plant(self):
        goal = DesiredLanguage(ref.short_desired())
        a = synth_both(ref.free_plant(), ref.first_i1_attack(), ref.drop_i2_sensor_attack(), goal)
        b = synth_both(ref.free_plant(), ref.first_i1_attack(), ref.drop_i2_sensor_attack(), goal,
                       drop_plant_inverse=True)
        assert relation_equal_upto(a.supervisor, b.supervisor, 5)

    def test_peak_is_positive(self):
        goal = DesiredLanguage(ref.short_desired())
        rep = synth_both(ref.free_plant(), ref.first_i1_attack(), ref.drop_i2_sensor_attack(), goal)
        assert rep.peak_transitions >= len(rep.supervisor.arcs)


class TestRunDeterministic:
    def test_least_path(self):
        sup = ref.supervisor_any_i1()
        assert run_deterministic(sup, (1, 2)) == (1, 1)

    def test_rejects(self):
        assert run_deterministic(ref.supervisor_first_i1(), (2, 1)) is None

    def test_outputs_in_language(self):
        sup = ref.both_supervisor_first()
        words = words_upto(project_output(sup), 3)
        assert run_deterministic(sup, ()) in words


def test_injection_mid_word_is_stricter_than_classical_condition():
    # plant language {eps, u, a, ua}; desired {eps, u, ua}; u may be injected.
    # Appending u to a desired word never leaves the desired language inside the
    # plant, yet injecting u before a turns the supervisor's "a" into "ua" and back,
    # so "a" lands in the minimal superset.
    from fstguard import SymbolTable, injection_attack
    from fstguard.generators import actuator_attack_for
    syms = SymbolTable.from_names(["a", "u"])
    plant = acceptor(syms, [(0, "u", 1), (0, "a", 2), (1, "a", 3)], {0, 1, 2, 3})
    goal = DesiredLanguage(acceptor(syms, [(0, "u", 1), (1, "a", 2)], {0, 1, 2}))
    attack = actuator_attack_for(plant, injection_attack(syms, ["u"]))
    rep = synth_actuator(plant, attack, goal)
    assert not rep.controllable
    assert rep.witness == (1,)
