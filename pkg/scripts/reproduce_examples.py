"""Re-run the worked examples and print each verdict next to the expected one.

Usage: python scripts/reproduce_examples.py
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import machines as ref  # noqa: E402
from fstguard import (DesiredLanguage, closed_loop_language_upto, compose, language_equal,  # noqa: E402
                      check_nonblocking, relation_equal_upto, synth_actuator, synth_both,
                      synth_sensor, words_upto)
from fstguard.casestudy import SchedulingInstance, synthesize  # noqa: E402


def line(name, got, want):
    mark = "ok " if got == want else "BAD"
    print(f"[{mark}] {name}: got {got}, expected {want}")
    return got == want


def main() -> int:
    results = []
    comp = compose(ref.rewriter(), ref.injector())
    results.append(line("composition equals hand product", bool(relation_equal_upto(
        comp, ref.rewriter_then_injector(), 4)), True))

    goal_alt = DesiredLanguage(ref.alternating_desired())
    sen = synth_sensor(ref.echo_i2_plant(), ref.swap_sensor_attack(), goal_alt)
    results.append(line("sensor supervisor", bool(relation_equal_upto(
        sen.supervisor, ref.alternating_supervisor(), 6)), True))
    loop = closed_loop_language_upto(ref.echo_i2_plant(), ref.swap_sensor_attack(), sen.supervisor, None, 6)
    results.append(line("sensor closed loop", loop == words_upto(ref.alternating_desired(), 6), True))

    k = DesiredLanguage(ref.short_desired())
    a1 = synth_actuator(ref.free_plant(), ref.first_i1_attack(), k)
    a2 = synth_actuator(ref.free_plant(), ref.any_i1_attack(), k)
    results.append(line("actuator case I controllable", a1.controllable, True))
    results.append(line("actuator case II controllable", a2.controllable, False))
    results.append(line("actuator case II superset", bool(language_equal(
        a2.minimal_superset, ref.wide_desired())), True))

    b1 = synth_both(ref.free_plant(), ref.first_i1_attack(), ref.drop_i2_sensor_attack(), k)
    b2 = synth_both(ref.free_plant(), ref.any_i1_attack(), ref.all_to_i2_sensor_attack(), k)
    results.append(line("both case I controllable", b1.controllable, True))
    results.append(line("both case II controllable", b2.controllable, False))
    results.append(line("both case I supervisor", bool(relation_equal_upto(
        b1.supervisor, ref.both_supervisor_first(), 5)), True))

    nb = check_nonblocking(ref.branching_plant(), ref.branching_plant())
    results.append(line("branching plant nonblocking", nb.nonblocking, False))
    if nb.violation is not None:
        print(f"      blocking subset {sorted(nb.violation.subset)} on pair {nb.violation.pair}")

    cs = synthesize(SchedulingInstance(2, 2))
    results.append(line("schedule (2,2) supervisor", bool(relation_equal_upto(
        cs.supervisor, ref.schedule_supervisor(), 4)), True))
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
