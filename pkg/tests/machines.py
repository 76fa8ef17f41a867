"""Hand-built reference machines used across the test suite.

Each builder transcribes a small worked example; labels use the i1/i2/i3
alphabet, and the scheduling ones use t{player}_{task}.
"""
from fstguard import SymbolTable, make_fst, acceptor
from fstguard.automata import from_words, prefix_closure

I12 = SymbolTable.from_names(["i1", "i2"])
I123 = SymbolTable.from_names(["i1", "i2", "i3"])
E = None


def rewriter():
    # first i1 becomes i2, later i1s vanish
    return make_fst(I123, I123, [(0, "i1", "i2", 1), (1, "i1", E, 1)], {0, 1})


def injector():
    return make_fst(I123, I123, [(0, E, "i3", 1), (0, "i2", "i1", 1)], {0, 1})


def rewriter_then_injector():
    # states: 0=00, 1=10, 2=01, 3=11; all final
    return make_fst(I123, I123, [
        (0, "i1", "i1", 3), (3, "i1", E, 3), (0, E, "i3", 2), (1, "i1", E, 1), (1, E, "i3", 3),
    ], {0, 1, 2, 3})


def echo_i2_plant():
    return make_fst(I12, I12, [(0, "i1", "i2", 0), (0, "i2", "i2", 0)], {0})


def swap_sensor_attack():
    return make_fst(I12, I12, [(0, "i2", "i1", 0)], {0})


def alternating_desired():
    return acceptor(I12, [(0, "i1", 1), (1, "i2", 0)], {0, 1})


def alternating_supervisor():
    return make_fst(I12, I12, [(0, "i1", "i1", 1), (1, "i1", "i2", 0)], {0, 1})


def free_plant():
    return make_fst(I12, I12, [(0, "i1", "i1", 0), (0, "i2", "i2", 0)], {0})


def short_desired():
    """Prefix closure of (i1 + i2) i2."""
    return acceptor(I12, [(0, "i1", 1), (0, "i2", 1), (1, "i2", 2)], {0, 1, 2})


def wide_desired():
    """Prefix closure of (i1 + i2)(i1 + i2)."""
    return prefix_closure(from_words(I12, [(1, 1), (1, 2), (2, 1), (2, 2)]))


def longest_prefix_filter():
    return make_fst(I12, I12, [
        (0, "i1", "i1", 1), (0, "i2", "i2", 1), (1, "i1", E, 2), (1, "i2", "i2", 2),
        (2, "i1", E, 2), (2, "i2", E, 2),
    ], {0, 1, 2})


def first_i1_attack():
    return make_fst(I12, I12, [
        (0, "i1", "i1", 1), (0, "i1", "i2", 1), (1, "i1", "i1", 1), (1, "i2", "i2", 1),
    ], {0, 1})


def any_i1_attack():
    return make_fst(I12, I12, [
        (0, "i1", "i1", 0), (0, "i1", "i2", 0), (0, "i2", "i1", 0), (0, "i2", "i2", 0),
    ], {0})


def supervisor_first_i1():
    return make_fst(I12, I12, [(0, "i1", "i1", 1), (0, "i2", "i1", 1), (1, "i2", "i2", 2)], {0, 1, 2})


def supervisor_any_i1():
    arcs = [(0, x, y, 1) for x in ("i1", "i2") for y in ("i1", "i2")]
    arcs += [(1, "i2", y, 2) for y in ("i1", "i2")]
    return make_fst(I12, I12, arcs, {0, 1, 2})


def drop_i2_sensor_attack():
    return make_fst(I12, I12, [(0, "i1", "i2", 0), (0, "i2", E, 0)], {0})


def all_to_i2_sensor_attack():
    return make_fst(I12, I12, [(0, "i1", "i2", 0), (0, "i2", "i2", 0)], {0})


def both_supervisor_first():
    return make_fst(I12, I12, [(0, "i2", "i1", 1), (0, E, "i1", 1), (1, E, "i2", 2)], {0, 1, 2})


def replay2_by_hand():
    """Memory-2 replay over {i1, i2}, drawn as one machine with shared start."""
    s, s01, s02, s1, s2, s11, s22, s3, s4 = range(9)
    arcs = [
        (s, "i1", "i1", s1), (s, "i2", "i2", s2), (s, "i1", "i1", s01), (s, "i2", "i2", s02),
        (s01, "i1", "i1", s01), (s01, "i2", "i1", s01),
        (s02, "i1", "i2", s02), (s02, "i2", "i2", s02),
        (s1, "i1", "i1", s3), (s2, "i2", "i2", s4), (s1, "i2", "i2", s11), (s2, "i1", "i1", s22),
        (s3, "i1", "i1", s3), (s3, "i2", "i1", s3), (s4, "i1", "i2", s4), (s4, "i2", "i2", s4),
        (s11, "i1", "i1", s22), (s11, "i2", "i1", s22), (s22, "i1", "i2", s11), (s22, "i2", "i2", s11),
    ]
    return make_fst(I12, I12, arcs, set(range(9)))


def branching_plant():
    return make_fst(I123, I123, [
        (0, "i1", "i3", 1), (0, "i1", "i3", 2), (1, "i2", "i3", 3), (2, "i3", "i3", 3),
    ], {0, 1, 2, 3})


def schedule_syms():
    return SymbolTable.from_names(["t1_1", "t1_2", "t2_1", "t2_2"])


def schedule_rotation_attack():
    T = schedule_syms()
    arcs = [(0, x, x, 0) for x in ("t1_1", "t1_2", "t2_1", "t2_2")]
    arcs += [(0, "t1_1", "t2_1", 1), (1, "t2_1", "t1_1", 0), (0, "t1_2", "t2_2", 2), (2, "t2_2", "t1_2", 0)]
    return make_fst(T, T, arcs, {0})


def schedule_supervisor():
    T = schedule_syms()
    arcs = [
        (0, "t2_1", "t2_1", 3), (3, "t2_2", "t2_2", 6), (0, E, "t1_1", 2), (5, "t2_1", "t2_1", 8),
        (4, E, "t1_2", 8), (4, "t2_2", "t1_2", 7), (6, E, "t1_1", 9), (7, E, "t2_2", 10),
        (1, E, "t2_1", 4), (8, "t2_2", "t2_2", 10), (9, E, "t1_2", 10), (0, "t2_1", "t1_1", 1),
        (2, E, "t1_2", 5), (3, E, "t1_1", 4), (4, "t2_2", "t2_2", 9), (2, "t2_1", "t2_1", 4),
    ]
    return make_fst(T, T, arcs, {0, 2, 3, 4, 5, 6, 8, 9, 10})
