"""Scheduling case study: n players, each needing m tasks served in index order."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Optional

from .fst import Arc, Fst
from .synthesis import DesiredLanguage, SynthesisReport, synth_both
from .symbols import EPS, SymbolTable


@dataclass(frozen=True)
class SchedulingInstance:
    players: int
    tasks_per_player: int

    def __post_init__(self):
        if self.players < 1 or self.tasks_per_player < 1:
            raise ValueError("players and tasks_per_player must be positive")

    @property
    def syms(self) -> SymbolTable:
        # task (i, j) is named t{i}_{j}, i over players, j over task index
        return SymbolTable.from_names(
            f"t{i}_{j}" for i in range(1, self.players + 1) for j in range(1, self.tasks_per_player + 1)
        )

    def task(self, i: int, j: int) -> int:
        return self.syms.id(f"t{i}_{j}")

    @property
    def desired_state_count(self) -> int:
        return (self.tasks_per_player + 1) ** self.players


def gen_plant(inst: SchedulingInstance) -> Fst:
    syms = inst.syms
    return Fst(1, 0, syms, syms, tuple(Arc(0, x, x, 0) for x in syms.symbols), frozenset({0}))


def gen_desired(inst: SchedulingInstance) -> DesiredLanguage:
    """Product of one chain per player; a state records how many tasks each player has done."""
    n, m = inst.players, inst.tasks_per_player
    radix = m + 1
    count = radix ** n
    ids = [[inst.task(i, j) for j in range(1, m + 1)] for i in range(1, n + 1)]
    arcs = []
    for q in range(count):
        rest = q
        for i in range(n):
            done = rest % radix
            rest //= radix
            if done < m:
                x = ids[i][done]
                arcs.append(Arc(q, x, x, q + radix ** i))
    syms = inst.syms
    aut = Fst(count, 0, syms, syms, tuple(arcs), frozenset(range(count)))
    # every state is final and reachable, so the language is prefix-closed by construction
    return DesiredLanguage(aut, check=False)


def gen_sensor_attack(inst: SchedulingInstance) -> Fst:
    """Erase every task of player 1."""
    syms = inst.syms
    arcs = []
    for x in syms.symbols:
        out = EPS if syms.name(x).startswith("t1_") else x
        arcs.append(Arc(0, x, out, 0))
    return Fst(1, 0, syms, syms, tuple(arcs), frozenset({0}))


def gen_actuator_attack(inst: SchedulingInstance) -> Fst:
    """Identity hub plus, per task index j, a loop that may rotate t1_j ... tn_j to t2_j ... tn_j t1_j."""
    n, m = inst.players, inst.tasks_per_player
    syms = inst.syms
    arcs = [Arc(0, x, x, 0) for x in syms.symbols]
    num = 1
    if n > 1:
        for j in range(1, m + 1):
            chain = [0] + list(range(num, num + n - 1)) + [0]
            num += n - 1
            for i in range(1, n + 1):
                nxt = inst.task(i % n + 1, j)
                arcs.append(Arc(chain[i - 1], inst.task(i, j), nxt, chain[i]))
    return Fst(num, 0, syms, syms, tuple(arcs), frozenset({0}))


@dataclass
class BenchRecord:
    n: int
    m: int
    desired_state_count: int
    synth_time: float = 0.0          # mean seconds per synthesis
    peak_transition_count: int = 0
    controllable: Optional[bool] = None
    skipped: bool = False

    def tsv(self) -> str:
        if self.skipped:
            return f"{self.n}\t{self.m}\t{self.desired_state_count}\tskipped\tskipped"
        return (f"{self.n}\t{self.m}\t{self.desired_state_count}\t"
                f"{self.synth_time * 1000:.3f}\t{self.peak_transition_count}")


TSV_HEADER = "n\tm\tstates\ttime_ms_mean\tpeak_transitions"


def synthesize(inst: SchedulingInstance, drop_plant_inverse: bool = True,
               check_assumptions: bool = False) -> SynthesisReport:
    return synth_both(gen_plant(inst), gen_actuator_attack(inst), gen_sensor_attack(inst),
                      gen_desired(inst), check_assumptions=check_assumptions,
                      drop_plant_inverse=drop_plant_inverse)


def run_benchmark(rows: Iterable[tuple], repetitions: int = 1,
                  state_budget: int = 10 ** 4) -> list:
    """Time synthesis for each (n, m) row; rows above the state budget are skipped."""
    records = []
    for n, m in rows:
        inst = SchedulingInstance(n, m)
        rec = BenchRecord(n, m, inst.desired_state_count)
        if rec.desired_state_count > state_budget:
            rec.skipped = True
            records.append(rec)
            continue
        total = 0.0
        report = None
        for _ in range(max(1, repetitions)):
            t0 = time.perf_counter()
            report = synthesize(inst)
            total += time.perf_counter() - t0
        rec.synth_time = total / max(1, repetitions)
        rec.peak_transition_count = report.peak_transitions
        rec.controllable = report.controllable
        if not report.controllable:
            raise RuntimeError(f"scheduling instance n={n}, m={m} reported not controllable")
        records.append(rec)
    return records


def parse_rows(spec: str) -> list:
    """Rows as ``m:n`` pairs, comma separated (tasks first, as in the benchmark table)."""
    rows = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        m, _, n = item.partition(":")
        rows.append((int(n), int(m)))
    return rows
