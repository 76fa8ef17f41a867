"""Command-line front end.

Exit codes: 0 success (or verdict holds), 1 verdict fails, 2 usage or input error.
FST files use the tab-separated text format; ``-`` reads standard input.
Without ``--symbols`` one shared symbol table is inferred from every input file.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import algebra, attacks, automata, casestudy, closedloop, nonblocking, synthesis
from .fst import AlphabetMismatch, Fst, canonicalize, trim
from .relation import apply, relation_equal_upto
from .symbols import SymbolTable
from .textio import FormatError, infer_symbols, read_fst, read_symbols, to_dot, write_fst, write_symbols


class UsageError(Exception):
    pass


class Context:
    """Loads FST files against one shared symbol table."""

    def __init__(self, args):
        self.args = args
        self.texts: dict = {}
        self._syms: Optional[SymbolTable] = None

    def text(self, path: str) -> str:
        if path not in self.texts:
            if path == "-":
                self.texts[path] = sys.stdin.read()
            else:
                try:
                    self.texts[path] = Path(path).read_text(encoding="utf-8")
                except OSError as e:
                    raise UsageError(f"cannot read {path}: {e.strerror}") from None
        return self.texts[path]

    def syms(self, paths: Sequence[str] = ()) -> SymbolTable:
        if self._syms is None:
            sym_path = getattr(self.args, "symbols", None)
            if sym_path:
                try:
                    self._syms = read_symbols(Path(sym_path).read_text(encoding="utf-8"))
                except OSError as e:
                    raise UsageError(f"cannot read {sym_path}: {e.strerror}") from None
            elif getattr(self.args, "alphabet", None):
                self._syms = SymbolTable.from_names(_names(self.args.alphabet))
            else:
                self._syms = infer_symbols(self.text(p) for p in paths)
        return self._syms

    def load(self, *paths: str) -> list:
        paths = [p for p in paths if p is not None]
        syms = self.syms(paths)
        out = []
        for p in paths:
            try:
                out.append(read_fst(self.text(p), syms, syms))
            except FormatError as e:
                raise UsageError(f"{p}: {e}") from None
        return out


def _names(spec: Optional[str]) -> list:
    if not spec:
        return []
    return [s for s in spec.replace(",", " ").split() if s]


def _emit(args, fst: Fst) -> None:
    text = write_fst(canonicalize(fst))
    out = getattr(args, "output", None)
    if out and out != "-":
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _word(syms: SymbolTable, spec: str) -> tuple:
    try:
        return syms.encode(spec.replace(",", " "))
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None


def _show(syms: SymbolTable, word) -> str:
    return syms.decode(word) if word else "<eps>"


# -- machine algebra ---------------------------------------------------------

def cmd_compose(args, ctx) -> int:
    machines = ctx.load(*args.fsts)
    if len(machines) < 2:
        raise UsageError("compose needs at least two machines")
    _emit(args, algebra.compose_all(*machines))
    return 0


def cmd_invert(args, ctx) -> int:
    (a,) = ctx.load(args.fst)
    _emit(args, algebra.invert(a))
    return 0


def cmd_parallel(args, ctx) -> int:
    machines = ctx.load(*args.fsts)
    _emit(args, algebra.parallel_all(machines))
    return 0


def cmd_determinize(args, ctx) -> int:
    (a,) = ctx.load(args.fst)
    if not a.is_acceptor:
        raise UsageError("determinize expects an identity-labelled automaton (use project first)")
    out = automata.minimize(a) if args.minimize else trim(automata.determinize(a))
    _emit(args, out)
    return 0


def cmd_trim(args, ctx) -> int:
    (a,) = ctx.load(args.fst)
    _emit(args, trim(a))
    return 0


def cmd_project(args, ctx) -> int:
    (a,) = ctx.load(args.fst)
    _emit(args, automata.project_input(a) if args.side == "in" else automata.project_output(a))
    return 0


def cmd_run(args, ctx) -> int:
    (a,) = ctx.load(args.fst)
    word = _word(a.isyms, args.input)
    image = apply(a, word, args.max_len)
    for out in sorted(image, key=lambda w: (len(w), w)):
        print(_show(a.osyms, out))
    if image.truncated:
        print(f"# truncated: outputs longer than {args.max_len} exist", file=sys.stderr)
    return 0 if image else 1


def cmd_dot(args, ctx) -> int:
    (a,) = ctx.load(args.fst)
    sys.stdout.write(to_dot(canonicalize(a), args.name))
    return 0


def cmd_symbols(args, ctx) -> int:
    sys.stdout.write(write_symbols(ctx.syms(args.fsts)))
    return 0


# -- attacks -----------------------------------------------------------------

def _parse_rule(syms: SymbolTable, spec: str) -> attacks.ReplacementRule:
    overrides = {}
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        src, sep, images = part.partition(":")
        if not sep:
            raise UsageError(f"bad rule item {part!r}; expected sym:img1,img2")
        overrides[src.strip()] = {s.strip() for s in images.split(",") if s.strip()} or {"<eps>"}
    try:
        return attacks.ReplacementRule.with_defaults(syms, overrides)
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None


def cmd_attack(args, ctx) -> int:
    kind = args.kind
    if kind == "freq":
        if not args.inner:
            raise UsageError("attack freq needs --inner")
        paths = [args.inner]
        (inner,) = ctx.load(*paths)
        if args.counter:
            (counter_fst,) = [read_fst(ctx.text(args.counter))]
            counter = attacks.FrequencyCounter(counter_fst)
        else:
            counter = attacks.FrequencyCounter.cycle(args.pattern or "DDE")
        _emit(args, attacks.frequency_constrain(inner, counter))
        return 0
    syms = ctx.syms([])
    if len(syms) < 2:
        raise UsageError("attack builders need --symbols or --alphabet")
    try:
        if kind == "identity":
            fst = attacks.identity_attack(syms)
        elif kind == "projection":
            fst = attacks.projection_attack(syms, _names(args.keep))
        elif kind == "deletion":
            fst = attacks.deletion_attack(syms, _names(args.protected))
        elif kind == "injection":
            fst = attacks.injection_attack(syms, _names(args.injectable))
        elif kind == "replace":
            fst = attacks.replacement_removal_attack(_parse_rule(syms, args.rule or ""))
        elif kind == "injrem":
            fst = attacks.injection_removal_attack(syms, _names(args.vulnerable))
        elif kind == "replay":
            fst = attacks.replay_attack(syms, args.n)
        else:  # pragma: no cover - argparse restricts choices
            raise UsageError(f"unknown attack {kind}")
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None
    _emit(args, fst)
    return 0


# -- synthesis ---------------------------------------------------------------

def cmd_filter(args, ctx) -> int:
    machines = ctx.load(args.desired, args.plant)
    desired = synthesis.DesiredLanguage(machines[0])
    plant_lang = automata.project_input(machines[1]) if args.plant else None
    _emit(args, synthesis.filter_fst(desired, plant_lang, total=not args.trimmed))
    return 0


def cmd_synth(args, ctx) -> int:
    mode = args.mode
    need_s = mode in ("sensor", "both")
    need_a = mode in ("actuator", "both")
    if need_s and not args.attack_s:
        raise UsageError(f"synth {mode} needs --attack-s")
    if need_a and not args.attack_a:
        raise UsageError(f"synth {mode} needs --attack-a")
    plant, desired_fst, *rest = ctx.load(args.plant, args.desired,
                                         args.attack_s if need_s else None,
                                         args.attack_a if need_a else None)
    sensor_atk = rest.pop(0) if need_s else None
    act_atk = rest.pop(0) if need_a else None
    desired = synthesis.DesiredLanguage(desired_fst)
    check = not args.no_check
    if mode == "sensor":
        report = synthesis.synth_sensor(plant, sensor_atk, desired, check_assumptions=check)
    elif mode == "actuator":
        report = synthesis.synth_actuator(plant, act_atk, desired, check_assumptions=check,
                                          total_filter=args.total_filter,
                                          drop_plant_inverse=args.drop_plant_inverse)
    else:
        report = synthesis.synth_both(plant, act_atk, sensor_atk, desired, check_assumptions=check,
                                      total_filter=args.total_filter,
                                      drop_plant_inverse=args.drop_plant_inverse)
    _emit(args, report.supervisor)
    print(report.summary(), file=sys.stderr if args.output in (None, "-") else sys.stdout)
    if report.witness is not None:
        msg = f"witness: {_show(desired.syms, report.witness)}"
        print(msg, file=sys.stderr if args.output in (None, "-") else sys.stdout)
    if args.superset:
        Path(args.superset).write_text(write_fst(canonicalize(report.minimal_superset)), encoding="utf-8")
    return 0 if report.controllable else 1


# -- checks ------------------------------------------------------------------

def _verdict(ok: bool, label: str, witness: Optional[str] = None) -> int:
    print(label if ok else f"not {label}")
    if not ok and witness is not None:
        print(f"witness: {witness}")
    return 0 if ok else 1


def cmd_check(args, ctx) -> int:
    what = args.what
    if what == "controllable":
        plant, act_atk, goal = ctx.load(args.plant, args.attack_a, args.desired)
        desired = synthesis.DesiredLanguage(goal)
        if args.relaxed:
            v = synthesis.check_controllable_relaxed(act_atk, plant, desired)
        else:
            sup = synthesis.minimal_superset(desired, act_atk)
            v = automata.language_included(sup, desired.automaton)
        return _verdict(v.holds, "controllable", _show(desired.syms, v.witness) if not v else None)
    if what == "nonblocking":
        fst, rel = ctx.load(args.fst, args.relation)
        rep = nonblocking.check_nonblocking(fst, rel)
        return _report_nonblocking(rep, fst)
    if what == "loop-nonblocking":
        mode = args.mode
        plant, sup, *rest = ctx.load(args.plant, args.supervisor,
                                     args.attack_s if mode in ("sensor", "both") else None,
                                     args.attack_a if mode in ("actuator", "both") else None,
                                     args.relation)
        sensor_atk = rest.pop(0) if mode in ("sensor", "both") else None
        act_atk = rest.pop(0) if mode in ("actuator", "both") else None
        rel = rest.pop(0) if args.relation else None
        loop = nonblocking.loop_machine(plant, sensor_atk, act_atk, mode)
        rep = nonblocking.check_closed_loop_nonblocking(plant, sensor_atk, act_atk, sup, mode, relation=rel)
        return _report_nonblocking(rep, loop)
    if what == "included":
        a, b = ctx.load(args.left, args.right)
        v = automata.language_included(_lang(a), _lang(b))
        return _verdict(v.holds, "included", _show(a.isyms, v.witness) if not v else None)
    if what == "equal":
        a, b = ctx.load(args.left, args.right)
        v = relation_equal_upto(a, b, args.max_len)
        wit = None
        if not v:
            i, o = v.witness
            wit = f"{_show(a.isyms, i)} | {_show(a.osyms, o)}"
        return _verdict(v.holds, f"equal up to length {args.max_len}", wit)
    if what == "properties":
        return _properties(args)
    raise UsageError(f"unknown check {what}")


def _lang(fst: Fst) -> Fst:
    return fst if fst.is_acceptor else automata.project_input(fst)


def _report_nonblocking(rep, fst: Fst) -> int:
    if rep.nonblocking:
        print("nonblocking")
        return 0
    v = rep.violation
    i, o = rep.witness
    print("blocking")
    print(f"witness: {_show(fst.isyms, i)} | {_show(fst.osyms, o)}")
    subset = "{" + ",".join(str(s) for s in sorted(v.subset)) + "}"
    pi, po = v.pair
    pair = f"({fst.isyms.name(pi)},{fst.osyms.name(po)})"
    print(f"subset: {subset} on {pair}: union {sorted(v.union_successor)} "
          f"vs common {sorted(v.common_successor)}")
    return 1


def _properties(args) -> int:
    """Randomized self-check of core laws; reproducible with --seed."""
    from .generators import alphabet, random_fst
    from .automata import all_words_upto
    rng = random.Random(args.seed)
    syms = alphabet(2, "i")
    failures = 0
    for trial in range(args.trials):
        a = random_fst(rng, syms, max_states=4)
        b = random_fst(rng, syms, max_states=4)
        ab = algebra.compose(a, b)
        for w in all_words_upto(list(syms.symbols), 3):
            chained = set()
            for mid in apply(a, w, 6):
                chained |= apply(b, mid, 6)
            direct = apply(ab, w, 6)
            if {o for o in direct if len(o) <= 4} != {o for o in chained if len(o) <= 4}:
                failures += 1
                print(f"trial {trial}: composition law fails on {_show(syms, w)}")
                break
        if not relation_equal_upto(algebra.invert(algebra.invert(a)), a, 4):
            failures += 1
            print(f"trial {trial}: double inversion differs")
    print(f"{args.trials - failures}/{args.trials} trials passed (seed {args.seed})")
    return 0 if failures == 0 else 1


def cmd_oracle(args, ctx) -> int:
    plant, sup, *rest = ctx.load(args.plant, args.supervisor, args.attack_s, args.attack_a)
    sensor_atk = rest.pop(0) if args.attack_s else None
    act_atk = rest.pop(0) if args.attack_a else None
    words = closedloop.closed_loop_language_upto(plant, sensor_atk, sup, act_atk, args.max_len,
                                                 diagonal=args.diagonal)
    for w in sorted(words, key=lambda w: (len(w), w)):
        print(_show(plant.isyms, w))
    if args.desired:
        (goal,) = ctx.load(args.desired)
        want = automata.words_upto(goal, args.max_len)
        return _verdict(words == want, f"closed loop equals desired up to length {args.max_len}")
    return 0


# -- case study --------------------------------------------------------------

def cmd_casestudy(args, ctx) -> int:
    inst = casestudy.SchedulingInstance(args.n, args.m)
    report = casestudy.synthesize(inst, drop_plant_inverse=not args.keep_plant_inverse,
                                  check_assumptions=True)
    print(f"n={args.n} m={args.m} desired states={inst.desired_state_count} "
          f"{report.summary()}")
    if args.emit_all:
        out = Path(args.emit_all)
        out.mkdir(parents=True, exist_ok=True)
        parts = {
            "plant.fst": casestudy.gen_plant(inst),
            "desired.fst": casestudy.gen_desired(inst).automaton,
            "attack_s.fst": casestudy.gen_sensor_attack(inst),
            "attack_a.fst": casestudy.gen_actuator_attack(inst),
            "supervisor.fst": report.supervisor,
        }
        for name, fst in parts.items():
            (out / name).write_text(write_fst(canonicalize(fst)), encoding="utf-8")
        (out / "symbols.txt").write_text(write_symbols(inst.syms), encoding="utf-8")
        print(f"wrote {len(parts) + 1} files to {out}")
    return 0 if report.controllable else 1


def cmd_bench(args, ctx) -> int:
    rows = casestudy.parse_rows(args.rows)
    if not rows:
        raise UsageError("bench needs at least one row")
    records = casestudy.run_benchmark(rows, args.reps, args.budget)
    lines = [casestudy.TSV_HEADER] + [r.tsv() for r in records]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fstguard", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--symbols", help="shared symbol table file (name<TAB>id)")
    common.add_argument("-o", "--output", help="write the resulting FST here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("compose", cmd_compose, "serial composition of two or more FSTs")
    sp.add_argument("fsts", nargs="+")
    sp = add("invert", cmd_invert, "swap input and output labels")
    sp.add_argument("fst")
    sp = add("parallel", cmd_parallel, "union of relations")
    sp.add_argument("fsts", nargs="+")
    sp = add("determinize", cmd_determinize, "subset construction on an automaton")
    sp.add_argument("fst")
    sp.add_argument("--minimize", action="store_true")
    sp = add("trim", cmd_trim, "drop useless states")
    sp.add_argument("fst")
    sp = add("project", cmd_project, "input or output language as an automaton")
    sp.add_argument("fst")
    sp.add_argument("--side", choices=["in", "out"], default="in")
    sp = add("run", cmd_run, "outputs of an FST on one input word")
    sp.add_argument("fst")
    sp.add_argument("--input", required=True, help='space or comma separated symbols, "" for empty')
    sp.add_argument("--max-len", type=int, default=6)
    sp = add("dot", cmd_dot, "graphviz export")
    sp.add_argument("fst")
    sp.add_argument("--name", default="fst")
    sp = add("symbols", cmd_symbols, "print the symbol table inferred from FST files")
    sp.add_argument("fsts", nargs="+")

    sp = add("attack", cmd_attack, "build an attack FST")
    sp.add_argument("kind", choices=["identity", "projection", "deletion", "injection", "replace",
                                     "injrem", "replay", "freq"])
    sp.add_argument("--alphabet", help="comma separated symbol names (instead of --symbols)")
    sp.add_argument("--keep")
    sp.add_argument("--protected")
    sp.add_argument("--injectable")
    sp.add_argument("--vulnerable")
    sp.add_argument("--rule", help='e.g. "i2:i1;i1:<eps>,i2"')
    sp.add_argument("--n", type=int, default=2, help="replay memory")
    sp.add_argument("--counter", help="frequency counter automaton over D/E")
    sp.add_argument("--pattern", help="frequency counter as a D/E ring, e.g. DDE")
    sp.add_argument("--inner", help="attack to constrain")

    sp = add("filter", cmd_filter, "longest-prefix filter of a desired language")
    sp.add_argument("--desired", required=True)
    sp.add_argument("--plant")
    sp.add_argument("--trimmed", action="store_true", help="identity on the desired language only")

    sp = add("synth", cmd_synth, "synthesize a supervisor")
    sp.add_argument("mode", choices=["sensor", "actuator", "both"])
    sp.add_argument("--plant", required=True)
    sp.add_argument("--desired", required=True)
    sp.add_argument("--attack-s")
    sp.add_argument("--attack-a")
    sp.add_argument("--drop-plant-inverse", action="store_true")
    sp.add_argument("--total-filter", action="store_true")
    sp.add_argument("--no-check", action="store_true", help="skip assumption checks")
    sp.add_argument("--superset", help="write the minimal controllable superset here")

    sp = add("check", cmd_check, "verdict-bearing checks")
    sp.add_argument("what", choices=["controllable", "nonblocking", "loop-nonblocking", "included",
                                     "equal", "properties"])
    sp.add_argument("--plant")
    sp.add_argument("--attack-a")
    sp.add_argument("--attack-s")
    sp.add_argument("--desired")
    sp.add_argument("--supervisor")
    sp.add_argument("--relaxed", action="store_true")
    sp.add_argument("--fst")
    sp.add_argument("--relation")
    sp.add_argument("--mode", choices=["sensor", "actuator", "both"], default="both")
    sp.add_argument("--left")
    sp.add_argument("--right")
    sp.add_argument("--max-len", type=int, default=6)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("oracle", cmd_oracle, "bounded closed-loop language")
    sp.add_argument("--plant", required=True)
    sp.add_argument("--supervisor", required=True)
    sp.add_argument("--attack-s")
    sp.add_argument("--attack-a")
    sp.add_argument("--desired")
    sp.add_argument("--max-len", type=int, default=6)
    sp.add_argument("--diagonal", action="store_true")

    sp = add("casestudy", cmd_casestudy, "scheduling instance")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--emit-all", metavar="DIR")
    sp.add_argument("--keep-plant-inverse", action="store_true")

    sp = add("bench", cmd_bench, "scaling benchmark")
    sp.add_argument("--rows", default="9:2,9:3", help="m:n pairs, comma separated")
    sp.add_argument("--reps", type=int, default=1)
    sp.add_argument("--budget", type=int, default=10 ** 4, help="skip rows with more desired states")
    sp.add_argument("--out")
    return p


_REQUIRED = {
    ("check", "controllable"): ("plant", "attack_a", "desired"),
    ("check", "nonblocking"): ("fst", "relation"),
    ("check", "loop-nonblocking"): ("plant", "supervisor"),
    ("check", "included"): ("left", "right"),
    ("check", "equal"): ("left", "right"),
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    key = (args.command, getattr(args, "what", None))
    missing = [f"--{n.replace('_', '-')}" for n in _REQUIRED.get(key, ()) if not getattr(args, n)]
    if missing:
        print(f"error: {' '.join(key)} needs {', '.join(missing)}", file=sys.stderr)
        return 2
    ctx = Context(args)
    try:
        return args.func(args, ctx)
    except (UsageError, FormatError, AlphabetMismatch, synthesis.AssumptionError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
