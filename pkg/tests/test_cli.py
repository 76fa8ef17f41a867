import pytest

from fstguard import canonicalize, read_fst, relation_equal_upto, write_fst, write_symbols
from fstguard.cli import main

import machines as ref


@pytest.fixture
def files(tmp_path):
    def put(name, fst):
        path = tmp_path / name
        path.write_text(write_fst(canonicalize(fst)))
        return str(path)
    return put


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compose(capsys, files):
    a, b = files("a.fst", ref.rewriter()), files("b.fst", ref.injector())
    code, out, _ = run(capsys, "compose", a, b)
    assert code == 0
    got = read_fst(out, ref.I123)
    assert relation_equal_upto(got, ref.rewriter_then_injector(), 4)


def test_compose_shares_inferred_symbols(capsys, tmp_path):
    # second file mentions a symbol the first does not
    (tmp_path / "a.fst").write_text("0\t0\tx\tx\n0\n")
    (tmp_path / "b.fst").write_text("0\t0\tx\ty\n0\n")
    code, out, _ = run(capsys, "compose", str(tmp_path / "a.fst"), str(tmp_path / "b.fst"))
    assert code == 0 and "x\ty" in out


def test_invert_twice_is_stable(capsys, files, tmp_path):
    path = files("s.fst", ref.swap_sensor_attack())
    _, once, _ = run(capsys, "invert", path)
    (tmp_path / "inv.fst").write_text(once)
    _, twice, _ = run(capsys, "invert", str(tmp_path / "inv.fst"))
    assert twice == write_fst(canonicalize(ref.swap_sensor_attack()))


def test_run(capsys, files):
    path = files("s.fst", ref.swap_sensor_attack())
    code, out, _ = run(capsys, "run", path, "--input", "i2 i2")
    assert code == 0 and out.strip() == "i1 i1"
    code, out, _ = run(capsys, "run", path, "--input", "i1")
    assert code == 1 and out == ""


def test_run_unknown_symbol(capsys, files):
    path = files("s.fst", ref.swap_sensor_attack())
    code, _, err = run(capsys, "run", path, "--input", "zz")
    assert code == 2 and "zz" in err


def test_determinize_rejects_transducer(capsys, files):
    code, _, err = run(capsys, "determinize", files("s.fst", ref.swap_sensor_attack()))
    assert code == 2 and "project" in err


def test_attack_replay(capsys):
    code, out, _ = run(capsys, "attack", "replay", "--alphabet", "i1,i2", "--n", "2")
    assert code == 0
    assert relation_equal_upto(read_fst(out, ref.I12), ref.replay2_by_hand(), 4)


def test_attack_replace_rule(capsys):
    code, out, _ = run(capsys, "attack", "replace", "--alphabet", "i1,i2", "--rule", "i1:i1,i2")
    assert code == 0
    assert relation_equal_upto(read_fst(out, ref.I12), ref.any_i1_attack().replace(
        arcs=tuple(a for a in ref.any_i1_attack().arcs if not (a.ilabel == 2 and a.olabel == 1))), 4)


def test_attack_needs_alphabet(capsys):
    code, _, err = run(capsys, "attack", "identity")
    assert code == 2


def test_synth_both_verdicts(capsys, files, tmp_path):
    plant, desired = files("p.fst", ref.free_plant()), files("desired.fst", ref.short_desired())
    a1, s1 = files("a1.fst", ref.first_i1_attack()), files("s1.fst", ref.drop_i2_sensor_attack())
    code, out, err = run(capsys, "synth", "both", "--plant", plant, "--desired", desired,
                         "--attack-a", a1, "--attack-s", s1)
    assert code == 0 and err.strip() == "controllable"
    assert relation_equal_upto(read_fst(out, ref.I12), ref.both_supervisor_first(), 5)

    a2, s2 = files("a2.fst", ref.any_i1_attack()), files("s2.fst", ref.all_to_i2_sensor_attack())
    sup = tmp_path / "sup.fst"
    code, out, _ = run(capsys, "synth", "both", "--plant", plant, "--desired", desired,
                       "--attack-a", a2, "--attack-s", s2, "-o", str(sup),
                       "--superset", str(tmp_path / "sup_k.fst"))
    assert code == 1
    assert "not controllable" in out and "witness: i1 i1" in out
    assert sup.exists() and (tmp_path / "sup_k.fst").exists()


def test_synth_missing_attack(capsys, files):
    code, _, err = run(capsys, "synth", "sensor", "--plant", files("p.fst", ref.free_plant()),
                       "--desired", files("desired.fst", ref.short_desired()))
    assert code == 2 and "--attack-s" in err


def test_check_controllable(capsys, files):
    args = ["check", "controllable", "--plant", files("p.fst", ref.free_plant()),
            "--desired", files("desired.fst", ref.short_desired())]
    assert run(capsys, *args, "--attack-a", files("a.fst", ref.first_i1_attack()))[0] == 0
    code, out, _ = run(capsys, *args, "--attack-a", files("b.fst", ref.any_i1_attack()))
    assert code == 1 and "witness: i1 i1" in out


def test_check_nonblocking(capsys, files):
    p = files("p.fst", ref.branching_plant())
    code, out, _ = run(capsys, "check", "nonblocking", "--fst", p, "--relation", p)
    assert code == 1
    assert "blocking" in out and "witness: i1 | i3" in out and "subset: {1,2}" in out


def test_check_equal(capsys, files):
    a = files("a.fst", ref.replay2_by_hand())
    code, out, _ = run(capsys, "check", "equal", "--left", a, "--right", a, "--max-len", "3")
    assert code == 0


def test_check_properties(capsys):
    code, out, _ = run(capsys, "check", "properties", "--trials", "5", "--seed", "3")
    assert code == 0 and "5/5" in out


def test_oracle(capsys, files):
    code, out, _ = run(capsys, "oracle", "--plant", files("p.fst", ref.echo_i2_plant()),
                       "--supervisor", files("s.fst", ref.alternating_supervisor()),
                       "--attack-s", files("a.fst", ref.swap_sensor_attack()),
                       "--desired", files("desired.fst", ref.alternating_desired()), "--max-len", "4")
    assert code == 0
    assert out.splitlines()[:3] == ["<eps>", "i1", "i1 i2"]


def test_casestudy_emit(capsys, tmp_path):
    code, out, _ = run(capsys, "casestudy", "--n", "2", "--m", "2", "--emit-all", str(tmp_path / "cs"))
    assert code == 0 and "controllable" in out
    assert (tmp_path / "cs" / "supervisor.fst").exists()


def test_bench(capsys, tmp_path):
    code, out, _ = run(capsys, "bench", "--rows", "2:2", "--out", str(tmp_path / "b.tsv"))
    assert code == 0 and out.startswith("n\tm")
    assert (tmp_path / "b.tsv").read_text() == out


def test_symbols_flag(capsys, files, tmp_path):
    sym = tmp_path / "syms.txt"
    sym.write_text(write_symbols(ref.I123))
    code, out, _ = run(capsys, "symbols", files("a.fst", ref.swap_sensor_attack()), "--symbols", str(sym))
    assert code == 0 and "i3" in out


def test_bad_file(capsys, tmp_path):
    (tmp_path / "bad.fst").write_text("0\t1\ti1\ti1\textra\n")
    code, _, err = run(capsys, "trim", str(tmp_path / "bad.fst"))
    assert code == 2 and "line 1" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "trim", "/nonexistent.fst")
    assert code == 2


def test_unknown_command(capsys):
    assert main(["frobnicate"]) == 2
