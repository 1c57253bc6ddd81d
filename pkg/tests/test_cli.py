import json
import subprocess
import sys

import pytest

from dihedral_hsp import harness
from dihedral_hsp.cli import main
from dihedral_hsp.group import DihedralGroup, reflection_subgroup
from dihedral_hsp.sampler import AMPLITUDE_CAP_ENV


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_reflection(capsys, tmp_path):
    out = tmp_path / "r.csv"
    code, text, _ = run(capsys, "solve", "--n", "32", "--k0", "5", "--trials", "5", "--out", str(out))
    assert code == 0
    summary = json.loads(text)
    assert summary["success_rate"] == 1.0 and summary["trials"] == 5
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(harness.CSV_COLUMNS)
    assert len(lines) == 6
    assert lines[1].split(",")[-1] == ""  # ms blank without --timing


def test_solve_exhaustive_counts_subgroups(capsys):
    code, text, _ = run(capsys, "solve", "--n", "6", "--exhaustive", "--trials", "2")
    assert code == 0
    summary = json.loads(text)
    assert summary["subgroups"] == 16 and summary["trials"] == 32


def test_solve_random_and_gens(capsys):
    assert run(capsys, "solve", "--n", "10", "--random", "--trials", "4")[0] == 0
    code, text, _ = run(capsys, "solve", "--n", "12", "--gens", "4,0;1,1", "--trials", "3")
    assert code == 0 and json.loads(text)["success_rate"] == 1.0


def test_workers_do_not_change_output(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "solve", "--n", "12", "--random", "--trials", "12", "--seed", "4", "--out", str(a))
    run(capsys, "solve", "--n", "12", "--random", "--trials", "12", "--seed", "4", "--workers", "3", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_timing_fills_ms(capsys, tmp_path):
    out = tmp_path / "t.csv"
    run(capsys, "solve", "--n", "8", "--k0", "3", "--timing", "--out", str(out))
    assert float(out.read_text().splitlines()[1].split(",")[-1]) >= 0


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--n", "0", "--k0", "1"],
        ["solve", "--n", "8"],
        ["solve", "--n", "8", "--k0", "9"],
        ["solve", "--n", "8", "--k0", "1", "--trivial"],
        ["solve", "--n", "8", "--random", "--exhaustive"],
        ["solve", "--n", "8", "--k0", "1", "--trials", "0"],
        ["dist", "--n", "4"],
        ["dist", "--n", "4", "--k0", "7"],
        ["peak", "--n", "1"],
        ["peak", "--n", "8", "--k0", "4"],
        ["verify-reps", "--n", "200"],
        ["dump-oracle", "--n", "4"],
    ],
)
def test_bad_specs_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--backend", "gpu"])
    assert exc.value.code == 2


def test_resource_cap_exit_3(capsys, monkeypatch):
    monkeypatch.setenv(AMPLITUDE_CAP_ENV, "10")
    assert run(capsys, "dist", "--n", "8", "--k0", "1", "--compare-backends")[0] == 3


def test_dist_report(capsys, tmp_path):
    dump = tmp_path / "s.csv"
    code, text, _ = run(capsys, "dist", "--n", "4", "--k0", "1", "--compare-backends",
                        "--samples", "2000", "--dump", str(dump))
    assert code == 0
    rep = json.loads(text)
    assert rep["closed_form"] == [[0.25, 0.125, 0.0, 0.125], [0.0, 0.125, 0.25, 0.125]]
    assert rep["total_variation"] < 1e-12
    assert rep["empirical"]["zero_mass_hits"] == 0 and rep["empirical"]["m"] == 2000
    assert json.loads((tmp_path / "s.csv.json").read_text())["k0_or_trivial"] == 1


def test_dist_trivial(capsys):
    code, text, _ = run(capsys, "dist", "--n", "3", "--trivial")
    assert code == 0 and json.loads(text)["k0_or_trivial"] == "trivial"


def test_peak_replay_and_study(capsys):
    code, text, _ = run(capsys, "peak", "--n", "4", "--samples", "0,2,2,0")
    assert code == 0 and json.loads(text)["k_tilde"] == 2
    code, text, _ = run(capsys, "peak", "--n", "16", "--k0", "3", "--trials", "20")
    rep = json.loads(text)
    assert code == 0 and rep["rows"][0]["k0"] == 3 and rep["rows"][0]["success_rate"] >= 0.9


def test_verify_reps(capsys, tmp_path):
    rep = tmp_path / "r.json"
    assert run(capsys, "verify-reps", "--n", "6", "--all-subgroups", "--report", str(rep))[0] == 0
    data = json.loads(rep.read_text())
    assert data["ok"] and len(data["subgroups"]) == 16


def test_verify_reps_failure_exit_4(capsys, monkeypatch):
    from dihedral_hsp import cli

    monkeypatch.setattr(cli, "verify_reps", lambda *a, **k: {"ok": False})
    assert run(capsys, "verify-reps", "--n", "3")[0] == 4


def test_dump_and_replay(capsys, tmp_path):
    dump = tmp_path / "o.txt"
    assert run(capsys, "dump-oracle", "--n", "10", "--k0", "3", "--out", str(dump))[0] == 0
    assert dump.read_text().startswith("dihedral-oracle v1 N=10\n")
    code, text, _ = run(capsys, "solve", "--oracle", str(dump), "--trials", "3")
    assert code == 0 and json.loads(text)["success_rate"] == 1.0
    code, text, _ = run(capsys, "dump-oracle", "--n", "2", "--trivial")
    assert code == 0 and len(text.splitlines()) == 5


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dihedral_hsp", "dist", "--n", "2", "--k0", "1"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["N"] == 2


def test_harness_parsing():
    grp = DihedralGroup(12)
    assert harness.parse_generators("4,0; 1,1", grp) == [(4, 0), (1, 1)]
    with pytest.raises(ValueError):
        harness.parse_generators("1,2", grp)
    assert harness.subgroup_for(grp, k0=3) == reflection_subgroup(3, grp)
    assert harness.subgroup_for(grp, whole=True).order == 24
    with pytest.raises(ValueError):
        harness.subgroup_for(grp)
