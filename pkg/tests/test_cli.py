import json

import pytest

from hamlab.cli import main
from hamlab.digraph import serialize, write
from hamlab.families import complete_bipartite, directed_cycle, phi_maximal


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, D in (("c5", directed_cycle(5)), ("phi", phi_maximal(8, 6)), ("k23", complete_bipartite(2, 3))):
        p = tmp_path / f"{name}.dg"
        write(D, p)
        paths[name] = str(p)
    return paths


def test_verify_factor_report(tmp_path, capsys):
    report = tmp_path / "r.json"
    assert main(["verify", "--theorem", "factor-1.4", "--n", "4", "--mode", "exhaustive", "--report", str(report)]) == 0
    assert json.loads(report.read_text())["digraphs_examined"] == 4096


def test_check_condition(files, capsys):
    assert main(["check", "--input", files["c5"], "--condition", "meyniel"]) == 0
    out = capsys.readouterr().out
    assert "meyniel: violated" in out and "d(0) + d(2) = 4 < 9" in out
    assert main(["check", "--input", files["phi"], "--condition", "condition_m"]) == 0
    assert "condition_m: satisfied" in capsys.readouterr().out


def test_check_all_conditions(files, capsys):
    assert main(["check", "--input", files["phi"]]) == 0
    out = capsys.readouterr().out
    assert "meyniel: satisfied" in out and "strong: True" in out


def test_unknown_theorem_exit_2(capsys):
    assert main(["verify", "--theorem", "no-such-id", "--n", "4"]) == 2
    assert "unknown theorem id" in capsys.readouterr().err


def test_usage_errors(files, tmp_path, capsys):
    assert main([]) == 2
    assert main(["solve"]) == 2
    assert main(["check", "--input", str(tmp_path / "missing.dg")]) == 2
    bad = tmp_path / "bad.dg"
    bad.write_text("DG 2\n11\n00\n")
    assert main(["check", "--input", str(bad)]) == 2
    assert "loop at vertex 0" in capsys.readouterr().err
    assert main(["verify", "--theorem", "meyniel-1.8", "--n", "6"]) == 2
    assert main(["verify", "--theorem", "meyniel-1.8", "--n", "6", "--mode", "sampled"]) == 2
    assert main(["check", "--input", files["c5"], "--condition", "bogus"]) == 2


def test_solve_tasks(files, capsys):
    assert main(["solve", "--input", files["phi"]]) == 0
    assert capsys.readouterr().out.strip() == "0 7 6 5 4 3 2 1"
    assert main(["solve", "--input", files["c5"], "--task", "pair", "--pair", "0", "2"]) == 0
    assert capsys.readouterr().out.strip() == "0 1 2 3 4"
    assert main(["solve", "--input", files["c5"], "--task", "longest", "--avoiding", "3"]) == 0
    assert capsys.readouterr().out.strip() == "none"
    assert main(["solve", "--input", files["phi"], "--task", "profile", "--dp-threshold", "0"]) == 0
    assert "missing [6]" in capsys.readouterr().out
    assert main(["solve", "--input", files["c5"], "--task", "pair"]) == 2


def test_factor_command(files, capsys):
    assert main(["factor", "--input", files["c5"]]) == 0
    assert capsys.readouterr().out.strip() == "0 1 2 3 4"
    assert main(["factor", "--input", files["k23"]]) == 0
    out = capsys.readouterr().out
    assert "Y: 2 3 4" in out and "Z: 0 1" in out


def test_generate(tmp_path, capsys):
    assert main(["generate", "phi:n=8,m=6"]) == 0
    assert capsys.readouterr().out == serialize(phi_maximal(8, 6))
    assert main(["generate", "phi:n=8,m=3"]) == 2
    out = tmp_path / "k.dg"
    assert main(["generate", "complete_bipartite:a=3,b=3", "--out", str(out)]) == 0
    assert out.read_text() == serialize(complete_bipartite(3, 3))


def test_vacuity_warning(capsys):
    assert main(["verify", "--theorem", "twocycle-3.7", "--n", "3", "--n-max", "4"]) == 0
    assert capsys.readouterr().out.count("WARNING: vacuous run") == 2


def test_explore_remark_exit_and_files(tmp_path, capsys):
    assert main(["explore", "--problem", "remark", "--n", "5", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "remark-5.dg").exists()


def test_explore_sharpness(tmp_path, capsys):
    report = tmp_path / "s.json"
    assert main(["explore", "--problem", "sharpness", "--n", "5", "--report", str(report)]) == 0
    assert len(json.loads(report.read_text())["sharpness_exhibits"]) == 1


def test_failures_give_exit_1(tmp_path, capsys, monkeypatch):
    # swap in the remark search case so that a run has failures to report
    from hamlab import registry

    monkeypatch.setitem(registry.REGISTRY, "factor-1.4", registry.REMARK_CASE)
    monkeypatch.setattr("hamlab.cli.THEOREM_IDS", ("factor-1.4",))
    code = main(["verify", "--theorem", "factor-1.4", "--n", "5", "--mode", "complement", "--pair-budget", "1",
                 "--out", str(tmp_path)])
    assert code == 1
    assert "WITNESS" in capsys.readouterr().out and any(tmp_path.iterdir())


def test_explore_117_sampled(tmp_path, capsys):
    report = tmp_path / "p.json"
    args = ["explore", "--n", "7", "--mode", "sampled", "--samples", "300", "--seed", "11", "--report", str(report)]
    assert main(args) in (0, 1)
    assert json.loads(report.read_text())["label"] == "open-problem candidate"
