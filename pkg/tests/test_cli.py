import json

import pytest

from energysched import cli
from energysched.instance import GeneratorConfig, generate, save


@pytest.fixture
def inst_path(tmp_path):
    path = tmp_path / "inst.json"
    save(generate(11, 3, 2, GeneratorConfig(edge_density=0.4)), path)
    return str(path)


def run_cli(capsys, *argv):
    rc = cli.main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_gen_stdout_roundtrips(capsys):
    rc, out, _ = run_cli(capsys, "gen", "--seed", "3", "--n", "4", "--m", "2")
    assert rc == 0
    data = json.loads(out)
    assert len(data["jobs"]) == 4
    assert len(data["speeds"]) == 2


def test_gen_is_seed_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "gen", "--seed", "5", "--n", "3", "--m", "2")
    _, out2, _ = run_cli(capsys, "gen", "--seed", "5", "--n", "3", "--m", "2")
    assert out1 == out2


def test_gen_to_file(tmp_path, capsys):
    path = tmp_path / "g.json"
    rc, out, err = run_cli(capsys, "gen", "--seed", "1", "--n", "2", "--m", "2",
                           "--out", str(path))
    assert rc == 0
    assert out == ""
    assert str(path) in err
    assert len(json.loads(path.read_text())["jobs"]) == 2


def test_solve_reports_schedule_and_ratio(inst_path, capsys):
    rc, out, _ = run_cli(capsys, "solve", inst_path, "--pretty")
    assert rc == 0
    data = json.loads(out)
    assert sorted(data["jobs"].keys(), key=int) == ["1", "2", "3"]
    assert data["report"]["ratio_vs_lp"] >= 1.0 - 1e-9
    assert data["report"]["ratio_vs_lp"] <= data["report"]["theoretical_bound"] + 1e-9
    assert data["cost"]["total"] == pytest.approx(
        data["cost"]["energy"] + data["cost"]["scheduling"])


def test_solve_with_oracle_flag(inst_path, capsys):
    rc, out, _ = run_cli(capsys, "solve", inst_path, "--oracle")
    data = json.loads(out)
    assert rc == 0
    assert data["report"]["oracle_cost"] <= data["cost"]["total"] + 1e-9
    assert data["report"]["ratio_vs_oracle"] >= 1.0 - 1e-9


def test_solve_alpha_override(inst_path, capsys):
    _, out_default, _ = run_cli(capsys, "solve", inst_path)
    _, out_alpha, _ = run_cli(capsys, "solve", inst_path, "--alpha", "0.3")
    assert json.loads(out_default)["report"]["alpha"] == pytest.approx(0.5)
    assert json.loads(out_alpha)["report"]["alpha"] == pytest.approx(0.3)


def test_oracle_subcommand_matches_solve_oracle(inst_path, capsys):
    _, out_solve, _ = run_cli(capsys, "solve", inst_path, "--oracle")
    _, out_exact, _ = run_cli(capsys, "oracle", inst_path)
    assert json.loads(out_exact)["cost"] == pytest.approx(
        json.loads(out_solve)["report"]["oracle_cost"])


def test_oracle_cap_error_exit_code(inst_path, capsys):
    rc, _, err = run_cli(capsys, "oracle", inst_path, "--n-cap", "2")
    assert rc == 2
    assert "error:" in err


def test_bench_deterministic_and_bound_clean(capsys):
    argv = ["bench", "--seed", "9", "--count", "6", "--n", "4", "--m", "2",
            "--vary-n", "--oracle"]
    rc, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    assert rc == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["aggregate"]["count"] == 6
    assert data["aggregate"]["bound_violations"] == 0
    assert data["aggregate"]["max_ratio_vs_oracle"] >= 1.0 - 1e-9


def test_lp_dump_to_file(inst_path, tmp_path, capsys):
    path = tmp_path / "model.lp"
    rc, out, _ = run_cli(capsys, "lp-dump", inst_path, "--out", str(path))
    assert rc == 0
    text = path.read_text()
    assert text.startswith("minimize")
    assert "assign_1:" in text


def test_missing_instance_file_exit_code(capsys):
    rc, _, err = run_cli(capsys, "solve", "/nonexistent/file.json")
    assert rc == 2
    assert "error:" in err


def test_malformed_instance_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"jobs": "nope"}')
    rc, _, err = run_cli(capsys, "solve", str(bad))
    assert rc == 2
    assert "error:" in err
