import json

import pytest

from randfa import dfa_io
from randfa.cli import main
from randfa.experiment import ExperimentConfig, format_records, parse_records, run_trials
from randfa.errors import InvalidParameterError
from randfa.minimize import state_complexity
from randfa.reachability import accessibility_spectrum

from test_dfa_io import DSTAR_TEXT


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.dfa", tmp_path / "b.dfa"
    assert run(capsys, "gen", "--n", "1", "--k", "2", "--seed", "7", "--out", str(a))[0] == 0
    assert run(capsys, "gen", "--n", "1", "--k", "2", "--seed", "7", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    d = dfa_io.read_file(a)
    assert d.delta.tolist() == [[0, 0]]


def test_gen_then_minimize(tmp_path, capsys):
    path = tmp_path / "g.dfa"
    run(capsys, "gen", "--n", "100", "--k", "2", "--seed", "3", "--out", str(path))
    code, out, _ = run(capsys, "minimize", str(path))
    rep = json.loads(out)
    assert code == 0 and 1 <= rep["m"] <= rep["r"] <= 100 and rep["excess"] == rep["r"] - rep["m"]


def test_minimize_dstar(tmp_path, capsys):
    path = tmp_path / "dstar.dfa"
    path.write_text(DSTAR_TEXT)
    code, out, _ = run(capsys, "minimize", str(path), "--emit-dfa")
    rep = json.loads(out)
    assert code == 0
    assert (rep["r"], rep["m"], rep["excess"]) == (4, 3, 1)
    assert dfa_io.loads(rep["dfa"]).n == 3


def test_minimize_all_accepting_and_self_loop(tmp_path, capsys):
    path = tmp_path / "acc.dfa"
    path.write_text("dfa 1\n3 2\nstart 0\naccepting 1 1 1\n1 2\n2 0\n0 1\n")
    assert json.loads(run(capsys, "minimize", str(path))[1])["m"] == 1
    path.write_text("dfa 1\n3 2\nstart 0\naccepting 1 0 1\n0 0\n2 0\n0 1\n")
    rep = json.loads(run(capsys, "minimize", str(path))[1])
    assert rep["m"] == 1 and rep["r"] == 1


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.dfa"
    path.write_text("dfa 1\n2 1\nstart 0\naccepting 0 1\n0\n7\n")
    code, _, err = run(capsys, "minimize", str(path))
    assert code == 3 and "line 6" in err


def test_alpha(capsys):
    code, out, _ = run(capsys, "alpha", "--k", "2")
    res = json.loads(out)
    assert code == 0 and round(res["alpha"], 4) == 0.7968
    assert abs(res["lambert_w"] - res["alpha"]) < 1e-10
    code, _, err = run(capsys, "alpha", "--k", "1")
    assert code == 4 and "no positive" in err
    assert run(capsys, "alpha", "--k", "0")[0] == 2


def test_chain(capsys):
    code, out, _ = run(capsys, "chain", "--n", "1", "--k", "2", "--trials", "1")
    res = json.loads(out)
    assert code == 0 and res["tau"]["mean"] == 3
    assert res["trajectory"] == {"nu": [1, 1, 1], "omega": [2, 1, 0]}


def test_chain_csv(tmp_path, capsys):
    path = tmp_path / "c.csv"
    code, out, _ = run(capsys, "chain", "--n", "200", "--k", "2", "--trials", "5", "--seed", "1", "--out", str(path))
    lines = path.read_text().splitlines()
    assert code == 0 and lines[0] == "trial,seed,tau,nu_tau" and len(lines) == 6


def test_reach_and_duds(tmp_path, capsys):
    path = tmp_path / "dstar.dfa"
    path.write_text(DSTAR_TEXT)
    res = json.loads(run(capsys, "reach", str(path), "--verbose")[1])
    assert res["r"] == 4 and res["visit_order"] == [0, 1, 2, 3]
    res = json.loads(run(capsys, "duds", str(path))[1])
    assert res["count"] == 1 and res["duds"] == [[1, 2]]
    res = json.loads(run(capsys, "reach", "--n", "50", "--k", "2", "--seed", "4")[1])
    assert 1 <= res["r"] <= 50


def test_invalid_params_exit_code(capsys):
    assert run(capsys, "gen", "--n", "0", "--k", "2")[0] == 2
    assert run(capsys, "experiment", "--n", "5", "--k", "2", "--trials", "0")[0] == 2
    assert run(capsys, "gen", "--n", "5", "--k", "2", "--accept-prob", "1.5")[0] == 2
    assert run(capsys, "minimize")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_env_seed_fallback(tmp_path, capsys, monkeypatch):
    a, b, c = (tmp_path / x for x in ("a", "b", "c"))
    monkeypatch.setenv("RANDFA_SEED", "99")
    run(capsys, "gen", "--n", "30", "--k", "2", "--out", str(a))
    run(capsys, "gen", "--n", "30", "--k", "2", "--seed", "99", "--out", str(b))
    run(capsys, "gen", "--n", "30", "--k", "2", "--seed", "98", "--out", str(c))
    assert a.read_bytes() == b.read_bytes() != c.read_bytes()
    monkeypatch.setenv("RANDFA_SEED", "nope")
    assert run(capsys, "gen", "--n", "3", "--k", "2")[0] == 2


def test_experiment_single_trial(tmp_path, capsys):
    path = tmp_path / "t.csv"
    code, out, _ = run(capsys, "experiment", "--n", "1", "--k", "2", "--trials", "1", "--out", str(path))
    assert code == 0
    assert path.read_text() == "trial,seed,n,k,r,m,excess,tau,duds,small\n0,{},1,2,1,1,0,,,\n".format(
        parse_records(path.read_text())[0].seed
    )
    summ = json.loads(out)["summaries"]
    assert summ["m"]["mean"] == 1


def test_experiment_all_observables_json(tmp_path, capsys):
    path = tmp_path / "t.json"
    code, _, _ = run(
        capsys, "experiment", "--n", "60", "--k", "2", "--trials", "12", "--seed", "5",
        "--observables", "r,m,excess,tau,duds,small", "--format", "json", "--out", str(path),
    )
    assert code == 0
    recs = parse_records(path.read_text(), "json")
    assert len(recs) == 12 and [r.trial for r in recs] == list(range(12))
    for r in recs:
        assert r.tau == 2 * r.r + 1 and r.duds is not None and r.small is not None


def test_experiment_stdout_is_clean_csv(capsys):
    code, out, err = run(capsys, "experiment", "--n", "20", "--k", "2", "--trials", "3", "--seed", "1")
    assert code == 0 and len(parse_records(out)) == 3
    assert "summaries" in err


def test_experiment_k1_notice(tmp_path, capsys):
    code, _, err = run(capsys, "experiment", "--n", "100", "--k", "1", "--trials", "4",
                       "--out", str(tmp_path / "k1.csv"))
    assert code == 0 and "notice" in err


def test_records_consistent_with_modules():
    cfg = ExperimentConfig(n=300, k=2, trials=20, master_seed=8, parallel=1)
    from randfa.random_gen import sample_dfa

    for rec in run_trials(cfg):
        d = sample_dfa(300, 2, 0.5, rec.seed)
        assert rec.r == accessibility_spectrum(d) == state_complexity(d).reachable_count


def test_csv_round_trip():
    cfg = ExperimentConfig(n=40, k=3, trials=7, master_seed=1, observables=("r", "duds"), parallel=2)
    recs = run_trials(cfg)
    assert parse_records(format_records(recs, "csv")) == recs
    assert parse_records(format_records(recs, "json"), "json") == recs


def test_config_validation():
    with pytest.raises(InvalidParameterError):
        ExperimentConfig(n=5, k=2, trials=1, master_seed=0, observables=("zz",))
    with pytest.raises(InvalidParameterError):
        ExperimentConfig(n=5, k=2, trials=1, master_seed=0, output_format="xml")
    with pytest.raises(InvalidParameterError):
        ExperimentConfig(n=5, k=2, trials=1, master_seed=0, parallel=0)


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_parallel_determinism(tmp_path, capsys, fmt):
    files = []
    for par in ("1", "3", "8"):
        path = tmp_path / f"p{par}.{fmt}"
        run(capsys, "experiment", "--n", "500", "--k", "2", "--trials", "40", "--seed", "11",
            "--observables", "r,m,excess,duds", "--format", fmt, "--parallel", par, "--out", str(path))
        files.append(path.read_bytes())
    assert files[0] == files[1] == files[2]
