import json

import pytest

from relieve.cli import main, resolve_data_path

from conftest import NAND_CSV, NAND_HINT


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def corral(tmp_path, capsys):
    path = tmp_path / "corral.csv"
    assert run(capsys, "gen", "corral", "--exhaustive", "-o", path)[0] == 0
    return path


def test_gen_modulo(tmp_path, capsys):
    out = tmp_path / "mod.csv"
    code, _, err = run(capsys, "gen", "modulo", "--p", 2, "--important", 2, "--random", 10, "--n", 500,
                       "--seed", 7, "-o", out)
    assert code == 0
    header = out.read_text().splitlines()[0].split(",")
    assert len(header) == 13
    truth = json.loads((tmp_path / "mod.truth.json").read_text())
    assert truth["relevant"] == ["X1", "X2"]
    manifest = json.loads((tmp_path / "mod.csv.manifest.json").read_text())
    assert manifest["seed"] == 7 and manifest["dataset_hash"].startswith("sha256:")


def test_gen_corral_rows(corral):
    assert len(corral.read_text().splitlines()) == 65


def test_gen_monk2_refused(capsys):
    code, _, err = run(capsys, "gen", "monk", "--which", 2, "--n", 10)
    assert code == 2
    assert "Monk-2 does not contain unimportant features" in err


def test_weigh_relieff_ranks_i_last(corral, capsys):
    code, out, _ = run(capsys, "weigh", "--algorithm", "relieff", "--k", 5, "--data", corral)
    assert code == 0
    body = json.loads(out)
    w = body["weights"]
    assert len(w) == 6
    assert min(w, key=w.get) == "I"
    assert body["manifest"]["command"] == "weigh"


def test_kl_equals_ig(corral, capsys):
    kl = json.loads(run(capsys, "weigh", "--algorithm", "kl", "--data", corral)[1])["weights"]
    ig = json.loads(run(capsys, "weigh", "--algorithm", "ig", "--data", corral)[1])["weights"]
    assert kl.keys() == ig.keys()
    assert all(abs(kl[f] - ig[f]) <= 1e-10 for f in kl)


def test_weigh_is_byte_identical(corral, tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        assert run(capsys, "weigh", "--algorithm", "pdrelieff", "--auto-T", "--seed", 1, "--m", 40,
                   "--data", corral, "-o", target)[0] == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("alg", ["pcf", "ccf", "vdm", "gini", "ig", "gr", "entdist", "mantaras", "diffdist",
                                 "kl", "chi2", "relief", "relieved", "relieff", "myopic", "drelieff", "pdrelieff"])
def test_every_algorithm_runs(corral, capsys, alg):
    code, out, err = run(capsys, "weigh", "--algorithm", alg, "--k", 5, "--data", corral)
    assert code == 0, err
    assert set(json.loads(out)["weights"]) == {"A0", "A1", "B0", "B1", "C", "I"}


def test_relief_on_three_classes(tmp_path, capsys):
    data = tmp_path / "led.csv"
    run(capsys, "gen", "led", "--n", 60, "-o", data)
    code, _, err = run(capsys, "weigh", "--algorithm", "relief", "--data", data)
    assert code == 2
    assert "use relieff" in err


def test_eval_and_curve(corral, tmp_path, capsys):
    w = tmp_path / "w.json"
    run(capsys, "weigh", "--algorithm", "relieff", "--k", 5, "--data", corral, "-o", w)
    code, out, _ = run(capsys, "eval", "--weights", w, "--truth", tmp_path / "corral.truth.json")
    assert code == 0
    assert {"separability", "usability", "minimality", "completeness"} <= set(json.loads(out))
    code, out, _ = run(capsys, "knn-curve", "--data", corral, "--weights", w, "--folds", 5, "--seed", 3)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n_features,accuracy" and len(lines) == 7


def test_eval_missing_truth(tmp_path, capsys):
    w = tmp_path / "w.json"
    w.write_text(json.dumps({"weights": {"a": 1.0}, "algorithm": "x"}))
    assert run(capsys, "eval", "--weights", w, "--truth", tmp_path / "none.json")[0] == 2
    assert run(capsys, "eval", "--weights", w)[0] == 2


def test_redundancy_nand_example(tmp_path, capsys):
    data = tmp_path / "nand_table.csv"
    data.write_text(NAND_CSV)
    (tmp_path / "nand_table.schema.json").write_text(json.dumps(NAND_HINT))
    code, out, _ = run(capsys, "redundancy", "--data", data, "--feature", "f_r")
    body = json.loads(out)
    assert code == 0 and body["level"] == 1.0
    assert set(body["best_subset"]) <= {"f1", "f2"}
    code, _, err = run(capsys, "redundancy", "--data", data, "--feature", "f_r", "--cap", 2)
    assert code == 2 and "cap" in err


def test_io_failure_exit_code(corral, tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run(capsys, "weigh", "--algorithm", "ig", "--data", corral, "-o", blocker / "w.json")
    assert code == 3


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,class\n1,2,x\n1,y\n")
    code, _, err = run(capsys, "weigh", "--algorithm", "ig", "--data", bad)
    assert code == 2 and "line 3" in err


def test_uci_paths_use_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("RELIEVE_CACHE_DIR", str(tmp_path))
    assert resolve_data_path("uci:lung-cancer") == tmp_path / "lung-cancer.csv"
    assert resolve_data_path("x.csv").name == "x.csv"


def test_usage_error_on_bad_flags(capsys):
    assert run(capsys, "weigh", "--algorithm", "nope", "--data", "x")[0] == 2
