import json

import pytest

from seedlearn.cli import Caps, RunConfig, UsageError, main, run_experiment


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json", "--no-time")
    return code, json.loads(out)


@pytest.fixture
def files(tmp_path):
    paths = {}

    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
        return str(p)

    write("x1.dnf", "dnf n=3\n1\n")
    write("f.dnf", "dnf n=4\n1 2\n3 4\n")
    write("q1.dnf", "dnf n=4\n1 2\n")
    write("p4.tt", "tt n=4\n0110100110010110\n")
    write("xor.tree", "tree n=2\nx1 x2 0 1 x2 1 0\n")
    write("bad.dnf", "dnf n=3\n1 7\n")
    return paths


def test_learn_eq_report(capsys, files):
    code, rep = run_json(capsys, "learn-eq", "--target", files["x1.dnf"], "--s", "1", "--teacher", "lex")
    assert code == 0
    assert rep["outputs"]["queries"] == 4 and rep["outputs"]["equal"] is True
    assert [q["counterexample"] for q in rep["log"]] == ["100", "101", "110", None]
    assert set(rep["log"][0]) == {"query_index", "hyp_terms", "counterexample", "label"}


def test_certify_report(capsys, files):
    code, rep = run_json(capsys, "certify", "--target", files["p4.tt"], "--s", "1")
    assert code == 0
    assert rep["outputs"]["certificate"] == [["0000", 0], ["0001", 1], ["0010", 1]]
    assert rep["outputs"]["verified"] is True


def test_certify_cover_report(capsys, files):
    code, rep = run_json(capsys, "certify", "--target", files["f.dnf"], "--s", "2")
    assert code == 0
    # exact, though not necessarily minimal
    assert rep["checks"] == {"equal": True}
    from seedlearn import codec

    cover = codec.parse_any(rep["outputs"]["cover"])
    assert cover.table() == codec.parse_any("dnf n=4\n1 2\n3 4\n").table()
    assert rep["outputs"]["terms"] == cover.size()


def test_fact1_report(capsys):
    code, rep = run_json(capsys, "fact1", "--n", "4", "--t", "2", "--s", "2", "--z", "1110")
    assert code == 0
    out = rep["outputs"]
    assert out["bound"]["exact"] == "225/256" and out["exact"]["exact"] == "1/5"
    assert out["bound"]["decimal"] == pytest.approx(225 / 256)
    assert out["ok"] is True


def test_fact1_stipulation_is_a_usage_error(capsys):
    code, _ = run(capsys, "fact1", "--n", "4", "--t", "2", "--s", "2", "--z", "1111")
    assert code == 2


def test_run_experiment_directly(files):
    cfg = RunConfig("learn-eq", {"target": files["x1.dnf"], "s": 1, "auto_s": False, "teacher": "lex"}, no_time=True)
    rep = run_experiment(cfg)
    assert rep.ok and rep.outputs["queries"] == 4 and rep.wall_time is None


@pytest.mark.parametrize(
    "argv",
    [
        ("learn-eq", "--s", "2", "--teacher", "random", "--seed", "12345"),
        ("learn-pac", "--s", "2", "--eps", "0.2", "--delta", "0.2", "--trials", "3", "--seed", "9"),
        ("halving", "--universe", "m:4,2,2", "--k", "1", "--teacher", "worst", "--seed", "5"),
    ],
)
def test_identical_configs_give_identical_json(capsys, files, argv):
    argv = list(argv)
    if "--s" in argv and argv[0] != "halving":
        argv[1:1] = ["--target", files["f.dnf"]]
    _, a = run(capsys, *argv, "--format", "json", "--no-time")
    _, b = run(capsys, *argv, "--format", "json", "--no-time")
    assert a == b
    assert "wall_time" not in json.loads(a)


def test_wall_time_present_by_default(capsys, files):
    _, out = run(capsys, "learn-eq", "--target", files["x1.dnf"], "--s", "1", "--format", "json")
    assert "wall_time" in json.loads(out)


def test_global_flags_before_subcommand(capsys, files):
    code, out = run(capsys, "--format", "json", "--no-time", "mindnf", "--input", files["p4.tt"])
    assert code == 0
    assert json.loads(out)["outputs"]["size"] == 8


def test_text_format(capsys, files):
    code, out = run(capsys, "learn-dtree", "--tree", files["xor.tree"], "--no-time")
    assert code == 0
    assert "outputs.seed: ~x1" in out
    assert out.strip().endswith("ok: true")


def test_find_seed(capsys, files):
    code, rep = run_json(capsys, "find-seed", "--input", files["f.dnf"])
    assert code == 0
    assert rep["outputs"]["seed"] == "~x1&x4"
    assert [r["step"] for r in rep["log"]] == ["Q", "R", "output"]
    code, rep = run_json(capsys, "find-seed", "--input", files["f.dnf"], "--method", "enumerate", "--q", "1")
    assert rep["outputs"]["seed"] == "~x1"


def test_learner_failure_exit_status(capsys, files):
    code, rep = run_json(capsys, "find-seed", "--input", files["p4.tt"], "--method", "enumerate", "--q", "1")
    assert code == 1 and rep["outputs"]["found"] is False
    code, rep = run_json(capsys, "learn-pac", "--target", files["f.dnf"], "--s", "1", "--eps", "0.1", "--delta", "0.1")
    assert code == 1 and rep["log"][0]["ok"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ("learn-eq", "--target", "/nonexistent.dnf", "--s", "1"),
        ("learn-eq", "--s", "1"),
        ("fact1", "--n", "4", "--t", "2", "--s", "2", "--z", "11"),
        ("halving", "--universe", "q:4,2,2"),
        ("gen", "--kind", "dnf", "--n", "3", "--seed", "-4"),
        ("gen", "--kind", "dnf", "--n", "3", "--seed", str(2**64)),
        ("gen", "--kind", "dnf", "--n", "3", "--caps", "max_n=0"),
        ("gen", "--kind", "dnf", "--n", "3", "--caps", "speed=3"),
        ("learn-pac", "--target", "x", "--s", "1", "--eps", "1.5", "--delta", "0.1"),
        ("nonsense",),
    ],
)
def test_usage_errors(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 2


def test_parse_error_is_usage_error(capsys, files):
    code, _ = run(capsys, "learn-eq", "--target", files["bad.dnf"], "--s", "1")
    assert code == 2


def test_resource_caps(capsys, files):
    code, _ = run(capsys, "mindnf", "--input", files["p4.tt"], "--caps", "max_n=3")
    assert code == 3
    code, _ = run(capsys, "halving", "--universe", "m:8,3,3", "--caps", "max_class=100")
    assert code == 3


def test_caps_parse():
    assert Caps.parse("max_n=5,max_retries=7") == Caps(5, 10**6, 7)
    with pytest.raises(UsageError):
        Caps.parse("max_n=x")


def test_halving_lex_target(capsys, files):
    code, rep = run_json(capsys, "halving", "--universe", "m:4,2,2", "--teacher", "lex", "--target", files["f.dnf"])
    assert code == 0
    assert rep["checks"] == {"equal": True, "shrink_ratio": True}


def test_adversary_script(capsys, tmp_path, files):
    empty = tmp_path / "zero.dnf"
    empty.write_text("dnf n=4\n")
    code, rep = run_json(capsys, "adversary", "--n", "4", "--t", "2", "--s", "2", "--script", str(empty), files["q1.dnf"])
    assert code == 0
    assert [(r["counterexample"], r["eliminated"]) for r in rep["log"]] == [("1111", 0), ("0111", 3)]


def test_adversary_log_terms_demo(capsys):
    code, rep = run_json(capsys, "adversary", "--n", "8", "--log-terms", "--random-queries", "2", "--seed", "1")
    assert code == 0
    assert rep["inputs"]["t"] == rep["inputs"]["s"] == 3
    assert len(rep["log"]) == 2


@pytest.mark.parametrize("kind", ["dnf", "tree", "tt", "parity", "sample", "partial"])
def test_gen_output_parses(capsys, tmp_path, kind):
    out = tmp_path / f"g.{kind}"
    code, _ = run(capsys, "gen", "--kind", kind, "--n", "4", "--seed", "3", "--out", str(out))
    assert code == 0
    from seedlearn import codec

    codec.parse_any(out.read_text())


def test_gen_then_learn(capsys, tmp_path):
    out = tmp_path / "t.dnf"
    run(capsys, "gen", "--kind", "dnf", "--n", "6", "--s", "3", "--seed", "11", "--out", str(out))
    code, rep = run_json(capsys, "learn-eq", "--target", str(out), "--s", "3", "--teacher", "random", "--seed", "2")
    assert code == 0 and rep["outputs"]["equal"] is True
