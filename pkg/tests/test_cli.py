import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from main import cli
from services.pipeline import STAGES
from tests.helpers import write_lines


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, [str(arg) for arg in args])


def test_index_build_then_run_from_index(runner, toy, tmp_path):
    index_file = tmp_path / "toy.lraidx"
    built = invoke(runner, "index", "build", toy.corpus_dir, "-o", index_file)
    assert built.exit_code == 0, built.output
    assert json.loads(built.stdout)["passages"] > 0

    run = invoke(runner, "--out", tmp_path / "runs", "run", "--corpus", index_file, "--thesaurus", toy.thesaurus,
                 "--pairs", toy.pairs)
    assert run.exit_code == 0, run.output
    manifest = json.loads(run.stdout)
    assert [t["stage"] for t in manifest["timings"]] == list(STAGES)
    assert (tmp_path / "runs" / manifest["run_digest"][:16] / "space.lraprj").is_file()


def test_dump_matrix_on_a_repeated_run(runner, toy, tmp_path):
    args = ["--out", tmp_path / "runs", "run", "--corpus", toy.corpus_dir, "--thesaurus", toy.thesaurus,
            "--pairs", toy.pairs]
    assert invoke(runner, *args).exit_code == 0

    dumped = invoke(runner, *args, "--dump-matrix")
    assert dumped.exit_code == 0, dumped.output
    artifacts = json.loads(dumped.stdout)["artifacts"]
    assert set(artifacts) == {"manifest", "matrix", "patterns", "space", "versions"}
    assert Path(artifacts["matrix"]).is_file()


def test_thesaurus_check(runner, toy, tmp_path):
    ok = invoke(runner, "thesaurus", "check", toy.thesaurus)
    assert ok.exit_code == 0
    assert json.loads(ok.stdout)["entries"] > 0

    bad = invoke(runner, "thesaurus", "check", write_lines(tmp_path / "bad.txt", ["dog\tnoun\tcanine:0.1,puppy:0.5"]))
    assert bad.exit_code == 1
    assert bad.stderr.startswith("error: line 1:")


def test_missing_corpus_is_a_usage_error(runner, toy):
    result = invoke(runner, "run", "--thesaurus", toy.thesaurus, "--pairs", toy.pairs)
    assert result.exit_code == 2
    assert "--corpus" in result.output


def test_bad_config_exits_with_two(runner, toy, tmp_path):
    config = write_lines(tmp_path / "lra.cfg", ["num_synonyms=4"])
    result = invoke(runner, "--config", config, "thesaurus", "check", toy.thesaurus)
    assert result.exit_code == 2
    assert "num_synonyms" in result.stderr


def test_config_file_reaches_the_manifest(runner, toy, tmp_path):
    config = write_lines(tmp_path / "lra.cfg", ["num_filter=1"])
    result = invoke(runner, "--config", config, "run", "--corpus", toy.corpus_dir, "--thesaurus", toy.thesaurus,
                    "--pairs", toy.pairs)
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["config"]["num_filter"] == 1


def test_sim_reports_each_comparison(runner, toy):
    result = invoke(runner, "sim", toy.comparisons, "--corpus", toy.corpus_dir, "--thesaurus", toy.thesaurus)
    assert result.exit_code == 0, result.output
    comparisons = json.loads(result.stdout)
    assert len(comparisons) == 10
    assert comparisons[0]["pair1"] == "cat:meow" and comparisons[0]["pair2"] == "dog:bark"
    for comparison in comparisons:
        assert comparison["similarity"] >= comparison["original_cosine"] - 1e-12
        assert comparison["similarity"] == pytest.approx(1.0, abs=1e-9)


def test_eval_sat_with_both_measures(runner, toy):
    lra = invoke(runner, "eval", "sat", toy.questions, "--measure", "lra", "--corpus", toy.corpus_dir,
                 "--thesaurus", toy.thesaurus)
    assert lra.exit_code == 0, lra.output
    report = json.loads(lra.stdout)["report"]
    assert report["correct"] >= 9
    assert set(report) >= {"correct", "incorrect", "skipped", "score"}

    vsm = invoke(runner, "vsm", "eval", "sat", toy.questions, "--corpus", toy.corpus_dir)
    same = invoke(runner, "eval", "sat", toy.questions, "--measure", "vsm", "--corpus", toy.corpus_dir)
    assert vsm.exit_code == 0 and same.exit_code == 0
    assert json.loads(vsm.stdout) == json.loads(same.stdout)


def test_eval_sat_table(runner, toy):
    result = invoke(runner, "eval", "sat", toy.questions, "--corpus", toy.corpus_dir, "--thesaurus", toy.thesaurus,
                    "--format", "table")
    assert result.exit_code == 0, result.output
    assert result.stdout.splitlines()[-1].startswith("Score")


def test_eval_lra_needs_a_thesaurus(runner, toy):
    result = invoke(runner, "eval", "sat", toy.questions, "--corpus", toy.corpus_dir)
    assert result.exit_code == 2
    assert "--thesaurus" in result.stderr


def test_eval_nm(runner, toy):
    result = invoke(runner, "eval", "nm", toy.noun_modifiers, "--corpus", toy.corpus_dir, "--thesaurus", toy.thesaurus)
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["class30"]["accuracy"] == 1.0
    assert len(report["neighbors"]) == 30

    vsm = invoke(runner, "vsm", "eval", "nm", toy.noun_modifiers, "--corpus", toy.corpus_dir, "--format", "table")
    assert vsm.exit_code == 0
    assert "30 classes" in vsm.stdout and "Accuracy" in vsm.stdout


def test_patterns_dump(runner, toy):
    result = invoke(runner, "patterns", "dump", "--corpus", toy.corpus_dir, "--thesaurus", toy.thesaurus,
                    "--pairs", toy.pairs)
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    supports = [int(line.split("\t")[1]) for line in lines]
    assert supports == sorted(supports, reverse=True)
    assert "utters a\t" in result.stdout


def test_unknown_pair_in_sim_fails_cleanly(runner, toy, tmp_path):
    comparisons = write_lines(tmp_path / "cmp.txt", ["cat meow zebra"])
    result = invoke(runner, "sim", comparisons, "--corpus", toy.corpus_dir, "--thesaurus", toy.thesaurus)
    assert result.exit_code == 1
    assert "line 1" in result.stderr
