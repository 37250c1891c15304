import json
import subprocess
import sys
from pathlib import Path

import pytest


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "depsent", *map(str, args)], capture_output=True, text=True)


@pytest.fixture(scope="module")
def bench(tmp_path_factory):
    out = tmp_path_factory.mktemp("bench")
    r = run_cli("synth", out, "--docs", 40, "--seed", 1)
    assert r.returncode == 0, r.stderr
    assert "Wrote:" in r.stderr
    return out


def test_synth_writes_files(bench: Path):
    for name in ("corpus.conll", "labels.tsv", "lexicon.tsv", "experiment.json"):
        assert (bench / name).exists()
    spec = json.loads((bench / "experiment.json").read_text())
    assert spec["corpus"] == "corpus.conll"


def test_ablate_to_stdout(bench: Path):
    r = run_cli("ablate", bench / "experiment.json")
    assert r.returncode == 0, r.stderr
    lines = r.stdout.splitlines()
    assert lines[0] == "input,All,None,Intensification,but,if,Negation"
    assert lines[1].startswith("corpus,100.00,")


def test_ablate_to_directory_with_timing(bench: Path, tmp_path: Path):
    r = run_cli("ablate", bench / "experiment.json", "--rules", "All,None", "--timing", "--format", "json", "-o", tmp_path)
    assert r.returncode == 0, r.stderr
    table = json.loads((tmp_path / "ablation.json").read_text())
    assert set(table[0]) == {"input", "All", "None"}
    timing = json.loads((tmp_path / "timing.json").read_text())
    assert timing[0]["minimum"] <= timing[0]["average"] <= timing[0]["maximum"]


def test_classify(bench: Path):
    r = run_cli(
        "classify", bench / "corpus.conll", bench / "labels.tsv", bench / "lexicon.tsv", "--format", "json"
    )
    assert r.returncode == 0, r.stderr
    rows = json.loads(r.stdout)
    assert len(rows) == 40
    assert all(row["predicted"] == row["gold"] for row in rows)


def test_perturb_then_evaluate(bench: Path, tmp_path: Path):
    parsed = tmp_path / "parsed.conll"
    r = run_cli("perturb", bench / "corpus.conll", parsed, "--target-las", 0.9, "--seed", 2, "--format", "json")
    assert r.returncode == 0, r.stderr
    assert f"Wrote: {parsed}" in r.stderr
    report = json.loads(r.stdout)
    assert abs(report["achieved_las"] - 0.9) <= 0.01

    r = run_cli("evaluate", bench / "corpus.conll", parsed, "--labels", "neg,cc")
    assert r.returncode == 0, r.stderr
    lines = r.stdout.splitlines()
    assert lines[0] == "metric,value,precision,recall"
    las = float(lines[1].split(",")[1])
    assert lines[1].startswith("LAS,")
    assert las == pytest.approx(100 * report["achieved_las"], abs=0.01)
    assert [line.split(",")[0] for line in lines[4:]] == ["neg", "cc"]

    r = run_cli("evaluate", bench / "corpus.conll", bench / "corpus.conll", parsed)
    assert r.returncode == 0, r.stderr
    assert r.stdout.splitlines()[1].startswith("LAS,100.00,")


def test_compare_and_curve(bench: Path, tmp_path: Path):
    parsed = tmp_path / "parsed.conll"
    assert run_cli("perturb", bench / "corpus.conll", parsed, "--target-las", 0.6).returncode == 0
    spec = {
        "corpus": str(bench / "corpus.conll"),
        "labels": str(bench / "labels.tsv"),
        "lexicon": str(bench / "lexicon.tsv"),
        "inputs": {"gold": str(bench / "corpus.conll"), "parsed": str(parsed)},
    }
    spec_path = tmp_path / "experiment.json"
    spec_path.write_text(json.dumps(spec))

    # with the rules off both inputs classify identically
    r = run_cli("compare", spec_path, "gold", "parsed", "--rules", "None", "--format", "json")
    assert r.returncode == 0, r.stderr
    result = json.loads(r.stdout)
    assert (result["system_a"], result["system_b"]) == ("gold", "parsed")
    assert result["statistic"] == 0.0
    assert result["p_value"] == 1.0

    r = run_cli("curve", spec_path, "--targets", "1.0", "--seeds", "0")
    assert r.returncode == 0, r.stderr
    lines = r.stdout.splitlines()
    assert lines[0] == "target,las,uas,la,corpus"
    assert lines[1] == "1.0000,1.0000,1.0000,1.0000,100.00"


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["ablate"],
        ["frobnicate"],
        ["curve", "spec.json", "--targets", "high"],
        ["ablate", "spec.json", "--rules", "sarcasm"],
        ["evaluate", "gold.conll", "pred.conll", "--format", "xml"],
        ["compare", "spec.json", "gold", "parsed", "--rules", "All,None"],
        ["classify", "c.conll", "l.tsv", "x.tsv", "--rules", "Negation,but"],
        ["ablate", "spec.json", "--seed", "3"],
    ],
)
def test_usage_errors(args):
    r = run_cli(*args)
    assert r.returncode == 1
    assert "usage" in r.stderr


def test_data_errors(tmp_path: Path):
    r = run_cli("evaluate", tmp_path / "missing.conll", tmp_path / "missing.conll")
    assert r.returncode == 2
    assert "depsent: error:" in r.stderr

    bad = tmp_path / "bad.conll"
    bad.write_text("1\tgood\n")
    r = run_cli("evaluate", bad, bad)
    assert r.returncode == 2

    r = run_cli("perturb", bad, tmp_path / "out.conll", "--target-las", 1.5)
    assert r.returncode == 2


@pytest.mark.parametrize("text", ["{not json", '{"corpus": "c", "labels": "l", "lexicon": "x", "seed": "abc"}'])
def test_bad_spec_is_data_error(tmp_path: Path, text):
    spec_path = tmp_path / "experiment.json"
    spec_path.write_text(text)
    for command in ("ablate", "curve"):
        r = run_cli(command, spec_path)
        assert r.returncode == 2, r.stderr
        assert "depsent: error:" in r.stderr
        assert "Traceback" not in r.stderr


def test_bad_perturbation_config_is_data_error(bench: Path, tmp_path: Path):
    config = tmp_path / "perturb.json"
    config.write_text("{not json")
    r = run_cli("perturb", bench / "corpus.conll", tmp_path / "out.conll", "--config", config)
    assert r.returncode == 2
    assert "Traceback" not in r.stderr


def test_curve_over_two_corpora(bench: Path, tmp_path: Path):
    other = tmp_path / "other"
    assert run_cli("synth", other, "--docs", 20, "--seed", 5).returncode == 0
    spec = {
        "corpus": str(bench / "corpus.conll"),
        "labels": str(bench / "labels.tsv"),
        "lexicon": str(bench / "lexicon.tsv"),
        "corpora": [{"corpus": str(other / "corpus.conll"), "labels": str(other / "labels.tsv"), "name": "other"}],
    }
    spec_path = tmp_path / "experiment.json"
    spec_path.write_text(json.dumps(spec))

    r = run_cli("curve", spec_path, "--targets", "1.0", "--seeds", "0")
    assert r.returncode == 0, r.stderr
    lines = r.stdout.splitlines()
    assert lines[0] == "target,las,uas,la,corpus,other"
    assert lines[1] == "1.0000,1.0000,1.0000,1.0000,100.00,100.00"
