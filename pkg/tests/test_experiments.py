import json
from pathlib import Path

import pytest

from depsent import (
    DepTree,
    ExperimentSpec,
    Lexicon,
    Token,
    Treebank,
    compare_systems,
    load_experiment,
    open_experiment,
    run_ablation,
)
from depsent.errors import AlignmentError, ConfigError, CorpusError
from depsent.harness.experiments import (
    accuracy,
    classify_corpus,
    run_experiment_curve,
    time_classification,
)
from depsent.sentiment import PolarityLabel, dump_lexicon
from depsent.treebank.conll import write_conll_file

LEX = Lexicon(subjective={("good", None): 2.0, ("bad", None): -2.0}, negators=frozenset({"not"}))


def sentence(words, sentence_id, neg_label="neg"):
    """`not W` or `W` as a one- or two-token tree rooted at W."""
    if len(words) == 1:
        rows = [(words[0], 0, "root")]
    else:
        rows = [(words[0], 2, neg_label), (words[1], 0, "root")]
    return DepTree(
        tuple(Token(id=i, form=f, lemma=f, upos="X", head=h, deprel=d) for i, (f, h, d) in enumerate(rows, 1)),
        sentence_id,
    )


# doc_id, gold, words
DOCS = [
    ("d1", "neg", ["not", "good"]),
    ("d2", "pos", ["good"]),
    ("d3", "pos", ["not", "bad"]),
    ("d4", "neg", ["bad"]),
]


def write_toy(tmp_path: Path, labels=True, inputs=True):
    gold = Treebank(tuple(sentence(words, doc) for doc, _, words in DOCS))
    parsed = Treebank(tuple(sentence(words, doc, neg_label="advmod") for doc, _, words in DOCS))
    write_conll_file(gold, tmp_path / "corpus.conll")
    write_conll_file(parsed, tmp_path / "parsed.conll")
    (tmp_path / "labels.tsv").write_text(
        "".join(f"{doc}\t{gold_label if labels else '_'}\t{i}\t{i + 1}\n" for i, (doc, gold_label, _) in enumerate(DOCS))
    )
    (tmp_path / "lexicon.tsv").write_text(dump_lexicon(LEX))
    spec = {"corpus": "corpus.conll", "labels": "labels.tsv", "lexicon": "lexicon.tsv", "seed": 3}
    if inputs:
        spec["inputs"] = {"gold": "corpus.conll", "parsed": "parsed.conll"}
    spec["curve"] = {"targets": [1.0], "seeds": [0, 1]}
    path = tmp_path / "experiment.json"
    path.write_text(json.dumps(spec))
    return path


def test_spec_paths_resolve_against_spec_dir(tmp_path: Path):
    spec = ExperimentSpec.from_json(write_toy(tmp_path))
    assert spec.corpus == tmp_path / "corpus.conll"
    assert spec.inputs["parsed"] == tmp_path / "parsed.conll"
    assert spec.seed == 3
    assert spec.curve.targets == (1.0,)
    assert spec.rules.enabled


def test_spec_missing_key():
    with pytest.raises(ConfigError):
        ExperimentSpec.from_dict({"corpus": "c.conll", "labels": "l.tsv"})
    with pytest.raises(ConfigError):
        ExperimentSpec.from_dict({"corpus": "c", "labels": "l", "lexicon": "x", "subsets": ["sarcasm"]})


def test_inline_rules(tmp_path: Path):
    spec = ExperimentSpec.from_dict(
        {"corpus": "c", "labels": "l", "lexicon": "x", "rules": {"enabled_rules": ["Negation"]}}, tmp_path
    )
    assert [r.value for r in spec.rules.enabled] == ["Negation"]


def test_ablation_on_toy_corpus(tmp_path: Path):
    exp = load_experiment(ExperimentSpec.from_json(write_toy(tmp_path)))
    table = run_ablation(exp)
    assert table.inputs == ["gold", "parsed"]
    assert table.cell("gold", "None") == 50.00
    assert table.cell("gold", "Negation") == 100.00
    assert table.cell("gold", "All") == 100.00
    assert table.cell("gold", "Intensification") == 50.00
    # without the neg label nothing is flipped
    assert table.cell("parsed", "All") == 50.00
    # rules off: the parse cannot matter
    assert table.cell("gold", "None") == table.cell("parsed", "None")


def test_ablation_subset_argument(tmp_path: Path):
    exp = load_experiment(ExperimentSpec.from_json(write_toy(tmp_path)))
    table = run_ablation(exp, ["negation", "none"])
    assert table.subsets == ["Negation", "None"]
    assert table.column("Negation") == [100.0, 50.0]


def test_classification_results(tmp_path: Path):
    exp = load_experiment(ExperimentSpec.from_json(write_toy(tmp_path)))
    results = classify_corpus(exp.corpus, exp.input("gold"), exp.lexicon, exp.rules)
    assert [r.doc_id for r in results] == ["d1", "d2", "d3", "d4"]
    assert [r.so for r in results] == [-2.0, 2.0, 2.0, -2.0]
    assert results[0].predicted is PolarityLabel.NEGATIVE
    assert accuracy(results) == 100.0
    assert accuracy([]) == 0.0
    with pytest.raises(ConfigError):
        exp.input("missing")


def test_no_inputs_uses_corpus(tmp_path: Path):
    exp = load_experiment(ExperimentSpec.from_json(write_toy(tmp_path, inputs=False)))
    assert list(exp.inputs) == ["corpus"]
    assert run_ablation(exp).cell("corpus", "All") == 100.0


def test_missing_labels(tmp_path: Path):
    exp = load_experiment(ExperimentSpec.from_json(write_toy(tmp_path, labels=False)))
    with pytest.raises(CorpusError):
        run_ablation(exp)


def test_misaligned_input(tmp_path: Path):
    path = write_toy(tmp_path)
    short = Treebank((sentence(["good"], "x"),))
    write_conll_file(short, tmp_path / "parsed.conll")
    with pytest.raises(AlignmentError):
        load_experiment(ExperimentSpec.from_json(path))


def test_curve_at_full_las_matches_ablation(tmp_path: Path):
    exp = load_experiment(ExperimentSpec.from_json(write_toy(tmp_path)))
    series = run_experiment_curve(exp)
    assert len(series.points) == 1
    point = series.points[0]
    assert point.las == 1.0
    assert point.accuracy_by_corpus == {"corpus": run_ablation(exp).cell("gold", "All")}
    assert series.metrics == []


def test_compare_with_itself(tmp_path: Path):
    exp = load_experiment(ExperimentSpec.from_json(write_toy(tmp_path)))
    result = compare_systems(exp, "gold", "gold", subset="None")
    assert result.statistic == 0.0
    assert result.p_value == 1.0


def test_compare_gold_and_parsed(tmp_path: Path):
    exp = load_experiment(ExperimentSpec.from_json(write_toy(tmp_path)))
    result = compare_systems(exp, "gold", "parsed")
    assert result.contingency == ((4, 0), (2, 2))
    assert 0.0 < result.p_value < 1.0


def test_timing_rows(tmp_path: Path):
    exp = load_experiment(ExperimentSpec.from_json(write_toy(tmp_path)))
    rows = time_classification(exp, runs=3)
    assert [r.input for r in rows] == ["gold", "parsed"]
    for r in rows:
        assert 0.0 <= r.minimum <= r.average <= r.maximum


def test_directory_corpus(tmp_path: Path):
    docs_dir = tmp_path / "docs"
    docs_dir.mkdir()
    for doc, _, words in DOCS:
        write_conll_file(Treebank((sentence(words, doc),)), docs_dir / f"{doc}.conll")
    (tmp_path / "labels.tsv").write_text("".join(f"{doc}\t{label}\n" for doc, label, _ in DOCS))
    (tmp_path / "lexicon.tsv").write_text(dump_lexicon(LEX))
    spec = ExperimentSpec.from_dict({"corpus": "docs", "labels": "labels.tsv", "lexicon": "lexicon.tsv"}, tmp_path)
    exp = load_experiment(spec)
    assert exp.corpus.name == "docs"
    assert [d.doc_id for d in exp.corpus.documents] == ["d1", "d2", "d3", "d4"]
    assert run_ablation(exp, ["All", "None"]).column("All") == [100.0]


def test_open_experiment_overrides_seed(tmp_path: Path):
    exp = open_experiment(write_toy(tmp_path), seed=7)
    assert exp.seed == 7
    assert list(exp.inputs) == ["gold", "parsed"]


def write_second_corpus(tmp_path: Path):
    """Same trees as the toy corpus, but d1 is labelled wrongly, so All-rule accuracy is 75."""
    gold = Treebank(tuple(sentence(words, doc) for doc, _, words in DOCS))
    write_conll_file(gold, tmp_path / "second.conll")
    labels = {"d1": "pos"}
    (tmp_path / "second.tsv").write_text(
        "".join(f"{doc}\t{labels.get(doc, label)}\t{i}\t{i + 1}\n" for i, (doc, label, _) in enumerate(DOCS))
    )


def test_two_corpus_curve(tmp_path: Path):
    path = write_toy(tmp_path)
    write_second_corpus(tmp_path)
    data = json.loads(path.read_text())
    data["corpora"] = [{"corpus": "second.conll", "labels": "second.tsv"}]
    path.write_text(json.dumps(data))

    spec = ExperimentSpec.from_json(path)
    assert [c.path.name for c in spec.corpora] == ["corpus.conll", "second.conll"]
    exp = load_experiment(spec)
    assert [c.name for c in exp.corpora] == ["corpus", "second"]
    assert exp.corpus is exp.corpora[0]

    series = run_experiment_curve(exp)
    assert series.points[0].accuracy_by_corpus == {"corpus": 100.0, "second": 75.0}


def test_corpora_without_primary_keys(tmp_path: Path):
    write_toy(tmp_path)
    write_second_corpus(tmp_path)
    spec = ExperimentSpec.from_dict(
        {
            "corpora": [
                {"corpus": "second.conll", "labels": "second.tsv", "name": "relabelled"},
                {"corpus": "corpus.conll", "labels": "labels.tsv"},
            ],
            "lexicon": "lexicon.tsv",
            "curve": {"targets": [1.0], "seeds": [0]},
        },
        tmp_path,
    )
    assert spec.corpus == tmp_path / "second.conll"
    exp = load_experiment(spec)
    assert list(exp.inputs) == ["corpus"]
    assert run_experiment_curve(exp).points[0].accuracy_by_corpus == {"relabelled": 75.0, "corpus": 100.0}


def test_corpora_names_must_be_unique(tmp_path: Path):
    write_toy(tmp_path)
    write_second_corpus(tmp_path)
    spec = ExperimentSpec.from_dict(
        {
            "corpus": "corpus.conll",
            "labels": "labels.tsv",
            "lexicon": "lexicon.tsv",
            "corpora": [
                {"corpus": "corpus.conll", "labels": "labels.tsv"},
                {"corpus": "second.conll", "labels": "second.tsv", "name": "corpus"},
            ],
        },
        tmp_path,
    )
    # the primary corpus is not listed twice
    assert len(spec.corpora) == 2
    with pytest.raises(ConfigError):
        load_experiment(spec)


@pytest.mark.parametrize(
    "data",
    [
        {"corpora": "corpus.conll", "lexicon": "x"},
        {"corpora": [{"corpus": "c.conll"}], "lexicon": "x"},
        {"corpus": "c", "labels": "l", "lexicon": "x", "seed": "abc"},
        {"corpus": "c", "labels": "l", "lexicon": "x", "curve": {"targets": ["high"]}},
        {"corpus": "c", "labels": "l", "lexicon": "x", "curve": {"seeds": "0,1"}},
        {"corpus": "c", "labels": "l", "lexicon": "x", "curve": {"label_error_share": None}},
        {"corpus": "c", "labels": "l", "lexicon": "x", "inputs": {"gold": 3}},
        {"corpus": 1, "labels": "l", "lexicon": "x"},
        {"corpus": "c", "labels": "l", "lexicon": "x", "rules": ["Negation"]},
        {"corpus": "c", "labels": "l", "lexicon": "x", "rules": {"negation_strategy": "shift", "shift_amount": "far"}},
        ["corpus", "labels"],
    ],
)
def test_spec_bad_values_are_config_errors(data):
    with pytest.raises(ConfigError):
        ExperimentSpec.from_dict(data)


@pytest.mark.parametrize("text", ["{not json", "", "[1, 2"])
def test_spec_bad_json(tmp_path: Path, text):
    path = tmp_path / "experiment.json"
    path.write_text(text)
    with pytest.raises(ConfigError):
        ExperimentSpec.from_json(path)
