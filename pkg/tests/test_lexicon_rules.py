import json
from pathlib import Path

import pytest

from depsent.errors import ConfigError, LexiconError
from depsent.sentiment import Flip, Lexicon, Rule, RuleSet, Shift, dump_lexicon, load_lexicon, parse_lexicon
from depsent.sentiment.rules import SUBSET_COLUMNS, canonical_subset, rules_for_subset


def test_subjective_entry_with_pos():
    lex = parse_lexicon(["so\tgood\tADJ\t2.0"])
    assert lex.subjective == {("good", "ADJ"): 2.0}
    assert lex.lookup("good", "ADJ") == 2.0
    assert lex.lookup("Good", "ADJ") == 2.0
    assert lex.lookup("good", "NOUN") == 0.0


def test_intensifier_entry():
    lex = parse_lexicon(["int\tvery\t_\t0.25"])
    assert lex.intensifiers == {"very": 0.25}
    assert lex.intensifier_weight("VERY") == 0.25


def test_pos_specific_entry_wins():
    lex = parse_lexicon(["so\tfine\t_\t1.0", "so\tfine\tNOUN\t-2.0", "so\tcool\t0.5"])
    assert lex.lookup("fine", "NOUN") == -2.0
    assert lex.lookup("fine", "ADJ") == 1.0
    assert lex.lookup("cool", "ADJ") == 0.5
    assert lex.lookup("unknown", "ADJ") == 0.0


def test_constructed_lexicon_keys_are_lowercased():
    lex = Lexicon(subjective={("Good", "ADJ"): 2.0, ("BAD", None): -2.0}, intensifiers={"Very": 0.25}, negators=frozenset({"NOT"}))
    assert lex.subjective == {("good", "ADJ"): 2.0, ("bad", None): -2.0}
    assert lex.lookup("good", "ADJ") == 2.0
    assert lex.lookup("Bad") == -2.0
    assert lex.intensifier_weight("very") == 0.25
    assert "not" in lex.negators
    assert parse_lexicon(dump_lexicon(lex).splitlines()) == lex

    # same word in two casings is fine while the values agree
    assert Lexicon(subjective={("Good", None): 1.0, ("good", None): 1.0}).subjective == {("good", None): 1.0}
    with pytest.raises(LexiconError):
        Lexicon(subjective={("Good", None): 1.0, ("good", None): 2.0})
    with pytest.raises(LexiconError):
        Lexicon(intensifiers={"Very": 0.25, "very": 0.5})


def test_negators_comments_and_blank_lines():
    lex = parse_lexicon(["# toy", "", "neg\tnot", "neg\tNever"])
    assert lex.negators == frozenset({"not", "never"})
    assert lex.counts() == {"subjective": 0, "intensifiers": 0, "negators": 2}


def test_duplicate_entry():
    with pytest.raises(LexiconError) as exc:
        parse_lexicon(["so\tgood\tADJ\t2.0", "so\tgood\tADJ\t3.0"])
    assert exc.value.line_number == 2


@pytest.mark.parametrize(
    "line",
    [
        "so\tgood\tADJ\tgreat",
        "int\tbarely\t_\t-1.0",
        "int\tbarely\t_\t-1.5",
        "so\tgood",
        "adj\tgood\t2.0",
        "so\tgood\tADJ\tnan",
    ],
)
def test_bad_lines(line):
    with pytest.raises(LexiconError):
        parse_lexicon([line])


def test_dump_then_load(tmp_path: Path):
    lex = parse_lexicon(["so\tgood\tADJ\t2.0", "so\tbad\t_\t-2.5", "int\tslightly\t_\t-0.5", "neg\tnot"])
    path = tmp_path / "lexicon.tsv"
    path.write_text(dump_lexicon(lex), encoding="utf-8")
    assert load_lexicon(path) == lex


def test_subset_columns_and_names():
    assert SUBSET_COLUMNS == ("All", "None", "Intensification", "but", "if", "Negation")
    assert canonical_subset("But") == "but"
    assert canonical_subset("IF") == "if"
    assert canonical_subset("negation") == "Negation"
    assert rules_for_subset("All") == frozenset(Rule)
    assert rules_for_subset("None") == frozenset()
    assert rules_for_subset("but") == frozenset({Rule.BUT})
    with pytest.raises(ConfigError):
        canonical_subset("sarcasm")


def test_ruleset_defaults_and_subsets():
    rules = RuleSet.all()
    assert rules.enabled == frozenset(Rule)
    assert isinstance(rules.negation_strategy, Flip)
    assert rules.but_main_factor == 0.5
    assert rules.for_subset("Negation").enabled == frozenset({Rule.NEGATION})
    assert RuleSet.none().enabled == frozenset()


def test_ruleset_validation():
    with pytest.raises(ConfigError):
        RuleSet(but_main_factor=0.0)
    with pytest.raises(ConfigError):
        RuleSet(but_main_factor=1.5)
    with pytest.raises(ConfigError):
        Shift(0.0)


def test_ruleset_from_json(tmp_path: Path):
    path = tmp_path / "rules.json"
    path.write_text(
        json.dumps(
            {
                "enabled_rules": ["Negation", "If"],
                "negation_strategy": "shift",
                "shift_amount": 3.0,
                "but_main_factor": 0.25,
                "threshold": 0.5,
            }
        )
    )
    rules = RuleSet.from_json(path)
    assert rules.enabled == frozenset({Rule.NEGATION, Rule.IF})
    assert rules.negation_strategy == Shift(3.0)
    assert rules.but_main_factor == 0.25
    assert rules.classification_threshold == 0.5
    assert RuleSet.from_dict(rules.to_dict()) == rules


def test_ruleset_from_dict_errors():
    with pytest.raises(ConfigError):
        RuleSet.from_dict({"enabled_rules": ["Sarcasm"]})
    with pytest.raises(ConfigError):
        RuleSet.from_dict({"negation_strategy": "invert"})
    with pytest.raises(ConfigError):
        RuleSet.from_dict({"colour": "blue"})
    with pytest.raises(ConfigError):
        RuleSet.from_dict({"negation_strategy": "shift", "shift_amount": "far"})
    with pytest.raises(ConfigError):
        RuleSet.from_dict({"negation_strategy": "shift", "shift_amount": -1})
    assert RuleSet.from_dict({}).enabled == frozenset(Rule)
    assert RuleSet.from_dict({"enabled_rules": "None"}).enabled == frozenset()


@pytest.mark.parametrize("text", ["{not json", "", '["Negation"]'])
def test_ruleset_from_bad_json(tmp_path: Path, text):
    path = tmp_path / "rules.json"
    path.write_text(text)
    with pytest.raises(ConfigError):
        RuleSet.from_json(path)
