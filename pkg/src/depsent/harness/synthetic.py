"""
Seeded synthetic sentiment benchmark.

Sentences are built from a handful of templates in basic Stanford-style
dependencies, each one exercising a compositional rule. Every sentence of
a document is sampled so that its All-rules orientation has the
document's sign, and the gold label is whatever the engine says on the
gold trees. The share of negated sentences varies per document, which is
what makes accuracy sensitive to parse quality.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from depsent.harness.corpus import Corpus, Document, write_corpus
from depsent.sentiment.composer import SentimentAnalyzer
from depsent.sentiment.lexicon import Lexicon, dump_lexicon
from depsent.sentiment.rules import RuleSet
from depsent.treebank.conll import DepTree, Token, Treebank

logger = logging.getLogger(__name__)

# Dyadic values keep every sum exact in binary floating point.
POSITIVE_WORDS: Dict[str, float] = {"good": 2.0, "great": 3.0, "nice": 1.5, "excellent": 4.0}
NEGATIVE_WORDS: Dict[str, float] = {"bad": -2.0, "awful": -3.0, "boring": -1.5, "terrible": -4.0}
INTENSIFIERS: Dict[str, float] = {"very": 0.5, "really": 0.25, "extremely": 1.0, "slightly": -0.5}
NEGATORS: Tuple[str, ...] = ("not", "never")
NOUNS: Tuple[str, ...] = ("movie", "plot", "acting", "film", "story", "cast", "music", "ending")

MAX_SENTENCE_TRIES = 50

Row = Tuple[str, str, int, str]  # form, upos, head, deprel


def toy_lexicon() -> Lexicon:
    subjective = {(w, None): v for w, v in {**POSITIVE_WORDS, **NEGATIVE_WORDS}.items()}
    return Lexicon(subjective=subjective, intensifiers=dict(INTENSIFIERS), negators=frozenset(NEGATORS))


# --- templates ---------------------------------------------------------------


class _Sampler:
    def __init__(self, rng: np.random.Generator):
        self.rng = rng

    def pick(self, options: Sequence[str]) -> str:
        return options[int(self.rng.integers(len(options)))]

    def word(self, sign: int) -> str:
        return self.pick(sorted(POSITIVE_WORDS if sign > 0 else NEGATIVE_WORDS))

    def noun(self) -> str:
        return self.pick(NOUNS)

    def intensifier(self) -> str:
        return self.pick(sorted(INTENSIFIERS))

    def negator(self) -> str:
        return self.pick(NEGATORS)


def _plain(s: _Sampler, sign: int) -> List[Row]:
    # the N is W
    return [
        ("the", "DET", 2, "det"),
        (s.noun(), "NOUN", 4, "nsubj"),
        ("is", "VERB", 4, "cop"),
        (s.word(sign), "ADJ", 0, "root"),
    ]


def _intensified(s: _Sampler, sign: int) -> List[Row]:
    # the N is INT W
    return [
        ("the", "DET", 2, "det"),
        (s.noun(), "NOUN", 5, "nsubj"),
        ("is", "VERB", 5, "cop"),
        (s.intensifier(), "ADV", 5, "advmod"),
        (s.word(sign), "ADJ", 0, "root"),
    ]


def _acomp(s: _Sampler, sign: int) -> List[Row]:
    # the N looks INT W, the intensifier modifying the verb
    return [
        ("the", "DET", 2, "det"),
        (s.noun(), "NOUN", 3, "nsubj"),
        ("looks", "VERB", 0, "root"),
        (s.intensifier(), "ADV", 3, "advmod"),
        (s.word(sign), "ADJ", 3, "acomp"),
    ]


def _negated(s: _Sampler, sign: int) -> List[Row]:
    # the N is not W
    return [
        ("the", "DET", 2, "det"),
        (s.noun(), "NOUN", 5, "nsubj"),
        ("is", "VERB", 5, "cop"),
        (s.negator(), "ADV", 5, "neg"),
        (s.word(-sign), "ADJ", 0, "root"),
    ]


def _negated_amod(s: _Sampler, sign: int) -> List[Row]:
    # it is not a INT W N
    return [
        ("it", "PRON", 7, "nsubj"),
        ("is", "VERB", 7, "cop"),
        (s.negator(), "ADV", 7, "neg"),
        ("a", "DET", 7, "det"),
        (s.intensifier(), "ADV", 6, "advmod"),
        (s.word(-sign), "ADJ", 7, "amod"),
        (s.noun(), "NOUN", 0, "root"),
    ]


def _adversative(s: _Sampler, sign: int) -> List[Row]:
    # the N is W1 but the N2 is W2
    return [
        ("the", "DET", 2, "det"),
        (s.noun(), "NOUN", 4, "nsubj"),
        ("is", "VERB", 4, "cop"),
        (s.word(-sign), "ADJ", 0, "root"),
        ("but", "CONJ", 4, "cc"),
        ("the", "DET", 7, "det"),
        (s.noun(), "NOUN", 9, "nsubj"),
        ("is", "VERB", 9, "cop"),
        (s.word(sign), "ADJ", 4, "conj"),
    ]


def _conditional(s: _Sampler, sign: int) -> List[Row]:
    # if the N is W1 , the N2 is W2
    return [
        ("if", "SCONJ", 5, "mark"),
        ("the", "DET", 3, "det"),
        (s.noun(), "NOUN", 5, "nsubj"),
        ("is", "VERB", 5, "cop"),
        (s.word(-sign), "ADJ", 10, "advcl"),
        (",", "PUNCT", 10, "punct"),
        ("the", "DET", 8, "det"),
        (s.noun(), "NOUN", 10, "nsubj"),
        ("is", "VERB", 10, "cop"),
        (s.word(sign), "ADJ", 0, "root"),
    ]


Template = Callable[[_Sampler, int], List[Row]]

NEGATED_TEMPLATES: Tuple[Template, ...] = (_negated, _negated_amod)
OTHER_TEMPLATES: Tuple[Template, ...] = (_plain, _intensified, _acomp, _adversative, _conditional)


def _tree(rows: Sequence[Row], sentence_id: str) -> DepTree:
    tokens = [
        Token(id=i, form=form, lemma=form.lower(), upos=upos, head=head, deprel=deprel)
        for i, (form, upos, head, deprel) in enumerate(rows, start=1)
    ]
    return DepTree(tuple(tokens), sentence_id)


def _sentence(
    sampler: _Sampler,
    analyzer: SentimentAnalyzer,
    sign: int,
    negated: bool,
    sentence_id: str,
) -> DepTree:
    templates = NEGATED_TEMPLATES if negated else OTHER_TEMPLATES
    for _ in range(MAX_SENTENCE_TRIES):
        template = templates[int(sampler.rng.integers(len(templates)))]
        tree = _tree(template(sampler, sign), sentence_id)
        so = analyzer.tree_so(tree)
        if so * sign > 0:
            return tree
    # plain sentences always carry the requested sign
    return _tree(_plain(sampler, sign), sentence_id)


# --- public API --------------------------------------------------------------


def generate_benchmark(
    n_docs: int = 500,
    seed: int = 0,
    min_sentences: int = 16,
    max_sentences: int = 24,
    negation_share: Tuple[float, float] = (0.3, 0.9),
    lexicon: Optional[Lexicon] = None,
    rules: Optional[RuleSet] = None,
) -> Corpus:
    """
    Balanced-ish corpus of `n_docs` documents labelled by the engine with All rules.
    """
    if n_docs < 1 or not 1 <= min_sentences <= max_sentences:
        raise ValueError("need n_docs >= 1 and 1 <= min_sentences <= max_sentences")
    lexicon = lexicon or toy_lexicon()
    analyzer = SentimentAnalyzer(lexicon, (rules or RuleSet()).for_subset("All"))

    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    sampler = _Sampler(rng)
    low, high = negation_share

    trees: List[DepTree] = []
    docs: List[Document] = []
    for d in range(n_docs):
        doc_id = f"doc{d:04d}"
        sign = 1 if rng.random() < 0.5 else -1
        share = float(rng.uniform(low, high))
        n = int(rng.integers(min_sentences, max_sentences + 1))
        start = len(trees)
        for k in range(n):
            trees.append(_sentence(sampler, analyzer, sign, bool(rng.random() < share), f"{doc_id}.{k + 1}"))
        label = analyzer.classify(trees[start:])
        docs.append(Document(doc_id, label, start, len(trees)))

    corpus = Corpus("synthetic", Treebank(tuple(trees), provenance=f"synthetic(seed={seed})"), tuple(docs))
    logger.info(f"Generated {n_docs} documents, {len(trees)} sentences, {corpus.treebank.num_tokens} tokens")
    return corpus


def generate_treebank(n_tokens: int = 1000, seed: int = 0) -> Treebank:
    """Template sentences, mixed uniformly, until at least `n_tokens` tokens."""
    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    sampler = _Sampler(rng)
    templates = NEGATED_TEMPLATES + OTHER_TEMPLATES
    trees: List[DepTree] = []
    total = 0
    while total < n_tokens:
        template = templates[int(rng.integers(len(templates)))]
        sign = 1 if rng.random() < 0.5 else -1
        tree = _tree(template(sampler, sign), str(len(trees) + 1))
        trees.append(tree)
        total += len(tree)
    return Treebank(tuple(trees), provenance=f"synthetic(seed={seed})")


def write_benchmark(corpus: Corpus, out_dir: Union[str, Path], lexicon: Optional[Lexicon] = None) -> Dict[str, Path]:
    """
    Write corpus.conll, labels.tsv, lexicon.tsv and an experiment.json that
    points at them. Returns the written paths by role.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "corpus": out / "corpus.conll",
        "labels": out / "labels.tsv",
        "lexicon": out / "lexicon.tsv",
        "experiment": out / "experiment.json",
    }
    write_corpus(corpus, paths["corpus"], paths["labels"])
    paths["lexicon"].write_text(dump_lexicon(lexicon or toy_lexicon()), encoding="utf-8")
    spec = {
        "corpus": paths["corpus"].name,
        "labels": paths["labels"].name,
        "lexicon": paths["lexicon"].name,
        "provenance": corpus.treebank.provenance,
    }
    paths["experiment"].write_text(json.dumps(spec, indent=2) + "\n", encoding="utf-8")
    logger.info(f"Wrote synthetic benchmark to {out}")
    return paths
