"""
Semantic orientation of dependency trees by compositional operations.

Each trigger token queues an operation at its node. During a post-order
fold the operation travels towards the root and is dequeued at the first
level where its target predicate matches:

- Intensify / Negate / Nullify: the trigger's head.
- Attenuate ("but"): the marker's head when the marker has siblings to its
  right (they form the adversative conjunct); otherwise one level higher,
  where the conjunct is the branch it arrived through.

Operations still queued above the root are discarded and counted.

At a node the matched operations apply in a fixed order: intensification,
negation of the main material, "but" attenuation, then "if" nullification.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from depsent.errors import EmptyDocumentError
from depsent.sentiment.lexicon import Lexicon
from depsent.sentiment.rules import Flip, NegationStrategy, Rule, RuleSet, Shift
from depsent.treebank.conll import DepTree, Token

logger = logging.getLogger(__name__)

NEG_DEPREL = "neg"
CC_DEPREL = "cc"
MARK_DEPREL = "mark"


class PolarityLabel(str, Enum):
    POSITIVE = "pos"
    NEGATIVE = "neg"

    @classmethod
    def parse(cls, value: str) -> "PolarityLabel":
        key = value.strip().lower()
        if key in ("pos", "positive", "+", "1"):
            return cls.POSITIVE
        if key in ("neg", "negative", "-", "0", "-1"):
            return cls.NEGATIVE
        raise ValueError(f"unknown polarity label {value!r}")


class OpKind(str, Enum):
    INTENSIFY = "Intensify"
    ATTENUATE = "Attenuate"
    NEGATE = "Negate"
    NULLIFY = "Nullify"


@dataclass(frozen=True)
class QueuedOperation:
    kind: OpKind
    parameter: float
    origin: int
    target: str
    hops: int = 0


_TARGETS = {
    OpKind.INTENSIFY: "head node, or its acomp branches",
    OpKind.NEGATE: "phrase rooted at the head",
    OpKind.ATTENUATE: "material outside the adversative conjunct",
    OpKind.NULLIFY: "subtree rooted at the head",
}


# --- primitive operations -----------------------------------------------


def apply_intensification(so: float, weight: float) -> float:
    return so * (1.0 + weight)


def apply_negation(so: float, strategy: NegationStrategy = Flip()) -> float:
    if isinstance(strategy, Shift):
        if so > 0:
            return so - strategy.amount
        if so < 0:
            return so + strategy.amount
        return 0.0
    return -so


def apply_but(main_so: float, but_clause_so: float, factor: float) -> float:
    return main_so * factor + but_clause_so


def apply_if(subtree_so: float) -> float:
    return 0.0


# --- tree analysis ------------------------------------------------------


@dataclass
class TreeAnalysis:
    so: float
    applied: Dict[OpKind, int] = field(default_factory=dict)
    discarded: int = 0


@dataclass
class _Level:
    """Pending state of one node while folding its head."""

    word: float
    value: float = 0.0
    pending: List[QueuedOperation] = field(default_factory=list)


class SentimentAnalyzer:
    """
    Score trees and documents for one (lexicon, rules) pair.

    Counts of applied and discarded operations accumulate in `diagnostics`.
    """

    def __init__(self, lexicon: Lexicon, rules: RuleSet):
        self.lexicon = lexicon
        self.rules = rules
        self.diagnostics: Dict[str, int] = Counter()

    def trigger(self, tok: Token) -> Optional[QueuedOperation]:
        """Operation queued by this token, if it triggers an enabled rule."""
        rules, lex = self.rules, self.lexicon
        form = tok.form.lower()

        if rules.is_enabled(Rule.INTENSIFICATION) and tok.deprel in rules.intensification_requires_deprel:
            weight = lex.intensifier_weight(form)
            if weight is not None:
                return QueuedOperation(OpKind.INTENSIFY, weight, tok.id, _TARGETS[OpKind.INTENSIFY])

        if rules.is_enabled(Rule.NEGATION) and tok.deprel == NEG_DEPREL:
            if not rules.negation_requires_lexicon or form in lex.negators:
                return QueuedOperation(OpKind.NEGATE, 0.0, tok.id, _TARGETS[OpKind.NEGATE])

        if rules.is_enabled(Rule.BUT) and tok.deprel == CC_DEPREL and form in lex.adversative_markers:
            return QueuedOperation(OpKind.ATTENUATE, rules.but_main_factor, tok.id, _TARGETS[OpKind.ATTENUATE])

        if rules.is_enabled(Rule.IF) and tok.deprel == MARK_DEPREL and form in lex.conditional_markers:
            return QueuedOperation(OpKind.NULLIFY, 0.0, tok.id, _TARGETS[OpKind.NULLIFY])

        return None

    def analyze(self, tree: DepTree) -> TreeAnalysis:
        if not self.rules.enabled:
            # No operation can fire: plain sum of word orientations.
            so = 0.0
            for tok in tree:
                so += self.lexicon.lookup(tok.form, tok.upos)
            self.diagnostics["trees"] += 1
            return TreeAnalysis(so)

        levels: Dict[int, _Level] = {}
        applied: Counter = Counter()

        for node in reversed(tree.subtree(tree.root)):
            tok = tree.token(node)
            own = self.trigger(tok)
            level = _Level(word=0.0 if own else self.lexicon.lookup(tok.form, tok.upos))
            self._fold(tree, node, level, levels, applied)
            if own is not None:
                level.pending.append(own)
            levels[node] = level

        top = levels[tree.root]
        for op in top.pending:
            logger.debug(f"sentence {tree.sentence_id}: discarded {op.kind.value} from token {op.origin}")

        self.diagnostics["trees"] += 1
        self.diagnostics["discarded"] += len(top.pending)
        for kind, n in applied.items():
            self.diagnostics[f"applied_{kind.value.lower()}"] += n
        return TreeAnalysis(top.value, dict(applied), len(top.pending))

    def _fold(
        self,
        tree: DepTree,
        node: int,
        level: _Level,
        levels: Dict[int, _Level],
        applied: Counter,
    ) -> None:
        children = tree.children(node)
        branch = {c: levels[c].value for c in children}

        intensify: List[QueuedOperation] = []
        negate: List[QueuedOperation] = []
        attenuate: List[QueuedOperation] = []
        nullify: List[QueuedOperation] = []
        conjunct: Set[int] = set()

        for c in children:
            for op in levels[c].pending:
                op = replace(op, hops=op.hops + 1)
                if op.kind is OpKind.ATTENUATE:
                    if op.hops == 1:
                        right = [s for s in children if s > op.origin]
                        if not right:
                            level.pending.append(op)
                            continue
                        conjunct.update(right)
                    else:
                        conjunct.add(c)
                    attenuate.append(op)
                elif op.kind is OpKind.INTENSIFY:
                    intensify.append(op)
                elif op.kind is OpKind.NEGATE:
                    negate.append(op)
                else:
                    nullify.append(op)

        word = level.word
        for op in sorted(intensify, key=lambda o: o.origin):
            targets = [
                c
                for c in children
                if c != op.origin and tree.token(c).deprel in self.rules.intensification_target_deprel
            ]
            if targets:
                for c in targets:
                    branch[c] = apply_intensification(branch[c], op.parameter)
            else:
                word = apply_intensification(word, op.parameter)

        main = word
        for c in children:
            if c not in conjunct:
                main += branch[c]

        for op in sorted(negate, key=lambda o: o.origin):
            main = apply_negation(main, self.rules.negation_strategy)

        value = main
        if attenuate:
            clause = 0.0
            for c in children:
                if c in conjunct:
                    clause += branch[c]
            ordered = sorted(attenuate, key=lambda o: o.origin)
            for op in ordered[:-1]:
                main = main * op.parameter
            value = apply_but(main, clause, ordered[-1].parameter)

        if nullify:
            value = apply_if(value)

        level.value = value
        for ops in (intensify, negate, attenuate, nullify):
            for op in ops:
                applied[op.kind] += 1

    def tree_so(self, tree: DepTree) -> float:
        return self.analyze(tree).so

    def document_so(self, doc: Sequence[DepTree]) -> float:
        if not doc:
            raise EmptyDocumentError("cannot classify an empty document")
        total = 0.0
        for tree in doc:
            total += self.tree_so(tree)
        return total

    def classify(self, doc: Sequence[DepTree]) -> PolarityLabel:
        total = self.document_so(doc)
        if total > self.rules.classification_threshold:
            return PolarityLabel.POSITIVE
        return PolarityLabel.NEGATIVE


def analyze_tree(t: DepTree, lex: Lexicon, rules: RuleSet) -> float:
    return SentimentAnalyzer(lex, rules).tree_so(t)


def classify_document(doc: Sequence[DepTree], lex: Lexicon, rules: RuleSet) -> PolarityLabel:
    return SentimentAnalyzer(lex, rules).classify(doc)


def classify_documents(
    docs: Iterable[Sequence[DepTree]], lex: Lexicon, rules: RuleSet
) -> List[Tuple[PolarityLabel, float]]:
    analyzer = SentimentAnalyzer(lex, rules)
    out = []
    for doc in docs:
        total = analyzer.document_so(doc)
        label = PolarityLabel.POSITIVE if total > rules.classification_threshold else PolarityLabel.NEGATIVE
        out.append((label, total))
    if analyzer.diagnostics.get("discarded"):
        logger.info(f"Discarded {analyzer.diagnostics['discarded']} unmatched operations")
    return out
