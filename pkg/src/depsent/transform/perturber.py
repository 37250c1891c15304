"""
Perturber: degrade a gold treebank to a target LAS.

Rules:
- k = round((1 - target_las) * N) tokens are corrupted, chosen uniformly
  among the N scored tokens (punctuation is left alone when excluded).
- A label_error_share of them get a different label only; the rest are
  reattached to another token, never creating a cycle.
- The sentence root, tokens without a usable new head, and reattachments
  that keep hitting cycles (100 tries) fall back to label-only.
- Each sentence draws from its own stream, seeded by (seed, sentence index).
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Tuple, Union

import numpy as np

from depsent.errors import ConfigError, TreeValidationError
from depsent.evaluation.scores import PUNCT_TAGS, attachment_scores
from depsent.treebank.conll import DepTree, Treebank
from depsent.validation.verifier import TreeVerifier

logger = logging.getLogger(__name__)

MAX_REATTACH_TRIES = 100

LABEL, HEAD = "label", "head"


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class PerturbationConfig:
    target_las: float = 1.0
    label_error_share: float = 0.5
    seed: int = 0
    label_inventory: Optional[FrozenSet[str]] = None
    head_error_relabel_prob: float = 0.0

    def __post_init__(self):
        if self.label_inventory is not None:
            object.__setattr__(self, "label_inventory", frozenset(self.label_inventory))
        for name in ("target_las", "label_error_share", "head_error_relabel_prob"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {value}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed}")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PerturbationConfig":
        known = {"target_las", "label_error_share", "seed", "label_inventory", "head_error_relabel_prob"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown perturbation keys: {', '.join(sorted(unknown))}")
        inventory = data.get("label_inventory")
        try:
            return cls(
                target_las=float(data.get("target_las", 1.0)),
                label_error_share=float(data.get("label_error_share", 0.5)),
                seed=int(data.get("seed", 0)),
                label_inventory=frozenset(inventory) if inventory is not None else None,
                head_error_relabel_prob=float(data.get("head_error_relabel_prob", 0.0)),
            )
        except (TypeError, ValueError) as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"invalid perturbation config: {e}") from e

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> "PerturbationConfig":
        with open(path, "r", encoding="utf-8") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigError(f"{path}: invalid JSON: {e}") from e
        if not isinstance(data, Mapping):
            raise ConfigError(f"{path}: expected a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["label_inventory"] = sorted(self.label_inventory) if self.label_inventory is not None else None
        return out


@dataclass(frozen=True)
class PerturbationReport:
    target_las: float
    achieved_las: float
    achieved_uas: float
    achieved_la: float
    corrupted_tokens: int
    discarded_reattachments: int
    label_only: int = 0
    head_errors: int = 0
    fallbacks: int = 0
    shortfall: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _creates_cycle(heads: List[int], token: int, new_head: int) -> bool:
    """True when new_head is dominated by token under the current heads."""
    node = new_head
    for _ in range(len(heads) + 1):
        if node == token:
            return True
        if node == 0:
            return False
        node = heads[node - 1]
    return True


class TreebankPerturber:
    """
    Corrupt gold trees at a controlled rate, logging what was changed per sentence.
    """

    def __init__(self, config: PerturbationConfig, verbose: bool = False):
        self.config = config
        self.verbose = verbose
        self.transformation_log: List[Dict[str, Any]] = []
        self.discarded_reattachments = 0

    def get_transformation_log(self) -> List[Dict[str, Any]]:
        return self.transformation_log

    # --- helpers ---------------------------------------------------------

    def _plan(self, gold: Treebank, exclude_punct: bool = False) -> Dict[int, List[Tuple[int, str]]]:
        """Sentence index -> [(token id, corruption kind)], token order. Only scored tokens are candidates."""
        cfg = self.config
        index = [
            (s, tok.id)
            for s, tree in enumerate(gold)
            for tok in tree
            if not (exclude_punct and tok.upos in PUNCT_TAGS)
        ]
        k = round_half_up((1.0 - cfg.target_las) * len(index))

        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed]))
        chosen = rng.choice(len(index), size=k, replace=False) if k else np.empty(0, dtype=np.int64)
        n_label = round_half_up(cfg.label_error_share * k)

        plan: Dict[int, List[Tuple[int, str]]] = {}
        for rank, flat in enumerate(chosen):
            s, tid = index[int(flat)]
            plan.setdefault(s, []).append((tid, LABEL if rank < n_label else HEAD))
        for items in plan.values():
            items.sort()
        return plan

    def _reattach(self, heads: List[int], gold_head: int, token: int, rng: np.random.Generator) -> bool:
        if heads[token - 1] == 0:
            return False
        candidates = [j for j in range(1, len(heads) + 1) if j != token and j != gold_head]
        if not candidates:
            return False
        for _ in range(MAX_REATTACH_TRIES):
            j = candidates[int(rng.integers(len(candidates)))]
            if _creates_cycle(heads, token, j):
                self.discarded_reattachments += 1
                continue
            heads[token - 1] = j
            return True
        return False

    @staticmethod
    def _relabel(deprels: List[str], gold_label: str, token: int, inventory: List[str], rng) -> bool:
        choices = [label for label in inventory if label != gold_label]
        if not choices:
            return False
        deprels[token - 1] = choices[int(rng.integers(len(choices)))]
        return True

    # --- core API --------------------------------------------------------

    def transform(self, gold: Treebank, exclude_punct: bool = False) -> Tuple[Treebank, PerturbationReport]:
        cfg = self.config
        inventory = sorted(cfg.label_inventory if cfg.label_inventory is not None else gold.labels())
        plan = self._plan(gold, exclude_punct)
        self.discarded_reattachments = 0

        counts = {"label_only": 0, "head_errors": 0, "fallbacks": 0, "shortfall": 0}
        trees: List[DepTree] = []
        for s, tree in enumerate(gold):
            items = plan.get(s)
            if not items:
                trees.append(tree)
                continue

            rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, s]))
            heads = list(tree.heads)
            deprels = list(tree.deprels)
            entry: Dict[str, Any] = {"sentence_id": tree.sentence_id, "label": [], "head": [], "intact": []}

            for tid, kind in items:
                gold_tok = tree.token(tid)
                if kind == HEAD:
                    if self._reattach(heads, gold_tok.head, tid, rng):
                        counts["head_errors"] += 1
                        entry["head"].append(tid)
                        if cfg.head_error_relabel_prob and rng.random() < cfg.head_error_relabel_prob:
                            self._relabel(deprels, gold_tok.deprel, tid, inventory, rng)
                        continue
                    counts["fallbacks"] += 1
                if self._relabel(deprels, gold_tok.deprel, tid, inventory, rng):
                    counts["label_only"] += 1
                    entry["label"].append(tid)
                else:
                    counts["shortfall"] += 1
                    entry["intact"].append(tid)

            trees.append(tree.with_arcs(heads, deprels))
            self.transformation_log.append(entry)

        perturbed = Treebank(tuple(trees), provenance=f"{gold.provenance} perturbed(las={cfg.target_las}, seed={cfg.seed})")

        verified = TreeVerifier().verify(perturbed)
        if not verified["valid"]:
            sentence_id, violations = next(iter(verified["violations"].items()))
            raise TreeValidationError(sentence_id, violations)

        scores = attachment_scores(gold, perturbed, exclude_punct=exclude_punct)
        report = PerturbationReport(
            target_las=cfg.target_las,
            achieved_las=scores.las,
            achieved_uas=scores.uas,
            achieved_la=scores.la,
            corrupted_tokens=counts["label_only"] + counts["head_errors"],
            discarded_reattachments=self.discarded_reattachments,
            **counts,
        )

        if counts["shortfall"]:
            logger.warning(
                f"Target LAS {cfg.target_las} not reached: {counts['shortfall']} tokens could not be corrupted "
                f"(achieved {scores.las:.4f})"
            )
        if self.verbose:
            logger.info(f"Perturbed treebank: {report.to_dict()}")
        return perturbed, report


def perturb_treebank(
    gold: Treebank, cfg: PerturbationConfig, exclude_punct: bool = False
) -> Tuple[Treebank, PerturbationReport]:
    return TreebankPerturber(cfg).transform(gold, exclude_punct)
