"""
Which compositional operations are enabled, and their parameters.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, Mapping, Tuple, Union

from depsent.errors import ConfigError


class Rule(str, Enum):
    INTENSIFICATION = "Intensification"
    BUT = "But"
    NEGATION = "Negation"
    IF = "If"


ALL_RULES: FrozenSet[Rule] = frozenset(Rule)

# Ablation columns, in table order.
SUBSET_COLUMNS: Tuple[str, ...] = ("All", "None", "Intensification", "but", "if", "Negation")

_SUBSETS: Dict[str, FrozenSet[Rule]] = {
    "all": ALL_RULES,
    "none": frozenset(),
    "intensification": frozenset({Rule.INTENSIFICATION}),
    "but": frozenset({Rule.BUT}),
    "if": frozenset({Rule.IF}),
    "negation": frozenset({Rule.NEGATION}),
}


def canonical_subset(name: str) -> str:
    """Map a user-supplied subset name to its column header."""
    key = name.strip().lower()
    for column in SUBSET_COLUMNS:
        if column.lower() == key:
            return column
    raise ConfigError(f"unknown rule subset {name!r}; expected one of {', '.join(SUBSET_COLUMNS)}")


def rules_for_subset(name: str) -> FrozenSet[Rule]:
    return _SUBSETS[canonical_subset(name).lower()]


def parse_rules(names: Iterable[str]) -> FrozenSet[Rule]:
    """Rule names, or the aliases All/None, to a rule set."""
    out = set()
    for name in names:
        key = name.strip().lower()
        if key in ("all", "none"):
            out |= _SUBSETS[key]
            continue
        matched = [r for r in Rule if r.value.lower() == key]
        if not matched:
            raise ConfigError(f"unknown rule {name!r}")
        out.add(matched[0])
    return frozenset(out)


@dataclass(frozen=True)
class Flip:
    """Negation reverses the sign."""


@dataclass(frozen=True)
class Shift:
    """Negation moves the value `amount` towards, and past, zero."""

    amount: float = 4.0

    def __post_init__(self):
        if not (self.amount > 0 and math.isfinite(self.amount)):
            raise ConfigError(f"shift amount must be a positive number, got {self.amount}")


NegationStrategy = Union[Flip, Shift]


@dataclass(frozen=True)
class RuleSet:
    enabled: FrozenSet[Rule] = frozenset()
    intensification_requires_deprel: FrozenSet[str] = frozenset({"advmod", "amod", "nmod"})
    intensification_target_deprel: FrozenSet[str] = frozenset({"acomp"})
    negation_strategy: NegationStrategy = field(default_factory=Flip)
    but_main_factor: float = 0.5
    classification_threshold: float = 0.0
    negation_requires_lexicon: bool = False

    def __post_init__(self):
        object.__setattr__(self, "enabled", frozenset(Rule(r) for r in self.enabled))
        object.__setattr__(self, "intensification_requires_deprel", frozenset(self.intensification_requires_deprel))
        object.__setattr__(self, "intensification_target_deprel", frozenset(self.intensification_target_deprel))
        if not 0 < self.but_main_factor <= 1:
            raise ConfigError(f"but_main_factor must be in (0, 1], got {self.but_main_factor}")
        if not isinstance(self.negation_strategy, (Flip, Shift)):
            raise ConfigError(f"unsupported negation strategy {self.negation_strategy!r}")

    @classmethod
    def all(cls, **kwargs: Any) -> "RuleSet":
        return cls(enabled=ALL_RULES, **kwargs)

    @classmethod
    def none(cls, **kwargs: Any) -> "RuleSet":
        return cls(enabled=frozenset(), **kwargs)

    def is_enabled(self, rule: Rule) -> bool:
        return rule in self.enabled

    def with_enabled(self, rules: Iterable[Rule]) -> "RuleSet":
        return replace(self, enabled=frozenset(rules))

    def for_subset(self, name: str) -> "RuleSet":
        return self.with_enabled(rules_for_subset(name))

    # --- (de)serialization ------------------------------------------------

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RuleSet":
        known = {
            "enabled_rules",
            "negation_strategy",
            "shift_amount",
            "but_main_factor",
            "threshold",
            "negation_requires_lexicon",
        }
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown ruleset keys: {', '.join(sorted(unknown))}")

        strategy_name = str(data.get("negation_strategy", "flip")).lower()
        if strategy_name == "flip":
            strategy: NegationStrategy = Flip()
        elif strategy_name == "shift":
            try:
                amount = float(data.get("shift_amount", 4.0))
            except (TypeError, ValueError) as e:
                raise ConfigError(f"shift_amount must be a number: {e}") from e
            strategy = Shift(amount)
        else:
            raise ConfigError(f"negation_strategy must be 'flip' or 'shift', got {strategy_name!r}")

        enabled = data.get("enabled_rules", ["All"])
        if isinstance(enabled, str):
            enabled = [enabled]
        try:
            return cls(
                enabled=parse_rules(enabled),
                negation_strategy=strategy,
                but_main_factor=float(data.get("but_main_factor", 0.5)),
                classification_threshold=float(data.get("threshold", 0.0)),
                negation_requires_lexicon=bool(data.get("negation_requires_lexicon", False)),
            )
        except (TypeError, ValueError) as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"invalid ruleset: {e}") from e

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> "RuleSet":
        with open(path, "r", encoding="utf-8") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigError(f"{path}: invalid JSON: {e}") from e
        if not isinstance(data, Mapping):
            raise ConfigError(f"{path}: expected a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "enabled_rules": sorted(r.value for r in self.enabled),
            "negation_strategy": "shift" if isinstance(self.negation_strategy, Shift) else "flip",
            "but_main_factor": self.but_main_factor,
            "threshold": self.classification_threshold,
            "negation_requires_lexicon": self.negation_requires_lexicon,
        }
        if isinstance(self.negation_strategy, Shift):
            out["shift_amount"] = self.negation_strategy.amount
        return out
