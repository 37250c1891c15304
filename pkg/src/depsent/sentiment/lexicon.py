"""
Semantic-orientation lexicon.

File format (tab-separated, UTF-8, '#' comments allowed):
    so   <form> [<upos>|_] <value>     subjective word
    int  <form> [<upos>|_] <weight>    intensifier (weight > -1; negative = downtoner)
    neg  <form>                        negator
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Optional, Tuple, Union

from depsent.errors import LexiconError

logger = logging.getLogger(__name__)

ANY_POS = "_"

SO, INT, NEG = "so", "int", "neg"


@dataclass(frozen=True)
class Lexicon:
    subjective: Dict[Tuple[str, Optional[str]], float] = field(default_factory=dict)
    intensifiers: Dict[str, float] = field(default_factory=dict)
    negators: FrozenSet[str] = frozenset()
    adversative_markers: FrozenSet[str] = frozenset({"but"})
    conditional_markers: FrozenSet[str] = frozenset({"if"})

    def __post_init__(self):
        for name in ("negators", "adversative_markers", "conditional_markers"):
            object.__setattr__(self, name, frozenset(w.lower() for w in getattr(self, name)))
        subjective: Dict[Tuple[str, Optional[str]], float] = {}
        for (form, upos), value in self.subjective.items():
            key = (form.lower(), upos)
            if subjective.get(key, value) != value:
                raise LexiconError(f"entries for {form!r} disagree once lowercased")
            subjective[key] = value
        intensifiers: Dict[str, float] = {}
        for form, weight in self.intensifiers.items():
            if weight <= -1:
                raise LexiconError(f"intensifier {form!r} has weight {weight} <= -1")
            if intensifiers.get(form.lower(), weight) != weight:
                raise LexiconError(f"intensifier {form!r} disagrees with another casing")
            intensifiers[form.lower()] = weight
        object.__setattr__(self, "subjective", subjective)
        object.__setattr__(self, "intensifiers", intensifiers)

    def lookup(self, form: str, upos: Optional[str] = None) -> float:
        """SO of a word; the (form, upos) entry wins over (form, any). Unknown words are 0."""
        key = form.lower()
        if upos is not None and (key, upos) in self.subjective:
            return self.subjective[(key, upos)]
        return self.subjective.get((key, None), 0.0)

    def intensifier_weight(self, form: str) -> Optional[float]:
        return self.intensifiers.get(form.lower())

    def counts(self) -> Dict[str, int]:
        return {
            "subjective": len(self.subjective),
            "intensifiers": len(self.intensifiers),
            "negators": len(self.negators),
        }


def _number(value: str, line_number: int) -> float:
    try:
        out = float(value)
    except ValueError:
        raise LexiconError(f"non-numeric value {value!r}", line_number) from None
    if not math.isfinite(out):
        raise LexiconError(f"non-finite value {value!r}", line_number)
    return out


def parse_lexicon(
    lines: Iterable[str],
    adversative_markers: Iterable[str] = ("but",),
    conditional_markers: Iterable[str] = ("if",),
) -> Lexicon:
    subjective: Dict[Tuple[str, Optional[str]], float] = {}
    intensifiers: Dict[str, float] = {}
    negators = set()

    for line_number, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        kind = cols[0].strip().lower()

        if kind == NEG:
            if len(cols) < 2 or not cols[1]:
                raise LexiconError("negator line needs a form", line_number)
            form = cols[1].lower()
            if form in negators:
                raise LexiconError(f"duplicate negator {form!r}", line_number)
            negators.add(form)
            continue

        if kind not in (SO, INT):
            raise LexiconError(f"unknown entry kind {cols[0]!r}", line_number)
        if len(cols) == 3:
            form, upos, value = cols[1], None, cols[2]
        elif len(cols) == 4:
            form, upos, value = cols[1], (None if cols[2] in ("", ANY_POS) else cols[2]), cols[3]
        else:
            raise LexiconError(f"expected 3 or 4 columns, got {len(cols)}", line_number)
        form = form.lower()
        number = _number(value, line_number)

        if kind == SO:
            if (form, upos) in subjective:
                raise LexiconError(f"duplicate entry ({form!r}, {upos or ANY_POS})", line_number)
            subjective[(form, upos)] = number
        else:
            if form in intensifiers:
                raise LexiconError(f"duplicate intensifier {form!r}", line_number)
            if number <= -1:
                raise LexiconError(f"intensifier weight {number} must be > -1", line_number)
            intensifiers[form] = number

    lex = Lexicon(
        subjective=subjective,
        intensifiers=intensifiers,
        negators=frozenset(negators),
        adversative_markers=frozenset(adversative_markers),
        conditional_markers=frozenset(conditional_markers),
    )
    logger.info(f"Loaded lexicon: {lex.counts()}")
    return lex


def load_lexicon(path: Union[str, Path], **markers: Iterable[str]) -> Lexicon:
    with open(path, "r", encoding="utf-8") as f:
        return parse_lexicon(f, **markers)


def dump_lexicon(lex: Lexicon) -> str:
    """Inverse of parse_lexicon, entries sorted for stable files."""
    lines = []
    for (form, upos), value in sorted(lex.subjective.items(), key=lambda kv: (kv[0][0], kv[0][1] or "")):
        lines.append(f"{SO}\t{form}\t{upos or ANY_POS}\t{value!r}")
    for form, weight in sorted(lex.intensifiers.items()):
        lines.append(f"{INT}\t{form}\t{ANY_POS}\t{weight!r}")
    for form in sorted(lex.negators):
        lines.append(f"{NEG}\t{form}")
    return "\n".join(lines) + "\n"
