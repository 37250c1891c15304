"""
CoNLL reader/writer and the dependency tree model shared by every module.

Column layout (CoNLL-X / Universal Treebank v2.0 shape):
    ID FORM LEMMA UPOS XPOS FEATS HEAD DEPREL [DEPS MISC]

Rules:
- 10 columns, or 8 when the two trailing columns are absent.
- ids containing "-" or "." (multi-word tokens, empty nodes) are skipped.
- "# sent_id = X" comments name the sentence; other comments are ignored.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from depsent.errors import ConllFormatError, TreeValidationError
from depsent.validation.verifier import validate_tree

logger = logging.getLogger(__name__)

ID, FORM, LEMMA, UPOS, XPOS, FEATS, HEAD, DEPREL, DEPS, MISC = range(10)

EMPTY = "_"
SENT_ID_PREFIX = "# sent_id ="


def _norm(value: str) -> str:
    return value if value else EMPTY


@dataclass(frozen=True)
class Token:
    """One word of a sentence. `head` 0 is the artificial root."""

    id: int
    form: str
    lemma: str
    upos: str
    head: int
    deprel: str
    xpos: str = EMPTY
    feats: str = EMPTY
    deps: str = EMPTY
    misc: str = EMPTY

    def __post_init__(self):
        for name in ("lemma", "upos", "deprel", "xpos", "feats", "deps", "misc"):
            object.__setattr__(self, name, _norm(getattr(self, name)))

    def to_fields(self) -> List[str]:
        return [
            str(self.id),
            self.form,
            self.lemma,
            self.upos,
            self.xpos,
            self.feats,
            str(self.head),
            self.deprel,
            self.deps,
            self.misc,
        ]


@dataclass(frozen=True)
class DepTree:
    """A sentence as a sequence of tokens; ids are 1-based positions."""

    tokens: Tuple[Token, ...]
    sentence_id: str = "1"

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def token(self, i: int) -> Token:
        """Token by 1-based id."""
        if i <= 0:
            raise IndexError(i)
        return self.tokens[i - 1]

    @property
    def heads(self) -> Tuple[int, ...]:
        return tuple(t.head for t in self.tokens)

    @property
    def deprels(self) -> Tuple[str, ...]:
        return tuple(t.deprel for t in self.tokens)

    @property
    def forms(self) -> Tuple[str, ...]:
        return tuple(t.form for t in self.tokens)

    @cached_property
    def _children(self) -> Dict[int, Tuple[int, ...]]:
        index: Dict[int, List[int]] = {i: [] for i in range(len(self.tokens) + 1)}
        for t in self.tokens:
            if t.head in index and t.head != t.id:
                index[t.head].append(t.id)
        return {h: tuple(c) for h, c in index.items()}

    def children(self, head: int) -> Tuple[int, ...]:
        """Dependents of `head` in token order; children(0) is the root."""
        return self._children.get(head, ())

    @property
    def root(self) -> int:
        roots = self.children(0)
        return roots[0] if roots else 0

    def subtree(self, head: int) -> List[int]:
        """Ids dominated by `head` (inclusive), pre-order."""
        out: List[int] = []
        stack = [head]
        seen = set()
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            out.append(node)
            stack.extend(reversed(self.children(node)))
        return out

    def with_arcs(self, heads: Sequence[int], deprels: Sequence[str]) -> "DepTree":
        """Copy of this tree with heads/deprels replaced, all other columns kept."""
        if len(heads) != len(self.tokens) or len(deprels) != len(self.tokens):
            raise ValueError(f"expected {len(self.tokens)} heads and deprels")
        tokens = tuple(
            replace(t, head=int(h), deprel=d) for t, h, d in zip(self.tokens, heads, deprels)
        )
        return DepTree(tokens, self.sentence_id)


@dataclass(frozen=True)
class Treebank:
    trees: Tuple[DepTree, ...]
    provenance: str = field(default="", compare=False)
    skipped_lines: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self) -> Iterator[DepTree]:
        return iter(self.trees)

    def __getitem__(self, i: int) -> DepTree:
        return self.trees[i]

    @property
    def num_tokens(self) -> int:
        return sum(len(t) for t in self.trees)

    def labels(self) -> List[str]:
        """Sorted set of deprels used in the treebank."""
        return sorted({tok.deprel for tree in self.trees for tok in tree})


def _parse_int(value: str, column: str, line_number: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConllFormatError(f"non-integer {column} {value!r}", line_number) from None


def _parse_token(line: str, line_number: int) -> Optional[Token]:
    columns = line.split("\t")
    if len(columns) not in (8, 10):
        raise ConllFormatError(f"expected 8 or 10 columns, got {len(columns)}", line_number)

    if "-" in columns[ID] or "." in columns[ID]:
        return None

    if len(columns) == 8:
        columns += [EMPTY, EMPTY]

    return Token(
        id=_parse_int(columns[ID], "id", line_number),
        form=columns[FORM],
        lemma=columns[LEMMA],
        upos=columns[UPOS],
        xpos=columns[XPOS],
        feats=columns[FEATS],
        head=_parse_int(columns[HEAD], "head", line_number),
        deprel=columns[DEPREL],
        deps=columns[DEPS],
        misc=columns[MISC],
    )


def parse_conll(text: str, provenance: str = "", validate: bool = True) -> Treebank:
    """Parse CoNLL text into a Treebank, validating every tree."""
    trees: List[DepTree] = []
    tokens: List[Token] = []
    sent_id: Optional[str] = None
    skipped = 0

    def flush():
        nonlocal tokens, sent_id
        if not tokens:
            sent_id = None
            return
        tree = DepTree(tuple(tokens), sent_id if sent_id is not None else str(len(trees) + 1))
        if validate:
            report = validate_tree(tree)
            if report:
                raise TreeValidationError(tree.sentence_id, report)
        trees.append(tree)
        tokens = []
        sent_id = None

    # only "\n" ends a line; forms may contain other Unicode line separators
    for line_number, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            if line.startswith(SENT_ID_PREFIX):
                sent_id = line[len(SENT_ID_PREFIX):].strip()
            continue
        tok = _parse_token(line, line_number)
        if tok is None:
            skipped += 1
            continue
        tokens.append(tok)
    flush()

    if skipped:
        logger.warning(f"Skipped {skipped} multi-word/empty-node lines")
    logger.info(f"Parsed {len(trees)} sentences, {sum(len(t) for t in trees)} tokens")
    return Treebank(tuple(trees), provenance, skipped)


def write_conll(tb: Treebank) -> str:
    """Serialize a treebank; parse_conll(write_conll(tb)) == tb."""
    lines: List[str] = []
    for position, tree in enumerate(tb.trees, start=1):
        # positional ids are implicit on read
        if tree.sentence_id != str(position):
            lines.append(f"{SENT_ID_PREFIX} {tree.sentence_id}")
        for tok in tree.tokens:
            lines.append("\t".join(tok.to_fields()))
        lines.append("")
    return "\n".join(lines) + ("\n" if lines else "")


def read_conll(path: Union[str, Path], validate: bool = True) -> Treebank:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse_conll(text, provenance=str(path), validate=validate)


def write_conll_file(tb: Treebank, path: Union[str, Path]) -> None:
    Path(path).write_text(write_conll(tb), encoding="utf-8")
