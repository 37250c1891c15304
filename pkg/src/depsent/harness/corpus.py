"""
Sentiment corpora: a treebank split into labelled documents.

Two on-disk shapes are supported:
- one CoNLL file + sidecar `doc_id<TAB>pos|neg|_<TAB>start<TAB>end`
  (0-based, half-open sentence ranges);
- a directory of `*.conll` files, one document each (sorted by name),
  + sidecar `doc_id<TAB>pos|neg`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from depsent.errors import CorpusError
from depsent.sentiment.composer import PolarityLabel
from depsent.treebank.conll import DepTree, Treebank, read_conll, write_conll_file

logger = logging.getLogger(__name__)

UNLABELED = "_"


@dataclass(frozen=True)
class Document:
    doc_id: str
    label: Optional[PolarityLabel]
    start: int
    end: int

    def __len__(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class Corpus:
    name: str
    treebank: Treebank
    documents: Tuple[Document, ...]
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "documents", tuple(self.documents))
        n = len(self.treebank)
        for doc in self.documents:
            if not 0 <= doc.start < doc.end <= n:
                raise CorpusError(f"document {doc.doc_id} spans sentences [{doc.start}, {doc.end}) outside [0, {n})")

    def __len__(self) -> int:
        return len(self.documents)

    def doc_trees(self, doc: Document, treebank: Optional[Treebank] = None) -> Sequence[DepTree]:
        """Sentences of `doc`, taken from `treebank` (an aligned parse) or the corpus itself."""
        tb = treebank if treebank is not None else self.treebank
        return tb.trees[doc.start:doc.end]

    @property
    def labels(self) -> List[Optional[PolarityLabel]]:
        return [d.label for d in self.documents]

    def require_labels(self) -> None:
        missing = [d.doc_id for d in self.documents if d.label is None]
        if missing:
            raise CorpusError("documents without gold polarity", missing)


def _parse_label(value: str, doc_id: str, line_number: int) -> Optional[PolarityLabel]:
    if value.strip() in ("", UNLABELED):
        return None
    try:
        return PolarityLabel.parse(value)
    except ValueError:
        raise CorpusError(f"labels line {line_number}: bad polarity {value!r} for {doc_id}") from None


def _read_sidecar(path: Path) -> List[Tuple[int, List[str]]]:
    rows = []
    with open(path, "r", encoding="utf-8") as f:
        for line_number, raw in enumerate(f, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            rows.append((line_number, line.split("\t")))
    return rows


def _load_file_corpus(path: Path, labels: Path) -> Corpus:
    tb = read_conll(path)
    docs: List[Document] = []
    seen = set()
    for line_number, cols in _read_sidecar(labels):
        if len(cols) != 4:
            raise CorpusError(f"labels line {line_number}: expected doc_id, label, start, end")
        doc_id = cols[0]
        if doc_id in seen:
            raise CorpusError(f"labels line {line_number}: duplicate document id {doc_id}")
        seen.add(doc_id)
        try:
            start, end = int(cols[2]), int(cols[3])
        except ValueError:
            raise CorpusError(f"labels line {line_number}: non-integer sentence range") from None
        docs.append(Document(doc_id, _parse_label(cols[1], doc_id, line_number), start, end))

    covered = sum(len(d) for d in docs)
    if covered != len(tb):
        logger.warning(f"Documents cover {covered} of {len(tb)} sentences in {path}")
    return Corpus(path.stem, tb, tuple(docs), provenance=str(path))


def _load_dir_corpus(path: Path, labels: Path) -> Corpus:
    files = sorted(path.glob("*.conll"))
    by_id = {f.stem: f for f in files}
    rows = _read_sidecar(labels)
    label_of: Dict[str, Optional[PolarityLabel]] = {}
    for line_number, cols in rows:
        if len(cols) < 2:
            raise CorpusError(f"labels line {line_number}: expected doc_id, label")
        label_of[cols[0]] = _parse_label(cols[1], cols[0], line_number)

    missing = sorted(set(by_id) ^ set(label_of))
    if missing:
        raise CorpusError("documents and labels do not match", missing)

    trees: List[DepTree] = []
    docs: List[Document] = []
    for doc_id in sorted(by_id):
        tb = read_conll(by_id[doc_id])
        docs.append(Document(doc_id, label_of[doc_id], len(trees), len(trees) + len(tb)))
        trees.extend(tb.trees)
    return Corpus(path.name, Treebank(tuple(trees), provenance=str(path)), tuple(docs), provenance=str(path))


def load_corpus(path: Union[str, Path], labels: Union[str, Path]) -> Corpus:
    path, labels = Path(path), Path(labels)
    corpus = _load_dir_corpus(path, labels) if path.is_dir() else _load_file_corpus(path, labels)
    logger.info(f"Loaded corpus {corpus.name}: {len(corpus)} documents, {len(corpus.treebank)} sentences")
    return corpus


def write_corpus(corpus: Corpus, conll_path: Union[str, Path], labels_path: Union[str, Path]) -> None:
    write_conll_file(corpus.treebank, conll_path)
    lines = [
        f"{d.doc_id}\t{d.label.value if d.label else UNLABELED}\t{d.start}\t{d.end}" for d in corpus.documents
    ]
    Path(labels_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
