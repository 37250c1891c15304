"""
Structural validation of dependency trees.

validate_tree never raises: every broken invariant becomes one Violation in
the returned report, so an empty report means the tree is usable.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Dict, Iterable, List, Tuple

if TYPE_CHECKING:
    from depsent.treebank.conll import DepTree

logger = logging.getLogger(__name__)

ID_GAP = "id-gap"
SELF_LOOP = "self-loop"
HEAD_OUT_OF_RANGE = "head-out-of-range"
NO_ROOT = "no-root"
MULTI_ROOT = "multi-root"
CYCLE = "cycle"
UNREACHABLE = "unreachable"


@dataclass(frozen=True)
class Violation:
    kind: str
    token_ids: Tuple[int, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.kind} at {list(self.token_ids)}: {self.message}"


def _find_cycles(heads: Dict[int, int]) -> List[Tuple[int, ...]]:
    """Cycles of the head map, each reported once, smallest id first."""
    cycles: List[Tuple[int, ...]] = []
    state: Dict[int, int] = {}  # 1 = on current path, 2 = done
    for start in sorted(heads):
        path: List[int] = []
        node = start
        while node in heads and node not in state:
            state[node] = 1
            path.append(node)
            node = heads[node]
        if node in heads and state.get(node) == 1:
            cycle = path[path.index(node):]
            k = cycle.index(min(cycle))
            cycles.append(tuple(cycle[k:] + cycle[:k]))
        for n in path:
            state[n] = 2
    return cycles


def validate_tree(t: "DepTree") -> List[Violation]:
    """Return all invariant violations of `t`; empty iff the tree is valid."""
    report: List[Violation] = []
    n = len(t.tokens)

    gaps = tuple(tok.id for pos, tok in enumerate(t.tokens, start=1) if tok.id != pos)
    if gaps:
        report.append(Violation(ID_GAP, gaps, "ids must be contiguous from 1"))

    # Only tokens with usable heads take part in the structural checks.
    heads: Dict[int, int] = {}
    for tok in t.tokens:
        if tok.head == tok.id:
            report.append(Violation(SELF_LOOP, (tok.id,), "token is its own head"))
        elif not 0 <= tok.head <= n:
            report.append(Violation(HEAD_OUT_OF_RANGE, (tok.id,), f"head {tok.head} not in [0, {n}]"))
        else:
            heads[tok.id] = tok.head

    roots = tuple(i for i, h in heads.items() if h == 0)
    if n and not roots:
        report.append(Violation(NO_ROOT, (), "no token attached to 0"))
    elif len(roots) > 1:
        report.append(Violation(MULTI_ROOT, roots, f"{len(roots)} tokens attached to 0"))

    non_root = {i: h for i, h in heads.items() if h != 0}
    cycles = _find_cycles(non_root)
    for cycle in cycles:
        report.append(Violation(CYCLE, cycle, " -> ".join(str(i) for i in cycle)))

    if not cycles and roots:
        reached = set()
        for r in roots:
            reached.update(t.subtree(r))
        unreachable = tuple(tok.id for tok in t.tokens if tok.id not in reached and tok.id in heads)
        if unreachable:
            report.append(Violation(UNREACHABLE, unreachable, "not reachable from the root"))

    return report


class TreeVerifier:
    """
    Validate whole treebanks and keep a log of what was checked.
    """

    def __init__(self, verbose: bool = False):
        self.verbose = verbose
        self.verification_log: List[Dict[str, Any]] = []

    def verify(self, trees: Iterable["DepTree"]) -> Dict[str, Any]:
        invalid: Dict[str, List[Violation]] = {}
        count = 0
        for tree in trees:
            count += 1
            report = validate_tree(tree)
            if report:
                invalid[tree.sentence_id] = report

        results = {
            "trees": count,
            "invalid": len(invalid),
            "valid": not invalid,
            "violations": invalid,
        }

        self.verification_log.append(
            {
                "trees": count,
                "invalid_ids": sorted(invalid),
            }
        )

        if invalid:
            logger.warning(f"{len(invalid)}/{count} trees failed validation")
        elif self.verbose:
            logger.info(f"All {count} trees valid")

        return results

    def get_verification_log(self) -> List[Dict[str, Any]]:
        return list(self.verification_log)
