import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from depsent.errors import DepsentError
from depsent.evaluation.scores import attachment_scores, check_alignment, label_report, metric_table
from depsent.harness.corpus import load_corpus
from depsent.harness.experiments import (
    ExperimentSpec,
    classify_corpus,
    compare_systems,
    load_experiment,
    run_ablation,
    run_experiment_curve,
    time_classification,
)
from depsent.harness.reports import FORMATS, emit_reports
from depsent.harness.synthetic import generate_benchmark, write_benchmark
from depsent.sentiment.lexicon import load_lexicon
from depsent.sentiment.rules import RuleSet, canonical_subset
from depsent.transform.perturber import PerturbationConfig, TreebankPerturber
from depsent.treebank.conll import read_conll, write_conll_file

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _subsets(value: str) -> List[str]:
    try:
        return [canonical_subset(v) for v in value.split(",") if v.strip()]
    except DepsentError as e:
        raise argparse.ArgumentTypeError(str(e))


def _subset(value: str) -> str:
    subsets = _subsets(value)
    if len(subsets) != 1:
        raise argparse.ArgumentTypeError(f"expected a single rule subset, got {value!r}")
    return subsets[0]


def _floats(value: str) -> List[float]:
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {value!r}")


def _ints(value: str) -> List[int]:
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    common.add_argument("--format", choices=FORMATS, default="csv", help="report format")
    common.add_argument("-o", "--output-dir", help="write reports here instead of stdout")

    p = _Parser(prog="depsent", description="Rule-based dependency sentiment analysis and parser evaluation.")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    ev = sub.add_parser("evaluate", parents=[common], help="attachment scores and per-label P/R")
    ev.add_argument("gold", help="gold CoNLL file")
    ev.add_argument("pred", nargs="+", help="predicted CoNLL file(s); several give a ranked metric table")
    ev.add_argument("--labels", help="comma-separated dependency types for the P/R table")
    ev.add_argument("--exclude-punct", action="store_true", help="do not score punctuation tokens")

    cl = sub.add_parser("classify", parents=[common], help="per-document polarity")
    cl.add_argument("corpus", help="CoNLL file or directory of documents")
    cl.add_argument("labels", help="labels sidecar")
    cl.add_argument("lexicon", help="lexicon file")
    cl.add_argument("--ruleset", help="RuleSet JSON file")
    cl.add_argument("--rules", type=_subset, help="rule subset to enable (overrides the ruleset's)")
    cl.add_argument("--input", help="aligned parse of the corpus to classify instead of its own trees")

    ab = sub.add_parser("ablate", parents=[common], help="accuracy per input and rule subset")
    ab.add_argument("spec", help="experiment spec JSON")
    ab.add_argument("--rules", type=_subsets, help="comma-separated subsets (default: all six columns)")
    ab.add_argument("--timing", action="store_true", help="also time classification per input (5 runs)")

    pe = sub.add_parser("perturb", parents=[common], help="degrade a gold treebank to a target LAS")
    pe.add_argument("gold", help="gold CoNLL file")
    pe.add_argument("out", help="output CoNLL file")
    pe.add_argument("--config", help="PerturbationConfig JSON")
    pe.add_argument("--target-las", type=float)
    pe.add_argument("--label-error-share", type=float)
    pe.add_argument("--seed", type=int)
    pe.add_argument("--exclude-punct", action="store_true", help="score the report without punctuation")

    cu = sub.add_parser("curve", parents=[common], help="LAS vs sentiment accuracy series")
    cu.add_argument("spec", help="experiment spec JSON")
    cu.add_argument("--targets", type=_floats, help="comma-separated LAS targets")
    cu.add_argument("--seeds", type=_ints, help="comma-separated seed offsets")
    cu.add_argument("--seed", type=int, help="override the spec seed")
    cu.add_argument("--reference", help="treebank for the metric series")

    co = sub.add_parser("compare", parents=[common], help="chi-squared test between two inputs")
    co.add_argument("spec", help="experiment spec JSON")
    co.add_argument("input_a")
    co.add_argument("input_b")
    co.add_argument("--rules", type=_subset, default="All", help="rule subset (default All)")

    sy = sub.add_parser("synth", parents=[common], help="write a synthetic benchmark")
    sy.add_argument("out", help="output directory")
    sy.add_argument("--docs", type=int, default=500)
    sy.add_argument("--seed", type=int, default=0)
    return p


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _evaluate(args) -> Dict[str, object]:
    gold = read_conll(args.gold)
    preds = {Path(p).stem: read_conll(p) for p in args.pred}
    labels = [name for name in args.labels.split(",") if name] if args.labels else None
    if len(preds) == 1:
        pred = next(iter(preds.values()))
        return {
            "evaluation": (
                attachment_scores(gold, pred, args.exclude_punct),
                label_report(gold, pred, labels, args.exclude_punct),
            )
        }
    return {"metrics": metric_table(gold, preds, labels, args.exclude_punct)}


def _classify(args) -> Dict[str, object]:
    corpus = load_corpus(args.corpus, args.labels)
    lexicon = load_lexicon(args.lexicon)
    rules = RuleSet.from_json(args.ruleset) if args.ruleset else RuleSet.all()
    if args.rules:
        rules = rules.for_subset(args.rules)
    treebank = corpus.treebank
    if args.input:
        treebank = read_conll(args.input)
        check_alignment(corpus.treebank, treebank)
    return {"classification": classify_corpus(corpus, treebank, lexicon, rules)}


def _ablate(args) -> Dict[str, object]:
    exp = load_experiment(ExperimentSpec.from_json(args.spec))
    results: Dict[str, object] = {"ablation": run_ablation(exp, args.rules)}
    if args.timing:
        results["timing"] = time_classification(exp)
    return results


def _perturb(args) -> Dict[str, object]:
    cfg = PerturbationConfig.from_json(args.config) if args.config else PerturbationConfig()
    overrides = {
        "target_las": args.target_las,
        "label_error_share": args.label_error_share,
        "seed": args.seed,
    }
    data = cfg.to_dict()
    data.update({k: v for k, v in overrides.items() if v is not None})
    cfg = PerturbationConfig.from_dict(data)

    gold = read_conll(args.gold)
    perturbed, report = TreebankPerturber(cfg, verbose=args.verbose > 0).transform(gold, args.exclude_punct)
    write_conll_file(perturbed, args.out)
    print(f"Wrote: {args.out}", file=sys.stderr)
    return {"perturbation": report}


def _curve(args) -> Dict[str, object]:
    spec = ExperimentSpec.from_json(args.spec)
    exp = load_experiment(spec)
    if args.seed is not None:
        exp.seed = args.seed
    curve = exp.curve
    if args.targets or args.seeds:
        curve = replace(curve, targets=tuple(args.targets or curve.targets), seeds=tuple(args.seeds or curve.seeds))
    exp.curve = curve
    reference = read_conll(args.reference) if args.reference else None
    return {"curve": run_experiment_curve(exp, reference)}


def _compare(args) -> Dict[str, object]:
    exp = load_experiment(ExperimentSpec.from_json(args.spec))
    result = compare_systems(exp, args.input_a, args.input_b, args.rules)
    return {"comparison": (result, (args.input_a, args.input_b))}


def _synth(args) -> Dict[str, object]:
    corpus = generate_benchmark(n_docs=args.docs, seed=args.seed)
    paths = write_benchmark(corpus, args.out)
    print(f"Wrote: {paths['experiment']}", file=sys.stderr)
    return {}


_COMMANDS = {
    "evaluate": _evaluate,
    "classify": _classify,
    "ablate": _ablate,
    "perturb": _perturb,
    "curve": _curve,
    "compare": _compare,
    "synth": _synth,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        results = _COMMANDS[args.command](args)
        if results:
            emit_reports(results, args.format, args.output_dir)
    except (DepsentError, OSError) as e:
        print(f"depsent: error: {e}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
