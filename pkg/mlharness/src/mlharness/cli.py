"""Command-line entry point.

Reads a feature CSV, writes an evaluation report as JSON to --out or
stdout. Exit codes: 0 success, 1 usage or evaluation error (message on
stderr).
"""

import argparse
import json
import sys

from mlharness import __version__
from mlharness.errors import HarnessError
from mlharness.evaluate import classify, regress
from mlharness.importance import DEFAULT_DISTANCE_THRESHOLD, feature_importance


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlharness", description="evaluation harness over CNF feature tables"
    )
    parser.add_argument("--version", action="version", version=f"mlharness {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="cross-validated balanced accuracy")
    p_classify.add_argument("csv")
    p_classify.add_argument("--label-col", default="label")

    p_regress = sub.add_parser("regress", help="cross-validated adjusted R-squared")
    p_regress.add_argument("csv")
    p_regress.add_argument("--target-col", default="label")

    p_importance = sub.add_parser("importance", help="top permutation importances")
    p_importance.add_argument("csv")
    p_importance.add_argument("--label-col", default="label")
    p_importance.add_argument("--threshold", type=float, default=DEFAULT_DISTANCE_THRESHOLD)
    p_importance.add_argument("--top", type=int, default=5)

    for sub_parser in (p_classify, p_regress, p_importance):
        sub_parser.add_argument("--seed", type=int, default=0)
        sub_parser.add_argument("--folds", type=int, default=5)
        sub_parser.add_argument("--out", default=None, help="output JSON path (default stdout)")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        if args.command == "classify":
            report = classify(args.csv, args.label_col, seed=args.seed, folds=args.folds)
            _emit(report.to_json(), args.out)
        elif args.command == "regress":
            report = regress(args.csv, args.target_col, seed=args.seed, folds=args.folds)
            _emit(report.to_json(), args.out)
        else:
            entries = feature_importance(
                args.csv,
                args.label_col,
                seed=args.seed,
                folds=args.folds,
                threshold=args.threshold,
                top=args.top,
            )
            payload = {
                "tool": {"name": "mlharness", "version": __version__},
                "task": "importance",
                "seed": args.seed,
                "top": [
                    {
                        "feature": e.feature,
                        "column": e.column,
                        "importance": e.importance,
                        "cluster": list(e.cluster),
                    }
                    for e in entries
                ],
            }
            _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    except (HarnessError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
