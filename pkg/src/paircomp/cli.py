"""Command-line entry points: weights, audit, baseline, aggregate, simulate, serve."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import matrix_io
from .baselines import c_frequencies, preference_intensities, thurstone_scale
from .core import saaty9, three_point
from .errors import PaircompError
from .session import StudyStore
from .simulation import (
    control_effect_experiment,
    scale_accuracy_experiment,
    sensitivity_experiment,
)
from .transitivity import classify_triad, full_matrix_audit
from .weights import approx_weights, consistency_report, eigen_weights

DEFAULT_DATA_DIR = os.environ.get("PAIRWISE_DATA_DIR") or "./paircomp-data"


def _parse_scale(spec: str):
    if spec == "saaty9":
        return saaty9()
    if spec.startswith("three:"):
        f, g = spec[len("three:"):].split(",")
        return three_point(int(f), int(g))
    raise argparse.ArgumentTypeError(
        f"unknown scale spec {spec!r}; use saaty9 or three:F,G"
    )


def _cmd_weights(args) -> int:
    matrix, _ = matrix_io.load_matrix(args.matrix)
    w = approx_weights(matrix) if args.method == "approx" else eigen_weights(matrix)[0]
    rep = consistency_report(matrix)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "w": [float(x) for x in w],
                    "lambda_max": rep.lambda_max,
                    "ci": rep.ci,
                    "ri": rep.ri,
                    "cr": rep.cr,
                }
            )
        )
    else:
        print("object,label,weight")
        for idx, x in enumerate(w):
            print(f"{idx + 1},{matrix.labels[idx]},{float(x)!r}")
        print(f"# lambda_max={rep.lambda_max!r} ci={rep.ci!r} ri={rep.ri!r} cr={rep.cr!r}")
    return 0


def _cmd_audit(args) -> int:
    matrix, _ = matrix_io.load_matrix(args.matrix)
    conflicts = full_matrix_audit(matrix)
    if not conflicts:
        print("no conflicts")
        return 0
    for t in conflicts:
        verdict = classify_triad(t.r_mj, t.r_ij, t.r_mi)
        print(
            f"({t.m},{t.i},{t.j}): {t.r_mj.value} {t.r_ij.value} {t.r_mi.value}"
            f" -- forced r_ij = {verdict.required.value}"
        )
    return 0


def _cmd_baseline(args) -> int:
    if args.kind == "c-freq":
        b = matrix_io.load_binary(args.matrices[0])
        res = c_frequencies(b)
        print(json.dumps({"c": [int(x) for x in res.c], "ranking": list(res.ranking)}))
    else:
        mats = [matrix_io.load_binary(p) for p in args.matrices]
        p = preference_intensities(mats)
        s = thurstone_scale(p, clamp=not args.no_clamp)
        print(json.dumps({"k": p.k, "scores": [float(x) for x in s]}))
    return 0


def _cmd_aggregate(args) -> int:
    study_dir = Path(args.study_dir)
    store = StudyStore(study_dir.parent)
    agg = store.study_aggregate(study_dir.name, level=args.level, method=args.method)
    study = store.get_study(study_dir.name)
    stack = [list(w) for w in agg.per_expert]
    mins = [min(w[i] for w in stack) for i in range(len(agg.mean_w))]
    maxs = [max(w[i] for w in stack) for i in range(len(agg.mean_w))]
    if args.format == "json":
        payload = {
            "k": agg.k,
            "level": agg.level,
            "mean_w": [float(x) for x in agg.mean_w],
            "min": [float(x) for x in mins],
            "max": [float(x) for x in maxs],
        }
        if agg.half_width is not None:
            payload["half_width"] = [float(x) for x in agg.half_width]
        print(json.dumps(payload))
    else:
        print("object,label,mean_w,half_width,min,max")
        for idx in range(len(agg.mean_w)):
            hw = "" if agg.half_width is None else repr(float(agg.half_width[idx]))
            print(
                f"{idx + 1},{study.labels[idx]},{float(agg.mean_w[idx])!r},{hw},"
                f"{float(mins[idx])!r},{float(maxs[idx])!r}"
            )
    return 0


def _cmd_simulate(args) -> int:
    if args.experiment == "fig1":
        scales = args.scale or [
            saaty9(),
            three_point(2, 4),
            three_point(2, 5),
            three_point(3, 9),
            three_point(2, 9),
        ]
        report = scale_accuracy_experiment(
            args.n, args.trials, scales, args.seed, distinct=args.distinct
        )
    elif args.experiment == "sensitivity":
        scale = args.scale[0] if args.scale else None
        report = sensitivity_experiment(args.h, args.trials, args.seed, scale=scale)
    else:
        scale = args.scale[0] if args.scale else None
        report = control_effect_experiment(
            args.h, args.experts, args.slip, args.seed, scale=scale
        )
    csv_text = report.to_csv()
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
    else:
        sys.stdout.write(csv_text)
    if args.summary:
        print(json.dumps(report.summary, indent=2))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(StudyStore(args.data_dir))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paircomp")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", help="weight vector and consistency of a matrix file")
    p.add_argument("matrix")
    p.add_argument("--method", choices=("approx", "eigen"), default="eigen")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_weights)

    p = sub.add_parser("audit", help="list every intransitive triad of a matrix file")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("baseline", help="binary-matrix baselines")
    p.add_argument("kind", choices=("c-freq", "thurstone"))
    p.add_argument("matrices", nargs="+")
    p.add_argument("--no-clamp", action="store_true")
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("aggregate", help="mean weights with confidence intervals")
    p.add_argument("study_dir")
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--method", choices=("eigen", "approx"), default="eigen")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_aggregate)

    p = sub.add_parser("simulate", help="simulated-expert experiments")
    p.add_argument("experiment", choices=("fig1", "sensitivity", "control"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--summary", action="store_true")
    p.add_argument("--scale", type=_parse_scale, action="append")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--experts", type=int, default=3)
    p.add_argument("--slip", type=float, default=0.1)
    p.add_argument("--distinct", action="store_true")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", default=DEFAULT_DATA_DIR)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "simulate":
        if args.trials is None:
            args.trials = 100 if args.experiment == "fig1" else 20
        if args.h is None:
            args.h = 25 if args.experiment == "sensitivity" else 28
    try:
        return args.func(args)
    except (PaircompError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
