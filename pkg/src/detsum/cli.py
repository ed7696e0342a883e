"""Command-line harness.

    detsum <experiment> --q <p^n> [options]

Exit status: 0 all hard assertions passed, 1 at least one failed, 2 usage
or sizing error.
"""

from __future__ import annotations

import argparse
import sys

from .counting import SizingError
from .experiments import EXPERIMENTS, run
from .report import emit

RUN_ALL = "run-all"


def _parse_size(text: str):
    parts = text.split(",")
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --size value {text!r}")
    if len(vals) == 1:
        return vals[0]
    if len(vals) == 2:
        return tuple(vals)
    raise argparse.ArgumentTypeError("--size takes N or N,N")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="detsum",
        description="Exhaustive verification of determinant-of-sumset "
        "identities and bounds over small finite fields.",
    )
    p.add_argument("experiment", choices=sorted(EXPERIMENTS) + [RUN_ALL])
    p.add_argument("--q", default="3",
                   help="field size, as q or p^n (default 3)")
    p.add_argument("--i", type=int, default=None,
                   help="determinant value for the first variety")
    p.add_argument("--j", type=int, default=None,
                   help="determinant value for the second variety")
    p.add_argument("--k", type=int, default=None,
                   help="iteration count for growth experiments (2k-fold sums)")
    p.add_argument("--size", type=_parse_size, default=None, metavar="N[,N]",
                   help="sample size(s) for seeded subsets")
    p.add_argument("--trials", type=int, default=None,
                   help="number of seeded configurations to run")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out", default=None, help="write the report here")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--assert-ratio", type=float, default=None,
                   help="turn reported ratios into hard assertions at this cap")
    p.add_argument("--runtime", action="store_true",
                   help="include wall-clock runtime in the serialized report")
    return p


def _params_from_args(args) -> dict:
    params = {"q": args.q}
    for key, val in (("i", args.i), ("j", args.j), ("k", args.k),
                     ("size", args.size), ("trials", args.trials),
                     ("assert_ratio", args.assert_ratio)):
        if val is not None:
            params[key] = val
    return params


# A broad default sweep; every experiment at a size it finishes quickly.
RUN_ALL_PLAN = [
    ("identities", {"q": "3"}),
    ("identities", {"q": "5"}),
    ("sharpness", {"q": "5"}),
    ("mainthm-bound", {"q": "5"}),
    ("main1", {"q": "5"}),
    ("prop71", {"q": "3", "trials": 5}),
    ("w0", {"q": "3", "trials": 10}),
    ("bigcor", {"q": "5", "trials": 10}),
    ("energy-report", {"q": "3", "trials": 5}),
    ("alexset", {"q": "5"}),
    ("auditors", {"q": "5", "trials": 5}),
    ("spectral-xcheck", {"q": "3", "trials": 10}),
    ("thm0-growth", {"q": "3", "k": 2}),
    ("thm0-sharp", {"q": "3^2", "k": 2}),
]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    jobs = (
        [(name, dict(p)) for name, p in RUN_ALL_PLAN]
        if args.experiment == RUN_ALL
        else [(args.experiment, _params_from_args(args))]
    )
    ok = True
    try:
        for name, params in jobs:
            report = run(name, params, seed=args.seed, threads=args.threads)
            emit(report, fmt=args.format, path=args.out,
                 include_runtime=args.runtime)
            ok = ok and report.overall_pass
    except (ValueError, SizingError, OSError) as exc:
        print(f"detsum: {exc}", file=sys.stderr)
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
