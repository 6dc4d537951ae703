"""Command-line interface.

Subcommands: recovery-rate, error-vs-m, ode, bound, quad.  Exit codes:
0 success, 2 usage error, 3 numerical failure.
"""

import argparse
import sys

from .errors import NumericalError, QuadsubError, UsageError
from .experiments import ExperimentConfig, run_experiment
from .families import build_family, marginal_from_name
from .quadrature import gauss_rule
from .sampling import STRATEGIES
from .targets import TARGET_NAMES, make_target


def _parse_grid(text: str) -> tuple:
    """Parse 'a:b:step' ranges (inclusive endpoint) or comma lists."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise UsageError(f"grid '{text}' is not a:b or a:b:step")
        try:
            a, b = int(parts[0]), int(parts[1])
            step = int(parts[2]) if len(parts) == 3 else 1
        except ValueError as exc:
            raise UsageError(f"non-integer grid bound in '{text}'") from exc
        if step <= 0 or b < a:
            raise UsageError(f"grid '{text}' must ascend with positive step")
        return tuple(range(a, b + 1, step))
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"grid '{text}' is not a comma list of integers") from exc


def _parse_strategies(text: str) -> tuple:
    out = tuple(s.strip() for s in text.split(",") if s.strip())
    if not out:
        raise UsageError("empty strategy list")
    return out


def _add_common(parser):
    parser.add_argument("--trials", type=int, default=100, help="trials per cell")
    parser.add_argument("--seed", type=int, default=0, help="master seed")
    parser.add_argument("--out", help="CSV output path")
    parser.add_argument("--tol", type=float, default=1e-8,
                        help="solver absolute/relative tolerance")
    parser.add_argument("--max-iter", type=int, default=20000, help="solver iteration cap")
    parser.add_argument("--workers", type=int, default=1, help="trial worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadsub",
        description="Sparse polynomial-chaos recovery from subsampled Gauss grids",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recovery-rate", help="recovery success rate over a sparsity grid")
    p.add_argument("--d", type=int, default=2, help="input dimension")
    p.add_argument("--degree", type=int, default=20, help="total degree of the basis")
    p.add_argument("--family", default="uniform", help="marginal law of the inputs")
    p.add_argument("--strategy", default="gauss", help="comma list of sampling strategies")
    p.add_argument("--m", type=int, default=85, help="number of samples")
    p.add_argument("--s-grid", default="1:5", help="sparsity grid a:b:step or comma list")
    p.add_argument("--threshold", type=float, default=1e-3, help="max-norm success threshold")
    p.add_argument("--dump-design", help="write the first trial's design matrix as CSV")
    _add_common(p)

    p = sub.add_parser("error-vs-m", help="mean coefficient error against sample count")
    p.add_argument("--target", default="sparse",
                   help=f"target function ({', '.join(TARGET_NAMES)})")
    p.add_argument("--d", type=int, help="dimension (sparse target only)")
    p.add_argument("--degree", type=int, help="total degree of the basis")
    p.add_argument("--family", default="uniform", help="marginal law (sparse target only)")
    p.add_argument("--strategy", default="gauss", help="comma list of sampling strategies")
    p.add_argument("--s", type=int, default=5, help="sparsity of the synthetic target")
    p.add_argument("--m-grid", required=True, help="sample grid a:b:step or comma list")
    p.add_argument("--threshold", type=float, default=1e-3, help="max-norm success threshold")
    p.add_argument("--dump-design", help="write the first trial's design matrix as CSV")
    _add_common(p)

    p = sub.add_parser("ode", help="second-moment error for the random decay ODE")
    p.add_argument("--degree", type=int, default=30,
                   help="number of expansion coefficients (grid has the same size)")
    p.add_argument("--beta", type=float, default=-0.65, help="decay rate factor")
    p.add_argument("--t", type=float, default=1.0, help="final time")
    p.add_argument("--strategy", default="gauss", help="comma list of sampling strategies")
    p.add_argument("--m-grid", required=True, help="sample grid a:b:step or comma list")
    _add_common(p)

    p = sub.add_parser("bound", help="sup-norm bound table for one family")
    p.add_argument("--family", required=True, help="marginal law")
    p.add_argument("--n-max", type=int, required=True, help="largest rule size")
    p.add_argument("--n-min", type=int, default=1, help="smallest rule size")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("quad", help="print one Gauss rule as CSV")
    p.add_argument("--family", required=True, help="marginal law")
    p.add_argument("--n", type=int, required=True, help="rule size")
    p.add_argument("--out", help="CSV output path (default stdout)")

    return parser


def _print_rows(header, rows, stream):
    stream.write(",".join(str(h) for h in header) + "\n")
    for row in rows:
        stream.write(",".join(repr(v) if isinstance(v, float) else str(v) for v in row) + "\n")


def _cmd_quad(args) -> int:
    dist = marginal_from_name(args.family)
    family = build_family(dist, args.n)
    rule = gauss_rule(family, args.n)
    lines = ["k,node,weight"]
    for k in range(rule.n):
        lines.append(f"{k + 1},{rule.nodes[k]:.17g},{rule.weights[k]:.17g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _experiment_config(args) -> ExperimentConfig:
    kwargs = dict(
        experiment=args.command,
        trials=getattr(args, "trials", 100),
        seed=getattr(args, "seed", 0),
        out=getattr(args, "out", None),
        abs_tol=getattr(args, "tol", 1e-8),
        rel_tol=getattr(args, "tol", 1e-8),
        max_iter=getattr(args, "max_iter", 20000),
        workers=getattr(args, "workers", 1),
    )
    if args.command == "recovery-rate":
        kwargs.update(
            d=args.d, degree=args.degree, marginal=args.family,
            strategies=_parse_strategies(args.strategy), m=args.m,
            s_grid=_parse_grid(args.s_grid), threshold=args.threshold,
            dump_design=args.dump_design,
        )
    elif args.command == "error-vs-m":
        target = args.target
        if target != "sparse":
            base = make_target(target)
            d = base.d
            degree = args.degree if args.degree is not None else base.degree
            marginal = args.family
        else:
            d = args.d if args.d is not None else 2
            degree = args.degree if args.degree is not None else 20
            marginal = args.family
        kwargs.update(
            target=target, d=d, degree=degree, marginal=marginal,
            strategies=_parse_strategies(args.strategy), s=args.s,
            m_grid=_parse_grid(args.m_grid), threshold=args.threshold,
            dump_design=args.dump_design,
        )
    elif args.command == "ode":
        kwargs.update(
            target="ode", d=1, degree=args.degree, marginal="gaussian",
            strategies=_parse_strategies(args.strategy),
            m_grid=_parse_grid(args.m_grid), beta=args.beta, t=args.t,
        )
    elif args.command == "bound":
        kwargs.update(family=args.family, n_min=args.n_min, n_max=args.n_max, trials=1)
    return ExperimentConfig(**kwargs)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "quad":
            return _cmd_quad(args)
        config = _experiment_config(args)
        header, rows = run_experiment(config)
        if not config.out:
            _print_rows(header, rows, sys.stdout)
        return 0
    except NumericalError as exc:
        print(f"quadsub: numerical failure: {exc}", file=sys.stderr)
        return 3
    except QuadsubError as exc:
        print(f"quadsub: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
