"""Command-line interface.

Subcommands: validate, mean, hull, verify, search, demo-fig1.  Text
output is human-oriented and unstable; JSON (--format json) is the
machine contract and is byte-stable for identical invocations.

Exit codes: 0 success, 1 theorem-regime violation or invalid metric,
2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import FrechetLabError, InvalidMetric
from .hull import hull_members
from .laws import (
    SearchConfig,
    search_counterexamples,
    verify_space,
    weight_necessity_demo,
)
from .metric import (
    STRATEGIES,
    Subset,
    ValidationReport,
    figure1_space,
    load_space,
    parse_distance_csv,
    parse_edge_list,
    from_edge_list,
    validate_metric,
)
from .solver import FrechetProblem, Subset as _Subset  # noqa: F401
from .solver import binary_mean, load_problem, mean_set, problem_from_dict

USAGE_ERROR, VIOLATION_ERROR = 2, 1


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def _fmt(v: float) -> str:
    return f"{v:g}"


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except UnicodeDecodeError:
        raise _Usage(f"{path} is not valid UTF-8")


class _Usage(Exception):
    pass


def _load_space_arg(path: str):
    text = _read_text(path)
    first = next((ln for ln in text.split("\n") if ln.strip()), "")
    if "," in first:
        labels, matrix = parse_distance_csv(text)
        return validate_metric(matrix, labels)
    return from_edge_list(parse_edge_list(text))


def _cmd_validate(args) -> int:
    result = _load_space_arg(args.space)
    if isinstance(result, ValidationReport):
        if args.format == "json":
            _emit_json(result.to_dict())
        else:
            print(f"invalid metric: {len(result.violations)} violation(s)")
            for v in result.violations:
                print(f"  {v.kind} at {v.indices}: {_fmt(v.magnitude)}")
        return VIOLATION_ERROR
    if args.format == "json":
        _emit_json({"ok": True, "violations": [], "n": result.n, "labels": list(result.labels)})
    else:
        print(f"valid metric space with {result.n} point(s)")
    return 0


def _cmd_mean(args) -> int:
    space, problem = load_problem(args.problem)
    if args.r is not None or args.args is not None:
        with open(args.problem, encoding="utf-8") as fh:
            obj = json.load(fh)
        if args.r is not None:
            obj["r"] = args.r
        if args.args is not None:
            obj["args"] = json.loads(args.args)
        space, problem = problem_from_dict(obj)
    mean = mean_set(space, problem)
    names = [space.labels[i] for i in mean.sorted()]
    if args.format == "json":
        _emit_json(
            {
                "minimizers": names,
                "objective": mean.objective,
                "representative": space.labels[mean.representative],
            }
        )
    else:
        print(f"mean set = {{{', '.join(names)}}}")
        print(f"objective = {_fmt(mean.objective)}")
        print(f"representative = {space.labels[mean.representative]}")
    return 0


def _cmd_hull(args) -> int:
    space = load_space(args.space)
    base = Subset(space.index_of(name.strip()) for name in args.base.split(","))
    hull = hull_members(space, base, args.r)
    if args.format == "json":
        _emit_json(hull.to_dict(space))
    else:
        names = [space.labels[i] for i in hull.sorted()]
        print(f"hull members (r = {_fmt(args.r)}) = {{{', '.join(names)}}}")
        for i in hull.sorted():
            ws = ", ".join(_fmt(w) for w in hull.witnesses[i])
            print(f"  {space.labels[i]}: weights ({ws})")
    return 0


def _cmd_verify(args) -> int:
    space = load_space(args.space)
    reports = verify_space(space, seed=args.seed, trials=args.trials)
    bad = sum(r.theorem_regime_failure_count() for r in reports)
    if args.format == "json":
        _emit_json({"reports": [r.to_dict() for r in reports], "failures": bad})
    else:
        for r in reports:
            status = "ok" if r.ok else f"{r.failure_count} FAILURE(S)"
            print(
                f"{r.property_id}: {status} "
                f"({sum(r.checks.values())} checks, {r.saturation_count} saturations)"
            )
    return VIOLATION_ERROR if bad else 0


def _cmd_search(args) -> int:
    config = SearchConfig(
        seed=args.seed,
        trials=args.trials,
        n_range=tuple(args.n_range),
        r_list=tuple(args.r_list),
        weight_range=tuple(args.weight_range),
        strategies=tuple(args.strategies),
    )
    report = search_counterexamples(config)
    if args.format == "json":
        _emit_json(report.to_dict())
    else:
        print(
            f"{report.trials} trials: {report.failure_count} failure(s), "
            f"{report.saturation_count} saturation(s), "
            f"{len(report.exhibits)} non-associativity witness(es)"
        )
        for w in report.failures[:10]:
            print(
                f"  [{w.detail}] trial {w.trial}: lhs {_fmt(w.lhs)} > rhs {_fmt(w.rhs)} "
                f"(weights {tuple(round(x, 4) for x in w.weights)})"
            )
    bad = sum(1 for w in report.failures if w.theorem_regime)
    return VIOLATION_ERROR if bad else 0


def _cmd_demo_fig1(args) -> int:
    space = figure1_space()
    xi, x, y = (space.index_of(s) for s in ("ξ", "x", "y"))
    mean = binary_mean(space, 1.0, 1.0, Subset([x]), 1.0, Subset([y]))
    names = [space.labels[i] for i in mean.sorted()]
    m = space.index_of("m")
    lhs = space.distance(xi, m)
    rhs_parts = (space.distance(x, xi), space.distance(xi, y))
    witness = weight_necessity_demo()

    if args.format == "json":
        _emit_json(
            {
                "labels": list(space.labels),
                "dist": [[float(v) for v in row] for row in space.dist],
                "mean_set": names,
                "objective": mean.objective,
                "saturation": {"lhs": lhs, "rhs": sum(rhs_parts)},
                "half_bound_violation": {"lhs": lhs, "rhs": 0.5 * sum(rhs_parts)},
                "weight_necessity": witness.to_dict(),
            }
        )
        return 0

    print("Four-point space with negative-curvature behavior:")
    print(f"  labels: {', '.join(space.labels)}")
    for i, row in enumerate(space.dist):
        cells = "  ".join(_fmt(float(v)) for v in row)
        print(f"  {space.labels[i]:>2}  [{cells}]")
    print()
    print("First-order mean of {x} and {y}:")
    print(f"  mean set = {{{', '.join(names)}}}")
    print(f"  objective = {_fmt(mean.objective)}")
    print()
    print("Median bound d(ξ,m) <= d(x,ξ) + d(ξ,y) at member m:")
    print(f"  saturated: {_fmt(lhs)} = {_fmt(rhs_parts[0])} + {_fmt(rhs_parts[1])}")
    half = 0.5 * sum(rhs_parts)
    print(f"  classical half-factor bound fails: {_fmt(lhs)} > {_fmt(half)}")
    print()
    print("Sub-unit weights break the weighted bound:")
    print(f"  violation at α=β=0.5: {_fmt(witness.lhs)} > {_fmt(witness.rhs)}")
    return 0


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _int_pair(text: str) -> list[int]:
    parts = [int(v) for v in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected LO,HI")
    return parts


def _float_pair(text: str) -> list[float]:
    parts = _float_list(text)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected LO,HI")
    return parts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frechet-lab",
        description="Weighted Fréchet means, hulls and median-inequality verification "
        "on finite metric spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("validate", help="check a distance matrix or edge list")
    p.add_argument("--space", required=True, help="distance CSV or edge-list file")
    add_format(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("mean", help="solve a Fréchet mean problem from JSON")
    p.add_argument("--problem", required=True, help="problem JSON file")
    p.add_argument("--r", type=float, default=None, help="override the order r")
    p.add_argument("--args", default=None, help="override args as inline JSON")
    add_format(p)
    p.set_defaults(func=_cmd_mean)

    p = sub.add_parser("hull", help="compute an oplus-convex hull")
    p.add_argument("--space", required=True)
    p.add_argument("--base", required=True, help="comma-separated base labels")
    p.add_argument("--r", type=float, default=1.0)
    add_format(p)
    p.set_defaults(func=_cmd_hull)

    p = sub.add_parser("verify", help="run all theorem-regime checks on a space")
    p.add_argument("--space", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    add_format(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", help="seeded randomized counterexample search")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--n-range", type=_int_pair, default=[2, 10])
    p.add_argument("--r-list", type=_float_list, default=[1.0, 1.5, 2.0, 3.0])
    p.add_argument("--weight-range", type=_float_pair, default=[1.0, 5.0])
    p.add_argument(
        "--strategies",
        type=lambda t: [s.strip() for s in t.split(",") if s.strip()],
        default=list(STRATEGIES),
    )
    add_format(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("demo-fig1", help="walk through the canonical 4-point example")
    add_format(p)
    p.set_defaults(func=_cmd_demo_fig1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except InvalidMetric as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VIOLATION_ERROR
    except (FrechetLabError, FileNotFoundError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
