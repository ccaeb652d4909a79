"""Command line front end.

Subcommands: compute, test, conditions, null-sample, be-study,
slln-study, generate, enumerate-check.  Every run echoes its resolved
statistical configuration (defaults and master seed included) into its
output; execution-only knobs (--threads, --out) are deliberately left
out of the echo so that runs which must produce identical results also
produce identical bytes.  Exit codes: 0 success, 2 invalid input, 3
domain error; failed runs print a single-line JSON object
{"code", "message", "context"} on stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .colors import ColorDistribution, parse_probability_text, validate_coloring
from .conditions import condition_statistics
from .errors import DomainError, InputError
from .generators import parse_generator_spec
from .graph import parse_edge_list, write_edge_list
from .moments import exact_moments_by_enumeration, modularity, null_moments
from .serialize import csv_text, dumps
from .simulation import (
    StudyConfig,
    be_rate_study,
    significance_test,
    simulate_null,
    slln_study,
)

SEED_ENV = "MODNULL_SEED"


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _sizes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_graph(args):
    return parse_edge_list(_read(args.graph))


def _load_partition(path: str) -> np.ndarray:
    values = []
    for ln, raw in enumerate(_read(path).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(int(line))
        except ValueError:
            raise InputError(f"{path} line {ln}: colors must be integers") from None
    if not values:
        raise InputError(f"{path}: partition file is empty")
    return validate_coloring(values)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return _u64(env)
        except argparse.ArgumentTypeError as exc:
            raise InputError(f"bad {SEED_ENV}: {exc}") from None
    return 0


def _study_distribution(args) -> ColorDistribution:
    if getattr(args, "probs", None):
        return parse_probability_text(_read(args.probs))
    return ColorDistribution.uniform(args.K if args.K else 2)


def _partition_distribution(args, colors) -> ColorDistribution:
    if getattr(args, "probs", None):
        return parse_probability_text(_read(args.probs))
    return ColorDistribution.from_coloring(colors, K=args.K)


def _emit(args, payload: dict) -> None:
    text = dumps(payload) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_csv_with_summary(out: str, header, rows, summary: dict) -> None:
    out_path = Path(out)
    out_path.write_text(csv_text(header, rows))
    base = out[:-4] if out.endswith(".csv") else out
    Path(base + ".summary.json").write_text(dumps(summary) + "\n")


def cmd_compute(args) -> int:
    g = _load_graph(args)
    colors = _load_partition(args.partition)
    dist = _partition_distribution(args, colors)
    q = modularity(g, colors)
    mom = null_moments(g, dist)
    _emit(
        args,
        {
            "config": {
                "command": "compute",
                "graph": args.graph,
                "partition": args.partition,
                "probs": args.probs,
                "K": dist.K,
            },
            "n": g.n,
            "m": g.m,
            "K": dist.K,
            "Q": q,
            "mu": mom.mu,
            "sigma2": mom.sigma2,
            "delta2": mom.delta2,
            "r1": mom.r1,
            "r2": mom.r2,
        },
    )
    return 0


def cmd_test(args) -> int:
    g = _load_graph(args)
    colors = _load_partition(args.partition)
    dist = _partition_distribution(args, colors)
    report = significance_test(
        g, colors, dist, sided=args.sided, standardization=args.standardize
    )
    _emit(
        args,
        {
            "config": {
                "command": "test",
                "graph": args.graph,
                "partition": args.partition,
                "probs": args.probs,
                "K": dist.K,
                "standardize": args.standardize,
                "sided": args.sided,
            },
            "Q": report.Q,
            "mu": report.mu,
            "sigma": report.sigma,
            "delta": report.delta,
            "z_sigma": report.z_sigma,
            "z_delta": report.z_delta,
            "p_value": report.p_value,
            "sidedness": report.sidedness,
            "standardization": report.standardization,
            # The normal approximation is never gated; the degree-sequence
            # diagnostics ride along so the reader can judge it.
            "conditions": condition_statistics(g).to_dict(),
        },
    )
    return 0


def cmd_conditions(args) -> int:
    g = _load_graph(args)
    report = condition_statistics(g)
    payload = {"config": {"command": "conditions", "graph": args.graph}}
    payload.update(report.to_dict())
    _emit(args, payload)
    return 0


def cmd_null_sample(args) -> int:
    g = _load_graph(args)
    if args.partition:
        dist = _partition_distribution(args, _load_partition(args.partition))
    else:
        dist = _study_distribution(args)
    seed = _resolve_seed(args)
    sample = simulate_null(
        g, dist, args.reps, seed, standardization=args.standardize, threads=args.threads
    )
    rows = [[r, q, z] for r, (q, z) in enumerate(zip(sample.q, sample.samples))]
    summary = {
        "config": {
            "command": "null-sample",
            "graph": args.graph,
            "partition": args.partition,
            "probs": args.probs,
            "K": dist.K,
            "reps": args.reps,
            "master_seed": seed,
            "standardize": args.standardize,
        },
        "n": g.n,
        "m": g.m,
        "mu": sample.moments.mu,
        "sigma": sample.moments.sigma,
        "delta": sample.moments.delta,
        "mean": sample.mean,
        "variance": sample.variance,
        "ks": sample.ks,
    }
    _write_csv_with_summary(args.out, ["replicate", "q", "z"], rows, summary)
    return 0


def cmd_be_study(args) -> int:
    seed = _resolve_seed(args)
    dist = _study_distribution(args)
    cfg = StudyConfig(
        generator_spec=args.model,
        sizes=args.sizes,
        reps=args.reps,
        master_seed=seed,
        standardization=args.standardize,
        distribution=dist,
    )
    rows = be_rate_study(cfg, threads=args.threads)
    header = [
        "n",
        "m",
        "ks",
        "bound_shape",
        "fitted_C",
        "seed_used",
        "ks_sigma",
        "ks_delta",
        "sigma2_over_delta2",
    ]
    table = [
        [
            r.n,
            r.m,
            r.ks,
            r.bound_shape,
            r.fitted_C,
            r.seed_used,
            r.ks_sigma,
            r.ks_delta,
            r.sigma2_over_delta2,
        ]
        for r in rows
    ]
    summary = {
        "config": {
            "command": "be-study",
            "model": str(cfg.generator_spec),
            "sizes": list(cfg.sizes),
            "reps": cfg.reps,
            "master_seed": seed,
            "standardize": cfg.standardization,
            "probs": list(dist.p),
        },
        "per_size": [
            {"n": r.n, "seed_used": r.seed_used, "ks": r.ks, "fitted_C": r.fitted_C}
            for r in rows
        ],
    }
    _write_csv_with_summary(args.out, header, table, summary)
    return 0


def cmd_slln_study(args) -> int:
    seed = _resolve_seed(args)
    dist = _study_distribution(args)
    result = slln_study(args.model, args.sizes, args.reps, seed, distribution=dist)
    table = [[row.path, row.n, row.value] for row in result.rows]
    summary = {
        "config": {
            "command": "slln-study",
            "model": args.model,
            "sizes": list(args.sizes),
            "paths": args.reps,
            "master_seed": seed,
            "probs": list(dist.p),
        },
        "paths": result.paths,
        "decayed_paths": result.decayed_paths,
        "per_path": [
            {
                "path": s.path,
                "first_half_max": s.first_half_max,
                "second_half_max": s.second_half_max,
                "decayed": s.decayed,
            }
            for s in result.path_summaries
        ],
    }
    _write_csv_with_summary(args.out, ["path", "n", "value"], table, summary)
    return 0


def cmd_generate(args) -> int:
    seed = _resolve_seed(args)
    spec = parse_generator_spec(args.model)
    g = spec.build(args.n, seed)
    text = write_edge_list(g)
    echo = dumps(
        {
            "config": {
                "command": "generate",
                "model": args.model,
                "n": args.n,
                "master_seed": seed,
            },
            "n": g.n,
            "m": g.m,
        }
    ) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        sys.stdout.write(echo)
    else:
        sys.stdout.write(text)
        sys.stderr.write(echo)
    return 0


def cmd_enumerate_check(args) -> int:
    g = _load_graph(args)
    dist = _study_distribution(args)
    mom = null_moments(g, dist)
    mu_enum, var_enum = exact_moments_by_enumeration(g, dist)
    rel_mu = _rel_err(mom.mu, mu_enum)
    rel_var = _rel_err(mom.sigma2, var_enum)
    _emit(
        args,
        {
            "config": {
                "command": "enumerate-check",
                "graph": args.graph,
                "probs": args.probs,
                "K": dist.K,
            },
            "n": g.n,
            "m": g.m,
            "K": dist.K,
            "mu_closed_form": mom.mu,
            "mu_enumeration": mu_enum,
            "sigma2_closed_form": mom.sigma2,
            "sigma2_enumeration": var_enum,
            "rel_err_mu": rel_mu,
            "rel_err_sigma2": rel_var,
            "max_rel_err": max(rel_mu, rel_var),
        },
    )
    return 0


def _rel_err(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


def _add_common_dist_flags(sp, with_partition: bool) -> None:
    if with_partition:
        sp.add_argument("--partition", help="partition file, one color (>=1) per vertex line")
    sp.add_argument("--probs", help="probability file, one value per line")
    sp.add_argument("--K", type=int, help="number of colors")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modnull",
        description="Modularity under a random-labeling null: exact moments, "
        "significance tests, and seeded Monte Carlo studies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("compute", help="modularity and exact null moments")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--partition", required=True)
    _add_common_dist_flags(sp, with_partition=False)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_compute)

    sp = sub.add_parser("test", help="z-test of a partition against the null")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--partition", required=True)
    _add_common_dist_flags(sp, with_partition=False)
    sp.add_argument("--standardize", choices=["sigma", "delta"], default="sigma")
    sp.add_argument("--sided", choices=["upper", "two"], default="upper")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_test)

    sp = sub.add_parser("conditions", help="degree-sequence condition statistics")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_conditions)

    sp = sub.add_parser("null-sample", help="Monte Carlo sample of standardized Q")
    sp.add_argument("--graph", required=True)
    _add_common_dist_flags(sp, with_partition=True)
    sp.add_argument("--reps", type=int, required=True)
    sp.add_argument("--seed", type=_u64)
    sp.add_argument("--standardize", choices=["sigma", "delta"], default="sigma")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--out", required=True)
    sp.set_defaults(fn=cmd_null_sample)

    sp = sub.add_parser("be-study", help="Kolmogorov distance across sizes vs the rate shape")
    sp.add_argument("--model", required=True, help="er:p=<f> | reg:d=<i> | hub:p=<f>")
    sp.add_argument("--sizes", type=_sizes, required=True)
    sp.add_argument("--reps", type=int, required=True)
    _add_common_dist_flags(sp, with_partition=False)
    sp.add_argument("--seed", type=_u64)
    sp.add_argument("--standardize", choices=["sigma", "delta"], default="delta")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--out", required=True)
    sp.set_defaults(fn=cmd_be_study)

    sp = sub.add_parser("slln-study", help="path-wise decay of b_n (Q - mu)")
    sp.add_argument("--model", required=True)
    sp.add_argument("--sizes", type=_sizes, required=True)
    sp.add_argument("--reps", type=int, required=True, help="number of independent paths")
    _add_common_dist_flags(sp, with_partition=False)
    sp.add_argument("--seed", type=_u64)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--out", required=True)
    sp.set_defaults(fn=cmd_slln_study)

    sp = sub.add_parser("generate", help="write a canonical edge list for a model")
    sp.add_argument("--model", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=_u64)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_generate)

    sp = sub.add_parser(
        "enumerate-check", help="closed-form moments vs exhaustive enumeration"
    )
    sp.add_argument("--graph", required=True)
    _add_common_dist_flags(sp, with_partition=False)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_enumerate_check)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        _print_error(2, exc, args)
        return 2
    except DomainError as exc:
        _print_error(3, exc, args)
        return 3


def _print_error(code: int, exc: Exception, args) -> None:
    sys.stderr.write(
        dumps({"code": code, "message": str(exc), "context": {"command": args.command}})
        + "\n"
    )


if __name__ == "__main__":
    sys.exit(main())
