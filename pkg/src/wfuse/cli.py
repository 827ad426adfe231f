"""``wfuse``: deterministic CSV/JSON tables for every cost curve and run.

Subcommands:

* ``cost``        exact cost table of one analytic strategy;
* ``simulate``    seeded Monte Carlo batch of the similar-sizes strategy;
* ``verify-gate`` amplitude-level check of the gate against closed forms;
* ``figure4``     combined table of all strategy curves plus MC means.

The CLI speaks in actual photon counts (``N >= 3``); conversion to the
library's additive index ``n = N - 2`` happens only here.  Every output is
a pure function of the flag set, seeds included: rerunning a command
reproduces it byte for byte.  Exit codes: 0 success, 1 verification
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .growth_costs import (
    exponential_cost,
    linear_recycled_costs,
    w3_linear_cost,
)
from .optimal import optimal_costs
from .gate import TOLERANCE, verify_probabilities
from .simulate import simulate_batch

_FLOAT_FMT = ".17g"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, _FLOAT_FMT)
    return str(value)


def _render_csv(rows: list[dict]) -> str:
    header = list(rows[0].keys())
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(row[key]) for key in header))
    return "\n".join(lines) + "\n"


def _render_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2) + "\n"


def _write_rows(rows: list[dict], fmt: str, out: Optional[str]) -> None:
    text = _render_csv(rows) if fmt == "csv" else _render_json(rows)
    if out:
        with open(out, "w", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _usage_error(message: str) -> int:
    print(f"wfuse: error: {message}", file=sys.stderr)
    return 2


def _rational_cells(prefix: str, value: Optional[Fraction]) -> dict:
    if value is None:
        return {
            f"{prefix}_num": None,
            f"{prefix}_den": None,
            f"{prefix}_float": None,
        }
    return {
        f"{prefix}_num": str(value.numerator),
        f"{prefix}_den": str(value.denominator),
        f"{prefix}_float": float(value),
    }


def _cmd_cost(args) -> int:
    target = args.target
    if target < 3:
        return _usage_error(f"--target must be an actual size >= 3, got {target}")
    n_max = target - 2
    pairs: list[tuple[int, Fraction]] = []  # (index, cost)
    if args.strategy == "linear":
        pairs = [(n, w3_linear_cost(n)) for n in range(1, n_max + 1)]
    elif args.strategy == "linear-recycled":
        costs = linear_recycled_costs(max(2, n_max))
        pairs = [(n, costs[n]) for n in range(1, n_max + 1)]
    elif args.strategy == "optimal":
        table = optimal_costs(n_max)
        pairs = [(n, table.cost(n)) for n in range(1, n_max + 1)]
    elif args.strategy == "exponential":
        if n_max & (n_max - 1):
            return _usage_error(
                "exponential growth reaches only sizes with N - 2 a power "
                f"of two; N = {target} is not one"
            )
        stages = n_max.bit_length() - 1
        pairs = [(2**level, exponential_cost(level)) for level in range(stages + 1)]
    rows = [
        {
            "N": n + 2,
            "strategy": args.strategy,
            "cost_exact_num": str(cost.numerator),
            "cost_exact_den": str(cost.denominator),
            "cost_float": float(cost),
        }
        for n, cost in pairs
    ]
    _write_rows(rows, args.format, args.out)
    return 0


def _cmd_simulate(args) -> int:
    if args.k < 0:
        return _usage_error(f"--k must be >= 0, got {args.k}")
    if args.runs < 1:
        return _usage_error(f"--runs must be >= 1, got {args.runs}")
    stats = simulate_batch(args.k, args.runs, args.seed, workers=args.workers)
    rows = [
        {
            "k": stats.k,
            "nominal_N": 2**stats.k + 3,
            "runs": stats.runs,
            "seed": stats.master_seed,
            "mean": stats.mean,
            "std": stats.std,
            "stderr": stats.stderr,
            "min": stats.min,
            "max": stats.max,
        }
    ]
    _write_rows(rows, args.format, args.out)
    if args.dump_runs:
        dump = [
            {"run": i, "cost": cost, "final_N": size + 2}
            for i, (cost, size) in enumerate(zip(stats.costs, stats.final_sizes))
        ]
        with open(args.dump_runs, "w", newline="") as handle:
            handle.write(_render_csv(dump))
    return 0


def _cmd_verify_gate(args) -> int:
    for name, size in (("--n", args.n), ("--m", args.m)):
        if not 2 <= size <= 12:
            return _usage_error(f"{name} must be in 2..12, got {size}")
    check = verify_probabilities(args.n, args.m)
    rows = []
    worst = 0.0
    for branch in ("success", "recycle", "failure"):
        err = abs(float(check.analytic[branch]) - check.simulated[branch])
        defect = abs(1.0 - check.fidelities[branch])
        worst = max(worst, err, defect)
        rows.append(
            {
                "N": args.n,
                "M": args.m,
                "branch": branch,
                "analytic": float(check.analytic[branch]),
                "simulated": check.simulated[branch],
                "abs_error": err,
                "fidelity": check.fidelities[branch],
            }
        )
    _write_rows(rows, args.format, args.out)
    return 0 if worst < TOLERANCE else 1


def _cmd_figure4(args) -> int:
    if not 0 <= args.max_k <= 8:
        return _usage_error(f"--max-k must be in 0..8, got {args.max_k}")
    if args.runs < 1:
        return _usage_error(f"--runs must be >= 1, got {args.runs}")
    n_max = 2**args.max_k + 1
    recycled = linear_recycled_costs(max(2, n_max))
    table = optimal_costs(n_max)
    # Stage k reuses the per-run seed derivation with run indices offset by
    # k * runs, so every (stage, run) pair has a distinct stream.
    batches = {
        k: simulate_batch(k, args.runs, args.seed + k * args.runs, workers=args.workers)
        for k in range(args.max_k + 1)
    }
    mc_rows = {2**k + 3: stats for k, stats in batches.items()}
    rows = []
    for n in range(1, n_max + 1):
        size = n + 2
        row = {"N": size}
        row.update(_rational_cells("linear", w3_linear_cost(n)))
        row.update(_rational_cells("linear_recycled", recycled[n]))
        row.update(_rational_cells("optimal", table.cost(n)))
        exp_cost = (
            exponential_cost(n.bit_length() - 1) if n & (n - 1) == 0 else None
        )
        row.update(_rational_cells("exponential", exp_cost))
        stats = mc_rows.get(size)
        row["mc_k"] = stats.k if stats else None
        row["mc_runs"] = stats.runs if stats else None
        row["mc_mean"] = stats.mean if stats else None
        row["mc_stderr"] = stats.stderr if stats else None
        rows.append(row)
    _write_rows(rows, args.format, args.out)
    return 0


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output encoding"
    )
    parser.add_argument(
        "--out", metavar="PATH", default=None, help="write to PATH instead of stdout"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wfuse",
        description="Resource costs and simulation of the W-state fusion gate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cost = sub.add_parser("cost", help="exact cost table of one strategy")
    cost.add_argument(
        "--strategy",
        required=True,
        choices=("linear", "linear-recycled", "optimal", "exponential"),
    )
    cost.add_argument(
        "--target",
        type=int,
        required=True,
        help="largest actual size N (>= 3) to tabulate",
    )
    _add_output_flags(cost)
    cost.set_defaults(func=_cmd_cost)

    simulate = sub.add_parser(
        "simulate", help="Monte Carlo batch of the similar-sizes strategy"
    )
    simulate.add_argument(
        "--strategy", choices=("similar-sizes",), default="similar-sizes"
    )
    simulate.add_argument("--k", type=int, required=True, help="target bucket stage")
    simulate.add_argument("--runs", type=int, default=1000)
    simulate.add_argument(
        "--seed",
        type=int,
        required=True,
        help="master seed (explicit, so published tables replay exactly)",
    )
    simulate.add_argument("--workers", type=int, default=1)
    simulate.add_argument(
        "--dump-runs", metavar="PATH", default=None, help="also write per-run costs"
    )
    _add_output_flags(simulate)
    simulate.set_defaults(func=_cmd_simulate)

    verify = sub.add_parser(
        "verify-gate", help="check gate amplitudes against closed forms"
    )
    verify.add_argument("--n", type=int, required=True, help="actual size of state A")
    verify.add_argument("--m", type=int, required=True, help="actual size of state B")
    _add_output_flags(verify)
    verify.set_defaults(func=_cmd_verify_gate)

    figure4 = sub.add_parser(
        "figure4", help="combined strategy-comparison table (all curves)"
    )
    figure4.add_argument("--max-k", type=int, default=6, dest="max_k")
    figure4.add_argument("--runs", type=int, default=1000)
    figure4.add_argument("--seed", type=int, required=True)
    figure4.add_argument("--workers", type=int, default=1)
    _add_output_flags(figure4)
    figure4.set_defaults(func=_cmd_figure4)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
