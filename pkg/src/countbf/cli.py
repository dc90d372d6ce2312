"""Benchmark command line.

Four subcommands tie the library together:

  sizeof   print the derived geometry for one or more n values (JSON)
  gen      write workload dataset files plus manifests
  bench    run the (filter x kind x alpha) grid and emit CSV or JSON reports
  freq     frequency-estimation mode: insert keys with multiplicities and
           compare count() estimates against the exact oracle

Runs are reproducible from (command, flags, seed): the resolved config is
echoed in every output header.  The default seed is 42, overridable by the
COUNTBF_SEED environment variable or --seed.  Exit codes: 0 ok, 1 runtime
failure, 2 usage error, 3 invariant violation (a false negative, or an
unexplained underestimate in freq mode).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .backend import active_backend
from .baselines import CBF, SBF
from .filter import CountBF
from .metrics import evaluate, render_csv, render_json, write_text
from .sizing import countbf_k, dimensions, optimal_k, plan, sbf_bits
from .workloads import KINDS, gen_keys, gen_multiplicities, make_workload, save_workload

FILTERS = ("countbf", "sbf", "cbf")
DEFAULT_ALPHAS = "3,4,5,6,7,8"
DESK_SCALE_WARN = 10_000_000


class UsageError(ValueError):
    """Bad flag values discovered after argparse; mapped to exit code 2."""


def _resolve_seed(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    return int(os.environ.get("COUNTBF_SEED", "42"))


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated integer list, got {text!r}")
    if not values:
        raise UsageError(f"{what} list is empty")
    return values


def _parse_tokens(text: str, allowed: tuple[str, ...], what: str) -> list[str]:
    tokens = [tok.strip() for tok in text.split(",") if tok.strip()]
    if not tokens:
        raise UsageError(f"{what} list is empty")
    for tok in tokens:
        if tok not in allowed:
            raise UsageError(f"unknown {what} {tok!r}; expected one of {allowed}")
    if len(set(tokens)) != len(tokens):
        raise UsageError(f"duplicate {what} in {text!r}")
    return tokens


def _check_load(n: int, epsilon: float) -> None:
    if n < 1:
        raise UsageError("--n must be >= 1")
    if not 0.0 < epsilon < 1.0:
        raise UsageError("--epsilon must be in (0, 1)")


def _echo(config: dict) -> str:
    parts = []
    for key, value in config.items():
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        parts.append(f"{key}={value}")
    return " ".join(parts)


def cmd_sizeof(args: argparse.Namespace) -> int:
    ns = _parse_int_list(args.n, "--n")
    rows = []
    for n in ns:
        _check_load(n, args.epsilon)
        m = sbf_bits(n, args.epsilon)
        x, y = dimensions(m, args.beta)
        rows.append(
            {
                "n": n,
                "epsilon": args.epsilon,
                "m_bits": m,
                "k_sbf": optimal_k(m, n),
                "k_countbf": countbf_k(m, n),
                "x": x,
                "y": y,
                "memory_bytes": x * y * args.beta // 8,
                "bits_per_item": x * y * args.beta / n,
            }
        )
    payload = rows[0] if len(rows) == 1 else rows
    write_text(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    kinds = _parse_tokens(args.kinds, KINDS, "kind")
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    out_dir = args.out or "datasets"
    manifests = []
    for kind in kinds:
        workload = make_workload(kind, args.n, args.n, seed)
        manifests.append(str(save_workload(workload, out_dir)))
    summary = {
        "config": {"command": "gen", "n": args.n, "kinds": kinds, "seed": seed},
        "out_dir": str(out_dir),
        "manifests": manifests,
    }
    sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    _check_load(args.n, args.epsilon)
    alphas = _parse_int_list(args.alpha, "--alpha")
    for alpha in alphas:
        if not 1 <= alpha <= args.beta:
            raise UsageError(f"--alpha {alpha} out of range [1, {args.beta}]")
    kinds = _parse_tokens(args.kinds, KINDS, "kind")
    filters = _parse_tokens(args.filters, FILTERS, "filter")
    if args.n > DESK_SCALE_WARN:
        print(
            f"warning: n={args.n} is above desk scale ({DESK_SCALE_WARN}); "
            "expect long runtimes and large allocations",
            file=sys.stderr,
        )

    workloads = {kind: make_workload(kind, args.n, args.n, seed) for kind in kinds}
    reports = []
    for name in filters:
        if name == "countbf":
            for alpha in alphas:
                fplan = plan(args.n, args.epsilon, alpha, args.beta, master_seed=seed)
                for kind in kinds:
                    reports.append(evaluate(CountBF(fplan), workloads[kind]))
        elif name == "sbf":
            for kind in kinds:
                reports.append(evaluate(SBF(args.n, args.epsilon, seed), workloads[kind]))
        else:
            for kind in kinds:
                reports.append(evaluate(CBF(args.n, args.epsilon, seed), workloads[kind]))

    config = {
        "command": "bench",
        "n": args.n,
        "epsilon": args.epsilon,
        "alpha": alphas,
        "beta": args.beta,
        "kinds": kinds,
        "filters": filters,
        "seed": seed,
        "backend": active_backend(),
    }
    if args.format == "csv":
        text = render_csv(reports, _echo(config))
    else:
        text = render_json(reports, config)
    write_text(text, args.out)

    if any(r.false_negatives > 0 for r in reports):
        print("invariant violation: false negatives on a delete-free run", file=sys.stderr)
        return 3
    return 0


def cmd_freq(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    if args.max_mult < 1:
        raise UsageError("--max-mult must be >= 1")
    if not 1 <= args.alpha <= args.beta:
        raise UsageError(f"--alpha {args.alpha} out of range [1, {args.beta}]")

    capacity = args.capacity if args.capacity is not None else max(1, args.n * args.max_mult)
    _check_load(capacity, args.epsilon)
    config = {
        "command": "freq",
        "n": args.n,
        "epsilon": args.epsilon,
        "alpha": args.alpha,
        "beta": args.beta,
        "max_mult": args.max_mult,
        "capacity": capacity,
        "seed": seed,
        "backend": active_backend(),
    }

    if args.n == 0:  # empty stream: nothing to insert or estimate
        payload = {"config": config, "n_keys": 0, "total_inserts": 0, "rows": []}
        write_text(json.dumps(payload, indent=2) + "\n", args.out)
        return 0

    keys = gen_keys(args.n, seed)
    mults = gen_multiplicities(args.n, seed, args.max_mult)
    fplan = plan(capacity, args.epsilon, args.alpha, args.beta, master_seed=seed)
    filt = CountBF(fplan)
    repeated = np.repeat(np.array(keys, dtype=object), mults.astype(np.int64)).tolist()
    filt.insert_many(repeated)

    estimates = filt.count_many(keys)
    truth = mults.astype(np.uint64)
    exact = int(np.count_nonzero(estimates == truth))
    over = int(np.count_nonzero(estimates > truth))
    under = int(np.count_nonzero(estimates < truth))
    max_count = (1 << args.alpha) - 1
    payload = {
        "config": config,
        "n_keys": args.n,
        "total_inserts": int(mults.sum()),
        "k": fplan.k,
        "x": fplan.x,
        "y": fplan.y,
        "max_count": max_count,
        "exact_match_rate": exact / args.n,
        "overestimate_rate": over / args.n,
        "underestimates": under,
        "overflow_events": filt.overflow_events,
        "saturated_estimates": int(np.count_nonzero(estimates == np.uint64(max_count))),
    }
    write_text(json.dumps(payload, indent=2) + "\n", args.out)

    if under > 0 and filt.overflow_events == 0:
        print("invariant violation: underestimate without counter saturation", file=sys.stderr)
        return 3
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="countbf",
        description="Benchmark harness for the packed counting Bloom filter.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sizeof = sub.add_parser("sizeof", help="print derived filter geometry as JSON")
    p_sizeof.add_argument("--n", required=True, help="expected items; comma list for a sweep")
    p_sizeof.add_argument("--epsilon", type=float, default=0.001)
    p_sizeof.add_argument("--beta", type=int, choices=(32, 64), default=64)
    p_sizeof.add_argument("--out", default=None, help="output file (default stdout)")
    p_sizeof.set_defaults(func=cmd_sizeof)

    p_gen = sub.add_parser("gen", help="write workload dataset files and manifests")
    p_gen.add_argument("--n", type=int, required=True, help="inserted keys (= queries)")
    p_gen.add_argument("--kinds", default=",".join(KINDS))
    p_gen.add_argument("--seed", type=int, default=None)
    p_gen.add_argument("--out", default=None, help="output directory (default ./datasets)")
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="run the filter x kind x alpha grid")
    p_bench.add_argument("--n", type=int, default=100_000)
    p_bench.add_argument("--epsilon", type=float, default=0.001)
    p_bench.add_argument("--alpha", default=DEFAULT_ALPHAS, help="comma list of counter widths")
    p_bench.add_argument("--beta", type=int, choices=(32, 64), default=64)
    p_bench.add_argument("--kinds", default=",".join(KINDS))
    p_bench.add_argument("--filters", default=",".join(FILTERS))
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument("--out", default=None, help="output file (default stdout)")
    p_bench.add_argument("--format", choices=("csv", "json"), default="csv")
    p_bench.set_defaults(func=cmd_bench)

    p_freq = sub.add_parser("freq", help="frequency estimation vs the exact oracle")
    p_freq.add_argument("--n", type=int, default=10_000, help="distinct keys")
    p_freq.add_argument("--epsilon", type=float, default=0.001)
    p_freq.add_argument("--alpha", type=int, default=8)
    p_freq.add_argument("--beta", type=int, choices=(32, 64), default=64)
    p_freq.add_argument("--max-mult", type=int, default=100, dest="max_mult")
    p_freq.add_argument(
        "--capacity",
        type=int,
        default=None,
        help="plan the filter for this many items (default n * max-mult)",
    )
    p_freq.add_argument("--seed", type=int, default=None)
    p_freq.add_argument("--out", default=None, help="output file (default stdout)")
    p_freq.set_defaults(func=cmd_freq)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the usage message
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except MemoryError:
        print("error: allocation failed", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
