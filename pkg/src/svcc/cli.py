"""Batch CLI: run one algorithm, run the sv1..sv5 ablation, dump the
per-iteration frontier trace, or generate test graphs.

Exit codes: 0 success, 1 input error, 2 verification failure, 3 internal
invariant violation.
"""

import argparse
import csv
import json
import sys

import numpy as np

from .algorithms import (HookingConfig, RunResult, ablation_results, fastsv,
                         simplified_sv, sv_level_config)
from .driver import DriverConfig, fastsv_la
from .errors import InputError, InvariantError, VerificationError
from .graph import CsrGraph
from .graphio import (GeneratorSpec, generate, read_edge_list,
                      read_matrix_market, _write_edges)
from .oracle import union_find_labels

_KERNEL_FLAG = {"auto": "auto", "dense-only": "dense_only",
                "sparse-only": "sparse_only"}


class _Parser(argparse.ArgumentParser):
    # usage mistakes are input errors (exit 1), not argparse's default 2
    def error(self, message):
        raise InputError(message)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _load_graph(path: str, fmt: str) -> CsrGraph:
    if fmt == "auto":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                first = fh.readline()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}")
        fmt = "mm" if first.lower().startswith("%%matrixmarket") else "el"
    return read_matrix_market(path) if fmt == "mm" else read_edge_list(path)


def _edge_pairs(g: CsrGraph) -> np.ndarray:
    keep = g.row_ids < g.col_indices
    return np.stack([g.row_ids[keep], g.col_indices[keep]], axis=1)


def _verify(g: CsrGraph, result: RunResult) -> None:
    want = union_find_labels(g.n, _edge_pairs(g)).labels
    if not np.array_equal(result.labeling.labels, want):
        raise VerificationError("labeling disagrees with the union-find oracle")


def _build_report(g: CsrGraph, source: str, algorithm: str, config: dict,
                  result: RunResult, verified) -> dict:
    return {
        "graph": {"n": g.n, "m": g.m, "source": source},
        "algorithm": algorithm,
        "config": config,
        "component_count": result.labeling.component_count,
        "iterations": result.iterations,
        "trace": [
            {"iteration": t.iteration, "gf_changed": t.gf_changed,
             "f_changed": t.f_changed, "kernel": t.kernel,
             "flops": t.flops, "elapsed": t.elapsed}
            for t in result.trace
        ],
        "total_elapsed": result.total_elapsed,
        "verified": verified,
    }


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _reject(parser, condition: bool, message: str) -> None:
    if condition:
        parser.error(message)


def cmd_run(args, parser) -> None:
    g = _load_graph(args.input, args.format)
    hook_flags = [args.hook_grandparent, args.hook_stochastic,
                  args.hook_aggressive, args.early_termination]
    if args.algo == "sv":
        _reject(parser, args.sv_level is not None or any(v is not None for v in hook_flags),
                "--sv-level and --hook-* flags apply to --algo fastsv")
        result = simplified_sv(g)
        config = {}
    elif args.algo == "fastsv":
        base = sv_level_config(args.sv_level) if args.sv_level else HookingConfig()
        cfg = HookingConfig(
            grandparent_hooking=_pick(args.hook_grandparent, base.grandparent_hooking),
            stochastic_hooking=_pick(args.hook_stochastic, base.stochastic_hooking),
            aggressive_hooking=_pick(args.hook_aggressive, base.aggressive_hooking),
            early_termination=_pick(args.early_termination, base.early_termination),
        )
        result = fastsv(g, cfg)
        config = {
            "grandparent_hooking": cfg.grandparent_hooking,
            "stochastic_hooking": cfg.stochastic_hooking,
            "aggressive_hooking": cfg.aggressive_hooking,
            "early_termination": cfg.early_termination,
        }
    else:
        _reject(parser, args.sv_level is not None or any(v is not None for v in hook_flags),
                "--sv-level and --hook-* flags apply to --algo fastsv")
        dcfg = _driver_config(args, parser)
        result = fastsv_la(g, dcfg)
        config = {"sparse_threshold": dcfg.sparse_threshold,
                  "force_kernel": dcfg.force_kernel, "workers": dcfg.workers}

    verified = None
    if args.verify:
        _verify(g, result)
        verified = True
    if args.labels_out:
        with open(args.labels_out, "w", encoding="utf-8") as fh:
            for u, lab in enumerate(result.labeling.labels):
                fh.write(f"{u} {lab}\n")
    report = _build_report(g, args.input, args.algo, config, result, verified)
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.output)


def _pick(override, default):
    return default if override is None else override


def _driver_config(args, parser) -> DriverConfig:
    try:
        return DriverConfig(sparse_threshold=args.threshold,
                            force_kernel=_KERNEL_FLAG[args.kernel],
                            workers=args.threads)
    except ValueError as exc:
        parser.error(str(exc))


def cmd_ablation(args, parser) -> None:
    g = _load_graph(args.input, args.format)
    runs = ablation_results(g)
    want = union_find_labels(g.n, _edge_pairs(g)).labels
    for name, result in runs:
        if not np.array_equal(result.labeling.labels, want):
            raise VerificationError(f"{name} labeling disagrees with the oracle")
    sv1_iters = runs[0][1].iterations
    rows = [["name", "iterations", "total_elapsed", "reduction_vs_sv1"]]
    for name, result in runs:
        reduction = (sv1_iters - result.iterations) / sv1_iters if sv1_iters else 0.0
        rows.append([name, result.iterations,
                     f"{result.total_elapsed:.6f}", f"{reduction:.4f}"])
    _emit_csv(rows, args.output)


def cmd_frontier(args, parser) -> None:
    g = _load_graph(args.input, args.format)
    result = fastsv_la(g, _driver_config(args, parser))
    rows = [["iteration", "gf_changed", "gf_changed_frac", "kernel",
             "flops", "elapsed"]]
    for t in result.trace:
        frac = t.gf_changed / g.n if g.n else 0.0
        rows.append([t.iteration, t.gf_changed, f"{frac:.6f}", t.kernel,
                     t.flops, f"{t.elapsed:.6f}"])
    _emit_csv(rows, args.output)


def cmd_generate(args, parser) -> None:
    spec = GeneratorSpec(family=args.family, n=args.n, p=args.p,
                         seed=args.seed, blocks=args.blocks,
                         block_n=args.block_n, block_p=args.block_p,
                         rows=args.rows, cols=args.cols)
    g = generate(spec)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            _write_edges(g, fh)
    else:
        _write_edges(g, sys.stdout)


def _emit_csv(rows, path) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            csv.writer(fh).writerows(rows)
    else:
        csv.writer(sys.stdout).writerows(rows)


def _add_input_args(sub) -> None:
    sub.add_argument("--input", required=True, help="graph file to read")
    sub.add_argument("--format", choices=("auto", "mm", "el"), default="auto",
                     help="input format (auto sniffs the MatrixMarket header)")


def _add_driver_args(sub) -> None:
    sub.add_argument("--threshold", type=float, default=0.1,
                     help="changed-fraction cutoff for the sparse product")
    sub.add_argument("--kernel", choices=tuple(_KERNEL_FLAG), default="auto",
                     help="force the product kernel")
    sub.add_argument("--threads", type=_positive_int, default=1,
                     help="worker count for kernel-internal parallelism")


def build_parser() -> _Parser:
    parser = _Parser(prog="svcc",
                     description="Connected components experiments")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run one algorithm, report JSON")
    _add_input_args(run)
    run.add_argument("--algo", choices=("sv", "fastsv", "fastsv-la"),
                     default="fastsv")
    run.add_argument("--sv-level", type=int, choices=(1, 2, 3, 4, 5),
                     default=None, help="cumulative ablation config for fastsv")
    for flag in ("hook-grandparent", "hook-stochastic", "hook-aggressive",
                 "early-termination"):
        run.add_argument(f"--{flag}", action=argparse.BooleanOptionalAction,
                         default=None)
    _add_driver_args(run)
    run.add_argument("--verify", action="store_true",
                     help="compare labels against the union-find oracle")
    run.add_argument("--labels-out", default=None,
                     help="write 'vertex label' lines here")
    run.add_argument("--output", "-o", default=None,
                     help="report path (default stdout)")
    run.set_defaults(func=cmd_run)

    ablation = commands.add_parser("ablation",
                                   help="sv1..sv5 iteration counts as CSV")
    _add_input_args(ablation)
    ablation.add_argument("--output", "-o", default=None)
    ablation.set_defaults(func=cmd_ablation)

    frontier = commands.add_parser("frontier",
                                   help="per-iteration frontier trace as CSV")
    _add_input_args(frontier)
    _add_driver_args(frontier)
    frontier.add_argument("--output", "-o", default=None)
    frontier.set_defaults(func=cmd_frontier)

    gen = commands.add_parser("generate", help="write a generated edge list")
    gen.add_argument("--family", required=True,
                     choices=("path", "cycle", "star", "complete", "grid2d",
                              "gnp", "component_mix"))
    gen.add_argument("--n", type=int, default=0)
    gen.add_argument("--p", type=float, default=0.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--blocks", type=int, default=0)
    gen.add_argument("--block-n", type=int, default=0)
    gen.add_argument("--block-p", type=float, default=0.0)
    gen.add_argument("--rows", type=int, default=0)
    gen.add_argument("--cols", type=int, default=0)
    gen.add_argument("--output", "-o", default=None)
    gen.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args, parser)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
