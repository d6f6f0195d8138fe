"""Command-line entry point.

Subcommands:
  run      execute an experiment config, write a RegretReport JSON and an
           optional per-checkpoint CSV
  sweep    cross-product of axis values over a base config; one report per
           cell plus a summary CSV
  verify   run the quantitative check suite (or a named subset), emit the
           CheckResult records as JSON, exit nonzero iff any check fails
  graphgen emit a feedback graph in the JSON wire format

Exit codes: 0 success, 1 check failure, 2 config error, 3 runtime error.
Outputs are written atomically (temp file, then rename); inputs are never
modified. Determinism: outputs contain no timestamps, so identical inputs
give identical bytes.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import logging
import os
import sys
import tempfile

log = logging.getLogger("graphbandit")

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_RUNTIME_ERROR = 3


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_json(path: str, obj) -> None:
    _atomic_write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _write_csv(path: str, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _atomic_write(path, buf.getvalue())


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------


def _experiment_from_file(path: str, seed_override):
    from graphbandit.harness import ExperimentConfig

    obj = _load_json(path)
    if seed_override is not None:
        obj["master_seed"] = seed_override
    return ExperimentConfig.from_dict(obj)


def _checkpoint_rows(report):
    rows = []
    for replicate, curve in enumerate(report.curves):
        for point in curve:
            rows.append(
                (replicate, point["round"],
                 point["cum_pseudo_regret"], point["cum_realized_regret"])
            )
    return rows


def cmd_run(args) -> int:
    from graphbandit import harness as hn

    config = _experiment_from_file(args.config, args.seed)
    log.info("running %d replicate(s), T=%d", config.replicates, config.horizon)
    report = hn.monte_carlo(config, parallelism=args.parallelism,
                            with_traces=args.dump_traces)
    os.makedirs(args.out_dir, exist_ok=True)
    _write_json(os.path.join(args.out_dir, "report.json"), report.to_dict())
    if report.curves:
        _write_csv(
            os.path.join(args.out_dir, "checkpoints.csv"),
            ("replicate", "round", "cum_pseudo_regret", "cum_realized_regret"),
            _checkpoint_rows(report),
        )
    if args.dump_traces:
        for i, rows in enumerate(report.traces):
            _write_csv(os.path.join(args.out_dir, f"trace_{i:03d}.csv"),
                       hn.TRACE_HEADER, rows)
        for i, rows in enumerate(report.phase_logs):
            if rows:
                _write_csv(os.path.join(args.out_dir, f"phases_{i:03d}.csv"),
                           hn.PHASE_LOG_HEADER, rows)
    log.info("mean pseudo-regret %.3f (se %.3f)",
             report.mean_pseudo_regret, report.se_pseudo_regret)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _set_path(obj: dict, dotted: str, value) -> None:
    parts = dotted.split(".")
    node = obj
    for key in parts[:-1]:
        if key not in node or not isinstance(node[key], dict):
            node[key] = {}
        node = node[key]
    node[parts[-1]] = value


def _validate_sweep(obj: dict) -> None:
    from graphbandit.harness import ConfigError

    if "base" not in obj or not isinstance(obj["base"], dict):
        raise ConfigError(".base", "missing base experiment config object")
    axes = obj.get("axes")
    if not isinstance(axes, list) or not axes:
        raise ConfigError(".axes", "expected a nonempty list of axes")
    for i, axis in enumerate(axes):
        if not isinstance(axis, dict) or "path" not in axis or "values" not in axis:
            raise ConfigError(f".axes[{i}]", "each axis needs 'path' and 'values'")
        if not isinstance(axis["values"], list) or not axis["values"]:
            raise ConfigError(f".axes[{i}].values", "expected a nonempty list")


def _sweep_cells(axes):
    if not axes:
        yield ()
        return
    first, rest = axes[0], axes[1:]
    for value in first["values"]:
        for tail in _sweep_cells(rest):
            yield ((first["path"], value),) + tail


def cmd_sweep(args) -> int:
    from graphbandit.harness import ExperimentConfig, monte_carlo

    sweep = _load_json(args.config)
    _validate_sweep(sweep)
    axes = sweep["axes"]
    os.makedirs(args.out_dir, exist_ok=True)
    header = [axis["path"] for axis in axes] + ["mean_regret", "se"]
    rows = []
    for cell_index, cell in enumerate(_sweep_cells(axes)):
        obj = copy.deepcopy(sweep["base"])
        if args.seed is not None:
            obj["master_seed"] = args.seed
        for path, value in cell:
            _set_path(obj, path, value)
        config = ExperimentConfig.from_dict(obj)
        label = ",".join(f"{p}={v}" for p, v in cell)
        log.info("sweep cell %d: %s", cell_index, label)
        report = monte_carlo(config, parallelism=args.parallelism)
        cell_dir = os.path.join(args.out_dir, f"cell_{cell_index:03d}")
        os.makedirs(cell_dir, exist_ok=True)
        _write_json(os.path.join(cell_dir, "report.json"),
                    {"cell": dict(cell), **report.to_dict()})
        if report.curves:
            _write_csv(
                os.path.join(cell_dir, "checkpoints.csv"),
                ("replicate", "round", "cum_pseudo_regret", "cum_realized_regret"),
                _checkpoint_rows(report),
            )
        rows.append([v for _, v in cell]
                    + [report.mean_pseudo_regret, report.se_pseudo_regret])
    _write_csv(os.path.join(args.out_dir, "summary.csv"), header, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    from graphbandit import verify as vf

    seed = args.seed if args.seed is not None else vf.DEFAULT_SEED
    names = list(dict.fromkeys(args.only)) if args.only else list(vf.REGISTRY)
    unknown = [n for n in names if n not in vf.REGISTRY]
    if unknown:
        from graphbandit.environments import EnvInputError

        raise EnvInputError(f"unknown check(s) {unknown}; available: {sorted(vf.REGISTRY)}")
    workers = min(args.workers, len(names))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_verify_worker, [(n, seed) for n in names]))
        payload = [rec for chunk in chunks for rec in chunk]
    else:
        payload = [r.to_dict() for r in vf.run_suite(names, seed=seed)]
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    failed = [rec for rec in payload if rec["status"] != "pass"]
    for rec in payload:
        log.info("%-28s %s", rec["name"], rec["status"].upper())
    if failed:
        log.error("%d check(s) failed", len(failed))
        return EXIT_CHECK_FAILURE
    return EXIT_OK


def _verify_worker(args):
    from graphbandit import verify as vf

    name, seed = args
    return [r.to_dict() for r in vf.REGISTRY[name](seed=seed)]


# ---------------------------------------------------------------------------
# graphgen
# ---------------------------------------------------------------------------


def cmd_graphgen(args) -> int:
    from graphbandit import graphs as gr
    from graphbandit.seeding import make_rng

    chosen = [bool(args.cliques), bool(args.er), args.complete is not None,
              args.bandit is not None]
    if sum(chosen) != 1:
        raise gr.GraphInputError(
            "choose exactly one of --cliques, --er, --complete, --bandit"
        )
    if args.cliques:
        k, alpha = args.cliques
        g = gr.disjoint_cliques(k, alpha)
    elif args.er:
        k, p = int(args.er[0]), float(args.er[1])
        g = gr.sample_erdos_renyi(k, p, not args.no_self_loops,
                                  make_rng(args.seed if args.seed is not None else 0))
    elif args.complete is not None:
        g = gr.complete_graph(args.complete)
    else:
        g = gr.bandit_graph(args.bandit)
    text = gr.dump_graph(g) + "\n"
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphbandit",
        description="simulate online learning against hidden feedback graphs",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress to stderr (-vv for debug)")
    sub = parser.add_subparsers(dest="command", required=True)

    default_par = os.cpu_count() or 1

    p_run = sub.add_parser("run", help="run one experiment config")
    p_run.add_argument("config", help="experiment config JSON path")
    p_run.add_argument("--out-dir", required=True)
    p_run.add_argument("--seed", type=int, default=None, help="master seed override")
    p_run.add_argument("--parallelism", type=int, default=default_par,
                       help="concurrent replicates (default: cpu count)")
    p_run.add_argument("--dump-traces", action="store_true",
                       help="write per-replicate round traces (and elimination "
                            "phase logs) as CSV")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="grid of experiments over axes")
    p_sweep.add_argument("config", help="sweep config JSON path")
    p_sweep.add_argument("--out-dir", required=True)
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--parallelism", type=int, default=default_par)
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the quantitative check suite")
    p_verify.add_argument("--only", action="append", metavar="CHECK",
                          help="run only this check (repeatable)")
    p_verify.add_argument("--out", default=None, help="write results JSON here")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--workers", type=int, default=2,
                          help="checks to run concurrently (default 2)")
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("graphgen", help="emit a feedback graph as JSON")
    p_gen.add_argument("--cliques", nargs=2, type=int, metavar=("K", "ALPHA"))
    p_gen.add_argument("--er", nargs=2, metavar=("K", "P"))
    p_gen.add_argument("--complete", type=int, metavar="K")
    p_gen.add_argument("--bandit", type=int, metavar="K",
                       help="self-loops-only graph")
    p_gen.add_argument("--no-self-loops", action="store_true")
    p_gen.add_argument("--seed", type=int, default=None)
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(func=cmd_graphgen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else (
        logging.INFO if args.verbose == 1 else logging.DEBUG
    )
    logging.basicConfig(level=level, format="%(levelname)s %(message)s",
                        stream=sys.stderr)
    from graphbandit.environments import EnvInputError
    from graphbandit.graphs import ExactBudgetError, GraphInputError
    from graphbandit.harness import ConfigError, ProtocolError
    from graphbandit.learners import LearnerInputError

    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error at {exc.path}: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (json.JSONDecodeError, FileNotFoundError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (EnvInputError, GraphInputError, LearnerInputError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (ProtocolError, ExactBudgetError, RuntimeError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
