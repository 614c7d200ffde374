"""Command line entry point: ``mdlcausa {infer,benchmark,lab,dag}``.

Exit codes: 0 on success, 2 for usage or input errors, 3 when a resource
limit rejects the request.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .benchmark import GENERATORS, run_benchmark
from .codecs import ResourceLimitError, get_codec
from .dag import DEFAULT_MAX_M, exhaustive_search
from .dataio import ParseError, RunConfig, format_record, load_joint, load_table, score_record
from .distributions import random_joint, substream
from .inference import infer
from .lab import rows_to_csv, symmetry_collapse, theorem1_convergence

EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _add_table_args(p):
    p.add_argument("file", help="CSV or TSV file")
    p.add_argument("--delimiter", default=None, help="field separator (default: tab if present, else comma)")
    p.add_argument("--no-header", dest="header", action="store_false", help="first line is data")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mdlcausa", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("infer", help="decide the causal direction between two columns")
    _add_table_args(p)
    p.add_argument("--x", default="0", help="cause candidate column (name or index)")
    p.add_argument("--y", default="1", help="effect candidate column (name or index)")
    p.add_argument("--codec", choices=("crude", "nml"), default="crude")
    p.add_argument("--eps", type=float, default=None, help="tie tolerance in bits")
    p.add_argument("--alpha", type=float, default=None, help="G-test significance level")
    p.add_argument("--no-gate", dest="gate", action="store_false", help="skip the dependence test")
    p.add_argument("--format", choices=("json", "csv"), default=None)

    p = sub.add_parser("benchmark", help="score seeded synthetic pairs with known direction")
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--kx", type=int, default=4)
    p.add_argument("--ky", type=int, default=4)
    p.add_argument("--gen", default="anm", help=f"generator: {', '.join(GENERATORS)}")
    p.add_argument("--alpha-dir", type=float, default=1.0, help="Dirichlet concentration")
    p.add_argument("--codec", choices=("crude", "nml"), default="crude")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--no-gate", dest="gate", action="store_false")

    p = sub.add_parser("lab", help="codelength experiments")
    lab = p.add_subparsers(dest="experiment", required=True)
    t = lab.add_parser("theorem1", help="per-symbol oracle codelength versus joint entropy")
    t.add_argument("--joint", default="random", help="'random' or a file holding a probability matrix")
    t.add_argument("--kx", type=int, default=3)
    t.add_argument("--ky", type=int, default=3)
    t.add_argument("--alpha-dir", type=float, default=1.0)
    t.add_argument("--n-grid", type=_int_list, default=[100, 1000, 10000])
    t.add_argument("--reps", type=int, default=5)
    t.add_argument("--seed", type=int, default=None)
    y = lab.add_parser("symmetry", help="joint-table encoding versus crude two-part scores")
    _add_table_args(y)
    y.add_argument("--x", default="0")
    y.add_argument("--y", default="1")
    y.add_argument("--format", choices=("json", "csv"), default=None)

    p = sub.add_parser("dag", help="exhaustive minimum-codelength DAG search")
    _add_table_args(p)
    p.add_argument("--codec", choices=("crude", "nml"), default="crude")
    p.add_argument("--max-m", type=int, default=DEFAULT_MAX_M)
    p.add_argument("--top", type=int, default=10, help="ranking entries to print (0 for all)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _load(args):
    try:
        return load_table(args.file, args.delimiter, args.header)
    except OSError as e:
        raise UsageError(f"cannot read {args.file}: {e.strerror}") from None


def _column(ds, ref):
    try:
        return ds.column(ref)
    except KeyError as e:
        raise UsageError(e.args[0]) from None


def cmd_infer(args) -> str:
    cfg = RunConfig.from_env(codec=args.codec, eps=args.eps, alpha=args.alpha, gate=args.gate, format=args.format)
    ds = _load(args)
    cx, cy = _column(ds, args.x), _column(ds, args.y)
    score = infer(ds.sample, cx, cy, get_codec(cfg.codec), eps=cfg.eps, alpha=cfg.alpha, gate=cfg.gate)
    k = ds.sample.alphabet_sizes
    return format_record(score_record(score, k[cx], k[cy], cfg.codec), cfg.format)


def cmd_benchmark(args) -> str:
    cfg = RunConfig.from_env(codec=args.codec, eps=args.eps, alpha=args.alpha, gate=args.gate, seed=args.seed)
    result = run_benchmark(
        args.pairs, args.n, args.kx, args.ky, args.gen, args.alpha_dir,
        cfg.codec, cfg.seed, cfg.eps, cfg.alpha, cfg.gate,
    )
    return result.to_csv().rstrip("\n")


def cmd_lab(args) -> str:
    if args.experiment == "theorem1":
        cfg = RunConfig.from_env(seed=args.seed)
        if args.joint == "random":
            joint = random_joint(args.kx, args.ky, args.alpha_dir, substream(cfg.seed))
        else:
            try:
                joint = load_joint(args.joint)
            except OSError as e:
                raise UsageError(f"cannot read {args.joint}: {e.strerror}") from None
        rows = theorem1_convergence(joint, args.n_grid, args.reps, cfg.seed)
        return rows_to_csv(rows).rstrip("\n")
    cfg = RunConfig.from_env(format=args.format)
    ds = _load(args)
    rec = symmetry_collapse(ds.sample, _column(ds, args.x), _column(ds, args.y))
    record = {
        "l_joint_xy_bits": rec.l_joint_xy,
        "l_joint_yx_bits": rec.l_joint_yx,
        "crude_l_xy_bits": rec.crude_l_xy,
        "crude_l_yx_bits": rec.crude_l_yx,
        "n": ds.sample.n,
    }
    return format_record(record, cfg.format)


def cmd_dag(args) -> str:
    ds = _load(args)
    result = exhaustive_search(ds.sample, get_codec(args.codec), args.max_m)
    ranking = result.ranking if args.top == 0 else result.ranking[: args.top]
    names = ds.names
    if args.format == "text":
        out = result.best.to_lines(names)
        out.append(f"# score_bits={result.score!r} dags={len(result.ranking)}")
        return "\n".join(out)
    return json.dumps({
        "nodes": list(names),
        "codec": args.codec,
        "best": {
            "parents": result.best.to_lines(names),
            "adjacency": result.best.to_adjacency(),
            "score_bits": result.score,
        },
        "n_dags": len(result.ranking),
        "ranking": [{"parents": d.to_lines(names), "score_bits": sc} for d, sc in ranking],
    })


COMMANDS = {"infer": cmd_infer, "benchmark": cmd_benchmark, "lab": cmd_lab, "dag": cmd_dag}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        out = COMMANDS[args.command](args)
    except ResourceLimitError as e:
        print(f"mdlcausa: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, ParseError, ValueError) as e:
        print(f"mdlcausa: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
