"""Command-line interface.

Exit codes: 0 success, 2 input error, 3 bad query argument, 4 mesh generation
failure. Results go to stdout (or ``--output``); diagnostics go to stderr.
"""

import argparse
import os
import sys
import time
import warnings

import numpy as np

from ._errors import CapacityOverflow, ElemOutOfRange, GenerationStalled, MeshError
from .adjacency import BuildStrategy, build_incidence, nearness_tally, neighbor_table
from .bench import rows_to_csv, run_bench, warm_up
from .io import detect_format, generate_random_mesh, load_mesh, render_native, render_table
from .mesh import Nearness

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_QUERY = 3
EXIT_GENERATION = 4

_CHUNK = 65536


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _sizes(text):
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must be comma-separated integers: {text!r}") from None


def _strategies(text):
    try:
        return [BuildStrategy(s.strip()) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown strategy in {text!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tetnear",
        description="Near-element queries for tetrahedral meshes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--output", "-o", default="-", help="output path (default: stdout)")

    mesh_in = argparse.ArgumentParser(add_help=False)
    mesh_in.add_argument("--input", "-i", default="-", help="mesh file (default: stdin)")
    mesh_in.add_argument("--format", choices=("auto", "native", "msh22"), default="auto")
    mesh_in.add_argument("--strategy", choices=[s.value for s in BuildStrategy],
                         default=BuildStrategy.COUNTSORT.value)
    mesh_in.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1)
    mesh_in.add_argument("--permissive", action="store_true",
                         help="accept elements that repeat a node index")

    p = sub.add_parser("neighbors", parents=[mesh_in, out],
                       help="near elements of one element")
    p.add_argument("elem", type=int)
    sub.add_parser("neighbors-all", parents=[mesh_in, out],
                   help="near elements of every element")
    sub.add_parser("stats", parents=[mesh_in, out], help="mesh and incidence statistics")

    p = sub.add_parser("bench", parents=[out], help="time builds and query sweeps (CSV)")
    p.add_argument("--sizes", type=_sizes, default=[10000, 20000, 40000])
    p.add_argument("--repeats", type=_positive_int, default=3)
    p.add_argument("--strategy", type=_strategies, default=list(BuildStrategy),
                   help="comma-separated strategies (default: all)")
    p.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", parents=[out], help="write a seeded random mesh")
    p.add_argument("--n-node", type=int, required=True)
    p.add_argument("--n-elem", type=int, required=True)
    p.add_argument("--max-valence", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _read_mesh(args):
    fmt = args.format
    path = None if args.input == "-" else args.input
    if fmt == "auto":
        fmt = detect_format(path)
    try:
        if path is None:
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except (OSError, UnicodeDecodeError) as err:
        raise CliError(EXIT_INPUT, f"cannot read {args.input}: {err}") from None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            mesh, _ = load_mesh(text, fmt, permissive=args.permissive)
        except MeshError as err:
            raise CliError(EXIT_INPUT, f"{args.input}: {err}") from None
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return mesh


def _build(mesh, args):
    try:
        return build_incidence(mesh, args.strategy, args.threads)
    except CapacityOverflow as err:
        raise CliError(EXIT_INPUT, str(err)) from None


class _Output:
    def __init__(self, path):
        self.path = path

    def __enter__(self):
        if self.path == "-":
            self.fh = sys.stdout
        else:
            try:
                self.fh = open(self.path, "w", encoding="utf-8", newline="\n")
            except OSError as err:
                raise CliError(EXIT_INPUT, f"cannot write {self.path}: {err}") from None
        return self.fh

    def __exit__(self, *exc):
        if self.fh is not sys.stdout:
            self.fh.close()
        else:
            self.fh.flush()


def cmd_neighbors(args):
    mesh = _read_mesh(args)
    inc = _build(mesh, args)
    if not 0 <= args.elem < mesh.n_elem:
        raise CliError(EXIT_QUERY, str(ElemOutOfRange(args.elem, mesh.n_elem)))
    table = neighbor_table(inc, mesh, args.elem, args.elem + 1)
    with _Output(args.output) as fh:
        fh.write(render_table(table))


def cmd_neighbors_all(args):
    mesh = _read_mesh(args)
    inc = _build(mesh, args)
    with _Output(args.output) as fh:
        for start in range(0, mesh.n_elem, _CHUNK):
            fh.write(render_table(neighbor_table(inc, mesh, start, start + _CHUNK)))


def cmd_stats(args):
    mesh = _read_mesh(args)
    warm_up([args.strategy], args.threads)
    t0 = time.perf_counter()
    inc = _build(mesh, args)
    build_ms = (time.perf_counter() - t0) * 1e3
    valence = inc.valence()
    pairs = nearness_tally(inc, mesh)
    lines = [
        f"n_node={mesh.n_node}",
        f"n_elem={mesh.n_elem}",
        f"entries={inc.n_entries}",
        f"valence_min={int(valence.min()) if valence.size else 0}",
        f"valence_mean={float(np.mean(valence)) if valence.size else 0.0:.6g}",
        f"valence_max={int(valence.max()) if valence.size else 0}",
    ]
    for kind in (Nearness.VERTEX_NEAR, Nearness.EDGE_NEAR, Nearness.FACE_NEAR,
                 Nearness.COINCIDENT):
        lines.append(f"pairs_{kind.code}={pairs[kind]}")
    lines.append(f"build_ms={build_ms:.3f}")
    with _Output(args.output) as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_bench(args):
    try:
        rows = run_bench(args.sizes, args.strategy, args.threads, args.repeats, args.seed)
    except GenerationStalled as err:
        raise CliError(EXIT_GENERATION, str(err)) from None
    except ValueError as err:
        raise CliError(EXIT_INPUT, str(err)) from None
    with _Output(args.output) as fh:
        fh.write(rows_to_csv(rows))


def cmd_gen(args):
    try:
        mesh = generate_random_mesh(args.n_node, args.n_elem, args.max_valence, args.seed)
    except GenerationStalled as err:
        raise CliError(EXIT_GENERATION, str(err)) from None
    except ValueError as err:
        raise CliError(EXIT_INPUT, str(err)) from None
    with _Output(args.output) as fh:
        fh.write(render_native(mesh))


_COMMANDS = {
    "neighbors": cmd_neighbors,
    "neighbors-all": cmd_neighbors_all,
    "stats": cmd_stats,
    "bench": cmd_bench,
    "gen": cmd_gen,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except CliError as err:
        print(f"tetnear {args.command}: {err}", file=sys.stderr)
        return err.code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
