"""Timing harness for incidence builds and full near-element sweeps."""

import csv
import io
import statistics
import time
from dataclasses import dataclass

from .adjacency import BuildStrategy, build_incidence, nearness_tally
from .io.generate import generate_random_mesh

BENCH_MAX_VALENCE = 64
CSV_HEADER = ("n_elem", "strategy", "threads", "build_ms", "query_all_ms")


@dataclass
class BenchRow:
    n_elem: int
    strategy: str
    threads: int
    build_ms: float
    query_all_ms: float


def bench_mesh(n_elem, seed):
    return generate_random_mesh(max(4, n_elem // 5), n_elem, BENCH_MAX_VALENCE, seed)


def warm_up(strategies, threads):
    # keep JIT compilation out of the timings
    mesh = generate_random_mesh(8, 8, BENCH_MAX_VALENCE, 0)
    for s in strategies:
        nearness_tally(build_incidence(mesh, s, threads), mesh)


def run_bench(sizes, strategies=tuple(BuildStrategy), threads=1, repeats=3, seed=0):
    """Median build and sweep times per (size, strategy).

    Meshes use ``n_node = max(4, n_elem // 5)`` and valence at most 64, drawn
    from ``seed``, so mesh content is the same across runs.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    if list(sizes) != sorted(sizes):
        raise ValueError("sizes must be ascending")
    strategies = [BuildStrategy(s) for s in strategies]
    warm_up(strategies, threads)
    rows = []
    for n_elem in sizes:
        mesh = bench_mesh(n_elem, seed)
        for s in strategies:
            build, query = [], []
            for _ in range(repeats):
                t0 = time.perf_counter()
                inc = build_incidence(mesh, s, threads)
                t1 = time.perf_counter()
                nearness_tally(inc, mesh)
                t2 = time.perf_counter()
                build.append((t1 - t0) * 1e3)
                query.append((t2 - t1) * 1e3)
            rows.append(BenchRow(n_elem, s.value, threads,
                                 statistics.median(build), statistics.median(query)))
    return rows


def rows_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.n_elem, r.strategy, r.threads,
                    f"{r.build_ms:.3f}", f"{r.query_all_ms:.3f}"])
    return buf.getvalue()
