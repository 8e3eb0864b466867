"""
Benchmark suites: random instances solved by a suite's methods next to the
brute force optimum, one CSV row per (seed, method).
"""
import csv

import structlog

from dcs import congestion, coordination, generators, settings, solvers, tree_dp
from dcs.errors import DcsError


logger = structlog.get_logger(__name__)

FIELDS = ["suite", "seed", "n", "method", "weight", "optimum", "ratio", "oracle_calls", "millis", "error"]

SUITES = {
    "random-singleton": (
        "singleton-congestion",
        {"resources": 3},
        [congestion.singleton_min_dcs, solvers.incremental_min_dcs],
    ),
    "random-tree": (
        "tree",
        {},
        [tree_dp.tree_dp_min_dcs, solvers.incremental_min_dcs],
    ),
    "random-monotone": (
        "monotone-graphical",
        {},
        [solvers.local_ratio_dcs, solvers.singleton_hitting_min_dcs],
    ),
    "coordination": (
        "coordination",
        {},
        [coordination.coordination_min_dcs, solvers.local_ratio_dcs],
    ),
    "symmetric-decreasing": (
        "symmetric-decreasing",
        {"resources": 2},
        [congestion.symmetric_decreasing_min_dcs],
    ),
}


def _row(suite, seed, n, method, report, optimum):
    weight = report.weight
    ratio = ""
    if optimum:
        ratio = round(float(weight) / float(optimum), 4)
    elif optimum == 0:
        ratio = 1.0 if weight == 0 else ""
    return {
        "suite": suite,
        "seed": seed,
        "n": n,
        "method": method,
        "weight": weight,
        "optimum": optimum,
        "ratio": ratio,
        "oracle_calls": report.stats.oracle_calls,
        "millis": round(report.stats.millis, 3),
        "error": "",
    }


def run_suite(suite, seeds, n, weighted=False):
    """Yield one row per seed and method; solver errors become rows, not crashes"""
    kind, params, methods = SUITES[suite]
    for seed in seeds:
        instance = generators.random_instance(kind, n, seed, weighted=weighted, **params)
        optimum = ""
        if n <= settings.BRUTE_FORCE_MAX_PLAYERS:
            optimum = solvers.brute_force_min_dcs(instance).weight
        for method in methods:
            name = method.__name__
            try:
                report = method(instance)
            except DcsError as exc:
                logger.warning("benchmark method failed", suite=suite, seed=seed, method=name, error=str(exc))
                yield {**dict.fromkeys(FIELDS, ""), "suite": suite, "seed": seed, "n": n, "method": name, "error": str(exc)}
                continue
            yield _row(suite, seed, n, name, report, optimum)


def write_report(rows, stream):
    writer = csv.DictWriter(stream, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    count = 0
    for row in rows:
        writer.writerow(row)
        count += 1
    return count
