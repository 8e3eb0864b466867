import io
import json
import sys

import click
import structlog

from dcs import (
    bench,
    congestion,
    control,
    coordination,
    equilibria,
    gadgets,
    generators,
    solvers,
    tree_dp,
    utils,
)
from dcs.adapters import instance_file, local_audit
from dcs.errors import DcsError, PreconditionError, UnsupportedError
from dcs.logging import configure_logging


logger = structlog.get_logger("dcs.cli")

METHODS = {
    "brute": solvers.brute_force_min_dcs,
    "incremental": solvers.incremental_min_dcs,
    "local-ratio": solvers.local_ratio_dcs,
    "singleton-hitting": solvers.singleton_hitting_min_dcs,
    "tree-dp": tree_dp.tree_dp_min_dcs,
    "singleton": congestion.singleton_min_dcs,
    "symmetric": congestion.symmetric_decreasing_min_dcs,
    "coordination": coordination.coordination_min_dcs,
}

# Exit codes: 0 solved or true, 1 false, 2 bad input, 3 budget exceeded.
EXIT_TRUE, EXIT_FALSE = 0, 1


class DcsGroup(click.Group):
    """Turns library errors into a message on stderr and their exit code"""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except DcsError as exc:
            click.echo(f"Error: {exc}", err=True)
            ctx.exit(exc.exit_code)


def _verdict(ctx, value):
    click.echo("true" if value else "false")
    ctx.exit(EXIT_TRUE if value else EXIT_FALSE)


@click.group(cls=DcsGroup)
@click.option("--log-level", default=None, help="Level for the dcs loggers")
def cli(log_level):
    """Minimum-weight direct control sets of finite games"""
    configure_logging(log_level)


@cli.command()
@click.option("--instance", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--set", "members", default="", help="Comma separated players, e.g. 0,2,5")
@click.option("--order-independent", is_flag=True, help="Check order independence")
@click.option("--per-player", type=int, default=None, help="Check control of one player")
@click.option("--minimal", type=click.Choice(["fast", "exact"]), default=None)
@click.pass_context
def verify(ctx, path, members, order_independent, per_player, minimal):
    """Check whether a set of players controls the instance"""
    instance = instance_file.load_instance(path)
    members = utils.parse_player_set(members)
    if per_player is not None:
        check, value = "per-player", control.is_dcs_for_player(instance, members, per_player)
    elif order_independent:
        check, value = "order-independent", control.is_order_independent_dcs(instance, members)
    elif minimal:
        check, value = f"minimal-{minimal}", control.is_minimal_dcs(instance, members, minimal)
    else:
        check, value = "dcs", control.is_direct_control_set(instance, members)
    local_audit.log_verify(path, members, value, check=check)
    _verdict(ctx, value)


def _solve(instance, method, budget, orderings, seed):
    solver = METHODS[method]
    if method == "brute":
        return solver(instance, budget=budget)
    if method == "incremental":
        return solver(instance, ordering_budget=orderings, seed=seed)
    return solver(instance)


@cli.command()
@click.option("--instance", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--method", type=click.Choice(sorted(METHODS)), default="brute")
@click.option(
    "--fallback-brute/--no-fallback-brute",
    default=True,
    help="Use brute force when the method's preconditions fail",
)
@click.option("--budget", type=int, default=None, help="Subset budget for brute force")
@click.option(
    "--orderings", type=int, default=None, help="Ordering budget for the incremental method"
)
@click.option("--seed", type=int, default=0, help="Seed for sampled orderings")
@click.pass_context
def solve(ctx, path, method, fallback_brute, budget, orderings, seed):
    """Find a minimum-weight direct control set"""
    instance = instance_file.load_instance(path)
    try:
        report = _solve(instance, method, budget, orderings, seed)
    except (PreconditionError, UnsupportedError) as exc:
        if not fallback_brute or method == "brute":
            raise
        logger.warning("falling back to brute force", method=method, reason=str(exc))
        report = solvers.brute_force_min_dcs(instance)

    local_audit.log_solve(report, path)
    click.echo(json.dumps(report.as_dict(), indent=2, sort_keys=True))
    ctx.exit(EXIT_TRUE)


def _emit(text, output):
    if output:
        with open(output, "w") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


def _read_graph(path):
    if path is None:
        raise click.UsageError("This gadget needs --graph")
    with open(path) as f:
        return utils.parse_edge_list(f.read())


def _parse_sets(text):
    if not text:
        raise click.UsageError("This gadget needs --sets, e.g. '0,1;1,2'")
    return [utils.parse_player_set(part) for part in text.split(";")]


@cli.command()
@click.option("--name", required=True, type=click.Choice(sorted(gadgets.BUILDERS)))
@click.option("--graph", "graph_path", type=click.Path(dir_okay=False), default=None)
@click.option("--k", type=int, default=None)
@click.option("--n", type=int, default=None)
@click.option("--p", type=int, default=None)
@click.option("--m", type=int, default=None)
@click.option("--sets", default=None, help="Semicolon separated sets, e.g. '0,1;1,2'")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
def gadget(name, graph_path, k, n, p, m, sets, output):
    """Write a gadget instance file"""

    def need(**values):
        missing = [f"--{key}" for key, value in values.items() if value is None]
        if missing:
            raise click.UsageError(f"{name} needs {', '.join(missing)}")

    if name == "dominating-oi":
        need(k=k)
        instance = gadgets.gadget_dominating_oi(_read_graph(graph_path), k)
    elif name == "doubled-coordination":
        instance = gadgets.gadget_doubled_coordination(_read_graph(graph_path))
    elif name == "tree-deletion":
        instance = gadgets.gadget_tree_deletion(_read_graph(graph_path))
    elif name == "threshold":
        need(n=n, p=p)
        instance = gadgets.gadget_threshold(n, p)
    elif name == "tight-strong":
        need(n=n, m=m)
        instance = gadgets.gadget_tight_strong(n, m)
    elif name == "hitting-set":
        instance = gadgets.gadget_hitting_set(_parse_sets(sets))
    elif name == "shift-congestion":
        need(n=n, m=m)
        instance = gadgets.gadget_shift_congestion(n, m)
    elif name == "two-by-two":
        instance = gadgets.gadget_two_by_two()
    else:
        instance = gadgets.gadget_non_monotone()
    _emit(instance_file.dump_instance(instance), output)


def _profile(instance, text):
    if text in ("target", "d"):
        return instance.target
    if text in ("start", "s"):
        return instance.start
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise click.BadParameter(f"Expected d, s or a profile like 0,1,1, got {text!r}")


@cli.command()
@click.option("--instance", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--profile", "profile_text", default="target")
@click.option("--kmax", type=int, default=None)
def strength(path, profile_text, kmax):
    """Largest k for which the profile is a k-strong equilibrium"""
    instance = instance_file.load_instance(path)
    click.echo(equilibria.strength(instance.game, _profile(instance, profile_text), kmax))


@cli.command()
@click.option("--instance", "path", required=True, type=click.Path(dir_okay=False))
def nash(path):
    """List every pure Nash equilibrium"""
    instance = instance_file.load_instance(path)
    for profile in generators.enumerate_nash(instance.game):
        click.echo(",".join(str(x) for x in profile))


@cli.command()
@click.option("--kind", type=click.Choice(generators.KINDS), required=True)
@click.option("--n", type=int, required=True)
@click.option("--seed", type=int, default=0)
@click.option("--weighted", is_flag=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
def generate(kind, n, seed, weighted, output):
    """Write a random instance file"""
    instance = generators.random_instance(kind, n, seed, weighted=weighted)
    _emit(instance_file.dump_instance(instance), output)


@cli.command(name="bench")
@click.option("--suite", type=click.Choice(sorted(bench.SUITES)), required=True)
@click.option("--seeds", default="0..9", help="Inclusive seed range A..B")
@click.option("--n", type=int, default=8)
@click.option("--weighted", is_flag=True)
@click.option("--report", type=click.Choice(["csv"]), default="csv")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
def run_bench(suite, seeds, n, weighted, report, output):
    """Run a benchmark suite and write a CSV report"""
    rows = bench.run_suite(suite, utils.parse_seed_range(seeds), n, weighted=weighted)
    if output:
        with open(output, "w", newline="") as f:
            bench.write_report(rows, f)
    else:
        buffer = io.StringIO()
        bench.write_report(rows, buffer)
        click.echo(buffer.getvalue(), nl=False)


def main():
    cli(prog_name="dcs")


if __name__ == "__main__":
    sys.exit(main())
