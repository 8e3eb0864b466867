"""
Congestion games: players choose sets of resources and pay the load dependent
cost of every resource they use. Utilities are negated costs.
"""
from dataclasses import dataclass

import structlog

from dcs import control, equilibria, settings, utils
from dcs.errors import (
    InternalError,
    InvalidInputError,
    PreconditionError,
    UnsupportedError,
)
from dcs.games import Game, StructureTag
from dcs.models import Method
from dcs.solvers import Run


logger = structlog.get_logger(__name__)


class CongestionGame(Game):
    """
    ``strategies[i]`` lists the resource sets player i may use and
    ``costs[r][x - 1]`` is the cost of resource r under load x (1 <= x <= n).
    """

    structure_tag = StructureTag.CONGESTION

    def __init__(self, n_resources, strategies, costs):
        super().__init__([len(s) for s in strategies])
        self.n_resources = int(n_resources)
        self.strategies = tuple(tuple(frozenset(r) for r in s) for s in strategies)
        for i, options in enumerate(self.strategies):
            for resources in options:
                if not resources or not all(0 <= r < self.n_resources for r in resources):
                    raise InvalidInputError(f"Player {i} has an invalid resource set")
        if len(costs) != self.n_resources:
            raise InvalidInputError(f"Expected {self.n_resources} cost tables")
        self.costs = tuple(tuple(table) for table in costs)
        for r, table in enumerate(self.costs):
            if len(table) != self.n_players:
                raise InvalidInputError(
                    f"Cost table of resource {r} has {len(table)} entries, expected {self.n_players}"
                )

    def cost(self, r, load):
        return self.costs[r][load - 1]

    def resources_of(self, i, x):
        return self.strategies[i][x]

    def loads(self, profile):
        loads = [0] * self.n_resources
        for i, x in enumerate(profile):
            for r in self.resources_of(i, x):
                loads[r] += 1
        return loads

    def payoff(self, profile, i):
        loads = self.loads(profile)
        return -sum(
            (self.cost(r, loads[r]) for r in sorted(self.resources_of(i, profile[i]))),
            start=0,
        )

    def influencers(self):
        reach = [frozenset().union(*options) for options in self.strategies]
        return [
            frozenset(j for j in self.players if j != i and reach[i] & reach[j])
            for i in self.players
        ]

    def is_symmetric(self):
        return len(set(self.strategies)) == 1

    def has_nondecreasing_costs(self):
        return all(
            not utils.definitely_less(b, a)
            for table in self.costs
            for a, b in zip(table, table[1:])
        )

    def has_decreasing_costs(self):
        return all(
            utils.definitely_less(b, a) for table in self.costs for a, b in zip(table, table[1:])
        )


class SingletonCongestionGame(CongestionGame):
    """Every strategy is a single resource: strategy x of player i is ``choices[i][x]``"""

    structure_tag = StructureTag.SINGLETON_CONGESTION

    def __init__(self, n_resources, choices, costs):
        self.choices = tuple(tuple(int(r) for r in ch) for ch in choices)
        for i, ch in enumerate(self.choices):
            if len(set(ch)) != len(ch):
                raise InvalidInputError(f"Player {i} lists a resource twice")
        super().__init__(n_resources, [[(r,) for r in ch] for ch in self.choices], costs)

    @classmethod
    def full_choice(cls, n_players, costs):
        """Every player may use every resource, strategy index == resource"""
        m = len(costs)
        return cls(m, [list(range(m))] * n_players, costs)

    def resource(self, i, x):
        return self.choices[i][x]

    def strategy_for(self, i, r):
        try:
            return self.choices[i].index(r)
        except ValueError:
            return None

    def players_on(self, profile, r):
        return frozenset(i for i in self.players if self.choices[i][profile[i]] == r)

    def is_full_choice(self):
        return all(sorted(ch) == list(range(self.n_resources)) for ch in self.choices)


@dataclass(frozen=True)
class AttractionBasin:
    """Resources some player would move to, with their common entry cost"""

    resources: frozenset
    entry_cost: object = None


def _require_singleton(game):
    if not isinstance(game, SingletonCongestionGame):
        raise UnsupportedError("This operation is defined for singleton congestion games")


def attraction_basin(game, profile):
    """
    Resources r such that some player not on r has r among its best responses.

    With full choice and nondecreasing costs all of them cost the same to enter;
    otherwise a mismatch is possible and only logged.
    """
    _require_singleton(game)
    profile = game.validate_profile(profile)
    loads = game.loads(profile)
    basin = set()
    for i in game.players:
        for x in equilibria.best_responses(game, profile, i):
            if x != profile[i]:
                basin.add(game.resource(i, x))

    entry = [game.cost(r, loads[r] + 1) for r in sorted(basin)]
    if entry and not all(utils.is_close(entry[0], c) for c in entry):
        if game.is_full_choice() and game.has_nondecreasing_costs():
            raise InternalError(f"Attraction basin {sorted(basin)} has unequal entry costs")
        logger.warning("attraction basin entry costs differ", basin=sorted(basin))
        return AttractionBasin(frozenset(basin))
    return AttractionBasin(frozenset(basin), entry[0] if entry else None)


def dcs_size_upper_bound(game):
    """
    Some DCS of at most floor(n - n/m) players always exists: everyone outside
    the most popular resource of d.
    """
    _require_singleton(game)
    n, m = game.n_players, game.n_resources
    return (n * m - n) // m


@dataclass(frozen=True)
class PositionCheck:
    ok: bool
    witness: tuple = None

    def __bool__(self):
        return self.ok


def general_position_check(game, exact=False):
    """
    Static check: no two different resources share a cost value, which keeps every
    attraction basin to at most one resource. ``exact`` instead evaluates the
    basin of every profile.
    """
    _require_singleton(game)
    if exact:
        for profile in game.profiles(budget=settings.EXACT_BUDGET):
            if len(attraction_basin(game, profile).resources) > 1:
                return PositionCheck(False, tuple(profile))
        return PositionCheck(True)

    for q in range(game.n_resources):
        for r in range(q + 1, game.n_resources):
            for x, a in enumerate(game.costs[q], start=1):
                for y, b in enumerate(game.costs[r], start=1):
                    if utils.is_close(a, b):
                        return PositionCheck(False, ((q, x), (r, y)))
    return PositionCheck(True)


def load_condition_check(game, target):
    """
    For resources q != r used in d: if c_q(l_q + 1) > c_r(l_r) then
    c_q(l_q) > c_r(l_r - 1), where an empty r after removing one player costs -inf.
    """
    _require_singleton(game)
    target = game.validate_profile(target)
    loads = game.loads(target)
    for q in range(game.n_resources):
        for r in range(game.n_resources):
            if q == r or not loads[q] or not loads[r] or loads[q] >= game.n_players:
                continue
            premise = utils.definitely_less(game.cost(r, loads[r]), game.cost(q, loads[q] + 1))
            if not premise or loads[r] == 1:
                continue
            if not utils.definitely_less(game.cost(r, loads[r] - 1), game.cost(q, loads[q])):
                return PositionCheck(False, (q, r))
    return PositionCheck(True)


def _candidate_sets(instance):
    game = instance.game
    start, target = instance.start, instance.target
    movers = instance.movers
    yield movers

    for r in range(game.n_resources):
        incoming = sorted(i for i in movers if game.resource(i, target[i]) == r)
        base = frozenset(i for i in movers if game.resource(i, target[i]) != r)
        trade_offs = [()] + [(i,) for i in incoming] + [tuple(incoming)]
        for left_out in trade_offs:
            core = base | (frozenset(incoming) - set(left_out))
            profile = control.intermediate_profile(instance, core)
            attracted = frozenset(
                i
                for i in instance.players
                if i not in movers
                and game.resource(i, start[i]) != r
                and equilibria.best_responses(game, profile, i) == {game.strategy_for(i, r)}
            )
            yield core | attracted


def singleton_min_dcs(instance):
    """
    Minimum-size DCS of a singleton congestion game in general position.

    For every resource r the candidates keep all movers not headed to r, take
    all, all but one or none of the movers headed to r, and add the stayers
    whose only best response is to move onto r. Every candidate is verified.
    """
    game = instance.game
    _require_singleton(game)
    position = general_position_check(game)
    if not position:
        raise PreconditionError(f"Costs are not in general position: {position.witness}")
    loads = load_condition_check(game, instance.target)
    if not loads:
        raise PreconditionError(f"Target loads violate the load condition on {loads.witness}")
    if not equilibria.is_nash(game, instance.start):
        raise PreconditionError("Start profile must be a Nash equilibrium")

    run = Run(instance, Method.SINGLETON_CONGESTION)
    candidates = set(_candidate_sets(instance))
    feasible = []
    for candidate in sorted(candidates, key=sorted):
        run.stats.subsets_examined += 1
        if control.is_direct_control_set(instance, candidate):
            feasible.append(candidate)
        else:
            logger.warning("discarding infeasible candidate", candidate=sorted(candidate))

    run.stats.notes["candidates"] = len(candidates)
    run.stats.notes["discarded"] = len(candidates) - len(feasible)
    best = min(
        feasible,
        key=lambda c: (len(c), utils.total_weight(c, instance.weights), sorted(c)),
    )
    return run.report(best)


def symmetric_decreasing_min_dcs(instance):
    """
    Symmetric congestion games with strictly decreasing costs and uniform s and
    d: whether a set controls depends only on its size, so try the k lightest
    players for k = 0, 1, ...
    """
    game = instance.game
    if not isinstance(game, CongestionGame):
        raise UnsupportedError("This solver needs a congestion game")
    if not game.is_symmetric():
        raise PreconditionError("All players must share the same strategies")
    if not game.has_decreasing_costs():
        raise PreconditionError("Every resource cost must strictly decrease with load")
    if len(set(instance.start)) != 1 or len(set(instance.target)) != 1:
        raise PreconditionError("Start and target must be uniform profiles")

    run = Run(instance, Method.SYMMETRIC_DECREASING)
    order = sorted(instance.players, key=lambda i: (instance.weights[i], i))
    for k in range(instance.n_players + 1):
        run.stats.subsets_examined += 1
        if control.is_direct_control_set(instance, order[:k]):
            run.stats.notes["k"] = k
            return run.report(frozenset(order[:k]))

    raise InternalError("The full player set is always a direct control set")
