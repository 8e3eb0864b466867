"""
General minimum-weight direct control set solvers.

Every solver returns a ``SolveReport`` whose solution has been re-verified as
a direct control set.
"""
import math
import time
from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np
import structlog

from dcs import control, covering, equilibria, settings, utils
from dcs.errors import (
    BudgetExceededError,
    InternalError,
    PreconditionError,
    UnsupportedError,
)
from dcs.models import Method, SolveReport, SolveStats


logger = structlog.get_logger(__name__)


class Run:
    """Counters for one solver invocation"""

    def __init__(self, instance, method):
        self.instance = instance
        self.method = method
        self.stats = SolveStats()
        self._calls = instance.game.oracle_calls
        self._started = time.perf_counter()

    def report(self, members):
        instance = self.instance
        feasible = control.is_direct_control_set(instance, members)
        if not feasible:
            raise InternalError(
                f"{self.method.value} produced {sorted(members)}, which is not a DCS"
            )
        self.stats.oracle_calls = instance.game.oracle_calls - self._calls
        self.stats.millis = (time.perf_counter() - self._started) * 1000
        report = SolveReport(instance.player_set(members), feasible, self.method, self.stats)
        logger.info(
            "solved",
            method=self.method.value,
            solution=report.solution.sorted(),
            weight=report.weight,
            oracle_calls=self.stats.oracle_calls,
            millis=round(self.stats.millis, 3),
        )
        return report


def brute_force_min_dcs(instance, budget=None, allow_large=False):
    """
    Try sets by nondecreasing weight (then size, then lexicographically) and
    return the first direct control set, which is therefore optimal.
    """
    n = instance.n_players
    if n > settings.BRUTE_FORCE_MAX_PLAYERS and not allow_large:
        raise BudgetExceededError(
            what="Brute force search",
            needed=f"{n} players",
            cap=f"{settings.BRUTE_FORCE_MAX_PLAYERS} players",
        )
    budget = settings.BRUTE_FORCE_BUDGET if budget is None else budget

    run = Run(instance, Method.BRUTE_FORCE)
    candidates = utils.subsets_by_weight(instance.players, instance.weights)
    for examined, subset in enumerate(candidates, start=1):
        if examined > budget:
            raise BudgetExceededError(
                what="Brute force search", needed=f"more than {budget} sets", cap=budget
            )
        if control.is_direct_control_set(instance, subset):
            run.stats.subsets_examined = examined
            return run.report(subset)

    raise InternalError("The full player set is always a direct control set")


def incremental_min_dcs(instance, ordering_budget=None, seed=0):
    """
    For each ordering of the players, add players in that order until the set
    controls the game; keep the lightest set found.

    All n! orderings are tried when that fits the budget. Otherwise
    ``ordering_budget`` random orderings are sampled and the result is only an
    upper bound, flagged by ``stats.exhaustive = False``.
    """
    n = instance.n_players
    budget = settings.ORDERING_BUDGET if ordering_budget is None else ordering_budget
    run = Run(instance, Method.INCREMENTAL)

    if math.factorial(n) <= budget:
        orderings = permutations(instance.players)
    else:
        run.stats.exhaustive = False
        rng = np.random.default_rng(seed)
        orderings = (tuple(int(i) for i in rng.permutation(n)) for _ in range(budget))

    known = {}

    def feasible(members):
        if members not in known:
            known[members] = control.is_direct_control_set(instance, members)
        return known[members]

    found = set()
    for ordering in orderings:
        chosen = frozenset()
        for i in ordering:
            if feasible(chosen):
                break
            chosen = chosen | {i}
        found.add(chosen)

    run.stats.subsets_examined = len(known)
    run.stats.notes["distinct_sets"] = len(found)
    best = min(found, key=lambda s: utils.selection_key(s, instance.weights))
    return run.report(best)


@dataclass(frozen=True)
class InfluenceMap:
    """Closed neighbourhoods N(i): the players that can change u_i, and i"""

    neighbourhoods: tuple

    @property
    def max_size(self):
        return max(len(nb) for nb in self.neighbourhoods)

    def __getitem__(self, i):
        return self.neighbourhoods[i]


def influence_map(game):
    """
    Use the game's declared structure when it has one, otherwise perturb every
    player's strategy in every profile and record whose utility changes.
    """
    declared = game.influencers()
    if declared is not None:
        return InfluenceMap(tuple(frozenset(nb) | {i} for i, nb in enumerate(declared)))

    if game.profile_space_size() > settings.EXACT_BUDGET:
        raise UnsupportedError(
            f"No declared structure and {game.profile_space_size()} profiles are too "
            "many to perturb"
        )

    neighbourhoods = [{i} for i in game.players]
    for profile in game.profiles():
        for i in game.players:
            base = None
            for j in game.players:
                if j in neighbourhoods[i]:
                    continue
                base = game.utility(profile, i) if base is None else base
                for x in range(game.strategy_counts[j]):
                    if x == profile[j]:
                        continue
                    moved = equilibria.deviate(profile, {j: x})
                    if not utils.is_close(game.utility(moved, i), base):
                        neighbourhoods[i].add(j)
                        break
    return InfluenceMap(tuple(frozenset(nb) for nb in neighbourhoods))


def _check_local_ratio_precondition(instance):
    if instance.monotone:
        return
    if instance.n_players > settings.MONOTONE_CHECK_MAX_PLAYERS:
        logger.warning(
            "player-wise monotonicity not asserted and too many players to check",
            players=instance.n_players,
        )
        return
    if not control.check_monotone(instance, playerwise=True):
        raise PreconditionError("Local ratio needs player-wise monotone control")


def local_ratio_dcs(instance, influence=None):
    """
    Local ratio approximation for player-wise monotone games.

    While the zero-weight players do not control the game, take the lowest
    uncontrolled player i and subtract the smallest remaining weight in N(i)
    from every player of N(i). The result weighs at most f times the optimum,
    where f is the largest neighbourhood.
    """
    _check_local_ratio_precondition(instance)
    influence = influence or influence_map(instance.game)
    run = Run(instance, Method.LOCAL_RATIO)

    residual = list(instance.weights)
    subtracted = [0] * instance.n_players
    for _ in range(instance.n_players + 1):
        zero = frozenset(j for j in instance.players if utils.is_zero(residual[j]))
        uncontrolled = control.uncontrolled_players(instance, zero)
        run.stats.subsets_examined += 1
        if not uncontrolled:
            _check_bookkeeping(instance.weights, residual, subtracted)
            run.stats.notes["max_neighbourhood"] = influence.max_size
            run.stats.notes["ratio_bound"] = influence.max_size
            return run.report(zero)

        i = uncontrolled[0]
        neighbourhood = [j for j in sorted(influence[i]) if j not in zero]
        epsilon = min(residual[j] for j in neighbourhood)
        for j in neighbourhood:
            residual[j] -= epsilon
            subtracted[j] += epsilon
            if utils.is_zero(residual[j]):
                residual[j] = 0
        logger.debug("local ratio step", player=i, epsilon=epsilon)

    raise InternalError("Local ratio did not finish within n iterations")


def _check_bookkeeping(weights, residual, subtracted):
    for w, r, s in zip(weights, residual, subtracted):
        if not utils.is_close(w, r + s):
            raise InternalError("Local ratio weight bookkeeping drifted")


def _singleton_controllers(instance):
    """For every player not controlled by nobody: {j : {j} controls i} plus i"""
    controllers = {}
    for i in instance.players:
        if control.is_dcs_for_player(instance, frozenset(), i):
            continue
        controllers[i] = frozenset(
            j
            for j in instance.players
            if j != i and control.is_dcs_for_player(instance, {j}, i)
        ) | {i}
    return controllers


def _check_pairs(instance, controllers):
    for i, hitting in controllers.items():
        outside = [j for j in instance.players if j not in hitting]
        for pair in combinations(outside, 2):
            if control.is_dcs_for_player(instance, pair, i):
                raise PreconditionError(
                    f"Player {i} is controlled by {list(pair)} but by neither alone",
                    player=i,
                )


def singleton_hitting_min_dcs(instance, checked=False, exact=None):
    """
    When every minimal per-player control set is a single player, a direct
    control set is exactly a hitting set of DCS(i) = {j : {j} controls i} ∪ {i}
    over the players the empty set does not control.
    """
    run = Run(instance, Method.SINGLETON_HITTING)
    controllers = _singleton_controllers(instance)
    if checked:
        _check_pairs(instance, controllers)

    sets = list(controllers.values())
    elements = set().union(*sets) if sets else set()
    if exact is None:
        exact = len(elements) <= settings.EXACT_COVER_MAX
    if exact:
        chosen = covering.exact_hitting_set(sets, instance.weights)
    else:
        chosen = covering.greedy_hitting_set(sets, instance.weights) if sets else frozenset()
        run.stats.exhaustive = False

    missing = control.uncontrolled_players(instance, chosen)
    if missing:
        raise PreconditionError(
            f"Player {missing[0]} needs more than one controller",
            player=missing[0],
        )
    run.stats.subsets_examined = len(sets)
    return run.report(chosen)
