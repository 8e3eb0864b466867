"""
Direct control sets: the players we pay to switch from s to d so that everybody
else finds d a best response.
"""
import numpy as np
import structlog

from dcs import equilibria, settings, utils
from dcs.errors import BudgetExceededError, InvalidInputError, PreconditionError


logger = structlog.get_logger(__name__)


def _members(instance, controlled):
    members = frozenset(getattr(controlled, "members", controlled))
    for i in members:
        instance.game.validate_player(i)
    return members


def intermediate_profile(instance, controlled):
    """Profile where controlled players play d and everyone else plays s"""
    members = _members(instance, controlled)
    return tuple(
        instance.target[i] if i in members else instance.start[i]
        for i in instance.players
    )


def is_dcs_for_player(instance, controlled, k):
    instance.game.validate_player(k)
    members = _members(instance, controlled)
    if k in members:
        return True
    profile = intermediate_profile(instance, members)
    return instance.target[k] in equilibria.best_responses(instance.game, profile, k)


def uncontrolled_players(instance, controlled):
    """Players outside the set for whom d is not a best response"""
    members = _members(instance, controlled)
    profile = intermediate_profile(instance, members)
    return [
        i
        for i in instance.players
        if i not in members
        and instance.target[i] not in equilibria.best_responses(instance.game, profile, i)
    ]


def _follows_target(game, start, target, members):
    profile = tuple(target[i] if i in members else start[i] for i in game.players)
    return all(
        target[i] in equilibria.best_responses(game, profile, i)
        for i in game.players
        if i not in members
    )


def is_direct_control_set(instance, controlled):
    members = _members(instance, controlled)
    return _follows_target(instance.game, instance.start, instance.target, members)


def is_minimal_dcs(instance, controlled, mode="fast"):
    """
    Whether no strict subset of a DCS is itself a DCS.

    ``fast`` only tries removing one player at a time, which is exact when the
    DCS family is closed under supersets. ``exact`` tries every strict subset.
    """
    members = _members(instance, controlled)
    if not is_direct_control_set(instance, members):
        raise PreconditionError(f"{sorted(members)} is not a direct control set")

    if mode not in ("fast", "exact"):
        raise InvalidInputError(f"Unknown minimality mode {mode!r}")
    needed = 2 ** len(members)
    if mode == "exact" and needed > settings.EXACT_BUDGET:
        raise BudgetExceededError(
            what="Exact minimality check",
            needed=needed,
            cap=settings.EXACT_BUDGET,
        )

    known = {}

    def feasible(subset):
        if subset not in known:
            known[subset] = is_direct_control_set(instance, subset)
        return known[subset]

    if any(feasible(members - {i}) for i in members):
        return False
    if mode == "fast":
        return True

    # largest subsets first; the single removals above are already cached
    for size in range(len(members) - 1, -1, -1):
        for subset in utils.subsets_of(members, min_size=size, max_size=size):
            if feasible(subset):
                return False
    return True


def is_order_independent_dcs(instance, controlled):
    """
    Whether d stays a best response for every remaining player no matter which
    other players have already switched to d.
    """
    members = _members(instance, controlled)
    rest = [i for i in instance.players if i not in members]
    if len(rest) > settings.ORDER_INDEPENDENT_CAP:
        raise BudgetExceededError(
            what="Order-independence check",
            needed=f"2^{len(rest)} subsets",
            cap=f"2^{settings.ORDER_INDEPENDENT_CAP}",
        )

    for switched in utils.subsets_of(rest, max_size=len(rest) - 1):
        profile = intermediate_profile(instance, members | switched)
        for i in rest:
            if i in switched:
                continue
            if instance.target[i] not in equilibria.best_responses(instance.game, profile, i):
                logger.debug(
                    "order dependent",
                    switched=sorted(switched),
                    player=i,
                )
                return False
    return True


def _monotone_pairs(instance, playerwise, samples, seed):
    """(A, B, k) triples with A a subset of B to compare"""
    n = instance.n_players
    targets = list(instance.players) if playerwise else [None]
    if n <= settings.MONOTONE_CHECK_MAX_PLAYERS:
        for subset in utils.subsets_of(instance.players):
            for extra in set(instance.players) - subset:
                for k in targets:
                    yield subset, subset | {extra}, k
        return

    rng = np.random.default_rng(seed)
    for _ in range(samples):
        inside = rng.random(n) < rng.random()
        subset = frozenset(int(i) for i in np.flatnonzero(inside))
        outside = [i for i in instance.players if i not in subset]
        if not outside:
            continue
        extra = int(rng.choice(outside))
        k = int(rng.integers(n)) if playerwise else None
        yield subset, subset | {extra}, k


def check_monotone(instance, playerwise=True, samples=200, seed=0):
    """
    Whether adding a player to a set never breaks control: per player when
    ``playerwise``, for the whole set otherwise. Exhaustive for small games and
    sampled above ``settings.MONOTONE_CHECK_MAX_PLAYERS``.
    """
    for smaller, larger, k in _monotone_pairs(instance, playerwise, samples, seed):
        if k is None:
            holds = is_direct_control_set(instance, smaller)
            breaks = holds and not is_direct_control_set(instance, larger)
        else:
            holds = is_dcs_for_player(instance, smaller, k)
            breaks = holds and not is_dcs_for_player(instance, larger, k)
        if breaks:
            logger.debug(
                "monotonicity fails",
                smaller=sorted(smaller),
                larger=sorted(larger),
                player=k,
            )
            return False
    return True



def complying_is_most_convenient(game, target):
    """
    Whether every player does at least as well in d as by playing d_j against any
    other profile: u_j(d) >= u_j(d_j, x_-j) for all j and x.
    """
    target = game.validate_profile(target)
    here = [game.utility(target, j) for j in game.players]
    for other in game.profiles(budget=settings.EXACT_BUDGET):
        for j in game.players:
            there = game.utility(equilibria.deviate(other, {j: target[j]}), j)
            if utils.definitely_less(here[j], there):
                return False
    return True


def universal_control_size(game, target):
    """
    Smallest m such that, from every start profile, every set of at least m
    players controls the game into ``target``. Together with
    ``complying_is_most_convenient`` this certifies that ``target`` is an
    (n - m)-strong equilibrium.
    """
    target = game.validate_profile(target)
    n = game.n_players
    needed = game.profile_space_size() * 2**n
    if needed > settings.EXACT_BUDGET:
        raise BudgetExceededError(
            what="Universal control search",
            needed=needed,
            cap=settings.EXACT_BUDGET,
        )

    failing = -1
    for start in game.profiles():
        for subset in utils.subsets_of(game.players, min_size=failing + 1):
            if not _follows_target(game, start, target, subset):
                failing = max(failing, len(subset))
    return failing + 1
