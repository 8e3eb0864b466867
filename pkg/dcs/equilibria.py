"""
Best responses and (strong) Nash equilibria of finite games.

All comparisons go through ``dcs.utils.is_close`` so integer and Fraction
payoffs are compared exactly and floats with ``settings.TOLERANCE``.
"""
from itertools import combinations, product

from dcs import settings, utils
from dcs.errors import BudgetExceededError, InvalidInputError, UnsupportedError


def utility(game, profile, i):
    return game.utility(profile, i)


def deviate(profile, changes):
    """Copy of profile with ``changes`` ({player: strategy}) applied"""
    profile = list(profile)
    for i, x in changes.items():
        profile[i] = x
    return tuple(profile)


def best_responses(game, profile, i):
    profile = game.validate_profile(profile)
    game.validate_player(i)
    values = [
        game.utility(deviate(profile, {i: x}), i) for x in range(game.strategy_counts[i])
    ]
    best = max(values)
    return frozenset(x for x, v in enumerate(values) if not utils.definitely_less(v, best))


def is_nash(game, profile):
    profile = game.validate_profile(profile)
    return all(profile[i] in best_responses(game, profile, i) for i in game.players)


def _check_budget(game, k):
    needed = utils.coalition_deviation_count(game.strategy_counts, k)
    if needed > settings.STRONG_NASH_BUDGET:
        raise BudgetExceededError(
            what=f"Checking coalitions up to size {k}",
            needed=needed,
            cap=settings.STRONG_NASH_BUDGET,
        )


def _profitable(game, profile, coalition, current):
    """Whether some joint deviation of coalition helps a member and hurts none"""
    for joint in product(*(range(game.strategy_counts[i]) for i in coalition)):
        if all(x == profile[i] for i, x in zip(coalition, joint)):
            continue
        moved = deviate(profile, dict(zip(coalition, joint)))
        gains = [game.utility(moved, i) for i in coalition]
        if any(utils.definitely_less(g, current[i]) for i, g in zip(coalition, gains)):
            continue
        if any(utils.definitely_less(current[i], g) for i, g in zip(coalition, gains)):
            return True
    return False


def first_blocking_size(game, profile, k_max):
    """
    Size of the smallest coalition with a profitable joint deviation, or None when
    no coalition of size at most k_max has one.
    """
    profile = game.validate_profile(profile)
    if not 1 <= k_max <= game.n_players:
        raise InvalidInputError(f"Coalition size {k_max} is outside 1..{game.n_players}")
    _check_budget(game, k_max)

    if not is_nash(game, profile):
        return 1
    current = [game.utility(profile, i) for i in game.players]
    for size in range(2, k_max + 1):
        for coalition in combinations(game.players, size):
            if _profitable(game, profile, coalition, current):
                return size
    return None


def is_k_strong(game, profile, k):
    """
    Whether no coalition of at most k players has a joint deviation that makes one
    member strictly better off and no member worse off. A profile that is not a
    Nash equilibrium is not k-strong for any k.
    """
    return first_blocking_size(game, profile, k) is None


def strength(game, profile, k_max=None):
    """Largest k <= k_max for which the profile is k-strong, 0 if it is not an NE"""
    k_max = game.n_players if k_max is None else k_max
    blocking = first_blocking_size(game, profile, k_max)
    return k_max if blocking is None else blocking - 1


def is_weakly_dominant(game, profile):
    """
    Whether every player's strategy in profile is a best response to every
    profile of the others.
    """
    profile = game.validate_profile(profile)
    for other in game.profiles(budget=settings.EXACT_BUDGET):
        for i in game.players:
            if profile[i] not in best_responses(game, deviate(other, {i: profile[i]}), i):
                return False
    return True


def is_constant_sum(game):
    """Two-player games only: whether u_0 + u_1 is the same on every profile"""
    if game.n_players != 2:
        raise UnsupportedError("Constant-sum check is defined for two players only")
    total = None
    for profile in game.profiles(budget=settings.EXACT_BUDGET):
        value = game.utility(profile, 0) + game.utility(profile, 1)
        if total is None:
            total = value
        elif not utils.is_close(total, value):
            return False
    return True

