import enum
import itertools
import math

import numpy as np

from dcs import settings
from dcs.errors import BudgetExceededError, InvalidInputError


class StructureTag(str, enum.Enum):
    NORMAL_FORM = "normal-form"
    GRAPHICAL = "graphical"
    CONGESTION = "congestion"
    SINGLETON_CONGESTION = "singleton-congestion"
    COORDINATION = "coordination"
    GADGET = "gadget"


class Game:
    """
    A finite n-player game in which every player maximises its utility.

    Subclasses implement ``payoff``; callers go through ``utility`` which validates
    the profile and counts oracle calls. Games are not mutated after construction,
    the call counter is instrumentation only.
    """

    structure_tag = None

    def __init__(self, strategy_counts):
        counts = tuple(int(c) for c in strategy_counts)
        if not counts:
            raise InvalidInputError("A game needs at least one player")
        if any(c < 1 for c in counts):
            raise InvalidInputError(f"Every player needs a strategy, got counts {counts}")
        self.strategy_counts = counts
        self.oracle_calls = 0

    @property
    def n_players(self):
        return len(self.strategy_counts)

    @property
    def players(self):
        return range(self.n_players)

    def payoff(self, profile, i):
        raise NotImplementedError

    def utility(self, profile, i):
        profile = self.validate_profile(profile)
        self.validate_player(i)
        self.oracle_calls += 1
        return self.payoff(profile, i)

    def validate_player(self, i):
        if not isinstance(i, (int, np.integer)) or not 0 <= i < self.n_players:
            raise InvalidInputError(
                f"Player index {i} out of range for {self.n_players} players"
            )

    def validate_profile(self, profile):
        profile = tuple(profile)
        for x in profile:
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
                raise InvalidInputError(f"Strategy {x!r} is not an integer")
        profile = tuple(int(x) for x in profile)
        if len(profile) != self.n_players:
            raise InvalidInputError(
                f"Profile {profile} has {len(profile)} entries, expected {self.n_players}"
            )
        for i, (x, count) in enumerate(zip(profile, self.strategy_counts)):
            if not 0 <= x < count:
                raise InvalidInputError(
                    f"Strategy {x} of player {i} is outside 0..{count - 1}"
                )
        return profile

    def profile_space_size(self):
        return math.prod(self.strategy_counts)

    def profiles(self, budget=None):
        """Every pure profile in lexicographic order"""
        if budget is not None and self.profile_space_size() > budget:
            raise BudgetExceededError(
                what="Profile enumeration",
                needed=self.profile_space_size(),
                cap=budget,
            )
        return itertools.product(*(range(c) for c in self.strategy_counts))

    def influencers(self):
        """
        Per player, the other players whose strategy can change u_i, or None
        when only the oracle is available.
        """
        return None

    def describe(self):
        return f"{self.structure_tag.value} game with {self.n_players} players"


class NormalFormGame(Game):
    """
    Explicit payoff table of shape ``strategy_counts + (n,)``.

    Tables may hold ints, floats or (as an object array) Fractions.
    """

    structure_tag = StructureTag.NORMAL_FORM

    def __init__(self, payoffs):
        table = np.array(payoffs)
        if table.ndim < 2 or table.shape[-1] != table.ndim - 1:
            raise InvalidInputError(
                f"Payoff table of shape {table.shape} does not match its player count"
            )
        super().__init__(table.shape[:-1])
        self._check_table_size(self.strategy_counts)
        self.payoffs = table
        self.payoffs.setflags(write=False)

    @classmethod
    def from_function(cls, strategy_counts, fn):
        """Tabulate ``fn(profile) -> sequence of n utilities``"""
        counts = tuple(strategy_counts)
        cls._check_table_size(counts)
        table = np.empty(counts + (len(counts),), dtype=object)
        for profile in itertools.product(*(range(c) for c in counts)):
            table[profile] = list(fn(profile))
        return cls(table)

    @staticmethod
    def _check_table_size(counts):
        if math.prod(counts) > settings.TABLE_MAX_PROFILES:
            raise BudgetExceededError(
                what="Normal-form payoff table",
                needed=math.prod(counts),
                cap=settings.TABLE_MAX_PROFILES,
            )

    def payoff(self, profile, i):
        value = self.payoffs[profile + (i,)]
        return value.item() if isinstance(value, np.generic) else value


class GadgetGame(Game):
    """
    Game defined by a payoff formula of a named construction.

    ``params`` must be enough to rebuild the game with ``dcs.gadgets.build``.
    """

    structure_tag = StructureTag.GADGET
    name = None

    def __init__(self, strategy_counts, params):
        super().__init__(strategy_counts)
        self.params = params

    def describe(self):
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name} gadget ({args})"
