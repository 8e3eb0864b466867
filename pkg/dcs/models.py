import enum
from dataclasses import dataclass, field
from fractions import Fraction

import structlog

from dcs import equilibria, utils
from dcs.errors import InvalidInputError, PreconditionError
from dcs.games import Game


logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class PlayerSet:
    """
    A set of players with its total weight.

    Immutable: ``add`` and ``remove`` return new sets and the weight is always
    recomputed from the member weights, so it cannot drift.
    """

    members: frozenset
    weight: object = 0

    @classmethod
    def of(cls, members, weights):
        members = frozenset(members)
        for i in members:
            if not 0 <= i < len(weights):
                raise InvalidInputError(f"Player {i} is not in the game")
        return cls(members, utils.total_weight(members, weights))

    def add(self, i, weights):
        return PlayerSet.of(self.members | {i}, weights)

    def remove(self, i, weights):
        return PlayerSet.of(self.members - {i}, weights)

    def sorted(self):
        return sorted(self.members)

    def __contains__(self, i):
        return i in self.members

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class Certificate:
    """Known answer attached to generated instances"""

    optimum: object = None
    order_independent: bool | None = None
    note: str = ""


def validate_weights(weights, n):
    weights = tuple(weights)
    if len(weights) != n:
        raise InvalidInputError(f"Expected {n} weights, got {len(weights)}")
    for i, w in enumerate(weights):
        if isinstance(w, bool) or not isinstance(w, (int, float, Fraction)):
            raise InvalidInputError(f"Weight of player {i} is not a number: {w!r}")
        if w < 0:
            raise InvalidInputError(f"Weight of player {i} is negative: {w}")
    return weights


@dataclass
class DcsInstance:
    """
    A game with a start profile s, a target Nash equilibrium d and player weights.

    Construction fails when d is not a Nash equilibrium. A start profile that is
    not an equilibrium is allowed but logged.
    """

    game: Game
    start: tuple
    target: tuple
    weights: tuple = None
    monotone: bool = False
    certificate: Certificate | None = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.start = self.game.validate_profile(self.start)
        self.target = self.game.validate_profile(self.target)
        if self.weights is None:
            self.weights = (1,) * self.n_players
        self.weights = validate_weights(self.weights, self.n_players)

        if not equilibria.is_nash(self.game, self.target):
            raise PreconditionError(
                f"Target profile {self.target} is not a Nash equilibrium"
            )
        if not equilibria.is_nash(self.game, self.start):
            logger.warning(
                "start profile is not a Nash equilibrium",
                start=self.start,
                game=self.game.describe(),
            )

    @property
    def n_players(self):
        return self.game.n_players

    @property
    def players(self):
        return self.game.players

    @property
    def movers(self):
        """Players whose strategy differs between s and d"""
        return frozenset(i for i in self.players if self.start[i] != self.target[i])

    def player_set(self, members):
        return PlayerSet.of(members, self.weights)

    def unit_weighted(self):
        return self.weights == (1,) * self.n_players


class Method(str, enum.Enum):
    BRUTE_FORCE = "brute"
    INCREMENTAL = "incremental"
    LOCAL_RATIO = "local-ratio"
    SINGLETON_HITTING = "singleton-hitting"
    TREE_DP = "tree-dp"
    SINGLETON_CONGESTION = "singleton"
    SYMMETRIC_DECREASING = "symmetric"
    COORDINATION = "coordination"


@dataclass
class SolveStats:
    oracle_calls: int = 0
    subsets_examined: int = 0
    millis: float = 0.0
    exhaustive: bool = True
    notes: dict = field(default_factory=dict)


@dataclass
class SolveReport:
    solution: PlayerSet
    feasible: bool
    method: Method
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def weight(self):
        return self.solution.weight

    def as_dict(self):
        return {
            "method": self.method.value,
            "solution": self.solution.sorted(),
            "weight": utils.format_number(self.weight),
            "feasible": self.feasible,
            "oracle_calls": self.stats.oracle_calls,
            "subsets_examined": self.stats.subsets_examined,
            "millis": round(self.stats.millis, 3),
            "exhaustive": self.stats.exhaustive,
            "notes": {k: utils.format_number(v) for k, v in self.stats.notes.items()},
        }
