"""
Coordination games on graphs and their reduction to weighted k-domination.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
import structlog

from dcs import control, settings, utils
from dcs.errors import (
    BudgetExceededError,
    InternalError,
    InvalidInputError,
    UnsupportedError,
)
from dcs.games import Game, StructureTag
from dcs.models import Method
from dcs.solvers import Run


logger = structlog.get_logger(__name__)


class CoordinationGame(Game):
    """
    Player i picks a colour from ``colors[i]`` (which must contain 0) and earns
    the prestige of that colour for every neighbour with the same colour.
    Colours missing from ``prestige`` are worth 1.
    """

    structure_tag = StructureTag.COORDINATION

    def __init__(self, graph, colors, prestige=None):
        super().__init__([len(c) for c in colors])
        if sorted(graph.nodes) != list(range(self.n_players)):
            raise InvalidInputError("Graph vertices must be exactly the players 0..n-1")
        self.graph = nx.freeze(graph.copy())
        self.colors = tuple(tuple(int(c) for c in cs) for cs in colors)
        for i, cs in enumerate(self.colors):
            if 0 not in cs:
                raise InvalidInputError(f"Colour 0 is missing from player {i}'s colours")
            if len(set(cs)) != len(cs):
                raise InvalidInputError(f"Player {i} lists a colour twice")
        self.prestige = dict(prestige or {})
        if any(p < 0 for p in self.prestige.values()):
            raise InvalidInputError("Prestige must be nonnegative")

    def color(self, i, x):
        return self.colors[i][x]

    def prestige_of(self, color):
        return self.prestige.get(color, 1)

    def payoff(self, profile, i):
        mine = self.colors[i][profile[i]]
        same = sum(1 for j in self.graph[i] if self.colors[j][profile[j]] == mine)
        return self.prestige_of(mine) * same

    def influencers(self):
        return [frozenset(self.graph[i]) for i in self.players]

    def is_binary(self):
        return all(sorted(cs) == [0, 1] for cs in self.colors)


def coordination_utility(game, profile, i):
    return game.utility(profile, i)


def _color_profile(game, profile):
    return [game.color(i, x) for i, x in enumerate(profile)]


def min_neighbors_for_zero(game, start, i):
    """
    Fewest neighbours of i that must switch from colour 1 to colour 0 (others
    fixed at ``start``) for colour 0 to become a best response of i.
    """
    if not isinstance(game, CoordinationGame) or not game.is_binary():
        raise UnsupportedError("Needs a coordination game with colours {0, 1} only")
    start = game.validate_profile(start)
    game.validate_player(i)
    colours = _color_profile(game, start)
    zeros = sum(1 for j in game.graph[i] if colours[j] == 0)
    ones = sum(1 for j in game.graph[i] if colours[j] == 1)
    p0, p1 = game.prestige_of(0), game.prestige_of(1)

    # p0 * (zeros + t) >= p1 * (ones - t)
    if utils.is_zero(p0 + p1):
        return 0
    if utils.is_float(p0, p1):
        needed = (p1 * ones - p0 * zeros) / (p0 + p1)
        t = math.ceil(needed - settings.TOLERANCE)
    else:
        t = math.ceil(Fraction(p1 * ones - p0 * zeros) / Fraction(p0 + p1))
    return min(max(t, 0), ones)


@dataclass
class KDomInstance:
    """
    Weighted k-domination: every vertex outside the chosen set needs at least k
    chosen neighbours. Vertices ``0..n_original-1`` are the players, the rest is
    zero-weight padding.
    """

    graph: nx.Graph
    weights: dict
    k: int
    requirements: tuple
    n_original: int

    @property
    def padding(self):
        return frozenset(v for v in self.graph.nodes if v >= self.n_original)

    def deficiency(self, chosen, v):
        if v in chosen:
            return 0
        return max(0, self.k - sum(1 for u in self.graph[v] if u in chosen))

    def is_k_dominating(self, chosen):
        chosen = frozenset(chosen)
        return all(self.deficiency(chosen, v) == 0 for v in self.graph.nodes)

    def back_map(self, chosen):
        return frozenset(v for v in chosen if v < self.n_original)

    def lift(self, players):
        return frozenset(players) | self.padding


def coordination_to_kdom(instance):
    """
    Reduce a binary coordination instance with target all-0 to k-domination.

    k_i is ``min_neighbors_for_zero`` and k = max k_i; vertex i gets k - k_i
    padding leaves. Only edges between players starting on colour 1 are kept,
    since a player already on 0 changes nothing by being chosen.
    """
    game = instance.game
    if not isinstance(game, CoordinationGame) or not game.is_binary():
        raise UnsupportedError("Needs a coordination game with colours {0, 1} only")
    target = _color_profile(game, instance.target)
    if any(target):
        raise UnsupportedError("The target must give every player colour 0")

    colours = _color_profile(game, instance.start)
    requirements = tuple(min_neighbors_for_zero(game, instance.start, i) for i in game.players)
    for i in game.players:
        if colours[i] == 0 and requirements[i]:
            raise UnsupportedError(
                f"Player {i} starts on colour 0 but is not content there; the start "
                "profile must be an equilibrium for this reduction"
            )

    k = max(requirements)
    graph = nx.Graph()
    graph.add_nodes_from(game.players)
    graph.add_edges_from(
        (u, v) for u, v in game.graph.edges if colours[u] == 1 and colours[v] == 1
    )
    weights = {i: instance.weights[i] for i in game.players}
    leaf = game.n_players
    for i in game.players:
        for _ in range(k - requirements[i]):
            graph.add_edge(i, leaf)
            weights[leaf] = 0
            leaf += 1

    kd = KDomInstance(graph, weights, k, requirements, game.n_players)
    if game.n_players <= settings.CERTIFY_MAX_PLAYERS:
        _check_bijection(instance, kd)
    return kd


def _check_bijection(instance, kd):
    """A with the padding is k-dominating exactly when A is a DCS"""
    for subset in utils.subsets_of(instance.players):
        if kd.is_k_dominating(kd.lift(subset)) != control.is_direct_control_set(instance, subset):
            raise InternalError(
                f"k-domination reduction disagrees with direct control on {sorted(subset)}"
            )


def greedy_k_dominating(kd):
    """
    Take the vertex removing the most total deficiency per unit weight (free
    vertices first, lowest index on ties) until nothing is left, then drop
    chosen vertices that became redundant, heaviest first.
    """
    chosen = set()
    while True:
        short = {v: kd.deficiency(chosen, v) for v in kd.graph.nodes}
        if not any(short.values()):
            break

        def gain(v):
            return short[v] + sum(1 for u in kd.graph[v] if u not in chosen and short[u] > 0)

        def priority(v):
            g, w = gain(v), kd.weights[v]
            if utils.is_zero(w):
                return (1, g)
            return (0, g / w if utils.is_float(w) else Fraction(g, 1) / w)

        candidates = sorted(v for v in kd.graph.nodes if v not in chosen and gain(v) > 0)
        chosen.add(max(candidates, key=priority))

    for v in sorted(chosen, key=lambda v: (kd.weights[v], v), reverse=True):
        if kd.is_k_dominating(chosen - {v}):
            chosen.discard(v)
    return frozenset(chosen)


def exact_k_dominating(kd):
    """
    Lightest k-dominating set. Padding is free and choosing more never hurts, so
    it is always taken and only the original vertices are enumerated.
    """
    if kd.n_original > settings.EXACT_COVER_MAX:
        raise BudgetExceededError(
            what="Exact k-domination",
            needed=f"{kd.n_original} vertices",
            cap=f"{settings.EXACT_COVER_MAX} vertices",
        )
    for subset in utils.subsets_by_weight(range(kd.n_original), kd.weights):
        chosen = kd.lift(subset)
        if kd.is_k_dominating(chosen):
            return chosen
    raise InternalError("Choosing every vertex is always k-dominating")


def coordination_min_dcs(instance, exact=None):
    """Solve via k-domination and map the answer back to players"""
    run = Run(instance, Method.COORDINATION)
    kd = coordination_to_kdom(instance)
    if exact is None:
        exact = kd.n_original <= settings.EXACT_COVER_MAX
    chosen = exact_k_dominating(kd) if exact else greedy_k_dominating(kd)
    run.stats.exhaustive = exact
    run.stats.notes["k"] = kd.k
    run.stats.notes["padding"] = len(kd.padding)
    logger.debug("k-domination solved", k=kd.k, chosen=sorted(chosen), exact=exact)
    return run.report(kd.back_map(chosen))
