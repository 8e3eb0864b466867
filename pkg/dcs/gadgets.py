"""
Instance builders for the hardness constructions and worked examples.

Each builder returns a ``DcsInstance`` carrying a ``Certificate`` with the known
answer when it is cheap enough to compute (at most
``settings.CERTIFY_MAX_PLAYERS`` vertices for the graph based ones).
"""
from fractions import Fraction

import networkx as nx
import structlog

from dcs import covering, settings, utils
from dcs.congestion import SingletonCongestionGame
from dcs.coordination import CoordinationGame
from dcs.errors import InvalidInputError
from dcs.games import GadgetGame, NormalFormGame
from dcs.models import Certificate, DcsInstance


logger = structlog.get_logger(__name__)


def graph_params(graph):
    return {
        "vertices": graph.number_of_nodes(),
        "edges": sorted(sorted(e) for e in graph.edges),
    }


def graph_from_params(params):
    try:
        graph = nx.empty_graph(int(params["vertices"]))
        graph.add_edges_from(tuple(e) for e in params["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"Bad graph parameters: {exc}")
    return utils.relabel_contiguous(graph)


def _check_graph(graph):
    if graph.number_of_nodes() == 0:
        raise InvalidInputError("The graph needs at least one vertex")
    return utils.relabel_contiguous(graph)


def _certifiable(graph):
    return graph.number_of_nodes() <= settings.CERTIFY_MAX_PLAYERS


class DominatingGame(GadgetGame):
    """
    Player 0 watches the others, vertex v is player v + 1. Player 0 loses 1 by
    playing 1 exactly when the players on 1 form a dominating set of at most k
    vertices; everybody else is indifferent.
    """

    name = "dominating-oi"

    def __init__(self, graph, k):
        self.graph = nx.freeze(graph)
        self.k = k
        super().__init__([2] * (graph.number_of_nodes() + 1), {**graph_params(graph), "k": k})

    def payoff(self, profile, i):
        if i:
            return 0
        chosen = {v for v in self.graph.nodes if profile[v + 1] == 1}
        small = len(chosen) <= self.k
        if profile[0] == 1 and small and nx.is_dominating_set(self.graph, chosen):
            return 0
        return 1


def gadget_dominating_oi(graph, k):
    """
    The empty set is an order independent DCS of this instance exactly when the
    graph has no dominating set of at most k vertices.
    """
    graph = _check_graph(graph)
    n = graph.number_of_nodes()
    if not 0 <= k < n:
        raise InvalidInputError(f"k must be in 0..{n - 1}, got {k}")

    game = DominatingGame(graph, k)
    certificate = None
    if _certifiable(graph):
        gamma = covering.domination_number(graph)
        certificate = Certificate(
            optimum=0,
            order_independent=gamma > k,
            note=f"domination number {gamma}",
        )
    return DcsInstance(
        game,
        (0,) * (n + 1),
        (1,) * (n + 1),
        certificate=certificate,
        provenance={"gadget": DominatingGame.name},
    )


def gadget_doubled_coordination(graph):
    """
    Vertex v becomes players v and v + n, adjacent to each other and to both
    copies of every neighbour. Both copies start on colour v + 1 and should end
    on colour 0. A set controls the game exactly when the vertices it touches
    dominate the graph.
    """
    graph = _check_graph(graph)
    n = graph.number_of_nodes()
    doubled = nx.Graph()
    doubled.add_nodes_from(range(2 * n))
    doubled.add_edges_from((v, v + n) for v in range(n))
    for u, v in graph.edges:
        doubled.add_edges_from([(u, v), (u + n, v + n), (u, v + n), (u + n, v)])
    colors = [[v % n + 1, 0] for v in range(2 * n)]

    certificate = None
    if _certifiable(graph):
        gamma = covering.domination_number(graph)
        certificate = Certificate(optimum=gamma, note=f"domination number {gamma}")
    return DcsInstance(
        CoordinationGame(doubled, colors),
        (0,) * (2 * n),
        (1,) * (2 * n),
        certificate=certificate,
        provenance={"gadget": "doubled-coordination", **graph_params(graph)},
    )


class TreeDeletionGame(GadgetGame):
    """
    Strategy 0 is a, strategy 1 is b. Player l earns 2 when deleting every other
    player on b leaves a tree, otherwise 1 on a and 0 on b.
    """

    name = "tree-deletion"

    def __init__(self, graph):
        self.graph = nx.freeze(graph)
        super().__init__([2] * graph.number_of_nodes(), graph_params(graph))

    def payoff(self, profile, i):
        kept = [v for v in self.graph.nodes if v == i or profile[v] == 0]
        if nx.is_tree(self.graph.subgraph(kept)):
            return 2
        return 1 if profile[i] == 0 else 0


def min_tree_deletion(graph):
    """Fewest vertices whose removal leaves a tree"""
    for removed in utils.subsets_of(graph.nodes, max_size=graph.number_of_nodes() - 1):
        if nx.is_tree(graph.subgraph(set(graph.nodes) - removed)):
            return len(removed)


def gadget_tree_deletion(graph):
    """A set controls this game exactly when deleting it leaves a tree"""
    graph = _check_graph(graph)
    n = graph.number_of_nodes()
    certificate = None
    if nx.is_tree(graph):
        logger.info("graph is already a tree, the empty set controls it")
        certificate = Certificate(optimum=0, note="input is a tree")
    elif _certifiable(graph):
        certificate = Certificate(optimum=min_tree_deletion(graph))
    return DcsInstance(
        TreeDeletionGame(graph),
        (0,) * n,
        (1,) * n,
        certificate=certificate,
        provenance={"gadget": TreeDeletionGame.name},
    )


def _check_family(n, p, label):
    if not 1 <= p < n:
        raise InvalidInputError(f"{label} must be in 1..{n - 1}, got {p}")


class ThresholdGame(GadgetGame):
    """Strategies a and b; a player earns 1 when at least p + 1 players (itself included) agree with it"""

    name = "threshold"

    def __init__(self, n, p):
        self.p = p
        super().__init__([2] * n, {"n": n, "p": p})

    def payoff(self, profile, i):
        same = sum(1 for x in profile if x == profile[i])
        return 1 if same >= self.p + 1 else 0


def gadget_threshold(n, p):
    """
    From all-a to all-b. A set of q players controls it once q >= p or
    q >= n - p; in the second case the rest are indifferent between 0 and 0.
    """
    _check_family(n, p, "p")
    return DcsInstance(
        ThresholdGame(n, p),
        (0,) * n,
        (1,) * n,
        certificate=Certificate(optimum=min(p, n - p)),
        provenance={"gadget": ThresholdGame.name},
    )


class TightStrongGame(GadgetGame):
    """
    a pays 1 when at least m + 1 players are on a, b pays 2 when at least
    n - m + 1 players are on b, anything else pays 0.
    """

    name = "tight-strong"

    def __init__(self, n, m):
        self.m = m
        super().__init__([2] * n, {"n": n, "m": m})

    def payoff(self, profile, i):
        n = self.n_players
        on_a = sum(1 for x in profile if x == 0)
        if profile[i] == 0:
            return 1 if on_a >= self.m + 1 else 0
        return 2 if n - on_a >= n - self.m + 1 else 0


def gadget_tight_strong(n, m):
    """
    Target all-a is (n - m)-strong and no stronger; every set of at least m
    players controls it from any start, here all-b.
    """
    _check_family(n, m, "m")
    return DcsInstance(
        TightStrongGame(n, m),
        (1,) * n,
        (0,) * n,
        certificate=Certificate(optimum=m, note=f"strength {n - m}"),
        provenance={"gadget": TightStrongGame.name},
    )


class HittingSetGame(GadgetGame):
    """
    One player per set, then one per ground element. A set player on 1 earns 1
    if one of its elements is on 1 and -1 otherwise; on 0 it earns 0. Element
    players are indifferent.
    """

    name = "hitting-set"

    def __init__(self, sets, ground):
        self.sets = tuple(tuple(sorted(s)) for s in sets)
        self.ground = ground
        params = {"sets": [list(s) for s in self.sets], "ground": ground}
        super().__init__([2] * (len(self.sets) + ground), params)

    def payoff(self, profile, i):
        if i >= len(self.sets) or profile[i] == 0:
            return 0
        offset = len(self.sets)
        return 1 if any(profile[offset + e] == 1 for e in self.sets[i]) else -1


def gadget_hitting_set(sets, ground=None, big_weight=10**6):
    """
    Set players weigh ``big_weight`` and element players 1, so the lightest
    DCS is a smallest hitting set of the element players.
    """
    sets = [frozenset(int(e) for e in s) for s in sets]
    if not sets or any(not s for s in sets):
        raise InvalidInputError("Need at least one set and no empty sets")
    ground = max(max(s) for s in sets) + 1 if ground is None else ground
    if any(e < 0 or e >= ground for s in sets for e in s):
        raise InvalidInputError(f"Elements must be in 0..{ground - 1}")

    n = len(sets) + ground
    weights = (big_weight,) * len(sets) + (1,) * ground
    certificate = None
    if ground <= settings.EXACT_COVER_MAX:
        best = covering.exact_hitting_set(sets, [1] * ground)
        certificate = Certificate(optimum=len(best))
    return DcsInstance(
        HittingSetGame(sets, ground),
        (0,) * n,
        (1,) * n,
        weights=weights,
        certificate=certificate,
        provenance={"gadget": HittingSetGame.name},
    )


def gadget_shift_congestion(n, m):
    """
    m resources with cost c(x) = x and n / m players on each. Every player moves
    to the next resource, cyclically.
    """
    if m < 2 or n < m or n % m:
        raise InvalidInputError(f"Need m >= 2 resources dividing n, got n={n}, m={m}")
    per = n // m
    game = SingletonCongestionGame.full_choice(n, [list(range(1, n + 1))] * m)
    start = tuple(i // per for i in range(n))
    target = tuple((r + 1) % m for r in start)
    return DcsInstance(
        game,
        start,
        target,
        certificate=Certificate(note="DCS family is not closed under supersets in general"),
        provenance={"gadget": "shift-congestion", "n": n, "m": m},
    )


def gadget_two_by_two():
    """
    Coordination on (T, L) = (1, 1) or (B, R) = (2, 2). (B, R) is 2-strong yet
    nobody can be left uncontrolled starting from (T, L).
    """
    game = NormalFormGame([[[1, 1], [0, 0]], [[0, 0], [2, 2]]])
    return DcsInstance(
        game,
        (0, 0),
        (1, 1),
        certificate=Certificate(optimum=1, note="strength 2"),
        provenance={"gadget": "two-by-two"},
    )


class NonMonotoneGame(GadgetGame):
    """
    Four players on A (0) or B (1). Unanimity pays 1, a 2-2 split pays 1/2, and
    a lone dissenter gets 1/3 while the other three get 1/4.
    """

    name = "non-monotone"

    def __init__(self):
        super().__init__([2] * 4, {})

    def payoff(self, profile, i):
        on_b = sum(profile)
        if on_b in (0, 4):
            return Fraction(1)
        if on_b == 2:
            return Fraction(1, 2)
        lone = 1 if on_b == 1 else 0
        return Fraction(1, 3) if profile[i] == lone else Fraction(1, 4)


def gadget_non_monotone():
    """{0} controls the move from all-A to all-B but {0, 1} does not"""
    return DcsInstance(
        NonMonotoneGame(),
        (0,) * 4,
        (1,) * 4,
        certificate=Certificate(optimum=1),
        provenance={"gadget": NonMonotoneGame.name},
    )


def _graph_gadget(builder):
    def build(params):
        extra = {k: v for k, v in params.items() if k not in ("vertices", "edges")}
        return builder(graph_from_params(params), **extra)

    return build


def _keyword_gadget(builder):
    def build(params):
        return builder(**params)

    return build


BUILDERS = {
    "dominating-oi": _graph_gadget(gadget_dominating_oi),
    "doubled-coordination": _graph_gadget(gadget_doubled_coordination),
    "tree-deletion": _graph_gadget(gadget_tree_deletion),
    "threshold": _keyword_gadget(gadget_threshold),
    "tight-strong": _keyword_gadget(gadget_tight_strong),
    "hitting-set": _keyword_gadget(gadget_hitting_set),
    "shift-congestion": _keyword_gadget(gadget_shift_congestion),
    "two-by-two": _keyword_gadget(gadget_two_by_two),
    "non-monotone": _keyword_gadget(gadget_non_monotone),
}


def build(name, params=None):
    """Build a named gadget from JSON-style parameters"""
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise InvalidInputError(f"Unknown gadget {name!r}, expected one of {sorted(BUILDERS)}")
    try:
        return builder(dict(params or {}))
    except TypeError as exc:
        raise InvalidInputError(f"Bad parameters for gadget {name!r}: {exc}")
