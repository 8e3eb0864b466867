"""
Weighted hitting set: choose a lightest set of elements meeting every given set.

Elements are player indices, ``weights`` is indexable by element.
"""
from fractions import Fraction

import structlog

from dcs import settings, utils
from dcs.errors import BudgetExceededError, InvalidInputError


logger = structlog.get_logger(__name__)


def _normalise(sets):
    sets = [frozenset(s) for s in sets]
    if any(not s for s in sets):
        raise InvalidInputError("An empty set cannot be hit")
    return sets


def _ratio(hits, weight):
    # Zero-weight elements that hit something come first.
    if utils.is_zero(weight):
        return (1, 0)
    return (0, Fraction(hits) / Fraction(weight) if not utils.is_float(weight) else hits / weight)


def greedy_hitting_set(sets, weights):
    """
    Repeatedly take the element hitting the most unhit sets per unit weight
    (lowest index on ties), then drop elements that became redundant, heaviest
    first. Within a factor H(max sets per element) of the optimum.
    """
    unhit = _normalise(sets)
    chosen = set()
    while unhit:
        counts = {}
        for s in unhit:
            for e in s:
                counts[e] = counts.get(e, 0) + 1
        best = max(
            sorted(counts),
            key=lambda e: _ratio(counts[e], weights[e]),
        )
        chosen.add(best)
        unhit = [s for s in unhit if best not in s]

    return _prune(chosen, _normalise(sets), weights)


def _prune(chosen, sets, weights):
    for e in sorted(chosen, key=lambda e: (weights[e], e), reverse=True):
        rest = chosen - {e}
        if all(s & rest for s in sets):
            chosen = rest
    return frozenset(chosen)


def _harmonic(k):
    return sum(Fraction(1, j) for j in range(1, k + 1))


def lower_bound(sets, weights):
    """
    Admissible bound on the lightest hitting set of ``sets``: the larger of a
    disjoint packing bound and greedy weight divided by H(max frequency).
    """
    if not sets:
        return 0

    packing = 0
    used = set()
    for s in sorted(sets, key=len):
        if not s & used:
            used |= s
            packing += min(weights[e] for e in s)

    frequency = {}
    for s in sets:
        for e in s:
            frequency[e] = frequency.get(e, 0) + 1
    greedy = utils.total_weight(greedy_hitting_set(sets, weights), weights)
    harmonic = _harmonic(max(frequency.values()))
    if utils.is_float(greedy):
        fractional = greedy / float(harmonic)
    else:
        fractional = Fraction(greedy) / harmonic

    return max(packing, fractional)


class BranchAndBound:
    """
    Exact weighted hitting set.

    Branches on the elements of the unhit set with fewest elements and prunes a
    branch once its weight plus ``lower_bound`` cannot beat the incumbent. Ties
    in weight are broken by size and then lexicographically.
    """

    def __init__(self, sets, weights):
        self.sets = _normalise(sets)
        self.weights = weights
        self.nodes = 0
        greedy = greedy_hitting_set(self.sets, weights) if self.sets else frozenset()
        self.best = greedy
        self.best_key = utils.selection_key(greedy, weights)

    def solve(self):
        self._branch(frozenset(), self.sets)
        logger.debug("hitting set solved", nodes=self.nodes, weight=self.best_key[0])
        return self.best

    def _branch(self, chosen, unhit):
        self.nodes += 1
        if not unhit:
            key = utils.selection_key(chosen, self.weights)
            if key < self.best_key:
                self.best, self.best_key = chosen, key
            return

        weight = utils.total_weight(chosen, self.weights)
        bound = weight + lower_bound(unhit, self.weights)
        if utils.definitely_less(self.best_key[0], bound):
            return

        target = min(unhit, key=lambda s: (len(s), sorted(s)))
        for e in sorted(target, key=lambda e: (self.weights[e], e)):
            rest = [s for s in unhit if e not in s]
            self._branch(chosen | {e}, rest)


def exact_hitting_set(sets, weights):
    elements = set().union(*sets) if sets else set()
    if len(elements) > settings.EXACT_COVER_MAX:
        raise BudgetExceededError(
            what="Exact hitting set",
            needed=f"{len(elements)} elements",
            cap=f"{settings.EXACT_COVER_MAX} elements",
        )
    return BranchAndBound(sets, weights).solve()


def min_dominating_set(graph, weights=None, limit=None):
    """
    Lightest dominating set of a networkx graph (unit weights by default), found as
    a hitting set of the closed neighbourhoods.
    """
    weights = weights or {v: 1 for v in graph.nodes}
    neighbourhoods = [frozenset(graph[v]) | {v} for v in graph.nodes]
    if limit is not None and graph.number_of_nodes() > limit:
        raise BudgetExceededError(
            what="Exact dominating set",
            needed=f"{graph.number_of_nodes()} vertices",
            cap=f"{limit} vertices",
        )
    return BranchAndBound(neighbourhoods, weights).solve()


def domination_number(graph, limit=None):
    return len(min_dominating_set(graph, limit=limit))


def harmonic_bound(k):
    return float(_harmonic(k)) if k > 0 else 1.0
