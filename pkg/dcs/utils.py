import heapq
import math
from fractions import Fraction
from itertools import combinations

import networkx as nx

from dcs import settings
from dcs.errors import InvalidInputError


def is_float(*values):
    return any(isinstance(v, float) for v in values)


def is_close(a, b):
    """Equality for payoffs and weights: exact unless a float is involved"""
    if is_float(a, b):
        return math.isclose(a, b, rel_tol=0.0, abs_tol=settings.TOLERANCE)
    return a == b


def definitely_less(a, b):
    return a < b and not is_close(a, b)


def is_zero(value):
    return is_close(value, 0)


def total_weight(members, weights):
    # Sorted so float sums do not depend on set iteration order.
    return sum((weights[i] for i in sorted(members)), start=0)


def selection_key(members, weights):
    """Canonical ordering of candidate sets: (weight, size, sorted members)"""
    return (total_weight(members, weights), len(members), tuple(sorted(members)))


def subsets_by_weight(items, weights):
    """
    Yield every subset of ``items`` in nondecreasing (weight, size, lexicographic)
    order, lazily.

    Items are sorted by (weight, index). A subset whose largest sorted position is
    j has two successors: add j + 1, or swap j for j + 1. Neither successor can sort
    before its parent, so popping a heap yields the subsets in order and each one
    exactly once.
    """
    order = sorted(items, key=lambda i: (weights[i], i))
    heap = [(0, 0, (), ())]
    while heap:
        weight, size, members, positions = heapq.heappop(heap)
        yield frozenset(members)

        nxt = positions[-1] + 1 if positions else 0
        if nxt >= len(order):
            continue

        grown = positions + (nxt,)
        heapq.heappush(heap, _heap_entry(grown, order, weights))
        if positions:
            swapped = positions[:-1] + (nxt,)
            heapq.heappush(heap, _heap_entry(swapped, order, weights))


def _heap_entry(positions, order, weights):
    members = tuple(sorted(order[p] for p in positions))
    return (total_weight(members, weights), len(members), members, positions)


def subsets_of(items, min_size=0, max_size=None):
    """All subsets by increasing size, lexicographic within a size"""
    items = sorted(items)
    top = len(items) if max_size is None else max_size
    for size in range(min_size, top + 1):
        for combo in combinations(items, size):
            yield frozenset(combo)


def coalition_deviation_count(strategy_counts, k):
    """
    Number of (coalition, joint strategy) pairs with coalition size at most k:
    the elementary symmetric polynomials of the strategy counts up to degree k.
    """
    layers = [1] + [0] * k
    for count in strategy_counts:
        for size in range(k, 0, -1):
            layers[size] += layers[size - 1] * count
    return sum(layers[1:])


def parse_number(text):
    """Parse an int, a fraction like ``10/3`` or a float"""
    text = str(text).strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"Expected a number, got {text!r}")


def format_number(value):
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    return value


def parse_player_set(text):
    """Parse ``"0,2,5"`` into a frozenset; an empty string is the empty set"""
    text = (text or "").strip()
    if not text:
        return frozenset()
    try:
        return frozenset(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise InvalidInputError(f"Expected comma separated player indices, got {text!r}")


def parse_seed_range(text):
    """Parse ``"3..7"`` (inclusive) or a single seed"""
    try:
        if ".." in text:
            start, end = text.split("..")
            return range(int(start), int(end) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise InvalidInputError(f"Expected seeds as A..B, got {text!r}")


def parse_edge_list(text):
    """
    Read a graph on vertices 0..n-1.

    Each line holds ``u v`` for an edge or a single ``v`` to declare an isolated
    vertex. Blank lines and ``#`` comments are ignored. Missing vertices below the
    largest index are added as isolated vertices.
    """
    graph = nx.Graph()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vertices = [int(token) for token in line.split()]
        except ValueError:
            raise InvalidInputError(f"Line {lineno}: expected vertex indices, got {line!r}")
        if len(vertices) not in (1, 2) or min(vertices) < 0:
            raise InvalidInputError(f"Line {lineno}: expected 'u v' or 'v', got {line!r}")
        if len(vertices) == 2 and vertices[0] == vertices[1]:
            raise InvalidInputError(f"Line {lineno}: self loops are not allowed")
        if len(vertices) == 1:
            graph.add_node(vertices[0])
        else:
            graph.add_edge(*vertices)

    if graph.number_of_nodes() == 0:
        raise InvalidInputError("Graph has no vertices")
    graph.add_nodes_from(range(max(graph.nodes) + 1))
    return graph


def relabel_contiguous(graph):
    """Return a copy of graph whose vertices are exactly 0..n-1"""
    nodes = sorted(graph.nodes)
    if nodes == list(range(len(nodes))):
        return graph.copy()
    return nx.relabel_nodes(graph, {v: i for i, v in enumerate(nodes)})
