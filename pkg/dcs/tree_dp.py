"""
Graphical games and the exact dynamic program for tree (forest) shaped ones.
"""
from itertools import product

import networkx as nx
import numpy as np
import structlog

from dcs import settings, utils
from dcs.errors import (
    BudgetExceededError,
    InvalidInputError,
    NotATreeError,
    UnsupportedError,
)
from dcs.games import Game, StructureTag
from dcs.models import Method
from dcs.solvers import Run


logger = structlog.get_logger(__name__)


def _value(x):
    return x.item() if isinstance(x, np.generic) else x


class GraphicalGame(Game):
    """
    u_i depends only on the strategies of i's closed neighbourhood.

    ``tables[i]`` is an array indexed by the strategies of ``scope(i)``, the
    sorted closed neighbourhood of i.
    """

    structure_tag = StructureTag.GRAPHICAL

    def __init__(self, graph, strategy_counts, tables=None):
        super().__init__(strategy_counts)
        if sorted(graph.nodes) != list(range(self.n_players)):
            raise InvalidInputError("Graph vertices must be exactly the players 0..n-1")
        self.graph = nx.freeze(graph.copy())
        self.tables = None
        if tables is not None:
            self.tables = tuple(np.asarray(t) for t in tables)
            for i, table in enumerate(self.tables):
                shape = tuple(self.strategy_counts[j] for j in self.scope(i))
                if table.shape != shape:
                    raise InvalidInputError(
                        f"Table of player {i} has shape {table.shape}, expected {shape}"
                    )

    def scope(self, i):
        return tuple(sorted(set(self.graph[i]) | {i}))

    def payoff(self, profile, i):
        return _value(self.tables[i][tuple(profile[j] for j in self.scope(i))])

    def influencers(self):
        return [frozenset(self.graph[i]) for i in self.players]

    def is_tree(self):
        return nx.is_tree(self.graph)


class PairwiseGraphicalGame(GraphicalGame):
    """
    u_i(x) = own[i][x_i] + sum over neighbours j of terms[i, j][x_i, x_j].

    Missing (i, j) terms are zero.
    """

    def __init__(self, graph, strategy_counts, own, terms):
        super().__init__(graph, strategy_counts)
        self.own = tuple(np.asarray(o) for o in own)
        if len(self.own) != self.n_players:
            raise InvalidInputError(f"Expected {self.n_players} own terms, got {len(self.own)}")
        self.terms = {}
        for (i, j), matrix in terms.items():
            if not self.graph.has_edge(i, j):
                raise InvalidInputError(f"Pairwise term ({i}, {j}) is not on an edge")
            matrix = np.asarray(matrix)
            if matrix.shape != (self.strategy_counts[i], self.strategy_counts[j]):
                raise InvalidInputError(f"Pairwise term ({i}, {j}) has shape {matrix.shape}")
            self.terms[i, j] = matrix
        for i, o in enumerate(self.own):
            if o.shape != (self.strategy_counts[i],):
                raise InvalidInputError(f"Own term of player {i} has shape {o.shape}")

    def term(self, i, j, xi, xj):
        matrix = self.terms.get((i, j))
        return 0 if matrix is None else _value(matrix[xi, xj])

    def payoff(self, profile, i):
        total = _value(self.own[i][profile[i]])
        for j in sorted(self.graph[i]):
            total += self.term(i, j, profile[i], profile[j])
        return total


def is_tree(game):
    return isinstance(game, GraphicalGame) and game.is_tree()


class TreeProgram:
    """
    cost[v, m_v, m_p]: lightest choice inside v's subtree, given v's membership
    m_v and its parent's m_p, such that every non-member of the subtree keeps d
    as a best response. The root has no parent (m_p is None).
    """

    def __init__(self, instance, tree, root, mode, run):
        self.instance = instance
        self.game = instance.game
        self.tree = tree
        self.root = root
        self.mode = mode
        self.run = run
        self.parent = {child: p for p, child in tree.edges}
        self.best = {}

    def solve(self):
        for v in nx.dfs_postorder_nodes(self.tree, self.root):
            children = sorted(self.tree.successors(v))
            parent_states = (None,) if v == self.root else (0, 1)
            for m_p in parent_states:
                self.best[v, 1, m_p] = self._member(v, m_p, children)
                self.best[v, 0, m_p] = self._outsider(v, m_p, children)
        return self._reconstruct()

    def _member(self, v, m_p, children):
        bits, cost = [], self.instance.weights[v]
        for c in children:
            b = self._cheaper(c, 1)
            bits.append(b)
            cost += self.best[c, b, 1][0]
        return cost, tuple(bits)

    def _cheaper(self, c, m_p):
        options = [b for b in (0, 1) if self.best[c, b, m_p] is not None]
        return min(options, key=lambda b: (self.best[c, b, m_p][0], b))

    def _profile(self, v, m_p, assignment):
        instance = self.instance
        profile = list(instance.start)
        if m_p:
            profile[self.parent[v]] = instance.target[self.parent[v]]
        for c, bit in assignment.items():
            if bit:
                profile[c] = instance.target[c]
        return profile

    def _follows(self, v, m_p, assignment):
        profile = self._profile(v, m_p, assignment)
        values = []
        for x in range(self.game.strategy_counts[v]):
            profile[v] = x
            values.append(self.game.utility(profile, v))
        best = max(values)
        return not utils.definitely_less(values[self.instance.target[v]], best)

    def _outsider(self, v, m_p, children):
        if self.mode == "additive":
            return self._outsider_additive(v, m_p, children)

        if len(children) > settings.TREE_DEGREE_CAP:
            raise BudgetExceededError(
                what=f"Enumerating the children of vertex {v}",
                needed=f"{len(children)} children",
                cap=f"{settings.TREE_DEGREE_CAP} children",
            )
        best = None
        for bits in product((0, 1), repeat=len(children)):
            parts = [self.best[c, b, 0] for c, b in zip(children, bits)]
            if any(p is None for p in parts):
                continue
            self.run.stats.subsets_examined += 1
            if not self._follows(v, m_p, dict(zip(children, bits))):
                continue
            cost = sum((p[0] for p in parts), start=0)
            if best is None or (cost, bits) < best:
                best = (cost, bits)
        return best

    def _margin_step(self, v, j, xj, alternatives):
        dv = self.instance.target[v]
        return tuple(
            self.game.term(v, j, dv, xj) - self.game.term(v, j, t, xj) for t in alternatives
        )

    def _outsider_additive(self, v, m_p, children):
        """
        Knapsack over the children: states map the best-response margins
        U_v(d_v) - U_v(t) for every alternative t to the cheapest children choice.
        """
        instance, game = self.instance, self.game
        dv = instance.target[v]
        alternatives = [t for t in range(game.strategy_counts[v]) if t != dv]
        base = [_value(game.own[v][dv]) - _value(game.own[v][t]) for t in alternatives]
        if v != self.root:
            p = self.parent[v]
            xp = instance.target[p] if m_p else instance.start[p]
            base = [a + b for a, b in zip(base, self._margin_step(v, p, xp, alternatives))]

        states = {tuple(base): (0, ())}
        for c in children:
            grown = {}
            for margins, (cost, bits) in states.items():
                for b in (0, 1):
                    part = self.best[c, b, 0]
                    if part is None:
                        continue
                    xc = instance.target[c] if b else instance.start[c]
                    step = self._margin_step(v, c, xc, alternatives)
                    key = tuple(m + s for m, s in zip(margins, step))
                    option = (cost + part[0], bits + (b,))
                    if key not in grown or option < grown[key]:
                        grown[key] = option
            states = grown
            self.run.stats.subsets_examined += len(states)

        feasible = [
            option
            for margins, option in states.items()
            if not any(utils.definitely_less(m, 0) for m in margins)
        ]
        return min(feasible) if feasible else None

    def _reconstruct(self):
        chosen = set()
        m_root = self._cheaper(self.root, None)
        stack = [(self.root, m_root, None)]
        while stack:
            v, m_v, m_p = stack.pop()
            if m_v:
                chosen.add(v)
            _, bits = self.best[v, m_v, m_p]
            for c, b in zip(sorted(self.tree.successors(v)), bits):
                stack.append((c, b, m_v))
        return chosen


def tree_dp_min_dcs(instance, root=None, mode="auto"):
    """
    Exact minimum-weight DCS of a graphical game on a tree or forest.

    ``generic`` enumerates the children memberships of every vertex.
    ``additive`` needs a ``PairwiseGraphicalGame`` and scans the children once,
    keeping the cheapest choice for every reachable best-response margin.
    Forests are solved one component at a time.
    """
    game = instance.game
    if not isinstance(game, GraphicalGame):
        raise UnsupportedError("The tree program needs a graphical game")
    if not nx.is_forest(game.graph):
        raise NotATreeError("The game graph has a cycle")
    if mode == "auto":
        mode = "additive" if isinstance(game, PairwiseGraphicalGame) else "generic"
    if mode not in ("generic", "additive"):
        raise InvalidInputError(f"Unknown tree program mode {mode!r}")
    if mode == "additive" and not isinstance(game, PairwiseGraphicalGame):
        raise UnsupportedError("Additive mode needs pairwise utilities")
    if root is not None:
        game.validate_player(root)

    run = Run(instance, Method.TREE_DP)
    chosen = set()
    for component in sorted(nx.connected_components(game.graph), key=min):
        start = root if root in component else min(component)
        tree = nx.bfs_tree(game.graph.subgraph(component), start)
        part = TreeProgram(instance, tree, start, mode, run).solve()
        logger.debug("tree component solved", root=start, size=len(component), chosen=sorted(part))
        chosen |= part
    run.stats.notes["mode"] = mode
    return run.report(frozenset(chosen))
