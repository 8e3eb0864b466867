from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from dcs import utils
from dcs.errors import InvalidInputError


weight_lists = st.lists(st.integers(min_value=0, max_value=5), min_size=0, max_size=6)


@given(weight_lists)
@hypothesis_settings(max_examples=50, deadline=None)
def test_subsets_by_weight_yields_every_subset_once_in_order(weights):
    yielded = list(utils.subsets_by_weight(range(len(weights)), weights))
    keys = [utils.selection_key(s, weights) for s in yielded]

    assert len(yielded) == 2 ** len(weights)
    assert len(set(yielded)) == len(yielded)
    assert keys == sorted(keys)


def test_subsets_by_weight_ties_are_lexicographic():
    yielded = list(utils.subsets_by_weight(range(3), [1, 1, 1]))
    assert [sorted(s) for s in yielded[:5]] == [[], [0], [1], [2], [0, 1]]


def test_subsets_of_sizes():
    subsets = list(utils.subsets_of([2, 0, 1], min_size=1, max_size=2))
    assert [sorted(s) for s in subsets] == [[0], [1], [2], [0, 1], [0, 2], [1, 2]]


@pytest.mark.parametrize(
    "counts,k,expected",
    [
        ([2, 2], 1, 4),
        ([2, 2], 2, 8),
        ([2, 2, 2], 2, 18),
        ([3, 1], 2, 7),
    ],
)
def test_coalition_deviation_count(counts, k, expected):
    assert utils.coalition_deviation_count(counts, k) == expected


def test_is_close_exact_for_fractions_and_ints():
    assert utils.is_close(Fraction(1, 3), Fraction(2, 6))
    assert not utils.is_close(Fraction(1, 3), Fraction(1, 3) + Fraction(1, 10**12))
    assert not utils.is_close(1, 2)


def test_is_close_tolerant_for_floats():
    assert utils.is_close(0.1 + 0.2, 0.3)
    assert not utils.definitely_less(0.3, 0.1 + 0.2)
    assert utils.definitely_less(0.3, 0.31)
    assert utils.is_zero(1e-12)


def test_total_weight_mixed():
    assert utils.total_weight({2, 0}, [Fraction(1, 2), 7, Fraction(1, 4)]) == Fraction(3, 4)
    assert utils.total_weight(set(), [1, 2]) == 0


@pytest.mark.parametrize(
    "text,expected",
    [("3", 3), (" 10/4 ", Fraction(5, 2)), ("0.5", 0.5), ("-2", -2)],
)
def test_parse_number(text, expected):
    assert utils.parse_number(text) == expected


@pytest.mark.parametrize("text", ["abc", "1/0", ""])
def test_parse_number_invalid(text):
    with pytest.raises(InvalidInputError):
        utils.parse_number(text)


def test_format_number():
    assert utils.format_number(Fraction(10, 3)) == "10/3"
    assert utils.format_number(Fraction(4, 2)) == 2
    assert utils.format_number(1.5) == 1.5


def test_parse_player_set():
    assert utils.parse_player_set("0, 2,5") == {0, 2, 5}
    assert utils.parse_player_set("") == frozenset()
    assert utils.parse_player_set(None) == frozenset()

    with pytest.raises(InvalidInputError):
        utils.parse_player_set("0,a")


def test_parse_seed_range():
    assert utils.parse_seed_range("3..6") == range(3, 7)
    assert utils.parse_seed_range("4") == range(4, 5)

    with pytest.raises(InvalidInputError):
        utils.parse_seed_range("a..b")


def test_parse_edge_list():
    graph = utils.parse_edge_list("# a path\n0 1\n1 2  # middle\n\n5\n")

    assert sorted(graph.nodes) == [0, 1, 2, 3, 4, 5]
    assert sorted(sorted(e) for e in graph.edges) == [[0, 1], [1, 2]]


@pytest.mark.parametrize("text", ["", "0 0", "0 1 2", "x y", "-1 2"])
def test_parse_edge_list_invalid(text):
    with pytest.raises(InvalidInputError):
        utils.parse_edge_list(text)


def test_relabel_contiguous():
    graph = nx.Graph([(3, 7), (7, 10)])
    relabelled = utils.relabel_contiguous(graph)

    assert sorted(relabelled.nodes) == [0, 1, 2]
    assert sorted(sorted(e) for e in relabelled.edges) == [[0, 1], [1, 2]]
