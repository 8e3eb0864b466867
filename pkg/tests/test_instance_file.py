import json
from fractions import Fraction

import networkx as nx
import pytest

from dcs import gadgets, generators, settings
from dcs.adapters import instance_file
from dcs.congestion import CongestionGame
from dcs.coordination import CoordinationGame
from dcs.errors import InvalidInputError, SchemaError
from dcs.models import DcsInstance
from dcs.versioning import IncorrectVersionError, UnsupportedVersionFormatError


def document(**overrides):
    doc = {
        "format": settings.FORMAT_VERSION,
        "kind": "singleton-congestion",
        "start": [0, 1],
        "target": [1, 0],
        "game": {"resources": 2, "choices": [[0, 1], [0, 1]], "costs": [[1, 10], [2, 20]]},
    }
    doc.update(overrides)
    return json.dumps(doc)


def test_parse_minimal_document():
    instance = instance_file.parse_instance(document())

    assert instance.weights == (1, 1)
    assert instance.game.cost(1, 2) == 20
    assert instance.provenance == {}
    assert instance.certificate is None


def test_dump_is_canonical():
    text = instance_file.dump_instance(instance_file.parse_instance(document(weights=["1/2", 2])))
    data = json.loads(text)

    assert text.endswith("}\n")
    assert list(data) == sorted(data)
    assert data["weights"] == ["1/2", 2]
    assert data["format"] == settings.FORMAT_VERSION


def test_fractions_survive_a_file(tmp_path):
    game = CoordinationGame(nx.path_graph(3), [[0, 1]] * 3, {0: Fraction(3, 2)})
    instance = DcsInstance(game, (1, 1, 1), (0, 0, 0), weights=(Fraction(1, 3), 1, 2.5))

    path = instance_file.write_instance(tmp_path / "coord.json", instance)
    loaded = instance_file.load_instance(path)

    assert loaded.weights == (Fraction(1, 3), 1, 2.5)
    assert loaded.game.prestige_of(0) == Fraction(3, 2)
    assert instance_file.dump_instance(loaded) == path.read_text()


def test_graphical_and_pairwise_games_survive_a_file():
    for kind in ("graphical", "pairwise-tree", "normal-form"):
        instance = generators.random_instance(kind, 4, seed=2)
        text = instance_file.dump_instance(instance)

        assert instance_file.dump_instance(instance_file.parse_instance(text)) == text


def test_general_congestion_game():
    game = CongestionGame(2, [[(0, 1), (1,)], [(0,)]], [[1, 2], [3, 4]])
    instance = DcsInstance(game, (1, 0), (1, 0))
    text = instance_file.dump_instance(instance)

    assert json.loads(text)["kind"] == "congestion"
    assert instance_file.parse_instance(text).game.strategies == game.strategies


def test_gadget_defaults_come_from_the_builder():
    text = json.dumps(
        {
            "format": settings.FORMAT_VERSION,
            "kind": "gadget",
            "game": {"name": "threshold", "params": {"n": 4, "p": 2}},
        }
    )
    instance = instance_file.parse_instance(text)
    expected = gadgets.gadget_threshold(4, 2)

    assert instance.start == expected.start
    assert instance.target == expected.target
    assert instance.certificate.optimum == 2


def test_gadget_instance_survives_a_file(hitting_set):
    text = instance_file.dump_instance(hitting_set)
    loaded = instance_file.parse_instance(text)

    assert loaded.weights == hitting_set.weights
    assert instance_file.dump_instance(loaded) == text


@pytest.mark.parametrize(
    "text,path",
    [
        ("[1, 2]", "$"),
        ("{not json", "$"),
        (document(extra=1), "$.extra"),
        (document(kind="poker"), "$.kind"),
        (document(start=[0, -1]), "$.start[1]"),
        (document(game={"resources": 2, "choices": [[0, 1], [0, 1]], "costs": [[1, 10], [2, "x"]]}), "$.game.costs[1][1]"),
        (document(game={"resources": 2, "choices": [[0, 1], [0, 1]]}), "$.game.costs"),
        (document(target=[0, 0]), "$.game"),
    ],
)
def test_schema_errors_carry_a_path(text, path):
    with pytest.raises(SchemaError) as exc_info:
        instance_file.parse_instance(text)

    assert exc_info.value.path == path


def test_missing_profiles():
    data = json.loads(document())
    del data["start"]

    with pytest.raises(SchemaError) as exc_info:
        instance_file.parse_instance(json.dumps(data))
    assert exc_info.value.path == "$.start"


def test_format_version_is_checked():
    with pytest.raises(IncorrectVersionError):
        instance_file.parse_instance(document(format="0.9.0"))
    with pytest.raises(UnsupportedVersionFormatError):
        instance_file.parse_instance(document(format="latest"))


def test_unreadable_file(tmp_path):
    with pytest.raises(InvalidInputError):
        instance_file.load_instance(tmp_path / "missing.json")
