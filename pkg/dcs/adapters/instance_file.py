"""
JSON instance files.

Loading validates the document with marshmallow schemas, which reject unknown
fields; every error is reported as a ``SchemaError`` with the JSON path of the
offending value. Dumping is canonical: sorted keys, two space indent, Fractions
written as ``"a/b"`` strings.
"""
import json
from fractions import Fraction
from pathlib import Path

import networkx as nx
import numpy as np
from marshmallow import Schema, ValidationError, fields, validate

from dcs import gadgets, settings, utils, versioning
from dcs.congestion import CongestionGame, SingletonCongestionGame
from dcs.coordination import CoordinationGame
from dcs.errors import DcsError, InvalidInputError, SchemaError
from dcs.games import GadgetGame, NormalFormGame
from dcs.models import Certificate, DcsInstance
from dcs.tree_dp import GraphicalGame, PairwiseGraphicalGame


KINDS = (
    "normal-form",
    "graphical",
    "congestion",
    "singleton-congestion",
    "coordination",
    "gadget",
)


class Number(fields.Field):
    """int, float, or a fraction written as "a/b" """

    default_error_messages = {"invalid": "Not a valid number."}

    def _deserialize(self, value, attr, data, **kwargs):
        if isinstance(value, bool):
            raise self.make_error("invalid")
        if isinstance(value, (int, float)):
            return value
        if isinstance(value, str):
            try:
                return utils.parse_number(value)
            except InvalidInputError:
                raise self.make_error("invalid")
        raise self.make_error("invalid")


def count(**kwargs):
    return fields.Integer(strict=True, validate=validate.Range(min=1), **kwargs)


def index(**kwargs):
    return fields.Integer(strict=True, validate=validate.Range(min=0), **kwargs)


class CertificateSchema(Schema):
    optimum = Number(allow_none=True, load_default=None)
    order_independent = fields.Boolean(allow_none=True, load_default=None)
    note = fields.String(load_default="")


class InstanceSchema(Schema):
    format_ = fields.String(data_key="format", required=True)
    kind = fields.String(required=True, validate=validate.OneOf(KINDS))
    weights = fields.List(Number())
    start = fields.List(index())
    target = fields.List(index())
    monotone = fields.Boolean(load_default=False)
    game = fields.Dict(required=True)
    certificate = fields.Nested(CertificateSchema, allow_none=True, load_default=None)
    provenance = fields.Dict(load_default=dict)


class NormalFormSchema(Schema):
    strategy_counts = fields.List(count(), required=True)
    payoffs = fields.List(fields.List(Number()), required=True)


class TermSchema(Schema):
    player = index(required=True)
    neighbour = index(required=True)
    matrix = fields.List(fields.List(Number()), required=True)


class GraphicalSchema(Schema):
    strategy_counts = fields.List(count(), required=True)
    vertices = count()
    edges = fields.List(fields.List(index(), validate=validate.Length(equal=2)), required=True)
    tables = fields.List(fields.List(Number()))
    own = fields.List(fields.List(Number()))
    terms = fields.List(fields.Nested(TermSchema))


class CongestionSchema(Schema):
    resources = count(required=True)
    strategies = fields.List(fields.List(fields.List(index())), required=True)
    costs = fields.List(fields.List(Number()), required=True)


class SingletonCongestionSchema(Schema):
    resources = count(required=True)
    choices = fields.List(fields.List(index()), required=True)
    costs = fields.List(fields.List(Number()), required=True)


class CoordinationSchema(Schema):
    vertices = count(required=True)
    edges = fields.List(fields.List(index(), validate=validate.Length(equal=2)), required=True)
    colors = fields.List(fields.List(index()), required=True)
    prestige = fields.Dict(keys=fields.String(), values=Number(), load_default=dict)


class GadgetSchema(Schema):
    name = fields.String(required=True, validate=validate.OneOf(sorted(gadgets.BUILDERS)))
    params = fields.Dict(load_default=dict)


GAME_SCHEMAS = {
    "normal-form": NormalFormSchema,
    "graphical": GraphicalSchema,
    "congestion": CongestionSchema,
    "singleton-congestion": SingletonCongestionSchema,
    "coordination": CoordinationSchema,
    "gadget": GadgetSchema,
}


def _first_error(messages, path):
    """Walk marshmallow's nested messages down to the first leaf"""
    if isinstance(messages, list):
        return path, "; ".join(str(m) for m in messages)
    key = sorted(messages, key=str)[0]
    step = f"[{key}]" if isinstance(key, int) else f".{key}"
    return _first_error(messages[key], path + step)


def _load(schema, data, path):
    try:
        return schema().load(data)
    except ValidationError as exc:
        where, message = _first_error(exc.messages, path)
        raise SchemaError(message, path=where)


def _array(values):
    if any(isinstance(v, Fraction) for v in values):
        return np.array(values, dtype=object)
    return np.array(values)


def _graph(vertices, edges):
    graph = nx.empty_graph(vertices)
    for u, v in edges:
        if u == v or max(u, v) >= vertices:
            raise SchemaError(f"Bad edge ({u}, {v})", path="$.game.edges")
        graph.add_edge(u, v)
    return graph


def _normal_form(payload):
    counts = tuple(payload["strategy_counts"])
    n = len(counts)
    rows = payload["payoffs"]
    size = int(np.prod(counts))
    if len(rows) != size or any(len(r) != n for r in rows):
        raise SchemaError(f"Expected {size} rows of {n} payoffs", path="$.game.payoffs")
    flat = [v for row in rows for v in row]
    return NormalFormGame(_array(flat).reshape(counts + (n,)))


def _graphical(payload):
    counts = payload["strategy_counts"]
    graph = _graph(payload.get("vertices", len(counts)), payload["edges"])
    if "tables" in payload:
        if "own" in payload or "terms" in payload:
            raise SchemaError("Give either tables or own/terms", path="$.game")
        if len(payload["tables"]) != len(counts):
            raise SchemaError(f"Expected {len(counts)} tables", path="$.game.tables")
        shaped = []
        for i, flat in enumerate(payload["tables"]):
            scope = sorted(set(graph[i]) | {i})
            shape = tuple(counts[j] for j in scope)
            if len(flat) != int(np.prod(shape)):
                raise SchemaError(f"Expected {int(np.prod(shape))} values", path=f"$.game.tables[{i}]")
            shaped.append(_array(flat).reshape(shape))
        return GraphicalGame(graph, counts, shaped)

    own = [_array(o) for o in payload.get("own", [])]
    terms = {(t["player"], t["neighbour"]): _array_2d(t["matrix"]) for t in payload.get("terms", [])}
    return PairwiseGraphicalGame(graph, counts, own, terms)


def _array_2d(rows):
    flat = [v for row in rows for v in row]
    return _array(flat).reshape(len(rows), -1) if rows else np.zeros((0, 0))


def _congestion(payload):
    return CongestionGame(payload["resources"], payload["strategies"], payload["costs"])


def _singleton(payload):
    return SingletonCongestionGame(payload["resources"], payload["choices"], payload["costs"])


def _coordination(payload):
    prestige = {}
    for key, value in payload["prestige"].items():
        try:
            prestige[int(key)] = value
        except ValueError:
            raise SchemaError("Prestige keys must be colours", path=f"$.game.prestige.{key}")
    graph = _graph(payload["vertices"], payload["edges"])
    return CoordinationGame(graph, payload["colors"], prestige)


GAME_LOADERS = {
    "normal-form": _normal_form,
    "graphical": _graphical,
    "congestion": _congestion,
    "singleton-congestion": _singleton,
    "coordination": _coordination,
}


def parse_instance(text):
    """Parse the text of an instance file into a ``DcsInstance``"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"Not valid JSON: {exc.msg} (line {exc.lineno})")
    if not isinstance(data, dict):
        raise SchemaError("Expected a JSON object")

    doc = _load(InstanceSchema, data, "$")
    versioning.check_version(doc["format_"])
    payload = _load(GAME_SCHEMAS[doc["kind"]], doc["game"], "$.game")
    certificate = Certificate(**doc["certificate"]) if doc["certificate"] else None

    try:
        if doc["kind"] == "gadget":
            built = gadgets.build(payload["name"], payload["params"])
            game = built.game
            defaults = built
        else:
            game = GAME_LOADERS[doc["kind"]](payload)
            defaults = None

        for key in ("start", "target"):
            if key not in doc and defaults is None:
                raise SchemaError("Missing data for required field.", path=f"$.{key}")
        return DcsInstance(
            game,
            doc.get("start", getattr(defaults, "start", None)),
            doc.get("target", getattr(defaults, "target", None)),
            weights=doc.get("weights", getattr(defaults, "weights", None)),
            monotone=doc["monotone"],
            certificate=certificate or getattr(defaults, "certificate", None),
            provenance=doc["provenance"],
        )
    except SchemaError:
        raise
    except DcsError as exc:
        raise SchemaError(str(exc), path="$.game")


def load_instance(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidInputError(f"Cannot read {path}: {exc.strerror}")
    return parse_instance(text)


def _number(value):
    if isinstance(value, np.generic):
        value = value.item()
    return utils.format_number(value)


def _numbers(values):
    return [_number(v) for v in values]


def _edges(graph):
    return sorted(sorted(e) for e in graph.edges)


def _game_payload(game):
    if isinstance(game, GadgetGame):
        return "gadget", {"name": game.name, "params": game.params}
    if isinstance(game, NormalFormGame):
        rows = [
            _numbers(game.payoffs[p]) for p in np.ndindex(*game.strategy_counts)
        ]
        return "normal-form", {"strategy_counts": list(game.strategy_counts), "payoffs": rows}
    if isinstance(game, PairwiseGraphicalGame):
        terms = [
            {"player": i, "neighbour": j, "matrix": [_numbers(row) for row in matrix]}
            for (i, j), matrix in sorted(game.terms.items())
        ]
        return "graphical", {
            "strategy_counts": list(game.strategy_counts),
            "vertices": game.n_players,
            "edges": _edges(game.graph),
            "own": [_numbers(o) for o in game.own],
            "terms": terms,
        }
    if isinstance(game, GraphicalGame):
        return "graphical", {
            "strategy_counts": list(game.strategy_counts),
            "vertices": game.n_players,
            "edges": _edges(game.graph),
            "tables": [_numbers(t.ravel()) for t in game.tables],
        }
    if isinstance(game, SingletonCongestionGame):
        return "singleton-congestion", {
            "resources": game.n_resources,
            "choices": [list(ch) for ch in game.choices],
            "costs": [_numbers(t) for t in game.costs],
        }
    if isinstance(game, CongestionGame):
        return "congestion", {
            "resources": game.n_resources,
            "strategies": [[sorted(s) for s in options] for options in game.strategies],
            "costs": [_numbers(t) for t in game.costs],
        }
    if isinstance(game, CoordinationGame):
        return "coordination", {
            "vertices": game.n_players,
            "edges": _edges(game.graph),
            "colors": [list(c) for c in game.colors],
            "prestige": {str(c): _number(p) for c, p in sorted(game.prestige.items())},
        }
    raise InvalidInputError(f"Cannot write a {type(game).__name__} to an instance file")


def dump_instance(instance):
    """Canonical JSON text of an instance"""
    kind, payload = _game_payload(instance.game)
    data = {
        "format": settings.FORMAT_VERSION,
        "kind": kind,
        "weights": _numbers(instance.weights),
        "start": list(instance.start),
        "target": list(instance.target),
        "monotone": instance.monotone,
        "game": payload,
        "provenance": instance.provenance,
    }
    if instance.certificate is not None:
        data["certificate"] = {
            "optimum": _number(instance.certificate.optimum),
            "order_independent": instance.certificate.order_independent,
            "note": instance.certificate.note,
        }
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def write_instance(path, instance):
    path = Path(path)
    path.write_text(dump_instance(instance))
    return path
