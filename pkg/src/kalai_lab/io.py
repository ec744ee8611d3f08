"""JSON file formats: polytopes and coordinate graphs.

Rationals are written as strings, "a" or "a/b" with b > 0, so files are
bit-exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .hanner import Graph
from .polytope import Polytope

RAT_PATTERN = r"^-?[0-9]+(/[1-9][0-9]*)?$"

POLYTOPE_SCHEMA = {
    "type": "object",
    "required": ["dim", "vertices"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1, "maximum": 8},
        "vertices": {
            "type": "array",
            "minItems": 2,
            "items": {"type": "array", "items": {"type": "string", "pattern": RAT_PATTERN}},
        },
        "facets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["normal", "offset"],
                "properties": {
                    "normal": {"type": "array", "items": {"type": "string", "pattern": RAT_PATTERN}},
                    "offset": {"type": "string", "pattern": RAT_PATTERN},
                },
            },
        },
    },
}

GRAPH_SCHEMA = {
    "type": "object",
    "required": ["n", "edges"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "edges": {
            "type": "array",
            "items": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "integer", "minimum": 1}},
        },
    },
}


def polytope_from_json(data: dict) -> Polytope:
    jsonschema.validate(data, POLYTOPE_SCHEMA)
    d = data["dim"]
    for v in data["vertices"]:
        if len(v) != d:
            raise ValueError(f"vertex {v} does not have {d} coordinates")
    return Polytope.from_dict(data)


def polytope_to_json(P: Polytope, with_facets: bool = True) -> dict:
    return P.to_dict(with_facets)


def read_polytope(path) -> Polytope:
    return polytope_from_json(json.loads(Path(path).read_text()))


def write_polytope(P: Polytope, path, with_facets: bool = True) -> None:
    Path(path).write_text(dumps(polytope_to_json(P, with_facets)) + "\n")


def graph_from_json(data: dict) -> Graph:
    jsonschema.validate(data, GRAPH_SCHEMA)
    return Graph.from_dict(data)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
