"""JSON Schemas (draft 2020-12) of the ``--json`` output of every subcommand."""

from __future__ import annotations

import json

from . import SCHEMA

RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
NUMBER = {"oneOf": [{"type": "number"}, {"enum": ["inf", "-inf"]}]}
COMPLEX = {"type": "object", "required": ["re", "im"], "additionalProperties": False,
           "properties": {"re": {"type": "number"}, "im": {"type": "number"}}}
MULT = {"oneOf": [{"type": "integer", "minimum": 1}, {"const": "inf"}]}
PLACE = {"type": "string"}
DIVISOR = {"type": "array", "items": {
    "type": "object", "required": ["place", "coeff"], "additionalProperties": False,
    "properties": {"place": PLACE, "coeff": RATIONAL}}}
ORBIFOLD_DIVISOR = {"type": "array", "items": {
    "type": "object", "required": ["place", "mult"], "additionalProperties": False,
    "properties": {"place": PLACE, "mult": MULT}}}
ORBIFOLD = {
    "type": "object", "required": ["base", "divisor", "punctures", "infinite_support"],
    "additionalProperties": False,
    "properties": {
        "base": {"type": "object", "required": ["kind"],
                 "properties": {"kind": {"enum": ["P1", "elliptic", "disc", "genus",
                                                  "noncompactifiable"]},
                                "h": {"type": "string"}, "g": {"type": "integer"}}},
        "divisor": ORBIFOLD_DIVISOR,
        "punctures": {"type": "integer", "minimum": 0},
        "infinite_support": {"type": "boolean"},
    },
}
WITNESS = {
    "type": "object", "additionalProperties": False,
    "required": ["source", "target", "d", "n", "m", "condition", "satisfied"],
    "properties": {"source": PLACE, "target": PLACE, "d": {"type": "integer", "minimum": 1},
                   "n": MULT, "m": MULT, "condition": {"type": "string"},
                   "satisfied": {"type": "boolean"}},
}
VERDICT = {
    "type": "object", "required": ["ok", "mode", "image_in_support", "witnesses"],
    "properties": {"ok": {"type": "boolean"}, "mode": {"enum": ["classical", "nonclassical"]},
                   "image_in_support": {"type": "boolean"},
                   "witnesses": {"type": "array", "items": WITNESS}},
}
FLOATS = {"type": "array", "items": NUMBER}


def _command(name: str, properties: dict, required: list[str]) -> dict:
    props = {"schema": {"const": SCHEMA}, "command": {"const": name}}
    props.update(properties)
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": f"orbicurve {name} output",
        "type": "object",
        "required": ["schema", "command", *required],
        "additionalProperties": False,
        "properties": props,
    }


SCHEMAS: dict[str, dict] = {
    "classify": _command("classify", {
        "orbifold": ORBIFOLD,
        "hyperbolic": {"type": "boolean"},
        "classical_hyperbolic": {"type": "boolean"},
        "reason": {"type": "string"},
        "degree": {"oneOf": [RATIONAL, {"type": "null"}]},
        "unfolding_exists": {"type": ["boolean", "null"]},
        "notes": {"type": "array", "items": {"type": "string"}},
    }, ["orbifold", "hyperbolic", "classical_hyperbolic", "reason", "degree",
        "unfolding_exists", "notes"]),
    "pi1": _command("pi1", {
        "orbifold": ORBIFOLD,
        "generators": {"type": "array", "items": {"type": "string"}},
        "relators": {"type": "array", "items": {"type": "string"}},
        "abelianization": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "abelianization_text": {"type": "string"},
        "is_trivial": {"type": "boolean"},
    }, ["orbifold", "generators", "relators", "abelianization", "abelianization_text",
        "is_trivial"]),
    "morphism": _command("morphism", {
        "map": {"type": "string"},
        "source": ORBIFOLD,
        "target": ORBIFOLD,
        "verdict": VERDICT,
        "criterion": {"oneOf": [{"type": "null"}, {
            "type": "object", "required": ["divisor", "nonnegative"],
            "properties": {"divisor": DIVISOR, "nonnegative": {"type": "boolean"}}}]},
        "degree_inequality": {"oneOf": [{"type": "null"}, {
            "type": "object", "required": ["lhs", "rhs", "holds"],
            "properties": {"lhs": RATIONAL, "rhs": RATIONAL, "holds": {"type": "boolean"}}}]},
    }, ["map", "source", "target", "verdict", "criterion", "degree_inequality"]),
    "ramification": _command("ramification", {
        "map": {"type": "string"},
        "degree": {"type": "integer"},
        "divisor": DIVISOR,
        "divisor_degree": RATIONAL,
        "riemann_hurwitz": {"type": "boolean"},
    }, ["map", "degree", "divisor", "divisor_degree", "riemann_hurwitz"]),
    "compose-check": _command("compose-check", {
        "f": {"type": "string"}, "g": {"type": "string"}, "composite": {"type": "string"},
        "lhs": DIVISOR, "rhs": DIVISOR, "equal": {"type": "boolean"},
    }, ["f", "g", "composite", "lhs", "rhs", "equal"]),
    "orbifold-base": _command("orbifold-base", {
        "map": {"type": "string"},
        "mode": {"enum": ["classical", "nonclassical"]},
        "critical_values": {"type": "array", "items": PLACE},
        "divisor": ORBIFOLD_DIVISOR,
        "text": {"type": "string"},
    }, ["map", "mode", "critical_values", "divisor", "text"]),
    "etale": _command("etale", {
        "map": {"type": "string"},
        "source": ORBIFOLD,
        "target": ORBIFOLD,
        "etale": {"type": "boolean"},
        "morphism_ok": {"type": "boolean"},
        "ramification": DIVISOR,
        "expected": DIVISOR,
    }, ["map", "source", "target", "etale", "morphism_ok", "ramification", "expected"]),
    "unfold": _command("unfold", {
        "preset": {"type": "string"},
        "lambda": {"oneOf": [RATIONAL, {"type": "null"}]},
        "curve": {"type": "string"},
        "map": {"type": "object", "required": ["a", "b", "text"],
                "properties": {"a": {"type": "string"}, "b": {"type": "string"},
                               "text": {"type": "string"}}},
        "degree": {"type": "integer"},
        "target": ORBIFOLD,
        "profile": {"type": "array", "items": {
            "type": "object", "required": ["value", "points", "count", "multiplicities"],
            "properties": {
                "value": PLACE,
                "count": {"type": "integer"},
                "multiplicities": {"type": "array", "items": {"type": "integer"}},
                "points": {"type": "array", "items": {
                    "type": "object", "required": ["point", "degree", "mult"],
                    "properties": {"point": {"type": "string"},
                                   "degree": {"type": "integer"},
                                   "mult": {"type": "integer"}}}}}}},
        "verification": {"type": "object", "required": ["ok"], "properties": {
            "ok": {"type": "boolean"},
            "profile_consistent": {"type": "boolean"},
            "fiber_sums_ok": {"type": "boolean"},
            "ramification_matches": {"type": "boolean"},
            "unramified_elsewhere": {"type": "boolean"},
            "riemann_hurwitz": {"type": "array", "items": {"type": "integer"}},
            "degree_equality": {"type": "array", "items": RATIONAL}}},
    }, ["preset", "lambda", "curve", "map", "degree", "target", "profile", "verification"]),
    "quotient": _command("quotient", {
        "preset": {"type": "string"},
        "n": {"type": ["integer", "null"]},
        "order": {"type": "integer"},
        "multiplicities": {"type": "array", "items": {"type": "integer"}},
        "orbits": {"type": "array", "items": {
            "type": "object", "required": ["representative", "orbit_size", "stabilizer"],
            "properties": {"representative": {"oneOf": [COMPLEX, {"const": "inf"}]},
                           "orbit_size": {"type": "integer"},
                           "stabilizer": {"type": "integer"}}}},
        "orbifold": ORBIFOLD,
    }, ["preset", "n", "order", "multiplicities", "orbits", "orbifold"]),
    "nevanlinna": _command("nevanlinna", {
        "map": {"type": "string"},
        "place": PLACE,
        "mult": MULT,
        "alpha": RATIONAL,
        "radii": FLOATS,
        "T": FLOATS, "T_area": FLOATS, "N": FLOATS, "N1": FLOATS,
        "margin": FLOATS, "margin_area": FLOATS, "errors": FLOATS,
        "tolerance": {"type": "number"},
        "flagged": FLOATS,
        "ok": {"type": "boolean"},
    }, ["map", "place", "mult", "alpha", "radii", "T", "T_area", "N", "N1", "margin",
        "margin_area", "errors", "tolerance", "flagged", "ok"]),
    "kobayashi density": _command("kobayashi density", {
        "n": {"type": "integer", "minimum": 1},
        "z": {"oneOf": [RATIONAL, COMPLEX, {"type": "number"}]},
        "density": {"oneOf": [RATIONAL, {"type": "number"}]},
        "density_float": {"type": "number"},
        "limit": {"type": "number"},
        "convergence": {"type": "object", "required": ["ns", "differences", "decreasing"],
                        "properties": {"ns": {"type": "array", "items": {"type": "integer"}},
                                       "differences": FLOATS,
                                       "decreasing": {"type": "boolean"}}},
    }, ["n", "z", "density", "density_float", "limit", "convergence"]),
    "kobayashi distance": _command("kobayashi distance", {
        "n": {"type": "integer", "minimum": 1},
        "p": COMPLEX, "q": COMPLEX,
        "classical": {"type": "number"},
        "chain": {"oneOf": [{"type": "null"}, {
            "type": "object",
            "required": ["value", "best", "evaluated", "improved", "fallback"],
            "properties": {"value": {"type": "number"}, "best": {"type": "string"},
                           "evaluated": {"type": "integer"},
                           "improved": {"type": "boolean"},
                           "fallback": {"type": "boolean"}}}]},
    }, ["n", "p", "q", "classical", "chain"]),
    "kobayashi decreasing": _command("kobayashi decreasing", {
        "map": {"type": "string"},
        "n_src": {"type": "integer"}, "n_tgt": {"type": "integer"},
        "tolerance": {"type": "number"},
        "ok": {"type": "boolean"},
        "pairs": {"type": "array", "items": {
            "type": "object",
            "required": ["p", "q", "image_distance", "source_distance", "ok"],
            "properties": {"p": COMPLEX, "q": COMPLEX, "image_distance": {"type": "number"},
                           "source_distance": {"type": "number"}, "ok": {"type": "boolean"}}}},
    }, ["map", "n_src", "n_tgt", "tolerance", "ok", "pairs"]),
    "limit-closure": _command("limit-closure", {
        "family": {"type": "string"},
        "mode": {"enum": ["classical", "nonclassical"]},
        "source": ORBIFOLD,
        "target": ORBIFOLD,
        "samples": {"type": "array", "items": {
            "type": "object", "required": ["t", "map", "status"],
            "properties": {"t": RATIONAL, "map": {"type": "string"},
                           "status": {"type": "string"}}}},
        "limit": {"type": "string"},
        "branch": {"enum": ["morphism", "image_in_support", "not_morphism"]},
        "holds": {"type": "boolean"},
    }, ["family", "mode", "source", "target", "samples", "limit", "branch", "holds"]),
    "blowup-threshold": _command("blowup-threshold", {
        "pairs": {"type": "array", "items": {
            "type": "object", "required": ["n", "d"],
            "properties": {"n": MULT, "d": {"type": "integer", "minimum": 1}}}},
        "threshold": {"oneOf": [RATIONAL, {"const": "inf"}]},
        "k_min": MULT,
    }, ["pairs", "threshold", "k_min"]),
}


def schema_text(name: str) -> str:
    return json.dumps(SCHEMAS[name], sort_keys=True)
