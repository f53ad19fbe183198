"""JSON schemas for the output of each CLI subcommand."""

from __future__ import annotations

_STR_OR_NULL = {"type": ["string", "null"]}
_INT_OR_NULL = {"type": ["integer", "null"]}

_CATEGORY = {
    "type": "object",
    "required": ["name", "objects", "morphisms", "composition"],
    "properties": {
        "name": {"type": "string"},
        "objects": {"type": "array", "items": {"type": "string"}},
        "morphisms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "dom", "cod", "label", "identity"],
                "properties": {
                    "index": {"type": "integer", "minimum": 0},
                    "dom": {"type": "integer", "minimum": 0},
                    "cod": {"type": "integer", "minimum": 0},
                    "label": {"type": "string"},
                    "identity": {"type": "boolean"},
                },
            },
        },
        "composition": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3},
        },
    },
}

_CONTEXT = {
    "group": {"type": "string"},
    "order": {"type": "integer", "minimum": 1},
    "family": {"type": "array", "items": {"type": "string"}, "minItems": 1},
}

_HOMOLOGY_GROUP = {
    "type": "object",
    "required": ["degree", "betti", "torsion"],
    "properties": {
        "degree": {"type": "integer", "minimum": 0},
        "betti": {"type": "integer", "minimum": 0},
        "torsion": {"type": "array", "items": {"type": "integer", "minimum": 2}},
    },
}

_FIBER = {
    "type": "object",
    "required": ["object", "objects", "morphisms", "indiscrete", "initial", "terminal", "components"],
    "properties": {
        "object": {"type": "string"},
        "objects": {"type": "integer", "minimum": 0},
        "morphisms": {"type": "integer", "minimum": 0},
        "indiscrete": {"type": "boolean"},
        "initial": {"type": "boolean"},
        "terminal": {"type": "boolean"},
        "components": {"type": "integer", "minimum": 0},
    },
}


def _obj(required: list[str], props: dict) -> dict:
    return {"type": "object", "required": required, "properties": props}


SCHEMAS: dict[str, dict] = {
    "orbit-cat": _obj(
        ["group", "order", "family", "category"],
        {**_CONTEXT, "category": _CATEGORY},
    ),
    "efg": _obj(
        ["group", "order", "family", "category", "thin", "actionViolation", "ok"],
        {**_CONTEXT, "category": _CATEGORY, "thin": {"type": "boolean"}, "actionViolation": _STR_OR_NULL, "ok": {"type": "boolean"}},
    ),
    "certify": _obj(
        ["group", "family", "ok", "entries"],
        {
            "group": {"type": "string"},
            "family": {"type": "array", "items": {"type": "string"}},
            "ok": {"type": "boolean"},
            "entries": {
                "type": "array",
                "items": _obj(
                    ["subgroup", "inFamily", "verdict", "witness"],
                    {
                        "subgroup": {"type": "string"},
                        "inFamily": {"type": "boolean"},
                        "verdict": {"enum": ["empty", "initial", "counterexample"]},
                        "witness": _STR_OR_NULL,
                    },
                ),
            },
        },
    ),
    "quotient-check": _obj(
        ["group", "order", "family", "ok", "method", "levels", "counterexample"],
        {
            **_CONTEXT,
            "ok": {"type": "boolean"},
            "method": {"enum": ["enumerate", "count"]},
            "levels": {
                "type": "array",
                "items": _obj(
                    ["dim", "simplices", "orbits", "baseSimplices"],
                    {k: {"type": "integer", "minimum": 0} for k in ("dim", "simplices", "orbits", "baseSimplices")},
                ),
            },
            "counterexample": _STR_OR_NULL,
        },
    ),
    "homology": _obj(
        ["group", "order", "family", "target", "category", "method", "simplex_counts", "groups"],
        {
            **_CONTEXT,
            "target": {"type": "string"},
            "category": {"type": "string"},
            "method": {"enum": ["direct", "skeleton"]},
            "simplex_counts": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            "groups": {"type": "array", "items": _HOMOLOGY_GROUP, "minItems": 1},
        },
    ),
    "hofix": _obj(
        ["group", "order", "family", "gsetSize", "cones", "ok", "maps", "detail"],
        {
            **_CONTEXT,
            "gsetSize": {"type": "integer", "minimum": 0},
            "cones": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
            "ok": {"type": "boolean"},
            "maps": {"type": "integer", "minimum": 0},
            "detail": _STR_OR_NULL,
        },
    ),
    "cofinal": _obj(
        ["group", "order", "family", "subcategory", "cofinal", "allIndiscrete", "fibers"],
        {
            **_CONTEXT,
            "subcategory": {"type": "array", "items": {"type": "string"}},
            "cofinal": {"type": "boolean"},
            "allIndiscrete": {"type": "boolean"},
            "fibers": {"type": "array", "items": _FIBER},
        },
    ),
    "sylow": _obj(
        ["group", "p", "generalized", "hypothesis", "sylow", "fixedWeyl", "holim", "bijection", "failingFiber", "ok"],
        {
            "group": {"type": "string"},
            "p": _INT_OR_NULL,
            "generalized": {"type": "boolean"},
            "hypothesis": {"enum": ["holds", "fails"]},
            "sylow": _STR_OR_NULL,
            "fixedWeyl": _INT_OR_NULL,
            "holim": _INT_OR_NULL,
            "bijection": {"type": ["boolean", "null"]},
            "failingFiber": {"oneOf": [{"type": "null"}, _FIBER]},
            "ok": {"type": "boolean"},
        },
    ),
    "functorial": _obj(
        ["homomorphisms", "checks", "squares", "ok"],
        {
            "homomorphisms": {"type": "array", "items": {"type": "string"}, "minItems": 1},
            "checks": {
                "type": "array",
                "items": _obj(
                    ["family", "sourceFamily", "objects", "morphisms", "functor", "equivariance", "composition"],
                    {
                        "family": {"type": "array", "items": {"type": "string"}},
                        "sourceFamily": {"type": "array", "items": {"type": "string"}},
                        "objects": {"type": "integer", "minimum": 0},
                        "morphisms": {"type": "integer", "minimum": 0},
                        "functor": _STR_OR_NULL,
                        "equivariance": _STR_OR_NULL,
                        "composition": _STR_OR_NULL,
                    },
                ),
            },
            "squares": {
                "type": "array",
                "items": _obj(["instance", "violation"], {"instance": {"type": "string"}, "violation": _STR_OR_NULL}),
            },
            "ok": {"type": "boolean"},
        },
    ),
    "selftest": _obj(
        ["seed", "scale", "ok", "suites"],
        {
            "seed": {"type": "integer"},
            "scale": {"enum": ["full", "small"]},
            "ok": {"type": "boolean"},
            "suites": {
                "type": "array",
                "items": _obj(
                    ["name", "ok", "checked", "failures", "stats"],
                    {
                        "name": {"type": "string"},
                        "ok": {"type": "boolean"},
                        "checked": {"type": "integer", "minimum": 0},
                        "failures": {"type": "array", "items": {"type": "string"}},
                        "stats": {"type": "object"},
                    },
                ),
            },
        },
    ),
}
