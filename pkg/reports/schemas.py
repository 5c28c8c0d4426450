REPORT_SCHEMA_VERSION = 1

COMMANDS = ["growth", "ubq", "jurisdiction", "circles", "ce", "iso", "hyperbolicity", "classify"]

_rational = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}

meta_schema = {
    "type": "object",
    "properties": {
        "generated_at": {"type": "string"},
        "tool_version": {"type": "string"}
    },
    "required": ["generated_at", "tool_version"],
    "additionalProperties": False
}

growth_result_schema = {
    "type": "object",
    "properties": {
        "family": {"type": "string"},
        "requested": {"type": "integer", "minimum": 0},
        "attained": {"type": "integer", "minimum": 0},
        "complete": {"type": "boolean"},
        "values": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "fit": {"type": ["object", "null"]},
        "warnings": {"type": "array", "items": {"type": "string"}}
    },
    "required": ["family", "attained", "complete", "values"],
    "additionalProperties": True
}

ubq_result_schema = {
    "type": "object",
    "properties": {
        "family": {"type": "string"},
        "sigma": {"type": "integer", "minimum": 0},
        "D": {"type": "integer"},
        "R": {"type": "integer", "minimum": 0},
        "wide_count": {"type": "integer", "minimum": 0},
        "verdict": {"type": "string"},
        "components": {"type": "array", "items": {"type": "object"}}
    },
    "required": ["family", "sigma", "D", "R", "wide_count", "verdict"],
    "additionalProperties": True
}

iso_result_schema = {
    "type": "object",
    "properties": {
        "family": {"type": "string"},
        "seed": {"type": "integer"},
        "sample_count": {"type": "integer", "minimum": 0},
        "all_pass": {"type": "boolean"},
        "failures": {"type": "array", "items": {"type": "object"}}
    },
    "required": ["family", "seed", "sample_count", "all_pass", "failures"],
    "additionalProperties": True
}

jurisdiction_result_schema = {
    "type": "object",
    "properties": {
        "family": {"type": "string"},
        "delta": {"type": "integer", "minimum": 0},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "bucket": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
                    "count": {"type": "integer", "minimum": 0},
                    "max_jur": {"type": ["integer", "null"]}
                },
                "required": ["bucket", "count", "max_jur"]
            }
        },
        "trend": {"type": "string", "enum": ["bounded-so-far", "growing", "vacuous"]}
    },
    "required": ["family", "delta", "rows", "trend"],
    "additionalProperties": True
}

circles_result_schema = {
    "type": "object",
    "properties": {
        "family": {"type": "string"},
        "lambda": _rational,
        "c": _rational,
        "found": {"type": "integer", "minimum": 0},
        "circles": {"type": "array", "items": {"type": "object"}}
    },
    "required": ["family", "lambda", "c", "found", "circles"],
    "additionalProperties": True
}

ce_result_schema = {
    "type": "object",
    "properties": {
        "sizes": {"type": "object"},
        "validation": {
            "type": "object",
            "properties": {
                "passed": {"type": "boolean"},
                "failed": {"type": "array", "items": {"type": "string", "pattern": "^CE[1-6]$"}},
                "axioms": {"type": "array", "minItems": 6, "maxItems": 6}
            },
            "required": ["passed", "failed", "axioms"]
        },
        "separation": {"type": ["object", "null"]},
        "delta_graph": {"type": ["object", "null"]},
        "good_subpath_check": {"type": ["object", "null"]}
    },
    "required": ["sizes", "validation"],
    "additionalProperties": True
}

hyperbolicity_result_schema = {
    "type": "object",
    "properties": {
        "family": {"type": "string"},
        "samples": {"type": "integer", "minimum": 0},
        "seed": {"type": "integer"},
        "ladder": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "R": {"type": "integer", "minimum": 0},
                    "delta": _rational
                },
                "required": ["R", "delta"]
            }
        },
        "trend": {"type": "string", "enum": ["growing", "plateau", "indeterminate"]},
        "convention": {"type": "string"}
    },
    "required": ["family", "ladder", "trend"],
    "additionalProperties": True
}

classify_result_schema = {
    "type": "object",
    "properties": {
        "family": {"type": "string"},
        "label": {"type": "string", "enum": ["euclidean-plane-like", "hyperbolic-plane-like", "ubq-fails", "indeterminate"]},
        "explanation": {"type": "string"},
        "evidence": {"type": "object"}
    },
    "required": ["family", "label", "explanation", "evidence"],
    "additionalProperties": False
}

RESULT_SCHEMAS = {
    "growth": growth_result_schema,
    "ubq": ubq_result_schema,
    "jurisdiction": jurisdiction_result_schema,
    "circles": circles_result_schema,
    "ce": ce_result_schema,
    "iso": iso_result_schema,
    "hyperbolicity": hyperbolicity_result_schema,
    "classify": classify_result_schema,
}

envelope_schema = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "schema": {"const": REPORT_SCHEMA_VERSION},
        "command": {"type": "string", "enum": COMMANDS},
        "config": {"type": "object"},
        "result": {"type": "object"},
        "exit_status": {"type": "integer", "enum": [0, 2, 3]},
        "meta": meta_schema
    },
    "required": ["schema", "command", "result"],
    "additionalProperties": False
}


def report_schema(command: str) -> dict:
    """Envelope schema with the command's result schema plugged in."""
    schema = dict(envelope_schema)
    schema["properties"] = dict(envelope_schema["properties"], result=RESULT_SCHEMAS[command])
    return schema
