"""JSON schemas for the command-line outputs (draft-07 style dicts)."""

CUT_RESULT = {
    "type": "object",
    "properties": {
        "set": {"type": "array", "items": {"type": "integer"}},
        "expansion": {"type": "number"},
        "ratio_type": {"enum": ["symmetric", "one-sided"]},
        "certificate": {"type": "array", "items": {"type": "number"}},
    },
    "required": ["set", "expansion", "certificate"],
}

EIGENPAIR = {
    "type": "object",
    "properties": {
        "value": {"type": "number"},
        "vector": {"type": "array", "items": {"type": "number"}},
        "method": {"type": "string"},
        "consistency_residual": {"type": "number"},
        "converged": {"type": "boolean"},
        "glued": {"type": "boolean"},
    },
    "required": ["value", "vector", "method", "consistency_residual"],
}

SCHEMAS = {
    "info": {
        "type": "object",
        "properties": {
            "command": {"const": "info"},
            "n": {"type": "integer"},
            "m": {"type": "integer"},
            "r_min": {"type": "integer"},
            "r_max": {"type": "integer"},
            "total_volume": {"type": "number"},
            "connected": {"type": "boolean"},
            "degrees": {"type": "array", "items": {"type": "number"}},
        },
        "required": ["command", "n", "m", "r_min", "r_max", "degrees"],
    },
    "eigs": {
        "type": "object",
        "properties": {
            "command": {"const": "eigs"},
            "seed": {"type": "integer"},
            "method": {"type": "string"},
            "eigenpairs": {"type": "array", "items": EIGENPAIR},
        },
        "required": ["command", "eigenpairs"],
    },
    "mix": {
        "type": "object",
        "properties": {
            "command": {"const": "mix"},
            "mixing_time": {"type": ["number", "null"]},
            "mixed": {"type": "boolean"},
            "final_distance": {"type": "number"},
            "bound": {"type": ["number", "null"]},
            "within_bound": {"type": ["boolean", "null"]},
            "bottleneck_cut": CUT_RESULT,
        },
        "required": ["command", "mixed", "final_distance"],
    },
    "cut": {
        "type": "object",
        "properties": {
            "command": {"const": "cut"},
            "seed": {"type": "integer"},
            "lambda2": {"type": "number"},
            "cheeger_lower": {"type": "number"},
            "cheeger_upper": {"type": "number"},
            "cut": CUT_RESULT,
        },
        "required": ["command", "cut"],
    },
    "sse": {
        "type": "object",
        "properties": {
            "command": {"const": "sse"},
            "seed": {"type": "integer"},
            "k": {"type": "integer"},
            "size_cap": {"type": "number"},
            "cut": CUT_RESULT,
        },
        "required": ["command", "k", "cut"],
    },
    "kpart": {
        "type": "object",
        "properties": {
            "command": {"const": "kpart"},
            "seed": {"type": "integer"},
            "k": {"type": "integer"},
            "complete": {"type": "boolean"},
            "max_expansion": {"type": ["number", "null"]},
            "sets": {"type": "array",
                     "items": {"type": "array", "items": {"type": "integer"}}},
            "expansions": {"type": "array", "items": {"type": "number"}},
        },
        "required": ["command", "k", "sets", "complete"],
    },
    "demands": {
        "type": "object",
        "properties": {
            "command": {"const": "demands"},
            "seed": {"type": "integer"},
            "pairs": {"type": "array"},
            "sdp_value": {"type": "number"},
            "ratio": {"type": "number"},
            "cut": CUT_RESULT,
        },
        "required": ["command", "sdp_value", "ratio", "cut"],
    },
    "vertexexp": {
        "type": "object",
        "properties": {
            "command": {"const": "vertexexp"},
            "lambda_inf": {"type": "number"},
            "bht_lambda_inf": {"type": "number"},
            "phi_vertex": {"type": "number"},
            "factor_four_ok": {"type": "boolean"},
            "sandwich_ok": {"type": "boolean"},
            "bht_sandwich_ok": {"type": "boolean"},
        },
        "required": ["command", "lambda_inf"],
    },
    "verify": {
        "type": "object",
        "properties": {
            "command": {"const": "verify"},
            "corpus": {"type": "string"},
            "seed": {"type": "integer"},
            "criteria": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "key": {"type": "string"},
                        "title": {"type": "string"},
                        "passed": {"type": "boolean"},
                        "detail": {"type": "string"},
                    },
                    "required": ["key", "passed", "detail"],
                },
            },
        },
        "required": ["command", "corpus", "seed", "criteria"],
    },
}
