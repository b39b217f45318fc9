"""
Documented output schemas.

Every record a subcommand emits is validated against its schema before it is
written. CSV files use the same property order as columns, with
``schema_version`` first.
"""

from typing import Any, Dict, List

SCHEMA_VERSION = "1"

_NUMBER = {"type": "number"}
_NULLABLE_NUMBER = {"type": ["number", "null"]}
_INTEGER = {"type": "integer"}
_BOOLEAN = {"type": "boolean"}
_STRING = {"type": "string"}
_ANGLE_LIST = {
    "type": "array",
    "items": {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2},
}

_STATE = {"s2": {"type": "integer", "minimum": 1, "maximum": 50}, "xi": _NUMBER, "eta": _NUMBER}

_ELEMENTS = {
    f"rho{i}{i}_{part}": _NUMBER for i in range(1, 5) for part in ("lc", "nlc")
}

_COUNTS = {
    "n1": _INTEGER, "n2": _INTEGER, "n3": _INTEGER, "n4": _INTEGER, "n_other": _INTEGER,
    "shots": _INTEGER, "seed": _INTEGER,
    "raw_estimate": _NUMBER, "raw_standard_error": _NUMBER,
    "post_selected": _NULLABLE_NUMBER, "standard_error": _NULLABLE_NUMBER,
}

_REPORT = {
    "s2": _STATE["s2"],
    "objective": _STRING,
    "best_value": _NUMBER,
    "bound": _NUMBER,
    "violated": _BOOLEAN,
    "grid_value": _NUMBER,
    "xi": _NUMBER,
    "eta": _NUMBER,
    "angles": _ANGLE_LIST,
    "evaluations": _INTEGER,
}

PROPERTIES: Dict[str, Dict[str, Any]] = {
    "correlate": {
        **_STATE,
        "mode": _STRING,
        "theta_a": _NUMBER, "phi_a": _NUMBER, "theta_b": _NUMBER, "phi_b": _NUMBER,
        "p_lc": _NUMBER, "p_nlc": _NUMBER, "p_total": _NUMBER,
        "weight": _NUMBER, "local_weight": _NUMBER,
        **_ELEMENTS,
    },
    "bell": {
        **_STATE,
        "which": _STRING, "mode": _STRING, "angles": _ANGLE_LIST,
        "lhs": _NUMBER, "rhs": _NUMBER, "margin": _NUMBER, "violated": _BOOLEAN,
    },
    "chsh": {
        **_STATE,
        "which": _STRING, "mode": _STRING, "angles": _ANGLE_LIST,
        "value": _NUMBER, "bound": _NUMBER, "violated": _BOOLEAN,
    },
    "maximize": _REPORT,
    "parity-sweep": _REPORT,
    "sample-quantum": {
        **_STATE,
        "theta_a": _NUMBER, "phi_a": _NUMBER, "theta_b": _NUMBER, "phi_b": _NUMBER,
        "analytic_p_total": _NUMBER, "weight": _NUMBER,
        "batches": _INTEGER,
        **_COUNTS,
    },
    "sample-lhv": {
        "model": _STRING,
        "theta_a": _NUMBER, "phi_a": _NUMBER, "theta_b": _NUMBER, "phi_b": _NUMBER,
        **_COUNTS,
    },
    "verify-lhv": {
        "model": _STRING, "shots": _INTEGER, "seed": _INTEGER, "triples": _INTEGER,
        "flagged": _INTEGER, "model_valid": _BOOLEAN, "reason": {"type": ["string", "null"]},
    },
}


def record_schema(command: str) -> Dict[str, Any]:
    """JSON schema of one record emitted by ``command``."""
    properties = {"schema_version": {"const": SCHEMA_VERSION}, "command": {"const": command}}
    properties.update(PROPERTIES[command])
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": f"bellparity {command} record",
        "type": "object",
        "properties": properties,
        "required": list(properties),
        "additionalProperties": False,
    }


def csv_columns(command: str) -> List[str]:
    """Fixed CSV header for ``command``."""
    return ["schema_version", "command"] + list(PROPERTIES[command])
