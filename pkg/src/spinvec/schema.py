"""JSON schema of the documents printed by ``spinvec --json``."""

SCHEMA_VERSION = "spinvec-report/1"

_number = {"type": "number"}
_nullable_number = {"type": ["number", "null"]}
_vec3 = {"type": "array", "items": _number, "minItems": 3, "maxItems": 3}
_numbers = {"type": "array", "items": _number}
_matrix = {"type": "array", "items": _numbers}
_half = {"type": "string", "pattern": r"^-?\d+(/2)?$"}
_axis = {"enum": ["x", "y", "z"]}

_budget = {
    "type": "object",
    "required": ["axis", "site_variances", "covariances", "uncorrelated_part",
                 "correlation_part", "total", "correlation_class"],
    "properties": {
        "axis": _axis,
        "site_variances": _numbers,
        "covariances": _matrix,
        "uncorrelated_part": _number,
        "correlation_part": _number,
        "total": _number,
        "correlation_class": {"enum": ["uncorrelated", "correlated", "anti-correlated", "partial"]},
    },
    "additionalProperties": False,
}



def _per_axis(item: dict) -> dict:
    return {
        "type": "object",
        "required": ["x", "y", "z"],
        "properties": {"x": item, "y": item, "z": item},
        "additionalProperties": False,
    }


_report = {
    "type": "object",
    "required": ["n_sites", "site_j", "j", "m", "twice_j", "twice_m", "provenance",
                 "coupling_path", "choice_a", "choice_b", "magnitude_a_sq", "magnitude_b_sq",
                 "classification", "particle_vectors", "z_sign_rules", "correlations",
                 "noise_budgets", "projection_sum", "composed", "composed_sq", "naive_sum",
                 "naive_sq", "j_squared", "effective_unit", "composition_residual"],
    "properties": {
        "n_sites": {"type": "integer", "minimum": 1},
        "site_j": _half,
        "j": _half,
        "m": _half,
        "twice_j": {"type": "integer", "minimum": 0},
        "twice_m": {"type": "integer"},
        "provenance": {"enum": ["explicit", "lowering", "sequential-coupling"]},
        "coupling_path": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "choice_a": _vec3,
        "choice_b": _vec3,
        "magnitude_a_sq": _number,
        "magnitude_b_sq": _number,
        "classification": _per_axis({"enum": ["projection", "fluctuation", "mixed"]}),
        "particle_vectors": {"type": "array", "items": _vec3},
        "z_sign_rules": {"type": "array", "items": {"enum": ["expectation", "alternating", "zero"]}},
        "correlations": _per_axis(_matrix),
        "noise_budgets": _per_axis(_budget),
        "projection_sum": _vec3,
        "composed": _vec3,
        "composed_sq": _number,
        "naive_sum": _vec3,
        "naive_sq": _number,
        "j_squared": _number,
        "effective_unit": _nullable_number,
        "composition_residual": _number,
    },
    "additionalProperties": False,
}

_moments = {
    "type": "object",
    "required": ["axis", "n_samples", "means", "mean_se", "variances", "variance_se",
                 "second_moments", "second_moment_se", "marginals", "marginal_se",
                 "total_mean", "total_mean_se", "total_variance", "total_variance_se"],
    "properties": {
        "axis": _axis,
        "n_samples": {"type": "integer", "minimum": 2},
        "means": _numbers,
        "mean_se": _numbers,
        "variances": _numbers,
        "variance_se": _numbers,
        "second_moments": _matrix,
        "second_moment_se": _matrix,
        "marginals": _matrix,
        "marginal_se": _matrix,
        "total_mean": _number,
        "total_mean_se": _number,
        "total_variance": _number,
        "total_variance_se": _number,
    },
    "additionalProperties": False,
}

_comparison_row = {
    "type": "object",
    "required": ["quantity", "exact", "empirical", "standard_error", "z_score", "within_tolerance"],
    "properties": {
        "quantity": {"type": "string"},
        "exact": _number,
        "empirical": _number,
        "standard_error": _number,
        "z_score": _nullable_number,
        "within_tolerance": {"type": "boolean"},
    },
    "additionalProperties": False,
}

_sampler_axis = {
    "type": "object",
    "required": ["exact", "empirical", "comparison"],
    "properties": {
        "exact": _moments,
        "empirical": _moments,
        "comparison": {"type": "array", "items": _comparison_row},
    },
    "additionalProperties": False,
}

_sampler = {
    "type": "object",
    "required": ["n_samples", "seed", "sigmas", "axes", "all_within_tolerance"],
    "properties": {
        "n_samples": {"type": "integer", "minimum": 2},
        "seed": {"type": "integer", "minimum": 0},
        "sigmas": _number,
        "axes": {
            "type": "object",
            "properties": {"x": _sampler_axis, "y": _sampler_axis, "z": _sampler_axis},
            "additionalProperties": False,
            "minProperties": 1,
        },
        "all_within_tolerance": {"type": "boolean"},
    },
    "additionalProperties": False,
}

_value = {"oneOf": [_number, _numbers]}

_check = {
    "type": "object",
    "required": ["name", "expected", "computed", "delta", "tolerance", "passed"],
    "properties": {
        "name": {"type": "string"},
        "expected": _value,
        "computed": _value,
        "delta": _number,
        "tolerance": _number,
        "passed": {"type": "boolean"},
    },
    "additionalProperties": False,
}

_common_required = ["schema_version", "command", "units", "request"]
_common = {
    "schema_version": {"const": SCHEMA_VERSION},
    "units": {"const": "hbar"},
    "request": {"type": "object"},
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "spinvec report document",
    "oneOf": [
        {
            "type": "object",
            "required": _common_required + ["report", "checks"],
            "properties": {
                **_common,
                "command": {"enum": ["single", "couple"]},
                "report": _report,
                "checks": {"type": "array", "items": _check},
                "sampler": _sampler,
            },
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": _common_required + ["state", "sampler"],
            "properties": {
                **_common,
                "command": {"const": "sample"},
                "state": {
                    "type": "object",
                    "required": ["n_sites", "j", "m", "coupling_path", "provenance"],
                    "properties": {
                        "n_sites": {"type": "integer", "minimum": 1},
                        "j": _half,
                        "m": _half,
                        "coupling_path": {"type": "array", "items": {"type": "integer"}},
                        "provenance": {"enum": ["explicit", "lowering", "sequential-coupling"]},
                    },
                    "additionalProperties": False,
                },
                "sampler": _sampler,
            },
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": _common_required + ["items", "all_passed"],
            "properties": {
                **_common,
                "command": {"const": "paper-table"},
                "items": {"type": "array", "items": _check, "minItems": 1},
                "all_passed": {"type": "boolean"},
            },
            "additionalProperties": False,
        },
    ],
}
