"""Exponential length bounds for unitaries over [0,1] and Jiang-Su tower experiments.

Report-style results come back as plain dicts and lists decoded from the JSON
the C++ core produces.
"""

import json

import numpy as np

from . import _cellab
from ._cellab import (
    ArgumentError,
    BranchCutError,
    CollisionError,
    CuError,
    Error,
    FlavorError,
    InvariantError,
    ParseError,
    PreconditionError,
    RangeError,
    acceptance_suites,
    is_prime,
    jiangsu_floor,
    minimal_chi_L,
    scalar_cel,
)

__all__ = [
    "ArgumentError", "BranchCutError", "CollisionError", "CuError", "Error", "FlavorError",
    "InvariantError", "ParseError", "PreconditionError", "RangeError",
    "acceptance_suites", "build_tower", "cel_lower_distinct", "chi_report", "cu_upper_bound",
    "dichotomy_count", "geodesic_upper_bound", "is_prime", "jiangsu_floor", "jiangsu_report",
    "minimal_chi_L", "one_step_patterns", "pan_wang_report", "run_acceptance", "scalar_cel",
    "scalar_cel_exact",
]


def _tol(tolerances):
    return json.dumps(tolerances) if tolerances else ""


def _field(u):
    return np.ascontiguousarray(u, dtype=np.complex128)


def scalar_cel_exact(points):
    """points: [[t, v], ...] with v in units of pi; returns (value string, shift)."""
    value, shift = _cellab.scalar_cel_exact(json.dumps([[str(t), str(v)] for t, v in points]))
    return value, int(shift)


def cel_lower_distinct(u, tolerances=None):
    return json.loads(_cellab.cel_lower_distinct(_field(u), _tol(tolerances)))


def cu_upper_bound(u, s_steps=16, tolerances=None):
    out = json.loads(_cellab.cu_upper_bound(_field(u), s_steps, _tol(tolerances)))
    out["shifts"] = [int(s) for s in out.get("shifts", [])]
    return out


def geodesic_upper_bound(u, tolerances=None):
    return _cellab.geodesic_upper_bound(_field(u), _tol(tolerances))


def pan_wang_report(k, grid_size=2049, with_path=True):
    return json.loads(_cellab.pan_wang_report(k, grid_size, with_path))


def chi_report(L, c="3/10", d="7/10", pad=0):
    return json.loads(_cellab.chi_report(L, str(c), str(d), pad))


def jiangsu_report(m, n, block_k=1):
    return json.loads(_cellab.jiangsu_report(m, n, block_k))


def build_tower(count):
    return json.loads(_cellab.build_tower(count))


def one_step_patterns(stage):
    return json.loads(_cellab.one_step_patterns(stage))


def dichotomy_count(p, q):
    return int(_cellab.dichotomy_count(p, q))


def run_acceptance(suite="all", config=None):
    return json.loads(_cellab.run_acceptance(suite, json.dumps(config) if config else ""))
