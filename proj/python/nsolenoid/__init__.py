"""Exact arithmetic for p-adic solenoid parameter sequences.

Structured results are plain dicts/lists decoded from the JSON documents the
C++ core produces. Exact values stay strings.
"""

import json

from . import _core
from ._core import (
    CoherenceError,
    ConditionError,
    PAdic,
    PrecisionError,
    QuadReal,
    RadicandMismatch,
    REPORT_SCHEMA,
    condition_check,
)

__all__ = [
    "CoherenceError",
    "ConditionError",
    "PAdic",
    "PrecisionError",
    "QuadReal",
    "RadicandMismatch",
    "REPORT_SCHEMA",
    "acceptance",
    "alpha_window",
    "certificate_search",
    "condition_check",
    "heisenberg_partner",
    "identity_suite",
    "projection_partner",
    "reduce_h",
    "relate",
    "run_cli",
    "spec",
]


def spec(p, theta, digits="x=1"):
    """A spec dict; digits is "x=<rational>" or "d0,d1,..."."""
    return {"p": int(p), "theta": str(theta), "digits": digits}


def _s(s):
    return json.dumps(s)


def alpha_window(s, n):
    return json.loads(_core.alpha_window(_s(s), n))


def reduce_h(s, n):
    return json.loads(_core.reduce_h(_s(s), n))


def heisenberg_partner(s, n=4):
    return json.loads(_core.heisenberg_partner(_s(s), n))


def projection_partner(s, c0=1, d0=0, m=None, n=4):
    if m is None:
        trace = float(QuadReal(c0) * QuadReal(s["theta"]) + QuadReal(d0))
        m = int(trace // 1) + 1
    return json.loads(_core.projection_partner(_s(s), m, c0, d0, n))


def relate(s, n=5):
    return json.loads(_core.relate(_s(s), n))


def certificate_search(a, b, max_c0=4, max_d0=4, max_k=4, entries=4):
    return json.loads(_core.certificate_search(_s(a), _s(b), max_c0, max_d0, max_k, entries))


def identity_suite(s, c0=1, d0=0, m=None, n=0, seed=0, functions=4, points=40, grid=16, tolerance=1e-9):
    if m is None:
        trace = float(QuadReal(c0) * QuadReal(s["theta"]) + QuadReal(d0))
        m = int(trace // 1) + 1
    return json.loads(_core.identity_suite(_s(s), m, c0, d0, n, seed, functions, points, grid, tolerance))


def acceptance(seed=0, only=(), tolerance=1e-9):
    return json.loads(_core.run_acceptance(seed, list(only), tolerance))


def run_cli(args):
    """Runs the command line in-process; returns (exit code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
