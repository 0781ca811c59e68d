"""Python access to the fusionkit library.

Rings, modular data, groups, cochains and search specs are plain dicts in the
same layout as the JSON input files.
"""

import json

from ._fusionkit import (
    CapacityError,
    Error,
    InconsistencyError,
    InputError,
    NumericalError,
)
from . import _fusionkit as _core

__all__ = [
    "CapacityError",
    "Error",
    "InconsistencyError",
    "InputError",
    "NumericalError",
    "classify",
    "drinfeld_double",
    "enumerate_types",
    "graded_twist",
    "ring_invariants",
    "run_cli",
    "search",
    "validate_ring",
    "verify_modular",
]


def _call(fn, *docs, **kwargs):
    return json.loads(fn(*(json.dumps(d) for d in docs), **kwargs))


def validate_ring(ring):
    return _call(_core.validate_ring, ring)


def ring_invariants(ring):
    """FP dimensions, canonical key and universal grading."""
    return _call(_core.ring_invariants, ring)


def graded_twist(ring, cochain):
    return _call(_core.graded_twist, ring, cochain)


def verify_modular(data):
    """Checks, Gauss sums, T order and (when valid) the Verlinde ring."""
    return _call(_core.verify_modular, data)


def classify(p, q, shape):
    return json.loads(_core.classify(p, q, shape))


def enumerate_types(n):
    """Solutions of n = sum m_d d^2 as lists of (d, m_d)."""
    return _core.enumerate_types(n)


def search(spec, workers=1, node_cap=10_000_000):
    return _call(_core.search, spec, workers=workers, node_cap=node_cap)


def drinfeld_double(group):
    return _call(_core.drinfeld_double, group)


def run_cli(args):
    """Run the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
