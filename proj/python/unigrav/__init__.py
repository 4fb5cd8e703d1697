"""Unified-potential field tensors, test-particle dynamics and experiments."""

import json as _json

from . import _core
from ._core import (
    UnigravError,
    coulomb_newton_lambda,
    cyclotron_check,
    invariant_suite,
    light_deflection,
    perihelion_precession,
    rotating_frame_check,
    run_cli,
)

__all__ = [
    "UnigravError",
    "coulomb_newton_lambda",
    "cyclotron_check",
    "integrate",
    "invariant_suite",
    "lambda_",
    "light_deflection",
    "perihelion_precession",
    "rotating_frame_check",
    "run_cli",
    "tensors",
]


def _as_json(doc):
    return doc if isinstance(doc, str) else _json.dumps(doc)


def tensors(field, event, velocity=(0.0, 0.0, 0.0), units="scaled"):
    """Tensors at one event; `field` is a dict or JSON text, e.g. {"kind": "point_mass", "M": 1e-3}."""
    return _core.tensors(_as_json(field), list(event), list(velocity), units)


def integrate(scenario):
    """Trajectory table (tau, x1, x2, x3, t, v1, v2, v3, normDrift) for a scenario dict or JSON text."""
    return _core.integrate(_as_json(scenario))


def lambda_(units="scaled"):
    """Charge/mass coupling sqrt(4 pi eps0 gamma)."""
    return _core.lambda_(units)
