"""Rational points of bounded height on the quintic del Pezzo surface.

Thin wrappers over the native module: coordinates are plain tuples, exact
rationals come back as fractions.Fraction, and report-style results as dicts.
"""

import json

from . import _core
from ._core import (
    alpha,
    count,
    cumulative_counts,
    enumerate_points,
    height,
    in_U,
    is_valid,
    moebius_identity,
    normalize,
    parameterize,
    polytope_volume,
    predicted_count,
    project,
    theta1_partial,
    theta_euler,
    theta_truncated,
    torsor_height,
    weyl_involution,
)

__all__ = [
    "alpha",
    "count",
    "cumulative_counts",
    "enumerate_points",
    "height",
    "in_U",
    "is_valid",
    "moebius_identity",
    "normalize",
    "omega_infinity",
    "parameterize",
    "polytope_volume",
    "predicted_count",
    "project",
    "run",
    "theta1",
    "theta1_partial",
    "theta_euler",
    "theta_truncated",
    "torsor_height",
    "verify",
    "weyl_involution",
]


def theta1(P=1_000_000):
    return json.loads(_core.theta1(P))


def omega_infinity(W=32.0, tolerance=1e-8, depth=4):
    return json.loads(_core.omega_infinity(W, tolerance, depth))


def verify(suite="all", workers=0):
    return json.loads(_core.verify(suite, workers))


def run(subcommand, heights=(100,), format="json", **options):
    """Same as the dp5 command line; returns (exit status, parsed JSON or CSV text)."""
    status, text = _core.run(subcommand, list(heights), format=format, **options)
    return status, json.loads(text) if format == "json" else text
