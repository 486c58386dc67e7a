"""JSON-ready encoding of exact results.

Every rational value is serialized as a ``"num/den"`` string; a ``display``
companion gives a 10-significant-digit decimal for human eyes only and must
never be parsed back.  Integer lattice coordinates are emitted as plain JSON
integers.  All containers are emitted in deterministic order so reports are
byte-identical across runs.
"""

from __future__ import annotations

import json
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any

from .core import Point
from .models import EfficiencyResult

__all__ = [
    "fraction_str",
    "display_decimal",
    "encode_rational",
    "encode_point",
    "encode_result",
    "dumps_report",
]


def fraction_str(value: Fraction) -> str:
    """Canonical ``num/den`` form, including a denominator of 1."""
    return f"{value.numerator}/{value.denominator}"


def display_decimal(value: Fraction, digits: int = 10) -> str:
    """Decimal rendering to ``digits`` significant digits; display only."""
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def encode_rational(value: Fraction) -> dict[str, str]:
    return {"exact": fraction_str(value), "display": display_decimal(value)}


def _coordinate(value: Fraction) -> Any:
    if value.denominator == 1:
        return int(value)
    return encode_rational(value)


def encode_point(point: Point) -> dict[str, list[Any]]:
    return {
        "inputs": [_coordinate(v) for v in point.inputs],
        "outputs": [_coordinate(v) for v in point.outputs],
    }


def encode_points(points) -> list[dict[str, list[Any]]]:
    return [encode_point(p) for p in sorted(points)]


def encode_result(result: EfficiencyResult) -> dict[str, Any]:
    encoded: dict[str, Any] = {
        "dmu": result.dmu,
        "model": result.model.kind,
        "rts": result.model.rts,
        "orientation": result.model.orientation,
        "weights": [encode_rational(w) for w in result.weights],
        "targets": encode_point(result.targets),
        "input_slacks": [encode_rational(s) for s in result.input_slacks],
        "output_slacks": [encode_rational(s) for s in result.output_slacks],
    }
    if result.theta is not None:
        encoded["theta"] = encode_rational(result.theta)
    if result.total_slack is not None:
        encoded["total_slack"] = encode_rational(result.total_slack)
    if result.dominated_by:
        encoded["dominated_by"] = encode_points(result.dominated_by)
    if result.alternates:
        encoded["alternates"] = [
            {
                "weights": [encode_rational(w) for w in alt.weights],
                "input_slacks": [encode_rational(s) for s in alt.input_slacks],
                "output_slacks": [encode_rational(s) for s in alt.output_slacks],
            }
            for alt in result.alternates
        ]
    return encoded


def dumps_report(report: dict[str, Any]) -> str:
    """Deterministic JSON text for a report dictionary."""
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
