"""JSON wire formats: exact rationals as "p/q" strings, reports round-trip.

Floating-point literals in parameter input are refused outright; exactness
is the product, so every scalar travels as an integer or a "p/q" string.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping, Union

from .errors import FloatLiteralRefusedError, ParseError
from .family import ExtremalParams, MetricClass
from .ke import StabilityEntry
from .resolvability import ObstructionReport
from .roots import Interval, PositivityCertificate

PARAM_KEYS = ("n", "A", "B", "C", "D")


def parse_rational(value: Any, field: str) -> Fraction:
    """Exact scalar from JSON: int or 'p/q' / 'p' string; floats refused."""
    if isinstance(value, bool):
        raise ParseError("expected a rational, got a boolean", field)
    if isinstance(value, float):
        raise FloatLiteralRefusedError(
            "floating literals are refused; write the exact value as 'p/q'", field
        )
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {value!r} ({exc})", field) from None
    raise ParseError(f"expected a rational, got {type(value).__name__}", field)


def parse_params(source: Union[str, bytes, Mapping[str, Any]]) -> ExtremalParams:
    """Exact parameters from a JSON object {"n": 2, "A": "4/3", ...}."""
    if isinstance(source, (str, bytes)):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    else:
        data = source
    if not isinstance(data, Mapping):
        raise ParseError("parameter document must be a JSON object")
    unknown = set(data) - set(PARAM_KEYS)
    if unknown:
        raise ParseError(f"unknown fields: {', '.join(sorted(unknown))}")
    if "n" not in data:
        raise ParseError("missing complex dimension", "n")
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError("complex dimension must be a plain integer", "n")
    if n < 1:
        raise ParseError("complex dimension must be >= 1", "n")
    values = {}
    for key in "ABCD":
        values[key] = parse_rational(data.get(key, 0), key)
    return ExtremalParams(n=n, **values)


def params_to_json(params: ExtremalParams) -> dict:
    return params.to_json_dict()


# ---------------------------------------------------------------------------
# report round trips
# ---------------------------------------------------------------------------


def _opt_fraction(data: Mapping, key: str) -> Fraction | None:
    if key not in data or data[key] is None:
        return None
    return parse_rational(data[key], key)


def interval_from_json(data: Mapping) -> Interval:
    hi = data.get("hi")
    return Interval(
        parse_rational(data["lo"], "lo"),
        None if hi is None else parse_rational(hi, "hi"),
    )


def metric_class_from_json(data: Mapping) -> MetricClass:
    return MetricClass(
        tag=data["tag"],
        einstein_constant=_opt_fraction(data, "lambda"),
        scalar_constant=_opt_fraction(data, "s"),
        gamma1=_opt_fraction(data, "gamma1"),
        gamma2=_opt_fraction(data, "gamma2"),
    )


def obstruction_report_from_json(data: Mapping) -> ObstructionReport:
    return ObstructionReport(
        verdict=data["verdict"],
        domain=interval_from_json(data["domain"]),
        K=data["K"],
        k=data.get("k"),
        witness=_opt_fraction(data, "witness"),
        value=_opt_fraction(data, "value"),
    )


def certificate_to_json(cert: PositivityCertificate) -> dict:
    from .laurent import fraction_str

    data: dict = {"verdict": cert.verdict}
    if cert.witness is not None:
        data["witness"] = fraction_str(cert.witness)
        data["value"] = fraction_str(cert.value)
    return data


def certificate_from_json(data: Mapping) -> PositivityCertificate:
    return PositivityCertificate(
        verdict=data["verdict"],
        witness=_opt_fraction(data, "witness"),
        value=_opt_fraction(data, "value"),
    )


def stability_entry_from_json(data: Mapping) -> StabilityEntry:
    report = obstruction_report_from_json(data)
    return StabilityEntry(
        alpha=parse_rational(data["alpha"], "alpha"),
        einstein_constant=_opt_fraction(data, "lambda"),
        report=report,
    )


def dump_json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=False)
