"""Input parsing: model description files and exact rationals.

A model is described either by its maximal contact values or by an explicit
proximity chain; exactly one of the two keys must be present.  Verification
additionally accepts a fully explicit model whose claimed divisors are taken
at face value, so that tampered data can be fed to the check suite.

Rationals are written ``num/den`` or as plain integers; floating point
literals are rejected to keep every computation exact.
"""

from __future__ import annotations

import json
import re
from dataclasses import replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .errors import InputError, MulseriesError
from .model import ResolutionModel, model_from_contact, model_from_proximity

_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")
_CORPUS = re.compile(r"^\s*b0\s*<=\s*(\d+)\s*,\s*bg\s*<=\s*(\d+)\s*$")


def parse_rational(text: str | int) -> Fraction:
    """Parse ``num/den`` or an integer literal; floats are rejected."""
    if isinstance(text, int):
        return Fraction(text)
    match = _RATIONAL.match(str(text))
    if not match:
        raise InputError(
            f"rational {text!r} must be written as an integer or num/den"
        )
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) else 1
    if den == 0:
        raise InputError("rational denominator must not be zero")
    return Fraction(num, den)


def parse_corpus_spec(text: str) -> tuple[int, int]:
    """Parse bounds of the form ``b0<=4,bg<=40``."""
    match = _CORPUS.match(text)
    if not match:
        raise InputError(f"corpus spec {text!r} must look like 'b0<=4,bg<=40'")
    return int(match.group(1)), int(match.group(2))


def _satellite_map(raw: Mapping[str, Any]) -> dict[int, int]:
    out = {}
    for key, value in raw.items():
        try:
            out[int(key)] = int(value)
        except (TypeError, ValueError) as exc:
            raise InputError(f"satellite entry {key!r}: {value!r} is not an index") from exc
    return out


def model_from_source(data: Mapping[str, Any], allow_explicit: bool = False) -> ResolutionModel:
    """Build a model from a parsed input object.

    Accepts ``{"maximal_contact": [...]}`` or ``{"proximity": {"n": ...,
    "satellite": {...}}}``; with ``allow_explicit`` also ``{"model": ...}``
    where the claimed divisor vectors override the derived ones.
    """
    keys = {k for k in ("maximal_contact", "proximity", "model") if data.get(k) is not None}
    if "model" in keys and not allow_explicit:
        raise InputError("explicit model input is only accepted for verification")
    if len(keys) != 1:
        raise InputError(
            "input must contain exactly one of 'maximal_contact' or 'proximity'"
        )
    try:
        if "maximal_contact" in keys:
            values = data["maximal_contact"]
            if not isinstance(values, (list, tuple)) or not values:
                raise InputError("'maximal_contact' must be a non-empty list")
            return model_from_contact(int(v) for v in values)
        if "proximity" in keys:
            raw = data["proximity"]
            if not isinstance(raw, Mapping) or "n" not in raw:
                raise InputError("'proximity' must carry at least the chain size 'n'")
            return model_from_proximity(
                int(raw["n"]), _satellite_map(raw.get("satellite", {}))
            )
        return _explicit_model(data["model"])
    except MulseriesError:
        raise
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed input: {exc}") from exc


def _explicit_model(raw: Mapping[str, Any]) -> ResolutionModel:
    """Model with claimed divisor data substituted for the derived vectors."""
    if not isinstance(raw, Mapping) or "n" not in raw:
        raise InputError("'model' must carry at least the chain size 'n'")
    model = model_from_proximity(int(raw["n"]), _satellite_map(raw.get("satellite", {})))
    overrides = {}
    for key, attr in (
        ("valuation_divisor", "valuation_divisor"),
        ("canonical", "canonical"),
    ):
        if raw.get(key) is not None:
            claimed = tuple(int(v) for v in raw[key])
            if len(claimed) != model.n:
                raise InputError(f"'{key}' must have {model.n} entries")
            overrides[attr] = claimed
    return replace(model, **overrides) if overrides else model


def load_model_file(path: str | Path, allow_explicit: bool = False) -> ResolutionModel:
    """Read and build a model from a JSON input file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read input file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"input file {path} must contain a JSON object")
    return model_from_source(data, allow_explicit=allow_explicit)
