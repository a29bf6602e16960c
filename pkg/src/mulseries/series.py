"""The generating series of multiplier-ideal quotient dimensions.

The series attaches to every jumping number the dimension of the quotient of
consecutive multiplier ideals.  It is computed two independent ways: by
direct enumeration with the colength oracle, and from a closed form built
out of two numerator polynomials, one swept by the kernel ``1/(1-t)`` and
one by ``1/(1-t) + t/(1-t)^2``.  Exact agreement of both routes is the
package's central cross-check.

Exponents are exact rationals; every exponent of a model's series is a
multiple of one over the common denominator collected from its stages.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Union

from .errors import UnknownFormat
from .jumping import _family_data, family_values, jumping_numbers, omega_values
from .model import ResolutionModel


def _fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class FractionalPolynomial:
    """Finite sum of integer multiples of rational powers of ``t``.

    Stored as exponent/coefficient pairs, sorted by exponent, with no zero
    coefficients kept.
    """

    terms: tuple[tuple[Fraction, int], ...] = ()

    def __post_init__(self) -> None:
        cleaned = tuple(
            (Fraction(e), int(c)) for e, c in sorted(self.terms) if c != 0
        )
        for e, _ in cleaned:
            if e <= 0:
                raise ValueError(f"exponent {e} must be positive")
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def from_dict(cls, mapping: dict[Fraction, int]) -> "FractionalPolynomial":
        return cls(tuple(mapping.items()))

    def coefficient(self, exponent: Fraction) -> int:
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(e for e, _ in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def numerators_over(self, denominator: int) -> list[list[int]]:
        """Term list with exponents as numerators over a fixed denominator."""
        out = []
        for e, c in self.terms:
            scaled = e * denominator
            if scaled.denominator != 1:
                raise ValueError(
                    f"exponent {e} is not a multiple of 1/{denominator}"
                )
            out.append([int(scaled), c])
        return out


@dataclass(frozen=True)
class ClosedFormSeries:
    """Closed form of the series: two numerator polynomials over one kernel each.

    The full series is ``simple`` swept by ``1/(1-t)`` plus ``omega`` swept
    by ``1/(1-t) + t/(1-t)^2``.  All exponents are multiples of one over
    ``denominator``; the omega exponents are the seed values of the terminal
    family, each at most 2.
    """

    simple: FractionalPolynomial
    omega: FractionalPolynomial
    denominator: int

    def __post_init__(self) -> None:
        for part in (self.simple, self.omega):
            part.numerators_over(self.denominator)  # raises if misaligned
        for e, _ in self.omega.terms:
            if e > 2:
                raise ValueError(f"omega exponent {e} exceeds 2")


def common_denominator(model: ResolutionModel) -> int:
    """Least common denominator of every exponent the model's series can use."""
    factors = [
        _family_data(model, i)[0] * _family_data(model, i)[1]
        for i in range(1, model.g_star + 2)
    ]
    return lcm(*factors)


def closed_form(model: ResolutionModel) -> ClosedFormSeries:
    """Closed form of the model's series.

    The simple part collects the sub-one members of every star family, with
    one unit of coefficient per family containing the exponent; the omega
    part collects the seed exponents of the terminal family.
    """
    simple: dict[Fraction, int] = {}
    for i in range(1, model.g_star + 1):
        for value, _ in family_values(model, i, Fraction(1)):
            if value < 1:
                simple[value] = simple.get(value, 0) + 1
    omega = {value: 1 for value in omega_values(model)}
    return ClosedFormSeries(
        simple=FractionalPolynomial.from_dict(simple),
        omega=FractionalPolynomial.from_dict(omega),
        denominator=common_denominator(model),
    )


def expand_truncated(cf: ClosedFormSeries, bound: Fraction) -> FractionalPolynomial:
    """Series expansion of the closed form up to ``bound``.

    ``1/(1-t)`` replicates each term at every non-negative integer shift;
    ``1/(1-t) + t/(1-t)^2`` does the same with the coefficient growing by
    one per shift.
    """
    if bound <= 0:
        raise ValueError("bound must be positive")
    out: dict[Fraction, int] = {}
    for e, c in cf.simple.terms:
        k = 0
        while e + k <= bound:
            out[e + k] = out.get(e + k, 0) + c
            k += 1
    for e, c in cf.omega.terms:
        k = 0
        while e + k <= bound:
            out[e + k] = out.get(e + k, 0) + c * (1 + k)
            k += 1
    return FractionalPolynomial.from_dict(out)


def oracle_series(model: ResolutionModel, bound: Fraction) -> FractionalPolynomial:
    """Series truncation computed purely from colengths of multiplier ideals."""
    return FractionalPolynomial(
        tuple(
            (record.value, record.dimension)
            for record in jumping_numbers(model, bound)
        )
    )


@dataclass(frozen=True)
class SeriesComparison:
    equal: bool
    exponent: Optional[Fraction] = None
    left: int = 0
    right: int = 0

    def describe(self) -> str:
        if self.equal:
            return "equal"
        return (
            f"first difference at t^{_fraction_str(self.exponent)}: "
            f"{self.left} versus {self.right}"
        )


def compare_series(
    a: FractionalPolynomial, b: FractionalPolynomial, bound: Fraction
) -> SeriesComparison:
    """Exact comparison of two truncations up to ``bound``."""
    exponents = sorted(
        {e for e, _ in a.terms if e <= bound} | {e for e, _ in b.terms if e <= bound}
    )
    for e in exponents:
        ca, cb = a.coefficient(e), b.coefficient(e)
        if ca != cb:
            return SeriesComparison(False, e, ca, cb)
    return SeriesComparison(True)


# --- rendering -------------------------------------------------------------

_SIMPLE_KERNEL_PLAIN = "1/(1-t)"
_OMEGA_KERNEL_PLAIN = "(1/(1-t) + t/(1-t)^2)"
_SIMPLE_KERNEL_LATEX = r"\frac{1}{1-t}"
_OMEGA_KERNEL_LATEX = r"\left(\frac{1}{1-t}+\frac{t}{(1-t)^2}\right)"


def _term_plain(e: Fraction, c: int) -> str:
    power = f"t^{e.numerator}" if e.denominator == 1 else f"t^({_fraction_str(e)})"
    return power if c == 1 else f"{c}*{power}"


def _term_latex(e: Fraction, c: int) -> str:
    power = f"t^{{{_fraction_str(e)}}}"
    return power if c == 1 else f"{c}{power}"


def _poly_plain(poly: FractionalPolynomial) -> str:
    if not poly:
        return "0"
    return " + ".join(_term_plain(e, c) for e, c in poly.terms)


def _poly_latex(poly: FractionalPolynomial) -> str:
    if not poly:
        return "0"
    return "+".join(_term_latex(e, c) for e, c in poly.terms)


def _factor(kernel: str, poly: FractionalPolynomial, latex: bool) -> str:
    text = _poly_latex(poly) if latex else _poly_plain(poly)
    bare = len(poly.terms) == 1 and poly.terms[0][1] == 1
    if bare:
        return f"{kernel}{text}" if latex else f"{kernel}*{text}"
    if latex:
        return f"{kernel}\\left({text}\\right)"
    return f"{kernel}*({text})"


def render(
    obj: Union[FractionalPolynomial, ClosedFormSeries], format: str = "plain"
) -> str:
    """Deterministic text form of a polynomial or a closed form.

    Formats: ``plain``, ``latex``, ``json``, ``csv``.  Zero terms are never
    printed; an empty polynomial renders as ``0``.
    """
    if format not in ("plain", "latex", "json", "csv"):
        raise UnknownFormat(f"unknown format {format!r}")
    if isinstance(obj, FractionalPolynomial):
        return _render_polynomial(obj, format)
    if isinstance(obj, ClosedFormSeries):
        return _render_closed_form(obj, format)
    raise UnknownFormat(f"cannot render {type(obj).__name__}")


def _render_polynomial(poly: FractionalPolynomial, format: str) -> str:
    if format == "plain":
        return _poly_plain(poly)
    if format == "latex":
        return _poly_latex(poly)
    if format == "csv":
        return "\n".join(f"{_fraction_str(e)},{c}" for e, c in poly.terms)
    return json.dumps(
        {"terms": [[_fraction_str(e), c] for e, c in poly.terms]}, sort_keys=True
    )


def _render_closed_form(cf: ClosedFormSeries, format: str) -> str:
    if format == "json":
        return json.dumps(
            {
                "denominator": cf.denominator,
                "simple": cf.simple.numerators_over(cf.denominator),
                "omega": cf.omega.numerators_over(cf.denominator),
            },
            sort_keys=True,
        )
    if format == "csv":
        lines = [f"simple,{_fraction_str(e)},{c}" for e, c in cf.simple.terms]
        lines += [f"omega,{_fraction_str(e)},{c}" for e, c in cf.omega.terms]
        return "\n".join(lines)
    latex = format == "latex"
    parts = []
    if cf.simple:
        kernel = _SIMPLE_KERNEL_LATEX if latex else _SIMPLE_KERNEL_PLAIN
        parts.append(_factor(kernel, cf.simple, latex))
    if cf.omega:
        kernel = _OMEGA_KERNEL_LATEX if latex else _OMEGA_KERNEL_PLAIN
        parts.append(_factor(kernel, cf.omega, latex))
    if not parts:
        return "0"
    return ("+" if latex else " + ").join(parts)
