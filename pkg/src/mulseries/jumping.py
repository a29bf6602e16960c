"""Jumping numbers of a simple complete ideal and their quotient dimensions.

The jumping numbers split into ``g* + 1`` arithmetic families, one per star
vertex of the dual graph plus one for the terminal divisor.  Family ``i``
(for ``i <= g*``) consists of the rationals ``p/e + q/b + r/e'`` built from
the stage data at star ``i``; the terminal family consists of ``p/e + q/b``
built from the last stage.  Membership of a jumping number in a family is
equivalent to the corresponding divisor *contributing* it, which is decided
by a cheap intersection-number test and, independently, by comparing two
pushforward ideals.  Quotient dimensions come from colength differences of
antinef representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

from .errors import NotMember, TheoremViolation
from .ideals import (
    CompleteIdeal,
    colength,
    floor_divisor,
    intersection_product,
    multiplier_ideal,
    quotient_dimension,
    shifted_pushforward,
    unit_ideal,
)
from .model import ResolutionModel

Witness = tuple[int, ...]


@dataclass(frozen=True)
class JumpingNumber:
    """One jumping number with its family memberships and dimension data.

    ``witnesses`` pairs each family index with the parameter tuples that
    produce the value: ``(p, q, r)`` for star families, ``(p, q)`` for the
    terminal family.  ``dimension`` is the dimension of the quotient of the
    previous multiplier ideal by the current one, computed from colengths.
    ``in_omega`` flags terminal-family members whose value is a seed
    exponent of the closed-form series (at most 2, with no member one below).
    """

    value: Fraction
    memberships: tuple[int, ...]
    witnesses: tuple[tuple[int, tuple[Witness, ...]], ...]
    contributing: tuple[int, ...]
    dimension: int
    in_omega: bool

    def witnesses_for(self, i: int) -> tuple[Witness, ...]:
        for fam, ws in self.witnesses:
            if fam == i:
                return ws
        return ()


@dataclass(frozen=True)
class StarWitness:
    """Base parameters of a star-family member: value = p/e + q/b + s/e' + r."""

    family: int
    p: int
    q: int
    s: int
    r: int


@dataclass(frozen=True)
class TerminalWitness:
    """Base parameters of a terminal-family member: value = (s + r*e)/e + q/b."""

    family: int
    s: int
    q: int
    r: int


def _family_data(model: ResolutionModel, i: int) -> tuple[int, int]:
    """(gcd, contact value) pair generating family ``i``."""
    if not 1 <= i <= model.g_star + 1:
        raise IndexError(f"family index {i} out of range 1..{model.g_star + 1}")
    if i <= model.g_star:
        return model.gcd_at(i - 1), model.contact_value(i)
    return model.gcd_at(model.g_star), model.contact_value(model.g_star + 1)


def family_values(
    model: ResolutionModel, i: int, bound: Fraction
) -> list[tuple[Fraction, tuple[Witness, ...]]]:
    """All members of family ``i`` up to ``bound``, with their witnesses.

    Equal values from different parameters are merged; the witness list
    keeps every parameter tuple.  Star families have unique witnesses, the
    terminal family may have several per value.
    """
    e, b = _family_data(model, i)
    out: dict[Fraction, list[Witness]] = {}
    if i <= model.g_star:
        e_next = model.gcd_at(i)
        cap = model.quotient(i) * b  # p*b + q*e <= n_i * b
        p = 1
        while p * b + e <= cap:
            q = 1
            while p * b + q * e <= cap:
                base = Fraction(p, e) + Fraction(q, b)
                r = 0
                while base + Fraction(r, e_next) <= bound:
                    out.setdefault(base + Fraction(r, e_next), []).append((p, q, r))
                    r += 1
                q += 1
            p += 1
    else:
        p = 1
        while Fraction(p, e) + Fraction(1, b) <= bound:
            q = 1
            while (value := Fraction(p, e) + Fraction(q, b)) <= bound:
                out.setdefault(value, []).append((p, q))
                q += 1
            p += 1
    return sorted((v, tuple(ws)) for v, ws in out.items())


def log_canonical_threshold(model: ResolutionModel) -> Fraction:
    """Smallest jumping number: one over the multiplicity plus one over the
    second contact value."""
    return Fraction(1, model.contact_value(0)) + Fraction(1, model.contact_value(1))


def omega_values(model: ResolutionModel) -> tuple[Fraction, ...]:
    """Seed exponents of the terminal family: members at most 2 whose value
    minus one is not itself a member.  They biject with the full parameter
    box of the terminal stage."""

    def compute() -> tuple[Fraction, ...]:
        e, b = _family_data(model, model.g_star + 1)
        values = sorted(
            Fraction(s, e) + Fraction(q, b)
            for s in range(1, e + 1)
            for q in range(1, b + 1)
        )
        for v in values:
            if v > 2 or (v > 1 and _terminal_member(model, v - 1) is not None):
                raise TheoremViolation(f"seed exponent {v} violates the box bijection")
        return tuple(values)

    return model.cache(("omega",), compute)


def _terminal_member(model: ResolutionModel, value: Fraction) -> Optional[TerminalWitness]:
    """Decompose a terminal-family member; None when it is no member."""
    if value <= 0:
        return None
    e, b = _family_data(model, model.g_star + 1)
    found = None
    for q in range(1, b + 1):
        p_part = (value - Fraction(q, b)) * e
        if p_part.denominator == 1 and p_part >= 1:
            if found is not None:
                raise TheoremViolation(
                    f"terminal decomposition of {value} is not unique"
                )
            s_total = int(p_part)
            s = (s_total - 1) % e + 1
            found = TerminalWitness(model.g_star + 1, s, q, (s_total - s) // e)
    return found


def _star_member(model: ResolutionModel, i: int, value: Fraction) -> Optional[StarWitness]:
    """Decompose a star-family member over the base box; None if no member."""
    e, b = _family_data(model, i)
    e_next = model.gcd_at(i)
    cap = model.quotient(i) * b
    found = None
    p = 1
    while p * b + e <= cap:
        q = 1
        while p * b + q * e <= cap:
            for s in range(e_next):
                base = Fraction(p, e) + Fraction(q, b) + Fraction(s, e_next)
                diff = value - base
                if diff.denominator == 1 and diff >= 0:
                    if found is not None:
                        raise TheoremViolation(
                            f"family {i} decomposition of {value} is not unique"
                        )
                    found = StarWitness(i, p, q, s, int(diff))
            q += 1
        p += 1
    return found


def decompose_membership(
    model: ResolutionModel, i: int, iota: Fraction
) -> StarWitness | TerminalWitness:
    """Canonical base parameters and period shift of a family member.

    Star families decompose as a base triple with value at most one plus an
    integer shift; the terminal family as a box pair plus a multiple of its
    gcd.  Raises :class:`NotMember` when ``iota`` lies outside family ``i``.
    """
    if not 1 <= i <= model.g_star + 1:
        raise IndexError(f"family index {i} out of range 1..{model.g_star + 1}")
    witness = (
        _star_member(model, i, iota)
        if i <= model.g_star
        else _terminal_member(model, iota)
    )
    if witness is None:
        raise NotMember(f"{iota} is not in family {i}")
    return witness


def witness_base_value(
    model: ResolutionModel, witness: StarWitness | TerminalWitness
) -> Fraction:
    """Value of the base parameters of a decomposition, before period shifts."""
    if isinstance(witness, StarWitness):
        i = witness.family
        return (
            Fraction(witness.p, model.gcd_at(i - 1))
            + Fraction(witness.q, model.contact_value(i))
            + Fraction(witness.s, model.gcd_at(i))
        )
    e, b = _family_data(model, model.g_star + 1)
    return Fraction(witness.s, e) + Fraction(witness.q, b)


def memberships(model: ResolutionModel, iota: Fraction) -> tuple[int, ...]:
    """Family indices containing ``iota`` (empty when not a jumping number)."""
    out = []
    for i in range(1, model.g_star + 2):
        witness = (
            _star_member(model, i, iota)
            if i <= model.g_star
            else _terminal_member(model, iota)
        )
        if witness is not None:
            out.append(i)
    return tuple(out)


def is_candidate(model: ResolutionModel, j: int, iota: Fraction) -> bool:
    """True when ``iota`` times the valuation of divisor ``j`` is integral."""
    if not 1 <= j <= model.n:
        raise IndexError(f"divisor index {j} out of range 1..{model.n}")
    return (iota * model.valuation_divisor[j - 1]).denominator == 1


def contributes(
    model: ResolutionModel,
    j: int,
    iota: Fraction,
    criterion: Literal["intersection", "ideal"] = "intersection",
) -> bool:
    """Whether divisor ``j`` contributes the jumping number ``iota``.

    Both criteria require candidacy.  The intersection criterion asks the
    floor divisor to meet ``E_j`` in at least 2; the ideal criterion asks the
    pushforward twisted by ``E_j`` to strictly contain the multiplier ideal.
    The two always agree.
    """
    if not is_candidate(model, j, iota):
        return False
    if criterion == "intersection":
        dot = intersection_product(model, floor_divisor(model, iota), j)
        return -dot >= 2
    if criterion == "ideal":
        twisted = shifted_pushforward(model, iota, {j})
        return twisted.divisor != multiplier_ideal(model, iota).divisor
    raise ValueError(f"unknown contribution criterion {criterion!r}")


def contributing_divisors(model: ResolutionModel, iota: Fraction) -> tuple[int, ...]:
    """Divisors contributing ``iota``: exactly the stars (or terminal) of the
    families containing it.

    Sweeps every exceptional prime with the intersection criterion and
    cross-checks the result against the family memberships; a mismatch
    raises :class:`TheoremViolation`.
    """
    member_set = {
        model.contributors[i - 1] for i in memberships(model, iota)
    }
    swept = {
        j for j in range(1, model.n + 1) if contributes(model, j, iota)
    }
    if member_set != swept:
        raise TheoremViolation(
            f"contributors of {iota}: memberships give {sorted(member_set)}, "
            f"intersection sweep gives {sorted(swept)}"
        )
    return tuple(sorted(member_set))


def previous_jumping_number(model: ResolutionModel, iota: Fraction) -> Optional[Fraction]:
    """Largest jumping number below ``iota``; None below the threshold."""
    best: Optional[Fraction] = None
    for i in range(1, model.g_star + 2):
        for value, _ in family_values(model, i, iota):
            if value < iota and (best is None or value > best):
                best = value
    return best


def predecessor_ideal(
    model: ResolutionModel, iota: Fraction, check: bool = True
) -> CompleteIdeal:
    """Multiplier ideal just below a jumping number, from the jump itself.

    Computed as the pushforward twisted by every contributing divisor.  With
    ``check`` the result is compared against the multiplier ideal at the
    previous jumping number (the unit ideal below the threshold); a mismatch
    raises :class:`TheoremViolation`.
    """
    member = memberships(model, iota)
    if not member:
        raise NotMember(f"{iota} is not a jumping number")
    extra = {model.contributors[i - 1] for i in member}
    result = shifted_pushforward(model, iota, extra)
    if check:
        prev = previous_jumping_number(model, iota)
        expected = unit_ideal(model) if prev is None else multiplier_ideal(model, prev)
        if result.divisor != expected.divisor:
            raise TheoremViolation(
                f"predecessor of {iota}: twist gives {result.divisor}, "
                f"previous jump gives {expected.divisor}"
            )
    return result


def family_dimension(model: ResolutionModel, i: int, iota: Fraction) -> int:
    """Dimension contributed by family ``i`` at its member ``iota``:
    colength drop from twisting by the family's divisor."""
    if not 1 <= i <= model.g_star + 1:
        raise IndexError(f"family index {i} out of range 1..{model.g_star + 1}")
    twisted = shifted_pushforward(model, iota, {model.contributors[i - 1]})
    return colength(model, multiplier_ideal(model, iota)) - colength(model, twisted)


def total_dimension(model: ResolutionModel, iota: Fraction, check: bool = True) -> int:
    """Dimension of the quotient of consecutive multiplier ideals at ``iota``.

    With ``check`` the colength difference is compared to the sum of the
    per-family dimensions; a mismatch raises :class:`TheoremViolation`.
    """
    member = memberships(model, iota)
    if not member:
        raise NotMember(f"{iota} is not a jumping number")
    current = multiplier_ideal(model, iota)
    total = quotient_dimension(model, current, predecessor_ideal(model, iota, check=check))
    if check:
        parts = sum(family_dimension(model, i, iota) for i in member)
        if parts != total:
            raise TheoremViolation(
                f"dimension at {iota}: families sum to {parts}, quotient is {total}"
            )
    return total


def jumping_numbers(model: ResolutionModel, bound: Fraction) -> list[JumpingNumber]:
    """All jumping numbers up to ``bound`` as fully populated records.

    Values are merged across families; dimensions come from the colength
    oracle on consecutive multiplier ideals, independent of any closed form.
    """
    if bound <= 0:
        raise ValueError("bound must be positive")

    def compute() -> list[JumpingNumber]:
        merged: dict[Fraction, dict[int, tuple[Witness, ...]]] = {}
        for i in range(1, model.g_star + 2):
            for value, witnesses in family_values(model, i, bound):
                merged.setdefault(value, {})[i] = witnesses
        omega = set(omega_values(model))
        records = []
        previous_colength = 0
        for value in sorted(merged):
            families = merged[value]
            current = colength(model, multiplier_ideal(model, value))
            record = JumpingNumber(
                value=value,
                memberships=tuple(sorted(families)),
                witnesses=tuple(sorted(families.items())),
                contributing=tuple(
                    sorted(model.contributors[i - 1] for i in families)
                ),
                dimension=current - previous_colength,
                in_omega=value in omega,
            )
            records.append(record)
            previous_colength = current
        return records

    return model.cache(("jumps", bound), compute)
