"""Complete ideals as antinef divisors on the exceptional lattice.

A complete ideal supported on the exceptional locus of the resolution has a
canonical representative: the least *antinef* divisor (non-positive product
against every exceptional prime) that dominates any divisor cutting out the
ideal.  The representative is computed by unloading, the classical discharge
loop that bumps one coefficient at a time.  Colengths come from the
Hoskin-Deligne formula, which turns the point multiplicities of the
representative into the dimension of the quotient ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Callable, Iterable, Optional, Sequence

from .errors import InconsistentModel, NegativeMultiplicity, NotNested
from .model import ResolutionModel

Divisor = tuple[int, ...]

# Pivot rule for unloading: picks the next coefficient to bump among the
# indices (0-based) with positive intersection product.
PivotRule = Callable[[Sequence[int]], int]


@dataclass(frozen=True)
class CompleteIdeal:
    """Antinef representative of a complete ideal.

    ``divisor`` holds the coefficients in the exceptional basis and
    ``multiplicities`` the induced multiplicities at the blowup centers.
    """

    divisor: Divisor
    multiplicities: Divisor

    @property
    def colength(self) -> int:
        return sum(m * (m + 1) // 2 for m in self.multiplicities)

    @property
    def is_unit(self) -> bool:
        return not any(self.divisor)

    def contains(self, other: "CompleteIdeal") -> bool:
        """Ideal inclusion: smaller divisors cut out larger ideals."""
        return all(s <= o for s, o in zip(self.divisor, other.divisor))


def point_multiplicities(model: ResolutionModel, divisor: Sequence[int]) -> Divisor:
    """Apply the proximity matrix: multiplicity at each center of the cluster."""
    prox = model.proximity
    out = []
    for j in range(1, model.n + 1):
        m = divisor[j - 1] - sum(divisor[i - 1] for i in prox.proximate_targets(j))
        out.append(m)
    return tuple(out)


def _ideal_from_antinef(model: ResolutionModel, divisor: Divisor) -> CompleteIdeal:
    mults = point_multiplicities(model, divisor)
    if any(m < 0 for m in mults):
        raise NegativeMultiplicity(
            f"divisor {divisor} has negative point multiplicities {mults}"
        )
    return CompleteIdeal(divisor, mults)


def unit_ideal(model: ResolutionModel) -> CompleteIdeal:
    zero = (0,) * model.n
    return CompleteIdeal(zero, zero)


def intersection_product(model: ResolutionModel, divisor: Sequence[int], j: int) -> int:
    """Product of the divisor with the exceptional prime ``j`` (1-based)."""
    row = model.intersection[j - 1]
    return sum(c * r for c, r in zip(divisor, row))


def is_antinef(model: ResolutionModel, divisor: Sequence[int]) -> bool:
    return all(intersection_product(model, divisor, j) <= 0 for j in range(1, model.n + 1))


def antinef_closure(
    model: ResolutionModel,
    divisor: Sequence[int],
    pivot: Optional[PivotRule] = None,
) -> CompleteIdeal:
    """Least antinef divisor above ``divisor`` (negatives clamped to zero).

    Unloading: while some exceptional prime has positive product, add it to
    the divisor.  The default pivot takes the lowest index; any pivot rule
    reaches the same closure.  Clamping is sound because every antinef
    divisor here is effective, so the least antinef above ``divisor`` and
    above its positive part coincide.
    """
    coeffs = [max(0, int(c)) for c in divisor]
    if len(coeffs) != model.n:
        raise InconsistentModel(
            f"divisor length {len(coeffs)} does not match chain size {model.n}"
        )
    G = model.intersection
    n = model.n
    products = [intersection_product(model, coeffs, j) for j in range(1, n + 1)]
    limit = n * (max(coeffs, default=0) + n) ** 2
    steps = 0
    while True:
        positive = [j for j in range(n) if products[j] > 0]
        if not positive:
            break
        j = positive[0] if pivot is None else pivot(positive)
        coeffs[j] += 1
        col = G[j]
        for t in range(n):
            products[t] += col[t]
        steps += 1
        if steps > limit:
            raise InconsistentModel("unloading failed to terminate within its bound")
    return _ideal_from_antinef(model, tuple(coeffs))


def floor_divisor(model: ResolutionModel, c: Fraction) -> Divisor:
    """Coefficientwise floor of ``c`` times the valuation divisor."""
    return tuple(floor(c * a) for a in model.valuation_divisor)


def floor_predecessor_divisor(model: ResolutionModel, iota: Fraction) -> Divisor:
    """Floor of ``(iota - epsilon)`` times the valuation divisor, exactly.

    Integral entries drop by one, the rest keep their floor; this decides
    jumps without sweeping an actual epsilon.
    """
    if iota <= 0:
        raise ValueError("exponent must be positive")
    out = []
    for a in model.valuation_divisor:
        x = iota * a
        out.append(int(x) - 1 if x.denominator == 1 else floor(x))
    return tuple(out)


def multiplier_ideal(model: ResolutionModel, c: Fraction) -> CompleteIdeal:
    """Multiplier ideal at exponent ``c`` as its antinef representative.

    Closure of the floor divisor shifted down by the relative canonical
    divisor; below the log-canonical threshold this is the unit ideal.
    """
    if c <= 0:
        raise ValueError("exponent must be positive")
    floors = floor_divisor(model, c)

    def compute() -> CompleteIdeal:
        raw = tuple(f - k for f, k in zip(floors, model.canonical))
        return antinef_closure(model, raw)

    return model.cache(("multiplier", floors), compute)


def shifted_pushforward(
    model: ResolutionModel, iota: Fraction, extra: Iterable[int]
) -> CompleteIdeal:
    """Pushforward with selected exceptional primes added to the twist.

    Antinef closure of ``floor(iota * D) - K - sum(E_j for j in extra)``;
    with an empty ``extra`` this is the multiplier ideal itself.
    """
    extras = frozenset(int(j) for j in extra)
    if not extras:
        return multiplier_ideal(model, iota)
    if not extras <= set(range(1, model.n + 1)):
        raise IndexError(f"divisor indices {sorted(extras)} out of range 1..{model.n}")
    floors = floor_divisor(model, iota)

    def compute() -> CompleteIdeal:
        raw = tuple(
            f - k - (1 if j + 1 in extras else 0)
            for j, (f, k) in enumerate(zip(floors, model.canonical))
        )
        return antinef_closure(model, raw)

    return model.cache(("shifted", floors, extras), compute)


def colength(model: ResolutionModel, ideal: CompleteIdeal) -> int:
    """Codimension of the ideal in the local ring (Hoskin-Deligne)."""
    if len(ideal.divisor) != model.n:
        raise InconsistentModel("ideal does not belong to this model")
    if any(m < 0 for m in ideal.multiplicities):
        raise NegativeMultiplicity(f"invalid representative {ideal.divisor}")
    return ideal.colength


def quotient_dimension(
    model: ResolutionModel, inner: CompleteIdeal, outer: CompleteIdeal
) -> int:
    """Vector-space dimension of ``outer / inner`` for nested ideals."""
    if any(i < o for i, o in zip(inner.divisor, outer.divisor)):
        raise NotNested(
            f"{inner.divisor} is not contained in {outer.divisor}"
        )
    return colength(model, inner) - colength(model, outer)
