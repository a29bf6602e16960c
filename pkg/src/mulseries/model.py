"""Combinatorial resolution data of a simple complete ideal at a smooth surface point.

A simple complete ideal of the local ring at a smooth point of a complex
surface corresponds to a divisorial valuation, and that valuation is cut out
by the last exceptional divisor of a finite chain of point blowups.  The
whole chain is encoded by its *proximity* relation: every center after the
first sits on the divisor created immediately before it, and possibly on the
strict transform of one earlier divisor (a *satellite* point).  From the
proximity matrix alone, exact integer linear algebra recovers

* the intersection matrix of the exceptional divisors,
* the relative canonical divisor,
* the divisor cut out by the ideal (the valuation vector),
* the dual graph with its star and dead vertices, and
* the maximal contact values (Zariski exponents) that classify the valuation.

The alternative presentation by maximal contact values is converted to a
proximity chain through the classical Euclidean-algorithm description of the
multiplicity sequence; the conversion is verified by a mandatory round trip.

Everything here is immutable and uses arbitrary-precision integers only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Mapping

from .errors import InconsistentProximity, InvalidContactSequence


@dataclass(frozen=True)
class MaximalContactSequence:
    """Maximal contact values (Zariski exponents) presenting a valuation.

    ``values[0]`` is the multiplicity of the valuation, the intermediate
    entries are the values of the curvettes at the dead vertices of the dual
    graph, and the last entry is the value of a general element.
    """

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) < 2:
            raise InvalidContactSequence("a contact sequence needs at least two values")
        if any(v < 1 for v in values):
            raise InvalidContactSequence("contact values must be positive integers")
        g = len(values) - 2
        gcds = [values[0]]
        for i in range(1, g + 1):
            gcds.append(gcd(gcds[-1], values[i]))
            if gcds[i] >= gcds[i - 1]:
                raise InvalidContactSequence(
                    f"gcd chain must strictly decrease: gcd through entry {i} "
                    f"is {gcds[i]}, previous was {gcds[i - 1]}"
                )
        if gcds[g] != 1:
            raise InvalidContactSequence(
                f"gcd of all but the terminal value must be 1, got {gcds[g]}"
            )
        if g >= 1:
            if values[1] <= values[0]:
                raise InvalidContactSequence(
                    "second value must exceed the multiplicity for a singular valuation"
                )
            for i in range(1, g):
                n_i = gcds[i - 1] // gcds[i]
                if values[i + 1] <= n_i * values[i]:
                    raise InvalidContactSequence(
                        f"entry {i + 1} must exceed {n_i} times entry {i} "
                        f"({values[i + 1]} <= {n_i * values[i]})"
                    )
            n_g = gcds[g - 1] // gcds[g]
            if values[g + 1] < n_g * values[g]:
                raise InvalidContactSequence(
                    f"terminal value must be at least {n_g} times entry {g} "
                    f"({values[g + 1]} < {n_g * values[g]})"
                )
        # g == 0 forces multiplicity 1; the terminal value is free (>= 1).

    @property
    def g(self) -> int:
        """Number of non-terminal stages (one less than the last value index)."""
        return len(self.values) - 2

    @cached_property
    def gcds(self) -> tuple[int, ...]:
        """Running gcds of the non-terminal values."""
        out = [self.values[0]]
        for i in range(1, self.g + 1):
            out.append(gcd(out[-1], self.values[i]))
        return tuple(out)

    def gcd_at(self, i: int) -> int:
        """Running gcd at index ``i``, extended by 1 past the last stage."""
        return self.gcds[i] if i <= self.g else 1

    def quotient(self, i: int) -> int:
        """Ratio of consecutive running gcds, defined for 1 <= i <= g + 1."""
        return self.gcd_at(i - 1) // self.gcd_at(i)

    @property
    def terminal_is_satellite(self) -> bool:
        """True when the last blowup center is a satellite point."""
        g = self.g
        if g == 0:
            return False
        return self.values[g + 1] == self.quotient(g) * self.values[g]


@dataclass(frozen=True)
class ProximityStructure:
    """Proximity relation of a totally ordered chain of blowup centers.

    Center ``j`` (1-based) is always proximate to divisor ``j - 1``; the
    ``satellite`` pairs record the single optional extra target ``i < j - 1``.
    """

    size: int
    satellite: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.size < 1:
            raise InconsistentProximity("a chain needs at least one center")
        pairs = tuple(sorted((int(j), int(i)) for j, i in self.satellite))
        object.__setattr__(self, "satellite", pairs)
        seen: dict[int, int] = {}
        for j, i in pairs:
            if j in seen:
                raise InconsistentProximity(
                    f"center {j} would be proximate to three divisors"
                )
            if not (3 <= j <= self.size):
                raise InconsistentProximity(f"satellite center {j} out of range")
            if not (1 <= i <= j - 2):
                raise InconsistentProximity(
                    f"satellite target {i} invalid for center {j}"
                )
            # p_j can only sit on the strict transform of E_i if p_{j-1} did.
            if i != j - 2 and seen.get(j - 1) != i:
                raise InconsistentProximity(
                    f"center {j} cannot reach divisor {i}: center {j - 1} is not on it"
                )
            seen[j] = i

    @classmethod
    def from_map(cls, size: int, satellite: Mapping[int, int] | None = None) -> "ProximityStructure":
        return cls(size, tuple((satellite or {}).items()))

    @cached_property
    def satellite_map(self) -> dict[int, int]:
        return dict(self.satellite)

    def proximate_targets(self, j: int) -> tuple[int, ...]:
        """Divisors the center ``j`` is proximate to."""
        if j <= 1:
            return ()
        extra = self.satellite_map.get(j)
        return (j - 1,) if extra is None else (extra, j - 1)

    def truncate(self, size: int) -> "ProximityStructure":
        return ProximityStructure(
            size, tuple(p for p in self.satellite if p[0] <= size)
        )


@dataclass(frozen=True, eq=False)
class ResolutionModel:
    """Full resolution data derived from a proximity chain.

    Divisor indices are 1-based throughout; coefficient vectors are tuples
    indexed from 0, so entry ``j - 1`` belongs to divisor ``j``.
    """

    proximity: ProximityStructure
    contact: MaximalContactSequence
    intersection: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]
    valuation_divisor: tuple[int, ...]
    multiplicities: tuple[int, ...]
    dual_graph: tuple[tuple[int, ...], ...]
    star_vertices: tuple[int, ...]
    dead_vertices: tuple[int, ...]
    subtrees: tuple[tuple[int, ...], ...]
    contributors: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_cache", {})

    @property
    def n(self) -> int:
        return self.proximity.size

    @property
    def g(self) -> int:
        return self.contact.g

    @property
    def g_star(self) -> int:
        return len(self.star_vertices)

    def gcd_at(self, i: int) -> int:
        return self.contact.gcd_at(i)

    def quotient(self, i: int) -> int:
        return self.contact.quotient(i)

    def contact_value(self, i: int) -> int:
        return self.contact.values[i]

    @property
    def terminal_is_satellite(self) -> bool:
        return self.contact.terminal_is_satellite

    def cache(self, key, compute):
        """Memo for derived immutable data; idempotent writes only."""
        cache = self.__dict__.setdefault("_cache", {})
        if key not in cache:
            cache[key] = compute()
        return cache[key]


def _euclid_block(x: int, y: int) -> list[int]:
    """Multiplicities contributed by one Euclidean run: each division step
    ``r_{k-1} = q_k r_k + r_{k+1}`` emits ``q_k`` copies of ``r_k``."""
    out: list[int] = []
    a, b = x, y
    while b:
        q, r = divmod(a, b)
        out.extend([b] * q)
        a, b = b, r
    return out


def _multiplicity_sequence(seq: MaximalContactSequence) -> list[int]:
    """Multiplicity sequence of the blowup chain realizing ``seq``."""
    values = seq.values
    g = seq.g
    if values[0] == 1:
        return [1] * values[-1]
    # Characteristic exponents: same first two entries, then the excesses
    # over the semigroup recursion.
    beta = [values[0], values[1]]
    for i in range(1, g):
        beta.append(values[i + 1] - seq.quotient(i) * values[i] + beta[i])
    mults: list[int] = []
    for i in range(1, g + 1):
        if i == 1:
            mults.extend(_euclid_block(beta[1], beta[0]))
        else:
            mults.extend(_euclid_block(beta[i] - beta[i - 1], seq.gcd_at(i - 1)))
    # Trailing free points raise the terminal value by one each.
    mults.extend([1] * (values[g + 1] - seq.quotient(g) * values[g]))
    return mults


def _proximity_from_multiplicities(m: list[int]) -> ProximityStructure:
    """Reconstruct the chain from its multiplicity sequence.

    Points proximate to center ``i`` are the consecutive centers whose
    multiplicities sum to ``m_i``; center ``j`` therefore carries an extra
    proximity to ``i < j - 1`` exactly while that sum is still short.
    """
    n = len(m)
    prefix = [0]
    for v in m:
        prefix.append(prefix[-1] + v)
    satellite: dict[int, int] = {}
    for j in range(3, n + 1):
        extras = [
            i
            for i in range(1, j - 1)
            if prefix[j - 1] - prefix[i] < m[i - 1]
        ]
        if len(extras) > 1:
            raise InvalidContactSequence(
                "multiplicity sequence is not realizable by a surface chain"
            )
        if extras:
            satellite[j] = extras[0]
    return ProximityStructure.from_map(n, satellite)


def build_resolution(prox: ProximityStructure) -> ResolutionModel:
    """Derive the complete resolution data of a proximity chain.

    Solves the unimodular triangular systems for the multiplicity vector,
    the valuation divisor and the relative canonical divisor, then reads the
    dual graph and the maximal contact values off the results.
    """
    n = prox.size
    targets = [prox.proximate_targets(j) for j in range(1, n + 1)]

    # Proximity matrix rows: P[j][j] = 1, P[j][i] = -1 for proximate targets.
    # P is unimodular lower triangular, so every solve below stays integral.
    proximate_to: list[list[int]] = [[] for _ in range(n + 1)]
    for j in range(1, n + 1):
        for i in targets[j - 1]:
            proximate_to[i].append(j)

    # P^T m = e_n by back substitution: m_i = sum of m over centers proximate to i.
    m = [0] * (n + 1)
    m[n] = 1
    for i in range(n - 1, 0, -1):
        m[i] = sum(m[j] for j in proximate_to[i])
        if m[i] <= 0:
            raise InconsistentProximity(f"multiplicity at center {i} is not positive")

    # P a = m and P kappa = 1 by forward substitution.
    a = [0] * (n + 1)
    kappa = [0] * (n + 1)
    for j in range(1, n + 1):
        a[j] = m[j] + sum(a[i] for i in targets[j - 1])
        kappa[j] = 1 + sum(kappa[i] for i in targets[j - 1])

    # G = -P^T P: self-intersections from proximity counts, edges between a
    # divisor and the last center proximate to it.
    G = [[0] * n for _ in range(n)]
    for j in range(1, n + 1):
        G[j - 1][j - 1] = -1 - len(proximate_to[j])
    for i in range(1, n + 1):
        if proximate_to[i]:
            j = max(proximate_to[i])
            G[i - 1][j - 1] = 1
            G[j - 1][i - 1] = 1

    adjacency = tuple(
        tuple(j + 1 for j in range(n) if j != i and G[i][j] > 0) for i in range(n)
    )
    degrees = [len(nbrs) for nbrs in adjacency]
    if any(d > 3 for d in degrees):
        raise InconsistentProximity("dual graph vertex of degree above three")
    stars = tuple(i + 1 for i in range(n) if degrees[i] == 3)
    dead = tuple(i + 1 for i in range(n) if degrees[i] <= 1)

    # Maximal contact values: valuation at the dead vertices until the
    # running gcd reaches 1, then the terminal value.
    contact_values: list[int] = []
    running = 0
    for d in dead:
        contact_values.append(a[d])
        running = gcd(running, a[d])
        if running == 1:
            break
    if running != 1:
        raise InconsistentProximity(
            "chain has too few dead vertices to present a valuation"
        )
    contact_values.append(a[n])
    try:
        contact = MaximalContactSequence(tuple(contact_values))
    except InvalidContactSequence as exc:
        raise InconsistentProximity(
            f"derived contact sequence {tuple(contact_values)} is invalid: {exc}"
        ) from exc

    # Star count must match the stage count up to the terminal dichotomy.
    expected_stars = contact.g - (1 if contact.terminal_is_satellite else 0)
    if len(stars) != expected_stars:
        raise InconsistentProximity(
            f"found {len(stars)} star vertices, expected {expected_stars}"
        )

    g_star = len(stars)
    subtrees: list[tuple[int, ...]] = []
    assigned: set[int] = set()
    for st in stars:
        part = tuple(v for v in range(1, st + 1) if v not in assigned)
        subtrees.append(part)
        assigned.update(part)
    subtrees.append(tuple(v for v in range(1, n + 1) if v not in assigned))

    contributors = stars + (n,)

    return ResolutionModel(
        proximity=prox,
        contact=contact,
        intersection=tuple(tuple(row) for row in G),
        canonical=tuple(kappa[1:]),
        valuation_divisor=tuple(a[1:]),
        multiplicities=tuple(m[1:]),
        dual_graph=adjacency,
        star_vertices=stars,
        dead_vertices=dead,
        subtrees=tuple(subtrees),
        contributors=contributors,
    )


def contact_from_proximity(prox: ProximityStructure) -> MaximalContactSequence:
    """Maximal contact values of the valuation defined by a chain."""
    return build_resolution(prox).contact


def model_from_contact(values: Iterable[int]) -> ResolutionModel:
    """Build the resolution model realizing a maximal contact sequence.

    The chain is constructed through the multiplicity sequence and then
    verified by the round trip back to contact values; sequences that no
    chain realizes are rejected.
    """
    seq = MaximalContactSequence(tuple(values))
    mults = _multiplicity_sequence(seq)
    prox = _proximity_from_multiplicities(mults)
    model = build_resolution(prox)
    if model.contact != seq:
        raise InvalidContactSequence(
            f"no blowup chain realizes {seq.values}: round trip gave {model.contact.values}"
        )
    return model


def proximity_from_contact(seq: MaximalContactSequence) -> ProximityStructure:
    """Proximity chain realizing a contact sequence (round-trip verified)."""
    return model_from_contact(seq.values).proximity


def model_from_proximity(size: int, satellite: Mapping[int, int] | None = None) -> ResolutionModel:
    return build_resolution(ProximityStructure.from_map(size, satellite))


def intermediate_valuation(model: ResolutionModel, j: int) -> ResolutionModel:
    """Resolution model of the valuation defined by divisor ``j`` alone.

    Truncates the chain to the centers underlying ``E_j``; with ``j == n``
    this returns the model itself.
    """
    if not 1 <= j <= model.n:
        raise IndexError(f"divisor index {j} out of range 1..{model.n}")
    if j == model.n:
        return model

    def compute() -> ResolutionModel:
        return build_resolution(model.proximity.truncate(j))

    return model.cache(("truncated", j), compute)


def is_free(model: ResolutionModel, j: int) -> bool:
    """True when center ``j`` is proximate to at most one earlier divisor."""
    return j not in model.proximity.satellite_map
