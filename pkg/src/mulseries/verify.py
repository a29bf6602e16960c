"""Cross-verification suite: every identity the package relies on, as checks.

Each check recomputes a statement two independent ways and reports a named
pass/fail result instead of raising, so a whole corpus can be swept and the
first broken invariant is visible by name.  On consistent models every check
passes; the suite exists to catch regressions and hand-tampered inputs.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import MulseriesError
from .ideals import (
    antinef_closure,
    floor_predecessor_divisor,
    intersection_product,
    multiplier_ideal,
)
from .jumping import (
    contributes,
    decompose_membership,
    family_dimension,
    jumping_numbers,
    log_canonical_threshold,
    predecessor_ideal,
    total_dimension,
    witness_base_value,
)
from .model import (
    ResolutionModel,
    build_resolution,
    intermediate_valuation,
    is_free,
    model_from_contact,
)
from .series import closed_form, compare_series, expand_truncated, oracle_series

THREADS_ENV = "MULSERIES_THREADS"


@dataclass(frozen=True)
class CheckResult:
    model: str
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "total_checks": len(self.checks),
            "failed_checks": len(self.failures),
            "checks": [
                {
                    "model": c.model,
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }


def _model_key(model: ResolutionModel) -> str:
    return ",".join(str(v) for v in model.contact.values)


def _check_roundtrip(model: ResolutionModel) -> Optional[str]:
    rebuilt = model_from_contact(model.contact.values)
    if rebuilt.proximity != model.proximity:
        return f"contact {model.contact.values} rebuilt a different chain"
    again = build_resolution(model.proximity)
    if again.contact != model.contact:
        return f"chain reread as {again.contact.values}"
    return None


def _check_intersection_identities(model: ResolutionModel) -> Optional[str]:
    n = model.n
    for j in range(1, n + 1):
        expected = -1 - sum(
            1 for k in range(j + 1, n + 1)
            if j in model.proximity.proximate_targets(k)
        )
        if model.intersection[j - 1][j - 1] != expected:
            return f"self-intersection of divisor {j} is not {expected}"
        d_dot = intersection_product(model, model.valuation_divisor, j)
        if d_dot != (-1 if j == n else 0):
            return f"valuation divisor meets divisor {j} in {d_dot}"
        k_dot = intersection_product(model, model.canonical, j)
        if k_dot != -model.intersection[j - 1][j - 1] - 2:
            return f"canonical divisor meets divisor {j} in {k_dot}"
    return None


def _check_terminal_dichotomy(model: ResolutionModel) -> Optional[str]:
    g, g_star = model.g, model.g_star
    satellite = model.proximity.satellite_map.get(model.n) is not None
    if model.n == 1:
        satellite = False
    if model.contact.terminal_is_satellite != satellite:
        return "terminal value equality disagrees with the chain's last center"
    if g_star != g - (1 if satellite else 0):
        return f"star count {g_star} does not match stage count {g}"
    return None


def check_star_corner_identity(model: ResolutionModel) -> Optional[str]:
    # At each star, one of the two earlier neighbours carries the valuation
    # as (stage gcd) times its own top contact value; for that neighbour the
    # corner determinant must be one.
    for i, star in enumerate(model.star_vertices, start=1):
        local = intermediate_valuation(model, star + 1)
        neighbours = local.dual_graph[star - 1]
        earlier = sorted(x for x in neighbours if x < star)
        if len(earlier) != 2 or (star + 1) not in neighbours:
            return f"star {star} does not have the expected corner shape"
        e_prev = local.gcd_at(i - 1)
        b_i = local.contact_value(i)
        n_i = local.quotient(i)
        matched = 0
        for x in earlier:
            sub = intermediate_valuation(model, x)
            top = min(i, sub.g + 1)
            b_x = sub.contact_value(top)
            n_x = sub.gcd_at(i - 1) // sub.gcd_at(i)
            if local.valuation_divisor[x - 1] == e_prev * b_x:
                matched += 1
                if n_x * b_i - n_i * b_x != 1:
                    return (
                        f"corner determinant at star {star} via divisor {x} is "
                        f"{n_x * b_i - n_i * b_x}"
                    )
        if matched == 0:
            return f"no corner neighbour of star {star} matches the value equation"
    return None


def _check_free_truncation_scaling(model: ResolutionModel) -> Optional[str]:
    # The contact values of a free divisor's valuation are proportional to
    # the full ones below its own last stage.
    for j in range(2, model.n + 1):
        if not is_free(model, j):
            continue
        sub = intermediate_valuation(model, j)
        ratio = Fraction(sub.contact_value(0), model.contact_value(0))
        for i in range(1, sub.g_star + 1):
            if Fraction(sub.contact_value(i)) != ratio * model.contact_value(i):
                return (
                    f"free divisor {j}: contact value {i} is not scaled by {ratio}"
                )
    return None


def _check_threshold(model: ResolutionModel, bound: Fraction) -> Optional[str]:
    records = jumping_numbers(model, bound)
    lct = log_canonical_threshold(model)
    if not records:
        return None if bound < lct else f"no jumping numbers up to {bound}"
    values = [r.value for r in records]
    if values[0] != lct:
        return f"smallest jumping number {values[0]} is not the threshold {lct}"
    if any(v == 1 for v in values):
        return "1 appears as a jumping number"
    return None


def _check_contribution(model: ResolutionModel, bound: Fraction) -> Optional[str]:
    for record in jumping_numbers(model, bound):
        value = record.value
        for i in range(1, model.g_star + 2):
            divisor = model.contributors[i - 1]
            by_intersection = contributes(model, divisor, value, "intersection")
            by_ideal = contributes(model, divisor, value, "ideal")
            if by_intersection != by_ideal:
                return f"criteria disagree at {value} on divisor {divisor}"
            if by_intersection != (i in record.memberships):
                return (
                    f"family {i} and contribution of divisor {divisor} "
                    f"disagree at {value}"
                )
        for j in range(1, model.n + 1):
            if j not in model.contributors and contributes(model, j, value):
                return f"divisor {j} outside the star set contributes {value}"
    return None


def _check_predecessors(model: ResolutionModel, bound: Fraction) -> Optional[str]:
    records = jumping_numbers(model, bound)
    for record in records:
        try:
            predecessor_ideal(model, record.value, check=True)
        except MulseriesError as exc:
            return str(exc)
    return None


def _check_dimensions(model: ResolutionModel, bound: Fraction) -> Optional[str]:
    for record in jumping_numbers(model, bound):
        value = record.value
        try:
            total = total_dimension(model, value, check=True)
        except MulseriesError as exc:
            return str(exc)
        if total != record.dimension:
            return f"total dimension at {value}: {total} versus {record.dimension}"
        if total < len(record.memberships):
            return f"dimension {total} below membership count at {value}"
        for i in record.memberships:
            d = family_dimension(model, i, value)
            if value < 1 and d != 1:
                return f"family {i} dimension at {value} is {d}, not 1"
            witness = decompose_membership(model, i, value)
            base = witness_base_value(model, witness)
            if i <= model.g_star:
                if d != family_dimension(model, i, base):
                    return f"family {i} dimension not constant along {value}"
            else:
                base_dim = family_dimension(model, i, base)
                if base_dim != 1:
                    return f"seed dimension at {base} is {base_dim}, not 1"
                if d != base_dim + witness.r:
                    return (
                        f"terminal dimension at {value} is {d}, expected "
                        f"{base_dim + witness.r}"
                    )
    return None


def _check_series_identity(model: ResolutionModel, bound: Fraction) -> Optional[str]:
    outcome = compare_series(
        expand_truncated(closed_form(model), bound),
        oracle_series(model, bound),
        bound,
    )
    return None if outcome.equal else outcome.describe()


def _check_jump_detection(model: ResolutionModel, bound: Fraction) -> Optional[str]:
    def drops_at(value: Fraction) -> bool:
        before = antinef_closure(
            model,
            tuple(
                f - k
                for f, k in zip(floor_predecessor_divisor(model, value), model.canonical)
            ),
        )
        return before.divisor != multiplier_ideal(model, value).divisor

    records = jumping_numbers(model, bound)
    values = [r.value for r in records]
    for value in values:
        if not drops_at(value):
            return f"no drop at the jumping number {value}"
    for left, right in zip(values, values[1:]):
        mid = (left + right) / 2
        if mid not in values and drops_at(mid):
            return f"drop at the non-jumping value {mid}"
    return None


_MODEL_CHECKS = (
    ("contact-roundtrip", lambda m, jb, sb: _check_roundtrip(m)),
    ("intersection-identities", lambda m, jb, sb: _check_intersection_identities(m)),
    ("terminal-dichotomy", lambda m, jb, sb: _check_terminal_dichotomy(m)),
    ("star-corner-identity", lambda m, jb, sb: check_star_corner_identity(m)),
    ("free-truncation-scaling", lambda m, jb, sb: _check_free_truncation_scaling(m)),
    ("threshold", lambda m, jb, sb: _check_threshold(m, jb)),
    ("contribution-characterization", lambda m, jb, sb: _check_contribution(m, jb)),
    ("predecessor-identity", lambda m, jb, sb: _check_predecessors(m, jb)),
    ("dimension-laws", lambda m, jb, sb: _check_dimensions(m, jb)),
    ("series-identity", lambda m, jb, sb: _check_series_identity(m, sb)),
    ("jump-detection", lambda m, jb, sb: _check_jump_detection(m, jb)),
)


def run_model_checks(
    model: ResolutionModel,
    jump_bound: Fraction = Fraction(3),
    series_bound: Optional[Fraction] = None,
) -> list[CheckResult]:
    """Run every named check on one model."""
    series_bound = jump_bound if series_bound is None else series_bound
    key = _model_key(model)
    results = []
    for name, runner in _MODEL_CHECKS:
        try:
            detail = runner(model, jump_bound, series_bound)
        except MulseriesError as exc:
            detail = str(exc)
        results.append(
            CheckResult(key, name, detail is None, detail or "")
        )
    return results


def thread_count(requested: Optional[int] = None) -> int:
    if requested is not None:
        return max(1, requested)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def run_verification(
    models: Sequence[ResolutionModel],
    jump_bound: Fraction = Fraction(3),
    series_bound: Optional[Fraction] = None,
    threads: Optional[int] = None,
) -> VerificationReport:
    """Run the full check suite over several models, optionally in parallel.

    Results are assembled in model order regardless of scheduling, so the
    report is deterministic.
    """
    workers = thread_count(threads)
    if workers == 1 or len(models) <= 1:
        chunks = [run_model_checks(m, jump_bound, series_bound) for m in models]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(
                pool.map(
                    lambda m: run_model_checks(m, jump_bound, series_bound), models
                )
            )
    return VerificationReport(tuple(c for chunk in chunks for c in chunk))
