"""Pure request-to-response functions shared by the HTTP routes and the CLI."""

from __future__ import annotations

from fractions import Fraction

from ..corpus import corpus_models
from ..errors import InputError
from ..ideals import multiplier_ideal
from ..inputs import model_from_source, parse_rational
from ..jumping import jumping_numbers, log_canonical_threshold
from ..model import ResolutionModel
from ..series import closed_form, compare_series, expand_truncated, oracle_series
from ..verify import run_verification
from . import schemas


def _fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def build_model(source: schemas.ModelSource, allow_explicit: bool = False) -> ResolutionModel:
    return model_from_source(source.as_input(), allow_explicit=allow_explicit)


def _positive_bound(text: str) -> Fraction:
    bound = parse_rational(text)
    if bound <= 0:
        raise InputError(f"bound must be positive, got {text!r}")
    return bound


def info(request: schemas.InfoRequest) -> schemas.InfoResponse:
    model = build_model(request.source)
    contact = model.contact
    return schemas.InfoResponse(
        n=model.n,
        maximal_contact=list(contact.values),
        satellite={str(j): i for j, i in model.proximity.satellite},
        g=model.g,
        g_star=model.g_star,
        running_gcds=list(contact.gcds),
        stage_quotients=[contact.quotient(i) for i in range(1, contact.g + 1)],
        valuation_divisor=list(model.valuation_divisor),
        canonical=list(model.canonical),
        multiplicities=list(model.multiplicities),
        intersection_matrix=[list(row) for row in model.intersection],
        dual_graph=[list(nbrs) for nbrs in model.dual_graph],
        star_vertices=list(model.star_vertices),
        dead_vertices=list(model.dead_vertices),
        subtrees=[list(part) for part in model.subtrees],
        contributors=list(model.contributors),
        log_canonical_threshold=_fraction_str(log_canonical_threshold(model)),
        terminal_is_satellite=model.terminal_is_satellite,
    )


def jumps(request: schemas.JumpsRequest) -> schemas.JumpsResponse:
    model = build_model(request.source)
    bound = _positive_bound(request.bound)
    rows = []
    for record in jumping_numbers(model, bound):
        rows.append(
            schemas.JumpRow(
                value=_fraction_str(record.value),
                memberships=list(record.memberships),
                witnesses=[
                    schemas.WitnessGroup(family=fam, tuples=[list(w) for w in ws])
                    for fam, ws in record.witnesses
                ],
                contributing=list(record.contributing),
                dimension=record.dimension,
                in_omega=record.in_omega,
            )
        )
    return schemas.JumpsResponse(bound=request.bound, count=len(rows), rows=rows)


def ideal(request: schemas.IdealRequest) -> schemas.IdealResponse:
    model = build_model(request.source)
    at = parse_rational(request.at)
    if at <= 0:
        raise InputError(f"exponent must be positive, got {request.at!r}")
    result = multiplier_ideal(model, at)
    return schemas.IdealResponse(
        at=request.at,
        divisor=list(result.divisor),
        multiplicities=list(result.multiplicities),
        colength=result.colength,
    )


def series(request: schemas.SeriesRequest) -> schemas.SeriesResponse:
    model = build_model(request.source)
    bound = _positive_bound(request.bound)
    form = closed_form(model)
    truncation = expand_truncated(form, bound)
    check = None
    if request.check:
        outcome = compare_series(truncation, oracle_series(model, bound), bound)
        check = schemas.SeriesCheck(equal=outcome.equal, detail=outcome.describe())
    return schemas.SeriesResponse(
        bound=request.bound,
        denominator=form.denominator,
        closed_form=schemas.ClosedFormPayload(
            simple=form.simple.numerators_over(form.denominator),
            omega=form.omega.numerators_over(form.denominator),
        ),
        truncation=truncation.numerators_over(form.denominator),
        check=check,
    )


def verify(request: schemas.VerifyRequest) -> schemas.VerifyResponse:
    if (request.source is None) == (request.corpus is None):
        raise InputError("verification needs exactly one of 'source' or 'corpus'")
    bound = _positive_bound(request.bound)
    if request.source is not None:
        models = [build_model(request.source, allow_explicit=True)]
    else:
        models = corpus_models(
            request.corpus.max_multiplicity, request.corpus.max_terminal
        )
    report = run_verification(models, bound, threads=request.threads)
    return schemas.VerifyResponse(
        passed=report.passed,
        models=len(models),
        total_checks=len(report.checks),
        failed_checks=len(report.failures),
        checks=[
            schemas.VerifyCheckRow(
                model=c.model, name=c.name, passed=c.passed, detail=c.detail
            )
            for c in report.checks
        ],
    )
