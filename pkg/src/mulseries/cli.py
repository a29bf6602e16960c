"""Command line front end.

The CLI is a thin client of the service layer: every command builds a
request model, dispatches it either in process or to a running server
(``--server``), and formats the structured response.  Exit codes: 0 on
success, 1 when a verification or ``--check`` comparison fails, 2 on invalid
input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence

import httpx
from pydantic import BaseModel, ValidationError

from .errors import (
    InconsistentModel,
    InputError,
    MulseriesError,
    TheoremViolation,
)
from .inputs import parse_corpus_spec, parse_rational
from .series import ClosedFormSeries, FractionalPolynomial, render
from .service import handlers, schemas

_INPUT_ERROR_NAMES = frozenset(
    {
        "InputError",
        "InvalidContactSequence",
        "InconsistentProximity",
        "UnknownFormat",
        "NegativeMultiplicity",
        "NotNested",
        "NotMember",
    }
)


def _load_source(path: str) -> schemas.ModelSource:
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read input file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"input file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"input file {path} must contain a JSON object")
    try:
        return schemas.ModelSource.model_validate(data)
    except ValidationError as exc:
        raise InputError(f"input file {path} is malformed: {exc}") from exc


def _remote(server: str, path: str, request: BaseModel, response_cls):
    url = server.rstrip("/") + path
    try:
        response = httpx.post(url, json=request.model_dump(mode="json"), timeout=600.0)
    except httpx.HTTPError as exc:
        raise InputError(f"cannot reach server {url}: {exc}") from exc
    if response.status_code >= 400:
        try:
            payload = response.json()
        except ValueError:
            payload = {}
        detail = payload.get("detail", response.text)
        name = payload.get("error", "")
        if response.status_code < 500 or name in _INPUT_ERRORS_EXIT_2:
            raise InputError(f"server rejected request: {detail}")
        raise TheoremViolation(f"server-side check failure: {detail}")
    return response_cls.model_validate(response.json())


def _dispatch(args, path: str, request: BaseModel, local: Callable, response_cls):
    if args.server:
        return _remote(args.server, path, request, response_cls)
    return local(request)


def _positive_rational(text: str) -> Fraction:
    value = parse_rational(text)
    if value <= 0:
        raise InputError(f"expected a positive rational, got {text!r}")
    return value


def _csv_text(rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


# --- info -------------------------------------------------------------------

def _edges(dual_graph: list[list[int]]) -> list[str]:
    out = []
    for i, nbrs in enumerate(dual_graph, start=1):
        out.extend(f"{i}-{j}" for j in nbrs if j > i)
    return out


def _format_info(resp: schemas.InfoResponse, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(resp.model_dump(), indent=2, sort_keys=True)
    rows = [
        ("chain size", str(resp.n)),
        ("maximal contact", " ".join(map(str, resp.maximal_contact))),
        ("satellite", " ".join(f"{j}->{i}" for j, i in sorted(
            ((int(k), v) for k, v in resp.satellite.items()))) or "-"),
        ("stages (g)", str(resp.g)),
        ("stars (g*)", str(resp.g_star)),
        ("running gcds", " ".join(map(str, resp.running_gcds))),
        ("stage quotients", " ".join(map(str, resp.stage_quotients)) or "-"),
        ("valuation divisor", " ".join(map(str, resp.valuation_divisor))),
        ("relative canonical", " ".join(map(str, resp.canonical))),
        ("multiplicities", " ".join(map(str, resp.multiplicities))),
        ("dual graph", " ".join(_edges(resp.dual_graph)) or "-"),
        ("star vertices", " ".join(map(str, resp.star_vertices)) or "-"),
        ("dead vertices", " ".join(map(str, resp.dead_vertices))),
        ("subtrees", " ".join(
            "[" + " ".join(map(str, part)) + "]" for part in resp.subtrees)),
        ("contributors", " ".join(map(str, resp.contributors))),
        ("log canonical threshold", resp.log_canonical_threshold),
        ("terminal center", "satellite" if resp.terminal_is_satellite else "free"),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def _cmd_info(args) -> int:
    request = schemas.InfoRequest(source=_load_source(args.input))
    resp = _dispatch(args, "/info", request, handlers.info, schemas.InfoResponse)
    print(_format_info(resp, args.format))
    return 0


# --- jumps ------------------------------------------------------------------

def _witness_text(groups: list[schemas.WitnessGroup]) -> str:
    parts = []
    for group in groups:
        tuples = "|".join("(" + ",".join(map(str, w)) + ")" for w in group.tuples)
        parts.append(f"{group.family}:{tuples}")
    return " ".join(parts)


def _format_jumps(resp: schemas.JumpsResponse, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(resp.model_dump(), indent=2, sort_keys=True)
    header = ["value", "families", "witnesses", "contributes", "dimension", "omega"]
    table = [
        [
            row.value,
            "|".join(map(str, row.memberships)),
            _witness_text(row.witnesses),
            "|".join(f"E{j}" for j in row.contributing),
            str(row.dimension),
            "yes" if row.in_omega else "no",
        ]
        for row in resp.rows
    ]
    if fmt == "csv":
        return _csv_text([header] + table)
    if not table:
        return "no jumping numbers up to " + resp.bound
    widths = [max(len(r[c]) for r in [header] + table) for c in range(len(header))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in table]
    return "\n".join(lines)


def _cmd_jumps(args) -> int:
    _positive_rational(args.bound)
    request = schemas.JumpsRequest(source=_load_source(args.input), bound=args.bound)
    resp = _dispatch(args, "/jumps", request, handlers.jumps, schemas.JumpsResponse)
    print(_format_jumps(resp, args.format))
    return 0


# --- ideal ------------------------------------------------------------------

def _format_ideal(resp: schemas.IdealResponse, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(
            {
                "divisor": resp.divisor,
                "multiplicities": resp.multiplicities,
                "colength": resp.colength,
            },
            indent=2,
            sort_keys=True,
        )
    if fmt == "csv":
        return _csv_text(
            [
                ["divisor"] + [str(v) for v in resp.divisor],
                ["multiplicities"] + [str(v) for v in resp.multiplicities],
                ["colength", str(resp.colength)],
            ]
        )
    return "\n".join(
        [
            f"at              {resp.at}",
            "divisor         " + " ".join(map(str, resp.divisor)),
            "multiplicities  " + " ".join(map(str, resp.multiplicities)),
            f"colength        {resp.colength}",
        ]
    )


def _cmd_ideal(args) -> int:
    _positive_rational(args.at)
    request = schemas.IdealRequest(source=_load_source(args.input), at=args.at)
    resp = _dispatch(args, "/ideal", request, handlers.ideal, schemas.IdealResponse)
    print(_format_ideal(resp, args.format))
    return 0


# --- series -----------------------------------------------------------------

def _poly_from_pairs(pairs: list[list[int]], denominator: int) -> FractionalPolynomial:
    return FractionalPolynomial(
        tuple((Fraction(num, denominator), coeff) for num, coeff in pairs)
    )


def _format_series(resp: schemas.SeriesResponse, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(resp.model_dump(exclude_none=True), indent=2, sort_keys=True)
    simple = _poly_from_pairs(resp.closed_form.simple, resp.denominator)
    omega = _poly_from_pairs(resp.closed_form.omega, resp.denominator)
    truncation = _poly_from_pairs(resp.truncation, resp.denominator)
    form = ClosedFormSeries(simple=simple, omega=omega, denominator=resp.denominator)
    if fmt == "csv":
        return render(truncation, "csv")
    lines = [
        f"denominator  {resp.denominator}",
        f"closed form  {render(form, fmt)}",
        f"truncation   {render(truncation, fmt)}",
    ]
    if resp.check is not None:
        verdict = "OK" if resp.check.equal else f"MISMATCH ({resp.check.detail})"
        lines.append(
            f"check        closed form matches oracle up to t^{resp.bound}: {verdict}"
        )
    return "\n".join(lines)


def _cmd_series(args) -> int:
    _positive_rational(args.bound)
    request = schemas.SeriesRequest(
        source=_load_source(args.input), bound=args.bound, check=args.check
    )
    resp = _dispatch(args, "/series", request, handlers.series, schemas.SeriesResponse)
    print(_format_series(resp, args.format))
    if resp.check is not None and not resp.check.equal:
        return 1
    return 0


# --- verify -----------------------------------------------------------------

def _format_verify(resp: schemas.VerifyResponse, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(resp.model_dump(), indent=2, sort_keys=True)
    if fmt == "csv":
        rows = [["model", "check", "passed", "detail"]]
        rows += [
            [c.model, c.name, "true" if c.passed else "false", c.detail]
            for c in resp.checks
        ]
        return _csv_text(rows)
    lines = [
        f"FAIL {c.name} [{c.model}]: {c.detail}" for c in resp.checks if not c.passed
    ]
    verdict = "PASS" if resp.passed else "FAIL"
    lines.append(
        f"verification: {resp.models} model(s), {resp.total_checks} checks, "
        f"{resp.failed_checks} failed -> {verdict}"
    )
    return "\n".join(lines)


def _cmd_verify(args) -> int:
    if (args.input is None) == (args.corpus is None):
        raise InputError("verify needs exactly one of --input or --corpus")
    _positive_rational(args.bound)
    if args.input is not None:
        source = _load_source(args.input)
        request = schemas.VerifyRequest(source=source, bound=args.bound)
    else:
        b0, bg = parse_corpus_spec(args.corpus)
        request = schemas.VerifyRequest(
            corpus=schemas.CorpusSpec(max_multiplicity=b0, max_terminal=bg),
            bound=args.bound,
        )
    resp = _dispatch(args, "/verify", request, handlers.verify, schemas.VerifyResponse)
    print(_format_verify(resp, args.format))
    return 0 if resp.passed else 1


# --- serve ------------------------------------------------------------------

def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mulseries",
        description=(
            "Jumping numbers and the multiplier-ideal Poincare series of a "
            "simple complete ideal at a smooth surface point."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="JSON model file")
        p.add_argument("--format", default="plain", choices=formats)
        p.add_argument("--server", default=None, help="base URL of a running service")

    p_info = sub.add_parser("info", help="resolution data of the model")
    common(p_info, ("plain", "json"))
    p_info.set_defaults(func=_cmd_info)

    p_jumps = sub.add_parser("jumps", help="table of jumping numbers")
    common(p_jumps, ("plain", "csv", "json"))
    p_jumps.add_argument("--bound", default="3", help="largest exponent, as num/den")
    p_jumps.set_defaults(func=_cmd_jumps)

    p_ideal = sub.add_parser("ideal", help="multiplier ideal at one exponent")
    common(p_ideal, ("plain", "csv", "json"))
    p_ideal.add_argument("--at", required=True, help="exponent, as num/den")
    p_ideal.set_defaults(func=_cmd_ideal)

    p_series = sub.add_parser("series", help="closed form and truncation of the series")
    common(p_series, ("plain", "latex", "json", "csv"))
    p_series.add_argument("--bound", default="3", help="truncation bound, as num/den")
    p_series.add_argument(
        "--check", action="store_true", help="compare the closed form with the oracle"
    )
    p_series.set_defaults(func=_cmd_series)

    p_verify = sub.add_parser("verify", help="run the full check suite")
    p_verify.add_argument("--input", default=None, help="JSON model file")
    p_verify.add_argument(
        "--corpus", default=None, help="sweep bounds, e.g. 'b0<=4,bg<=40'"
    )
    p_verify.add_argument("--bound", default="3", help="check bound, as num/den")
    p_verify.add_argument("--format", default="plain", choices=("plain", "csv", "json"))
    p_verify.add_argument("--server", default=None, help="base URL of a running service")
    p_verify.set_defaults(func=_cmd_verify)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TheoremViolation, InconsistentModel) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MulseriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
