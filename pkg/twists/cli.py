"""
Command line front end: ``expand``, ``verify``, ``star`` and ``report``.

Exit codes: 0 when everything requested holds, 1 when an identity fails
or an input is singular, 2 for usage errors.
"""
from __future__ import annotations

import argparse
import logging
import re
import sys
from logging import getLogger
from pathlib import Path
from typing import Sequence

from pydantic import ValidationError

from twists.borel import log_series
from twists.config import RunConfig
from twists.exceptions import ConfigurationError
from twists.exceptions import SingularInputError
from twists.exceptions import TwistError
from twists.exceptions import UnsupportedMethodError
from twists.momentum import STAR_METHODS
from twists.momentum import MomentumVector
from twists.momentum import relative_deviation
from twists.momentum import star_plane_waves
from twists.realizations import RealizationSpec
from twists.realizations import realize_xhat
from twists.realizations import realize_yhat
from twists.reports import dump_reports
from twists.reports import load_reports
from twists.suites import run_suites
from twists.suites import suite_names
from twists.twist import build_twist
from twists.twist import deformed_antipode
from twists.twist import deformed_coproduct
from twists.twist import r_matrix

__all__ = ("main", "build_parser")

logger = getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

SECTIONS = ("twist", "inverse", "log", "rmatrix", "coproduct", "antipode", "coordinates")

# Options taking numbers or comma separated vectors, which may start with "-".
VALUE_OPTIONS = ("--u", "--v", "--a", "--k", "--q", "--kappa")
_NEGATIVE_VALUE = re.compile(r"^-[\d./]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jordanian-twists",
        description="Exact verification of the Jordanian twist family F_u and its star product.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    expand = sub.add_parser("expand", help="Print the truncated expansions for one u.")
    expand.add_argument("--u", default="0")
    expand.add_argument("--order", type=int, default=4)
    expand.add_argument("--v", default=None, help="Deformation direction, e.g. 1,0")
    expand.add_argument("--component", action="append", choices=SECTIONS)

    verify = sub.add_parser("verify", help="Run a verification suite.")
    verify.add_argument("suite", choices=suite_names())
    verify.add_argument("--u", default=None, help="Comma separated u values")
    verify.add_argument("--order", type=int, default=None)
    verify.add_argument("--dim", type=int, default=None)
    verify.add_argument("--v", default=None)
    verify.add_argument("--a", default=None)
    verify.add_argument("--kappa", default=None)
    verify.add_argument("--k", default=None)
    verify.add_argument("--q", default=None)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--samples", type=int, default=None)
    verify.add_argument("--tol", type=float, default=None)
    verify.add_argument("--format", dest="output_format", choices=("text", "json"), default="text")
    verify.add_argument("--output", default=None)

    star = sub.add_parser("star", help="Exponent of the star product of two plane waves.")
    star.add_argument("--u", default="0")
    star.add_argument("--a", default=None)
    star.add_argument("--k", required=True)
    star.add_argument("--q", required=True)
    star.add_argument("--method", choices=STAR_METHODS, default="closed-form")
    star.add_argument("--cross-check", action="store_true")
    star.add_argument("--tol", type=float, default=None)

    report = sub.add_parser("report", help="Render a JSON report written by verify.")
    report.add_argument("path")
    return parser


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--q -2,0`` as ``--q=-2,0``."""
    out: list[str] = []
    tokens = list(argv)
    i = 0
    while i < len(tokens):
        token = tokens[i]
        nxt = tokens[i + 1] if i + 1 < len(tokens) else None
        if token in VALUE_OPTIONS and nxt is not None and _NEGATIVE_VALUE.match(nxt):
            out.append(f"{token}={nxt}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def _config(args: argparse.Namespace) -> RunConfig:
    fields = {"command": args.command}
    mapping = {
        "suite": "suite",
        "u": "u_values",
        "order": "order",
        "dim": "dim",
        "v": "v",
        "a": "a",
        "kappa": "kappa",
        "k": "k",
        "q": "q",
        "seed": "seed",
        "samples": "samples",
        "tol": "tol",
        "output_format": "output_format",
        "output": "output",
        "method": "method",
        "cross_check": "cross_check",
    }
    for arg, field in mapping.items():
        value = getattr(args, arg, None)
        if value is not None:
            fields[field] = value
    return RunConfig(**fields)


def _emit(text: str, output: Path | None):
    if output is None:
        print(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text + "\n", encoding="utf-8")
    logger.info("Wrote %s", output)


def cmd_expand(config: RunConfig, sections: Sequence[str]) -> int:
    if config.order < 1:
        raise ConfigurationError("expand needs --order >= 1.")
    if len(config.u_values) != 1:
        raise ConfigurationError("expand takes exactly one u value.")
    u, order = config.u_values[0], config.order
    family = build_twist(u, order)
    blocks = []
    if "twist" in sections:
        blocks.append(("F_u", str(family.F)))
    if "inverse" in sections:
        blocks.append(("F_u^-1", str(family.F_inv)))
    if "log" in sections:
        blocks.append(("ln F_u", str(log_series(family.F))))
    if "rmatrix" in sections:
        blocks.append(("R", str(r_matrix(u, order, family))))
    if "coproduct" in sections:
        blocks.append(("Δp (E = p)", str(deformed_coproduct("E", u, order, family))))
        blocks.append(("ΔD", str(deformed_coproduct("D", u, order, family))))
    if "antipode" in sections:
        blocks.append(("S(p) (E = p)", str(deformed_antipode("E", u, order, family))))
        blocks.append(("S(D)", str(deformed_antipode("D", u, order, family))))
    if "coordinates" in sections:
        spec = RealizationSpec(u=u, v=config.v, order=order)
        for name, coords in (("x̂", realize_xhat(spec)), ("ŷ", realize_yhat(spec))):
            for mu, c in enumerate(coords):
                blocks.append((f"{name}{mu}", str(c)))
    print(f"# u={u} N={order}")
    for title, body in blocks:
        print(f"== {title} ==")
        print(body)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    reports = run_suites(config)
    if config.output_format == "json":
        text = dump_reports(reports)
    else:
        failed = sum(not r.passed for r in reports)
        lines = [str(r) for r in reports]
        lines.append(f"{len(reports) - failed} passed, {failed} failed")
        text = "\n".join(lines)
    _emit(text, config.output)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_star(config: RunConfig) -> int:
    if len(config.u_values) != 1:
        raise ConfigurationError("star takes exactly one u value.")
    k, q = config.momenta()
    ctx = config.context(config.u_values[0])
    result = star_plane_waves(k, q, ctx, config.method)
    print(result)
    if not config.cross_check:
        return EXIT_OK
    worst = 0.0
    for method in STAR_METHODS:
        try:
            other = star_plane_waves(k, q, ctx, method)
        except UnsupportedMethodError as exc:
            print(f"{method}: unsupported ({exc})")
            continue
        deviation = relative_deviation(other, result)
        worst = max(worst, deviation)
        print(f"{method}: {other}  deviation {deviation:.3e}")
    print(f"max deviation {worst:.3e}")
    return EXIT_OK if worst <= config.tol else EXIT_FAIL


def cmd_report(path: str) -> int:
    reports = load_reports(Path(path).read_text(encoding="utf-8"))
    for r in reports:
        print(r)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(
            _attach_negative_values(sys.argv[1:] if argv is None else argv)
        )
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "report":
            return cmd_report(args.path)
        config = _config(args)
        if args.command == "expand":
            return cmd_expand(config, args.component or SECTIONS)
        if args.command == "verify":
            return cmd_verify(config)
        return cmd_star(config)
    except (ConfigurationError, ValidationError, OSError, ValueError) as exc:
        if isinstance(exc, SingularInputError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TwistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
