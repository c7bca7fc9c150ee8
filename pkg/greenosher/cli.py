# Copyright 2024 The planar-greenosher developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Command-line entry point

Exit codes: 0 success, 1 inequality violated, 2 usage, I/O or validation error.
"""

import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional

from ._metadata import __extension_version__
from .body_io import load_body, save_body, write_json
from .config import resolve_settings
from .dilation import DilationCertificate, certify, to_dilation_position
from .exceptions import GreenOsherError
from .functionals import select
from .green_osher import homothety_test, verify
from .measures import area, steiner_data
from .support_body import random_body, validate
from .svg_plot import figure, write_svg
from .sweep import run_sweep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2


def _functional_names(args: argparse.Namespace) -> List[str]:
    names: List[str] = args.functional or ["all"]
    if args.power is not None and "all" not in names:
        names = names + ["power_p"]
    return names


def cmd_gen(args: argparse.Namespace) -> int:
    body = random_body(args.seed, args.degree, args.decay)
    save_body(body, args.out)
    return EXIT_OK


def cmd_info(args: argparse.Namespace) -> int:
    settings = resolve_settings(grid_size=args.grid)
    k = load_body(args.k, eps_convex=None)
    verdict = validate(k, eps_convex=settings.eps_convex)
    info: Dict[str, object] = {
        "area_k": area(k),
        "valid_k": verdict.accepted,
        "min_radius_k": verdict.min_value,
    }
    if args.l is not None:
        l = load_body(args.l, eps_convex=settings.eps_convex)
        verdict.raise_for_rejection()
        certificate = certify(k, l, settings=settings)
        fit = homothety_test(k, l, settings=settings)
        info.update(
            {
                "steiner": steiner_data(k, l).to_dict(),
                "certificate": certificate.to_dict(),
                "homothetic": fit.homothetic,
                "residual": fit.residual,
            }
        )
    print(json.dumps(info, indent=2))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    settings = resolve_settings(grid_size=args.grid, tol=args.tol)
    k = load_body(args.k, eps_convex=settings.eps_convex)
    l = load_body(args.l, eps_convex=settings.eps_convex)
    position = "given" if args.as_given else "dilation"
    certificate: Optional[DilationCertificate] = None
    if position == "dilation":
        k, l, certificate = to_dilation_position(k, l, settings=settings)
    report = verify(
        k,
        l,
        select(_functional_names(args), args.power),
        position=position,
        settings=settings,
        certificate=certificate,
    )
    write_json(report.to_dict(), args.report)
    for check in report.functionals:
        logger.info(
            "%s: lhs = %.12g, rhs = %.12g, slack = %.3e",
            check.name,
            check.lhs,
            check.rhs,
            check.slack,
        )
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_sweep(args: argparse.Namespace) -> int:
    settings = resolve_settings(grid_size=args.grid, jobs=args.jobs)
    summary = run_sweep(
        args.trials,
        args.seed,
        args.degree,
        args.decay,
        _functional_names(args),
        args.power,
        settings=settings,
    )
    write_json(summary.to_dict(), args.summary)
    return EXIT_OK if summary.passed else EXIT_VIOLATION


def cmd_plot(args: argparse.Namespace) -> int:
    settings = resolve_settings()
    k = load_body(args.k, eps_convex=settings.eps_convex)
    l = load_body(args.l, eps_convex=settings.eps_convex)
    write_svg(figure(k, l, rho=args.rho, settings=settings), args.out)
    return EXIT_OK


def _add_functional_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--functional",
        action="append",
        help="functional name (square, reciprocal, exp_neg, x_log_x, power_p) "
        "or 'all'; may be repeated (default: all)",
    )
    p.add_argument("--power", type=float, help="exponent p > 1 of power_p")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greenosher",
        description="Verify the extended Green-Osher inequality for planar "
        "convex bodies given by support functions.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__extension_version__}"
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="-v for progress, -vv for solver details",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a random strictly convex body")
    gen.add_argument("--degree", type=int, default=6)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--decay", type=float, default=3.0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_gen)

    info = sub.add_parser("info", help="print measures of a body or pair")
    info.add_argument("--k", required=True)
    info.add_argument("--l")
    info.add_argument("--grid", type=int)
    info.set_defaults(func=cmd_info)

    ver = sub.add_parser("verify", help="verify the inequality for a pair")
    ver.add_argument("--k", required=True)
    ver.add_argument("--l", required=True)
    _add_functional_flags(ver)
    ver.add_argument("--grid", type=int)
    ver.add_argument("--tol", type=float)
    ver.add_argument("--report", required=True)
    ver.add_argument(
        "--as-given",
        action="store_true",
        help="check the pair where it stands instead of moving it to a "
        "dilation position",
    )
    ver.set_defaults(func=cmd_verify)

    sw = sub.add_parser("sweep", help="verify a randomized corpus")
    sw.add_argument("--trials", type=int, required=True)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--degree", type=int, default=6)
    sw.add_argument("--decay", type=float, default=3.0)
    _add_functional_flags(sw)
    sw.add_argument("--grid", type=int)
    sw.add_argument("--jobs", type=int)
    sw.add_argument("--summary", required=True)
    sw.set_defaults(func=cmd_sweep)

    plot = sub.add_parser("plot", help="draw a pair as SVG")
    plot.add_argument("--k", required=True)
    plot.add_argument("--l", required=True)
    plot.add_argument("--out", required=True)
    plot.add_argument("--rho", action="store_true", help="add a polar rho inset")
    plot.set_defaults(func=cmd_plot)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_ERROR
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    func: Callable[[argparse.Namespace], int] = args.func
    try:
        return func(args)
    except (OSError, GreenOsherError, ValueError) as e:
        logger.error("%s", e)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
