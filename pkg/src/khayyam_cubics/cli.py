"""Command-line front end: a thin client over the service handlers.

Subcommands: classify, solve, table, render, serve.  Equations are given as
text ("x^3 + 2x = 10", grammar: SIDE "=" SIDE with terms N, N*x, x^k for
k <= 3) or as a monic coefficient triple via --coeffs A B C.  Exit codes:
0 success (including a valid no-positive-root solve), 1 usage errors,
2 equation/classification errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

import numpy as np

from . import service
from .classifier import signed_cubic
from .core import Species, SpeciesInstance, SPECIES_PARAMS

USAGE_EXIT = 1
INPUT_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _add_equation_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("equation", nargs="?", help='equation text, e.g. "x^3 + x = 2"')
    sub.add_argument(
        "--coeffs", nargs=3, type=float, metavar=("A", "B", "C"),
        help="monic coefficients of x^3 + A x^2 + B x + C = 0",
    )


class _UsageError(Exception):
    pass


def _equation_request(args: argparse.Namespace, cls=service.EquationRequest, **extra):
    if (args.equation is None) == (args.coeffs is None):
        raise _UsageError("provide exactly one of an equation or --coeffs A B C")
    if args.equation is not None:
        return cls(equation=args.equation, **extra)
    return cls(coeffs=tuple(args.coeffs), **extra)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="khayyam", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="name the species of a cubic")
    _add_equation_args(p_classify)
    p_classify.add_argument("--json", action="store_true", help="machine-readable output")

    p_solve = sub.add_parser("solve", help="solve a cubic by intersecting conics")
    _add_equation_args(p_solve)
    p_solve.add_argument("--json", action="store_true", help="machine-readable output")
    p_solve.add_argument("--tol", type=float, default=None, help="residual tolerance")
    p_solve.add_argument("--fuzz", type=int, metavar="N",
                         help="instead solve N random instances per species and "
                              "report oracle agreement")
    p_solve.add_argument("--seed", type=int, default=0, help="seed for --fuzz")

    p_table = sub.add_parser("table", help="print the thirteen species")
    p_table.add_argument("--json", action="store_true")

    p_render = sub.add_parser("render", help="write an SVG diagram of a solve")
    _add_equation_args(p_render)
    p_render.add_argument("--output", default="khayyam.svg", help="output SVG path")
    p_render.add_argument("--tol", type=float, default=None)
    p_render.add_argument("--width", type=int, default=800)
    p_render.add_argument("--height", type=int, default=800)
    p_render.add_argument("--samples", type=int, default=256,
                          help="sample points per conic branch")
    p_render.add_argument("--no-hidden", dest="show_hidden", action="store_false",
                          help="omit the dashed third conic")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _print_solve(resp: service.SolveResponse) -> None:
    print(f"species    {resp.species}  (family {resp.family})")
    print(f"parameters {', '.join(f'{k} = {v:.12g}' for k, v in resp.params.items())}")
    for conic in resp.conics:
        coeffs = ", ".join(f"{c:.12g}" for c in conic.coeffs)
        print(f"{conic.role:<10} {conic.kind:<21} [{coeffs}]")
    if resp.roots:
        print("roots")
        for root in resp.roots:
            mult = f" (multiplicity {root.multiplicity})" if root.multiplicity > 1 else ""
            print(f"  x = {root.x:.15g}{mult}  residual {root.residual:.3g}")
    else:
        print("roots      none (the conics do not meet at a positive abscissa)")
    oracle = ", ".join(f"{r:.15g}" for r in resp.oracle_roots) or "none"
    print(f"oracle     {oracle}")
    print(f"agreement  {'yes' if resp.agreement else 'NO'}")


def _print_classify(resp: service.ClassifyResponse) -> None:
    print(f"species    {resp.species}  (family {resp.family})")
    print(f"pattern    signs(A, B, C) = {resp.pattern}")
    print(f"parameters {', '.join(f'{k} = {v:.12g}' for k, v in resp.params.items())}")
    print(f"form       {resp.equation_form}")
    print(f"conics     {resp.relations[0]}  and  {resp.relations[1]}")
    print(f"hidden     {resp.relations[2]}")


def _print_table(resp: service.TableResponse) -> None:
    header = f"{'species':<8}{'family':<7}{'equation':<22}{'conic pair':<34}hidden"
    print(header)
    print("-" * len(header))
    for row in resp.rows:
        star = "*" if row.representative else ""
        pair = f"{row.working_1}, {row.working_2}"
        print(f"{row.species + star:<8}{row.family:<7}{row.equation:<22}{pair:<34}{row.hidden}")
    print("(* family representative)")


def _run_fuzz(trials: int, seed: int, tol: Optional[float]) -> int:
    from .solver import DEFAULT_TOL, solve_khayyam

    rng = np.random.default_rng(seed)
    failures = 0
    for species in Species:
        agreed = 0
        for _ in range(trials):
            params = {
                name: float(rng.uniform(0.25, 8.0))
                for name in SPECIES_PARAMS[species]
            }
            eq = signed_cubic(SpeciesInstance(species, **params))
            report = solve_khayyam(eq, tol=tol or DEFAULT_TOL)
            agreed += report.agreement
        failures += trials - agreed
        print(f"{species.name:<4} {agreed}/{trials} oracle agreements")
    print(f"total disagreements: {failures}")
    return 0 if failures == 0 else 1


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "classify":
            resp = service.do_classify(_equation_request(args))
            if args.json:
                print(resp.model_dump_json(indent=2))
            else:
                _print_classify(resp)
            return 0

        if args.command == "solve":
            if args.fuzz is not None:
                return _run_fuzz(args.fuzz, args.seed, args.tol)
            extra = {} if args.tol is None else {"tolerance": args.tol}
            request = _equation_request(args, service.SolveRequest, **extra)
            resp = service.do_solve(request)
            if args.json:
                print(resp.model_dump_json(indent=2))
            else:
                _print_solve(resp)
            return 0

        if args.command == "table":
            resp = service.do_table()
            if args.json:
                print(resp.model_dump_json(indent=2))
            else:
                _print_table(resp)
            return 0

        if args.command == "render":
            extra = {
                "width_px": args.width,
                "height_px": args.height,
                "samples_per_branch": args.samples,
                "show_hidden": args.show_hidden,
            }
            if args.tol is not None:
                extra["tolerance"] = args.tol
            request = _equation_request(args, service.RenderRequest, **extra)
            svg = service.do_render(request)
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(svg)
            print(f"wrote {args.output}")
            return 0

        if args.command == "serve":
            import uvicorn

            uvicorn.run(service.app, host=args.host, port=args.port)
            return 0
    except service.INPUT_ERRORS as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return INPUT_EXIT
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    return USAGE_EXIT


if __name__ == "__main__":
    raise SystemExit(main())
