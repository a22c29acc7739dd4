"""Command-line entry point: ``fracbessel {eval,shift,represent,verify,lommel}``.

Complex arguments are written "RE" or "RE,IM"; a leading minus needs the
``--opt=-1,2`` spelling.  Exit codes: 0 success, 1 identity failure,
2 usage or configuration error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import sys

from . import fracops, groupaction, harness, intreps
from .besselcore import BesselKind, evaluate
from .errors import (
    ConfigError, ConvergenceError, DomainError, GeometryError, IoError, PoleError,
    QuadratureNonConvergence, RadiusError, TailError, ValidityError,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
KINDS = [k.value for k in BesselKind]


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}") from None
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def fmt(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracbessel", description="Fractional order shifts of Bessel functions.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a Bessel function")
    e.add_argument("--kind", required=True, choices=KINDS)
    e.add_argument("--nu", required=True, type=parse_complex)
    e.add_argument("--x", required=True, type=parse_complex)
    e.add_argument("--derivative", action="store_true", help="d/dz instead of the value")

    s = sub.add_parser("shift", help="fractional order shift by quadrature")
    s.add_argument("--route", required=True, choices=["weyl-raise", "riemann-lower", "weyl-lower"])
    s.add_argument("--kind", required=True, choices=KINDS)
    s.add_argument("--nu", required=True, type=parse_complex)
    s.add_argument("--mu", required=True, type=parse_complex)
    s.add_argument("--z", required=True, type=parse_complex)
    s.add_argument("--form", choices=["loop", "collapsed"], help="default: chosen from Re mu")
    s.add_argument("--tol", type=_positive, default=fracops.QUAD_TOL, help="quadrature tolerance")

    r = sub.add_parser("represent", help="integral representation of a Bessel function")
    r.add_argument("--family", required=True, choices=["mehler-sonine", "hankel-loop", "poisson"])
    r.add_argument("--kind", required=True, choices=KINDS)
    r.add_argument("--order", required=True, type=parse_complex)
    r.add_argument("--x", required=True, type=parse_complex)
    r.add_argument("--tol", type=_positive, default=intreps.QUAD_TOL)

    v = sub.add_parser("verify", help="run the identity suite")
    v.add_argument("--identities", help="comma-separated identity ids (default: all)")
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--quad-tol", type=float, default=1e-11)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--n-random", type=int, default=16, help="random points per identity")
    v.add_argument("--format", choices=["json", "csv"], default="json")
    v.add_argument("--out", help="report path (default: stdout)")
    v.add_argument("--list", action="store_true", help="list identity ids and exit")

    lo = sub.add_parser("lommel", help="Lommel partial sum against the closed-form translation")
    lo.add_argument("--kind", required=True, choices=KINDS)
    lo.add_argument("--nu", required=True, type=parse_complex)
    lo.add_argument("--x", required=True, type=parse_complex)
    lo.add_argument("--t", type=parse_complex, default=1 + 0j)
    lo.add_argument("--u", required=True, type=parse_complex)
    lo.add_argument("--terms", type=int, default=40)
    lo.add_argument("--direction", choices=["plus", "minus"], default="plus")
    return p


def _cmd_eval(a) -> int:
    print(fmt(complex(evaluate(a.kind, a.nu, a.x, derivative=a.derivative))))
    return EXIT_OK


def _cmd_shift(a) -> int:
    req = fracops.ShiftRequest.make(a.route, a.kind, a.nu, a.mu, a.z, a.form, tol=a.tol)
    res = fracops.shift(req)
    ref = fracops.closed_form(req)
    print(f"value    {fmt(res.value)}")
    print(f"form     {res.form.value}")
    print(f"residual {harness.rel_err(res.value, ref):.3e}")
    return EXIT_OK


def _cmd_represent(a) -> int:
    req = intreps.ReprRequest(a.kind, a.order, a.x, a.family, tol=a.tol)
    val = intreps.represent(req)
    ref = complex(evaluate(a.kind, a.order, a.x))
    print(f"value    {fmt(val)}")
    print(f"residual {harness.rel_err(val, ref):.3e}")
    return EXIT_OK


def _cmd_verify(a) -> int:
    if a.list:
        for i in harness.identity_ids():
            print(i)
        return EXIT_OK
    ids = None
    if a.identities:
        ids = frozenset(s.strip() for s in a.identities.split(",") if s.strip())
    cfg = harness.SuiteConfig(tol=a.tol, quad_tol=a.quad_tol, identities=ids, seed=a.seed,
                              output_path=a.out, output_format=a.format, n_random=a.n_random)
    reports = harness.run_suite(cfg)
    if a.out:
        harness.emit_report(reports, a.format, a.out)
        for r in reports:
            print(f"{r.status:7s} {r.identity_id:34s} n={r.grid_size:<5d} skips={r.n_validity_skips:<4d} "
                  f"max_rel_err={r.max_rel_err:.2e}")
    else:
        text = harness.format_report(reports, a.format)
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK if all(r.status == "pass" for r in reports) else EXIT_FAIL


def _cmd_lommel(a) -> int:
    g = groupaction.GroupShift(a.kind, a.nu, a.x, a.t, a.u, a.direction)
    s, last = groupaction.lommel_series(g, a.terms)
    closed = groupaction.group_shift(g)
    print(f"partial_sum {fmt(s)}")
    print(f"closed_form {fmt(closed)}")
    print(f"error       {harness.rel_err(s, closed):.3e}")
    print(f"last_term   {last:.3e}")
    return EXIT_OK


COMMANDS = {"eval": _cmd_eval, "shift": _cmd_shift, "represent": _cmd_represent,
            "verify": _cmd_verify, "lommel": _cmd_lommel}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (QuadratureNonConvergence, TailError, ConvergenceError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValidityError, DomainError, PoleError, RadiusError, ConfigError, IoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
