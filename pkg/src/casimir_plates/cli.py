"""Command-line front end: point evaluation, sweeps, verification, figures.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 evaluation error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys as _sys

from .errors import CasimirError
from .free_energy import (
    PlateKind,
    PlateSystem,
    ThermalPoint,
    evaluate_free_energy,
    free_energy_auto,
    zero_temperature_energy,
)
from .pressure import evaluate_pressure, pressure_auto, pressure_zero_T
from .specfun import EvalResult, SeriesControl
from .verification import GRIDS, run_all

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_EVAL = 3
EXIT_IO = 4

_QUANTITIES = ("free_energy", "pressure", "f_scaled", "p_scaled")
_REPS = (
    "auto",
    "bessel",
    "coth",
    "double",
    "poisson",
    "lattice",
    "mode-integral",
    "low",
    "high",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; keep it explicit
        self.print_usage(_sys.stderr)
        print(f"{self.prog}: error: {message}", file=_sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    p = _Parser(prog="casimir", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--d", type=float, default=1.0)
        sp.add_argument("--system", choices=("boyer", "conductor"), default="boyer")
        sp.add_argument("--rep", choices=_REPS, default="auto")
        sp.add_argument("--tol", type=float, default=1e-12)
        sp.add_argument("--max-terms", type=int, default=10**6)

    e = sub.add_parser("eval", help="evaluate one quantity at one point")
    e.add_argument("--quantity", choices=_QUANTITIES, required=True)
    e.add_argument("--beta", type=float)
    e.add_argument("--xi", type=float)
    common(e)

    s = sub.add_parser("sweep", help="sweep xi and write a CSV")
    s.add_argument("--quantity", choices=_QUANTITIES, required=True)
    s.add_argument("--xi-min", type=float, required=True)
    s.add_argument("--xi-max", type=float, required=True)
    s.add_argument("--points", type=int, default=100)
    s.add_argument("--spacing", choices=("linear", "log"), default="linear")
    s.add_argument("--out", required=True)
    common(s)

    v = sub.add_parser("verify", help="run the invariant suite")
    v.add_argument("--grid", choices=tuple(GRIDS), default="default")
    v.add_argument("--tamper", choices=("bessel-sign",), default=None)

    f = sub.add_parser("figure", help="emit figure data as CSV")
    f.add_argument("id", type=int, choices=(1, 2, 3))
    f.add_argument("--out", required=True)
    f.add_argument("--points", type=int, default=201)
    return p


def _ctl(args) -> SeriesControl:
    return SeriesControl(rel_tol=args.tol, max_terms=args.max_terms)


def _point_quantity(quantity: str, system: str, rep: str, xi: float, d: float, ctl) -> EvalResult:
    sys_ = PlateSystem(d, system)
    if quantity in ("free_energy", "f_scaled"):
        if xi == 0.0:
            r = EvalResult(zero_temperature_energy(sys_), 0.0, 0, "zero-T")
        elif rep == "auto":
            r = free_energy_auto(sys_, xi, ctl)
        else:
            r = evaluate_free_energy(sys_, ThermalPoint.from_xi(xi, d), ctl, rep)
        if quantity == "f_scaled":
            q = d**3
            r = EvalResult(q * r.value, q * r.abs_err_est, r.terms_used, r.rep)
        return r
    if sys_.kind is not PlateKind.BOYER_MIXED:
        raise CasimirError("pressure is provided for the boyer system only")
    if rep != "auto":
        raise CasimirError("pressure evaluation is routed; use --rep auto")
    r = pressure_auto(d, xi, ctl)
    if quantity == "p_scaled":
        q = d**4
        r = EvalResult(q * r.value, q * r.abs_err_est, r.terms_used, r.rep)
    return r


def _resolve_xi(args) -> float:
    if args.beta is not None and args.xi is not None:
        raise SystemExit(EXIT_USAGE)
    if args.beta is None and args.xi is None:
        raise SystemExit(EXIT_USAGE)
    if args.beta is not None:
        if args.beta <= 0.0:
            raise SystemExit(EXIT_USAGE)
        return args.d / (math.pi * args.beta)
    if args.xi < 0.0:
        raise SystemExit(EXIT_USAGE)
    return args.xi


def _cmd_eval(args) -> int:
    xi = _resolve_xi(args)
    try:
        r = _point_quantity(args.quantity, args.system, args.rep, xi, args.d, _ctl(args))
    except CasimirError as exc:
        print(f"evaluation error ({args.rep}): {exc}", file=_sys.stderr)
        return EXIT_EVAL
    print(f"{r.value:.16e} {r.abs_err_est:.3e} {r.terms_used} {r.rep}")
    return EXIT_OK


def _grid(xi_min: float, xi_max: float, points: int, spacing: str):
    if points < 2 or not 0.0 <= xi_min < xi_max:
        raise SystemExit(EXIT_USAGE)
    if spacing == "log":
        if xi_min <= 0.0:
            raise SystemExit(EXIT_USAGE)
        la, lb = math.log(xi_min), math.log(xi_max)
        return [math.exp(la + (lb - la) * i / (points - 1)) for i in range(points)]
    return [xi_min + (xi_max - xi_min) * i / (points - 1) for i in range(points)]


def _write_csv(path: str, header: str, rows) -> int:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(header + "\n")
            for row in rows:
                fh.write(",".join(row) + "\n")
    except OSError as exc:
        print(f"I/O error: {exc}", file=_sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_sweep(args) -> int:
    xs = _grid(args.xi_min, args.xi_max, args.points, args.spacing)
    ctl = _ctl(args)
    rows = []
    try:
        for xi in xs:
            r = _point_quantity(args.quantity, args.system, args.rep, xi, args.d, ctl)
            rows.append((f"{xi:.16e}", f"{r.value:.16e}", f"{r.abs_err_est:.16e}", r.rep))
    except CasimirError as exc:
        print(f"evaluation error ({args.rep}): {exc}", file=_sys.stderr)
        return EXIT_EVAL
    return _write_csv(args.out, "xi,value,abs_err_est,rep", rows)


def _cmd_verify(args) -> int:
    checks = run_all(grid=args.grid, tamper=args.tamper)
    width = max(len(c.name) for c in checks)
    ok = True
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        ok = ok and c.passed
        print(f"{c.name:<{width}}  residual={c.residual:.3e}  tol={c.tolerance:.1e}  {status}")
    print("verify:", "all checks passed" if ok else "FAILURES present")
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_figure(args) -> int:
    n = max(args.points, 200)
    ctl = SeriesControl(rel_tol=1e-12)
    try:
        if args.id == 1 or args.id == 2:
            lo, hi = (0.0, 0.6) if args.id == 1 else (0.3, 3.0)
            header = "xi,f_boyer,f_conductor,f_boyer_zeroT_line,f_conductor_zeroT_line"
            if args.id == 2:
                header += ",sb_curve"
            fb0 = zero_temperature_energy(PlateSystem(1.0))
            fc0 = zero_temperature_energy(PlateSystem(1.0, "conductor"))
            rows = []
            for xi in _grid(lo, hi, n, "linear"):
                if xi == 0.0:
                    fb, fc = fb0, fc0
                else:
                    fb = free_energy_auto(PlateSystem(1.0), xi, ctl).value
                    fc = free_energy_auto(PlateSystem(1.0, "conductor"), xi, ctl).value
                row = [f"{xi:.16e}", f"{fb:.16e}", f"{fc:.16e}", f"{fb0:.16e}", f"{fc0:.16e}"]
                if args.id == 2:
                    row.append(f"{-math.pi**6 * xi**4 / 45.0:.16e}")
                rows.append(tuple(row))
        else:
            header = "xi,p_boyer,p_zeroT_line"
            p0 = pressure_zero_T(PlateSystem(1.0))
            rows = []
            for xi in _grid(0.0, 1.0, n, "linear"):
                p = pressure_auto(1.0, xi, ctl).value
                rows.append((f"{xi:.16e}", f"{p:.16e}", f"{p0:.16e}"))
    except CasimirError as exc:
        print(f"evaluation error: {exc}", file=_sys.stderr)
        return EXIT_EVAL
    return _write_csv(args.out, header, rows)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "eval":
        return _cmd_eval(args)
    if args.command == "sweep":
        return _cmd_sweep(args)
    if args.command == "verify":
        return _cmd_verify(args)
    return _cmd_figure(args)


if __name__ == "__main__":
    raise SystemExit(main())
