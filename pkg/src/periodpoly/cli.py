"""Command line interface.

Subcommands:
  verify      run the certification pipeline over a weight list, JSON out
  lemma-s     certify the sine-difference annulus zero count
  plotgrid    emit an x,y,logabs CSV grid for plotting
  bernoulli   exact Bernoulli-type odd period polynomials
  eigenforms  tabulate the Hecke eigenforms of one weight
  lvalues     tabulate critical L-values of one form

Exit status: 0 on success, 1 when a certification check fails, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from mpmath import mp, mpf, workprec

from .exact_series import cusp_dim
from .hecke import default_prec_bits, eigenforms
from .lfunction import lvalue_records
from .period_poly import (bernoulli_period_polynomial, odd_period_polynomial,
                          q_split, _bernoulli_period_exact)
from .report import (DEFAULT_GRID, _sine_cert_dict, lemma_s_certificate,
                     verify_weights, write_grid_csv)
from .zero_engine import refine_all_roots, sine_difference

__all__ = ["main"]


def _parse_weights(text: str) -> list[int]:
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo_s, hi_s = part.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if lo > hi:
                raise ValueError(f"empty range {part!r}")
            out.update(k for k in range(lo, hi + 1) if k % 2 == 0)
        else:
            out.add(int(part))
    bad = sorted(k for k in out if k < 12 or k % 2)
    if bad:
        raise ValueError(f"weights must be even and >= 12, got {bad}")
    return sorted(out)


def _parse_grid(text: str):
    parts = text.split(",")
    if len(parts) != 6:
        raise ValueError("grid spec needs XMIN,XMAX,YMIN,YMAX,NX,NY")
    xmin, xmax, ymin, ymax = (float(v) for v in parts[:4])
    nx, ny = int(parts[4]), int(parts[5])
    if not (xmin < xmax and ymin < ymax):
        raise ValueError("grid bounds must satisfy XMIN < XMAX and YMIN < YMAX")
    if nx < 2 or ny < 2:
        raise ValueError("grid needs at least 2 points per axis")
    return (xmin, xmax, ymin, ymax, nx, ny)


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _cmd_verify(args) -> int:
    try:
        weights = _parse_weights(args.weights)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    def progress(k, ok, dt):
        if not args.quiet:
            print(f"weight {k}: {'pass' if ok else 'FAIL'} ({dt:.1f}s)",
                  file=sys.stderr)

    report = verify_weights(
        weights,
        circle_tol=args.circle_tol,
        include_sine_certificate=not args.no_sine_certificate,
        progress=progress,
    )
    stream, close = _open_out(args.out)
    try:
        json.dump(report, stream, indent=1)
        stream.write("\n")
    finally:
        if close:
            stream.close()
    if args.emit_grids:
        import os

        os.makedirs(args.emit_grids, exist_ok=True)
        for k in weights:
            for f in eigenforms(k):
                poly = odd_period_polynomial(f)
                name = f"period_w{k}_f{f.conjugate_index}.csv"
                with open(os.path.join(args.emit_grids, name), "w",
                          encoding="utf-8") as gs:
                    write_grid_csv(gs, poly=poly, grid=args.grid)
                if not args.quiet:
                    print(f"wrote {name}", file=sys.stderr)
    return 0 if report["summary"]["all_passed"] else 1


def _cmd_lemma_s(args) -> int:
    cert = lemma_s_certificate(args.prec_bits)
    payload = _sine_cert_dict(cert)
    stream, close = _open_out(args.out)
    try:
        json.dump(payload, stream, indent=1)
        stream.write("\n")
    finally:
        if close:
            stream.close()
    return 0 if cert.passed else 1


def _cmd_plotgrid(args) -> int:
    k = args.weight
    if args.which in ("sine", "sinediff"):
        fn = (lambda z: mp.sin(2 * mp.pi * z)) if args.which == "sine" \
            else sine_difference
        stream, close = _open_out(args.out)
        try:
            write_grid_csv(stream, fn=fn, grid=args.grid)
        finally:
            if close:
                stream.close()
        return 0
    if k is None:
        print("error: --weight is required for polynomial grids",
              file=sys.stderr)
        return 2
    if k % 2 or k < 12 or cusp_dim(k) == 0:
        print(f"error: no cusp forms at weight {k}", file=sys.stderr)
        return 2
    forms = eigenforms(k)
    if not 0 <= args.form_index < len(forms):
        print(f"error: form index {args.form_index} out of range "
              f"(dim {len(forms)})", file=sys.stderr)
        return 2
    f = forms[args.form_index]
    poly = odd_period_polynomial(f) if args.which == "period" \
        else q_split(f)[0]
    stream, close = _open_out(args.out)
    try:
        write_grid_csv(stream, poly=poly, grid=args.grid)
    finally:
        if close:
            stream.close()
    return 0


def _cmd_bernoulli(args) -> int:
    n, w = args.even_index, args.weight
    try:
        exact = _bernoulli_period_exact(n, w)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    prec = args.prec_bits or default_prec_bits(w + 2)
    poly = bernoulli_period_polynomial(n, w, prec)
    roots = refine_all_roots(poly, prec)
    with workprec(prec):
        payload = {
            "even_index": n,
            "weight_parameter": w,
            "prec_bits": prec,
            "coefficients": [str(Fraction(c)) for c in exact],
            "roots": [{
                "re": mp.nstr(z.real, 30),
                "im": mp.nstr(z.imag, 30),
                "modulus_deviation": mp.nstr(abs(abs(z) - 1), 8),
            } for z in roots],
        }
    stream, close = _open_out(args.out)
    try:
        json.dump(payload, stream, indent=1)
        stream.write("\n")
    finally:
        if close:
            stream.close()
    return 0


def _cmd_eigenforms(args) -> int:
    k = args.weight
    if k % 2 or k < 12:
        print("error: weight must be even and >= 12", file=sys.stderr)
        return 2
    forms = eigenforms(k, n_coeffs=args.terms)
    print(f"weight {k}: dim {cusp_dim(k)}, precision "
          f"{default_prec_bits(k)} bits")
    for f in forms:
        print(f"  form {f.conjugate_index}: T2 eigenvalue = "
              f"{mp.nstr(f.t2_eigenvalue, 30)}  field degree {f.field_degree}"
              f"  deligne margin {mp.nstr(f.deligne_margin(), 8)}")
        head = ", ".join(mp.nstr(f.a(n), 12) for n in range(1, 8))
        print(f"    a(1..7) = {head}")
    return 0


def _cmd_lvalues(args) -> int:
    k = args.weight
    if k % 2 or k < 12 or cusp_dim(k) == 0:
        print(f"error: no cusp forms at weight {k}", file=sys.stderr)
        return 2
    forms = eigenforms(k)
    if not 0 <= args.form_index < len(forms):
        print(f"error: form index {args.form_index} out of range "
              f"(dim {len(forms)})", file=sys.stderr)
        return 2
    f = forms[args.form_index]
    print(f"weight {k} form {args.form_index}: critical L-values "
          f"(tail bound per value)")
    for rec in lvalue_records(f):
        print(f"  s={rec.s:3d}  L = {mp.nstr(rec.value, 30)}   "
              f"tail <= {mp.nstr(rec.tail_bound, 4)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="periodpoly",
        description="Hecke eigenforms, critical L-values, and certified "
                    "zero localization of odd period polynomials.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the certification pipeline")
    v.add_argument("--weights", default="12..120",
                   help="comma list with A..B ranges, e.g. 12..40,120,200")
    v.add_argument("--out", default=None, help="JSON output path (default stdout)")
    v.add_argument("--circle-tol", type=float, default=None,
                   help="unit-circle modulus tolerance (default 1e-20)")
    v.add_argument("--no-sine-certificate", action="store_true",
                   help="skip the annulus certificate for the sine difference")
    v.add_argument("--emit-grids", metavar="DIR", default=None,
                   help="also write one plot grid CSV per form into DIR")
    v.add_argument("--grid", type=_parse_grid, default=DEFAULT_GRID,
                   help="XMIN,XMAX,YMIN,YMAX,NX,NY for --emit-grids")
    v.add_argument("--quiet", action="store_true")
    v.set_defaults(fn=_cmd_verify)

    ls = sub.add_parser("lemma-s", help="sine-difference annulus certificate")
    ls.add_argument("--prec-bits", type=int, default=113)
    ls.add_argument("--out", default=None)
    ls.set_defaults(fn=_cmd_lemma_s)

    pg = sub.add_parser("plotgrid", help="emit an x,y,logabs CSV grid")
    pg.add_argument("--weight", type=int, default=None)
    pg.add_argument("--form-index", type=int, default=0)
    pg.add_argument("--which", choices=("period", "qhalf", "sine", "sinediff"),
                    default="period")
    pg.add_argument("--grid", type=_parse_grid, default=DEFAULT_GRID,
                    help="XMIN,XMAX,YMIN,YMAX,NX,NY (default -2.5,2.5,-2.5,2.5,501,501)")
    pg.add_argument("--out", default=None)
    pg.set_defaults(fn=_cmd_plotgrid)

    bn = sub.add_parser("bernoulli",
                        help="exact Bernoulli-type odd period polynomial")
    bn.add_argument("--even-index", type=int, required=True,
                    help="even index n with 0 < n < weight parameter")
    bn.add_argument("--weight", type=int, required=True,
                    help="weight parameter w (even, >= 6)")
    bn.add_argument("--prec-bits", type=int, default=None)
    bn.add_argument("--out", default=None)
    bn.set_defaults(fn=_cmd_bernoulli)

    ef = sub.add_parser("eigenforms", help="tabulate eigenforms of a weight")
    ef.add_argument("--weight", type=int, required=True)
    ef.add_argument("--terms", type=int, default=None,
                    help="number of q-expansion coefficients")
    ef.set_defaults(fn=_cmd_eigenforms)

    lv = sub.add_parser("lvalues", help="tabulate critical L-values")
    lv.add_argument("--weight", type=int, required=True)
    lv.add_argument("--form-index", type=int, default=0)
    lv.set_defaults(fn=_cmd_lvalues)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
