"""Command-line front end.

    scarf2 spectrum   --alpha=-3 --beta=-3
    scarf2 pseudonorm --alpha=-4.5 --beta=-4.5 [--delta-sign=-1] [--check]
    scarf2 verify     [--grid-file=FILE] [--tol=1e-8] [--rel-tol=...]
    scarf2 sweep      --beta=-3 --path="real:-1..0:5,imag:0..0.5:5" --n=0
    scarf2 identities [--max-n=12]

Complex numbers are written "a+bi", "bi" or "a". Tables go to --output (or
stdout) as CSV or JSON; complex columns are split into ``_re``/``_im``.
Exit codes: 0 pass, 1 verification failure, 2 usage or I/O error.
"""
import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from scarf2 import __version__
from scarf2 import closed_forms as cf
from scarf2 import identities, verification
from scarf2.model import DomainError, ScarfParams, StateIndex, energy, is_imaginary, is_real, states
from scarf2.quadrature import QuadratureControls, overlap_numeric
from scarf2.special_functions import PoleError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MOMENT_MAX_L = 20

_NUMBER = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_REAL = re.compile(rf"[+-]?{_NUMBER}")
_IMAG = re.compile(rf"[+-]?(?:{_NUMBER})?")
_BOTH = re.compile(rf"(?P<re>[+-]?{_NUMBER})(?P<im>[+-](?:{_NUMBER})?)")


class UsageError(Exception):
    pass


def _coef(text):
    return {"": 1.0, "+": 1.0, "-": -1.0}.get(text) or float(text)


def parse_complex(text):
    """'a+bi', 'bi', 'a', 'i', '-i' -> complex."""
    s = text.strip().replace(" ", "")
    if s.endswith("i"):
        body = s[:-1]
        if _IMAG.fullmatch(body):
            return complex(0.0, _coef(body))
        m = _BOTH.fullmatch(body)
        if m:
            return complex(float(m.group("re")), _coef(m.group("im")))
    elif _REAL.fullmatch(s):
        return complex(float(s), 0.0)
    raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def format_complex(z):
    """Inverse of :func:`parse_complex`, 17 significant digits."""
    re_part, im_part = z.real + 0.0, z.imag + 0.0
    if im_part == 0:
        return format(re_part, ".17g")
    if re_part == 0:
        return format(im_part, ".17g") + "i"
    return f"{re_part:.17g}{im_part:+.17g}i"


def parse_path(text):
    """Comma-separated complex values or 'real:a..b:steps' / 'imag:c..d:steps' segments."""
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            raise UsageError(f"empty path element in {text!r}")
        if token.startswith(("real:", "imag:")):
            kind, rng, steps = _split_segment(token)
            lo, hi = (float(v) for v in rng)
            pts = np.linspace(lo, hi, steps)
            out += [complex(v) if kind == "real" else complex(0.0, v) for v in pts]
        else:
            try:
                out.append(parse_complex(token))
            except argparse.ArgumentTypeError as exc:
                raise UsageError(str(exc)) from None
    return out


def _split_segment(token):
    parts = token.split(":")
    try:
        kind, rng, steps = parts
        lo, hi = rng.split("..")
        steps = int(steps)
        float(lo), float(hi)
    except ValueError:
        raise UsageError(f"bad path segment {token!r}; expected real:a..b:steps") from None
    if steps < 1:
        raise UsageError(f"path segment {token!r} needs at least one step")
    return kind, (lo, hi), steps


def read_grid_file(path):
    """Lines 'alpha beta'; blank lines and '#' comments are ignored."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            fields = body.split()
            if len(fields) != 2:
                raise UsageError(f"{path}:{lineno}: expected 'alpha beta', got {line.strip()!r}")
            try:
                pairs.append((parse_complex(fields[0]), parse_complex(fields[1])))
            except argparse.ArgumentTypeError as exc:
                raise UsageError(f"{path}:{lineno}: {exc}") from None
    return verification.grid_from_pairs(pairs)


# output

def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def flatten_row(row):
    """Split complex values into _re/_im columns; numpy scalars become Python ones."""
    out = {}
    for key, v in row.items():
        # + 0.0 folds negative zero
        if isinstance(v, (complex, np.complexfloating)):
            out[f"{key}_re"] = float(v.real) + 0.0
            out[f"{key}_im"] = float(v.imag) + 0.0
        elif isinstance(v, (float, np.floating)):
            out[key] = float(v) + 0.0
        else:
            out[key] = v
    return out


def render(rows, columns, fmt, meta):
    if fmt == "json":
        doc = {"meta": meta,
               "rows": [{c: _json_value(r.get(c)) for c in columns} for r in rows]}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def _columns(spec):
    cols = []
    for name, kind in spec:
        cols += [f"{name}_re", f"{name}_im"] if kind == "complex" else [name]
    return cols


def emit(args, rows, spec):
    rows = [flatten_row(r) for r in rows]
    meta = {"version": __version__, "command": args.command,
            "params": _params(args), "seed": args.seed}
    text = render(rows, _columns(spec), args.format, meta)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _params(args):
    skip = {"command", "func", "format", "output", "seed"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        out[k] = format_complex(v) if isinstance(v, complex) else v
    return out


def _controls(args):
    return QuadratureControls(args.quad_tol) if args.quad_tol else QuadratureControls()


def _note(msg):
    print(msg, file=sys.stderr)


# commands

SPECTRUM_COLUMNS = [("n", "int"), ("quasi_parity", "int"), ("energy", "complex")]


def cmd_spectrum(args):
    params = ScarfParams(args.alpha, args.beta)
    parities = {"+1": (1,), "-1": (-1,), "both": (1, -1)}[args.parity]
    rows = [{"n": s.n, "quasi_parity": s.quasi_parity, "energy": complex(energy(params, s))}
            for s in states(params, parities)]
    if not rows:
        _note(f"no bound states for alpha={args.alpha}, beta={args.beta}")
    emit(args, rows, SPECTRUM_COLUMNS)
    return EXIT_OK


PSEUDONORM_COLUMNS = [("n", "int"), ("l", "int"), ("value", "complex"), ("sign", "int"),
                      ("vanishing_reason", "str"), ("follows_alternation", "bool"),
                      ("note", "str"), ("oracle_residual", "float")]


def cmd_pseudonorm(args):
    a, b = args.alpha, args.beta
    if not is_real(b) or not (is_real(a) or is_imaginary(a)):
        raise DomainError("pseudonorm needs real beta and real or purely imaginary alpha")
    params = ScarfParams(a, b)
    table = {}
    if is_real(a) and args.delta_sign == 1 and states(params, (1,)):
        table = {r.n: r for r in verification.sign_table(a, b)}
    rows = []
    controls = _controls(args)
    for s in states(params, (1,)):
        r = cf.pseudo_inner(a, b, args.delta_sign, s.n, s.n)
        row = {"n": s.n, "l": s.n, "value": r.value, "sign": r.sign,
               "vanishing_reason": r.vanishing_reason}
        if s.n in table:
            row["follows_alternation"] = table[s.n].follows_alternation
            row["note"] = table[s.n].note
        if args.check:
            bra = StateIndex(s.n, args.delta_sign)
            try:
                est = overlap_numeric(params, bra, s, True, True, None, controls)
                row["oracle_residual"] = abs(est.value - r.value)
            except DomainError:
                row["note"] = (row.get("note") or "") + "bra is not a bound state; no oracle"
        rows.append(row)
    if not rows:
        _note(f"no bound states for alpha={a}, beta={b}")
    emit(args, rows, PSEUDONORM_COLUMNS)
    return EXIT_OK


VERIFY_COLUMNS = [("case_id", "str"), ("closed_value", "complex"), ("oracle_value", "complex"),
                  ("abs_diff", "float"), ("tolerance", "float"), ("oracle_error_est", "float"),
                  ("pass", "bool"), ("note", "str")]


def cmd_verify(args):
    grid = read_grid_file(args.grid_file) if args.grid_file else None
    report = verification.verify_closed_forms(grid, tol=args.tol, rel_tol=args.rel_tol,
                                              controls=_controls(args))
    rows = [{"case_id": e.case_id, "closed_value": e.closed_value, "oracle_value": e.oracle_value,
             "abs_diff": e.abs_diff, "tolerance": e.tolerance,
             "oracle_error_est": e.oracle_error_est, "pass": e.passed, "note": e.note}
            for e in report.entries]
    emit(args, rows, VERIFY_COLUMNS)
    failed = sum(not e.passed for e in report.entries)
    _note(f"entries={len(report.entries)} failed={failed} "
          f"max_abs_diff={report.max_abs_diff:.3e} all_pass={report.all_pass}")
    return EXIT_OK if report.all_pass else EXIT_FAIL


SWEEP_COLUMNS = [("alpha", "complex"), ("beta", "float"), ("n", "int"), ("quasi_parity", "int"),
                 ("status", "str"), ("energy", "complex"), ("im_energy_formula", "float"),
                 ("im_energy_ratio", "float"), ("im_energy_quadrature", "float"),
                 ("pseudo_norm", "complex"), ("pseudo_norm_sign", "int"),
                 ("vanishing_reason", "str"), ("closed_residual", "float"),
                 ("oracle_residual", "float"), ("closed_vs_oracle", "float")]


def cmd_sweep(args):
    if not is_real(args.beta):
        raise DomainError("sweep needs a real beta")
    path = parse_path(args.path)
    records = verification.pt_breaking_sweep(args.beta.real, path, args.n, args.parity,
                                             _controls(args))
    rows = []
    for rec in records:
        row = {name: getattr(rec, name, None) for name, _ in SWEEP_COLUMNS if name != "status"}
        row["status"] = "ok" if rec.has_state else "no_state"
        rows.append(row)
    emit(args, rows, SWEEP_COLUMNS)
    return EXIT_OK


IDENTITY_COLUMNS = [("identity", "str"), ("n", "int"), ("m", "int"), ("holds", "bool"),
                    ("detail", "str")]


def cmd_identities(args):
    if not 0 <= args.max_n <= identities.MAX_PROOF_N:
        raise UsageError(f"--max-n must lie in [0, {identities.MAX_PROOF_N}]")
    rows = []
    for l in range(MOMENT_MAX_L + 1):
        for j in range(l + 1):
            value = identities.binomial_moment_sum(l, j)
            expected = (-1) ** l * math.factorial(l) if j == l else 0
            rows.append({"identity": "moment_sum", "n": l, "m": j, "holds": value == expected,
                         "detail": str(value)})
    sign = -1 if args.negative_control else 1
    for n in range(args.max_n + 1):
        for m in range(n + 1):
            res = identities.new_sum_rule_prove(n, m, rhs_sign=sign)
            detail = f"degree={res.degree}"
            if not res:
                (i, j), c = res.offending
                detail += f"; coefficient of a^{i} b^{j} is {c}"
            rows.append({"identity": "new_sum_rule", "n": n, "m": m, "holds": bool(res),
                         "detail": detail})
    emit(args, rows, IDENTITY_COLUMNS)
    failed = sum(not r["holds"] for r in rows)
    _note(f"identities checked={len(rows)} failed={failed}")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def _parity(text):
    if text in ("+1", "1"):
        return 1
    if text == "-1":
        return -1
    raise argparse.ArgumentTypeError(f"expected +1 or -1, got {text!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", help="output file (default: stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--quad-tol", type=float, default=None,
                        help="quadrature target absolute tolerance (default: $SCARF2_QUAD_TOL or 1e-10)")

    parser = argparse.ArgumentParser(prog="scarf2", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"scarf2 {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="bound-state energies")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--beta", type=parse_complex, required=True)
    p.add_argument("--parity", choices=("+1", "-1", "both"), default="both")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("pseudonorm", parents=[common], help="PT inner products per n")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--beta", type=parse_complex, required=True)
    p.add_argument("--delta-sign", type=_parity, default=1)
    p.add_argument("--check", action="store_true", help="add a quadrature residual column")
    p.set_defaults(func=cmd_pseudonorm)

    p = sub.add_parser("verify", parents=[common], help="closed forms against quadrature")
    p.add_argument("--grid-file")
    p.add_argument("--tol", type=float, default=verification.DEFAULT_TOL)
    p.add_argument("--rel-tol", type=float, default=None,
                   help="relative tolerance (default: 100 * tol)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="alpha path through the PT transition")
    p.add_argument("--beta", type=parse_complex, required=True)
    p.add_argument("--path", required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--parity", type=_parity, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("identities", parents=[common], help="exact binomial sum checks")
    p.add_argument("--max-n", type=int, default=identities.MAX_PROOF_N)
    p.add_argument("--negative-control", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_identities)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError, PoleError, cf.DivergenceError, OSError) as exc:
        print(f"scarf2 {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
