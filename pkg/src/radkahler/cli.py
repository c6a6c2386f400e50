"""Command-line front end.

Exit codes: 0 success / all clear, 1 usage or runtime error, 2 an obstruction
was found (obstruct / det1 / stability), 3 a documented claim is discrepant
(reproduce).  Output files are written atomically (temp file + rename).

Parameter sources (exactly one): --params FILE, --params-json JSON,
--example ID.  Defaults for K and the integration tolerance can come from
the environment (RADKAHLER_KMAX, RADKAHLER_TOL).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from fractions import Fraction
from typing import Optional

from .errors import ParseError, RadKahlerError
from .family import (
    ExtremalParams,
    build_psi,
    classify,
    positivity_domain,
    scalar_curvature,
)
from .jsonio import dump_json, parse_params, parse_rational
from .ke import ke_invariants, stability_scan
from .laurent import fraction_str
from .profiles import domain_endpoints, integrate_profile, interior_series
from .registry import builtin_profile, example_ids, reproduce
from .resolvability import (
    det_test_dim1,
    extremes_closed_form,
    obstruction_scan,
    q_sequence,
    zero_index,
)
from .roots import Interval, isolate_positive_roots

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_OBSTRUCTED = 2
EXIT_DISCREPANT = 3


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    return float(raw) if raw else default


def write_atomic(path: str, text: str) -> None:
    """Write via a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".radkahler-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        write_atomic(args.output, text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def load_params(args) -> ExtremalParams:
    sources = [
        args.params is not None,
        args.params_json is not None,
        args.example is not None,
    ]
    if sum(sources) != 1:
        raise ParseError("exactly one of --params, --params-json, --example is required")
    if args.params is not None:
        with open(args.params) as handle:
            return parse_params(handle.read())
    if args.params_json is not None:
        return parse_params(args.params_json)
    return builtin_profile(args.example).params


def choose_auto_anchor(params: ExtremalParams) -> Fraction:
    """Heuristic anchor for --domain auto.

    Midpoint of the two smallest positive roots of psi when there are at
    least two, else smallest root + 1, else 1; if psi fails to be positive
    there, fall back to midpoints of consecutive root gaps (including
    (0, r_1) and a unit step past the largest root).
    """
    psi = build_psi(params)
    roots = sorted(r.midpoint() if r.exact is None else r.exact
                   for r in isolate_positive_roots(psi))
    candidates = []
    if len(roots) >= 2:
        candidates.append((roots[0] + roots[1]) / 2)
    elif roots:
        candidates.append(roots[0] + 1)
    candidates.append(Fraction(1))
    if roots:
        gaps = [Fraction(0)] + roots + [roots[-1] + 2]
        candidates.extend((a + b) / 2 for a, b in zip(gaps, gaps[1:]))
    for anchor in candidates:
        if anchor > 0 and not psi.is_zero and psi(anchor) > 0:
            return anchor
    raise ParseError("could not find a positive anchor automatically; pass --domain lo,hi")


def parse_domain(args, params: ExtremalParams) -> Interval:
    spec = args.domain
    if spec == "auto":
        return positivity_domain(params, choose_auto_anchor(params)).interval()
    try:
        lo_text, hi_text = spec.split(",")
        lo = parse_rational(lo_text.strip(), "domain.lo")
        hi_text = hi_text.strip()
        hi = None if hi_text in ("inf", "") else parse_rational(hi_text, "domain.hi")
        return Interval(lo, hi)
    except ValueError as exc:
        raise ParseError(f"domain must be 'auto' or 'lo,hi' (hi may be inf): {exc}") from None


def _add_params_args(sub) -> None:
    sub.add_argument("--params", help="path to a parameter JSON file")
    sub.add_argument("--params-json", help="inline parameter JSON")
    sub.add_argument("--example", help="registry example id")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    params = load_params(args)
    cls = classify(params)
    sc = scalar_curvature(params)
    data = {
        "params": params.to_json_dict(),
        "class": cls.to_json_dict(),
        "psi": build_psi(params).to_json_dict(),
        "scalar_curvature": {
            "gamma1": fraction_str(sc.gamma1),
            "gamma2": fraction_str(sc.gamma2),
        },
    }
    if args.format == "text":
        _emit(args, f"psi = {build_psi(params)}\nclass = {cls.to_json_dict()}\n"
                    f"s(y) = {sc.s}")
    else:
        _emit(args, dump_json(data))
    return EXIT_OK


def cmd_qtable(args) -> int:
    params = load_params(args)
    seq = q_sequence(params, args.eps, args.kmax)
    rows = []
    for k in range(1, args.kmax + 1):
        q = seq.q(k)
        row: dict = {"k": k}
        if q.is_zero:
            row["zero"] = True
        else:
            row.update(
                degree=q.degree,
                valuation=q.valuation,
                leading=fraction_str(q.leading_coefficient),
                trailing=fraction_str(q.trailing_coefficient),
                terms=len(q),
            )
            if params.n >= 2 and k >= 2:
                for which in ("leading", "lower"):
                    pred = extremes_closed_form(params, args.eps, k, which)
                    row[f"predicted_{which}"] = (
                        None
                        if pred.degenerate
                        else {"exponent": pred.exponent, "coefficient": fraction_str(pred.coefficient)}
                    )
        rows.append(row)
    zk = zero_index(params, args.eps, args.kmax)
    data = {"params": params.to_json_dict(), "eps": args.eps, "rows": rows, "zero_index": zk}
    if args.format == "csv":
        lines = ["k,degree,valuation,leading,trailing"]
        for row in rows:
            if row.get("zero"):
                lines.append(f"{row['k']},,,0,0")
            else:
                lines.append(
                    f"{row['k']},{row['degree']},{row['valuation']},{row['leading']},{row['trailing']}"
                )
        _emit(args, "\n".join(lines))
    else:
        _emit(args, dump_json(data))
    return EXIT_OK


def cmd_obstruct(args) -> int:
    params = load_params(args)
    domain = parse_domain(args, params)
    report = obstruction_scan(params, args.eps, domain, args.kmax)
    _emit(args, dump_json({"params": params.to_json_dict(), "eps": args.eps, **report.to_json_dict()}))
    return EXIT_OBSTRUCTED if report.obstructed else EXIT_OK


def cmd_det1(args) -> int:
    params = load_params(args)
    domain = parse_domain(args, params)
    report = det_test_dim1(params, args.eps, args.imax, domain)
    _emit(args, dump_json({"params": params.to_json_dict(), **report.to_json_dict()}))
    return EXIT_OK if report.clear else EXIT_OBSTRUCTED


def cmd_profile(args) -> int:
    params = load_params(args)
    if args.y0 is None:
        anchor = choose_auto_anchor(params)
        y0 = float(anchor)
    else:
        y0 = args.y0
    t0 = args.t0
    profile = integrate_profile(
        params, y0, t0, (args.t_min, args.t_max), tol=args.tol
    )
    lines = ["t,r,y,f,s"]
    for row in profile.rows():
        lines.append(",".join(f"{v:.17g}" for v in row))
    _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_series(args) -> int:
    params = load_params(args)
    r0 = parse_rational(args.r0, "r0")
    y0 = parse_rational(args.y0, "y0")
    values = interior_series(params, args.eps, r0, y0, args.kmax)
    data = {
        "params": params.to_json_dict(),
        "eps": args.eps,
        "r0": fraction_str(r0),
        "y0": fraction_str(y0),
        "g": [fraction_str(v) for v in values],
    }
    _emit(args, dump_json(data))
    return EXIT_OK


def cmd_ke(args) -> int:
    params = load_params(args)
    anchor = parse_rational(args.anchor, "anchor") if args.anchor else choose_auto_anchor(params)
    diag = ke_invariants(params, anchor)
    endpoints = domain_endpoints(params, anchor)
    data = diag.to_json_dict()
    data["endpoints"] = endpoints.to_json_dict()
    _emit(args, dump_json(data))
    return EXIT_OK


def cmd_stability(args) -> int:
    params = load_params(args)
    anchor = parse_rational(args.anchor, "anchor") if args.anchor else choose_auto_anchor(params)
    alphas = [parse_rational(a.strip(), "alphas") for a in args.alphas.split(",") if a.strip()]
    entries = stability_scan(params, alphas, anchor, args.kmax)
    data = {
        "params": params.to_json_dict(),
        "anchor": fraction_str(anchor),
        "scan": [e.to_json_dict() for e in entries],
    }
    _emit(args, dump_json(data))
    return EXIT_OBSTRUCTED if any(e.report.obstructed for e in entries) else EXIT_OK


def cmd_reproduce(args) -> int:
    report = reproduce(args.example_id)
    _emit(args, dump_json(report.to_json_dict()))
    return EXIT_DISCREPANT if report.any_discrepant else EXIT_OK


def cmd_list_examples(args) -> int:
    rows = []
    for example_id in example_ids():
        entry = builtin_profile(example_id)
        rows.append(
            {
                "id": entry.id,
                "title": entry.title,
                "params": entry.params.to_json_dict(),
                "claims": list(entry.claim_ids),
            }
        )
    _emit(args, dump_json(rows))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radkahler",
        description="Exact diagnostics for radial extremal Kahler metrics",
    )
    default_k = _env_int("RADKAHLER_KMAX", 20)
    default_tol = _env_float("RADKAHLER_TOL", 1e-9)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--output", help="write the result to this path (atomic)")
        return p

    p = add("classify", cmd_classify, help="metric class and scalar curvature")
    _add_params_args(p)
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = add("qtable", cmd_qtable, help="table of obstruction polynomials Q_k")
    _add_params_args(p)
    p.add_argument("--eps", type=int, choices=(-1, 0, 1), default=1)
    p.add_argument("--kmax", type=int, default=default_k)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = add("obstruct", cmd_obstruct, help="nonnegativity scan of Q_k on a domain (n >= 2)")
    _add_params_args(p)
    p.add_argument("--eps", type=int, choices=(-1, 0, 1), required=True)
    p.add_argument("--kmax", type=int, default=default_k)
    p.add_argument("--domain", default="auto", help="'auto' or 'lo,hi' (hi may be inf)")

    p = add("det1", cmd_det1, help="determinant positivity test (n = 1)")
    _add_params_args(p)
    p.add_argument("--eps", type=int, choices=(-1, 0, 1), required=True)
    p.add_argument("--imax", type=int, default=3)
    p.add_argument("--domain", default="auto")

    p = add("profile", cmd_profile, help="integrate the metric profile, emit CSV")
    _add_params_args(p)
    p.add_argument("--y0", type=float, help="anchor momentum (default: auto)")
    p.add_argument("--t0", type=float, default=0.0, help="anchor log-radius")
    p.add_argument("--t-min", type=float, default=-3.0)
    p.add_argument("--t-max", type=float, default=3.0)
    p.add_argument("--tol", type=float, default=default_tol)

    p = add("series", cmd_series, help="exact interior data g_k(r0) = Q_k(y0)/r0^k")
    _add_params_args(p)
    p.add_argument("--eps", type=int, choices=(-1, 0, 1), required=True)
    p.add_argument("--r0", required=True)
    p.add_argument("--y0", required=True)
    p.add_argument("--kmax", type=int, default=default_k)

    p = add("ke", cmd_ke, help="Kahler-Einstein endpoint diagnostics")
    _add_params_args(p)
    p.add_argument("--anchor", help="rational anchor y0 (default: auto)")

    p = add("stability", cmd_stability, help="projective scans of alpha*g over an alpha grid")
    _add_params_args(p)
    p.add_argument("--alphas", required=True, help="comma-separated rationals")
    p.add_argument("--anchor", help="rational anchor y0 (default: auto)")
    p.add_argument("--kmax", type=int, default=default_k)

    p = add("reproduce", cmd_reproduce, help="re-check every documented claim of an example")
    p.add_argument("example_id")

    add("list-examples", cmd_list_examples, help="list registry entries")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except RadKahlerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
