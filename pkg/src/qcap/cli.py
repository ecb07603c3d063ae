"""Command-line interface: capacity summaries, certificates, gaps, scans.

Subcommands:

* ``summary``: all capacity values for one platypus channel.
* ``certify transposition|beta``: verify a feasibility certificate.
* ``q1 platypus|erasure|mad``: single-channel capacity values.
* ``gap erasure|mad``: one super-additivity evaluation.
* ``scan erasure|mad``: grid scan, written as points.csv/boundaries.csv.

The default tolerance is 1e-9, overridable by the QCAP_TOL environment
variable and per-run by ``--tol``.  CSV output fixes '.' decimals, ','
separators, LF line endings, and UTF-8, with floats at 12 significant
digits and booleans as 0/1, so identical runs produce byte-identical
files regardless of ``--workers``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .capacities import q1_platypus, q_erasure, q_mad
from .certificates import (
    beta_feasible_point,
    capacity_summary,
    report_to_json,
    transposition_feasible_point,
    verify_beta_certificate,
    verify_transposition_certificate,
)
from .channels import ProbabilityVector
from .superadd import RegionTable, gap, region_scan

PATH_NAMES = {"exact": "exact_spectra", "lower": "closed_form_bound", "dense": "dense"}
MU_SUM_GATE = 1e-6


def default_tol() -> float:
    return float(os.environ.get("QCAP_TOL", "1e-9"))


def parse_mu(ns) -> ProbabilityVector:
    if ns.mu is not None:
        try:
            values = [float(x) for x in ns.mu.split(",") if x.strip() != ""]
        except ValueError:
            raise ValueError(f"could not parse --mu {ns.mu!r} as a comma list of reals")
        if not values:
            raise ValueError("--mu is empty")
        total = sum(values)
        if abs(total - 1.0) > MU_SUM_GATE:
            raise ValueError(f"--mu entries sum to {total!r}; expected 1 within {MU_SUM_GATE}")
        return ProbabilityVector(values, renormalize=True)
    if ns.d is not None and ns.mu_max is not None:
        mu_max = 1.0 / ns.d if ns.mu_max == "auto" else float(ns.mu_max)
        return ProbabilityVector.uniform_remainder(ns.d, mu_max)
    raise ValueError("give either --mu or both --d and --mu-max")


def parse_grid(text: str) -> list:
    """A float, or start:stop:step inclusive of both endpoints."""
    if ":" not in text:
        return [float(text)]
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid {text!r} must be start:stop:step")
    start, stop, step = (float(p) for p in parts)
    if step <= 0 or stop < start:
        raise ValueError(f"grid {text!r} must increase with a positive step")
    n = int(round((stop - start) / step))
    if abs(start + n * step - stop) > 1e-9 * max(1.0, abs(stop)):
        raise ValueError(f"grid {text!r}: step does not evenly divide the range")
    return [start + i * step for i in range(n + 1)]


def _jsonable(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")


def _add_mu_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mu", help="comma-separated probabilities, e.g. 0.3,0.7")
    parser.add_argument("--d", type=int, help="number of probability entries")
    parser.add_argument(
        "--mu-max", help="largest entry for the uniform-remainder fill, or 'auto' for 1/d"
    )


def cmd_summary(ns) -> int:
    pv = parse_mu(ns)
    s = capacity_summary(pv, tol=ns.tol)
    _emit(
        {
            "mu": list(s.mu),
            "q1": s.q1.value,
            "u_star": s.q1.argmax,
            "q_upper": s.q_upper,
            "transposition_certified": s.transposition_certified,
            "beta_certified": s.beta_certified,
            "p": s.p,
            "c": s.c,
            "ce": s.ce,
        },
        ns.out,
    )
    return 0


def cmd_certify(ns) -> int:
    pv = parse_mu(ns)
    if ns.bound == "transposition":
        report = verify_transposition_certificate(pv, tol=ns.tol)
        matrices = {"Y": transposition_feasible_point(pv)} if ns.matrices else None
    else:
        report = verify_beta_certificate(pv, tol=ns.tol)
        if ns.matrices:
            r, s = beta_feasible_point(pv)
            matrices = {"R": r, "S": s}
        else:
            matrices = None
    text = report_to_json(report, matrices)
    print(text)
    if ns.out:
        with open(ns.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    return 0


def cmd_q1(ns) -> int:
    if ns.channel == "platypus":
        pv = parse_mu(ns)
        result = q1_platypus(pv, tol=ns.tol)
        doc = {"channel": "platypus", "mu": list(pv.entries)}
    elif ns.channel == "erasure":
        if ns.lam is None or ns.d is None:
            raise ValueError("q1 erasure needs --lam and --d")
        result = q_erasure(ns.lam, ns.d)
        doc = {"channel": "erasure", "lam": ns.lam, "d": ns.d}
    else:
        if ns.gamma is None or ns.d is None:
            raise ValueError("q1 mad needs --gamma and --d")
        result = q_mad(ns.gamma, ns.d, tol=ns.tol)
        doc = {"channel": "mad", "gamma": ns.gamma, "d": ns.d}
    doc.update({"value": result.value, "u_star": result.argmax, "method": result.method})
    _emit(doc, ns.out)
    return 0


def cmd_gap(ns) -> int:
    pv = parse_mu(ns)
    parameter = ns.lam if ns.family == "erasure" else ns.gamma
    if parameter is None:
        flag = "--lam" if ns.family == "erasure" else "--gamma"
        raise ValueError(f"{flag} is required for the {ns.family} family")
    report = gap(ns.family, pv, parameter, path=PATH_NAMES[ns.path])
    doc = {
        "family": report.family,
        "d": report.d,
        "mu": list(report.mu),
        "parameter": report.parameter,
        "ic_exact": _jsonable(report.ic_exact),
        "ic_lower": report.ic_lower,
        "q_single": report.q_single,
        "q1_platypus": report.q1_platypus,
        "q_upper": report.q_upper_platypus,
        "gap_q": _jsonable(report.gap_q),
        "gap_q1": _jsonable(report.gap_q1),
        "superadd_q": report.superadd_q,
        "superadd_q1": report.superadd_q1,
        "path": report.path,
    }
    _emit(doc, ns.out)
    return 0


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return "nan" if math.isnan(value) else format(value, ".12g")
    return str(value)


POINTS_HEADER = (
    "family,d,mu_max,param,ic_exact,ic_lower,q_single,q1_platypus,q_upper,"
    "gap_q,gap_q1,superadd_q,superadd_q1,path"
)
BOUNDARIES_HEADER = "family,d,mu_max,param_min_q,param_max_q,param_min_q1,param_max_q1"


def write_points_csv(table: RegionTable, path: str) -> None:
    lines = [POINTS_HEADER]
    n_params = len(table.parameters)
    for r, mu_max in enumerate(table.mu_maxes):
        for c, param in enumerate(table.parameters):
            pt = table.points[r * n_params + c]
            lines.append(
                ",".join(
                    [
                        table.family,
                        str(table.d),
                        _fmt(float(mu_max)),
                        _fmt(float(param)),
                        _fmt(pt.ic_exact),
                        _fmt(pt.ic_lower),
                        _fmt(pt.q_single),
                        _fmt(pt.q1_platypus),
                        _fmt(pt.q_upper_platypus),
                        _fmt(pt.gap_q),
                        _fmt(pt.gap_q1),
                        _fmt(pt.superadd_q),
                        _fmt(pt.superadd_q1),
                        pt.path,
                    ]
                )
            )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_boundaries_csv(table: RegionTable, path: str) -> None:
    lines = [BOUNDARIES_HEADER]
    for b in table.boundaries:
        lines.append(
            ",".join(
                [
                    table.family,
                    str(table.d),
                    _fmt(b.mu_max),
                    _fmt(b.param_min_q),
                    _fmt(b.param_max_q),
                    _fmt(b.param_min_q1),
                    _fmt(b.param_max_q1),
                ]
            )
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_scan(ns) -> int:
    if ns.mu_max is None:
        raise ValueError("--mu-max is required for scans (value, grid, or 'auto')")
    mu_grid = [1.0 / ns.d] if ns.mu_max == "auto" else parse_grid(ns.mu_max)
    param_text = ns.lam if ns.family == "erasure" else ns.gamma
    if param_text is None:
        flag = "--lam" if ns.family == "erasure" else "--gamma"
        raise ValueError(f"{flag} is required for the {ns.family} family")
    param_grid = parse_grid(param_text)
    table = region_scan(
        ns.family,
        ns.d,
        mu_grid,
        param_grid,
        path=PATH_NAMES[ns.path],
        workers=ns.workers,
    )
    os.makedirs(ns.out_dir, exist_ok=True)
    points_path = os.path.join(ns.out_dir, "points.csv")
    boundaries_path = os.path.join(ns.out_dir, "boundaries.csv")
    write_points_csv(table, points_path)
    write_boundaries_csv(table, boundaries_path)
    print(f"wrote {points_path} ({len(table.points)} points)")
    print(f"wrote {boundaries_path} ({len(table.boundaries)} rows)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcap",
        description="Capacity bounds, certificates, and super-additivity scans "
        "for platypus, erasure, and amplitude damping channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    tol = default_tol()

    p = sub.add_parser("summary", help="all capacity values for one platypus channel")
    _add_mu_arguments(p)
    p.add_argument("--tol", type=float, default=tol)
    p.add_argument("--out", help="also write the JSON to this file")
    p.set_defaults(func=cmd_summary)

    p = sub.add_parser("certify", help="verify a feasibility certificate")
    p.add_argument("bound", choices=["transposition", "beta"])
    _add_mu_arguments(p)
    p.add_argument("--tol", type=float, default=tol)
    p.add_argument("--matrices", action="store_true", help="include raw matrices in the JSON")
    p.add_argument("--out", help="also write the JSON to this file")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("q1", help="single-channel capacity values")
    p.add_argument("channel", choices=["platypus", "erasure", "mad"])
    _add_mu_arguments(p)
    p.add_argument("--lam", type=float, help="erasure probability")
    p.add_argument("--gamma", type=float, help="damping probability")
    p.add_argument("--tol", type=float, default=tol)
    p.add_argument("--out", help="also write the JSON to this file")
    p.set_defaults(func=cmd_q1)

    p = sub.add_parser("gap", help="one super-additivity evaluation")
    p.add_argument("family", choices=["erasure", "mad"])
    _add_mu_arguments(p)
    p.add_argument("--lam", type=float, help="erasure probability")
    p.add_argument("--gamma", type=float, help="damping probability")
    p.add_argument("--path", choices=sorted(PATH_NAMES), default="exact")
    p.add_argument("--out", help="also write the JSON to this file")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("scan", help="grid scan written as points.csv/boundaries.csv")
    p.add_argument("family", choices=["erasure", "mad"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mu-max", help="value, start:stop:step grid, or 'auto' for 1/d")
    p.add_argument("--lam", help="erasure probability value or start:stop:step grid")
    p.add_argument("--gamma", help="damping probability value or start:stop:step grid")
    p.add_argument("--path", choices=sorted(PATH_NAMES), default="exact")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return ns.func(ns)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
