"""Boundary-curve figures from scan CSV files.

This package never recomputes any channel quantity: it draws exactly what
the points.csv / boundaries.csv tables contain.  Rendering is a pure
function of the CSV bytes and the plot specification; SVG output carries
no timestamps, so identical inputs give identical files.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

POINTS_COLUMNS = (
    "family,d,mu_max,param,ic_exact,ic_lower,q_single,q1_platypus,q_upper,"
    "gap_q,gap_q1,superadd_q,superadd_q1,path"
).split(",")
BOUNDARIES_COLUMNS = (
    "family,d,mu_max,param_min_q,param_max_q,param_min_q1,param_max_q1"
).split(",")

X_AXES = ("mu_max", "d")

PARAMETER_LABEL = {"erasure": "erasure probability", "mad": "damping probability"}

SVG_HASHSALT = "qcap-plotkit"

NO_Q_REGION_NOTE = "no Q super-additive region in this table"


@dataclass(frozen=True)
class PlotSpec:
    """What to draw and where to write it."""

    boundaries_csvs: tuple
    out: str
    family: str
    d: int | None = None
    points_csv: str | None = None
    x_axis: str = "mu_max"
    x_range: tuple | None = None
    y_range: tuple | None = None
    title: str | None = None

    def __post_init__(self):
        if isinstance(self.boundaries_csvs, (str, Path)):
            object.__setattr__(self, "boundaries_csvs", (str(self.boundaries_csvs),))
        else:
            object.__setattr__(self, "boundaries_csvs", tuple(str(p) for p in self.boundaries_csvs))
        if not self.boundaries_csvs:
            raise ValueError("need at least one boundaries CSV")
        if self.family not in PARAMETER_LABEL:
            raise ValueError(f"unknown family {self.family!r}")
        if self.x_axis not in X_AXES:
            raise ValueError(f"x_axis must be one of {X_AXES}, got {self.x_axis!r}")
        if self.x_axis == "mu_max" and self.d is None:
            raise ValueError("d is required when the x axis is mu_max")


def read_rows(path: str, expected_columns) -> list:
    """Rows of a CSV whose header must match the expected schema exactly."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise ValueError(f"{path}: empty file") from None
            if header != list(expected_columns):
                raise ValueError(
                    f"{path}: header {header!r} does not match the expected "
                    f"columns {list(expected_columns)!r}"
                )
            rows = [dict(zip(header, line)) for line in reader if line]
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise ValueError(f"{path}: table has no rows")
    return rows


def _cell(row: dict, column: str) -> float:
    text = row[column]
    return np.nan if text == "" else float(text)


def _check_family_and_d(rows, spec: PlotSpec, path: str):
    for row in rows:
        if row["family"] != spec.family:
            raise ValueError(
                f"{path}: row family {row['family']!r} does not match --family {spec.family!r}"
            )
        if spec.x_axis == "mu_max" and int(row["d"]) != spec.d:
            raise ValueError(
                f"{path}: row d={row['d']} does not match --d {spec.d}"
            )


def _boundary_table(spec: PlotSpec):
    """x values and the four boundary curves, pooled over the input CSVs."""
    pooled = []
    for path in spec.boundaries_csvs:
        rows = read_rows(path, BOUNDARIES_COLUMNS)
        _check_family_and_d(rows, spec, path)
        pooled.extend(rows)

    if spec.x_axis == "mu_max":
        keyed = [(float(r["mu_max"]), r) for r in pooled]
    else:
        keyed = [(float(r["d"]), r) for r in pooled]
        seen = {}
        for x, r in keyed:
            if x in seen and seen[x] != r:
                raise ValueError(
                    f"multiple boundary rows for d={int(x)}; one scan row per "
                    "dimension is required on the d axis"
                )
            seen[x] = r
    keyed.sort(key=lambda item: item[0])

    xs = np.array([x for x, _ in keyed])
    curves = {}
    for column in ("param_min_q", "param_max_q", "param_min_q1", "param_max_q1"):
        curves[column] = np.array([_cell(r, column) for _, r in keyed])

    for lo, hi in (("param_min_q", "param_max_q"), ("param_min_q1", "param_max_q1")):
        both = ~np.isnan(curves[lo]) & ~np.isnan(curves[hi])
        if np.isnan(curves[lo][~np.isnan(curves[hi])]).any() or np.isnan(
            curves[hi][~np.isnan(curves[lo])]
        ).any():
            raise ValueError(f"{lo}/{hi} cells must be empty or filled together")
        if np.any(curves[lo][both] > curves[hi][both] + 1e-12):
            raise ValueError(f"boundary interval {lo} > {hi} in some row")
    return xs, curves


def _point_overlay(spec: PlotSpec):
    if spec.points_csv is None:
        return None
    rows = read_rows(spec.points_csv, POINTS_COLUMNS)
    _check_family_and_d(rows, spec, spec.points_csv)
    key = "mu_max" if spec.x_axis == "mu_max" else "d"
    xs = np.array([float(r[key]) for r in rows])
    ys = np.array([float(r["param"]) for r in rows])
    in_q = np.array([r["superadd_q"] == "1" for r in rows])
    in_q1 = np.array([r["superadd_q1"] == "1" for r in rows])
    return xs, ys, in_q, in_q1


def render_region(spec: PlotSpec) -> str:
    """Draw the four region boundary curves and write the image file."""
    xs, curves = _boundary_table(spec)
    overlay = _point_overlay(spec)

    plt.rcParams["svg.hashsalt"] = SVG_HASHSALT
    fig, ax = plt.subplots(figsize=(6.4, 4.8))

    if overlay is not None:
        pxs, pys, in_q, in_q1 = overlay
        only_q1 = in_q1 & ~in_q
        if only_q1.any():
            ax.scatter(pxs[only_q1], pys[only_q1], s=12, color="#ffd7a8",
                       marker="s", label="$Q^{(1)}$ super-additive point")
        if in_q.any():
            ax.scatter(pxs[in_q], pys[in_q], s=12, color="#9ecbff",
                       marker="s", label="$Q$ super-additive point")

    has_q = not np.all(np.isnan(curves["param_min_q"]))
    if has_q:
        ax.plot(xs, curves["param_max_q"], color="C0", linestyle="-",
                marker=".", label="$Q$ region boundary (max)")
        ax.plot(xs, curves["param_min_q"], color="C0", linestyle="-",
                marker=".", alpha=0.7, label="$Q$ region boundary (min)")
    else:
        ax.text(0.5, 0.95, NO_Q_REGION_NOTE, transform=ax.transAxes,
                ha="center", va="top", fontsize=9, color="crimson")

    ax.plot(xs, curves["param_max_q1"], color="C1", linestyle="--",
            marker=".", label="$Q^{(1)}$ region boundary (max)")
    ax.plot(xs, curves["param_min_q1"], color="C1", linestyle="--",
            marker=".", alpha=0.7, label="$Q^{(1)}$ region boundary (min)")

    ax.axhline(0.5, color="gray", linewidth=0.8, linestyle=":",
               label="parameter = 1/2")
    if spec.x_axis == "mu_max":
        ax.axvline(1.0 / spec.d, color="gray", linewidth=0.8, linestyle="-.",
                   label=f"uniform vector limit 1/d = {1.0 / spec.d:.3g}")
        ax.set_xlabel(r"$\mu_{\max}$")
    else:
        ax.set_xlabel("d")

    ax.set_ylabel(PARAMETER_LABEL[spec.family])
    if spec.x_range is not None:
        ax.set_xlim(*spec.x_range)
    if spec.y_range is not None:
        ax.set_ylim(*spec.y_range)
    if spec.title:
        ax.set_title(spec.title)
    else:
        suffix = f", d = {spec.d}" if spec.x_axis == "mu_max" else ""
        ax.set_title(f"{spec.family} super-additivity regions{suffix}")
    ax.legend(loc="best", fontsize=7)
    fig.tight_layout()

    out = str(spec.out)
    if out.lower().endswith(".svg"):
        fig.savefig(out, format="svg", metadata={"Date": None})
    else:
        fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
