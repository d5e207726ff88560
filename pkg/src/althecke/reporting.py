"""Report rendering: delimited summaries plus matplotlib figures on disk."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .alternating import Classification  # noqa: E402


def _flatten_residuals(verify_data: dict) -> list[tuple[str, float]]:
    rows = []
    for section, data in verify_data.items():
        if not isinstance(data, dict):
            continue
        for key, val in data.items():
            if isinstance(val, float) and ("residual" in key or "violation"
                                           in key or "leakage" in key):
                rows.append((f"{section}.{key}", val))
            elif key == "families" and isinstance(val, dict):
                for fam, r in val.items():
                    rows.append((f"{section}.{fam}", float(r)))
    return rows


def write_checks_csv(verify_data: dict, path: Path, tol: float) -> None:
    rows = _flatten_residuals(verify_data)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["check", "residual", "threshold", "status"])
        for name, resid in rows:
            writer.writerow([name, repr(resid), repr(tol),
                             "pass" if resid < tol else "FAIL"])


def write_classification_csv(cl: Classification, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "kind", "dim", "commutant_dim",
                         "t1t2_re", "t1t2_im"])
        for ir in cl.irreps:
            t1t2 = ir.details.get("t1t2_trace")
            writer.writerow([
                ir.label, ir.kind, ir.dim, ir.commutant_dim,
                repr(t1t2.real) if t1t2 is not None else "",
                repr(t1t2.imag) if t1t2 is not None else "",
            ])


def fig_dimensions(cl: Classification, path: Path) -> None:
    labels = [ir.label for ir in cl.irreps]
    dims = [ir.dim for ir in cl.irreps]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * len(labels) + 2), 3.2))
    ax.bar(range(len(dims)), dims, color="#33658a")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("dimension")
    p = cl.params
    ax.set_title(f"irreducible dimensions, n={p.n} level={p.level} "
                 f"(sum sq = {cl.sum_dim_sq})")
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def fig_residuals(verify_data: dict, path: Path, tol: float) -> None:
    rows = _flatten_residuals(verify_data)
    names = [name for name, _ in rows]
    vals = [max(val, 1e-18) for _, val in rows]
    fig, ax = plt.subplots(figsize=(6.0, max(3.0, 0.28 * len(rows) + 1)))
    ax.barh(range(len(vals)), vals, color="#468c55")
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=7)
    ax.set_xscale("log")
    ax.axvline(tol, color="#aa3311", linestyle="--", label=f"tolerance {tol:g}")
    ax.set_xlabel("max residual")
    ax.set_title("verification residuals")
    ax.legend(fontsize=7)
    ax.invert_yaxis()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_report(outdir: Path, verify_data: dict,
                  cl: Classification | None, tol: float) -> list[Path]:
    """Write checks.csv, residuals.png, report.json and, when a
    classification is present, classification.csv and dimensions.png."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    checks_csv = outdir / "checks.csv"
    write_checks_csv(verify_data, checks_csv, tol)
    written.append(checks_csv)
    resid_png = outdir / "residuals.png"
    fig_residuals(verify_data, resid_png, tol)
    written.append(resid_png)
    payload = {"verify": verify_data}
    if cl is not None:
        cls_csv = outdir / "classification.csv"
        write_classification_csv(cl, cls_csv)
        written.append(cls_csv)
        dims_png = outdir / "dimensions.png"
        fig_dimensions(cl, dims_png)
        written.append(dims_png)
        payload["classification"] = cl.to_json()
    report_json = outdir / "report.json"
    with open(report_json, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=_jsonable)
    written.append(report_json)
    return written


def _jsonable(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if hasattr(x, "tolist"):
        return x.tolist()
    return str(x)
