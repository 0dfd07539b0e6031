"""Static report emission: metrics CSV, coverage CSV, HTML heatmaps,
comparison tables, and timeline data.  Outputs are deterministic; nothing
embeds a wall-clock timestamp unless explicitly requested."""

from __future__ import annotations

import csv
import html
import io

from . import events as ev
from .analytics import (
    BAND_LABELS,
    AnalysisConfig,
    ColourBand,
    CoverageMap,
    session_coverage,
)
from .corrections import (
    CATEGORY_ORDER,
    CATEGORY_TITLES,
    CorrectionReport,
    score_corrections,
)
from .errors import UsageError
from .refs import CellRef, col_to_letters
from .stats import (
    Alternative,
    DegenerateSampleError,
    RegressionResult,
    linear_regression,
    mann_whitney_one_sided,
    t_test_one_sided,
)
from .workbook import CellKind, SeedCategory, Workbook

BAND_COLOURS = {
    ColourBand.BROWN: "#8B4513",
    ColourBand.ORANGE: "#FF8C00",
    ColourBand.LIGHT_ORANGE: "#FFB347",
    ColourBand.LIGHT_YELLOW: "#FFF59D",
    ColourBand.ROSE: "#F4A7B9",
    ColourBand.LIGHT_BLUE: "#ADD8E6",
    ColourBand.SKY_BLUE: "#87CEEB",
    ColourBand.PALE_BLUE: "#B0E0E6",
    ColourBand.LIGHT_TURQUOISE: "#AFEEEE",
    ColourBand.LIGHT_GRAY: "#D3D3D3",
    ColourBand.UNCOLOURED: "",
}

SEED_MARKERS = {
    SeedCategory.CLERICAL: "C Error",
    SeedCategory.RULE_VIOLATION: "RV Error",
    SeedCategory.DATA_ENTRY: "D Error",
    SeedCategory.FORMULA: "F Error",
}

KIND_MARKERS = {CellKind.FORMULA: "F", CellKind.DATA: "D"}


# --- per-session metrics --------------------------------------------------

def metrics_rows(
    workbook: Workbook,
    sessions: list[ev.Session],
    config: AnalysisConfig | None = None,
) -> list[dict]:
    rows = []
    for session in sessions:
        report = score_corrections(workbook, session)
        row = {
            "participant": session.participant or session.session_id,
            "group": session.group or "",
            "coverage": f"{session_coverage(session, workbook, config):.6f}",
        }
        for category in CATEGORY_ORDER:
            row[f"corrected_{category.value}"] = report.category_corrected(category)
        row["corrected_total"] = report.total_corrected
        row["seeded_total"] = report.total_seeded
        row["duration"] = str(session.last_t)
        rows.append(row)
    return rows


def write_metrics_csv(rows: list[dict], stream) -> None:
    if not rows:
        raise UsageError("no metrics rows to write")
    writer = csv.DictWriter(stream, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    writer.writerows(rows)


# --- coverage exports -----------------------------------------------------

def coverage_csv(coverage: CoverageMap, workbook: Workbook, stream) -> None:
    writer = csv.writer(stream)
    writer.writerow(["sheet", "addr", "kind", "fraction", "band"])
    for ref in sorted(coverage.fractions, key=lambda r: (r.sheet, r.row, r.col)):
        cell = workbook.cell(ref)
        fraction = coverage.fractions[ref]
        writer.writerow(
            [
                ref.sheet,
                ref.addr,
                cell.kind.value,
                f"{float(fraction):.6f}",
                coverage.band(ref).name.lower(),
            ]
        )


def _cell_marker(workbook: Workbook, ref: CellRef) -> str:
    for seed in workbook.seeds:
        if seed.target.coord == ref.coord:
            return SEED_MARKERS[seed.category]
    cell = workbook.cell(ref)
    if cell is not None and cell.kind in KIND_MARKERS:
        return KIND_MARKERS[cell.kind]
    return ""


def coverage_heatmap_html(coverage: CoverageMap, workbook: Workbook) -> str:
    """One colour-coded grid per sheet, with the ten-band legend.  Label and
    blank cells are left unmarked so sheet structure stays readable."""
    out = io.StringIO()
    out.write("<!DOCTYPE html>\n<html><head><meta charset='utf-8'>")
    out.write("<title>Coverage per cell</title>")
    out.write(
        "<style>table{border-collapse:collapse;margin:1em 0}"
        "td,th{border:1px solid #999;min-width:2.5em;padding:2px 6px;"
        "font:12px sans-serif;text-align:center}"
        ".legend td{text-align:left}</style></head><body>\n"
    )
    out.write(f"<h1>Coverage per cell: {html.escape(workbook.title)}</h1>\n")
    out.write(f"<p>Population: {coverage.population} session(s)</p>\n")

    out.write("<h2>Colour key</h2>\n<table class='legend'>\n")
    for band in sorted(BAND_LABELS, key=lambda b: -b.value):
        out.write(
            f"<tr><td style='background:{BAND_COLOURS[band]}'>&nbsp;&nbsp;&nbsp;</td>"
            f"<td>{html.escape(BAND_LABELS[band])}</td></tr>\n"
        )
    out.write("</table>\n")

    for sheet in workbook.sheets:
        if not sheet.cells:
            continue
        max_col = max(c for c, _ in sheet.cells)
        max_row = max(r for _, r in sheet.cells)
        out.write(f"<h2>{html.escape(sheet.name)}</h2>\n<table>\n<tr><th></th>")
        for col in range(1, max_col + 1):
            out.write(f"<th>{col_to_letters(col)}</th>")
        out.write("</tr>\n")
        for row in range(1, max_row + 1):
            out.write(f"<tr><th>{row}</th>")
            for col in range(1, max_col + 1):
                ref = CellRef(sheet.name, col, row)
                fraction = coverage.fractions.get(ref)
                if fraction is None:
                    cell = sheet.cell(col, row)
                    text = html.escape(cell.content) if cell else ""
                    out.write(f"<td>{text}</td>")
                else:
                    band = coverage.band(ref)
                    colour = BAND_COLOURS[band]
                    style = f" style='background:{colour}'" if colour else ""
                    marker = html.escape(_cell_marker(workbook, ref))
                    pct = f"{float(fraction) * 100:.0f}%"
                    out.write(f"<td{style} title='{pct}'>{marker}</td>")
            out.write("</tr>\n")
        out.write("</table>\n")
    out.write("</body></html>\n")
    return out.getvalue()


# --- group comparison -----------------------------------------------------

def comparison_rows(
    workbook: Workbook,
    group_a: str,
    group_b: str,
    reports_by_group: dict[str, list[CorrectionReport]],
) -> list[dict]:
    """Per-category and total rows with both one-sided p values, testing
    whether group_a outperforms group_b."""
    a_reports = reports_by_group.get(group_a, [])
    b_reports = reports_by_group.get(group_b, [])
    if not a_reports or not b_reports:
        raise UsageError("both groups need at least one session")

    rows = []
    specs = [
        (CATEGORY_TITLES[c], lambda r, c=c: r.category_corrected(c),
         a_reports[0].category_seeded(c))
        for c in CATEGORY_ORDER
        if a_reports[0].category_seeded(c)
    ]
    specs.append(("Total", lambda r: r.total_corrected, a_reports[0].total_seeded))
    for title, metric, seeded in specs:
        a = [metric(r) for r in a_reports]
        b = [metric(r) for r in b_reports]
        row = {"category": title, "seeded": seeded,
               "mean_a": sum(a) / len(a), "mean_b": sum(b) / len(b)}
        if len(a) < 2 or len(b) < 2:
            row["t_p"] = "insufficient n"
        else:
            try:
                row["t_p"] = f"{t_test_one_sided(a, b, Alternative.A_GREATER).p_one_sided:.6f}"
            except DegenerateSampleError:
                row["t_p"] = "degenerate"
        row["u_p"] = f"{mann_whitney_one_sided(a, b, Alternative.A_GREATER).p_one_sided:.6f}"
        rows.append(row)
    return rows


def coverage_regression(
    workbook: Workbook,
    sessions: list[ev.Session],
    config: AnalysisConfig | None = None,
) -> RegressionResult:
    """Errors corrected regressed on session coverage, across all sessions."""
    x = [session_coverage(s, workbook, config) for s in sessions]
    y = [float(score_corrections(workbook, s).total_corrected) for s in sessions]
    return linear_regression(x, y)


def write_comparison(rows: list[dict], regression: RegressionResult | None, stream) -> None:
    writer = csv.writer(stream)
    writer.writerow(["category", "seeded", "mean_a", "mean_b", "t_p", "u_p"])
    for row in rows:
        writer.writerow(
            [row["category"], row["seeded"], f"{row['mean_a']:.4f}",
             f"{row['mean_b']:.4f}", row["t_p"], row["u_p"]]
        )
    if regression is not None:
        stream.write(f"# regression: {regression.line_equation()}\n")
        stream.write(f"# r2 = {regression.r2:.4f}\n")
        stream.write(f"# outliers = {list(regression.outlier_indices)}\n")


def timeline_csv(timelines: list[tuple[str, list]], stream) -> None:
    """Highlight timelines: (session, rows from highlight_timeline)."""
    writer = csv.writer(stream)
    writer.writerow(["session", "t", "sheet", "cells_highlighted"])
    for session_id, rows in timelines:
        for t, sheet, count in rows:
            writer.writerow([session_id, str(t), sheet, count])


def boxplot_csv(points: list[tuple[str, float]], stream) -> None:
    """Per-session coverage points grouped for boxplot rendering."""
    writer = csv.writer(stream)
    writer.writerow(["group", "coverage"])
    for group, value in points:
        writer.writerow([group, f"{value:.6f}"])
