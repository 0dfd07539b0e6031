"""Scoring seeded-error corrections against replayed sessions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import events as ev
from .errors import UsageError
from .evaluate import Evaluator
from .refs import CellRef
from .replay import replay
from .workbook import AcceptRule, ErrorSeed, SeedCategory, Workbook

CATEGORY_ORDER = (
    SeedCategory.CLERICAL,
    SeedCategory.RULE_VIOLATION,
    SeedCategory.DATA_ENTRY,
    SeedCategory.FORMULA,
)

CATEGORY_TITLES = {
    SeedCategory.CLERICAL: "Clerical/Non-Material",
    SeedCategory.RULE_VIOLATION: "Rules Violation",
    SeedCategory.DATA_ENTRY: "Data Entry",
    SeedCategory.FORMULA: "Formula",
}


@dataclass(frozen=True)
class SeedOutcome:
    seed: ErrorSeed
    corrected: bool
    correcting_event: int | None  # index of the last edit touching the target


@dataclass
class CorrectionReport:
    outcomes: list[SeedOutcome]

    @property
    def total_seeded(self) -> int:
        return len(self.outcomes)

    @property
    def total_corrected(self) -> int:
        return sum(1 for o in self.outcomes if o.corrected)

    def category_rate(self, category: SeedCategory) -> Fraction | None:
        seeded = [o for o in self.outcomes if o.seed.category is category]
        if not seeded:
            return None
        return Fraction(sum(1 for o in seeded if o.corrected), len(seeded))

    def category_corrected(self, category: SeedCategory) -> int:
        return sum(1 for o in self.outcomes if o.seed.category is category and o.corrected)

    def category_seeded(self, category: SeedCategory) -> int:
        return sum(1 for o in self.outcomes if o.seed.category is category)


def _rule_satisfied(rule: AcceptRule, content: str, evaluator: Evaluator, target: CellRef) -> bool:
    if rule.exact is not None:
        return content == rule.exact
    value = evaluator.value(target)
    if isinstance(value, bool) or not isinstance(value, float):
        return False
    return math.isclose(value, rule.value, rel_tol=rule.rel_tol, abs_tol=0.0)


def _last_edit_index(session: ev.Session, target: CellRef) -> int | None:
    last = None
    for i, e in session.edits():
        if isinstance(e, ev.Edit) and e.cell.coord == target.coord:
            last = i
        elif isinstance(e, ev.EditRange) and target in e.range:
            last = i
    return last


def score_corrections(workbook: Workbook, session: ev.Session) -> CorrectionReport:
    """A seed is corrected iff the final replayed content at its target
    satisfies any acceptance rule (final state, not first touch)."""
    if not workbook.seeds:
        raise UsageError("workbook has no seeded errors to score")
    final = replay(workbook, session)
    evaluator = Evaluator(final)
    outcomes = []
    for seed in workbook.seeds:
        cell = final.cell(seed.target)
        content = cell.content if cell else ""
        corrected = any(
            _rule_satisfied(rule, content, evaluator, seed.target) for rule in seed.accepted
        )
        event_index = _last_edit_index(session, seed.target) if corrected else None
        outcomes.append(SeedOutcome(seed, corrected, event_index))
    return CorrectionReport(outcomes)


@dataclass(frozen=True)
class PerformanceRow:
    category: str  # category title or "Total"
    seeded: int
    group_means: dict  # group tag -> mean corrected percentage (0..100)


def group_performance_table(reports: list[tuple[str, CorrectionReport]]) -> list[PerformanceRow]:
    """Per-category mean correction percentage per group, plus a Total row."""
    if not reports:
        raise UsageError("need at least one (group, report) pair")
    groups: dict[str, list[CorrectionReport]] = {}
    for group, report in reports:
        groups.setdefault(group, []).append(report)

    rows = []
    sample = reports[0][1]
    for category in CATEGORY_ORDER:
        seeded = sample.category_seeded(category)
        if seeded == 0:
            continue
        means = {}
        for group, grp_reports in groups.items():
            rates = [r.category_rate(category) for r in grp_reports]
            means[group] = 100.0 * sum(float(r) for r in rates) / len(rates)
        rows.append(PerformanceRow(CATEGORY_TITLES[category], seeded, means))
    totals = {
        group: 100.0
        * sum(r.total_corrected / r.total_seeded for r in grp_reports)
        / len(grp_reports)
        for group, grp_reports in groups.items()
    }
    rows.append(PerformanceRow("Total", sample.total_seeded, totals))
    return rows
