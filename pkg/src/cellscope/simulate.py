"""Synthetic debugging sessions for testing and population studies.

Given a profile and seed, generation is deterministic byte-for-byte.
Three behaviour archetypes:

  full-sweep     visits every data/formula cell with dwell above threshold
  scan-and-stop  covers only a random prefix of the sweep order
  tool-guided    sweeps a prefix, then repeatedly asks for the highlight
                 set and inspects what comes back until nothing is left
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from decimal import Decimal

from . import events as ev
from .analytics import AnalysisConfig
from .feedback import highlight_set, record_highlight
from .refs import CellRef
from .workbook import AcceptRule, CellKind, Workbook


class Archetype(enum.Enum):
    FULL_SWEEP = "full-sweep"
    SCAN_AND_STOP = "scan-and-stop"
    TOOL_GUIDED = "tool-guided"


@dataclass(frozen=True)
class SimProfile:
    archetype: Archetype
    mean_dwell: float = 1.0  # seconds
    edit_probability: float = 0.8  # chance of fixing each seeded cell touched
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.edit_probability <= 1.0:
            raise ValueError("edit_probability must be in [0,1]")


def _ms(value: float) -> Decimal:
    """Quantize to milliseconds as an exact decimal."""
    return Decimal(round(value * 1000)) / Decimal(1000)


def _correction_content(rules: tuple[AcceptRule, ...]) -> str:
    for rule in rules:
        if rule.exact is not None:
            return rule.exact
    value = rules[0].value
    if value == int(value):
        return str(int(value))
    return repr(value)


def _sweep_order(workbook: Workbook) -> list[CellRef]:
    order = []
    for ref, cell in workbook.iter_cells():
        if cell.kind in (CellKind.DATA, CellKind.FORMULA):
            order.append(ref)
    return order


class _Clock:
    def __init__(self, rng: random.Random, mean_dwell: float, threshold: Decimal):
        self.rng = rng
        self.mean = mean_dwell
        self.threshold = threshold
        self.t = Decimal(0)

    def dwell(self) -> Decimal:
        # always clears the inspection threshold so a visit counts
        raw = self.rng.expovariate(1.0 / self.mean) if self.mean > 0 else 0.0
        step = max(_ms(raw), self.threshold + Decimal("0.05"))
        self.t += step
        return self.t

    def hop(self) -> Decimal:
        self.t += _ms(0.05 + self.rng.random() * 0.2)
        return self.t


def simulate_session(
    workbook: Workbook,
    profile: SimProfile,
    session_id: str,
    participant: str = "",
    group: str | None = None,
    config: AnalysisConfig | None = None,
) -> ev.Session:
    config = config or AnalysisConfig()
    rng = random.Random(profile.seed)
    clock = _Clock(rng, profile.mean_dwell, config.inspect_threshold)
    seeds_by_cell = {s.target.coord: s for s in workbook.seeds}

    session = ev.Session(
        session_id=session_id,
        participant=participant or session_id,
        group=group,
        workbook_title=workbook.title,
    )
    session = ev.append_event(session, ev.Open(Decimal(0)))

    order = _sweep_order(workbook)
    if profile.archetype is Archetype.SCAN_AND_STOP:
        keep = max(1, int(len(order) * (0.2 + 0.6 * rng.random())))
        order = order[:keep]
    elif profile.archetype is Archetype.TOOL_GUIDED:
        keep = max(1, int(len(order) * (0.3 + 0.4 * rng.random())))
        order = order[:keep]

    current_sheet = None

    def visit(ref: CellRef, session: ev.Session) -> ev.Session:
        nonlocal current_sheet
        if ref.sheet != current_sheet:
            session = ev.append_event(session, ev.SheetActivate(clock.hop(), ref.sheet))
            current_sheet = ref.sheet
        session = ev.append_event(session, ev.Select(clock.hop(), ref))
        dwell_end = clock.dwell()
        seed = seeds_by_cell.get(ref.coord)
        if seed is not None and rng.random() < profile.edit_probability:
            content = _correction_content(seed.accepted)
            session = ev.append_event(session, ev.Edit(dwell_end, ref, content))
        return session

    for ref in order:
        session = visit(ref, session)

    if profile.archetype is Archetype.TOOL_GUIDED:
        for sheet in workbook.sheet_names():
            while True:
                result = highlight_set(workbook, session, sheet, config, t=clock.hop())
                session = record_highlight(session, result)
                if not result.cells:
                    break
                for ref in result.cells:
                    session = visit(ref, session)

    session = ev.append_event(session, ev.Close(clock.hop()))
    return session


def simulate_population(
    workbook: Workbook,
    profile: SimProfile,
    n: int,
    group: str | None = None,
    id_prefix: str = "sim",
    config: AnalysisConfig | None = None,
) -> list[ev.Session]:
    """n sessions with per-session derived seeds; deterministic overall."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sessions = []
    for i in range(n):
        per = SimProfile(
            profile.archetype, profile.mean_dwell, profile.edit_probability,
            seed=profile.seed * 100003 + i,
        )
        sessions.append(
            simulate_session(
                workbook, per, f"{id_prefix}-{i:03d}", group=group, config=config
            )
        )
    return sessions
