"""Timestamped interaction events and sessions.

Timestamps are elapsed seconds since session start, held as ``Decimal`` so
the millisecond-or-finer values seen in real recordings survive arithmetic
exactly (no binary-float drift).  Edit timestamps denote commit time: the
moment focus leaves the edited cell.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from decimal import Decimal

from .errors import ClockSkewError, UsageError
from .refs import CellRef, RangeRef


def as_seconds(value) -> Decimal:
    """Coerce int/float/str/Decimal to an exact Decimal timestamp."""
    if isinstance(value, Decimal):
        return value
    if isinstance(value, float):
        # via str so 0.3 becomes Decimal("0.3"), not the binary artifact
        return Decimal(str(value))
    return Decimal(value)


@dataclass(frozen=True)
class Open:
    t: Decimal


@dataclass(frozen=True)
class Close:
    t: Decimal


@dataclass(frozen=True)
class SheetActivate:
    t: Decimal
    sheet: str


@dataclass(frozen=True)
class Select:
    t: Decimal
    cell: CellRef


@dataclass(frozen=True)
class SelectRange:
    t: Decimal
    range: RangeRef


@dataclass(frozen=True)
class Edit:
    t: Decimal
    cell: CellRef
    content: str


@dataclass(frozen=True)
class EditRange:
    t: Decimal
    range: RangeRef
    content: str  # anchor content, applied at the range's top-left


@dataclass(frozen=True)
class Highlight:
    t: Decimal
    sheet: str
    cells: tuple[CellRef, ...]


Event = Open | Close | SheetActivate | Select | SelectRange | Edit | EditRange | Highlight

FOCUS_EVENTS = (Select, SelectRange, SheetActivate, Close)


@dataclass(frozen=True)
class Session:
    """One participant's time-ordered event sequence.  Immutable value."""

    session_id: str
    participant: str = ""
    group: str | None = None
    workbook_title: str | None = None
    events: tuple[Event, ...] = ()

    @property
    def last_t(self) -> Decimal:
        return self.events[-1].t if self.events else Decimal(0)

    def prefix(self, until_t) -> "Session":
        """Events with t <= until_t (inclusive)."""
        limit = as_seconds(until_t)
        return replace(self, events=tuple(e for e in self.events if e.t <= limit))

    def edits(self):
        """(index, event) pairs for Edit and EditRange events."""
        for i, e in enumerate(self.events):
            if isinstance(e, (Edit, EditRange)):
                yield i, e


def append_event(session: Session, event: Event) -> Session:
    """Append one event, enforcing the monotonic clock and Open/Close shape."""
    if event.t < 0:
        raise UsageError(f"negative timestamp {event.t}")
    if session.events:
        if event.t < session.last_t:
            raise ClockSkewError(
                f"event at t={event.t} precedes last event at t={session.last_t}"
            )
        if isinstance(session.events[-1], Close):
            raise UsageError("session already closed")
        if isinstance(event, Open):
            raise UsageError("Open must be the first event")
    return replace(session, events=session.events + (event,))


def sorted_session(session: Session) -> Session:
    """Stable-sort events by timestamp (importers may receive out-of-order rows)."""
    return replace(session, events=tuple(sorted(session.events, key=lambda e: e.t)))
