"""cellscope: record, replay, and analyze spreadsheet debugging sessions,
with live cell-coverage highlight feedback for a companion grid UI."""

__version__ = "0.1.0"
