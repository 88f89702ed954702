from pydantic import Field

from schemas.common import VersionedRecord


class ReportRecord(VersionedRecord):
    """Index of the tables and plots written for a set of analysis records."""
    inputs: int
    counts: dict[str, int] = Field(default_factory=dict)
    tables: list[str] = Field(default_factory=list)
    plots: list[str] = Field(default_factory=list)
