"""Exception hierarchy shared by all citemetrics modules.

Errors are grouped into three families so the CLI can map them onto
exit codes: I/O problems, data-validation problems, and solver
non-convergence.
"""

from __future__ import annotations


class CitemetricsError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(CitemetricsError):
    """Input data violates a schema or referential-integrity rule."""


class ComputationError(CitemetricsError):
    """A requested statistic is undefined for the given data."""


# ---------------------------------------------------------------------------
# Ingestion
# ---------------------------------------------------------------------------


class MalformedRecord(ValidationError):
    """A line of an input file could not be parsed or fails a field check."""

    def __init__(self, file: str, line: int, detail: str):
        super().__init__(f"{file}:{line}: {detail}")
        self.file = file
        self.line = line
        self.detail = detail


class DuplicateId(ValidationError):
    """The same paper or journal id appears more than once."""

    def __init__(self, file: str, line: int, record_id: str):
        super().__init__(f"{file}:{line}: duplicate id {record_id!r}")
        self.file = file
        self.line = line
        self.record_id = record_id
        self.detail = f"duplicate id {record_id!r}"


class DanglingReference(ValidationError):
    """A reference points at a paper or journal that is not in the corpus."""

    def __init__(self, file: str, line: int, citing_paper_id: str, detail: str):
        super().__init__(f"{file}:{line}: {detail}")
        self.file = file
        self.line = line
        self.citing_paper_id = citing_paper_id
        self.detail = detail


class VariantCollision(ValidationError):
    """Two journals normalize to the same name key."""

    def __init__(self, name: str, journal_a: str, journal_b: str):
        super().__init__(
            f"name {name!r} maps to both {journal_a!r} and {journal_b!r}"
        )
        self.file = "journals"
        self.line = 0
        self.name = name
        self.journal_a = journal_a
        self.journal_b = journal_b
        self.detail = f"name {name!r} maps to both {journal_a!r} and {journal_b!r}"


class IngestError(ValidationError):
    """Raised when any record in a file set fails validation.

    Loading is all-or-nothing: no partial corpus is returned.  Every bad
    record is collected in ``issues`` (each an exception instance with
    ``file``, ``line`` and ``detail`` attributes) so callers can report
    them all at once.
    """

    def __init__(self, issues: list[ValidationError]):
        super().__init__(f"{len(issues)} invalid record(s); corpus not loaded")
        self.issues = issues


# ---------------------------------------------------------------------------
# Indicator computation
# ---------------------------------------------------------------------------


class EmptySelection(ComputationError):
    """A year filter selected no papers."""


class UnknownJournal(ComputationError):
    """The journal id is not in the corpus registry."""


class EmptyWindow(ComputationError):
    """The journal published no citable items in the window."""


class ZeroDenominator(ComputationError):
    """A ratio indicator has a zero denominator."""


class NoCitations(ComputationError):
    """A rate over received citations is undefined: none were received."""


class EmptyCohort(ComputationError):
    """No papers match the requested discipline and publication year."""


class EmptyDiscipline(ComputationError):
    """The discipline label matches no journals with data."""


class DegenerateInput(ComputationError):
    """Correlation input is too short or has zero variance."""


class InsufficientHistory(ComputationError):
    """A windowed ratio lacks citations in one of its windows."""


# ---------------------------------------------------------------------------
# Network solvers
# ---------------------------------------------------------------------------


class NonConvergence(CitemetricsError):
    """An iterative solver hit its iteration cap before converging."""

    def __init__(self, max_iterations: int, residual: float):
        super().__init__(
            f"no convergence after {max_iterations} iterations "
            f"(residual {residual:.3e})"
        )
        self.max_iterations = max_iterations
        self.residual = residual


class ZeroArticles(ComputationError):
    """Per-article normalization impossible: no article counts."""


class NoCitingPapers(ComputationError):
    """Citation potential undefined: the journal has no citing papers."""


# ---------------------------------------------------------------------------
# Synthetic generation
# ---------------------------------------------------------------------------


class InvalidSpec(ValidationError):
    """A ScenarioSpec fails its field constraints."""
