"""Ratio-based journal indicators for a (journal, census year) pair.

All operations are pure functions over a :class:`ResolvedCorpus`.  A
per-corpus index of grouped citation counts is built lazily on first
use, making a full all-journal report linear in the corpus size.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable
from weakref import WeakKeyDictionary

from .errors import EmptyWindow, NoCitations, UnknownJournal, ZeroDenominator
from .matcher import CitationClass, ResolvedCorpus

REPORT_HEADER = (
    "journal_id,census_year,jif2,jif5,jif_wos_derived,symmetric_if,"
    "jif_no_self,citescore,median_cites,self_citation_rate,pct_increase"
)


@dataclass(frozen=True)
class CitationTally:
    """Citation and item counts for one (journal, census year, window).

    The window covers publication years ``census_year - window_years``
    through ``census_year - 1``; only citations made by papers published
    in the census year are counted.
    """

    journal_id: str
    census_year: int
    window_years: int
    cites_matched_citable: int
    cites_matched_noncitable: int
    cites_unmatched: int
    n_citable_items: int
    n_all_items: int
    self_citations: int

    @property
    def total_cites(self) -> int:
        return (
            self.cites_matched_citable
            + self.cites_matched_noncitable
            + self.cites_unmatched
        )


@dataclass(frozen=True)
class IndicatorReport:
    """All indicator values for one journal-year.

    ``None`` marks an indicator that is undefined for this journal (no
    citable output in the window, or no citations received) — distinct
    from a computed zero.
    """

    journal_id: str
    census_year: int
    jif2: float | None
    jif5: float | None
    jif_wos_derived: float | None
    symmetric_if: float | None
    jif_no_self: float | None
    citescore: float | None
    median_cites: float | None
    self_citation_rate: float | None
    pct_increase: float | None


# ---------------------------------------------------------------------------
# Grouped-count index
# ---------------------------------------------------------------------------

_CITABLE = CitationClass.MATCHED_CITABLE
_NONCITABLE = CitationClass.MATCHED_NONCITABLE
_UNMATCHED = CitationClass.UNMATCHED_JOURNAL


class CitationIndex:
    """Citation counts grouped by (citing year, cited journal, cited year).

    Built in a single pass over the references; shared by every
    indicator through a per-corpus cache.
    """

    __slots__ = ("by_class", "self_counts", "per_paper")

    def __init__(self, resolved: ResolvedCorpus):
        papers = resolved.corpus.papers
        by_class: dict[tuple[int, str, int], list[int]] = {}
        self_counts: dict[tuple[int, str, int], int] = {}
        per_paper: dict[tuple[int, str], int] = {}

        for ref, cls in zip(resolved.corpus.references, resolved.classifications):
            if cls.journal_id is None:
                continue
            citing = papers[ref.citing_paper_id]
            key = (citing.pub_year, cls.journal_id, cls.cited_year)
            cell = by_class.get(key)
            if cell is None:
                cell = by_class[key] = [0, 0, 0]
            if cls.kind is _CITABLE:
                cell[0] += 1
            elif cls.kind is _NONCITABLE:
                cell[1] += 1
            else:
                cell[2] += 1
            if citing.journal_id == cls.journal_id:
                self_counts[key] = self_counts.get(key, 0) + 1
            if ref.cited_paper_id is not None:
                pkey = (citing.pub_year, ref.cited_paper_id)
                per_paper[pkey] = per_paper.get(pkey, 0) + 1

        self.by_class = by_class
        self.self_counts = self_counts
        self.per_paper = per_paper


_INDEX_CACHE: WeakKeyDictionary[ResolvedCorpus, CitationIndex] = WeakKeyDictionary()


def citation_index(resolved: ResolvedCorpus) -> CitationIndex:
    index = _INDEX_CACHE.get(resolved)
    if index is None:
        index = CitationIndex(resolved)
        _INDEX_CACHE[resolved] = index
    return index


def window_range(census_year: int, window_years: int) -> range:
    """Publication years covered by a window ending before the census."""
    return range(census_year - window_years, census_year)


# ---------------------------------------------------------------------------
# Tally
# ---------------------------------------------------------------------------


def tally(
    resolved: ResolvedCorpus,
    journal_id: str,
    census_year: int,
    window_years: int,
) -> CitationTally:
    """Count citations and published items for one journal and window.

    A journal that published nothing in the window yields a tally with
    ``n_citable_items == 0``; ratio operations on it raise
    :class:`ZeroDenominator`.
    """
    if window_years < 1:
        raise ValueError("window_years must be >= 1")
    corpus = resolved.corpus
    if journal_id not in corpus.journals:
        raise UnknownJournal(journal_id)
    index = citation_index(resolved)

    citable_cites = noncitable_cites = unmatched_cites = self_cites = 0
    n_citable = n_all = 0
    for year in window_range(census_year, window_years):
        cell = index.by_class.get((census_year, journal_id, year))
        if cell is not None:
            citable_cites += cell[0]
            noncitable_cites += cell[1]
            unmatched_cites += cell[2]
            self_cites += index.self_counts.get((census_year, journal_id, year), 0)
        for paper in corpus.papers_of(journal_id, year):
            n_all += 1
            if paper.doc_type.citable:
                n_citable += 1

    return CitationTally(
        journal_id=journal_id,
        census_year=census_year,
        window_years=window_years,
        cites_matched_citable=citable_cites,
        cites_matched_noncitable=noncitable_cites,
        cites_unmatched=unmatched_cites,
        n_citable_items=n_citable,
        n_all_items=n_all,
        self_citations=self_cites,
    )


def citation_counts_per_paper(
    resolved: ResolvedCorpus,
    journal_id: str,
    census_year: int,
    window_years: int,
) -> list[int]:
    """Census-year citation count of each citable item in the window.

    Unmatched citations have no target paper and are excluded here by
    construction; order follows the corpus paper ordering.
    """
    corpus = resolved.corpus
    if journal_id not in corpus.journals:
        raise UnknownJournal(journal_id)
    per_paper = citation_index(resolved).per_paper
    counts = []
    for year in window_range(census_year, window_years):
        for paper in corpus.papers_of(journal_id, year):
            if paper.doc_type.citable:
                counts.append(per_paper.get((census_year, paper.paper_id), 0))
    return counts


# ---------------------------------------------------------------------------
# Ratio indicators
# ---------------------------------------------------------------------------


def jif_wos_derived(t: CitationTally) -> float:
    """All received citations (matched and unmatched) per citable item."""
    if t.n_citable_items == 0:
        raise ZeroDenominator(f"{t.journal_id}: no citable items in window")
    return t.total_cites / t.n_citable_items


def symmetric_if(t: CitationTally) -> float:
    """Citations matched to citable items, per citable item."""
    if t.n_citable_items == 0:
        raise ZeroDenominator(f"{t.journal_id}: no citable items in window")
    return t.cites_matched_citable / t.n_citable_items


def pct_increase(reference_jif: float, symmetric: float) -> float:
    """Percentage by which a reference JIF exceeds the symmetric variant."""
    if symmetric <= 0:
        raise ZeroDenominator("symmetric impact factor is zero")
    return 100.0 * (reference_jif - symmetric) / symmetric


def jif_no_self(t: CitationTally) -> float:
    """Received citations per citable item, self-citations excluded."""
    if t.n_citable_items == 0:
        raise ZeroDenominator(f"{t.journal_id}: no citable items in window")
    return (t.total_cites - t.self_citations) / t.n_citable_items


def self_citation_rate(t: CitationTally) -> float:
    """Share of received citations coming from the journal itself."""
    total = t.total_cites
    if total == 0:
        raise NoCitations(f"{t.journal_id}: no citations in window")
    return t.self_citations / total


def jif2(resolved: ResolvedCorpus, journal_id: str, census_year: int) -> float:
    return jif_wos_derived(tally(resolved, journal_id, census_year, 2))


def jif5(resolved: ResolvedCorpus, journal_id: str, census_year: int) -> float:
    return jif_wos_derived(tally(resolved, journal_id, census_year, 5))


def citescore(resolved: ResolvedCorpus, journal_id: str, census_year: int) -> float:
    """Citations received over a 3-year window per item of any type."""
    t = tally(resolved, journal_id, census_year, 3)
    if t.n_all_items == 0:
        raise ZeroDenominator(f"{journal_id}: no items in 3-year window")
    return t.total_cites / t.n_all_items


def median_cites(
    resolved: ResolvedCorpus,
    journal_id: str,
    census_year: int,
    window_years: int,
) -> float:
    """Median census-year citation count over citable items in the window."""
    counts = citation_counts_per_paper(resolved, journal_id, census_year, window_years)
    if not counts:
        raise EmptyWindow(f"{journal_id}: no citable items in window")
    return float(statistics.median(counts))


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def _maybe(fn, *args):
    try:
        return fn(*args)
    except (ZeroDenominator, NoCitations, EmptyWindow):
        return None


def build_report(
    resolved: ResolvedCorpus,
    journal_id: str,
    census_year: int,
    window_years: int = 2,
) -> IndicatorReport:
    """Compute every indicator for one journal, with None where undefined.

    ``jif_wos_derived``, ``symmetric_if``, ``jif_no_self``,
    ``median_cites`` and ``self_citation_rate`` use ``window_years``;
    ``jif2``/``jif5``/``citescore`` pin their own windows.
    """
    t = tally(resolved, journal_id, census_year, window_years)
    jif = _maybe(jif_wos_derived, t)
    sym = _maybe(symmetric_if, t)
    pct = None
    if jif is not None and sym is not None and sym > 0:
        pct = pct_increase(jif, sym)
    return IndicatorReport(
        journal_id=journal_id,
        census_year=census_year,
        jif2=_maybe(jif2, resolved, journal_id, census_year),
        jif5=_maybe(jif5, resolved, journal_id, census_year),
        jif_wos_derived=jif,
        symmetric_if=sym,
        jif_no_self=_maybe(jif_no_self, t),
        citescore=_maybe(citescore, resolved, journal_id, census_year),
        median_cites=_maybe(median_cites, resolved, journal_id, census_year, window_years),
        self_citation_rate=_maybe(self_citation_rate, t),
        pct_increase=pct,
    )


def all_reports(
    resolved: ResolvedCorpus, census_year: int, window_years: int = 2
) -> list[IndicatorReport]:
    """One report per registry journal, ordered by journal id."""
    return [
        build_report(resolved, jid, census_year, window_years)
        for jid in sorted(resolved.corpus.journals)
    ]


def format_value(value: float | None, decimals: int = 3) -> str:
    """Render an indicator with round-half-even; None becomes empty."""
    if value is None:
        return ""
    return f"{value:.{decimals}f}"


def report_csv_rows(
    reports: Iterable[IndicatorReport], decimals: int = 3
) -> list[str]:
    """CSV lines (header included) for an indicator report set."""
    lines = [REPORT_HEADER]
    for r in reports:
        values = [
            r.jif2, r.jif5, r.jif_wos_derived, r.symmetric_if, r.jif_no_self,
            r.citescore, r.median_cites, r.self_citation_rate, r.pct_increase,
        ]
        cells = [r.journal_id, str(r.census_year)]
        cells.extend(format_value(v, decimals) for v in values)
        lines.append(",".join(cells))
    return lines
