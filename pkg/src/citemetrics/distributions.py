"""Distributional, temporal, disciplinary, and inflation analytics.

Everything here is read-only over a resolved corpus or over indicator
report snapshots; no state is kept between calls.
"""

from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import (
    DegenerateInput,
    EmptyCohort,
    EmptyDiscipline,
    EmptyWindow,
    ZeroDenominator,
)
from .indicators import (
    IndicatorReport,
    citation_counts_per_paper,
    citation_index,
    jif_wos_derived,
    tally,
    window_range,
)
from .matcher import ResolvedCorpus

SHARE_BUCKET_WIDTH = 5  # percentage points


@dataclass(frozen=True)
class DistributionSummary:
    """Per-paper citation distribution of one journal's window cohort."""

    journal_id: str
    census_year: int
    histogram: Mapping[int, int]
    mean: float
    median: float
    share_at_or_above_jif: float
    n_papers: int


@dataclass(frozen=True)
class CohortCurve:
    """Citations to one discipline-year cohort, by years since publication."""

    label: str
    pub_year: int
    per_year_citations: tuple[int, ...]
    cumulative_fraction: tuple[float, ...]
    first_two_year_share: float
    years_to_half: int | None
    truncated: bool  # horizon ended before the citation tail did


@dataclass(frozen=True)
class InflationYearRecord:
    year: int
    mean_jif: float
    journal_count: int
    count_above_threshold: Mapping[float, int]


@dataclass(frozen=True)
class InflationSeries:
    """Per-year indicator aggregates plus rank/increase bookkeeping."""

    years: tuple[InflationYearRecord, ...]
    pct_increased: Mapping[tuple[int, int], float] = field(default_factory=dict)
    ranks: Mapping[str, Mapping[int, int]] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Per-journal distribution
# ---------------------------------------------------------------------------


def distribution(
    resolved: ResolvedCorpus,
    journal_id: str,
    census_year: int,
    window_years: int,
    jif_value: float,
) -> DistributionSummary:
    """Histogram of census-year citations over citable window items.

    ``share_at_or_above_jif`` is the fraction of papers whose count is
    greater than or equal to ``jif_value`` (ties count).
    """
    counts = citation_counts_per_paper(resolved, journal_id, census_year, window_years)
    if not counts:
        raise EmptyWindow(f"{journal_id}: no citable items in window")
    at_or_above = sum(1 for c in counts if c >= jif_value)
    return DistributionSummary(
        journal_id=journal_id,
        census_year=census_year,
        histogram=dict(sorted(Counter(counts).items())),
        mean=sum(counts) / len(counts),
        median=float(statistics.median(counts)),
        share_at_or_above_jif=at_or_above / len(counts),
        n_papers=len(counts),
    )


def share_bucket(share: float) -> int:
    """Lower edge (in points) of the half-open 5-point bucket for a share."""
    return SHARE_BUCKET_WIDTH * int(share * 100 // SHARE_BUCKET_WIDTH)


def jcr_share_histogram(
    summaries: Sequence[DistributionSummary],
) -> tuple[dict[int, int], float]:
    """Bucket journals by their share-at-or-above-JIF.

    Returns (histogram keyed by bucket lower edge in points, fraction of
    journals with share >= 0.5).  Buckets are half-open [a, a+5).
    """
    if not summaries:
        raise DegenerateInput("no distribution summaries")
    hist: dict[int, int] = {}
    at_least_half = 0
    for s in summaries:
        b = share_bucket(s.share_at_or_above_jif)
        hist[b] = hist.get(b, 0) + 1
        if s.share_at_or_above_jif >= 0.5:
            at_least_half += 1
    return dict(sorted(hist.items())), at_least_half / len(summaries)


# ---------------------------------------------------------------------------
# Citation ageing
# ---------------------------------------------------------------------------


def cohort_curve(
    resolved: ResolvedCorpus,
    discipline: str,
    pub_year: int,
    horizon_years: int,
) -> CohortCurve:
    """Citations to a discipline's ``pub_year`` papers by age at citing.

    The cumulative fraction is taken over all citations the cohort ever
    receives in the corpus, so a horizon shorter than the citation tail
    ends below 1 and the curve is flagged as truncated.
    """
    corpus = resolved.corpus
    cohort_journals = {
        j.journal_id for j in corpus.journals.values() if j.discipline == discipline
    }
    if not cohort_journals:
        raise EmptyCohort(f"no journals in discipline {discipline!r}")
    has_papers = any(
        corpus.papers_of(jid, pub_year) for jid in cohort_journals
    )
    if not has_papers:
        raise EmptyCohort(f"{discipline!r} published nothing in {pub_year}")

    by_class = citation_index(resolved).by_class
    per_age: Counter[int] = Counter()
    total = 0
    for (citing_year, journal_id, cited_year), cell in by_class.items():
        if cited_year != pub_year or journal_id not in cohort_journals:
            continue
        age = citing_year - pub_year
        if age < 0:
            continue
        n = cell[0] + cell[1] + cell[2]
        total += n
        if age <= horizon_years:
            per_age[age] += n

    per_year = tuple(per_age.get(age, 0) for age in range(horizon_years + 1))
    cumulative: list[float] = []
    running = 0
    for n in per_year:
        running += n
        cumulative.append(running / total if total else 0.0)

    first_two = (per_age.get(1, 0) + per_age.get(2, 0)) / total if total else 0.0
    years_to_half = None
    for age, frac in enumerate(cumulative):
        if frac >= 0.5:
            years_to_half = age
            break
    return CohortCurve(
        label=discipline,
        pub_year=pub_year,
        per_year_citations=per_year,
        cumulative_fraction=tuple(cumulative),
        first_two_year_share=first_two,
        years_to_half=years_to_half,
        truncated=bool(total) and running < total,
    )


# ---------------------------------------------------------------------------
# Inflation across snapshot years
# ---------------------------------------------------------------------------


def inflation_series(
    snapshots: Mapping[int, Sequence[IndicatorReport]],
    thresholds: Sequence[float] = (10.0,),
) -> InflationSeries:
    """Aggregate indicator snapshots from several census years.

    For each year: mean JIF over journals with a defined value and the
    number of journals strictly above each threshold.  Between
    consecutive years, the fraction of common journals whose JIF rose;
    per-journal ranks (1 = highest JIF) are kept for trajectory plots.
    """
    if len(snapshots) < 2:
        raise DegenerateInput("need at least two snapshot years")

    years_sorted = sorted(snapshots)
    records: list[InflationYearRecord] = []
    values_by_year: dict[int, dict[str, float]] = {}
    ranks: dict[str, dict[int, int]] = {}

    for year in years_sorted:
        values = {
            r.journal_id: r.jif_wos_derived
            for r in snapshots[year]
            if r.jif_wos_derived is not None
        }
        values_by_year[year] = values
        if not values:
            raise DegenerateInput(f"snapshot {year} has no defined JIFs")
        mean_jif = sum(values.values()) / len(values)
        above = {t: sum(1 for v in values.values() if v > t) for t in thresholds}
        records.append(InflationYearRecord(
            year=year,
            mean_jif=mean_jif,
            journal_count=len(values),
            count_above_threshold=above,
        ))
        for rank, jid in enumerate(
            sorted(values, key=lambda j: (-values[j], j)), start=1
        ):
            ranks.setdefault(jid, {})[year] = rank

    pct_increased: dict[tuple[int, int], float] = {}
    for prev, curr in zip(years_sorted, years_sorted[1:]):
        common = values_by_year[prev].keys() & values_by_year[curr].keys()
        if common:
            up = sum(
                1 for j in common if values_by_year[curr][j] > values_by_year[prev][j]
            )
            pct_increased[(prev, curr)] = up / len(common)

    return InflationSeries(
        years=tuple(records),
        pct_increased=pct_increased,
        ranks={j: dict(sorted(r.items())) for j, r in sorted(ranks.items())},
    )


# ---------------------------------------------------------------------------
# Discipline aggregates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DisciplineProfile:
    """Referencing and impact profile of one discipline at a census year."""

    discipline: str
    census_year: int
    n_journals: int
    n_papers: int
    mean_jif: float | None
    max_jif: float | None
    mean_refs: float
    mean_refs_to_indexed: float
    mean_ref_age: float | None
    ref_age_coverage: float


def discipline_profile(
    resolved: ResolvedCorpus, discipline: str, census_year: int
) -> DisciplineProfile:
    """Aggregate JIFs and referencing behavior for one discipline.

    JIF aggregates run over the discipline's journals (2-year window);
    referencing aggregates run over the discipline's census-year papers.
    Reference age uses only references with a known cited year, and the
    covered fraction is reported alongside.
    """
    corpus = resolved.corpus
    journals = [
        j.journal_id for j in corpus.journals.values() if j.discipline == discipline
    ]
    if not journals:
        raise EmptyDiscipline(discipline)

    jifs = []
    for jid in journals:
        try:
            jifs.append(jif_wos_derived(tally(resolved, jid, census_year, 2)))
        except ZeroDenominator:
            continue

    paper_ids = {
        p.paper_id
        for jid in journals
        for p in corpus.papers_of(jid, census_year)
    }
    n_refs = 0
    n_indexed = 0
    n_aged = 0
    age_sum = 0
    for ref, cls in zip(corpus.references, resolved.classifications):
        if ref.citing_paper_id not in paper_ids:
            continue
        n_refs += 1
        if ref.cited_paper_id is not None:
            n_indexed += 1
        cited_year = cls.cited_year
        if cited_year is None:
            cited_year = ref.cited_year
        if cited_year is not None:
            n_aged += 1
            age_sum += census_year - cited_year

    # A discipline can have indicator values without census-year output;
    # referencing aggregates are then zero/undefined rather than an error.
    n_papers = len(paper_ids)
    return DisciplineProfile(
        discipline=discipline,
        census_year=census_year,
        n_journals=len(journals),
        n_papers=n_papers,
        mean_jif=sum(jifs) / len(jifs) if jifs else None,
        max_jif=max(jifs) if jifs else None,
        mean_refs=n_refs / n_papers if n_papers else 0.0,
        mean_refs_to_indexed=n_indexed / n_papers if n_papers else 0.0,
        mean_ref_age=age_sum / n_aged if n_aged else None,
        ref_age_coverage=n_aged / n_refs if n_refs else 0.0,
    )


# ---------------------------------------------------------------------------
# Correlation
# ---------------------------------------------------------------------------


def correlate(xs: Sequence[float], ys: Sequence[float]) -> dict[str, float]:
    """Pearson correlation and its square for paired samples."""
    if len(xs) != len(ys):
        raise DegenerateInput("series lengths differ")
    n = len(xs)
    if n < 3:
        raise DegenerateInput("need at least 3 pairs")
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = sum((x - mean_x) ** 2 for x in xs)
    syy = sum((y - mean_y) ** 2 for y in ys)
    if sxx == 0 or syy == 0:
        raise DegenerateInput("zero variance")
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    r = sxy / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))
    return {"pearson_r": r, "r_squared": r * r}
