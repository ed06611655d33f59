"""Brute-force recounts used to verify the indicator implementations.

Deliberately naive: single flat passes over the raw references with
inline predicate checks, no shared lookup tables, medians and means
computed by hand.  Slow on purpose; intended for corpora up to a few
thousand papers.
"""

from __future__ import annotations

import numpy as np

from ..indicators import CitationTally
from ..matcher import CitationClass, ResolvedCorpus


def _in_window(cited_year: int | None, census_year: int, window_years: int) -> bool:
    return cited_year is not None and census_year - window_years <= cited_year <= census_year - 1


def oracle_tally(
    resolved: ResolvedCorpus, journal_id: str, census_year: int, window_years: int
) -> CitationTally:
    """Recount one tally with a plain loop; must equal indicators.tally."""
    corpus = resolved.corpus
    citable = noncitable = unmatched = self_cites = 0
    for ref, cls in zip(corpus.references, resolved.classifications):
        if cls.kind is CitationClass.UNRESOLVED:
            continue
        if cls.journal_id != journal_id:
            continue
        if not _in_window(cls.cited_year, census_year, window_years):
            continue
        citing = corpus.papers[ref.citing_paper_id]
        if citing.pub_year != census_year:
            continue
        if cls.kind is CitationClass.MATCHED_CITABLE:
            citable += 1
        elif cls.kind is CitationClass.MATCHED_NONCITABLE:
            noncitable += 1
        else:
            unmatched += 1
        if citing.journal_id == journal_id:
            self_cites += 1

    n_citable = n_all = 0
    for paper in corpus.papers.values():
        if paper.journal_id != journal_id:
            continue
        if not _in_window(paper.pub_year, census_year, window_years):
            continue
        n_all += 1
        if paper.doc_type.citable:
            n_citable += 1

    return CitationTally(
        journal_id=journal_id,
        census_year=census_year,
        window_years=window_years,
        cites_matched_citable=citable,
        cites_matched_noncitable=noncitable,
        cites_unmatched=unmatched,
        n_citable_items=n_citable,
        n_all_items=n_all,
        self_citations=self_cites,
    )


def oracle_matrix(
    resolved: ResolvedCorpus, census_year: int, window_years: int
) -> tuple[tuple[str, ...], np.ndarray, np.ndarray]:
    """Pairwise recount of the journal citation matrix.

    Returns (journal ids sorted, counts, citable article counts) in the
    same layout as network.build_matrix.
    """
    corpus = resolved.corpus
    ids = tuple(sorted(corpus.journals))
    counts = np.zeros((len(ids), len(ids)), dtype=np.int64)
    for col, target in enumerate(ids):
        for ref, cls in zip(corpus.references, resolved.classifications):
            if cls.kind is CitationClass.UNRESOLVED or cls.journal_id != target:
                continue
            if not _in_window(cls.cited_year, census_year, window_years):
                continue
            citing = corpus.papers[ref.citing_paper_id]
            if citing.pub_year != census_year:
                continue
            counts[ids.index(citing.journal_id), col] += 1

    articles = np.zeros(len(ids), dtype=np.int64)
    for paper in corpus.papers.values():
        if _in_window(paper.pub_year, census_year, window_years) and paper.doc_type.citable:
            articles[ids.index(paper.journal_id)] += 1
    return ids, counts, articles


def _per_paper_counts(
    resolved: ResolvedCorpus, journal_id: str, census_year: int, window_years: int
) -> list[int]:
    corpus = resolved.corpus
    cohort = [
        p.paper_id
        for p in corpus.papers.values()
        if p.journal_id == journal_id
        and p.doc_type.citable
        and _in_window(p.pub_year, census_year, window_years)
    ]
    tallies = {pid: 0 for pid in cohort}
    for ref in corpus.references:
        if ref.cited_paper_id in tallies:
            if corpus.papers[ref.citing_paper_id].pub_year == census_year:
                tallies[ref.cited_paper_id] += 1
    return [tallies[pid] for pid in cohort]


def oracle_median_cites(
    resolved: ResolvedCorpus, journal_id: str, census_year: int, window_years: int
) -> float | None:
    """Hand-rolled median of per-paper citation counts (None if no cohort)."""
    counts = sorted(_per_paper_counts(resolved, journal_id, census_year, window_years))
    n = len(counts)
    if n == 0:
        return None
    if n % 2 == 1:
        return float(counts[n // 2])
    return (counts[n // 2 - 1] + counts[n // 2]) / 2


def oracle_distribution(
    resolved: ResolvedCorpus,
    journal_id: str,
    census_year: int,
    window_years: int,
    jif_value: float,
) -> dict | None:
    """Histogram, mean, median and at-or-above share, recounted by hand."""
    counts = _per_paper_counts(resolved, journal_id, census_year, window_years)
    if not counts:
        return None
    hist: dict[int, int] = {}
    for c in counts:
        hist[c] = hist.get(c, 0) + 1
    at_or_above = 0
    for c in counts:
        if c >= jif_value:
            at_or_above += 1
    return {
        "histogram": dict(sorted(hist.items())),
        "mean": sum(counts) / len(counts),
        "median": oracle_median_cites(resolved, journal_id, census_year, window_years),
        "share_at_or_above_jif": at_or_above / len(counts),
        "n_papers": len(counts),
    }


def oracle_discipline_profile(
    resolved: ResolvedCorpus, discipline: str, census_year: int
) -> dict | None:
    """Discipline aggregates recounted without the shared citation index."""
    corpus = resolved.corpus
    journal_ids = [
        j.journal_id for j in corpus.journals.values() if j.discipline == discipline
    ]
    if not journal_ids:
        return None

    jifs = []
    for jid in journal_ids:
        t = oracle_tally(resolved, jid, census_year, 2)
        if t.n_citable_items > 0:
            jifs.append(t.total_cites / t.n_citable_items)

    paper_ids = {
        p.paper_id
        for p in corpus.papers.values()
        if p.journal_id in journal_ids and p.pub_year == census_year
    }
    if not paper_ids:
        return None
    n_refs = n_indexed = n_aged = 0
    age_sum = 0
    for ref, cls in zip(corpus.references, resolved.classifications):
        if ref.citing_paper_id not in paper_ids:
            continue
        n_refs += 1
        if ref.cited_paper_id is not None:
            n_indexed += 1
        year = cls.cited_year if cls.cited_year is not None else ref.cited_year
        if year is not None:
            n_aged += 1
            age_sum += census_year - year
    return {
        "mean_jif": sum(jifs) / len(jifs) if jifs else None,
        "max_jif": max(jifs) if jifs else None,
        "mean_refs": n_refs / len(paper_ids),
        "mean_refs_to_indexed": n_indexed / len(paper_ids),
        "mean_ref_age": age_sum / n_aged if n_aged else None,
        "ref_age_coverage": n_aged / n_refs if n_refs else 0.0,
    }
