"""Journal-to-journal citation matrix and network-based indicators.

The matrix counts census-year citations between journals within a cited
window.  Influence scores weight citations by the standing of the
citing journal (damped eigenvector iteration); prestige-per-paper and
source-normalized variants follow the same machinery with caps and
citing-side normalization respectively.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import (
    NoCitations,
    NoCitingPapers,
    NonConvergence,
    UnknownJournal,
    ZeroArticles,
    ZeroDenominator,
)
from .indicators import citation_index, tally, window_range
from .matcher import ResolvedCorpus

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JournalCitationMatrix:
    """Dense journal x journal citation counts for one census year.

    ``counts[i][j]`` is the number of citations made by journal
    ``journal_ids[i]`` (in the census year) to ``journal_ids[j]``
    (publication years inside the window).  ``article_counts[j]`` is the
    number of citable items journal ``j`` published in the window.
    """

    journal_ids: tuple[str, ...]
    counts: np.ndarray
    article_counts: np.ndarray
    census_year: int
    window_years: int

    @property
    def n(self) -> int:
        return len(self.journal_ids)

    def index_of(self, journal_id: str) -> int:
        try:
            return self.journal_ids.index(journal_id)
        except ValueError:
            raise UnknownJournal(journal_id) from None


@dataclass(frozen=True)
class RankingParams:
    """Tunables for the iterative solvers; defaults are conservative."""

    damping: float = 0.85
    tolerance: float = 1e-10
    max_iterations: int = 10_000
    sjr_single_journal_cap: float = 0.10
    sjr_self_citation_cap: float = 0.33

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ValueError("damping must be in (0, 1)")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")


def build_matrix(
    resolved: ResolvedCorpus, census_year: int, window_years: int
) -> JournalCitationMatrix:
    """Accumulate the journal-to-journal citation matrix.

    Includes matched and journal-attributed unmatched citations (both
    identify a target journal); unresolved references are excluded.
    """
    corpus = resolved.corpus
    journal_ids = tuple(sorted(corpus.journals))
    pos = {jid: i for i, jid in enumerate(journal_ids)}
    n = len(journal_ids)
    counts = np.zeros((n, n), dtype=np.int64)

    papers = corpus.papers
    window = window_range(census_year, window_years)
    lo, hi = window.start, window.stop
    for ref, cls in zip(corpus.references, resolved.classifications):
        if cls.journal_id is None or not lo <= cls.cited_year < hi:
            continue
        citing = papers[ref.citing_paper_id]
        if citing.pub_year != census_year:
            continue
        counts[pos[citing.journal_id], pos[cls.journal_id]] += 1

    article_counts = np.zeros(n, dtype=np.int64)
    for jid in journal_ids:
        i = pos[jid]
        for year in window:
            article_counts[i] += sum(
                1 for p in corpus.papers_of(jid, year) if p.doc_type.citable
            )

    return JournalCitationMatrix(
        journal_ids=journal_ids,
        counts=counts,
        article_counts=article_counts,
        census_year=census_year,
        window_years=window_years,
    )


def matrix_csv_rows(matrix: JournalCitationMatrix) -> list[str]:
    """CSV lines with a header row and column of journal ids."""
    lines = ["journal_id," + ",".join(matrix.journal_ids)]
    for i, jid in enumerate(matrix.journal_ids):
        lines.append(jid + "," + ",".join(str(int(c)) for c in matrix.counts[i]))
    return lines


# ---------------------------------------------------------------------------
# Damped eigenvector iteration
# ---------------------------------------------------------------------------


def _article_distribution(matrix: JournalCitationMatrix) -> np.ndarray:
    total = matrix.article_counts.sum()
    if total == 0:
        # Degenerate registry with no citable output: fall back to uniform.
        return np.full(matrix.n, 1.0 / matrix.n)
    return matrix.article_counts / total


def _donor_normalized(received: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Column-normalize ``received[i][j]`` (donor j -> recipient i).

    Returns the transition matrix and a boolean mask of dangling donors
    (columns that gave out nothing, left all-zero).
    """
    out_totals = received.sum(axis=0)
    dangling = out_totals == 0
    transition = received / np.where(dangling, 1.0, out_totals)[None, :]
    return transition, dangling


def _power_iterate(
    transition: np.ndarray,
    teleport: np.ndarray,
    dangling: np.ndarray,
    params: RankingParams,
) -> np.ndarray:
    """Solve pi = d*(H pi + (dangling mass)*teleport) + (1-d)*teleport.

    ``transition`` columns must sum to 1 except dangling ones (all
    zero), whose mass is redistributed along ``teleport``.  Convergence
    is successive-iterate L1 distance below the tolerance.
    """
    d = params.damping
    pi = teleport.copy()
    for _ in range(params.max_iterations):
        new = d * (transition @ pi + (pi[dangling].sum() * teleport)) + (1 - d) * teleport
        delta = np.abs(new - pi).sum()
        pi = new
        if delta < params.tolerance:
            return pi
    raise NonConvergence(params.max_iterations, float(delta))


def eigenfactor(
    matrix: JournalCitationMatrix, params: RankingParams | None = None
) -> dict[str, float]:
    """Citation-flow influence scores, scaled to sum to 100.

    Self-citations are excluded (zeroed diagonal); journals citing
    nothing in the window redistribute their weight along the
    citable-item distribution, which is also the damping target.
    """
    if params is None:
        params = RankingParams()
    raw = matrix.counts.astype(float)
    np.fill_diagonal(raw, 0.0)
    if raw.sum() == 0:
        raise NoCitations("no off-diagonal citations in matrix")

    # transition[i][j]: share of citing journal j's references going to i
    transition, dangling = _donor_normalized(raw.T)

    teleport = _article_distribution(matrix)
    pi = _power_iterate(transition, teleport, dangling, params)

    # Final score is the stationary citation flow; dangling journals'
    # weight still flows along the teleport distribution.
    flow = transition @ pi + pi[dangling].sum() * teleport
    flow = 100.0 * flow / flow.sum()
    return dict(zip(matrix.journal_ids, flow.tolist()))


def article_influence(
    ef_scores: Mapping[str, float], article_counts: Mapping[str, int]
) -> dict[str, float]:
    """Per-article influence, normalized to an article-weighted mean of 1.

    Journals without articles cannot be normalized and are excluded
    with a warning.
    """
    included = {j: s for j, s in ef_scores.items() if article_counts.get(j, 0) > 0}
    for j in ef_scores:
        if j not in included:
            logger.warning("article_influence: %r has no articles; excluded", j)
    if not included:
        raise ZeroArticles("no journal has a positive article count")
    total_articles = sum(article_counts[j] for j in included)
    total_score = sum(included.values())
    if total_score == 0:
        raise ZeroDenominator("all influence scores are zero")
    scale = total_articles / total_score
    return {j: scale * s / article_counts[j] for j, s in included.items()}


def article_influence_from_matrix(
    matrix: JournalCitationMatrix, params: RankingParams | None = None
) -> dict[str, float]:
    ef = eigenfactor(matrix, params)
    counts = dict(zip(matrix.journal_ids, matrix.article_counts.tolist()))
    return article_influence(ef, counts)


def sjr(
    matrix: JournalCitationMatrix, params: RankingParams | None = None
) -> dict[str, float]:
    """Prestige per paper with caps on self- and single-donor inflow.

    Before iterating, each journal's received self-citations are capped
    at ``sjr_self_citation_cap`` of its incoming total and any single
    donor at ``sjr_single_journal_cap``; prestige then circulates over
    donor-normalized shares with damping toward the citable-item
    proportion vector, and the fixed point is divided by that proportion
    to remove journal size.
    """
    if params is None:
        params = RankingParams()
    if matrix.window_years != 3:
        logger.warning(
            "sjr expects a 3-year window; matrix was built with %d",
            matrix.window_years,
        )
    received = matrix.counts.T.astype(float)  # received[i][j]: j cites i
    if received.sum() == 0:
        raise NoCitations("empty citation matrix")

    incoming = received.sum(axis=1)
    self_entries = np.minimum(np.diag(received), params.sjr_self_citation_cap * incoming)
    received = np.minimum(received, (params.sjr_single_journal_cap * incoming)[:, None])
    np.fill_diagonal(received, self_entries)

    transition, dangling = _donor_normalized(received)

    teleport = _article_distribution(matrix)
    pi = _power_iterate(transition, teleport, dangling, params)

    # Size-independent prestige: divide by the citable-item proportion.
    with np.errstate(divide="ignore", invalid="ignore"):
        per_paper = np.where(teleport > 0, pi / teleport, 0.0)
    return dict(zip(matrix.journal_ids, per_paper.tolist()))


# ---------------------------------------------------------------------------
# Source-normalized impact
# ---------------------------------------------------------------------------

SNIP_WINDOW = 3


def snip(resolved: ResolvedCorpus, journal_id: str, census_year: int) -> float:
    """Raw impact per paper divided by the citing field's potential.

    The field is the set of census-year papers citing the journal's
    3-year window; its citation potential is their mean number of
    matched within-window references.  Self-citations are included.
    """
    corpus = resolved.corpus
    if journal_id not in corpus.journals:
        raise UnknownJournal(journal_id)
    t = tally(resolved, journal_id, census_year, SNIP_WINDOW)
    if t.n_citable_items == 0:
        raise ZeroDenominator(f"{journal_id}: no citable items in 3-year window")
    raw_impact = t.total_cites / t.n_citable_items

    window = window_range(census_year, SNIP_WINDOW)
    lo, hi = window.start, window.stop
    papers = corpus.papers

    citing_ids: set[str] = set()
    in_window_matched: dict[str, int] = {}
    for ref, cls in zip(corpus.references, resolved.classifications):
        if cls.journal_id is None or not lo <= cls.cited_year < hi:
            continue
        if papers[ref.citing_paper_id].pub_year != census_year:
            continue
        if ref.cited_paper_id is not None:
            pid = ref.citing_paper_id
            in_window_matched[pid] = in_window_matched.get(pid, 0) + 1
        if cls.journal_id == journal_id:
            citing_ids.add(ref.citing_paper_id)

    if not citing_ids:
        raise NoCitingPapers(f"{journal_id}: never cited in {census_year}")
    potential = sum(in_window_matched.get(pid, 0) for pid in citing_ids) / len(citing_ids)
    if potential == 0:
        raise NoCitingPapers(
            f"{journal_id}: citing papers have no matched in-window references"
        )
    return raw_impact / potential


def ranking_csv_rows(
    resolved: ResolvedCorpus,
    census_year: int,
    params: RankingParams | None = None,
) -> list[str]:
    """Rows for the ranking report: eigenfactor/AIS on a 5-year window,
    SJR and SNIP on 3-year windows, empty cells where undefined."""
    matrix5 = build_matrix(resolved, census_year, 5)
    matrix3 = build_matrix(resolved, census_year, 3)
    try:
        ef = eigenfactor(matrix5, params)
        counts5 = dict(zip(matrix5.journal_ids, matrix5.article_counts.tolist()))
        ais = article_influence(ef, counts5)
    except (NoCitations, ZeroArticles, ZeroDenominator):
        ef, ais = {}, {}
    try:
        sjr_scores = sjr(matrix3, params)
    except NoCitations:
        sjr_scores = {}

    lines = ["journal_id,eigenfactor,article_influence,sjr,snip"]
    for jid in matrix5.journal_ids:
        try:
            snip_val = f"{snip(resolved, jid, census_year):.3f}"
        except (ZeroDenominator, NoCitingPapers):
            snip_val = ""
        cells = [
            jid,
            f"{ef[jid]:.3f}" if jid in ef else "",
            f"{ais[jid]:.3f}" if jid in ais else "",
            f"{sjr_scores[jid]:.3f}" if jid in sjr_scores else "",
            snip_val,
        ]
        lines.append(",".join(cells))
    return lines
