"""Detectors for impact-factor engineering patterns.

All outputs are statistical flags over observable citation counts; a
flag marks a pattern worth review, not a finding of intent, and every
statistic is recomputable from the corpus alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InsufficientHistory, ZeroDenominator
from .indicators import CitationTally, citation_index, jif_wos_derived, tally
from .matcher import ResolvedCorpus
from .network import JournalCitationMatrix

FLAGS_HEADER = "journal_id,census_year,kind,statistic,threshold,evidence"


class AnomalyKind(Enum):
    SELF_CITATION_EXCESS = "SelfCitationExcess"
    IFBSCP_BIAS = "IfbscpBias"
    CITATION_STACKING = "CitationStacking"


@dataclass(frozen=True)
class AnomalyFlag:
    journal_id: str
    census_year: int
    kind: AnomalyKind
    statistic: float
    threshold: float
    evidence: str | None = None  # donor journal for stacking

    def csv_row(self) -> str:
        stat = "inf" if math.isinf(self.statistic) else f"{self.statistic:.6g}"
        return ",".join([
            self.journal_id,
            str(self.census_year),
            self.kind.value,
            stat,
            f"{self.threshold:.6g}",
            self.evidence or "",
        ])


@dataclass(frozen=True)
class DetectionThresholds:
    """Configurable trigger levels; real-world suppression thresholds are
    unpublished, so defaults are deliberately conservative."""

    rate_threshold: float = 0.20
    distortion_threshold: float = 0.25
    donor_share_threshold: float = 0.25
    min_citations: int = 50
    ifbscp_ratio: float = 1.5


DEFAULT_THRESHOLDS = DetectionThresholds()

_IFBSCP_RECENT = (1, 2)       # cited years: census - 1, census - 2
_IFBSCP_BASELINE = range(3, 8)  # cited years: census - 3 .. census - 7


def _window_shares(
    resolved: ResolvedCorpus, journal_id: str, census_year: int, offsets
) -> tuple[int, int]:
    """(self citations, total citations) to the given cited-year offsets."""
    index = citation_index(resolved)
    self_cites = total = 0
    for off in offsets:
        key = (census_year, journal_id, census_year - off)
        cell = index.by_class.get(key)
        if cell is not None:
            total += cell[0] + cell[1] + cell[2]
            self_cites += index.self_counts.get(key, 0)
    return self_cites, total


def ifbscp(
    resolved: ResolvedCorpus, journal_id: str, census_year: int
) -> float | None:
    """Ratio of the impact-window self-citation share to the share over
    the five preceding cited years.

    Both shares use citations made in the census year.  Returns None
    when either window has no citations or when both shares are zero;
    a zero baseline with a nonzero impact-window share yields inf.
    """
    recent_self, recent_total = _window_shares(
        resolved, journal_id, census_year, _IFBSCP_RECENT
    )
    base_self, base_total = _window_shares(
        resolved, journal_id, census_year, _IFBSCP_BASELINE
    )
    if recent_total == 0 or base_total == 0:
        raise InsufficientHistory(
            f"{journal_id}: no citations in one of the comparison windows"
        )
    recent_share = recent_self / recent_total
    base_share = base_self / base_total
    if base_share == 0:
        return math.inf if recent_share > 0 else None
    return recent_share / base_share


def self_citation_flag(
    t: CitationTally,
    jif_distortion_threshold: float = DEFAULT_THRESHOLDS.distortion_threshold,
    rate_threshold: float = DEFAULT_THRESHOLDS.rate_threshold,
) -> AnomalyFlag | None:
    """Flag a journal whose JIF is propped up by its own citations.

    Requires both a high self-citation rate and a large relative gap
    between the JIF and its self-citation-free variant.  A journal
    cited exclusively by itself gets an infinite-distortion flag.
    """
    total = t.total_cites
    if total == 0 or t.self_citations == 0:
        return None
    rate = t.self_citations / total
    external = total - t.self_citations
    if external == 0:
        return AnomalyFlag(
            journal_id=t.journal_id,
            census_year=t.census_year,
            kind=AnomalyKind.SELF_CITATION_EXCESS,
            statistic=math.inf,
            threshold=jif_distortion_threshold,
        )
    # (jif - jif_no_self) / jif_no_self reduces to self / external.
    distortion = t.self_citations / external
    if rate > rate_threshold and distortion > jif_distortion_threshold:
        return AnomalyFlag(
            journal_id=t.journal_id,
            census_year=t.census_year,
            kind=AnomalyKind.SELF_CITATION_EXCESS,
            statistic=distortion,
            threshold=jif_distortion_threshold,
        )
    return None


def stacking_detector(
    matrix: JournalCitationMatrix,
    donor_share_threshold: float = DEFAULT_THRESHOLDS.donor_share_threshold,
    min_citations: int = DEFAULT_THRESHOLDS.min_citations,
) -> list[AnomalyFlag]:
    """Flag recipients dominated by a single donor journal.

    A recipient needs at least ``min_citations`` incoming citations;
    each external donor giving strictly more than the threshold share of
    that incoming total produces one flag.
    """
    counts = matrix.counts
    incoming = counts.sum(axis=0)
    flags: list[AnomalyFlag] = []
    for j, recipient in enumerate(matrix.journal_ids):
        total = int(incoming[j])
        if total < min_citations:
            continue
        for i in np.nonzero(counts[:, j])[0]:
            if i == j:
                continue
            share = int(counts[i, j]) / total
            if share > donor_share_threshold:
                flags.append(AnomalyFlag(
                    journal_id=recipient,
                    census_year=matrix.census_year,
                    kind=AnomalyKind.CITATION_STACKING,
                    statistic=share,
                    threshold=donor_share_threshold,
                    evidence=matrix.journal_ids[i],
                ))
    return flags


def editor_burst(
    resolved: ResolvedCorpus, journal_id: str, year_a: int, year_b: int
) -> float:
    """Year-over-year JIF ratio, for triage of sudden jumps.

    Raises :class:`ZeroDenominator` when the earlier year's JIF is zero
    or undefined (e.g., a journal too new to have one).
    """
    jif_a = jif_wos_derived(tally(resolved, journal_id, year_a, 2))
    jif_b = jif_wos_derived(tally(resolved, journal_id, year_b, 2))
    if jif_a == 0:
        raise ZeroDenominator(f"{journal_id}: zero JIF in {year_a}")
    return jif_b / jif_a


def detect_all(
    resolved: ResolvedCorpus,
    matrix: JournalCitationMatrix,
    census_year: int,
    thresholds: DetectionThresholds = DEFAULT_THRESHOLDS,
) -> list[AnomalyFlag]:
    """Run every detector over all journals, ordered by journal id."""
    flags: list[AnomalyFlag] = []
    for jid in sorted(resolved.corpus.journals):
        t = tally(resolved, jid, census_year, 2)
        flag = self_citation_flag(
            t, thresholds.distortion_threshold, thresholds.rate_threshold
        )
        if flag is not None:
            flags.append(flag)
        try:
            ratio = ifbscp(resolved, jid, census_year)
        except InsufficientHistory:
            ratio = None
        if ratio is not None and ratio > thresholds.ifbscp_ratio:
            flags.append(AnomalyFlag(
                journal_id=jid,
                census_year=census_year,
                kind=AnomalyKind.IFBSCP_BIAS,
                statistic=ratio,
                threshold=thresholds.ifbscp_ratio,
            ))
    flags.extend(stacking_detector(
        matrix, thresholds.donor_share_threshold, thresholds.min_citations
    ))
    return flags
