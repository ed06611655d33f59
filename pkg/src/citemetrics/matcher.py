"""Journal-name normalization and reference resolution.

Commercial citation indexes retrieve a journal's citations by name and
common variants, which sweeps in references that could not be linked to
a specific paper because of metadata mistakes.  This module reproduces
that behavior deterministically: names are normalized through an
editable abbreviation table, and every raw reference is assigned one of
four citation classes.
"""

from __future__ import annotations

import logging
import re
import unicodedata
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING, Mapping, NamedTuple

if TYPE_CHECKING:  # pragma: no cover
    from .corpus import Corpus

logger = logging.getLogger(__name__)

_PUNCT_RE = re.compile(r"[^\w\s]|_")
_WS_RE = re.compile(r"\s+")
_YEAR_RE = re.compile(r"(?<!\d)(\d{4})(?!\d)")

YEAR_MIN = 1800
YEAR_MAX = 2100


# ---------------------------------------------------------------------------
# Abbreviation tables
# ---------------------------------------------------------------------------


def _fold(token: str) -> str:
    """Casefold one token and drop diacritics and punctuation."""
    decomposed = unicodedata.normalize("NFKD", token)
    stripped = "".join(c for c in decomposed if unicodedata.category(c) != "Mn")
    return _PUNCT_RE.sub("", stripped.casefold())


def load_abbreviations(path: str | Path) -> dict[str, str]:
    """Read a token<TAB>expansion table; '#' lines are comments."""
    table: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            token, _, expansion = line.partition("\t")
            if not expansion:
                continue
            table[_fold(token)] = expansion.strip().casefold()
    return table


@lru_cache(maxsize=1)
def default_abbreviations() -> Mapping[str, str]:
    """The table shipped with the package (covers common title tokens)."""
    ref = resources.files("citemetrics.data").joinpath("abbreviations.tsv")
    with resources.as_file(ref) as path:
        return load_abbreviations(path)


def normalize_name(raw: str, table: Mapping[str, str] | None = None) -> str:
    """Normalize a journal-name string to a comparison key.

    Case-folds, strips diacritics and punctuation, collapses whitespace,
    and expands abbreviated tokens through ``table`` (the default table
    when ``None``).  Deterministic; empty input yields an empty key.

    >>> normalize_name("Nat. Chem. Biol.")
    'nature chemical biology'
    """
    if table is None:
        table = default_abbreviations()
    decomposed = unicodedata.normalize("NFKD", raw)
    stripped = "".join(c for c in decomposed if unicodedata.category(c) != "Mn")
    cleaned = _PUNCT_RE.sub(" ", stripped.casefold())
    tokens = _WS_RE.split(cleaned.strip())
    expanded = [table.get(t, t) for t in tokens if t]
    return " ".join(expanded)


def extract_year(raw: str) -> int | None:
    """First standalone 4-digit number in [1800, 2100], else None."""
    for m in _YEAR_RE.finditer(raw):
        year = int(m.group(1))
        if YEAR_MIN <= year <= YEAR_MAX:
            return year
    return None


# ---------------------------------------------------------------------------
# Citation classes
# ---------------------------------------------------------------------------


class CitationClass(Enum):
    MATCHED_CITABLE = "MatchedCitable"
    MATCHED_NONCITABLE = "MatchedNonCitable"
    UNMATCHED_JOURNAL = "UnmatchedJournal"
    UNRESOLVED = "Unresolved"


class Classification(NamedTuple):
    """Resolution outcome for one reference.

    Matched classes carry the cited paper's journal and year; the
    unmatched-journal class carries the attributed journal and year;
    unresolved references carry neither.
    """

    kind: CitationClass
    journal_id: str | None
    cited_year: int | None


_UNRESOLVED = Classification(CitationClass.UNRESOLVED, None, None)

# Sentinel for a normalized key claimed by more than one journal.
_AMBIGUOUS = object()


@dataclass(frozen=True, eq=False)
class ResolvedCorpus:
    """A corpus plus one classification per reference, in input order.

    Compared by identity: downstream modules cache per-instance lookup
    tables keyed on the object.
    """

    corpus: Corpus
    classifications: tuple[Classification, ...]

    def class_counts(self) -> dict[CitationClass, int]:
        counts = dict.fromkeys(CitationClass, 0)
        for c in self.classifications:
            counts[c.kind] += 1
        return counts


def build_name_index(
    corpus: Corpus, table: Mapping[str, str] | None = None
) -> dict[tuple[str, ...], str | object]:
    """Map normalized name-token tuples to journal ids.

    Keys claimed by two journals map to an ambiguity sentinel; matching
    them yields Unresolved rather than a guess.
    """
    index: dict[tuple[str, ...], str | object] = {}
    for j in corpus.journals.values():
        for name in (j.canonical_name, *j.name_variants):
            key = tuple(normalize_name(name, table).split())
            if not key:
                continue
            owner = index.get(key)
            if owner is None:
                index[key] = j.journal_id
            elif owner is not _AMBIGUOUS and owner != j.journal_id:
                logger.warning(
                    "name key %r claimed by %r and %r; matches will be Unresolved",
                    " ".join(key), owner, j.journal_id,
                )
                index[key] = _AMBIGUOUS
    return index


def resolve(
    corpus: Corpus, normalization_table: Mapping[str, str] | None = None
) -> ResolvedCorpus:
    """Classify every reference in the corpus.

    References linked to an indexed paper are matched (citable or not by
    the cited paper's document type).  The rest are attributed to a
    journal and year when the raw string's leading tokens match a
    registry name (longest prefix wins) and a plausible year is present;
    otherwise they stay unresolved.
    """
    index = build_name_index(corpus, normalization_table)
    max_key_len = max((len(k) for k in index), default=0)
    papers = corpus.papers

    out: list[Classification] = []
    append = out.append
    for ref in corpus.references:
        if ref.cited_paper_id is not None:
            cited = papers[ref.cited_paper_id]
            kind = (
                CitationClass.MATCHED_CITABLE
                if cited.doc_type.citable
                else CitationClass.MATCHED_NONCITABLE
            )
            append(Classification(kind, cited.journal_id, cited.pub_year))
            continue

        year = ref.cited_year if ref.cited_year is not None else extract_year(ref.raw_cited_string)
        if year is None:
            append(_UNRESOLVED)
            continue
        if ref.cited_journal_id is not None:
            append(Classification(
                CitationClass.UNMATCHED_JOURNAL, ref.cited_journal_id, year,
            ))
            continue
        tokens = tuple(normalize_name(ref.raw_cited_string, normalization_table).split())
        matched: str | object | None = None
        for k in range(min(len(tokens), max_key_len), 0, -1):
            matched = index.get(tokens[:k])
            if matched is not None:
                break
        if matched is None:
            append(_UNRESOLVED)
        elif matched is _AMBIGUOUS:
            logger.warning("ambiguous journal name in %r; left Unresolved", ref.raw_cited_string)
            append(_UNRESOLVED)
        else:
            append(Classification(CitationClass.UNMATCHED_JOURNAL, matched, year))

    return ResolvedCorpus(corpus=corpus, classifications=tuple(out))


def resolve_report_rows(resolved: ResolvedCorpus) -> list[tuple[str, int]]:
    """Rows for the resolve report CSV: four classes plus a total."""
    counts = resolved.class_counts()
    rows = [(cls.value, counts[cls]) for cls in CitationClass]
    rows.append(("Total", len(resolved.classifications)))
    return rows
