"""Data model and JSONL ingestion for papers, journals, and references.

A finalized :class:`Corpus` is immutable and safe to share across
threads; every analytics module reads from it without copying.
"""

from __future__ import annotations

import json
import logging
import sys
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import (
    DanglingReference,
    DuplicateId,
    EmptySelection,
    IngestError,
    MalformedRecord,
    ValidationError,
    VariantCollision,
)
from .matcher import normalize_name

logger = logging.getLogger(__name__)

PAPERS_FILE = "papers.jsonl"
JOURNALS_FILE = "journals.jsonl"
REFERENCES_FILE = "references.jsonl"


class DocumentType(Enum):
    ARTICLE = "Article"
    REVIEW = "Review"
    EDITORIAL = "Editorial"
    LETTER = "Letter"
    NEWS_ITEM = "NewsItem"
    OBITUARY = "Obituary"
    OTHER = "Other"

    @property
    def citable(self) -> bool:
        """Only articles and reviews count as citable items."""
        return self in (DocumentType.ARTICLE, DocumentType.REVIEW)


# Input doc_type strings are matched case-insensitively, ignoring spaces,
# hyphens and underscores.  Unknown strings map to OTHER with a warning.
_DOC_TYPE_ALIASES = {
    dt.value.lower().replace(" ", ""): dt for dt in DocumentType
}
_DOC_TYPE_ALIASES["newsitem"] = DocumentType.NEWS_ITEM


def parse_doc_type(raw: str, warn_unknown: set[str] | None = None) -> DocumentType:
    key = raw.strip().lower().replace(" ", "").replace("-", "").replace("_", "")
    dt = _DOC_TYPE_ALIASES.get(key)
    if dt is None:
        if warn_unknown is not None and raw not in warn_unknown:
            warn_unknown.add(raw)
            logger.warning("unknown doc_type %r mapped to Other", raw)
        return DocumentType.OTHER
    return dt


@dataclass(frozen=True, slots=True)
class PaperRecord:
    paper_id: str
    journal_id: str
    pub_year: int
    doc_type: DocumentType


@dataclass(frozen=True, slots=True)
class JournalEntry:
    journal_id: str
    canonical_name: str
    name_variants: tuple[str, ...] = ()
    discipline: str = ""
    specialty: str | None = None


@dataclass(frozen=True, slots=True)
class RawReference:
    """One cited-reference string emitted by a citing paper.

    ``cited_paper_id`` is set when the reference was linked to an indexed
    paper; otherwise the reference is "unmatched" and the matcher tries
    to attribute it to a journal and year.
    """

    citing_paper_id: str
    raw_cited_string: str
    cited_paper_id: str | None = None
    cited_journal_id: str | None = None
    cited_year: int | None = None


@dataclass(frozen=True)
class Corpus:
    """Immutable store of papers, journals, and raw references."""

    papers: Mapping[str, PaperRecord]
    journals: Mapping[str, JournalEntry]
    references: tuple[RawReference, ...]
    year_range: tuple[int, int]
    _papers_by_journal_year: Mapping[tuple[str, int], tuple[PaperRecord, ...]] = field(
        repr=False, compare=False, default_factory=dict
    )

    @property
    def n_papers(self) -> int:
        return len(self.papers)

    @property
    def n_journals(self) -> int:
        return len(self.journals)

    @property
    def n_references(self) -> int:
        return len(self.references)

    def papers_of(self, journal_id: str, year: int) -> tuple[PaperRecord, ...]:
        """Papers a journal published in one year (possibly empty)."""
        return self._papers_by_journal_year.get((journal_id, year), ())

    def outgoing_reference_counts(self) -> Counter[str]:
        """References emitted per citing paper; sums to ``n_references``."""
        return Counter(r.citing_paper_id for r in self.references)


def build_corpus(
    papers: Iterable[PaperRecord],
    journals: Iterable[JournalEntry],
    references: Iterable[RawReference],
) -> Corpus:
    """Assemble and validate a corpus from already-parsed records.

    Raises :class:`IngestError` listing every violation; the corpus is
    all-or-nothing.
    """
    issues: list[ValidationError] = []

    journal_map: dict[str, JournalEntry] = {}
    for n, j in enumerate(journals, start=1):
        if j.journal_id in journal_map:
            issues.append(DuplicateId(JOURNALS_FILE, n, j.journal_id))
            continue
        if not j.canonical_name:
            issues.append(
                MalformedRecord(JOURNALS_FILE, n, f"{j.journal_id}: empty canonical_name")
            )
            continue
        journal_map[j.journal_id] = j

    # Every normalized name or variant must identify a single journal.
    name_keys: dict[str, str] = {}
    for j in journal_map.values():
        for name in (j.canonical_name, *j.name_variants):
            key = normalize_name(name)
            if not key:
                continue
            owner = name_keys.setdefault(key, j.journal_id)
            if owner != j.journal_id:
                issues.append(VariantCollision(name, owner, j.journal_id))

    paper_map: dict[str, PaperRecord] = {}
    for n, p in enumerate(papers, start=1):
        if p.paper_id in paper_map:
            issues.append(DuplicateId(PAPERS_FILE, n, p.paper_id))
            continue
        if p.journal_id not in journal_map:
            issues.append(
                DanglingReference(
                    PAPERS_FILE, n, p.paper_id,
                    f"paper {p.paper_id!r} names unknown journal {p.journal_id!r}",
                )
            )
            continue
        paper_map[p.paper_id] = p

    refs: list[RawReference] = []
    for n, r in enumerate(references, start=1):
        citing = paper_map.get(r.citing_paper_id)
        if citing is None:
            issues.append(
                DanglingReference(
                    REFERENCES_FILE, n, r.citing_paper_id,
                    f"citing paper {r.citing_paper_id!r} not in corpus",
                )
            )
            continue
        if r.cited_paper_id is not None:
            cited = paper_map.get(r.cited_paper_id)
            if cited is None:
                issues.append(
                    DanglingReference(
                        REFERENCES_FILE, n, r.citing_paper_id,
                        f"cited paper {r.cited_paper_id!r} not in corpus",
                    )
                )
                continue
            if r.cited_journal_id is not None and r.cited_journal_id != cited.journal_id:
                issues.append(
                    MalformedRecord(
                        REFERENCES_FILE, n,
                        f"cited_journal_id {r.cited_journal_id!r} disagrees with "
                        f"paper {r.cited_paper_id!r} ({cited.journal_id!r})",
                    )
                )
                continue
            if r.cited_year is not None and r.cited_year != cited.pub_year:
                issues.append(
                    MalformedRecord(
                        REFERENCES_FILE, n,
                        f"cited_year {r.cited_year} disagrees with "
                        f"paper {r.cited_paper_id!r} ({cited.pub_year})",
                    )
                )
                continue
        elif r.cited_journal_id is not None and r.cited_journal_id not in journal_map:
            issues.append(
                DanglingReference(
                    REFERENCES_FILE, n, r.citing_paper_id,
                    f"cited journal {r.cited_journal_id!r} not in registry",
                )
            )
            continue
        refs.append(r)

    if issues:
        raise IngestError(issues)

    if paper_map:
        years = [p.pub_year for p in paper_map.values()]
        year_range = (min(years), max(years))
    else:
        year_range = (0, 0)

    by_jy: dict[tuple[str, int], list[PaperRecord]] = {}
    for p in paper_map.values():
        by_jy.setdefault((p.journal_id, p.pub_year), []).append(p)

    return Corpus(
        papers=MappingProxyType(paper_map),
        journals=MappingProxyType(journal_map),
        references=tuple(refs),
        year_range=year_range,
        _papers_by_journal_year=MappingProxyType(
            {k: tuple(v) for k, v in by_jy.items()}
        ),
    )


# ---------------------------------------------------------------------------
# JSONL ingestion
# ---------------------------------------------------------------------------


def _iter_jsonl(path: Path, file_label: str, issues: list[ValidationError]) -> Iterator[tuple[int, dict]]:
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                issues.append(MalformedRecord(file_label, n, f"bad JSON: {exc.msg}"))
                continue
            if not isinstance(obj, dict):
                issues.append(MalformedRecord(file_label, n, "record is not an object"))
                continue
            yield n, obj


def _req(obj: dict, key: str, typ: type, file: str, line: int):
    val = obj.get(key)
    if not isinstance(val, typ) or (typ is int and isinstance(val, bool)):
        raise MalformedRecord(file, line, f"field {key!r} missing or not {typ.__name__}")
    return val


def _opt(obj: dict, key: str, typ: type, file: str, line: int):
    val = obj.get(key)
    if val is None:
        return None
    if not isinstance(val, typ) or (typ is int and isinstance(val, bool)):
        raise MalformedRecord(file, line, f"field {key!r} must be {typ.__name__} or null")
    return val


def ingest(papers_path: str | Path, journals_path: str | Path,
           references_path: str | Path) -> Corpus:
    """Load the three JSONL files into a finalized corpus.

    Each file is read in a single streaming pass.  Any malformed record,
    duplicate id, dangling reference, or journal-name collision aborts
    the load with an :class:`IngestError` carrying every issue found.
    Missing files raise ``FileNotFoundError``.
    """
    for p in (papers_path, journals_path, references_path):
        if not Path(p).is_file():
            raise FileNotFoundError(f"missing input file: {p}")

    issues: list[ValidationError] = []
    warned: set[str] = set()

    journals: list[JournalEntry] = []
    for n, obj in _iter_jsonl(Path(journals_path), JOURNALS_FILE, issues):
        try:
            variants = obj.get("name_variants") or []
            if not isinstance(variants, list) or not all(isinstance(v, str) for v in variants):
                raise MalformedRecord(JOURNALS_FILE, n, "field 'name_variants' must be a list of strings")
            journals.append(JournalEntry(
                journal_id=_req(obj, "journal_id", str, JOURNALS_FILE, n),
                canonical_name=_req(obj, "canonical_name", str, JOURNALS_FILE, n),
                name_variants=tuple(variants),
                discipline=_req(obj, "discipline", str, JOURNALS_FILE, n),
                specialty=_opt(obj, "specialty", str, JOURNALS_FILE, n),
            ))
        except MalformedRecord as exc:
            issues.append(exc)

    # Ids repeat across millions of reference lines; interning keeps one
    # copy of each.
    papers: list[PaperRecord] = []
    for n, obj in _iter_jsonl(Path(papers_path), PAPERS_FILE, issues):
        try:
            papers.append(PaperRecord(
                paper_id=sys.intern(_req(obj, "paper_id", str, PAPERS_FILE, n)),
                journal_id=sys.intern(_req(obj, "journal_id", str, PAPERS_FILE, n)),
                pub_year=_req(obj, "pub_year", int, PAPERS_FILE, n),
                doc_type=parse_doc_type(_req(obj, "doc_type", str, PAPERS_FILE, n), warned),
            ))
        except MalformedRecord as exc:
            issues.append(exc)

    references: list[RawReference] = []
    for n, obj in _iter_jsonl(Path(references_path), REFERENCES_FILE, issues):
        try:
            cited = _opt(obj, "cited_paper_id", str, REFERENCES_FILE, n)
            cited_journal = _opt(obj, "cited_journal_id", str, REFERENCES_FILE, n)
            references.append(RawReference(
                citing_paper_id=sys.intern(_req(obj, "citing_paper_id", str, REFERENCES_FILE, n)),
                raw_cited_string=_req(obj, "raw_cited_string", str, REFERENCES_FILE, n),
                cited_paper_id=None if cited is None else sys.intern(cited),
                cited_journal_id=None if cited_journal is None else sys.intern(cited_journal),
                cited_year=_opt(obj, "cited_year", int, REFERENCES_FILE, n),
            ))
        except MalformedRecord as exc:
            issues.append(exc)

    # Parse failures are reported alone: records they dropped would
    # otherwise cascade into spurious dangling-reference errors.
    if issues:
        raise IngestError(issues)
    return build_corpus(papers, journals, references)


def ingest_dir(input_dir: str | Path) -> Corpus:
    """Load a corpus from a directory holding the three standard files."""
    d = Path(input_dir)
    return ingest(d / PAPERS_FILE, d / JOURNALS_FILE, d / REFERENCES_FILE)


def export_corpus(corpus: Corpus, out_dir: str | Path) -> None:
    """Write the corpus back out as the three JSONL files.

    Re-ingesting the exported files reproduces the corpus exactly.
    """
    d = Path(out_dir)
    d.mkdir(parents=True, exist_ok=True)
    with open(d / PAPERS_FILE, "w", encoding="utf-8") as fh:
        for p in corpus.papers.values():
            fh.write(json.dumps({
                "paper_id": p.paper_id,
                "journal_id": p.journal_id,
                "pub_year": p.pub_year,
                "doc_type": p.doc_type.value,
            }) + "\n")
    with open(d / JOURNALS_FILE, "w", encoding="utf-8") as fh:
        for j in corpus.journals.values():
            fh.write(json.dumps({
                "journal_id": j.journal_id,
                "canonical_name": j.canonical_name,
                "name_variants": list(j.name_variants),
                "discipline": j.discipline,
                "specialty": j.specialty,
            }) + "\n")
    with open(d / REFERENCES_FILE, "w", encoding="utf-8") as fh:
        for r in corpus.references:
            fh.write(json.dumps({
                "citing_paper_id": r.citing_paper_id,
                "raw_cited_string": r.raw_cited_string,
                "cited_paper_id": r.cited_paper_id,
                "cited_journal_id": r.cited_journal_id,
                "cited_year": r.cited_year,
            }) + "\n")


# ---------------------------------------------------------------------------
# Corpus-level statistics
# ---------------------------------------------------------------------------


def citable_share(corpus: Corpus, year_filter: int | Iterable[int] | None = None) -> float:
    """Fraction of papers whose document type is citable (article/review).

    ``year_filter`` restricts the count to one year or a set of years;
    ``None`` means the whole corpus.  Raises :class:`EmptySelection` if
    no papers match.
    """
    if year_filter is None:
        years = None
    elif isinstance(year_filter, int):
        years = {year_filter}
    else:
        years = set(year_filter)

    total = 0
    citable = 0
    for p in corpus.papers.values():
        if years is not None and p.pub_year not in years:
            continue
        total += 1
        if p.doc_type.citable:
            citable += 1
    if total == 0:
        raise EmptySelection("no papers in the selected years")
    return citable / total
