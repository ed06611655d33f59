"""Shared corpus-building helpers for the test suite."""

from __future__ import annotations

import pytest

from citemetrics.corpus import (
    Corpus,
    DocumentType,
    JournalEntry,
    PaperRecord,
    RawReference,
    build_corpus,
)
from citemetrics.matcher import resolve


def journal(jid: str, name: str | None = None, variants=(), discipline="General"):
    return JournalEntry(jid, name or jid.title(), tuple(variants), discipline)


def paper(pid: str, jid: str, year: int, doc: DocumentType = DocumentType.ARTICLE):
    return PaperRecord(pid, jid, year, doc)


def ref(citing: str, cited: str | None = None, raw: str = "",
        cited_journal: str | None = None, cited_year: int | None = None):
    return RawReference(citing, raw, cited, cited_journal, cited_year)


def make_corpus(papers, journals, refs=()) -> Corpus:
    return build_corpus(papers, journals, refs)


@pytest.fixture
def two_journal_resolved():
    """Journals A and B citing each other's 2014-2015 papers from 2016."""
    journals = [journal("a"), journal("b")]
    papers = []
    for jid in ("a", "b"):
        for year in (2014, 2015):
            papers.append(paper(f"{jid}{year}", jid, year))
        papers.append(paper(f"{jid}2016", jid, 2016))
    refs = [
        ref("a2016", cited="b2014"),
        ref("b2016", cited="a2015"),
    ]
    return resolve(make_corpus(papers, journals, refs))
