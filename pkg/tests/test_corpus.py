"""Ingestion, validation, round-tripping, and citable-share counting."""

from __future__ import annotations

import dataclasses
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from citemetrics.corpus import (
    DocumentType,
    PaperRecord,
    build_corpus,
    citable_share,
    export_corpus,
    ingest,
    ingest_dir,
    parse_doc_type,
)
from citemetrics.errors import (
    DanglingReference,
    DuplicateId,
    EmptySelection,
    IngestError,
    MalformedRecord,
    VariantCollision,
)
from citemetrics.synth import generate
from citemetrics.synth.scenario import JournalSpec, ScenarioSpec

from conftest import journal, make_corpus, paper, ref


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")


def write_corpus_files(tmp_path, papers, journals, references):
    write_jsonl(tmp_path / "papers.jsonl", papers)
    write_jsonl(tmp_path / "journals.jsonl", journals)
    write_jsonl(tmp_path / "references.jsonl", references)
    return tmp_path


GOOD_JOURNAL = {
    "journal_id": "cell",
    "canonical_name": "Cell",
    "name_variants": ["CELL"],
    "discipline": "Biomedical Research",
    "specialty": None,
}


def test_ingest_minimal_corpus(tmp_path):
    write_corpus_files(
        tmp_path,
        papers=[
            {"paper_id": f"p{i}", "journal_id": "cell", "pub_year": 2015, "doc_type": "Article"}
            for i in range(3)
        ],
        journals=[GOOD_JOURNAL],
        references=[
            {"citing_paper_id": "p0", "raw_cited_string": "CELL 2014",
             "cited_paper_id": None, "cited_journal_id": None, "cited_year": None},
            {"citing_paper_id": "p1", "raw_cited_string": "",
             "cited_paper_id": "p0", "cited_journal_id": None, "cited_year": None},
        ],
    )
    corpus = ingest_dir(tmp_path)
    assert (corpus.n_papers, corpus.n_journals, corpus.n_references) == (3, 1, 2)
    assert corpus.year_range == (2015, 2015)


def test_ingest_missing_file_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        ingest(tmp_path / "papers.jsonl", tmp_path / "journals.jsonl",
               tmp_path / "references.jsonl")


def test_dangling_citing_paper(tmp_path):
    write_corpus_files(
        tmp_path,
        papers=[{"paper_id": "p0", "journal_id": "cell", "pub_year": 2015,
                 "doc_type": "Article"}],
        journals=[GOOD_JOURNAL],
        references=[{"citing_paper_id": "ghost", "raw_cited_string": "x",
                     "cited_paper_id": None, "cited_journal_id": None,
                     "cited_year": None}],
    )
    with pytest.raises(IngestError) as exc_info:
        ingest_dir(tmp_path)
    issues = exc_info.value.issues
    assert len(issues) == 1
    assert isinstance(issues[0], DanglingReference)
    assert issues[0].citing_paper_id == "ghost"
    assert issues[0].line == 1


def test_duplicate_paper_id(tmp_path):
    rec = {"paper_id": "p0", "journal_id": "cell", "pub_year": 2015,
           "doc_type": "Article"}
    write_corpus_files(tmp_path, papers=[rec, rec], journals=[GOOD_JOURNAL],
                       references=[])
    with pytest.raises(IngestError) as exc_info:
        ingest_dir(tmp_path)
    assert any(isinstance(i, DuplicateId) for i in exc_info.value.issues)


def test_malformed_json_line_reported_with_number(tmp_path):
    write_corpus_files(tmp_path, papers=[], journals=[GOOD_JOURNAL], references=[])
    with open(tmp_path / "papers.jsonl", "w") as fh:
        fh.write('{"paper_id": "p0", "journal_id": "cell", "pub_year": 2015, "doc_type": "Article"}\n')
        fh.write("{broken\n")
    with pytest.raises(IngestError) as exc_info:
        ingest_dir(tmp_path)
    issue = exc_info.value.issues[0]
    assert isinstance(issue, MalformedRecord)
    assert issue.line == 2


def test_variant_collision_across_journals(tmp_path):
    write_corpus_files(
        tmp_path,
        papers=[],
        journals=[
            GOOD_JOURNAL,
            {"journal_id": "cell2", "canonical_name": "The Cell Journal",
             "name_variants": ["Cell"], "discipline": "Biology", "specialty": None},
        ],
        references=[],
    )
    with pytest.raises(IngestError) as exc_info:
        ingest_dir(tmp_path)
    assert any(isinstance(i, VariantCollision) for i in exc_info.value.issues)


def test_cited_year_disagreement_rejected():
    papers = [paper("p0", "a", 2015), paper("p1", "a", 2014)]
    refs = [ref("p0", cited="p1", cited_year=2013)]
    with pytest.raises(IngestError):
        make_corpus(papers, [journal("a")], refs)


def test_unknown_doc_type_maps_to_other(caplog):
    assert parse_doc_type("article") is DocumentType.ARTICLE
    assert parse_doc_type("REVIEW") is DocumentType.REVIEW
    assert parse_doc_type("news item") is DocumentType.NEWS_ITEM
    with caplog.at_level("WARNING"):
        assert parse_doc_type("weird-type", set()) is DocumentType.OTHER
    assert "weird-type" in caplog.text


def test_corpus_is_immutable(two_journal_resolved):
    corpus = two_journal_resolved.corpus
    with pytest.raises(TypeError):
        corpus.papers["new"] = None
    with pytest.raises(dataclasses.FrozenInstanceError):
        corpus.year_range = (0, 0)
    with pytest.raises(dataclasses.FrozenInstanceError):
        corpus.references[0].cited_year = 1999


def test_reference_totals_reconcile(two_journal_resolved):
    corpus = two_journal_resolved.corpus
    outgoing = corpus.outgoing_reference_counts()
    assert sum(outgoing.values()) == corpus.n_references


def test_round_trip_export_ingest(tmp_path):
    spec = ScenarioSpec(
        seed=7,
        pub_years=(2013, 2016),
        census_years=(2016,),
        journals=tuple(
            JournalSpec(journal_id=f"J{i}", n_papers_per_year=8,
                        unmatched_fraction=0.2, discipline="General")
            for i in range(3)
        ),
    )
    corpus = generate(spec, tmp_path)
    again = ingest_dir(tmp_path)
    assert dict(again.papers) == dict(corpus.papers)
    assert dict(again.journals) == dict(corpus.journals)
    assert again.references == corpus.references
    assert again.year_range == corpus.year_range


# ---------------------------------------------------------------------------
# citable_share
# ---------------------------------------------------------------------------


def test_citable_share_all_articles():
    papers = [paper(f"p{i}", "a", 2015) for i in range(10)]
    corpus = make_corpus(papers, [journal("a")])
    assert citable_share(corpus) == 1.0


def test_citable_share_mixed():
    papers = [paper(f"p{i}", "a", 2015) for i in range(7)]
    papers += [paper(f"e{i}", "a", 2015, DocumentType.EDITORIAL) for i in range(3)]
    corpus = make_corpus(papers, [journal("a")])
    assert citable_share(corpus) == 0.7


def test_citable_share_year_filter_and_empty():
    papers = [paper("p0", "a", 2014), paper("e0", "a", 2015, DocumentType.LETTER)]
    corpus = make_corpus(papers, [journal("a")])
    assert citable_share(corpus, 2014) == 1.0
    assert citable_share(corpus, [2015]) == 0.0
    with pytest.raises(EmptySelection):
        citable_share(corpus, 1999)


def test_citable_share_on_calibrated_corpus():
    spec = ScenarioSpec(
        seed=41,
        pub_years=(2014, 2016),
        census_years=(2016,),
        journals=tuple(
            JournalSpec(journal_id=f"J{i}", n_papers_per_year=150,
                        citable_fraction=0.76)
            for i in range(20)
        ),
    )
    corpus = generate(spec)
    share = citable_share(corpus)
    # brute-force recount is the oracle
    expected = sum(p.doc_type.citable for p in corpus.papers.values()) / corpus.n_papers
    assert share == expected
    assert abs(share - 0.76) < 0.02  # ~4 standard errors at n=9000


@given(st.lists(st.sampled_from(list(DocumentType)), min_size=1, max_size=60))
def test_citable_share_matches_manual_count(doc_types):
    papers = [
        PaperRecord(f"p{i}", "a", 2015, dt) for i, dt in enumerate(doc_types)
    ]
    corpus = make_corpus(papers, [journal("a")])
    share = citable_share(corpus)
    manual = sum(
        1 for dt in doc_types if dt in (DocumentType.ARTICLE, DocumentType.REVIEW)
    ) / len(doc_types)
    assert 0.0 <= share <= 1.0
    assert share == manual


def test_build_corpus_rejects_unknown_journal_in_paper():
    with pytest.raises(IngestError) as exc_info:
        make_corpus([paper("p0", "ghost", 2015)], [journal("a")])
    assert any(isinstance(i, DanglingReference) for i in exc_info.value.issues)


def test_export_writes_exact_field_names(tmp_path, two_journal_resolved):
    export_corpus(two_journal_resolved.corpus, tmp_path)
    line = (tmp_path / "papers.jsonl").read_text().splitlines()[0]
    assert sorted(json.loads(line)) == ["doc_type", "journal_id", "paper_id", "pub_year"]
    line = (tmp_path / "references.jsonl").read_text().splitlines()[0]
    assert sorted(json.loads(line)) == [
        "cited_journal_id", "cited_paper_id", "cited_year",
        "citing_paper_id", "raw_cited_string",
    ]
