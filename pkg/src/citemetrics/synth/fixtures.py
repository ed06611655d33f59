"""Deterministic fixtures encoding published 2016 citation statistics.

``fixture_benchmark2016`` reconstructs, paper by paper and reference by
reference, the published 2016 citation tallies for six flagship
journals (plus a high-self-citation physics journal), so indicator
implementations can be checked against known values end to end.  The
inflation fixture encodes three JCR-wide snapshot aggregates the same
way.  Everything here is pure arithmetic: no randomness, byte-identical
output on every run.
"""

from __future__ import annotations

from pathlib import Path

from ..corpus import (
    Corpus,
    DocumentType,
    JournalEntry,
    PaperRecord,
    RawReference,
    build_corpus,
    export_corpus,
)
from ..indicators import IndicatorReport

# Published 2016 figures (2014-2015 papers, 2016 citations): citations
# received by articles, reviews, and non-citable items, unmatched
# citations retrieved by journal name, citable item counts, and the
# official JIF those years.
BENCHMARK_2016 = {
    "cell": {
        "name": "Cell",
        "variants": ("CELL",),
        "discipline": "Biomedical Research",
        "article_cites": 20_885,
        "review_cites": 3_068,
        "noncitable_cites": 601,
        "unmatched_cites": 2_016,
        "citable_items": 869,
        "n_reviews": 69,
        "n_front": 40,
        "jcr_jif": 30.410,
    },
    "ncb": {
        "name": "Nature Chemical Biology",
        "variants": ("Nat. Chem. Biol.", "Nat Chem Biol"),
        "discipline": "Biomedical Research",
        "article_cites": 3_263,
        "review_cites": 378,
        "noncitable_cites": 217,
        "unmatched_cites": 356,
        "citable_items": 268,
        "n_reviews": 30,
        "n_front": 20,
        "jcr_jif": 15.066,
    },
    "plosbio": {
        "name": "PLOS Biology",
        "variants": ("PLOS Biol.", "PLoS Biol"),
        "discipline": "Biomedical Research",
        "article_cites": 3_088,
        "review_cites": 6,
        "noncitable_cites": 237,
        "unmatched_cites": 290,
        "citable_items": 384,
        "n_reviews": 4,
        "n_front": 20,
        "jcr_jif": 9.797,
    },
    "faseb": {
        "name": "FASEB Journal",
        "variants": ("FASEB J.", "The FASEB Journal"),
        "discipline": "Biomedical Research",
        "article_cites": 3_650,
        "review_cites": 235,
        "noncitable_cites": 203,
        "unmatched_cites": 802,
        "citable_items": 881,
        "n_reviews": 40,
        "n_front": 20,
        "jcr_jif": 5.498,
    },
    "nature": {
        "name": "Nature",
        "variants": (),
        "discipline": "Multidisciplinary",
        "article_cites": 55_380,
        "review_cites": 3_925,
        "noncitable_cites": 5_067,
        "unmatched_cites": 6_047,
        "citable_items": 1_784,
        "n_reviews": 90,
        "n_front": 250,
        "jcr_jif": 40.140,
    },
    "science": {
        "name": "Science",
        "variants": (),
        "discipline": "Multidisciplinary",
        "article_cites": 45_708,
        "review_cites": 4_886,
        "noncitable_cites": 5_657,
        "unmatched_cites": 6_340,
        "citable_items": 1_721,
        "n_reviews": 80,
        "n_front": 250,
        "jcr_jif": 37.210,
    },
}

# A specialized physics journal whose 2014-2015 papers drew half their
# 2016 citations from the journal itself.
JHEP_2016 = {
    "journal_id": "jhep",
    "name": "Journal of High Energy Physics",
    "variants": ("J. High Energy Phys.", "JHEP"),
    "discipline": "Physics",
    "total_cites": 18_651,
    "self_cites": 9_285,
    "citable_items": 1_000,
}

CENSUS_YEAR = 2016
WINDOW_YEARS = (2014, 2015)

# Citing papers are spread over several source journals so that no
# single donor dominates any journal's incoming citations.
_N_POOLS = 8
_POOL_IDS = tuple(f"jcs{i}" for i in range(1, _N_POOLS + 1))
_POOL_REFS_PER_PAPER = 40


def _skewed_allocation(total: int, n: int) -> list[int]:
    """Split ``total`` citations over ``n`` items with a 1/rank profile."""
    if n == 0:
        return []
    weights = [1.0 / (i + 1) for i in range(n)]
    scale = total / sum(weights)
    counts = [int(w * scale) for w in weights]
    shortfall = total - sum(counts)
    for i in range(shortfall):
        counts[i % n] += 1
    return counts


class _RoundRobin:
    """Deterministically cycle citing-paper ids."""

    def __init__(self, ids: list[str]):
        self.ids = ids
        self.i = 0

    def next(self) -> str:
        pid = self.ids[self.i]
        self.i = (self.i + 1) % len(self.ids)
        return pid


def fixture_benchmark2016(out_dir: str | Path | None = None) -> Corpus:
    """Corpus reproducing the published 2016 benchmark tallies exactly.

    Citing papers live in a generic source journal (plus the physics
    journal's own 2016 issues for its self-citations); unmatched
    citations are expressed as raw strings over the journals' name
    variants so the matcher does the attribution.
    """
    journals = [
        JournalEntry(pool_id, f"Journal of Citation Sources {i}", (), "Multidisciplinary")
        for i, pool_id in enumerate(_POOL_IDS, start=1)
    ]
    papers: list[PaperRecord] = []
    references: list[RawReference] = []

    # Target items, split across the two window years.
    items: dict[str, dict[str, list[str]]] = {}
    for jid, row in BENCHMARK_2016.items():
        journals.append(JournalEntry(
            jid, row["name"], tuple(row["variants"]), row["discipline"],
        ))
        n_articles = row["citable_items"] - row["n_reviews"]
        buckets: dict[str, list[str]] = {"article": [], "review": [], "front": []}
        for kind, count, doc in (
            ("article", n_articles, DocumentType.ARTICLE),
            ("review", row["n_reviews"], DocumentType.REVIEW),
            ("front", row["n_front"], DocumentType.EDITORIAL),
        ):
            for i in range(count):
                year = WINDOW_YEARS[i % 2]
                pid = f"{jid}-{kind}-{i:05d}"
                papers.append(PaperRecord(pid, jid, year, doc))
                buckets[kind].append(pid)
        items[jid] = buckets

    journals.append(JournalEntry(
        JHEP_2016["journal_id"], JHEP_2016["name"],
        tuple(JHEP_2016["variants"]), JHEP_2016["discipline"],
    ))
    jhep_items: list[str] = []
    for i in range(JHEP_2016["citable_items"]):
        year = WINDOW_YEARS[i % 2]
        pid = f"jhep-article-{i:05d}"
        papers.append(PaperRecord(pid, "jhep", year, DocumentType.ARTICLE))
        jhep_items.append(pid)
    jhep_citing = [f"jhep-2016-{i:05d}" for i in range(500)]
    for pid in jhep_citing:
        papers.append(PaperRecord(pid, "jhep", CENSUS_YEAR, DocumentType.ARTICLE))

    total_refs = sum(
        row["article_cites"] + row["review_cites"]
        + row["noncitable_cites"] + row["unmatched_cites"]
        for row in BENCHMARK_2016.values()
    )
    pool_external = total_refs + JHEP_2016["total_cites"] - JHEP_2016["self_cites"]
    n_pool = -(-pool_external // _POOL_REFS_PER_PAPER)
    pool_citing = [f"jcs-2016-{i:05d}" for i in range(n_pool)]
    for i, pid in enumerate(pool_citing):
        papers.append(PaperRecord(
            pid, _POOL_IDS[i % _N_POOLS], CENSUS_YEAR, DocumentType.ARTICLE,
        ))

    pool = _RoundRobin(pool_citing)

    def cite_items(targets: list[str], total: int) -> None:
        for pid, count in zip(targets, _skewed_allocation(total, len(targets))):
            for _ in range(count):
                references.append(RawReference(pool.next(), "", pid, None, None))

    for jid, row in BENCHMARK_2016.items():
        cite_items(items[jid]["article"], row["article_cites"])
        cite_items(items[jid]["review"], row["review_cites"])
        cite_items(items[jid]["front"], row["noncitable_cites"])
        # Unmatched: attribution must go through name normalization.
        names = (row["name"], *row["variants"])
        for k in range(row["unmatched_cites"]):
            year = WINDOW_YEARS[k % 2]
            name = names[k % len(names)]
            vol = 101 + (k % 799)
            references.append(RawReference(
                pool.next(), f"{name} {vol} ({year})", None, None, None,
            ))

    jhep_self = _RoundRobin(jhep_citing)
    counts = _skewed_allocation(JHEP_2016["total_cites"], len(jhep_items))
    remaining_self = JHEP_2016["self_cites"]
    for pid, count in zip(jhep_items, counts):
        for _ in range(count):
            if remaining_self > 0:
                references.append(RawReference(jhep_self.next(), "", pid, None, None))
                remaining_self -= 1
            else:
                references.append(RawReference(pool.next(), "", pid, None, None))

    corpus = build_corpus(papers, journals, references)
    if out_dir is not None:
        export_corpus(corpus, out_dir)
    return corpus


# ---------------------------------------------------------------------------
# Inflation snapshots
# ---------------------------------------------------------------------------

# Three snapshot years with exact means and counts of journals above 10:
# values are dyadic so sums and means are float-exact.
_INFLATION_LAYOUT = {
    1997: {"n": 6_388, "top": 39.5, "high": (48, 11.0), "bumped": (560, 1.5), "low": 1.0},
    2007: {"n": 8_000, "top": 69.5, "high": (104, 12.0), "bumped": (992, 2.0), "low": 1.5},
    2016: {"n": 11_500, "top": 187.0, "high": (200, 11.5), "bumped": (11_223, 2.0), "low": 1.5},
}

INFLATION_EXPECTED_MEANS = {1997: 1.125, 2007: 1.707, 2016: 2.178}
INFLATION_EXPECTED_ABOVE_10 = {1997: 49, 2007: 105, 2016: 201}


def _snapshot_values(layout: dict) -> list[float]:
    n_high, high = layout["high"]
    n_bumped, bumped = layout["bumped"]
    n_low = layout["n"] - 1 - n_high - n_bumped
    return [layout["top"]] + [high] * n_high + [bumped] * n_bumped + [layout["low"]] * n_low


def fixture_inflation_snapshots() -> dict[int, list[IndicatorReport]]:
    """Per-year indicator snapshots with exact means 1.125/1.707/2.178
    and exactly 49/105/201 journals above a JIF of 10.

    Journal sets are nested across years (the registry grows), so rank
    trajectories and increase percentages are well defined.
    """
    snapshots: dict[int, list[IndicatorReport]] = {}
    for year, layout in _INFLATION_LAYOUT.items():
        values = _snapshot_values(layout)
        snapshots[year] = [
            IndicatorReport(
                journal_id=f"I{i:05d}",
                census_year=year,
                jif2=v,
                jif5=None,
                jif_wos_derived=v,
                symmetric_if=None,
                jif_no_self=None,
                citescore=None,
                median_cites=None,
                self_citation_rate=None,
                pct_increase=None,
            )
            for i, v in enumerate(values)
        ]
    return snapshots


# ---------------------------------------------------------------------------
# Discipline referencing profile fixture
# ---------------------------------------------------------------------------


def fixture_math_discipline() -> Corpus:
    """A one-journal Mathematics corpus with mean 26.56 references per
    paper and mean reference age 16.65 (to two decimals).

    100 census-year papers carry 2,656 references to unindexed sources
    with known cited years summing to 44,222 years of age.
    """
    journal = JournalEntry("jmath", "Journal of Mathematics", (), "Mathematics")
    papers = [
        PaperRecord(f"jmath-2016-{i:03d}", "jmath", CENSUS_YEAR, DocumentType.ARTICLE)
        for i in range(100)
    ]
    references: list[RawReference] = []
    n_age17 = 1_726  # remainder are age 16; total age = 44,222 over 2,656 refs
    k = 0
    for i, paper in enumerate(papers):
        n_refs = 27 if i < 56 else 26
        for _ in range(n_refs):
            age = 17 if k < n_age17 else 16
            references.append(RawReference(
                paper.paper_id,
                f"Unindexed Monograph Series no. {k}",
                None,
                None,
                CENSUS_YEAR - age,
            ))
            k += 1
    return build_corpus(papers, [journal], references)
