"""Distribution, cohort, inflation, discipline, and correlation analytics."""

from __future__ import annotations

import pytest
import scipy.stats
from hypothesis import given
from hypothesis import strategies as st

from citemetrics.corpus import build_corpus
from citemetrics.distributions import (
    cohort_curve,
    correlate,
    discipline_profile,
    distribution,
    inflation_series,
    jcr_share_histogram,
    share_bucket,
)
from citemetrics.errors import (
    DegenerateInput,
    EmptyCohort,
    EmptyDiscipline,
    EmptyWindow,
)
from citemetrics.indicators import all_reports, jif_wos_derived, tally
from citemetrics.matcher import resolve
from citemetrics.synth import (
    fixture_inflation_snapshots,
    fixture_math_discipline,
    generate,
    oracle_discipline_profile,
    oracle_distribution,
)
from citemetrics.synth.scenario import (
    AgeProfile,
    BIOMEDICAL_AGE_WEIGHTS,
    CitationDistribution,
    JournalSpec,
    ScenarioSpec,
)

from conftest import journal, make_corpus, paper, ref


def _counts_corpus(counts: list[int], journal_id="d"):
    journals = [journal(journal_id), journal("src")]
    papers = [paper(f"{journal_id}{i}", journal_id, 2015) for i in range(len(counts))]
    papers += [paper(f"src{i}", "src", 2016) for i in range(8)]
    refs = []
    k = 0
    for i, c in enumerate(counts):
        for _ in range(c):
            refs.append(ref(f"src{k % 8}", cited=f"{journal_id}{i}"))
            k += 1
    return resolve(build_corpus(papers, journals, refs))


# ---------------------------------------------------------------------------
# distribution
# ---------------------------------------------------------------------------


def test_distribution_share_direct_count():
    resolved = _counts_corpus([0, 1, 2, 3, 4])
    summary = distribution(resolved, "d", 2016, 2, jif_value=2.0)
    assert summary.share_at_or_above_jif == 0.6
    assert summary.mean == 2.0
    assert summary.median == 2.0
    assert summary.histogram == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}
    assert summary.n_papers == 5


def test_distribution_boundary_tie_counts():
    resolved = _counts_corpus([7])
    summary = distribution(resolved, "d", 2016, 2, jif_value=7.0)
    assert summary.share_at_or_above_jif == 1.0


def test_distribution_histogram_sums_to_n_papers():
    resolved = _counts_corpus([0, 0, 3, 9, 9, 1])
    summary = distribution(resolved, "d", 2016, 2, jif_value=1.0)
    assert sum(summary.histogram.values()) == summary.n_papers == 6


def test_distribution_empty_window():
    resolved = _counts_corpus([1, 2])
    with pytest.raises(EmptyWindow):
        distribution(resolved, "src", 2016, 2, jif_value=1.0)


def test_distribution_matches_oracle():
    resolved = _counts_corpus([0, 1, 1, 4, 8, 2, 0])
    summary = distribution(resolved, "d", 2016, 2, jif_value=2.3)
    want = oracle_distribution(resolved, "d", 2016, 2, 2.3)
    assert dict(summary.histogram) == want["histogram"]
    assert summary.mean == want["mean"]
    assert summary.median == want["median"]
    assert summary.share_at_or_above_jif == want["share_at_or_above_jif"]


def test_heavy_tail_journal_share_near_published_band():
    # Lognormal journal fitted to a mean of 30.4: the share of papers
    # at or above the mean sits just under 0.29, far below one half.
    spec = ScenarioSpec(
        seed=99,
        pub_years=(2014, 2016),
        census_years=(2016,),
        journals=(
            JournalSpec(
                journal_id="big",
                n_papers_per_year=1250,
                citable_fraction=1.0,
                citation_distribution=CitationDistribution(
                    "lognormal", mu=2.769, sigma=1.136
                ),
            ),
            JournalSpec(journal_id="pool", n_papers_per_year=100,
                        citation_distribution=CitationDistribution("fixed", k=0)),
        ),
    )
    resolved = resolve(generate(spec))
    jif = jif_wos_derived(tally(resolved, "big", 2016, 2))
    summary = distribution(resolved, "big", 2016, 2, jif_value=jif)
    assert 0.26 <= summary.share_at_or_above_jif <= 0.31


@given(st.lists(st.integers(min_value=0, max_value=60), min_size=2, max_size=40))
def test_share_at_mean_bounded_for_skewed_counts(counts):
    """When the mean strictly exceeds the median, at most half the
    papers can sit at or above the mean (strictly fewer for odd n)."""
    n = len(counts)
    mean = sum(counts) / n
    ordered = sorted(counts)
    median = (
        ordered[n // 2]
        if n % 2
        else (ordered[n // 2 - 1] + ordered[n // 2]) / 2
    )
    if mean <= median:
        return
    share = sum(1 for c in counts if c >= mean) / n
    assert share <= 0.5
    if n % 2 == 1:
        assert share < 0.5


# ---------------------------------------------------------------------------
# share histogram
# ---------------------------------------------------------------------------


def test_share_bucket_half_open():
    assert share_bucket(0.30) == 30
    assert share_bucket(0.349) == 30
    assert share_bucket(0.35) == 35
    assert share_bucket(0.0) == 0
    assert share_bucket(1.0) == 100


def test_jcr_share_histogram_single_bucket():
    resolved = _counts_corpus([0, 0, 0, 0, 1, 1, 1, 2, 2, 9])
    # share 0.30 by construction: 3 of 10 papers at/above 2.0
    summary = distribution(resolved, "d", 2016, 2, jif_value=2.0)
    assert summary.share_at_or_above_jif == 0.3
    hist, ge_half = jcr_share_histogram([summary] * 7)
    assert hist == {30: 7}
    assert ge_half == 0.0


def test_jcr_share_histogram_ge_half_fraction():
    resolved = _counts_corpus([5, 5, 5, 0])
    high = distribution(resolved, "d", 2016, 2, jif_value=3.75)  # share 0.75
    low = distribution(resolved, "d", 2016, 2, jif_value=6.0)    # share 0.0
    hist, ge_half = jcr_share_histogram([high, low, low, low])
    assert hist == {0: 3, 75: 1}
    assert ge_half == 0.25


# ---------------------------------------------------------------------------
# cohort curves
# ---------------------------------------------------------------------------


def _cohort_corpus(per_age: dict[int, int], horizon_pubs=12):
    """Cohort journal publishes in 2000 only; pool cites it per_age."""
    journals = [journal("bio", discipline="Biomedical Research"),
                journal("pool", discipline="Other")]
    papers = [paper(f"bio{i}", "bio", 2000) for i in range(4)]
    refs = []
    for age, n in per_age.items():
        year = 2000 + age
        papers.append(paper(f"pool{year}", "pool", year))
        for k in range(n):
            refs.append(ref(f"pool{year}", cited=f"bio{k % 4}"))
    return resolve(build_corpus(papers, journals, refs))


def test_cohort_step_function():
    resolved = _cohort_corpus({1: 10})
    curve = cohort_curve(resolved, "Biomedical Research", 2000, 5)
    assert curve.per_year_citations == (0, 10, 0, 0, 0, 0)
    assert curve.cumulative_fraction[0] == 0.0
    assert curve.cumulative_fraction[1] == 1.0
    assert curve.cumulative_fraction[-1] == 1.0
    assert curve.years_to_half == 1
    assert not curve.truncated


def test_cohort_nondecreasing_and_ends_at_one():
    resolved = _cohort_corpus({0: 1, 1: 5, 2: 7, 3: 4, 5: 2})
    curve = cohort_curve(resolved, "Biomedical Research", 2000, 10)
    fracs = curve.cumulative_fraction
    assert all(a <= b for a, b in zip(fracs, fracs[1:]))
    assert fracs[-1] == pytest.approx(1.0)
    assert curve.first_two_year_share == pytest.approx(12 / 19)


def test_cohort_truncated_horizon_flagged():
    resolved = _cohort_corpus({1: 5, 9: 5})
    curve = cohort_curve(resolved, "Biomedical Research", 2000, 4)
    assert curve.truncated
    assert curve.cumulative_fraction[-1] == pytest.approx(0.5)


def test_cohort_empty_discipline():
    resolved = _cohort_corpus({1: 1})
    with pytest.raises(EmptyCohort):
        cohort_curve(resolved, "No Such Field", 2000, 5)
    with pytest.raises(EmptyCohort):
        cohort_curve(resolved, "Biomedical Research", 1990, 5)


def test_cohort_biomedical_profile_calibration():
    """The packaged biomedical ageing profile yields a ~15% two-year
    share and reaches half its citations 8 years out."""
    spec = ScenarioSpec(
        seed=17,
        pub_years=(1985, 1985),
        census_years=tuple(range(1985, 2016)),
        journals=(
            JournalSpec(
                journal_id="bio",
                n_papers_per_year=250,
                citable_fraction=1.0,
                citation_distribution=CitationDistribution("lognormal", mu=0.0, sigma=0.8),
                self_citation_rate=0.0,
                discipline="Biomedical Research",
                ref_age_profile=AgeProfile(citation_age_weights=BIOMEDICAL_AGE_WEIGHTS),
            ),
            JournalSpec(
                journal_id="pool",
                n_papers_per_year=150,
                citation_distribution=CitationDistribution("fixed", k=0),
                discipline="Other",
            ),
        ),
    )
    resolved = resolve(generate(spec))
    curve = cohort_curve(resolved, "Biomedical Research", 1985, 30)
    assert 0.13 <= curve.first_two_year_share <= 0.17
    assert curve.years_to_half in (7, 8, 9)


# ---------------------------------------------------------------------------
# inflation
# ---------------------------------------------------------------------------


def test_inflation_identical_snapshots_flat():
    snapshots = fixture_inflation_snapshots()
    same = {2015: snapshots[1997], 2016: snapshots[1997]}
    series = inflation_series(same, thresholds=(10.0,))
    assert series.years[0].mean_jif == series.years[1].mean_jif
    assert series.pct_increased[(2015, 2016)] == 0.0


def test_inflation_fixture_reproduces_published_aggregates():
    series = inflation_series(fixture_inflation_snapshots(), thresholds=(10.0,))
    means = {rec.year: rec.mean_jif for rec in series.years}
    assert means == {1997: 1.125, 2007: 1.707, 2016: 2.178}
    above = {rec.year: rec.count_above_threshold[10.0] for rec in series.years}
    assert above == {1997: 49, 2007: 105, 2016: 201}


def test_inflation_mean_equals_arithmetic_oracle():
    snapshots = fixture_inflation_snapshots()
    series = inflation_series(snapshots, thresholds=(10.0,))
    for rec in series.years:
        values = [r.jif_wos_derived for r in snapshots[rec.year]]
        assert rec.mean_jif == sum(values) / len(values)
        assert rec.journal_count == len(values)


def test_inflation_ranks_start_at_one():
    series = inflation_series(fixture_inflation_snapshots())
    top = series.ranks["I00000"]
    assert all(rank == 1 for rank in top.values())


def test_inflation_requires_two_years():
    snapshots = fixture_inflation_snapshots()
    with pytest.raises(DegenerateInput):
        inflation_series({1997: snapshots[1997]})


def test_growing_reference_lists_inflate_mean_jif():
    """Reference lists growing ~3%/yr push the mean JIF up every year."""
    journals = [journal(f"g{i}") for i in range(4)]
    papers = [
        paper(f"g{i}-{y}", f"g{i}", y)
        for i in range(4)
        for y in range(2008, 2017)
    ]
    refs = []
    per_year = {y: round(100 * 1.03 ** (y - 2012)) for y in range(2012, 2017)}
    for census, n_refs in per_year.items():
        for i in range(4):
            for k in range(n_refs):
                target = f"g{(i + 1 + k % 3) % 4}-{census - 1 - k % 2}"
                refs.append(ref(f"g{i}-{census}", cited=target))
    resolved = resolve(build_corpus(papers, journals, refs))
    snapshots = {y: all_reports(resolved, y) for y in per_year}
    series = inflation_series(snapshots)
    means = [rec.mean_jif for rec in series.years]
    assert all(a < b for a, b in zip(means, means[1:]))


# ---------------------------------------------------------------------------
# discipline profiles
# ---------------------------------------------------------------------------


def test_discipline_profile_single_journal_jif():
    journals = [journal("solo", discipline="Physics"), journal("src", discipline="Other")]
    papers = [paper("solo1", "solo", 2015), paper("src1", "src", 2016)]
    refs = [ref("src1", cited="solo1"), ref("src1", cited="solo1")]
    resolved = resolve(build_corpus(papers, journals, refs))
    profile = discipline_profile(resolved, "Physics", 2016)
    assert profile.mean_jif == jif_wos_derived(tally(resolved, "solo", 2016, 2))
    assert profile.max_jif == profile.mean_jif
    assert profile.n_journals == 1


def test_discipline_profile_math_fixture():
    resolved = resolve(fixture_math_discipline())
    profile = discipline_profile(resolved, "Mathematics", 2016)
    assert profile.mean_refs == 26.56
    assert round(profile.mean_ref_age, 2) == 16.65
    assert profile.ref_age_coverage == 1.0
    assert profile.mean_refs_to_indexed == 0.0


def test_discipline_profile_current_year_refs_age_zero():
    journals = [journal("a", discipline="Health")]
    papers = [paper("a1", "a", 2016), paper("a2", "a", 2016)]
    refs = [ref("a1", cited="a2"), ref("a2", cited="a1")]
    resolved = resolve(build_corpus(papers, journals, refs))
    profile = discipline_profile(resolved, "Health", 2016)
    assert profile.mean_ref_age == 0.0
    assert profile.mean_refs == 1.0
    assert profile.mean_refs_to_indexed == 1.0


def test_discipline_profile_unknown_discipline():
    resolved = resolve(fixture_math_discipline())
    with pytest.raises(EmptyDiscipline):
        discipline_profile(resolved, "Alchemy", 2016)


def test_discipline_profile_matches_oracle():
    spec = ScenarioSpec(
        seed=23,
        pub_years=(2012, 2016),
        census_years=(2016,),
        journals=tuple(
            JournalSpec(
                journal_id=f"J{i}",
                n_papers_per_year=10,
                discipline="Chemistry" if i % 2 else "Biology",
                unmatched_fraction=0.1,
                ref_age_profile=AgeProfile(mean_refs=12.0, mean_ref_age=6.0),
            )
            for i in range(6)
        ),
    )
    resolved = resolve(generate(spec))
    for discipline in ("Chemistry", "Biology"):
        got = discipline_profile(resolved, discipline, 2016)
        want = oracle_discipline_profile(resolved, discipline, 2016)
        assert got.mean_jif == pytest.approx(want["mean_jif"], abs=1e-12)
        assert got.max_jif == pytest.approx(want["max_jif"], abs=1e-12)
        assert got.mean_refs == pytest.approx(want["mean_refs"], abs=1e-12)
        assert got.mean_refs_to_indexed == pytest.approx(
            want["mean_refs_to_indexed"], abs=1e-12
        )
        assert got.mean_ref_age == pytest.approx(want["mean_ref_age"], abs=1e-12)


# ---------------------------------------------------------------------------
# correlate
# ---------------------------------------------------------------------------


def test_correlate_perfect_linear():
    xs = [1.0, 2.0, 3.0, 4.0]
    assert correlate(xs, [2 * x for x in xs]) == {"pearson_r": 1.0, "r_squared": 1.0}
    result = correlate(xs, [-x for x in xs])
    assert result["pearson_r"] == -1.0
    assert result["r_squared"] == 1.0


def test_correlate_degenerate_inputs():
    with pytest.raises(DegenerateInput):
        correlate([1.0, 2.0], [1.0, 2.0])
    with pytest.raises(DegenerateInput):
        correlate([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(DegenerateInput):
        correlate([1.0, 2.0, 3.0], [1.0, 2.0])


@given(
    st.lists(
        st.tuples(
            st.floats(min_value=-100, max_value=100),
            st.floats(min_value=-100, max_value=100),
        ),
        min_size=3,
        max_size=50,
    )
)
def test_correlate_matches_scipy(pairs):
    xs = [p[0] for p in pairs]
    ys = [p[1] for p in pairs]
    if len(set(xs)) < 2 or len(set(ys)) < 2:
        return
    got = correlate(xs, ys)
    want = scipy.stats.pearsonr(xs, ys).statistic
    assert got["pearson_r"] == pytest.approx(want, abs=1e-9)


def test_jif_vs_symmetric_highly_correlated_on_synthetic_registry():
    spec = ScenarioSpec(
        seed=61,
        pub_years=(2014, 2016),
        census_years=(2016,),
        journals=tuple(
            JournalSpec(
                journal_id=f"J{i:03d}",
                n_papers_per_year=30,
                citable_fraction=0.75 + 0.2 * (i % 5) / 4,
                citation_distribution=CitationDistribution(
                    "lognormal", mu=0.2 + 0.025 * i, sigma=0.9
                ),
                unmatched_fraction=0.05 + 0.01 * (i % 7),
            )
            for i in range(80)
        ),
    )
    resolved = resolve(generate(spec))
    xs, ys = [], []
    for jid in resolved.corpus.journals:
        t = tally(resolved, jid, 2016, 2)
        if t.n_citable_items == 0:
            continue
        xs.append(jif_wos_derived(t))
        ys.append(t.cites_matched_citable / t.n_citable_items)
    result = correlate(xs, ys)
    assert result["r_squared"] >= 0.9
    assert result["pearson_r"] == pytest.approx(
        scipy.stats.pearsonr(xs, ys).statistic, abs=1e-12
    )
