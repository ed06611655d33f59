"""Deterministic scenario-driven corpus generation.

Citation counts are drawn per cited paper and census year, then turned
into references whose citing papers are sampled from the configured
journals; reference lists are optionally padded with non-indexed
citations to match a discipline's referencing profile.  The same spec
and seed always produce the same corpus (PCG64 generator).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from ..corpus import (
    Corpus,
    DocumentType,
    JournalEntry,
    PaperRecord,
    RawReference,
    build_corpus,
    export_corpus,
)
from ..errors import InvalidSpec

# Citation-age multipliers (index = citing year - publication year) for
# the default discipline presets.  The biomedical profile is calibrated
# so the two-year impact window holds ~15% of lifetime citations and the
# cumulative half is reached 8 years after publication.
BIOMEDICAL_AGE_WEIGHTS: tuple[float, ...] = (
    0.3,
    1.0893,
    1.0,
) + tuple(0.93 ** k for k in range(1, 29))

# Slower-citing profiles for contrast: physics peaks early with a faster
# tail; psychology and the social sciences spread citations out.
PHYSICS_AGE_WEIGHTS: tuple[float, ...] = (
    0.35,
    1.15,
    1.0,
) + tuple(0.905 ** k for k in range(1, 29))
PSYCHOLOGY_AGE_WEIGHTS: tuple[float, ...] = (
    0.2,
    0.5,
    0.75,
) + tuple(0.97 ** k for k in range(1, 29))
SOCIAL_AGE_WEIGHTS: tuple[float, ...] = (
    0.2,
    0.55,
    0.8,
) + tuple(0.975 ** k for k in range(1, 29))

DISCIPLINE_AGE_WEIGHTS: Mapping[str, tuple[float, ...]] = {
    "Biomedical Research": BIOMEDICAL_AGE_WEIGHTS,
    "Physics": PHYSICS_AGE_WEIGHTS,
    "Psychology": PSYCHOLOGY_AGE_WEIGHTS,
    "Social Sciences": SOCIAL_AGE_WEIGHTS,
}


@dataclass(frozen=True)
class CitationDistribution:
    """Per-paper citation-count family: lognormal, negbinomial, or fixed."""

    kind: str
    mu: float = 0.0
    sigma: float = 1.0
    r: float = 1.0
    p: float = 0.5
    k: int = 0

    def validate(self) -> None:
        if self.kind not in ("lognormal", "negbinomial", "fixed"):
            raise InvalidSpec(f"unknown citation distribution {self.kind!r}")
        if self.kind == "lognormal" and self.sigma < 0:
            raise InvalidSpec("lognormal sigma must be >= 0")
        if self.kind == "negbinomial" and not (0 < self.p <= 1 and self.r > 0):
            raise InvalidSpec("negbinomial needs r > 0 and p in (0, 1]")
        if self.kind == "fixed" and self.k < 0:
            raise InvalidSpec("fixed count must be >= 0")

    def mean(self) -> float:
        if self.kind == "lognormal":
            return float(np.exp(self.mu + self.sigma ** 2 / 2))
        if self.kind == "negbinomial":
            return self.r * (1 - self.p) / self.p
        return float(self.k)

    def sample(self, rng: np.random.Generator, n: int, weight: float) -> np.ndarray:
        """Draw n integer citation counts scaled by an age weight in [0, 1]."""
        if n == 0 or weight == 0.0:
            return np.zeros(n, dtype=np.int64)
        if self.kind == "fixed":
            return np.full(n, round(self.k * weight), dtype=np.int64)
        if self.kind == "lognormal":
            lam = rng.lognormal(self.mu, self.sigma, n) * weight
            return rng.poisson(lam).astype(np.int64)
        counts = rng.negative_binomial(self.r, self.p, n).astype(np.int64)
        if weight >= 1.0:  # thinning only; weights above 1 saturate
            return counts
        return rng.binomial(counts, weight).astype(np.int64)


@dataclass(frozen=True)
class AgeProfile:
    """Referencing and citation-ageing behavior of a journal.

    ``mean_refs`` > 0 pads each citing paper's reference list with
    non-indexed references (ages geometric around ``mean_ref_age``) up
    to a Poisson target.  ``citation_age_weights`` scales incoming
    citation counts by years since publication; ``None`` means a flat
    1.0 for every age >= 1 and no same-year citations.
    """

    mean_refs: float = 0.0
    mean_ref_age: float = 8.0
    citation_age_weights: tuple[float, ...] | None = None

    def validate(self) -> None:
        if self.mean_refs < 0:
            raise InvalidSpec("mean_refs must be >= 0")
        if self.mean_ref_age < 1:
            raise InvalidSpec("mean_ref_age must be >= 1")
        if self.citation_age_weights is not None:
            if any(w < 0 for w in self.citation_age_weights):
                raise InvalidSpec("citation_age_weights must be >= 0")

    def weight(self, age: int) -> float:
        if self.citation_age_weights is None:
            return 1.0 if age >= 1 else 0.0
        if 0 <= age < len(self.citation_age_weights):
            return self.citation_age_weights[age]
        return 0.0


@dataclass(frozen=True)
class JournalSpec:
    journal_id: str
    n_papers_per_year: int = 20
    citable_fraction: float = 0.9
    citation_distribution: CitationDistribution = field(
        default_factory=lambda: CitationDistribution("lognormal", mu=0.0, sigma=1.0)
    )
    self_citation_rate: float = 0.12
    unmatched_fraction: float = 0.0
    discipline: str = "General"
    ref_age_profile: AgeProfile = field(default_factory=AgeProfile)
    pub_years: tuple[int, int] | None = None  # None: the scenario-wide range

    def validate(self) -> None:
        if self.n_papers_per_year <= 0:
            raise InvalidSpec(f"{self.journal_id}: n_papers_per_year must be > 0")
        for name in ("citable_fraction", "self_citation_rate", "unmatched_fraction"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise InvalidSpec(f"{self.journal_id}: {name} must be in [0, 1]")
        self.citation_distribution.validate()
        self.ref_age_profile.validate()


@dataclass(frozen=True)
class Injection:
    """Post-generation misbehavior: extra references are added, never removed.

    ``self_citation_boost`` raises the target's impact-window
    self-citation share to ``magnitude`` times its preceding-five-year
    share.  ``stacking`` adds citations from ``partner`` until the
    partner's share of the target's incoming window citations reaches
    ``magnitude``.
    """

    kind: str
    target: str
    magnitude: float
    years: tuple[int, ...] = ()
    partner: str | None = None

    def validate(self) -> None:
        if self.kind not in ("self_citation_boost", "stacking"):
            raise InvalidSpec(f"unknown injection kind {self.kind!r}")
        if self.magnitude <= 0:
            raise InvalidSpec("injection magnitude must be > 0")
        if self.kind == "stacking":
            if self.partner is None:
                raise InvalidSpec("stacking injection needs a partner journal")
            if not self.magnitude < 1:
                raise InvalidSpec("stacking magnitude is a share and must be < 1")


@dataclass(frozen=True)
class ScenarioSpec:
    seed: int
    pub_years: tuple[int, int]
    census_years: tuple[int, ...]
    journals: tuple[JournalSpec, ...]
    injections: tuple[Injection, ...] = ()

    def validate(self) -> None:
        if self.pub_years[0] > self.pub_years[1]:
            raise InvalidSpec("pub_years range is inverted")
        if not self.census_years:
            raise InvalidSpec("need at least one census year")
        if not self.journals:
            raise InvalidSpec("need at least one journal")
        ids = [j.journal_id for j in self.journals]
        if len(set(ids)) != len(ids):
            raise InvalidSpec("duplicate journal ids in scenario")
        for j in self.journals:
            j.validate()
        for inj in self.injections:
            inj.validate()
            if inj.target not in ids:
                raise InvalidSpec(f"injection target {inj.target!r} not in scenario")
            if inj.partner is not None and inj.partner not in ids:
                raise InvalidSpec(f"injection partner {inj.partner!r} not in scenario")


def _distribution_from_json(obj: Mapping) -> CitationDistribution:
    kind = obj.get("kind", "lognormal")
    return CitationDistribution(
        kind=kind,
        mu=float(obj.get("mu", 0.0)),
        sigma=float(obj.get("sigma", 1.0)),
        r=float(obj.get("r", 1.0)),
        p=float(obj.get("p", 0.5)),
        k=int(obj.get("k", 0)),
    )


def _profile_from_json(obj: Mapping) -> AgeProfile:
    weights = obj.get("citation_age_weights")
    return AgeProfile(
        mean_refs=float(obj.get("mean_refs", 0.0)),
        mean_ref_age=float(obj.get("mean_ref_age", 8.0)),
        citation_age_weights=tuple(weights) if weights is not None else None,
    )


def scenario_from_json(obj: Mapping) -> ScenarioSpec:
    """Build a spec from the scenario.json schema.

    ``n_journals`` plus ``defaults`` generates journals J0000, J0001,
    ...; entries in ``journals`` override the defaults field-by-field
    (matched by ``journal_id``, or appended if new).
    """
    try:
        seed = int(obj["seed"])
        years = obj["pub_years"]
        pub_years = (int(years[0]), int(years[1]))
        census_years = tuple(int(y) for y in obj["census_years"])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidSpec(f"scenario missing or malformed field: {exc}") from None

    defaults = obj.get("defaults", {})

    def make_journal(jid: str, overrides: Mapping) -> JournalSpec:
        merged = {**defaults, **overrides}
        dist = merged.get("citation_distribution", {})
        profile = merged.get("ref_age_profile", {})
        py = merged.get("pub_years")
        return JournalSpec(
            journal_id=jid,
            n_papers_per_year=int(merged.get("n_papers_per_year", 20)),
            citable_fraction=float(merged.get("citable_fraction", 0.9)),
            citation_distribution=_distribution_from_json(dist),
            self_citation_rate=float(merged.get("self_citation_rate", 0.12)),
            unmatched_fraction=float(merged.get("unmatched_fraction", 0.0)),
            discipline=str(merged.get("discipline", "General")),
            ref_age_profile=_profile_from_json(profile),
            pub_years=(int(py[0]), int(py[1])) if py else None,
        )

    journals: dict[str, JournalSpec] = {}
    n_journals = int(obj.get("n_journals", 0))
    for i in range(n_journals):
        jid = f"J{i:04d}"
        journals[jid] = make_journal(jid, {})
    for j_obj in obj.get("journals", []):
        jid = str(j_obj.get("journal_id", f"J{len(journals):04d}"))
        journals[jid] = make_journal(jid, j_obj)

    injections = tuple(
        Injection(
            kind=str(i_obj.get("kind", "")),
            target=str(i_obj.get("target", "")),
            magnitude=float(i_obj.get("magnitude", 0.0)),
            years=tuple(int(y) for y in i_obj.get("years", [])),
            partner=i_obj.get("partner"),
        )
        for i_obj in obj.get("injections", [])
    )

    spec = ScenarioSpec(
        seed=seed,
        pub_years=pub_years,
        census_years=census_years,
        journals=tuple(journals.values()),
        injections=injections,
    )
    spec.validate()
    return spec


def load_scenario(path: str | Path) -> ScenarioSpec:
    with open(path, encoding="utf-8") as fh:
        return scenario_from_json(json.load(fh))


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------


class _Gen:
    """Mutable working state for one generation run."""

    def __init__(self, spec: ScenarioSpec):
        self.spec = spec
        self.rng = np.random.default_rng(spec.seed)
        self.papers: list[PaperRecord] = []
        self.references: list[RawReference] = []
        # paper ids by (journal position, year), split citable/all
        self.ids_by_jy: dict[tuple[int, int], list[str]] = {}
        self.citable_by_jy: dict[tuple[int, int], list[str]] = {}


def _journal_name(jid: str) -> str:
    return f"Synthetic Journal {jid}"


def _journal_years(spec: ScenarioSpec, j: JournalSpec) -> range:
    lo, hi = j.pub_years if j.pub_years is not None else spec.pub_years
    return range(lo, hi + 1)


def _generate_papers(state: _Gen) -> None:
    spec = state.spec
    rng = state.rng
    census_set = set(spec.census_years)
    for jpos, j in enumerate(spec.journals):
        years = set(_journal_years(spec, j))
        # Census years always get papers: they host the reference lists.
        for year in sorted(years | census_set):
            n = j.n_papers_per_year
            citable_mask = rng.random(n) < j.citable_fraction
            review_mask = rng.random(n) < 0.1
            letter_mask = rng.random(n) < 0.3
            ids: list[str] = []
            citable_ids: list[str] = []
            for i in range(n):
                pid = f"{j.journal_id}-{year}-{i:05d}"
                if citable_mask[i]:
                    doc = DocumentType.REVIEW if review_mask[i] else DocumentType.ARTICLE
                    citable_ids.append(pid)
                else:
                    doc = DocumentType.LETTER if letter_mask[i] else DocumentType.EDITORIAL
                ids.append(pid)
                state.papers.append(PaperRecord(pid, j.journal_id, year, doc))
            state.ids_by_jy[(jpos, year)] = ids
            state.citable_by_jy[(jpos, year)] = citable_ids


def _generate_citations(state: _Gen) -> None:
    """Draw per-paper citation counts and materialize references."""
    spec = state.spec
    rng = state.rng
    n_journals = len(spec.journals)

    for jpos, j in enumerate(spec.journals):
        other_positions = np.array(
            [k for k in range(n_journals) if k != jpos], dtype=np.int64
        )
        name = _journal_name(j.journal_id)
        for year in _journal_years(spec, j):
            cited_ids = state.ids_by_jy.get((jpos, year), [])
            if not cited_ids:
                continue
            cited_arr = np.array(cited_ids, dtype=object)
            for census in spec.census_years:
                age = census - year
                if age < 0:
                    continue
                w = j.ref_age_profile.weight(age)
                counts = j.citation_distribution.sample(rng, len(cited_ids), w)
                total = int(counts.sum())
                if total == 0:
                    continue
                cited = np.repeat(cited_arr, counts)
                is_self = rng.random(total) < j.self_citation_rate
                if n_journals > 1:
                    citing_pos = other_positions[
                        rng.integers(0, len(other_positions), total)
                    ]
                else:
                    citing_pos = np.zeros(total, dtype=np.int64)
                citing_pos[is_self] = jpos
                unmatched = rng.random(total) < j.unmatched_fraction
                u = rng.random(total)

                refs = state.references
                ids_by_jy = state.ids_by_jy
                journals = spec.journals
                for t in range(total):
                    cpos = int(citing_pos[t])
                    pool = ids_by_jy[(cpos, census)]
                    citing_id = pool[int(u[t] * len(pool))]
                    if unmatched[t]:
                        refs.append(RawReference(
                            citing_id, f"{name} ({year})", None, None, None,
                        ))
                    else:
                        refs.append(RawReference(
                            citing_id, "", cited[t], None, None,
                        ))


def _pad_reference_lists(state: _Gen) -> None:
    """Top up census-year reference lists with non-indexed citations."""
    spec = state.spec
    rng = state.rng
    emitted: dict[str, int] = {}
    for ref in state.references:
        emitted[ref.citing_paper_id] = emitted.get(ref.citing_paper_id, 0) + 1

    for jpos, j in enumerate(spec.journals):
        profile = j.ref_age_profile
        if profile.mean_refs <= 0:
            continue
        for census in spec.census_years:
            ids = state.ids_by_jy.get((jpos, census), [])
            if not ids:
                continue
            targets = rng.poisson(profile.mean_refs, len(ids))
            for i, pid in enumerate(ids):
                deficit = int(targets[i]) - emitted.get(pid, 0)
                if deficit <= 0:
                    continue
                ages = rng.geometric(1.0 / profile.mean_ref_age, deficit)
                for k in range(deficit):
                    cited_year = census - int(ages[k])
                    state.references.append(RawReference(
                        pid,
                        f"Untracked Source Collection no. {k}",
                        None,
                        None,
                        cited_year,
                    ))


def _split_pid(pid: str) -> tuple[str, int]:
    journal, year, _idx = pid.rsplit("-", 2)
    return journal, int(year)


def _incoming_counts(
    state: _Gen,
    jpos: int,
    census: int,
    cited_years: Sequence[int],
    donor: str,
) -> tuple[int, int]:
    """(citations from ``donor``, total) made in the census year to the
    target journal's given publication years."""
    target = state.spec.journals[jpos].journal_id
    year_set = set(cited_years)
    raw_keys = {f"{_journal_name(target)} ({y})" for y in year_set}
    donor_count = total = 0
    for ref in state.references:
        citing_journal, citing_year = _split_pid(ref.citing_paper_id)
        if citing_year != census:
            continue
        if ref.cited_paper_id is not None:
            cited_journal, cited_year = _split_pid(ref.cited_paper_id)
            if cited_journal != target or cited_year not in year_set:
                continue
        elif ref.raw_cited_string not in raw_keys:
            continue
        total += 1
        if citing_journal == donor:
            donor_count += 1
    return donor_count, total


def _apply_injections(state: _Gen) -> None:
    spec = state.spec
    rng = state.rng
    pos = {j.journal_id: i for i, j in enumerate(spec.journals)}

    for inj in spec.injections:
        years = inj.years or (max(spec.census_years),)
        jpos = pos[inj.target]
        for census in years:
            window = [census - 1, census - 2]
            if inj.kind == "self_citation_boost":
                baseline_years = [census - k for k in range(3, 8)]
                base_self, base_total = _incoming_counts(
                    state, jpos, census, baseline_years, inj.target
                )
                win_self, win_total = _incoming_counts(
                    state, jpos, census, window, inj.target
                )
                if base_total == 0 or win_total == 0:
                    raise InvalidSpec(
                        f"{inj.target}: no citations to boost in {census}"
                    )
                target_share = inj.magnitude * (base_self / base_total)
                if target_share >= 1.0:
                    raise InvalidSpec(
                        f"{inj.target}: boosted share {target_share:.2f} >= 1"
                    )
                need = int(np.ceil(
                    (target_share * win_total - win_self) / (1.0 - target_share)
                ))
                if need <= 0:
                    continue
                _add_directed(state, rng, jpos, jpos, census, window, need)
            else:  # stacking
                donor_pos = pos[inj.partner]
                win_from_donor, win_total = _incoming_counts(
                    state, jpos, census, window, inj.partner
                )
                share = inj.magnitude
                need = int(np.ceil(
                    (share * win_total - win_from_donor) / (1.0 - share)
                ))
                if need <= 0:
                    continue
                _add_directed(state, rng, donor_pos, jpos, census, window, need)


def _add_directed(
    state: _Gen,
    rng: np.random.Generator,
    citing_pos: int,
    cited_pos: int,
    census: int,
    cited_years: Sequence[int],
    count: int,
) -> None:
    citing_pool = state.ids_by_jy[(citing_pos, census)]
    cited_pool = [
        pid
        for y in cited_years
        for pid in state.citable_by_jy.get((cited_pos, y), [])
    ]
    if not citing_pool or not cited_pool:
        raise InvalidSpec("injection pools are empty")
    citing_idx = rng.integers(0, len(citing_pool), count)
    cited_idx = rng.integers(0, len(cited_pool), count)
    for t in range(count):
        state.references.append(RawReference(
            citing_pool[int(citing_idx[t])], "", cited_pool[int(cited_idx[t])],
            None, None,
        ))


def generate(spec: ScenarioSpec, out_dir: str | Path | None = None) -> Corpus:
    """Generate the corpus for a scenario; optionally write JSONL files.

    Deterministic: the same spec and seed produce byte-identical output
    files and an identical in-memory corpus.
    """
    spec.validate()
    state = _Gen(spec)
    _generate_papers(state)
    _generate_citations(state)
    _pad_reference_lists(state)
    _apply_injections(state)

    journals = [
        JournalEntry(
            journal_id=j.journal_id,
            canonical_name=_journal_name(j.journal_id),
            name_variants=(),
            discipline=j.discipline,
            specialty=None,
        )
        for j in spec.journals
    ]
    corpus = build_corpus(state.papers, journals, state.references)
    if out_dir is not None:
        export_corpus(corpus, out_dir)
    return corpus
