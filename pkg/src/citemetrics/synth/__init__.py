"""Seeded synthetic corpora, table-derived fixtures, and brute-force oracles."""

from .scenario import (
    AgeProfile,
    CitationDistribution,
    Injection,
    JournalSpec,
    ScenarioSpec,
    BIOMEDICAL_AGE_WEIGHTS,
    DISCIPLINE_AGE_WEIGHTS,
    generate,
    scenario_from_json,
)
from .fixtures import (
    BENCHMARK_2016,
    JHEP_2016,
    fixture_benchmark2016,
    fixture_inflation_snapshots,
    fixture_math_discipline,
)
from .oracles import (
    oracle_tally,
    oracle_matrix,
    oracle_median_cites,
    oracle_distribution,
    oracle_discipline_profile,
)

__all__ = [
    "AgeProfile",
    "CitationDistribution",
    "Injection",
    "JournalSpec",
    "ScenarioSpec",
    "BIOMEDICAL_AGE_WEIGHTS",
    "DISCIPLINE_AGE_WEIGHTS",
    "generate",
    "scenario_from_json",
    "BENCHMARK_2016",
    "JHEP_2016",
    "fixture_benchmark2016",
    "fixture_inflation_snapshots",
    "fixture_math_discipline",
    "oracle_tally",
    "oracle_matrix",
    "oracle_median_cites",
    "oracle_distribution",
    "oracle_discipline_profile",
]
