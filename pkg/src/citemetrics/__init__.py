"""Citation-graph analytics: impact indicators, network rankings, and
manipulation detectors over paper/journal/reference corpora."""

from .corpus import (
    Corpus,
    DocumentType,
    JournalEntry,
    PaperRecord,
    RawReference,
    build_corpus,
    citable_share,
    export_corpus,
    ingest,
    ingest_dir,
)
from .matcher import (
    CitationClass,
    Classification,
    ResolvedCorpus,
    default_abbreviations,
    load_abbreviations,
    normalize_name,
    resolve,
)
from .indicators import (
    CitationTally,
    IndicatorReport,
    all_reports,
    build_report,
    citescore,
    jif2,
    jif5,
    jif_no_self,
    jif_wos_derived,
    median_cites,
    pct_increase,
    self_citation_rate,
    symmetric_if,
    tally,
)
from .network import (
    JournalCitationMatrix,
    RankingParams,
    article_influence,
    build_matrix,
    eigenfactor,
    sjr,
    snip,
)
from .distributions import (
    CohortCurve,
    DisciplineProfile,
    DistributionSummary,
    InflationSeries,
    cohort_curve,
    correlate,
    discipline_profile,
    distribution,
    inflation_series,
    jcr_share_histogram,
)
from .anomaly import (
    AnomalyFlag,
    AnomalyKind,
    DetectionThresholds,
    detect_all,
    editor_burst,
    ifbscp,
    self_citation_flag,
    stacking_detector,
)

__version__ = "0.1.0"
