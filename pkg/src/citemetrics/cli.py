"""Batch command-line interface.

Every command reads a corpus directory (or scenario file), writes plain
CSV/JSON artifacts into an output directory, and exits 0 on success,
1 on I/O failure, 2 on validation failure, 3 on solver non-convergence.
Outputs carry no timestamps, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import anomaly, distributions, indicators, matcher, network, plots
from .corpus import Corpus, ingest_dir
from .errors import (
    CitemetricsError,
    ComputationError,
    IngestError,
    NonConvergence,
    ValidationError,
)
from .matcher import ResolvedCorpus
from .synth import fixture_benchmark2016, generate
from .synth.scenario import load_scenario

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_NONCONVERGENCE = 3

FIXTURES = {"benchmark2016": fixture_benchmark2016}


def _write_lines(path: Path, lines: list[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_error_file(out_dir: Path, exc: IngestError) -> Path:
    rows = ["file,line,error,detail"]
    for issue in exc.issues:
        detail = getattr(issue, "detail", str(issue)).replace(",", ";")
        rows.append(
            f"{getattr(issue, 'file', '?')},{getattr(issue, 'line', 0)},"
            f"{type(issue).__name__},{detail}"
        )
    path = out_dir / "errors.csv"
    _write_lines(path, rows)
    return path


def _load_resolved(args: argparse.Namespace) -> ResolvedCorpus:
    corpus = ingest_dir(args.input)
    table = None
    if getattr(args, "abbreviations", None):
        table = matcher.load_abbreviations(args.abbreviations)
    return matcher.resolve(corpus, table)


def _maybe_plot(args: argparse.Namespace, fn, *fn_args) -> None:
    if not getattr(args, "plot", False):
        return
    try:
        fn(*fn_args)
    except Exception as exc:  # plotting must never fail the numeric run
        logger.warning("plot emission failed: %s", exc)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_ingest(args: argparse.Namespace) -> int:
    resolved = _load_resolved(args)
    corpus = resolved.corpus
    print(
        f"papers={corpus.n_papers} journals={corpus.n_journals} "
        f"references={corpus.n_references}"
    )
    rows = ["class,count"]
    rows += [f"{name},{count}" for name, count in matcher.resolve_report_rows(resolved)]
    if args.out:
        _write_lines(Path(args.out) / "resolve_report.csv", rows)
    else:
        print("\n".join(rows))
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    resolved = _load_resolved(args)
    reports = indicators.all_reports(resolved, args.year, args.window)
    out = Path(args.out)
    if args.format == "csv":
        _write_lines(
            out / "indicators.csv",
            indicators.report_csv_rows(reports, args.decimals),
        )
    else:
        payload = [
            {
                "journal_id": r.journal_id,
                "census_year": r.census_year,
                **{
                    name: (None if v is None else round(v, args.decimals))
                    for name, v in (
                        ("jif2", r.jif2),
                        ("jif5", r.jif5),
                        ("jif_wos_derived", r.jif_wos_derived),
                        ("symmetric_if", r.symmetric_if),
                        ("jif_no_self", r.jif_no_self),
                        ("citescore", r.citescore),
                        ("median_cites", r.median_cites),
                        ("self_citation_rate", r.self_citation_rate),
                        ("pct_increase", r.pct_increase),
                    )
                },
            }
            for r in reports
        ]
        out.mkdir(parents=True, exist_ok=True)
        (out / "indicators.json").write_text(
            json.dumps(payload, indent=2) + "\n", encoding="utf-8"
        )
    print(f"wrote indicators for {len(reports)} journals to {out}")
    return EXIT_OK


def cmd_detect(args: argparse.Namespace) -> int:
    resolved = _load_resolved(args)
    thresholds = anomaly.DEFAULT_THRESHOLDS
    if args.thresholds:
        with open(args.thresholds, encoding="utf-8") as fh:
            overrides = json.load(fh)
        thresholds = replace(thresholds, **overrides)
    matrix = network.build_matrix(resolved, args.year, args.window)
    flags = anomaly.detect_all(resolved, matrix, args.year, thresholds)
    rows = [anomaly.FLAGS_HEADER] + [f.csv_row() for f in flags]
    _write_lines(Path(args.out) / "flags.csv", rows)
    print(f"{len(flags)} flag(s) written")
    return EXIT_OK


def cmd_rank(args: argparse.Namespace) -> int:
    resolved = _load_resolved(args)
    params = network.RankingParams(
        damping=args.damping,
        tolerance=args.tolerance,
        max_iterations=args.max_iterations,
    )
    rows = network.ranking_csv_rows(resolved, args.year, params)
    _write_lines(Path(args.out) / "ranking.csv", rows)
    print(f"wrote ranking for {len(rows) - 1} journals")
    return EXIT_OK


def cmd_net(args: argparse.Namespace) -> int:
    resolved = _load_resolved(args)
    matrix = network.build_matrix(resolved, args.year, args.window)
    _write_lines(Path(args.out) / "matrix.csv", network.matrix_csv_rows(matrix))
    print(f"wrote {matrix.n}x{matrix.n} matrix")
    return EXIT_OK


def cmd_dist(args: argparse.Namespace) -> int:
    resolved = _load_resolved(args)
    out = Path(args.out)
    if args.journal:
        t = indicators.tally(resolved, args.journal, args.year, args.window)
        jif = indicators.jif_wos_derived(t)
        summary = distributions.distribution(
            resolved, args.journal, args.year, args.window, jif
        )
        rows = ["citations,paper_count"]
        rows += [f"{c},{n}" for c, n in summary.histogram.items()]
        _write_lines(out / f"distribution_{args.journal}.csv", rows)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"distribution_{args.journal}.json").write_text(
            json.dumps({
                "journal_id": summary.journal_id,
                "census_year": summary.census_year,
                "histogram": {str(k): v for k, v in summary.histogram.items()},
                "mean": summary.mean,
                "median": summary.median,
                "share_at_or_above_jif": summary.share_at_or_above_jif,
                "n_papers": summary.n_papers,
            }, indent=2) + "\n",
            encoding="utf-8",
        )
        _maybe_plot(args, lambda: plots.write_svg(
            plots.bar_chart(
                [(str(c), n) for c, n in summary.histogram.items()],
                f"Citations per paper: {args.journal} ({args.year})",
                "citations", "papers",
            ),
            out / f"distribution_{args.journal}.svg",
        ))
        print(f"wrote distribution for {args.journal}")
        return EXIT_OK

    summaries = []
    for jid in sorted(resolved.corpus.journals):
        try:
            t = indicators.tally(resolved, jid, args.year, args.window)
            jif = indicators.jif_wos_derived(t)
            summaries.append(distributions.distribution(
                resolved, jid, args.year, args.window, jif
            ))
        except ComputationError:
            continue
    hist, share_ge_half = distributions.jcr_share_histogram(summaries)
    rows = ["share_bucket_pct,journal_count"]
    rows += [f"{bucket},{count}" for bucket, count in hist.items()]
    rows.append(f"share_ge_50_fraction,{share_ge_half:.6f}")
    _write_lines(out / "share_histogram.csv", rows)
    _maybe_plot(args, lambda: plots.write_svg(
        plots.bar_chart(
            [(str(b), n) for b, n in hist.items()],
            f"Journals by share of papers at/above their JIF ({args.year})",
            "share bucket (%)", "journals",
        ),
        out / "share_histogram.svg",
    ))
    print(f"wrote share histogram over {len(summaries)} journals")
    return EXIT_OK


def cmd_cohort(args: argparse.Namespace) -> int:
    resolved = _load_resolved(args)
    curve = distributions.cohort_curve(
        resolved, args.discipline, args.pub_year, args.horizon
    )
    out = Path(args.out)
    rows = ["age,citations,cumulative_fraction"]
    for age, (n, frac) in enumerate(
        zip(curve.per_year_citations, curve.cumulative_fraction)
    ):
        rows.append(f"{age},{n},{frac:.6f}")
    label = args.discipline.replace(" ", "_")
    _write_lines(out / f"cohort_{label}_{args.pub_year}.csv", rows)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"cohort_{label}_{args.pub_year}.json").write_text(
        json.dumps({
            "discipline": curve.label,
            "pub_year": curve.pub_year,
            "first_two_year_share": curve.first_two_year_share,
            "years_to_half": curve.years_to_half,
            "truncated": curve.truncated,
        }, indent=2) + "\n",
        encoding="utf-8",
    )
    ages = list(range(len(curve.cumulative_fraction)))
    _maybe_plot(args, lambda: plots.write_svg(
        plots.line_chart(
            [(args.discipline, ages, list(curve.cumulative_fraction))],
            f"Cumulative citation share, {args.discipline} {args.pub_year}",
            "years since publication", "cumulative fraction",
        ),
        out / f"cohort_{label}_{args.pub_year}.svg",
    ))
    if curve.truncated:
        print("warning: horizon ends before the citation tail (final < 1)")
    print(f"wrote cohort curve for {args.discipline} {args.pub_year}")
    return EXIT_OK


def cmd_inflate(args: argparse.Namespace) -> int:
    resolved = _load_resolved(args)
    years = [int(y) for y in args.years.split(",")]
    thresholds = [float(t) for t in args.jif_thresholds.split(",")]
    snapshots = {
        y: indicators.all_reports(resolved, y, args.window) for y in years
    }
    series = distributions.inflation_series(snapshots, thresholds)
    out = Path(args.out)
    header = "year,mean_jif,journal_count," + ",".join(
        f"above_{t:g}" for t in thresholds
    )
    rows = [header]
    for rec in series.years:
        cells = [str(rec.year), f"{rec.mean_jif:.6f}", str(rec.journal_count)]
        cells += [str(rec.count_above_threshold[t]) for t in thresholds]
        rows.append(",".join(cells))
    for (y1, y2), frac in series.pct_increased.items():
        rows.append(f"increased_{y1}_{y2},{frac:.6f},,")
    _write_lines(out / "inflation.csv", rows)
    _maybe_plot(args, lambda: plots.write_svg(
        plots.line_chart(
            [("mean JIF", [r.year for r in series.years],
              [r.mean_jif for r in series.years])],
            "Mean JIF by census year", "year", "mean JIF",
        ),
        out / "inflation.svg",
    ))
    print(f"wrote inflation series over {len(series.years)} years")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    if args.fixture:
        builder = FIXTURES.get(args.fixture)
        if builder is None:
            raise ValidationError(
                f"unknown fixture {args.fixture!r}; available: {sorted(FIXTURES)}"
            )
        corpus: Corpus = builder(args.out)
    elif args.scenario:
        spec = load_scenario(args.scenario)
        if args.seed is not None:
            spec = replace(spec, seed=args.seed)
        corpus = generate(spec, args.out)
    else:
        raise ValidationError("gen needs --scenario FILE or --fixture NAME")
    print(
        f"generated papers={corpus.n_papers} journals={corpus.n_journals} "
        f"references={corpus.n_references} -> {args.out}"
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, year: bool = True) -> None:
    p.add_argument("--in", dest="input", required=True, help="corpus directory")
    p.add_argument("--out", default=".", help="output directory")
    if year:
        p.add_argument("--year", type=int, required=True, help="census year")
        p.add_argument("--window", type=int, default=2, help="window years")
    p.add_argument(
        "--abbreviations", help="abbreviation table TSV overriding the default"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="citemetrics",
        description="Citation-graph analytics over JSONL corpora",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate a corpus and report citation classes")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--abbreviations")
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("report", help="indicator report for every journal")
    _add_common(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--decimals", type=int, choices=(1, 3), default=3)
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("detect", help="run all anomaly detectors")
    _add_common(p)
    p.add_argument("--thresholds", help="JSON file overriding detector thresholds")
    p.set_defaults(fn=cmd_detect)

    p = sub.add_parser("rank", help="network indicators (influence, prestige, snip)")
    _add_common(p)
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--max-iterations", type=int, default=10_000)
    p.set_defaults(fn=cmd_rank)

    p = sub.add_parser("net", help="export the journal citation matrix")
    _add_common(p)
    p.set_defaults(fn=cmd_net)

    p = sub.add_parser("dist", help="citation distribution per journal")
    _add_common(p)
    p.add_argument("--journal", help="one journal (omit for the share histogram)")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(fn=cmd_dist)

    p = sub.add_parser("cohort", help="citation ageing curve for a discipline")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", default=".")
    p.add_argument("--discipline", required=True)
    p.add_argument("--pub-year", type=int, required=True)
    p.add_argument("--horizon", type=int, default=30)
    p.add_argument("--plot", action="store_true")
    p.add_argument("--abbreviations")
    p.set_defaults(fn=cmd_cohort)

    p = sub.add_parser("inflate", help="indicator inflation across census years")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", default=".")
    p.add_argument("--years", required=True, help="comma-separated census years")
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--jif-thresholds", default="10", help="comma-separated thresholds")
    p.add_argument("--plot", action="store_true")
    p.add_argument("--abbreviations")
    p.set_defaults(fn=cmd_inflate)

    p = sub.add_parser("gen", help="generate a synthetic corpus")
    p.add_argument("--scenario", help="scenario.json file")
    p.add_argument("--fixture", help=f"built-in fixture: {sorted(FIXTURES)}")
    p.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except IngestError as exc:
        out = Path(getattr(args, "out", None) or ".")
        path = _write_error_file(out, exc)
        print(f"error: {exc} (details in {path})", file=sys.stderr)
        return EXIT_VALIDATION
    except NonConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CitemetricsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
