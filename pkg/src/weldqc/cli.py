"""Command-line surface tying the analytics modules together.

Subcommands: summarize, interval, operators, complexity, forecast, rework.
Options resolve in three layers: built-in defaults, then a JSON config file
(--config), then explicit flags.  Every stochastic command runs under an
explicit or defaulted seed that is echoed into each output file.

Exit codes: 0 success, 2 input/schema error, 3 configuration error,
4 numeric/domain error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, ab, complexity, forecast, mcmc, render, report, rework
from .bayes import BetaParams, CountData, credible_interval, posterior
from .bayes import agresti_coull_interval, wald_interval, wilson_interval
from .errors import ConfigError, SchemaError, WeldQCError
from .ingest import (
    DEFAULT_GROUP_BY,
    KEY_FIELDS,
    TableSchema,
    clean,
    filter_records,
    filter_summaries,
    parse_records,
    summarize,
)

OUT_DIR_ENV = "WELDQC_OUT"

_PERCENT_HEADER = [f"{round(level * 100)}%" for level in np.arange(0.0, 1.05, 0.10)]


def _resolve(args: argparse.Namespace, defaults: dict, file_config: dict) -> dict:
    """defaults <- config file <- explicit CLI flags."""
    unknown = set(file_config) - set(defaults)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    resolved = dict(defaults)
    resolved.update(file_config)
    for key in defaults:
        value = getattr(args, key, None)
        if value is not None:
            resolved[key] = value
    return resolved


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            loaded = json.load(handle)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}")
    if not isinstance(loaded, dict):
        raise ConfigError("config file must hold a JSON object")
    return loaded


def _out_dir(resolved: dict) -> Path:
    return Path(resolved.get("out_dir") or os.environ.get(OUT_DIR_ENV) or ".")


def _delimiter(resolved: dict) -> str:
    name = resolved.get("delimiter", ",")
    return "\t" if name in ("tab", "\\t", "\t") else name


def _prior(resolved: dict) -> BetaParams:
    a, b = resolved["prior"]
    return BetaParams(float(a), float(b))


def _parse_where(pairs: list[str] | None) -> dict[str, str]:
    criteria = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ConfigError(f"--where expects field=value, got {pair!r}")
        field, value = pair.split("=", 1)
        criteria[field.strip()] = value.strip()
    return criteria


def _load_summaries(resolved: dict) -> tuple[list, dict]:
    parsed = parse_records(resolved["input"], TableSchema(_delimiter(resolved)))
    records, rejections = clean(parsed.records)
    where = _parse_where(resolved.get("where"))
    if where:
        records = filter_records(records, **where)
    summaries = summarize(records, tuple(resolved["group_by"]))
    info = {
        "rows_parsed": len(parsed.records),
        "parse_issues": [
            {"line": issue.line, "message": issue.message} for issue in parsed.issues
        ],
        "rejections": rejections.as_dict(),
        "rows_kept": len(records),
    }
    return summaries, info


# ---------------------------------------------------------------- summarize


def cmd_summarize(args: argparse.Namespace, file_config: dict) -> int:
    defaults = {
        "input": None,
        "delimiter": ",",
        "group_by": list(DEFAULT_GROUP_BY),
        "where": [],
        "min_inspected": 0,
        "out_dir": None,
    }
    resolved = _resolve(args, defaults, file_config)
    if not resolved["input"]:
        raise ConfigError("summarize requires --input")
    summaries, ingest_info = _load_summaries(resolved)
    summaries = filter_summaries(summaries, min_inspected=int(resolved["min_inspected"]))

    out = _out_dir(resolved)
    info = report.meta("summarize", resolved, seed=None)
    key_fields = [f for f in KEY_FIELDS if f in resolved["group_by"]]
    rows = [
        [getattr(s.key, f) for f in key_fields]
        + [s.total_welds, s.inspected_welds, s.repaired_welds]
        for s in summaries
    ]
    report.write_table(
        out / "summary.csv",
        key_fields + ["total_welds", "inspected_welds", "repaired_welds"],
        rows,
        info,
    )
    report.write_json(
        out / "summary.json",
        {
            "groups": [
                {
                    "key": s.key.as_dict(),
                    "total_welds": s.total_welds,
                    "inspected_welds": s.inspected_welds,
                    "repaired_welds": s.repaired_welds,
                }
                for s in summaries
            ]
        },
        info,
    )
    report.write_json(out / "rejections.json", ingest_info, info)
    print(f"wrote {len(summaries)} group summaries to {out}")
    return 0


# ------------------------------------------------------------------ interval


def cmd_interval(args: argparse.Namespace, file_config: dict) -> int:
    defaults = {
        "failed": None,
        "inspected": None,
        "alpha": 0.05,
        "prior": [0.5, 0.5],
        "classical": False,
        "out_dir": None,
    }
    resolved = _resolve(args, defaults, file_config)
    if resolved["failed"] is None or resolved["inspected"] is None:
        raise ConfigError("interval requires --failed and --inspected")
    counts = CountData(int(resolved["failed"]), int(resolved["inspected"]))
    prior = _prior(resolved)
    alpha = float(resolved["alpha"])
    params = posterior(counts, prior)
    interval = credible_interval(params, alpha)

    payload = {
        "counts": {"failed": counts.failed, "inspected": counts.inspected},
        "prior": {"a": prior.a, "b": prior.b},
        "posterior": {"a": params.a, "b": params.b},
        "credible_interval": {
            "lower": interval.lower,
            "upper": interval.upper,
            "level": interval.level,
        },
    }
    if resolved["classical"]:
        classical = {}
        for name, func in (
            ("wald", wald_interval),
            ("wilson", wilson_interval),
            ("agresti_coull", agresti_coull_interval),
        ):
            ci = func(counts, alpha)
            classical[name] = {"lower": ci.lower, "upper": ci.upper}
        payload["classical_intervals"] = classical

    out = _out_dir(resolved)
    info = report.meta("interval", resolved, seed=None)
    report.write_json(out / "interval.json", payload, info)
    print(
        f"credible interval [{report.fmt(interval.lower)}, {report.fmt(interval.upper)}] "
        f"at level {report.fmt(interval.level)}"
    )
    return 0


# ----------------------------------------------------------------- operators


def cmd_operators(args: argparse.Namespace, file_config: dict) -> int:
    defaults = {
        "input": None,
        "delimiter": ",",
        "where": [],
        "nps": None,
        "schedule": None,
        "material": None,
        "weld_kind": None,
        "min_inspected": 100,
        "prior": [0.5, 0.5],
        "alpha": 0.05,
        "iterations": 10_000,
        "burn_in": 200,
        "proposal_sd": 0.05,
        "resamples": ab.DEFAULT_RESAMPLES,
        "seed": 0,
        "out_dir": None,
        "group_by": list(DEFAULT_GROUP_BY) + ["operator_id"],
    }
    resolved = _resolve(args, defaults, file_config)
    if not resolved["input"]:
        raise ConfigError("operators requires --input")
    summaries, _ = _load_summaries(resolved)
    key_filter = {
        f: str(resolved[f])
        for f in ("nps", "schedule", "material", "weld_kind")
        if resolved[f] is not None
    }
    selected = filter_summaries(
        summaries, key_filter=key_filter, min_inspected=int(resolved["min_inspected"])
    )
    if not selected:
        raise ConfigError("no operator matches the key filter and threshold")

    prior = _prior(resolved)
    seed = int(resolved["seed"])
    chains = []
    for index, summary in enumerate(selected):
        counts = CountData(summary.repaired_welds, summary.inspected_welds)
        chain_seed = int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])
        config = mcmc.ChainConfig(
            iterations=int(resolved["iterations"]),
            burn_in=int(resolved["burn_in"]),
            proposal_sd=float(resolved["proposal_sd"]),
            seed=chain_seed,
        )
        chains.append((summary, mcmc.sample_posterior(counts, prior, config)))

    # ranked worst-first: descending median fraction nonconforming
    ranked = sorted(
        (
            (summary, chain, mcmc.empirical_five_number(chain))
            for summary, chain in chains
        ),
        key=lambda item: -item[2].median,
    )
    matrix = ab.pairwise_matrix(
        [chain for _, chain, _ in ranked], n=int(resolved["resamples"]), seed=seed
    )

    out = _out_dir(resolved)
    info = report.meta("operators", resolved, seed=seed)
    ids = [summary.key.operator_id for summary, _, _ in ranked]
    report.write_table(
        out / "operators.csv",
        [
            "operator_id",
            "inspected_welds",
            "repaired_welds",
            "whisker_low",
            "q1",
            "median",
            "q3",
            "whisker_high",
        ],
        [
            [
                summary.key.operator_id,
                summary.inspected_welds,
                summary.repaired_welds,
                five.whisker_low,
                five.q1,
                five.median,
                five.q3,
                five.whisker_high,
            ]
            for summary, _, five in ranked
        ],
        info,
    )
    report.write_table(
        out / "ab_matrix.csv",
        ["operator_id"] + ids,
        [[ids[i]] + [matrix[i, j] for j in range(len(ids))] for i in range(len(ids))],
        info,
    )
    report.write_svg(
        out / "operators_boxplot.svg",
        render.boxplot_svg(ids, [five for _, _, five in ranked]),
        info,
    )
    print(f"ranked {len(ranked)} operators; outputs in {out}")
    return 0


# ---------------------------------------------------------------- complexity


def _counts_from_file(path: str, delimiter: str) -> list[dict]:
    """Counts table: label, inspected, repaired[, total] with a header row."""
    import csv

    rows = []
    try:
        handle = open(path, "r", encoding="utf-8", newline="")
    except FileNotFoundError:
        raise SchemaError(f"counts file not found: {path}")
    with handle:
        reader = csv.DictReader(handle, delimiter=delimiter)
        required = {"label", "inspected", "repaired"}
        if not reader.fieldnames or not required.issubset(set(reader.fieldnames)):
            raise SchemaError(
                "counts file needs columns: label, inspected, repaired[, total]"
            )
        for record in reader:
            rows.append(
                {
                    "label": record["label"].strip(),
                    "inspected": int(record["inspected"]),
                    "repaired": int(record["repaired"]),
                    "total": int(record["total"]) if record.get("total") else None,
                }
            )
    if not rows:
        raise SchemaError("counts file holds no rows")
    return rows


def cmd_complexity(args: argparse.Namespace, file_config: dict) -> int:
    defaults = {
        "input": None,
        "counts": None,
        "delimiter": ",",
        "where": [],
        "group_by": list(DEFAULT_GROUP_BY),
        "top": None,
        "clusters": None,
        "cluster_on": "profile",
        "prior": [0.5, 0.5],
        "out_dir": None,
    }
    resolved = _resolve(args, defaults, file_config)
    if resolved["cluster_on"] not in ("profile", "hellinger"):
        raise ConfigError("cluster_on must be 'profile' or 'hellinger'")
    if resolved["counts"]:
        rows = _counts_from_file(resolved["counts"], _delimiter(resolved))
    elif resolved["input"]:
        summaries, _ = _load_summaries(resolved)
        rows = [
            {
                "label": "(" + ", ".join(s.key.as_dict().values()) + ")",
                "inspected": s.inspected_welds,
                "repaired": s.repaired_welds,
                "total": s.total_welds,
            }
            for s in summaries
        ]
    else:
        raise ConfigError("complexity requires --input or --counts")

    totals_known = all(r["total"] is not None for r in rows)
    rows.sort(key=lambda r: (-(r["total"] if totals_known else r["inspected"]), r["label"]))
    if resolved["top"]:
        rows = rows[: int(resolved["top"])]

    prior = _prior(resolved)
    posteriors = [
        posterior(CountData(r["repaired"], r["inspected"]), prior) for r in rows
    ]
    labels = [r["label"] for r in rows]
    scores = complexity.complexity_scores(posteriors, labels)
    matrix = complexity.distance_matrix(posteriors, labels)
    cluster_input = (
        complexity.profile_distance_matrix(matrix)
        if resolved["cluster_on"] == "profile"
        else matrix
    )
    tree = complexity.agglomerative_cluster(cluster_input)
    k = int(resolved["clusters"]) if resolved["clusters"] else min(7, len(rows))
    assignments = complexity.cut(tree, k)
    totals = [r["total"] for r in rows] if totals_known else None
    cluster_labels = complexity.label_clusters(assignments, scores, totals)

    out = _out_dir(resolved)
    info = report.meta("complexity", resolved, seed=None)
    letter_of = {}
    for label in cluster_labels:
        for member in label.members:
            letter_of[member] = label.letter
    report.write_table(
        out / "complexity_scores.csv",
        ["label", "inspected", "repaired", "median", "raw_score", "scaled_score", "cluster"],
        [
            [
                rows[i]["label"],
                rows[i]["inspected"],
                rows[i]["repaired"],
                scores[i].median,
                scores[i].raw,
                scores[i].scaled,
                letter_of[i],
            ]
            for i in range(len(rows))
        ],
        info,
    )
    report.write_table(
        out / "hellinger_matrix.csv",
        ["label"] + labels,
        [[labels[i]] + list(matrix.values[i]) for i in range(len(labels))],
        info,
    )
    report.write_json(out / "dendrogram.json", complexity.tree_to_dict(tree), info)
    report.write_table(
        out / "clusters.csv",
        ["cluster", "members", "mean_scaled_score", "total_welds", "business_share"],
        [
            [
                label.letter,
                "|".join(labels[i] for i in label.members),
                label.mean_score,
                label.total_welds if label.total_welds is not None else "",
                label.share if label.share is not None else "",
            ]
            for label in cluster_labels
        ],
        info,
    )
    report.write_svg(out / "dendrogram.svg", render.dendrogram_svg(tree), info)
    print(f"scored {len(rows)} product types into {k} clusters; outputs in {out}")
    return 0


# ------------------------------------------------------------------ forecast


def _load_design(path: str, prior: BetaParams) -> forecast.ProjectDesign:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except FileNotFoundError:
        raise SchemaError(f"design file not found: {path}")
    except json.JSONDecodeError as exc:
        raise SchemaError(f"design file is not valid JSON: {exc}")
    if "welds" not in document or not isinstance(document["welds"], list):
        raise SchemaError("design file needs a 'welds' list")
    type_counts: dict[str, CountData] = {}
    for key, spec in (document.get("types") or {}).items():
        type_counts[key] = CountData(int(spec["failed"]), int(spec["inspected"]))
    entries = []
    posteriors = {}
    for weld in document["welds"]:
        key = str(weld.get("key", f"type-{len(entries) + 1}"))
        count = int(weld.get("count", 1))
        if "failed" in weld and "inspected" in weld:
            counts = CountData(int(weld["failed"]), int(weld["inspected"]))
        elif key in type_counts:
            counts = type_counts[key]
        else:
            raise ConfigError(f"design references unresolved weld type {key!r}")
        entries.append((key, count))
        posteriors[key] = posterior(counts, prior)
    return forecast.ProjectDesign.from_type_counts(entries, posteriors)


def cmd_forecast(args: argparse.Namespace, file_config: dict) -> int:
    defaults = {
        "design": None,
        "iterations": forecast.DEFAULT_ITERATIONS,
        "seed": 0,
        "mode": "average",
        "prior": [0.5, 0.5],
        "keep_samples": True,
        "out_dir": None,
    }
    resolved = _resolve(args, defaults, file_config)
    if not resolved["design"]:
        raise ConfigError("forecast requires --design")
    design = _load_design(resolved["design"], _prior(resolved))
    result = forecast.simulate_project(
        design,
        iterations=int(resolved["iterations"]),
        seed=int(resolved["seed"]),
        mode=resolved["mode"],
    )
    table = result.quantiles()

    out = _out_dir(resolved)
    info = report.meta("forecast", resolved, seed=int(resolved["seed"]))
    report.write_table(
        out / "forecast_quantiles.csv",
        _PERCENT_HEADER,
        [[value for _, value in table]],
        info,
    )
    payload = {
        "n_welds": design.n_welds,
        "n_types": design.n_types,
        "iterations": result.iterations,
        "mode": result.mode,
        "quantiles": {f"{round(level * 100)}%": value for level, value in table},
    }
    if resolved["keep_samples"]:
        payload["samples"] = [float(v) for v in result.samples]
    report.write_json(out / "forecast.json", payload, info)
    report.write_svg(
        out / "forecast_histogram.svg", render.histogram_svg(result.samples), info
    )
    print(
        f"project fraction nonconforming median {report.fmt(table[5][1])} "
        f"over {result.iterations} iterations; outputs in {out}"
    )
    return 0


# -------------------------------------------------------------------- rework


def _load_specs(path: str, prior: BetaParams) -> list[rework.ProductSpec]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except FileNotFoundError:
        raise SchemaError(f"specs file not found: {path}")
    except json.JSONDecodeError as exc:
        raise SchemaError(f"specs file is not valid JSON: {exc}")
    products = document.get("products")
    if not isinstance(products, list) or not products:
        raise SchemaError("specs file needs a non-empty 'products' list")
    specs = []
    for index, product in enumerate(products):
        try:
            counts = CountData(int(product["failed"]), int(product["inspected"]))
            specs.append(
                rework.ProductSpec(
                    posterior=posterior(counts, prior),
                    estimated_hours=float(product["estimated_hours"]),
                    efficiency=float(product.get("efficiency", rework.DEFAULT_EFFICIENCY)),
                    key=product.get("key"),
                )
            )
        except KeyError as exc:
            raise SchemaError(f"product #{index + 1} is missing field {exc}")
    return specs


def _load_actuals(path: str | None) -> tuple[list[float], list[int]]:
    if not path:
        return [], []
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except FileNotFoundError:
        raise SchemaError(f"actuals file not found: {path}")
    except json.JSONDecodeError as exc:
        raise SchemaError(f"actuals file is not valid JSON: {exc}")
    hours = [float(h) for h in document.get("hours", [])]
    results = [int(r) for r in document.get("results", [])]
    return hours, results


def cmd_rework(args: argparse.Namespace, file_config: dict) -> int:
    defaults = {
        "specs": None,
        "actuals": None,
        "iterations": rework.DEFAULT_ITERATIONS,
        "seed": 0,
        "prior": [0.5, 0.5],
        "update_posteriors": False,
        "out_dir": None,
    }
    resolved = _resolve(args, defaults, file_config)
    if not resolved["specs"]:
        raise ConfigError("rework requires --specs")
    specs = _load_specs(resolved["specs"], _prior(resolved))
    hours, results = _load_actuals(resolved["actuals"])
    seed = int(resolved["seed"])
    iterations = int(resolved["iterations"])

    planning_seed = int(np.random.SeedSequence([seed, 0]).generate_state(1, np.uint64)[0])
    estimate = rework.simulate_total_rework(specs, iterations, planning_seed)
    limits = rework.control_limits(estimate)
    series = rework.control_chart(
        specs,
        hours,
        results,
        iterations=iterations,
        seed=seed,
        limits=limits,
        update_posteriors=bool(resolved["update_posteriors"]),
    )

    out = _out_dir(resolved)
    info = report.meta("rework", resolved, seed=seed)
    report.write_table(
        out / "rework_quantiles.csv",
        _PERCENT_HEADER,
        [[value for _, value in estimate.quantiles()]],
        info,
    )
    report.write_json(
        out / "rework.json",
        {
            "mean": estimate.mean,
            "iterations": estimate.iterations,
            "quantiles": {f"{round(q * 100)}%": v for q, v in estimate.quantiles()},
            "limits": {"cl": limits.cl, "ucl": limits.ucl, "lcl": limits.lcl},
        },
        info,
    )
    report.write_table(
        out / "control_chart.csv",
        ["state", "median", "band_low", "band_high", "accrued_actual_hours", "flag"],
        [
            [p.state, p.median, p.band_low, p.band_high, p.accrued_actual_hours, p.flag]
            for p in series.points
        ],
        info,
    )
    report.write_json(
        out / "control_chart.json",
        {
            "limits": {"cl": limits.cl, "ucl": limits.ucl, "lcl": limits.lcl},
            "points": [
                {
                    "state": p.state,
                    "median": p.median,
                    "band_low": p.band_low,
                    "band_high": p.band_high,
                    "accrued_actual_hours": p.accrued_actual_hours,
                    "flag": p.flag,
                }
                for p in series.points
            ],
        },
        info,
    )
    report.write_svg(out / "control_chart.svg", render.control_chart_svg(series), info)
    print(
        f"rework estimate median {report.fmt(limits.cl)} h "
        f"(LCL {report.fmt(limits.lcl)}, UCL {report.fmt(limits.ucl)}); outputs in {out}"
    )
    return 0


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weldqc",
        description="Bayesian quality analytics for pass/fail inspection data",
    )
    parser.add_argument("--version", action="version", version=f"weldqc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON config file; flags override its values")
        p.add_argument("--out-dir", dest="out_dir", help=f"output directory (default ${OUT_DIR_ENV} or .)")

    p = sub.add_parser("summarize", help="parse, clean and group raw inspection exports")
    common(p)
    p.add_argument("--input")
    p.add_argument("--delimiter", choices=[",", "tab", ";"])
    p.add_argument("--group-by", dest="group_by", type=lambda s: s.split(","))
    p.add_argument("--where", action="append", metavar="FIELD=VALUE")
    p.add_argument("--min-inspected", dest="min_inspected", type=int)
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("interval", help="credible interval for failure counts")
    common(p)
    p.add_argument("--failed", type=int)
    p.add_argument("--inspected", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--prior", nargs=2, type=float, metavar=("A", "B"))
    p.add_argument("--classical", action="store_true", default=None,
                   help="also report Wald, Wilson and Agresti-Coull intervals")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("operators", help="rank operators and compare them pairwise")
    common(p)
    p.add_argument("--input")
    p.add_argument("--delimiter", choices=[",", "tab", ";"])
    p.add_argument("--where", action="append", metavar="FIELD=VALUE")
    p.add_argument("--nps")
    p.add_argument("--schedule")
    p.add_argument("--material")
    p.add_argument("--weld-kind", dest="weld_kind")
    p.add_argument("--min-inspected", dest="min_inspected", type=int)
    p.add_argument("--prior", nargs=2, type=float, metavar=("A", "B"))
    p.add_argument("--alpha", type=float)
    p.add_argument("--iterations", type=int)
    p.add_argument("--burn-in", dest="burn_in", type=int)
    p.add_argument("--proposal-sd", dest="proposal_sd", type=float)
    p.add_argument("--resamples", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_operators)

    p = sub.add_parser("complexity", help="score and cluster product complexity")
    common(p)
    p.add_argument("--input", help="raw inspection export")
    p.add_argument("--counts", help="counts table: label,inspected,repaired[,total]")
    p.add_argument("--delimiter", choices=[",", "tab", ";"])
    p.add_argument("--where", action="append", metavar="FIELD=VALUE")
    p.add_argument("--group-by", dest="group_by", type=lambda s: s.split(","))
    p.add_argument("--top", type=int, help="keep the N largest product types")
    p.add_argument("--clusters", type=int, help="number of clusters (default min(7, N))")
    p.add_argument("--cluster-on", dest="cluster_on", choices=["profile", "hellinger"])
    p.add_argument("--prior", nargs=2, type=float, metavar=("A", "B"))
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("forecast", help="Monte Carlo project nonconformance forecast")
    common(p)
    p.add_argument("--design", help="JSON project design file")
    p.add_argument("--iterations", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--mode", choices=["average", "mixture"])
    p.add_argument("--prior", nargs=2, type=float, metavar=("A", "B"))
    p.add_argument("--no-samples", dest="keep_samples", action="store_false", default=None)
    p.set_defaults(func=cmd_forecast)

    p = sub.add_parser("rework", help="rework man-hour estimate and control chart")
    common(p)
    p.add_argument("--specs", help="JSON product specs file")
    p.add_argument("--actuals", help="JSON actual hours/results file")
    p.add_argument("--iterations", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--prior", nargs=2, type=float, metavar=("A", "B"))
    p.add_argument("--update-posteriors", dest="update_posteriors",
                   action="store_true", default=None,
                   help="fold observed project outcomes into remaining posteriors")
    p.set_defaults(func=cmd_rework)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        file_config = _load_config(getattr(args, "config", None))
        return args.func(args, file_config)
    except WeldQCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return getattr(exc, "exit_code", 4)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
