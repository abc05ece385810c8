# ruff: noqa: B008
from __future__ import annotations

import os
from collections.abc import Callable
from functools import partial
from pathlib import Path

import typer
from pydantic import ValidationError

from ..clustering.confidence import rank_members
from ..clustering.labels import ClusteringResult
from ..clustering.pipeline import BorderPeelingClusterer
from ..config.loader import compute_param_hash, load_and_document, load_generator_spec, load_params
from ..config.params import BorderPeelingParams, GeneratorSpec, RunConfig, SweepConfig
from ..config.runtime import RuntimeSettings
from ..dataset.generators import generate, preset
from ..dataset.io import load_csv
from ..dataset.points import PointSet
from ..errors import ClassifiedError, ConfigurationError, DataQualityError, exit_code_for
from ..export.results import (
    LABELS_FILE,
    RESULT_FILE,
    TRACE_FILE,
    build_result_document,
    read_result,
    read_trace,
    write_labels,
    write_result,
    write_table,
    write_trace,
)
from ..export.svg import cluster_svg, line_svg, snapshot_masks, snapshot_svg, write_svg
from ..logging_utils import configure_logging, get_logger, run_context
from ..metrics.external import score_run
from ..peeling.association import estimate_lambda
from ..schemas.documents import ResultDocument
from ..validation.lemma import DEFAULT_TOLERANCE, validate_lemma
from ..validation.sweep import SweepReport, resolve_lambda, run_sweep

app = typer.Typer(help="Border-peeling clustering", no_args_is_help=True)
config_app = typer.Typer(help="Configuration utilities")
logger = get_logger("bp.cli")


@app.callback()
def _configure(
    log_level: str = typer.Option(
        "WARNING", "--log-level", envvar="BP_LOG_LEVEL", help="Log level for stderr output"
    ),
    log_file: Path | None = typer.Option(None, "--log-file", help="Optional JSON log file"),
) -> None:
    configure_logging(log_level, log_file=log_file)


def _fail(exc: ClassifiedError, event: str) -> typer.Exit:
    logger.error(event, category=exc.category.value, error=exc.message, context=exc.context)
    typer.echo(f"Error: {exc.message}", err=True)
    return typer.Exit(code=exit_code_for(exc))


def _guarded(event: str, action: Callable[[], None]) -> None:
    try:
        action()
    except ClassifiedError as exc:
        raise _fail(exc, event) from exc
    except ValidationError as exc:
        raise _fail(ConfigurationError(str(exc)), event) from exc


def _parse_floats(raw: str, name: str) -> list[float]:
    items = [item.strip() for item in raw.split(",") if item.strip()]
    try:
        return [float(item) for item in items]
    except ValueError as exc:
        raise ConfigurationError(f"{name} must be a comma separated list of numbers") from exc


def _resolve_params(
    params_path: Path | None,
    *,
    k: int | None = None,
    c: float | None = None,
    peel_fraction: float | None = None,
    max_iters: int | None = None,
    termination_sensitivity: float | None = None,
    min_cluster_size: int | None = None,
    backend: str | None = None,
) -> tuple[BorderPeelingParams, str]:
    params, _ = load_params(params_path, env=os.environ)
    payload = params.model_dump()
    peeling_updates = {
        "k": k,
        "c": c,
        "peel_fraction": peel_fraction,
        "max_iterations": max_iters,
        "termination_sensitivity": termination_sensitivity,
    }
    payload["peeling"].update({key: v for key, v in peeling_updates.items() if v is not None})
    if min_cluster_size is not None:
        payload["clustering"]["min_cluster_size"] = min_cluster_size
    if backend is not None:
        payload["neighbors"]["backend"] = backend
    resolved = BorderPeelingParams.model_validate(payload)
    return resolved, compute_param_hash(resolved)


def _source_spec(
    input_path: Path | None,
    generate_name: str | None,
    generator_config: Path | None,
    params: BorderPeelingParams,
    seed: int | None,
) -> GeneratorSpec | None:
    chosen = [item for item in (input_path, generate_name, generator_config) if item is not None]
    if len(chosen) > 1:
        raise ConfigurationError("use only one of --input, --generate or --generator-config")
    if input_path is not None:
        return None
    if generate_name is not None:
        return preset(generate_name, seed or 0)
    spec = load_generator_spec(generator_config) if generator_config else params.generator
    if spec is None:
        raise ConfigurationError("provide --input, --generate or --generator-config")
    return spec.with_seed(seed) if seed is not None else spec


def _load_points(config: RunConfig) -> tuple[PointSet, str]:
    if config.input_path is not None:
        points = load_csv(
            config.input_path, has_header=config.has_header, label_column=config.label_column
        )
        return points, str(config.input_path)
    assert config.generator is not None
    spec = config.generator
    return generate(spec), f"{spec.kind}:seed={spec.seed}"


def _apply_lambda_offset(
    params: BorderPeelingParams, points: PointSet, offset: float, workers: int
) -> BorderPeelingParams:
    if offset == 0:
        return params
    peel = params.peeling
    base = peel.lambda_
    if base is None:
        base = estimate_lambda(points, peel.k, params.neighbors, workers=workers)
    value = resolve_lambda(base, offset, relative=False)
    return params.model_copy(update={"peeling": peel.with_lambda(value)})


def run_cluster(config: RunConfig) -> tuple[ClusteringResult, ResultDocument]:
    """Cluster the configured source and write every artifact into ``output_dir``."""

    points, source = _load_points(config)
    workers = RuntimeSettings.from_environment().cap_workers()
    out = config.output_dir
    params = _apply_lambda_offset(config.params, points, config.lambda_offset, workers)
    param_hash = compute_param_hash(params)
    with run_context(param_hash[:12]):
        result = BorderPeelingClusterer(params, workers=workers).fit(points)
        score = score_run(result, points.truth_labels()) if points.has_labels else None
        document = build_result_document(
            result, points, params, param_hash=param_hash, source=source, score=score
        )
        write_labels(result.labels, out / LABELS_FILE)
        write_result(document, out / RESULT_FILE)
        write_trace(result.trace, out / TRACE_FILE)
        if config.plot:
            write_svg(cluster_svg(points, result.labels.labels), out / "clusters.svg")
            for iteration in range(1, min(config.snapshots, result.trace.n_iterations) + 1):
                active, border = snapshot_masks(result.state.peeled_at, iteration)
                write_svg(
                    snapshot_svg(points, active, border, iteration=iteration),
                    out / f"peel_iter_{iteration:02d}.svg",
                )
    return result, document


@app.command("cluster")
def cli_cluster(
    input_path: Path | None = typer.Option(None, "--input", help="CSV of points, one per row"),
    generate_name: str | None = typer.Option(
        None, "--generate", help="Generator preset (gaussian2, gaussian2-adjacent, gaussian3)"
    ),
    generator_config: Path | None = typer.Option(
        None, "--generator-config", help="JSON/YAML generator spec"
    ),
    header: bool = typer.Option(False, "--header/--no-header", help="CSV has a header row"),
    label_column: int | None = typer.Option(None, "--label-column", help="Ground-truth column"),
    params_path: Path | None = typer.Option(None, "--params", help="Parameter YAML file"),
    k: int | None = typer.Option(None, "--k", help="Neighbour count"),
    c: float | None = typer.Option(None, "--c", help="Threshold strictness constant"),
    peel_fraction: float | None = typer.Option(None, "--peel-fraction"),
    lambda_offset: float = typer.Option(0.0, "--lambda-offset", help="Added to estimated lambda"),
    max_iters: int | None = typer.Option(None, "--max-iters"),
    min_cluster_size: int | None = typer.Option(None, "--min-cluster-size"),
    termination_sensitivity: float | None = typer.Option(None, "--termination-sensitivity"),
    backend: str | None = typer.Option(None, "--backend", help="auto, kdtree or brute"),
    seed: int | None = typer.Option(None, "--seed", help="Generator seed"),
    out: Path = typer.Option(Path("run"), "--out", help="Output directory"),
    plot: bool = typer.Option(False, "--plot", help="Write SVG plots"),
    snapshots: int = typer.Option(3, "--snapshots", help="Peel snapshots written with --plot"),
) -> None:
    """Cluster a dataset and write labels.csv, result.json and trace.json."""

    def action() -> None:
        params, _ = _resolve_params(
            params_path,
            k=k,
            c=c,
            peel_fraction=peel_fraction,
            max_iters=max_iters,
            termination_sensitivity=termination_sensitivity,
            min_cluster_size=min_cluster_size,
            backend=backend,
        )
        config = RunConfig(
            input_path=input_path,
            has_header=header,
            label_column=label_column,
            generator=_source_spec(input_path, generate_name, generator_config, params, seed),
            params=params,
            lambda_offset=lambda_offset,
            output_dir=out,
            plot=plot,
            snapshots=snapshots,
        )
        result, document = run_cluster(config)
        typer.echo(
            f"{result.n_clusters} clusters, {result.n_noise} noise points, "
            f"{result.trace.n_iterations} iterations"
        )
        if document.score is not None:
            typer.echo(f"ARI={document.score.ari:.4f} AMI={document.score.ami:.4f}")
        typer.echo(f"Wrote {out / LABELS_FILE} and {out / RESULT_FILE}")

    _guarded("cluster_failed", action)


@app.command("validate-lemma")
def cli_validate_lemma(
    n: int = typer.Option(50, "--n", help="Points per trial"),
    trials: int = typer.Option(10_000, "--trials"),
    bins: int = typer.Option(21, "--bins"),
    seed: int = typer.Option(0, "--seed"),
    tolerance: float = typer.Option(DEFAULT_TOLERANCE, "--tolerance"),
    out: Path = typer.Option(Path("lemma"), "--out", help="Output directory"),
    plot: bool = typer.Option(False, "--plot"),
    strict: bool = typer.Option(False, "--strict", help="Exit 1 when a bin is out of tolerance"),
) -> None:
    """Compare sampled first-iteration influence on [-1, 1] with the closed form."""

    def action() -> None:
        report = validate_lemma(n=n, trials=trials, bins=bins, seed=seed, tolerance=tolerance)
        write_table(report.table, out / "lemma.csv", event="lemma_table_written")
        if plot:
            table = report.table
            write_svg(
                line_svg(
                    {
                        "empirical": (table["bin_center"], table["empirical"]),
                        "closed form": (table["bin_center"], table["analytic_bin"]),
                    },
                    title=f"E[b | x], n={n}, trials={trials}",
                    x_label="x",
                    y_label="b",
                ),
                out / "lemma.svg",
            )
        typer.echo(report.table.to_string(index=False, float_format=lambda v: f"{v:.6f}"))
        verdict = {True: "PASS", False: "FAIL", None: "no verdict (too few trials)"}[report.passed]
        typer.echo(f"max |error| = {report.max_abs_error:.6f} (tolerance {tolerance}): {verdict}")
        if strict and report.passed is False:
            raise typer.Exit(code=1)

    _guarded("validate_lemma_failed", action)


def _sample(spec: GeneratorSpec, seed: int) -> PointSet:
    return generate(spec.with_seed(seed))


def run_sweep_command(config: RunConfig, sweep: SweepConfig) -> SweepReport:
    """Run the sweep grid on the configured source and write ``sweep.csv``.

    Generated sources are resampled per repeat; CSV sources are reused as is.
    """

    spec = config.generator
    data: PointSet | Callable[[int], PointSet]
    if spec is None:
        data, _ = _load_points(config)
        if not data.has_labels:
            raise DataQualityError("sweep requires ground truth labels (use --label-column)")
    else:
        data = partial(_sample, spec)

    cells = len(sweep.lambda_offsets) * len(sweep.peel_fractions) * sweep.repeats
    workers = RuntimeSettings.from_environment().cap_workers(cells)
    base_seed = spec.seed if spec is not None else 0
    report = run_sweep(data, config.params, sweep, seed=base_seed, workers=workers)
    write_table(report.table, config.output_dir / "sweep.csv", event="sweep_table_written")
    if config.plot:
        series = {
            f"fraction {fraction:g}": (group["lambda_offset"], group["ari_mean"])
            for fraction, group in report.table.groupby("peel_fraction", sort=True)
        }
        write_svg(
            line_svg(series, title="ARI by lambda offset", x_label="offset", y_label="ARI"),
            config.output_dir / "sweep_ari.svg",
        )
    return report


@app.command("sweep")
def cli_sweep(
    input_path: Path | None = typer.Option(None, "--input"),
    generate_name: str | None = typer.Option(None, "--generate"),
    generator_config: Path | None = typer.Option(None, "--generator-config"),
    header: bool = typer.Option(False, "--header/--no-header"),
    label_column: int | None = typer.Option(None, "--label-column"),
    params_path: Path | None = typer.Option(None, "--params"),
    k: int | None = typer.Option(None, "--k"),
    c: float | None = typer.Option(None, "--c"),
    max_iters: int | None = typer.Option(None, "--max-iters"),
    min_cluster_size: int | None = typer.Option(None, "--min-cluster-size"),
    termination_sensitivity: float | None = typer.Option(None, "--termination-sensitivity"),
    backend: str | None = typer.Option(None, "--backend"),
    lambda_offsets: str = typer.Option(..., "--lambda-offsets", help='e.g. "-2,0,2"'),
    peel_fractions: str = typer.Option(..., "--peel-fractions", help='e.g. "0.06,0.1,0.14"'),
    repeats: int = typer.Option(1, "--repeats"),
    relative_offsets: bool = typer.Option(
        False, "--relative-offsets", help="Offset o scales lambda by (1 + o/10)"
    ),
    seed: int | None = typer.Option(None, "--seed"),
    out: Path = typer.Option(Path("sweep"), "--out"),
    plot: bool = typer.Option(False, "--plot"),
) -> None:
    """Score a lambda-offset by peel-fraction grid against ground truth."""

    def action() -> None:
        sweep = SweepConfig(
            lambda_offsets=_parse_floats(lambda_offsets, "--lambda-offsets"),
            peel_fractions=_parse_floats(peel_fractions, "--peel-fractions"),
            repeats=repeats,
            relative_offsets=relative_offsets,
        )
        params, _ = _resolve_params(
            params_path,
            k=k,
            c=c,
            max_iters=max_iters,
            termination_sensitivity=termination_sensitivity,
            min_cluster_size=min_cluster_size,
            backend=backend,
        )
        config = RunConfig(
            input_path=input_path,
            has_header=header,
            label_column=label_column,
            generator=_source_spec(input_path, generate_name, generator_config, params, seed),
            params=params,
            output_dir=out,
            plot=plot,
        )
        report = run_sweep_command(config, sweep)
        typer.echo(report.table.to_string(index=False, float_format=lambda v: f"{v:.4f}"))
        typer.echo(f"ARI spread across cells: {report.ari_spread:.4f}")

    _guarded("sweep_failed", action)


@app.command("rank")
def cli_rank(
    result_path: Path = typer.Argument(..., help="result.json or its run directory"),
    cluster: int = typer.Option(..., "--cluster", help="Cluster label"),
    m: int = typer.Option(10, "--m", help="How many ids per list"),
) -> None:
    """Print the most and least confident members of a cluster."""

    def action() -> None:
        path = result_path / RESULT_FILE if result_path.is_dir() else result_path
        document = read_result(path)
        top, bottom = rank_members(document.labels, document.confidence, cluster, m)
        typer.echo("top: " + " ".join(str(i) for i in top))
        typer.echo("bottom: " + " ".join(str(i) for i in bottom))

    _guarded("rank_failed", action)


@app.command("trace")
def cli_trace(
    result_dir: Path = typer.Argument(..., help="Run directory holding trace.json"),
) -> None:
    """Print the per-iteration peel summary of a run."""

    def action() -> None:
        path = result_dir / TRACE_FILE if result_dir.is_dir() else result_dir
        trace = read_trace(path)
        typer.echo(f"{'iter':>4} {'peeled':>6} {'tau':>12} {'mean_b':>12} {'ratio':>8}")
        for record in trace["iterations"]:
            ratio = "-" if record["ratio"] is None else f"{record['ratio']:.4f}"
            typer.echo(
                f"{record['iteration']:>4} {len(record['peeled']):>6} "
                f"{record['tau']:>12.6f} {record['mean_b']:>12.6f} {ratio:>8}"
            )
        typer.echo(f"termination: {trace.get('termination_reason')}")

    _guarded("trace_failed", action)


@config_app.command("validate")
def config_validate(path: Path) -> None:
    def action() -> None:
        load_params(path)
        typer.echo(f"Configuration {path} is valid")

    _guarded("config_validate_failed", action)


@config_app.command("show")
def config_show(path: Path) -> None:
    _guarded("config_show_failed", lambda: typer.echo(load_and_document(path)))


app.add_typer(config_app, name="config")


def main() -> None:
    app()


if __name__ == "__main__":
    main()
