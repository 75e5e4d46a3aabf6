"""Command-line interface: validate, rank, rollup, scales.

Exit codes: 0 success, 1 I/O failure, 2 invalid input data, 3 computation
failure. Validation reports every diagnostic found, not just the first.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional

import click

from . import engine, matrix_io, report, survey
from .errors import DecisionError, IngestError
from .rollup import rollup as roll_up_matrix
from .scales import default_scale

EXIT_IO = 1
EXIT_INVALID = 2
EXIT_COMPUTE = 3


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        click.echo(f"io error: {exc}", err=True)
        raise SystemExit(EXIT_IO) from None


def _fail(exc: DecisionError, exit_code: int) -> None:
    if isinstance(exc, IngestError):
        for code, message in exc.diagnostics:
            click.echo(f"error[{code}]: {message}", err=True)
    else:
        click.echo(f"error[{exc.code}]: {exc}", err=True)
    raise SystemExit(exit_code) from None


def _load_config(path: str) -> survey.StudyConfig:
    text = _read_file(path)
    try:
        return survey.parse_config(text)
    except DecisionError as exc:
        _fail(exc, EXIT_INVALID)


def _load_survey(path: str, config: survey.StudyConfig) -> survey.SurveyDataset:
    text = _read_file(path)
    try:
        return survey.parse_survey(text, config)
    except DecisionError as exc:
        _fail(exc, EXIT_INVALID)


def _load_matrix(path: str, config: Optional[survey.StudyConfig]) -> engine.FuzzyDecisionMatrix:
    text = _read_file(path)
    try:
        return matrix_io.parse_matrix(text, config)
    except DecisionError as exc:
        _fail(exc, EXIT_INVALID)


def _report_options(fn):
    options = [
        click.option(
            "--format", "format_", type=click.Choice(report.FORMATS), default="table",
            show_default=True, help="Report format.",
        ),
        click.option(
            "--precision", type=click.IntRange(0, 12), default=3, show_default=True,
            help="Decimal places in reports.",
        ),
        click.option(
            "--ideal-strategy", type=click.Choice(survey.IDEAL_STRATEGIES), default=None,
            help="Override the ideal-point strategy.",
        ),
        click.option(
            "--normalization", type=click.Choice(survey.NORMALIZATION_MODES), default=None,
            help="Override the normalization mode.",
        ),
        click.option(
            "--round-before-rank", is_flag=True,
            help="Rank on closeness rounded to --precision decimals (replicates "
                 "rankings read off a rounded report).",
        ),
        click.option(
            "--tie-epsilon", type=click.FloatRange(min=0), default=0.0, show_default=True,
            help="Closeness values within this distance tie for a rank.",
        ),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


@click.group()
def main():
    """Rank alternatives from multi-expert linguistic assessments."""


@main.command()
@click.option("--config", "config_path", required=True, help="Study config (JSON).")
@click.option("--ratings", "ratings_path", required=True, help="Ratings CSV.")
def validate(config_path: str, ratings_path: str):
    """Check a study config and ratings file; print a dataset summary."""
    config = _load_config(config_path)
    dataset = _load_survey(ratings_path, config)
    click.echo(
        f"ok: K={dataset.k} m={config.m} n={config.n} categories={len(config.categories)}"
    )


@main.command()
@click.option("--config", "config_path", default=None, help="Study config (JSON).")
@click.option("--ratings", "ratings_path", default=None, help="Ratings CSV (needs --config).")
@click.option("--matrix", "matrix_path", default=None, help="Pre-aggregated matrix CSV.")
@_report_options
def rank(config_path, ratings_path, matrix_path, format_, precision,
         ideal_strategy, normalization, round_before_rank, tie_epsilon):
    """Rank alternatives from a survey or a pre-aggregated matrix."""
    if (ratings_path is None) == (matrix_path is None):
        raise click.UsageError("give exactly one of --ratings or --matrix")
    if ratings_path is not None and config_path is None:
        raise click.UsageError("--ratings requires --config")

    config = _load_config(config_path) if config_path else None
    weights = None
    if ratings_path is not None:
        dataset = _load_survey(ratings_path, config)
        try:
            matrix = engine.assemble_matrix(dataset)
            weights = engine.combine_weights(dataset)
        except DecisionError as exc:
            _fail(exc, EXIT_COMPUTE)
    else:
        matrix = _load_matrix(matrix_path, config)

    options = report.ReportOptions(
        format=format_, precision=precision, round_before_rank=round_before_rank,
        ideal_strategy=ideal_strategy, normalization=normalization, tie_epsilon=tie_epsilon,
    )
    try:
        result = engine.run_pipeline(
            matrix,
            weights=weights,
            scale=config.scale if config else default_scale(),
            normalization=normalization or (config.normalization if config else None),
            ideal_strategy=ideal_strategy or (config.ideal_strategy if config else None),
            tie_epsilon=tie_epsilon,
            round_cc_to=precision if round_before_rank else None,
        )
        text = report.render_ranking(result, options, source=matrix)
    except DecisionError as exc:
        _fail(exc, EXIT_COMPUTE)
    click.echo(text, nl=False)


@main.command()
@click.option("--config", "config_path", required=True, help="Study config with categories.")
@click.option("--matrix", "matrix_path", required=True, help="Single-criterion matrix CSV.")
@_report_options
def rollup(config_path, matrix_path, format_, precision,
           ideal_strategy, normalization, round_before_rank, tie_epsilon):
    """Roll item-level values up to categories and rank the categories."""
    config = _load_config(config_path)
    if not config.categories:
        raise click.UsageError("the study config declares no categories")
    matrix = _load_matrix(matrix_path, config)

    options = report.ReportOptions(
        format=format_, precision=precision, round_before_rank=round_before_rank,
        ideal_strategy=ideal_strategy, normalization=normalization, tie_epsilon=tie_epsilon,
    )
    try:
        rolled = roll_up_matrix(matrix, config.categories)
        result = engine.run_pipeline(
            rolled,
            scale=config.scale,
            normalization=normalization or config.normalization,
            ideal_strategy=ideal_strategy or config.ideal_strategy,
            tie_epsilon=tie_epsilon,
            round_cc_to=precision if round_before_rank else None,
        )
        text = report.render_ranking(
            result, options, source=rolled, notes=config.category_notes, label="category"
        )
    except DecisionError as exc:
        _fail(exc, EXIT_COMPUTE)
    click.echo(text, nl=False)


@main.command()
def scales():
    """Print the built-in linguistic scale."""
    click.echo(report.render_scale(default_scale()), nl=False)


if __name__ == "__main__":
    main(prog_name="fuzzytopsis")
