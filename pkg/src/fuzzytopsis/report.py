"""Render ranking results as aligned text tables, CSV, or JSON.

Output is deterministic byte-for-byte for fixed inputs and options: plain
monospaced columns, no locale formatting, LF line endings. Values are
rounded only here — pipeline internals stay at full precision.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from typing import Mapping, Optional

from .engine import FuzzyDecisionMatrix, RankingResult
from .errors import DecisionError
from .scales import LinguisticScale
from .tfn import TFN

__all__ = ["ReportOptions", "render_ranking", "render_scale"]

FORMATS = ("table", "csv", "json")


@dataclass(frozen=True)
class ReportOptions:
    """How to render a ranking: format, decimal places, ranking tweaks."""

    format: str = "table"
    precision: int = 3
    round_before_rank: bool = False
    ideal_strategy: Optional[str] = None
    normalization: Optional[str] = None
    tie_epsilon: float = 0.0

    def __post_init__(self):
        if self.format not in FORMATS:
            raise DecisionError(
                "PARSE_ERROR", f"format must be one of {list(FORMATS)}, got {self.format!r}"
            )
        if not (0 <= self.precision <= 12):
            raise DecisionError(
                "PARSE_ERROR", f"precision must be in 0..12, got {self.precision}"
            )


def _fmt(value: float, precision: int) -> str:
    return f"{value:.{precision}f}"


def _fmt_tfn(value: TFN, precision: int) -> str:
    return "({}, {}, {})".format(
        _fmt(value.a, precision), _fmt(value.b, precision), _fmt(value.c, precision)
    )


def _render_columns(header: list[str], rows: list[list[str]], numeric_from: int) -> str:
    """Align columns: text columns left, numeric columns right."""
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = []
    for row in [header] + rows:
        cells = []
        for i, cell in enumerate(row):
            if i >= numeric_from:
                cells.append(cell.rjust(widths[i]))
            else:
                cells.append(cell.ljust(widths[i]))
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def render_ranking(
    result: RankingResult,
    options: ReportOptions,
    source: Optional[FuzzyDecisionMatrix] = None,
    notes: Optional[Mapping[str, str]] = None,
    label: str = "alternative",
) -> str:
    """Render a ranking in the requested format.

    ``source`` (the raw single-criterion matrix, when available) adds the
    fuzzy-average column to the table format. ``notes`` attaches per-row
    caveats, rendered after the table and in the JSON payload; the CSV
    format carries only the five result columns.
    """
    p = options.precision
    fuzzy_by_id = None
    if source is not None and source.n == 1:
        fuzzy_by_id = {
            alternative: source.cells[i][0]
            for i, alternative in enumerate(source.alternatives)
        }

    if options.format == "csv":
        out = io.StringIO()
        out.write("alternative,s_plus,s_minus,cc,rank\n")
        for row in result.rows:
            name = row.alternative
            if "," in name or '"' in name:
                name = '"' + name.replace('"', '""') + '"'
            out.write(
                f"{name},{_fmt(row.s_plus, p)},{_fmt(row.s_minus, p)},"
                f"{_fmt(row.cc, p)},{row.rank}\n"
            )
        return out.getvalue()

    if options.format == "json":
        payload = {
            "ideal_strategy": result.ideal_strategy,
            "normalization": result.normalization,
            "tie_policy": result.tie_policy,
            "positive_ideal": [
                [round(v, p) for v in ideal.as_tuple()] for ideal in result.ideals.positive
            ],
            "negative_ideal": [
                [round(v, p) for v in ideal.as_tuple()] for ideal in result.ideals.negative
            ],
            "rows": [
                {
                    "alternative": row.alternative,
                    "s_plus": round(row.s_plus, p),
                    "s_minus": round(row.s_minus, p),
                    "cc": round(row.cc, p),
                    "rank": row.rank,
                }
                for row in result.rows
            ],
        }
        if notes:
            payload["notes"] = dict(sorted(notes.items()))
        return json.dumps(payload, indent=2) + "\n"

    header = [label]
    if fuzzy_by_id is not None:
        header.append("fuzzy average")
    header += ["d+", "d-", "cc", "rank"]
    rows = []
    for row in result.rows:
        cells = [row.alternative]
        if fuzzy_by_id is not None:
            cells.append(_fmt_tfn(fuzzy_by_id[row.alternative], p))
        cells += [_fmt(row.s_plus, p), _fmt(row.s_minus, p), _fmt(row.cc, p), str(row.rank)]
        rows.append(cells)
    text = _render_columns(header, rows, numeric_from=2 if fuzzy_by_id is not None else 1)
    if notes:
        note_lines = [
            f"note [{key}]: {value}" for key, value in sorted(notes.items())
        ]
        text += "\n" + "\n".join(note_lines) + "\n"
    return text


def render_scale(scale: LinguisticScale) -> str:
    """Term table of a linguistic scale."""
    from .matrix_io import _format_number

    rows = [
        [term, _format_number(value.a), _format_number(value.b), _format_number(value.c)]
        for term, value in scale.terms
    ]
    text = _render_columns(["term", "a", "b", "c"], rows, numeric_from=1)
    bounds = f"bounds: [{_format_number(scale.lower_bound)}, {_format_number(scale.upper_bound)}]\n"
    return text + bounds
