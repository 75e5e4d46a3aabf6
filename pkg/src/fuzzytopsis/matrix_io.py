"""Reading and writing pre-aggregated decision-matrix files.

The file format is CSV organized in per-criterion blocks separated by
blank lines::

    criterion,<criterion-id>
    alternative,a,b,c
    <alternative>,<a>,<b>,<c>
    ...

The ``criterion,...`` line may be omitted in a single-block file. This
format carries already-aggregated fuzzy values, for studies where only
the combined expert opinion is available rather than the raw
questionnaires.
"""

from __future__ import annotations

import csv
import io
from typing import Optional

from .engine import STAGE_RAW, FuzzyDecisionMatrix
from .errors import DecisionError, IngestError
from .survey import StudyConfig, _split_sections
from .tfn import TFN

__all__ = ["parse_matrix", "serialize_matrix", "DEFAULT_CRITERION_ID"]

DEFAULT_CRITERION_ID = "value"

_BLOCK_HEADER = ["alternative", "a", "b", "c"]


def _format_number(value: float) -> str:
    """Shortest decimal text that parses back to the same float."""
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def parse_matrix(text: str, config: Optional[StudyConfig] = None) -> FuzzyDecisionMatrix:
    """Parse a matrix document into a raw decision matrix.

    Without a config, criteria default to benefit direction with unit
    weight and alternatives keep file order. With a config, criterion ids
    and the alternative set must match it exactly and rows are reordered
    to the config's alternative order.
    """
    diags: list[tuple[str, str]] = []
    sections = _split_sections(text)
    if not sections:
        raise IngestError([("PARSE_ERROR", "matrix document is empty")])

    blocks: dict[str, dict[str, TFN]] = {}
    block_order: list[str] = []
    alternative_order: list[str] = []
    for start_line, lines in sections:
        reader = csv.reader(lines)
        rows = list(reader)
        lineno = start_line
        criterion_id = None
        if rows and [f.strip().lower() for f in rows[0][:1]] == ["criterion"]:
            if len(rows[0]) != 2 or not rows[0][1].strip():
                diags.append(("PARSE_ERROR", f"line {lineno}: bad criterion line"))
                continue
            criterion_id = rows[0][1].strip()
            rows = rows[1:]
            lineno += 1
        if criterion_id is None:
            if len(sections) > 1:
                diags.append(
                    ("PARSE_ERROR",
                     f"line {lineno}: multi-block files must name each block's criterion")
                )
                continue
            criterion_id = (
                config.criterion_ids[0]
                if config is not None and config.n == 1
                else DEFAULT_CRITERION_ID
            )
        if not rows or [f.strip().lower() for f in rows[0]] != _BLOCK_HEADER:
            diags.append(
                ("PARSE_ERROR",
                 f"line {lineno}: expected header {','.join(_BLOCK_HEADER)!r}")
            )
            continue
        if criterion_id in blocks:
            diags.append(("DUPLICATE_ID", f"criterion {criterion_id!r} appears in two blocks"))
            continue
        block: dict[str, TFN] = {}
        blocks[criterion_id] = block
        block_order.append(criterion_id)
        for offset, fields in enumerate(rows[1:], start=1):
            row_line = lineno + offset
            if len(fields) != 4:
                diags.append(
                    ("PARSE_ERROR", f"line {row_line}: expected 4 fields, got {len(fields)}")
                )
                continue
            alternative = fields[0].strip()
            if not alternative:
                diags.append(("PARSE_ERROR", f"line {row_line}: empty alternative id"))
                continue
            try:
                vertices = [float(f) for f in fields[1:]]
            except ValueError:
                diags.append(
                    ("PARSE_ERROR", f"line {row_line}: vertices must be numbers, got {fields[1:]}")
                )
                continue
            if alternative in block:
                diags.append(
                    ("DUPLICATE_ID",
                     f"line {row_line}: duplicate row for alternative {alternative!r}")
                )
                continue
            try:
                block[alternative] = TFN(*vertices)
            except DecisionError as exc:
                diags.append((exc.code, f"line {row_line}: {exc}"))
                continue
            if alternative not in alternative_order:
                alternative_order.append(alternative)

    if config is not None:
        expected = set(config.criterion_ids)
        for criterion_id in block_order:
            if criterion_id not in expected:
                diags.append(("UNKNOWN_CRITERION", f"unknown criterion {criterion_id!r}"))
        for criterion_id in config.criterion_ids:
            if criterion_id not in blocks:
                diags.append(("INCOMPLETE", f"no block for criterion {criterion_id!r}"))
        alt_set = set(config.alternatives)
        for alternative in alternative_order:
            if alternative not in alt_set:
                diags.append(("UNKNOWN_ALTERNATIVE", f"unknown alternative {alternative!r}"))
        for criterion_id in config.criterion_ids:
            block = blocks.get(criterion_id, {})
            for alternative in config.alternatives:
                if alternative not in block:
                    diags.append(
                        ("INCOMPLETE",
                         f"criterion {criterion_id!r}: no row for alternative {alternative!r}")
                    )
        criteria = config.criteria
        alternatives = config.alternatives
    else:
        if len(alternative_order) < 2:
            diags.append(
                ("PARSE_ERROR",
                 f"a matrix needs at least 2 alternatives to rank, got {len(alternative_order)}")
            )
        for criterion_id in block_order:
            block = blocks[criterion_id]
            for alternative in alternative_order:
                if alternative not in block:
                    diags.append(
                        ("INCOMPLETE",
                         f"criterion {criterion_id!r}: no row for alternative {alternative!r}")
                    )
        from .survey import CriterionSpec

        criteria = tuple(CriterionSpec(id=criterion_id) for criterion_id in block_order)
        alternatives = tuple(alternative_order)

    if diags:
        raise IngestError(diags)
    cells = tuple(
        tuple(blocks[spec.id][alternative] for spec in criteria)
        for alternative in alternatives
    )
    return FuzzyDecisionMatrix(
        alternatives=alternatives, criteria=criteria, cells=cells, stage=STAGE_RAW
    )


def serialize_matrix(matrix: FuzzyDecisionMatrix) -> str:
    """Canonical text form: criterion blocks in order, rows sorted by id.

    Content round-trips exactly through ``parse_matrix``; row order is
    canonicalized, so permuted inputs serialize to identical bytes.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for j, spec in enumerate(matrix.criteria):
        if j:
            out.write("\n")
        writer.writerow(["criterion", spec.id])
        writer.writerow(_BLOCK_HEADER)
        for alternative in sorted(matrix.alternatives):
            cell = matrix.cells[matrix.alternatives.index(alternative)][j]
            writer.writerow(
                [alternative, _format_number(cell.a), _format_number(cell.b), _format_number(cell.c)]
            )
    return out.getvalue()
