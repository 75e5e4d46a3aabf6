"""The fuzzy ranking pipeline.

Eight composable steps: assemble the decision matrix from expert ratings,
combine criterion weights, make the matrix dimensionless, apply weights,
fix the positive/negative ideal points, accumulate per-alternative vertex
distances to both ideals, convert the distance pair to a closeness
coefficient in [0, 1], and rank by descending closeness.

Matrices carry an explicit ``stage`` (raw -> normalized -> weighted) and
every step rejects input at the wrong stage, so nothing can be silently
normalized or weighted twice. All functions are pure and deterministic:
means and distance sums use compensated summation, so results do not
depend on input order at the bit level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import DecisionError
from .scales import LinguisticScale, default_scale
from .survey import (
    IDEAL_STRATEGIES,
    NORMALIZATION_MODES,
    CriterionSpec,
    SurveyDataset,
)
from . import tfn
from .tfn import TFN

__all__ = [
    "FuzzyDecisionMatrix",
    "IdealPair",
    "RankingRow",
    "RankingResult",
    "assemble_matrix",
    "combine_weights",
    "normalize",
    "apply_weights",
    "compute_ideals",
    "compute_distances",
    "closeness",
    "rank_by_closeness",
    "run_pipeline",
    "STAGE_RAW",
    "STAGE_NORMALIZED",
    "STAGE_WEIGHTED",
]

STAGE_RAW = "raw"
STAGE_NORMALIZED = "normalized"
STAGE_WEIGHTED = "weighted"
_STAGES = (STAGE_RAW, STAGE_NORMALIZED, STAGE_WEIGHTED)


@dataclass(frozen=True)
class FuzzyDecisionMatrix:
    """m alternatives x n criteria grid of triangular numbers.

    ``cells[i][j]`` is the (aggregated) rating of alternative i on
    criterion j. ``stage`` records how far through the pipeline the values
    have been taken.
    """

    alternatives: tuple[str, ...]
    criteria: tuple[CriterionSpec, ...]
    cells: tuple[tuple[TFN, ...], ...]
    stage: str = STAGE_RAW

    def __post_init__(self):
        if self.stage not in _STAGES:
            raise DecisionError("WRONG_STAGE", f"unknown stage {self.stage!r}")
        if not self.alternatives or not self.criteria:
            raise DecisionError(
                "DIMENSION_MISMATCH", "matrix needs at least one alternative and one criterion"
            )
        if len(set(self.alternatives)) != len(self.alternatives):
            raise DecisionError("DUPLICATE_ID", "alternative ids must be unique")
        ids = [spec.id for spec in self.criteria]
        if len(set(ids)) != len(ids):
            raise DecisionError("DUPLICATE_ID", "criterion ids must be unique")
        if len(self.cells) != len(self.alternatives):
            raise DecisionError(
                "DIMENSION_MISMATCH",
                f"expected {len(self.alternatives)} rows, got {len(self.cells)}",
            )
        for row in self.cells:
            if len(row) != len(self.criteria):
                raise DecisionError(
                    "DIMENSION_MISMATCH",
                    f"expected {len(self.criteria)} cells per row, got {len(row)}",
                )
            for cell in row:
                if not isinstance(cell, TFN):
                    raise DecisionError(
                        "DIMENSION_MISMATCH", f"matrix cell {cell!r} is not a triangular number"
                    )

    @property
    def m(self) -> int:
        return len(self.alternatives)

    @property
    def n(self) -> int:
        return len(self.criteria)

    def column(self, j: int) -> tuple[TFN, ...]:
        return tuple(row[j] for row in self.cells)

    def _require_stage(self, stage: str, op: str) -> None:
        if self.stage != stage:
            raise DecisionError(
                "WRONG_STAGE", f"{op} requires a {stage!r} matrix, got {self.stage!r}"
            )


@dataclass(frozen=True)
class IdealPair:
    """Per-criterion positive and negative reference points."""

    positive: tuple[TFN, ...]
    negative: tuple[TFN, ...]
    strategy: str

    def __post_init__(self):
        if len(self.positive) != len(self.negative):
            raise DecisionError(
                "DIMENSION_MISMATCH",
                f"{len(self.positive)} positive vs {len(self.negative)} negative ideals",
            )
        for j, (pos, neg) in enumerate(zip(self.positive, self.negative)):
            if not (pos.a >= neg.a and pos.b >= neg.b and pos.c >= neg.c):
                raise DecisionError(
                    "NON_DOMINANT_IDEALS",
                    f"criterion {j}: positive ideal {pos.as_tuple()} does not dominate "
                    f"negative ideal {neg.as_tuple()}",
                )

    @property
    def n(self) -> int:
        return len(self.positive)


@dataclass(frozen=True)
class RankingRow:
    alternative: str
    s_plus: float
    s_minus: float
    cc: float
    rank: int


@dataclass(frozen=True)
class RankingResult:
    """Ranked alternatives plus the reference points and tie policy used.

    ``rows`` are sorted by rank; ties keep the source's alternative order.
    """

    rows: tuple[RankingRow, ...]
    ideals: IdealPair
    tie_policy: str
    ideal_strategy: str
    normalization: str

    def row_for(self, alternative: str) -> RankingRow:
        for row in self.rows:
            if row.alternative == alternative:
                return row
        raise KeyError(alternative)


def assemble_matrix(dataset: SurveyDataset) -> FuzzyDecisionMatrix:
    """Fold every expert's linguistic ratings into one raw decision matrix.

    Cell (i, j) combines the K experts' term-encoded ratings with
    min / mean / max aggregation.
    """
    scale = dataset.config.scale
    cells = tuple(
        tuple(
            tfn.aggregate(
                scale.to_tfn(dataset.ratings[(expert, alternative, spec.id)])
                for expert in dataset.experts
            )
            for spec in dataset.config.criteria
        )
        for alternative in dataset.config.alternatives
    )
    return FuzzyDecisionMatrix(
        alternatives=dataset.config.alternatives,
        criteria=dataset.config.criteria,
        cells=cells,
        stage=STAGE_RAW,
    )


def combine_weights(dataset: SurveyDataset) -> tuple[TFN, ...]:
    """Resolve one weight per criterion.

    Fixed weights pass through unchanged. Criteria declared survey-weighted
    combine the experts' weight terms with min / mean / max aggregation;
    when no weight ratings were collected the criterion's fixed weight
    (the crisp unit weight by default) applies.
    """
    scale = dataset.config.scale
    weights = []
    for spec in dataset.config.criteria:
        if spec.weight_from_survey and any(
            (expert, spec.id) in dataset.weight_ratings for expert in dataset.experts
        ):
            weights.append(
                tfn.aggregate(
                    scale.to_tfn(dataset.weight_ratings[(expert, spec.id)])
                    for expert in dataset.experts
                )
            )
        else:
            weights.append(spec.weight)
    return tuple(weights)


def normalize(
    matrix: FuzzyDecisionMatrix,
    mode: str = "relative",
    scale: Optional[LinguisticScale] = None,
) -> FuzzyDecisionMatrix:
    """Make a raw matrix dimensionless with a linear scale transformation.

    Benefit criteria divide all vertices by the column's reference upper
    value; cost criteria invert around the column's reference lower value
    (lo/c, lo/b, lo/a). ``relative`` mode takes the references from the
    options themselves (max upper vertex / min lower vertex per column);
    ``absolute`` mode substitutes the rating scale's global bounds, which
    makes each alternative's normalized row independent of the others.
    """
    matrix._require_stage(STAGE_RAW, "normalize")
    if mode not in NORMALIZATION_MODES:
        raise DecisionError(
            "INVALID_STRATEGY", f"normalization must be one of {list(NORMALIZATION_MODES)}, got {mode!r}"
        )
    if mode == "absolute" and scale is None:
        raise DecisionError(
            "INVALID_STRATEGY", "absolute normalization requires a linguistic scale for its bounds"
        )

    columns = []
    for j, spec in enumerate(matrix.criteria):
        column = matrix.column(j)
        if spec.direction == "benefit":
            upper = scale.upper_bound if mode == "absolute" else max(cell.c for cell in column)
            columns.append([tfn.scale_divide(cell, upper) for cell in column])
        else:
            lower = scale.lower_bound if mode == "absolute" else min(cell.a for cell in column)
            normalized = []
            for cell in column:
                if cell.a <= 0:
                    raise DecisionError(
                        "COST_DIVIDE_BY_ZERO",
                        f"cost criterion {spec.id!r}: cell {cell.as_tuple()} has a "
                        "nonpositive component",
                    )
                normalized.append(TFN(lower / cell.c, lower / cell.b, lower / cell.a))
            columns.append(normalized)
    cells = tuple(
        tuple(columns[j][i] for j in range(matrix.n)) for i in range(matrix.m)
    )
    return FuzzyDecisionMatrix(matrix.alternatives, matrix.criteria, cells, STAGE_NORMALIZED)


def apply_weights(matrix: FuzzyDecisionMatrix, weights: Sequence[TFN]) -> FuzzyDecisionMatrix:
    """Multiply each normalized column by its criterion weight."""
    matrix._require_stage(STAGE_NORMALIZED, "apply_weights")
    weights = tuple(weights)
    if len(weights) != matrix.n:
        raise DecisionError(
            "DIMENSION_MISMATCH", f"matrix has {matrix.n} criteria but {len(weights)} weights given"
        )
    cells = tuple(
        tuple(tfn.multiply(cell, weights[j]) for j, cell in enumerate(row))
        for row in matrix.cells
    )
    return FuzzyDecisionMatrix(matrix.alternatives, matrix.criteria, cells, STAGE_WEIGHTED)


def compute_ideals(
    matrix: FuzzyDecisionMatrix,
    strategy: str = "paper-fixed",
    scale: Optional[LinguisticScale] = None,
) -> IdealPair:
    """Fix the positive and negative reference points per criterion.

    * ``paper-fixed``: positive (1,1,1); negative the crisp ratio of the
      scale's lower to upper bound (1/9 for the default scale).
    * ``chen-fixed``: positive (1,1,1); negative (0,0,0).
    * ``extremal``: component-wise max / min over the options per column.

    The two fixed strategies assume a weighted matrix whose components lie
    in [0, 1] (the case for nonnegative weights <= 1 and a positive scale).
    """
    matrix._require_stage(STAGE_WEIGHTED, "compute_ideals")
    if strategy not in IDEAL_STRATEGIES:
        raise DecisionError(
            "INVALID_STRATEGY",
            f"ideal strategy must be one of {list(IDEAL_STRATEGIES)}, got {strategy!r}",
        )
    n = matrix.n
    if strategy == "paper-fixed":
        if scale is None:
            raise DecisionError(
                "INVALID_STRATEGY", "paper-fixed ideals require a linguistic scale for its bounds"
            )
        ratio = scale.lower_bound / scale.upper_bound
        positive = tuple(TFN(1, 1, 1) for _ in range(n))
        negative = tuple(TFN(ratio, ratio, ratio) for _ in range(n))
    elif strategy == "chen-fixed":
        positive = tuple(TFN(1, 1, 1) for _ in range(n))
        negative = tuple(TFN(0, 0, 0) for _ in range(n))
    else:
        positive = []
        negative = []
        for j in range(n):
            column = matrix.column(j)
            positive.append(
                TFN(max(v.a for v in column), max(v.b for v in column), max(v.c for v in column))
            )
            negative.append(
                TFN(min(v.a for v in column), min(v.b for v in column), min(v.c for v in column))
            )
        positive, negative = tuple(positive), tuple(negative)
    return IdealPair(positive=positive, negative=negative, strategy=strategy)


def compute_distances(
    matrix: FuzzyDecisionMatrix, ideals: IdealPair
) -> list[tuple[float, float]]:
    """Accumulate each alternative's vertex distance to both ideals.

    Returns (s_plus, s_minus) per alternative, summed over criteria in
    index order with compensated summation.
    """
    matrix._require_stage(STAGE_WEIGHTED, "compute_distances")
    if ideals.n != matrix.n:
        raise DecisionError(
            "DIMENSION_MISMATCH",
            f"matrix has {matrix.n} criteria but ideals cover {ideals.n}",
        )
    out = []
    for row in matrix.cells:
        s_plus = math.fsum(
            tfn.vertex_distance(cell, ideals.positive[j]) for j, cell in enumerate(row)
        )
        s_minus = math.fsum(
            tfn.vertex_distance(cell, ideals.negative[j]) for j, cell in enumerate(row)
        )
        out.append((s_plus, s_minus))
    return out


def closeness(s_plus: float, s_minus: float) -> float:
    """Closeness coefficient: distance share on the negative-ideal side.

    1 means the alternative sits on the positive ideal, 0 on the negative
    ideal. Undefined when both distances are zero (the two ideals and the
    alternative coincide), which makes the alternative unrankable.
    """
    if s_plus < 0 or s_minus < 0:
        raise DecisionError("NEGATIVE_OPERAND", "distances must be nonnegative")
    total = s_minus + s_plus
    if total == 0:
        raise DecisionError(
            "DEGENERATE_ALTERNATIVE",
            "both ideal distances are zero; the ideal pair collapsed and the "
            "alternative cannot be ranked",
        )
    return s_minus / total


def rank_by_closeness(cc_values: Sequence[float], tie_epsilon: float = 0.0) -> list[int]:
    """Competition-rank closeness values in descending order.

    Equal values share a rank and the next distinct value's rank skips by
    the tie count ("1-2-2-4"). With a positive ``tie_epsilon``, a value
    joins the current tie group when it lies within epsilon of the group's
    highest member. Returns ranks aligned to the input order.
    """
    if tie_epsilon < 0:
        raise DecisionError("PARSE_ERROR", f"tie_epsilon must be >= 0, got {tie_epsilon}")
    order = sorted(range(len(cc_values)), key=lambda i: (-cc_values[i], i))
    groups: list[list[int]] = []
    for idx in order:
        if groups and (cc_values[groups[-1][0]] - cc_values[idx]) <= tie_epsilon:
            groups[-1].append(idx)
        else:
            groups.append([idx])
    ranks = [0] * len(cc_values)
    better = 0
    for group in groups:
        for idx in group:
            ranks[idx] = better + 1
        better += len(group)
    return ranks


def run_pipeline(
    source: Union[SurveyDataset, FuzzyDecisionMatrix],
    *,
    scale: Optional[LinguisticScale] = None,
    normalization: Optional[str] = None,
    ideal_strategy: Optional[str] = None,
    weights: Optional[Sequence[TFN]] = None,
    tie_epsilon: float = 0.0,
    round_cc_to: Optional[int] = None,
) -> RankingResult:
    """Run the whole pipeline on a survey dataset or a raw decision matrix.

    A dataset is first aggregated into a matrix and its weights combined; a
    matrix (needed when only aggregated values are available) uses each
    criterion's fixed weight unless ``weights`` overrides them. ``scale``,
    ``normalization`` and ``ideal_strategy`` default to the dataset's
    config where there is one, else to the built-in scale and the
    paper-fixed/relative defaults.

    ``round_cc_to`` rounds closeness to that many decimals before ranking,
    replicating rankings read off a rounded report; full-precision values
    are still returned in the rows.
    """
    if isinstance(source, SurveyDataset):
        matrix = assemble_matrix(source)
        if weights is None:
            weights = combine_weights(source)
        scale = scale or source.config.scale
        normalization = normalization or source.config.normalization
        ideal_strategy = ideal_strategy or source.config.ideal_strategy
    elif isinstance(source, FuzzyDecisionMatrix):
        matrix = source
        if weights is None:
            weights = tuple(spec.weight for spec in matrix.criteria)
    else:
        raise TypeError(f"expected SurveyDataset or FuzzyDecisionMatrix, got {type(source)!r}")
    scale = scale or default_scale()
    normalization = normalization or "relative"
    ideal_strategy = ideal_strategy or "paper-fixed"

    weighted = apply_weights(normalize(matrix, normalization, scale), weights)
    ideals = compute_ideals(weighted, ideal_strategy, scale)
    distances = compute_distances(weighted, ideals)

    ccs = []
    for alternative, (s_plus, s_minus) in zip(matrix.alternatives, distances):
        try:
            ccs.append(closeness(s_plus, s_minus))
        except DecisionError as exc:
            if exc.code == "DEGENERATE_ALTERNATIVE":
                raise DecisionError(exc.code, f"alternative {alternative!r}: {exc}") from None
            raise

    policy_parts = []
    if round_cc_to is not None:
        ranked_values = [float(f"{cc:.{round_cc_to}f}") for cc in ccs]
        policy_parts.append(f"cc rounded to {round_cc_to} decimals before ranking")
    else:
        ranked_values = ccs
    policy_parts.append(
        "exact ties" if tie_epsilon == 0 else f"tie epsilon {tie_epsilon:g}"
    )
    ranks = rank_by_closeness(ranked_values, tie_epsilon)

    rows = [
        RankingRow(
            alternative=matrix.alternatives[i],
            s_plus=distances[i][0],
            s_minus=distances[i][1],
            cc=ccs[i],
            rank=ranks[i],
        )
        for i in range(matrix.m)
    ]
    rows.sort(key=lambda row: row.rank)
    return RankingResult(
        rows=tuple(rows),
        ideals=ideals,
        tie_policy="; ".join(policy_parts),
        ideal_strategy=ideal_strategy,
        normalization=normalization,
    )
