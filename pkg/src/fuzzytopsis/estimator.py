"""Scikit-learn style front end for the ranking pipeline.

`FuzzyTopsisRanker` wraps the pure pipeline functions behind the familiar
``fit`` / ``fit_predict`` / ``get_params`` surface so the method drops into
ecosystem tooling (cloning, parameter search, pipelines that pass rankings
along). The heavy lifting stays in :mod:`fuzzytopsis.engine`.
"""

from __future__ import annotations

from typing import Optional, Sequence, Union

import numpy as np
from sklearn.base import BaseEstimator

from .engine import FuzzyDecisionMatrix, run_pipeline
from .errors import DecisionError
from .scales import LinguisticScale, default_scale
from .survey import CriterionSpec
from .tfn import TFN

__all__ = ["FuzzyTopsisRanker", "as_decision_matrix"]


def _coerce_criteria(criteria, n: int) -> tuple[CriterionSpec, ...]:
    if criteria is None:
        return tuple(CriterionSpec(id=f"C{j + 1}") for j in range(n))
    specs = []
    for j, entry in enumerate(criteria):
        if isinstance(entry, CriterionSpec):
            specs.append(entry)
        elif entry in ("benefit", "cost"):
            specs.append(CriterionSpec(id=f"C{j + 1}", direction=entry))
        else:
            raise DecisionError(
                "PARSE_ERROR",
                f"criteria entries must be CriterionSpec or 'benefit'/'cost', got {entry!r}",
            )
    if len(specs) != n:
        raise DecisionError(
            "DIMENSION_MISMATCH", f"{len(specs)} criteria given for {n} matrix columns"
        )
    return tuple(specs)


def as_decision_matrix(
    X: Union[FuzzyDecisionMatrix, Sequence],
    criteria=None,
    alternatives: Optional[Sequence[str]] = None,
) -> FuzzyDecisionMatrix:
    """Validate input and coerce it to a raw fuzzy decision matrix.

    Accepts an existing matrix, an (m, n, 3) array of vertex triples, an
    (m, n) grid of TriangularFuzzyNumber, or for crisp data an (m, n)
    numeric array whose entries become degenerate triples.
    """
    if isinstance(X, FuzzyDecisionMatrix):
        return X

    arr = np.asarray(X, dtype=object)
    if arr.ndim == 2 and arr.size and isinstance(arr.flat[0], TFN):
        cells = tuple(tuple(cell for cell in row) for row in arr)
    else:
        arr = np.asarray(X, dtype=float)
        if arr.ndim == 2:
            arr = arr[:, :, None].repeat(3, axis=2)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise DecisionError(
                "DIMENSION_MISMATCH",
                f"expected an (m, n, 3) array of vertex triples, got shape {arr.shape}",
            )
        cells = tuple(
            tuple(TFN(*arr[i, j]) for j in range(arr.shape[1])) for i in range(arr.shape[0])
        )
    m = len(cells)
    n = len(cells[0]) if m else 0
    if alternatives is None:
        alternatives = tuple(f"A{i + 1}" for i in range(m))
    return FuzzyDecisionMatrix(
        alternatives=tuple(alternatives),
        criteria=_coerce_criteria(criteria, n),
        cells=cells,
        stage="raw",
    )


class FuzzyTopsisRanker(BaseEstimator):
    """Rank alternatives by fuzzy closeness to the ideal solution.

    Parameters
    ----------
    normalization : {"relative", "absolute"}
        Take normalization references from the data or from the scale bounds.
    ideal_strategy : {"paper-fixed", "chen-fixed", "extremal"}
        How the positive/negative reference points are chosen.
    criteria : sequence of CriterionSpec or {"benefit", "cost"}, optional
        Per-column direction and weight; all-benefit unit weights by default.
    scale : LinguisticScale, optional
        Rating scale whose bounds feed absolute normalization and the
        paper-fixed negative ideal; the built-in five-term scale by default.
    tie_epsilon : float
        Closeness values within this distance share a rank.

    Attributes (after ``fit``)
    --------------------------
    closeness_ : ndarray of shape (m,), closeness coefficient per input row
    ranking_ : ndarray of shape (m,), competition rank per input row
    s_plus_, s_minus_ : ndarray of shape (m,), distances to the two ideals
    ideals_ : IdealPair actually used
    result_ : the full RankingResult
    """

    def __init__(
        self,
        normalization: str = "relative",
        ideal_strategy: str = "paper-fixed",
        criteria=None,
        scale: Optional[LinguisticScale] = None,
        tie_epsilon: float = 0.0,
    ):
        self.normalization = normalization
        self.ideal_strategy = ideal_strategy
        self.criteria = criteria
        self.scale = scale
        self.tie_epsilon = tie_epsilon

    def fit(self, X, y=None):
        """Run the ranking pipeline on a decision matrix."""
        matrix = as_decision_matrix(X, criteria=self.criteria)
        result = run_pipeline(
            matrix,
            scale=self.scale or default_scale(),
            normalization=self.normalization,
            ideal_strategy=self.ideal_strategy,
            tie_epsilon=self.tie_epsilon,
        )
        by_id = {row.alternative: row for row in result.rows}
        rows = [by_id[alternative] for alternative in matrix.alternatives]
        self.alternatives_ = np.array(matrix.alternatives, dtype=object)
        self.s_plus_ = np.array([row.s_plus for row in rows])
        self.s_minus_ = np.array([row.s_minus for row in rows])
        self.closeness_ = np.array([row.cc for row in rows])
        self.ranking_ = np.array([row.rank for row in rows])
        self.ideals_ = result.ideals
        self.result_ = result
        return self

    def fit_predict(self, X, y=None) -> np.ndarray:
        """Fit and return the rank of each input row (1 is best)."""
        return self.fit(X).ranking_
