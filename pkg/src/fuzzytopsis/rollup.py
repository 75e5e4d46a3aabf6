"""Category roll-up: fold item-level fuzzy ratings into category ratings.

Applies the same min / mean / max combination used for expert opinions,
but across the members of a category instead of across experts, producing
a smaller raw matrix whose alternatives are the categories. Only
single-criterion matrices can be rolled up.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .engine import STAGE_RAW, FuzzyDecisionMatrix
from .errors import DecisionError
from . import tfn

__all__ = ["CategoryMap", "rollup"]


@dataclass(frozen=True)
class CategoryMap:
    """Ordered (category id, member alternative ids) grouping.

    Members must be nonempty and disjoint across categories; membership
    against a concrete matrix is checked by ``rollup``.
    """

    categories: tuple[tuple[str, tuple[str, ...]], ...]

    def __post_init__(self):
        if not self.categories:
            raise DecisionError("EMPTY_CATEGORY", "category map has no categories")
        seen_categories: set[str] = set()
        seen_members: set[str] = set()
        for category, members in self.categories:
            if category in seen_categories:
                raise DecisionError("DUPLICATE_ID", f"duplicate category id {category!r}")
            seen_categories.add(category)
            if not members:
                raise DecisionError("EMPTY_CATEGORY", f"category {category!r} has no members")
            for member in members:
                if member in seen_members:
                    raise DecisionError(
                        "DUPLICATE_ID", f"alternative {member!r} appears in two categories"
                    )
                seen_members.add(member)


def rollup(
    matrix: FuzzyDecisionMatrix,
    categories: CategoryMap | Sequence[tuple[str, Sequence[str]]],
) -> FuzzyDecisionMatrix:
    """Aggregate a single-criterion raw matrix to category level.

    Each category cell takes the minimum lower vertex, mean modal vertex,
    and maximum upper vertex over its members' cells. Output rows follow
    the category order given.
    """
    matrix._require_stage(STAGE_RAW, "rollup")
    if matrix.n != 1:
        raise DecisionError(
            "MULTI_CRITERION_UNSUPPORTED",
            f"roll-up operates on a single-criterion matrix, got {matrix.n} criteria",
        )
    if not isinstance(categories, CategoryMap):
        categories = CategoryMap(
            tuple((category, tuple(members)) for category, members in categories)
        )
    row_of = {alternative: i for i, alternative in enumerate(matrix.alternatives)}
    cells = []
    for category, members in categories.categories:
        missing = [member for member in members if member not in row_of]
        if missing:
            raise DecisionError(
                "UNKNOWN_CATEGORY_MEMBER",
                f"category {category!r} lists alternatives not in the matrix: {missing}",
            )
        cells.append(
            (tfn.aggregate(matrix.cells[row_of[member]][0] for member in members),)
        )
    return FuzzyDecisionMatrix(
        alternatives=tuple(category for category, _ in categories.categories),
        criteria=matrix.criteria,
        cells=tuple(cells),
        stage=STAGE_RAW,
    )
