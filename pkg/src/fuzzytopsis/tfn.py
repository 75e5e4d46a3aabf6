"""Triangular fuzzy number arithmetic.

Every quantity the ranking pipeline manipulates — linguistic ratings,
criterion weights, normalized and weighted matrix cells — is a triangular
fuzzy number stored as its vertex triple (a, b, c). All operations here are
pure functions on immutable values and bitwise deterministic for a given
input order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import DecisionError

__all__ = [
    "TriangularFuzzyNumber",
    "TFN",
    "multiply",
    "scale_divide",
    "vertex_distance",
    "aggregate",
]


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Vertex triple (a, b, c) with a <= b <= c and all components finite.

    ``a`` and ``c`` bound the support, ``b`` is the modal point. Degenerate
    (crisp) numbers with a == b == c are first-class values; violations of
    the vertex order are an error, never silently reordered.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        a, b, c = float(self.a), float(self.b), float(self.c)
        if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(c)):
            raise DecisionError(
                "NON_FINITE", f"vertices must be finite, got ({self.a}, {self.b}, {self.c})"
            )
        if not (a <= b <= c):
            raise DecisionError(
                "ORDER_VIOLATION",
                f"vertices must satisfy a <= b <= c, got ({self.a}, {self.b}, {self.c})",
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    @property
    def is_crisp(self) -> bool:
        return self.a == self.b == self.c


TFN = TriangularFuzzyNumber


def multiply(x: TFN, y: TFN) -> TFN:
    """Component-wise product of two nonnegative triangular numbers.

    Both operands must have all components >= 0: the component-wise product
    does not preserve vertex order for mixed signs.
    """
    for operand in (x, y):
        if operand.a < 0:
            raise DecisionError(
                "NEGATIVE_OPERAND",
                f"component-wise product requires nonnegative operands, got {operand.as_tuple()}",
            )
    return TFN(x.a * y.a, x.b * y.b, x.c * y.c)


def scale_divide(x: TFN, d: float) -> TFN:
    """Divide every vertex by a positive scalar."""
    if not d > 0:
        raise DecisionError("NON_POSITIVE_DIVISOR", f"divisor must be > 0, got {d}")
    return TFN(x.a / d, x.b / d, x.c / d)


def vertex_distance(x: TFN, y: TFN) -> float:
    """Root-mean-square distance across the three vertices.

    A scaled Euclidean metric on the vertex triples: nonnegative, zero
    exactly when the operands are component-wise equal.
    """
    return math.sqrt(
        ((x.a - y.a) ** 2 + (x.b - y.b) ** 2 + (x.c - y.c) ** 2) / 3.0
    )


def aggregate(ratings: Iterable[TFN]) -> TFN:
    """Combine several assessments of one quantity into a single number.

    Takes the minimum of the lower vertices, the arithmetic mean of the
    modal vertices, and the maximum of the upper vertices. The mean uses
    compensated summation, so the result is bitwise independent of input
    order.
    """
    items = list(ratings)
    if not items:
        raise DecisionError("EMPTY_INPUT", "cannot aggregate an empty sequence of ratings")
    return TFN(
        min(r.a for r in items),
        math.fsum(r.b for r in items) / len(items),
        max(r.c for r in items),
    )
