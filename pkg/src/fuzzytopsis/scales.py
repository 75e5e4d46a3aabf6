"""Linguistic rating scales and their fuzzy-number encodings.

A scale is an ordered list of terms ("very low" .. "very high"), each bound
to a triangular fuzzy number. The default five-term scale spans 1..9; custom
scales can be declared in a study config and are validated for monotonicity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DecisionError
from .tfn import TFN

__all__ = ["LinguisticScale", "normalize_label", "default_scale", "DEFAULT_SCALE_NAME"]

DEFAULT_SCALE_NAME = "default-5"

_DEFAULT_TERMS = (
    ("very low", (1, 1, 3)),
    ("weak", (1, 3, 5)),
    ("medium", (3, 5, 7)),
    ("high", (5, 7, 9)),
    ("very high", (7, 9, 9)),
)


def normalize_label(label: str) -> str:
    """Trim, collapse internal whitespace, and lowercase a term label."""
    return " ".join(label.split()).lower()


@dataclass(frozen=True)
class LinguisticScale:
    """Ordered term -> triangular-number map with global bounds.

    Invariants, enforced on construction: at least two terms, labels unique
    after normalization, and vertex-wise monotone term values (weakly
    increasing in every vertex, strictly in at least one) between
    consecutive terms.
    """

    name: str
    terms: tuple[tuple[str, TFN], ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.terms) < 2:
            raise DecisionError(
                "TOO_FEW_TERMS", f"a scale needs at least 2 terms, got {len(self.terms)}"
            )
        index: dict[str, TFN] = {}
        for label, value in self.terms:
            if label != normalize_label(label):
                raise DecisionError(
                    "DUPLICATE_TERM", f"term label {label!r} is not in normalized form"
                )
            if label in index:
                raise DecisionError("DUPLICATE_TERM", f"duplicate term label {label!r}")
            index[label] = value
        for (lo_label, lo), (hi_label, hi) in zip(self.terms, self.terms[1:]):
            weakly = lo.a <= hi.a and lo.b <= hi.b and lo.c <= hi.c
            strictly = lo.a < hi.a or lo.b < hi.b or lo.c < hi.c
            if not (weakly and strictly):
                raise DecisionError(
                    "NON_MONOTONE_SCALE",
                    f"term {hi_label!r} {hi.as_tuple()} does not increase over "
                    f"{lo_label!r} {lo.as_tuple()}",
                )
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_pairs(
        cls, name: str, pairs: Iterable[tuple[str, Sequence[float]]]
    ) -> "LinguisticScale":
        """Build and validate a scale from raw (label, (a, b, c)) pairs."""
        terms = tuple(
            (normalize_label(label), value if isinstance(value, TFN) else TFN(*value))
            for label, value in pairs
        )
        return cls(name, terms)

    def to_pairs(self) -> list[tuple[str, tuple[float, float, float]]]:
        """Serializable form; ``from_pairs`` of the result is the identity."""
        return [(label, value.as_tuple()) for label, value in self.terms]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.terms)

    @property
    def lower_bound(self) -> float:
        return min(value.a for _, value in self.terms)

    @property
    def upper_bound(self) -> float:
        return max(value.c for _, value in self.terms)

    def to_tfn(self, label: str) -> TFN:
        """Case-insensitive, whitespace-trimmed lookup of a term's value."""
        key = normalize_label(label)
        try:
            return self._index[key]
        except KeyError:
            raise DecisionError(
                "UNKNOWN_TERM",
                f"unknown term {label!r}; scale {self.name!r} knows {list(self.labels)}",
            ) from None

    def __contains__(self, label: str) -> bool:
        return normalize_label(label) in self._index


_DEFAULT_SCALE = LinguisticScale.from_pairs(DEFAULT_SCALE_NAME, _DEFAULT_TERMS)


def default_scale() -> LinguisticScale:
    """The built-in five-term scale: very low (1,1,3) .. very high (7,9,9)."""
    return _DEFAULT_SCALE
