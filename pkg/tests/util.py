"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import numpy as np

from fuzzytopsis import CriterionSpec, StudyConfig, SurveyDataset, TFN, default_scale


def random_tfn(rng: np.random.Generator, lo: float = -10.0, hi: float = 10.0) -> TFN:
    a, b, c = sorted(rng.uniform(lo, hi, 3))
    return TFN(a, b, c)


def make_study(
    rng: np.random.Generator,
    m: int | None = None,
    n: int | None = None,
    k: int | None = None,
) -> SurveyDataset:
    """A small random study on the default scale, all-benefit criteria."""
    m = m or int(rng.integers(2, 6))
    n = n or int(rng.integers(1, 4))
    k = k or int(rng.integers(1, 5))
    scale = default_scale()
    config = StudyConfig(
        scale=scale,
        criteria=tuple(CriterionSpec(id=f"C{j + 1}") for j in range(n)),
        alternatives=tuple(f"A{i + 1}" for i in range(m)),
    )
    experts = tuple(f"e{t + 1}" for t in range(k))
    labels = scale.labels
    ratings = {
        (expert, alternative, spec.id): labels[int(rng.integers(len(labels)))]
        for expert in experts
        for alternative in config.alternatives
        for spec in config.criteria
    }
    return SurveyDataset(config=config, experts=experts, ratings=ratings)


def upgraded_study(dataset: SurveyDataset, key) -> SurveyDataset | None:
    """Copy of the study with one rating raised to the next-higher term.

    Returns None when the rating is already the top term.
    """
    labels = dataset.config.scale.labels
    idx = labels.index(dataset.ratings[key])
    if idx + 1 == len(labels):
        return None
    ratings = dict(dataset.ratings)
    ratings[key] = labels[idx + 1]
    return SurveyDataset(
        config=dataset.config,
        experts=dataset.experts,
        ratings=ratings,
        weight_ratings=dataset.weight_ratings,
    )


def crisp_topsis_cc(
    values: np.ndarray, directions: list[str], weights: np.ndarray
) -> np.ndarray:
    """Plain-float classical TOPSIS with fixed ideals at 1 and 0.

    Linear max/min column normalization, city-block aggregation across
    criteria. Written against numpy arrays only, independently of the
    fuzzy pipeline, to serve as its oracle on crisp data.
    """
    values = np.asarray(values, dtype=float)
    r = np.empty_like(values)
    for j, direction in enumerate(directions):
        column = values[:, j]
        r[:, j] = column / column.max() if direction == "benefit" else column.min() / column
    v = r * np.asarray(weights, dtype=float)
    s_plus = np.abs(v - 1.0).sum(axis=1)
    s_minus = np.abs(v).sum(axis=1)
    return s_minus / (s_minus + s_plus)
