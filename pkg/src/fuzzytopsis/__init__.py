"""Fuzzy multi-criteria decision engine.

Ranks alternatives from multi-expert linguistic assessments: ratings on a
linguistic scale are encoded as triangular fuzzy numbers, combined across
experts, normalized, weighted, and scored by closeness to fixed or
data-driven ideal points.
"""

from .engine import (
    FuzzyDecisionMatrix,
    IdealPair,
    RankingResult,
    RankingRow,
    assemble_matrix,
    combine_weights,
    run_pipeline,
)
from .errors import DecisionError, IngestError
from .fixtures import fixture_path, fixture_text, list_fixtures
from .matrix_io import parse_matrix, serialize_matrix
from .rollup import CategoryMap, rollup
from .scales import LinguisticScale, default_scale
from .survey import (
    CriterionSpec,
    StudyConfig,
    SurveyDataset,
    parse_config,
    parse_survey,
    serialize_dataset,
)
from .tfn import TFN, TriangularFuzzyNumber

__version__ = "0.1.0"

__all__ = [
    "TFN",
    "TriangularFuzzyNumber",
    "LinguisticScale",
    "default_scale",
    "DecisionError",
    "IngestError",
    "CriterionSpec",
    "StudyConfig",
    "SurveyDataset",
    "parse_config",
    "parse_survey",
    "serialize_dataset",
    "parse_matrix",
    "serialize_matrix",
    "FuzzyDecisionMatrix",
    "IdealPair",
    "RankingRow",
    "RankingResult",
    "assemble_matrix",
    "combine_weights",
    "run_pipeline",
    "CategoryMap",
    "rollup",
    "fixture_path",
    "fixture_text",
    "list_fixtures",
    "FuzzyTopsisRanker",
]


def __getattr__(name):
    # scikit-learn import is deferred so library/CLI use stays light
    if name == "FuzzyTopsisRanker":
        from .estimator import FuzzyTopsisRanker

        return FuzzyTopsisRanker
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
