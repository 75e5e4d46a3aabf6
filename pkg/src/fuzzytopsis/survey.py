"""Study configuration and expert questionnaire ingestion.

Two document types are read here:

* the study config — a JSON document declaring the rating scale, criteria,
  alternatives, optional category grouping, and pipeline defaults;
* the ratings file — long-format CSV with header
  ``expert,alternative,criterion,term``, optionally followed by a blank line
  and a weight-ratings section with header ``expert,criterion,term``.

Parsing validates everything and reports every diagnostic found, not just
the first. Missing data is an error, never imputed: multi-expert
aggregation divides by the expert count, so silent gaps would change its
meaning.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .errors import DecisionError, IngestError
from .scales import LinguisticScale, default_scale, normalize_label
from .tfn import TFN

__all__ = [
    "CriterionSpec",
    "StudyConfig",
    "SurveyDataset",
    "parse_config",
    "parse_survey",
    "serialize_dataset",
    "IDEAL_STRATEGIES",
    "NORMALIZATION_MODES",
    "UNIT_WEIGHT",
]

IDEAL_STRATEGIES = ("paper-fixed", "chen-fixed", "extremal")
NORMALIZATION_MODES = ("relative", "absolute")

UNIT_WEIGHT = TFN(1, 1, 1)

_RATINGS_HEADER = ["expert", "alternative", "criterion", "term"]
_WEIGHTS_HEADER = ["expert", "criterion", "term"]

_CONFIG_KEYS = {
    "name",
    "scale",
    "criteria",
    "alternatives",
    "categories",
    "category_notes",
    "ideal_strategy",
    "normalization",
}


@dataclass(frozen=True)
class CriterionSpec:
    """One ranking criterion: id, optimization direction, and weight source.

    ``weight`` is a fixed triangular number (the default is the crisp unit
    weight). When ``weight_from_survey`` is set, the fixed value is a
    fallback and per-expert weight ratings from the survey are combined
    instead.
    """

    id: str
    direction: str = "benefit"
    weight: TFN = UNIT_WEIGHT
    weight_from_survey: bool = False

    def __post_init__(self):
        if self.direction not in ("benefit", "cost"):
            raise DecisionError(
                "PARSE_ERROR",
                f"criterion {self.id!r}: direction must be 'benefit' or 'cost', "
                f"got {self.direction!r}",
            )
        if self.weight.a < 0:
            raise DecisionError(
                "PARSE_ERROR",
                f"criterion {self.id!r}: fixed weight must be nonnegative, "
                f"got {self.weight.as_tuple()}",
            )


@dataclass(frozen=True)
class StudyConfig:
    """Validated study description.

    ``categories`` is an ordered tuple of (category id, member alternative
    ids); members are disjoint and every member is a declared alternative.
    ``category_notes`` carries free-text caveats rendered with roll-up
    reports.
    """

    scale: LinguisticScale
    criteria: tuple[CriterionSpec, ...]
    alternatives: tuple[str, ...]
    name: str = "study"
    categories: tuple[tuple[str, tuple[str, ...]], ...] = ()
    category_notes: Mapping[str, str] = field(default_factory=dict)
    ideal_strategy: str = "paper-fixed"
    normalization: str = "relative"

    @property
    def criterion_ids(self) -> tuple[str, ...]:
        return tuple(spec.id for spec in self.criteria)

    @property
    def m(self) -> int:
        return len(self.alternatives)

    @property
    def n(self) -> int:
        return len(self.criteria)


@dataclass(frozen=True)
class SurveyDataset:
    """Complete per-expert linguistic ratings for a study.

    ``ratings`` maps (expert, alternative, criterion) to a normalized term
    label and covers every such triple exactly once. ``weight_ratings``
    maps (expert, criterion) to a term for criteria whose weight was
    elicited from the experts.
    """

    config: StudyConfig
    experts: tuple[str, ...]
    ratings: Mapping[tuple[str, str, str], str]
    weight_ratings: Mapping[tuple[str, str], str] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.experts)


def parse_config(text: str) -> StudyConfig:
    """Parse and validate a study config document.

    Raises IngestError carrying every diagnostic found. Defaults applied:
    scale=the built-in five-term scale, direction=benefit, weight=(1,1,1),
    ideal_strategy=paper-fixed, normalization=relative.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IngestError(
            [("PARSE_ERROR", f"config is not valid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}")]
        ) from None

    diags: list[tuple[str, str]] = []
    if not isinstance(raw, dict):
        raise IngestError([("PARSE_ERROR", "config root must be a JSON object")])

    for key in raw:
        if key not in _CONFIG_KEYS:
            diags.append(("PARSE_ERROR", f"unknown config key {key!r}"))

    name = raw.get("name", "study")
    if not isinstance(name, str) or not name:
        diags.append(("PARSE_ERROR", "'name' must be a nonempty string"))
        name = "study"

    scale = _parse_scale(raw.get("scale", "default"), diags)
    criteria = _parse_criteria(raw.get("criteria"), diags)
    alternatives = _parse_alternatives(raw.get("alternatives"), diags)
    categories, notes = _parse_categories(
        raw.get("categories"), raw.get("category_notes"), alternatives, diags
    )

    ideal_strategy = raw.get("ideal_strategy", "paper-fixed")
    if ideal_strategy not in IDEAL_STRATEGIES:
        diags.append(
            ("INVALID_STRATEGY",
             f"ideal_strategy must be one of {list(IDEAL_STRATEGIES)}, got {ideal_strategy!r}")
        )
    normalization = raw.get("normalization", "relative")
    if normalization not in NORMALIZATION_MODES:
        diags.append(
            ("INVALID_STRATEGY",
             f"normalization must be one of {list(NORMALIZATION_MODES)}, got {normalization!r}")
        )

    if scale is not None and criteria:
        if any(spec.direction == "cost" for spec in criteria) and scale.lower_bound <= 0:
            diags.append(
                ("NON_POSITIVE_SCALE_BOUND",
                 "cost criteria divide by rating components, so the scale's lower "
                 f"bound must be > 0, got {scale.lower_bound}")
            )

    if diags:
        raise IngestError(diags)
    return StudyConfig(
        scale=scale,
        criteria=tuple(criteria),
        alternatives=tuple(alternatives),
        name=name,
        categories=categories,
        category_notes=notes,
        ideal_strategy=ideal_strategy,
        normalization=normalization,
    )


def _parse_scale(spec, diags) -> Optional[LinguisticScale]:
    if spec == "default" or spec is None:
        return default_scale()
    if not isinstance(spec, dict):
        diags.append(("PARSE_ERROR", "'scale' must be \"default\" or an object"))
        return default_scale()
    scale_name = spec.get("name", "custom")
    terms = spec.get("terms")
    if not isinstance(terms, list):
        diags.append(("PARSE_ERROR", "'scale.terms' must be a list of [label, a, b, c] entries"))
        return default_scale()
    pairs = []
    for entry in terms:
        if (
            not isinstance(entry, list)
            or len(entry) != 4
            or not isinstance(entry[0], str)
            or not all(isinstance(v, (int, float)) for v in entry[1:])
        ):
            diags.append(("PARSE_ERROR", f"bad scale term entry {entry!r}, expected [label, a, b, c]"))
            return default_scale()
        pairs.append((entry[0], tuple(entry[1:])))
    try:
        return LinguisticScale.from_pairs(scale_name, pairs)
    except DecisionError as exc:
        diags.append((exc.code, f"invalid scale: {exc}"))
        return None


def _parse_criteria(spec, diags) -> list[CriterionSpec]:
    if spec is None or not isinstance(spec, list) or not spec:
        diags.append(("PARSE_ERROR", "'criteria' must be a nonempty list"))
        return []
    out: list[CriterionSpec] = []
    seen: set[str] = set()
    for entry in spec:
        if isinstance(entry, str):
            entry = {"id": entry}
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str) or not entry.get("id"):
            diags.append(("PARSE_ERROR", f"bad criterion entry {entry!r}"))
            continue
        cid = entry["id"]
        if cid in seen:
            diags.append(("DUPLICATE_ID", f"duplicate criterion id {cid!r}"))
            continue
        seen.add(cid)
        unknown = set(entry) - {"id", "direction", "weight"}
        if unknown:
            diags.append(("PARSE_ERROR", f"criterion {cid!r}: unknown keys {sorted(unknown)}"))
            continue
        weight = entry.get("weight")
        fixed, from_survey = UNIT_WEIGHT, False
        if weight == "survey":
            from_survey = True
        elif weight is not None:
            if not (
                isinstance(weight, list)
                and len(weight) == 3
                and all(isinstance(v, (int, float)) for v in weight)
            ):
                diags.append(
                    ("PARSE_ERROR",
                     f"criterion {cid!r}: weight must be [a, b, c] or \"survey\", got {weight!r}")
                )
                continue
            try:
                fixed = TFN(*weight)
            except DecisionError as exc:
                diags.append((exc.code, f"criterion {cid!r}: {exc}"))
                continue
        try:
            out.append(
                CriterionSpec(
                    id=cid,
                    direction=entry.get("direction", "benefit"),
                    weight=fixed,
                    weight_from_survey=from_survey,
                )
            )
        except DecisionError as exc:
            diags.append((exc.code, str(exc)))
    return out


def _parse_alternatives(spec, diags) -> list[str]:
    if spec is None or not isinstance(spec, list):
        diags.append(("PARSE_ERROR", "'alternatives' must be a list of ids"))
        return []
    out: list[str] = []
    seen: set[str] = set()
    for entry in spec:
        if not isinstance(entry, str) or not entry:
            diags.append(("PARSE_ERROR", f"bad alternative id {entry!r}"))
            continue
        if entry in seen:
            diags.append(("DUPLICATE_ID", f"duplicate alternative id {entry!r}"))
            continue
        seen.add(entry)
        out.append(entry)
    if len(out) < 2:
        diags.append(
            ("PARSE_ERROR", f"a study needs at least 2 alternatives to rank, got {len(out)}")
        )
    return out


def _parse_categories(spec, notes_spec, alternatives, diags):
    notes: dict[str, str] = {}
    if spec is None:
        if notes_spec is not None:
            diags.append(("PARSE_ERROR", "'category_notes' given without 'categories'"))
        return (), notes
    if not isinstance(spec, dict):
        diags.append(("PARSE_ERROR", "'categories' must be an object of category -> member list"))
        return (), notes
    alt_set = set(alternatives)
    assigned: dict[str, str] = {}
    out: list[tuple[str, tuple[str, ...]]] = []
    for category, members in spec.items():
        if category in dict(out):
            diags.append(("DUPLICATE_ID", f"duplicate category id {category!r}"))
            continue
        if not isinstance(members, list) or not all(isinstance(x, str) for x in members):
            diags.append(("PARSE_ERROR", f"category {category!r}: members must be a list of ids"))
            continue
        for member in members:
            if member not in alt_set:
                diags.append(
                    ("UNKNOWN_CATEGORY_MEMBER",
                     f"category {category!r} lists unknown alternative {member!r}")
                )
            elif member in assigned:
                diags.append(
                    ("DUPLICATE_ID",
                     f"alternative {member!r} appears in categories "
                     f"{assigned[member]!r} and {category!r}")
                )
            else:
                assigned[member] = category
        out.append((category, tuple(members)))
    if notes_spec is not None:
        if not isinstance(notes_spec, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in notes_spec.items()
        ):
            diags.append(("PARSE_ERROR", "'category_notes' must map category ids to strings"))
        else:
            category_ids = {category for category, _ in out}
            for key, value in notes_spec.items():
                if key not in category_ids:
                    diags.append(("PARSE_ERROR", f"note for unknown category {key!r}"))
                else:
                    notes[key] = value
    return tuple(out), notes


def _split_sections(text: str) -> list[tuple[int, list[str]]]:
    """Split a document into blank-line-separated sections.

    Returns (1-based line number of first line, lines) per section.
    """
    sections: list[tuple[int, list[str]]] = []
    current: list[str] = []
    start = 1
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip() == "":
            if current:
                sections.append((start, current))
                current = []
        else:
            if not current:
                start = lineno
            current.append(line)
    if current:
        sections.append((start, current))
    return sections


def _read_rows(section_lines: list[str], start_line: int, expected_header, diags):
    """Parse one CSV section; returns data rows as (line_number, fields)."""
    reader = csv.reader(section_lines)
    try:
        header = next(reader)
    except StopIteration:
        return None
    if [h.strip().lower() for h in header] != expected_header:
        diags.append(
            ("PARSE_ERROR",
             f"line {start_line}: expected header {','.join(expected_header)!r}, "
             f"got {','.join(header)!r}")
        )
        return None
    rows = []
    for offset, fields in enumerate(reader, start=1):
        lineno = start_line + offset
        if len(fields) != len(expected_header):
            diags.append(
                ("PARSE_ERROR",
                 f"line {lineno}: expected {len(expected_header)} fields, got {len(fields)}")
            )
            continue
        rows.append((lineno, [f.strip() for f in fields]))
    return rows


def parse_survey(text: str, config: StudyConfig) -> SurveyDataset:
    """Parse and validate a ratings document against a study config.

    The expert count is inferred from the distinct expert ids seen. Every
    (expert, alternative, criterion) triple must be rated exactly once;
    the error lists every missing triple. Weight ratings are accepted only
    for criteria declared with ``"weight": "survey"``, and per criterion
    must either cover every expert or be absent entirely (absent falls
    back to the criterion's fixed weight).
    """
    diags: list[tuple[str, str]] = []
    sections = _split_sections(text)
    if not sections:
        raise IngestError([("PARSE_ERROR", "ratings document is empty")])
    if len(sections) > 2:
        diags.append(
            ("PARSE_ERROR",
             f"expected at most 2 sections (ratings, weight ratings), got {len(sections)}")
        )

    crit_ids = set(config.criterion_ids)
    alt_set = set(config.alternatives)
    survey_weighted = {spec.id for spec in config.criteria if spec.weight_from_survey}

    ratings: dict[tuple[str, str, str], str] = {}
    weight_ratings: dict[tuple[str, str], str] = {}
    experts: set[str] = set()

    rating_rows = _read_rows(sections[0][1], sections[0][0], _RATINGS_HEADER, diags)
    if rating_rows is not None:
        for lineno, (expert, alternative, criterion, term) in rating_rows:
            ok = True
            if alternative not in alt_set:
                diags.append(
                    ("UNKNOWN_ALTERNATIVE", f"line {lineno}: unknown alternative {alternative!r}")
                )
                ok = False
            if criterion not in crit_ids:
                diags.append(
                    ("UNKNOWN_CRITERION", f"line {lineno}: unknown criterion {criterion!r}")
                )
                ok = False
            if term not in config.scale:
                diags.append(
                    ("UNKNOWN_TERM",
                     f"line {lineno}: unknown term {term!r}; scale {config.scale.name!r} "
                     f"knows {list(config.scale.labels)}")
                )
                ok = False
            if not ok:
                continue
            experts.add(expert)
            key = (expert, alternative, criterion)
            if key in ratings:
                diags.append(
                    ("DUPLICATE_RATING",
                     f"line {lineno}: duplicate rating for expert {expert!r}, "
                     f"alternative {alternative!r}, criterion {criterion!r}")
                )
                continue
            ratings[key] = normalize_label(term)

    if len(sections) >= 2:
        weight_rows = _read_rows(sections[1][1], sections[1][0], _WEIGHTS_HEADER, diags)
        if weight_rows is not None:
            for lineno, (expert, criterion, term) in weight_rows:
                ok = True
                if criterion not in crit_ids:
                    diags.append(
                        ("UNKNOWN_CRITERION", f"line {lineno}: unknown criterion {criterion!r}")
                    )
                    ok = False
                elif criterion not in survey_weighted:
                    diags.append(
                        ("UNEXPECTED_WEIGHT",
                         f"line {lineno}: criterion {criterion!r} has a fixed weight; "
                         "declare it with \"weight\": \"survey\" to elicit weights")
                    )
                    ok = False
                if term not in config.scale:
                    diags.append(
                        ("UNKNOWN_TERM", f"line {lineno}: unknown term {term!r}")
                    )
                    ok = False
                if not ok:
                    continue
                experts.add(expert)
                key = (expert, criterion)
                if key in weight_ratings:
                    diags.append(
                        ("DUPLICATE_RATING",
                         f"line {lineno}: duplicate weight rating for expert {expert!r}, "
                         f"criterion {criterion!r}")
                    )
                    continue
                weight_ratings[key] = normalize_label(term)

    if not experts and not diags:
        diags.append(("PARSE_ERROR", "ratings section has no data rows"))

    expert_order = tuple(sorted(experts))
    for expert in expert_order:
        for alternative in config.alternatives:
            for criterion in config.criterion_ids:
                if (expert, alternative, criterion) not in ratings:
                    diags.append(
                        ("INCOMPLETE",
                         f"missing rating for expert {expert!r}, alternative "
                         f"{alternative!r}, criterion {criterion!r}")
                    )
    rated_weights = {criterion for _, criterion in weight_ratings}
    for criterion in sorted(rated_weights):
        for expert in expert_order:
            if (expert, criterion) not in weight_ratings:
                diags.append(
                    ("INCOMPLETE",
                     f"missing weight rating for expert {expert!r}, criterion {criterion!r}")
                )

    if diags:
        raise IngestError(diags)
    return SurveyDataset(
        config=config,
        experts=expert_order,
        ratings=ratings,
        weight_ratings=weight_ratings,
    )


def serialize_dataset(dataset: SurveyDataset) -> str:
    """Canonical text form of a dataset: sorted rows, LF endings.

    ``parse_survey(serialize_dataset(d), d.config)`` reproduces ``d``
    exactly; serializing again yields byte-identical text.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_RATINGS_HEADER)
    for (expert, alternative, criterion), term in sorted(dataset.ratings.items()):
        writer.writerow([expert, alternative, criterion, term])
    if dataset.weight_ratings:
        out.write("\n")
        writer.writerow(_WEIGHTS_HEADER)
        for (expert, criterion), term in sorted(dataset.weight_ratings.items()):
            writer.writerow([expert, criterion, term])
    return out.getvalue()
