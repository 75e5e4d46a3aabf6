"""Tests for the ranking pipeline steps."""

import json

import numpy as np
import pytest

from fuzzytopsis import (
    CriterionSpec,
    DecisionError,
    FuzzyDecisionMatrix,
    TFN,
    default_scale,
    parse_config,
    parse_survey,
    run_pipeline,
)
from fuzzytopsis.engine import (
    apply_weights,
    assemble_matrix,
    closeness,
    combine_weights,
    compute_distances,
    compute_ideals,
    normalize,
    rank_by_closeness,
)

from util import make_study


def matrix_of(cells, directions=None, stage="raw"):
    rows = [[TFN(*cell) for cell in row] for row in cells]
    n = len(rows[0])
    directions = directions or ["benefit"] * n
    return FuzzyDecisionMatrix(
        alternatives=tuple(f"A{i + 1}" for i in range(len(rows))),
        criteria=tuple(CriterionSpec(id=f"C{j + 1}", direction=directions[j]) for j in range(n)),
        cells=tuple(tuple(row) for row in rows),
        stage=stage,
    )


@pytest.fixture
def study_config():
    return parse_config(json.dumps({"criteria": ["quality"], "alternatives": ["A", "B"]}))


# --- matrix assembly -------------------------------------------------------

def test_assemble_combines_terms(study_config):
    text = (
        "expert,alternative,criterion,term\n"
        "e1,A,quality,weak\n"
        "e1,B,quality,very high\n"
        "e2,A,quality,medium\n"
        "e2,B,quality,very high\n"
        "e3,A,quality,high\n"
        "e3,B,quality,very high\n"
    )
    matrix = assemble_matrix(parse_survey(text, study_config))
    assert matrix.cells[0][0] == TFN(1, 5, 9)  # min/mean/max of (1,3,5),(3,5,7),(5,7,9)
    assert matrix.cells[1][0] == TFN(7, 9, 9)


def test_assemble_single_expert_is_verbatim(study_config):
    text = "expert,alternative,criterion,term\ne1,A,quality,weak\ne1,B,quality,high\n"
    matrix = assemble_matrix(parse_survey(text, study_config))
    assert matrix.cells[0][0] == TFN(1, 3, 5)
    assert matrix.cells[1][0] == TFN(5, 7, 9)


# --- weights ----------------------------------------------------------------

def test_combine_weights_defaults_to_unit(study_config):
    text = "expert,alternative,criterion,term\ne1,A,quality,weak\ne1,B,quality,high\n"
    dataset = parse_survey(text, study_config)
    assert combine_weights(dataset) == (TFN(1, 1, 1),)


def test_combine_weights_aggregates_terms():
    config = parse_config(
        json.dumps({"criteria": [{"id": "q", "weight": "survey"}], "alternatives": ["A", "B"]})
    )
    text = (
        "expert,alternative,criterion,term\n"
        "e1,A,q,weak\ne1,B,q,high\ne2,A,q,weak\ne2,B,q,high\n"
        "\n"
        "expert,criterion,term\n"
        "e1,q,medium\ne2,q,high\n"
    )
    dataset = parse_survey(text, config)
    assert combine_weights(dataset) == (TFN(3, 6, 9),)  # min/mean/max of (3,5,7),(5,7,9)


def test_combine_weights_fixed_pass_through():
    config = parse_config(
        json.dumps(
            {"criteria": [{"id": "q", "weight": [0.5, 0.5, 0.5]}], "alternatives": ["A", "B"]}
        )
    )
    text = "expert,alternative,criterion,term\ne1,A,q,weak\ne1,B,q,high\n"
    assert combine_weights(parse_survey(text, config)) == (TFN(0.5, 0.5, 0.5),)


# --- normalization ----------------------------------------------------------

def test_normalize_benefit_divides_by_column_max():
    matrix = matrix_of([[(3, 7.133, 9)], [(1, 5, 9)]])
    normalized = normalize(matrix)
    assert normalized.stage == "normalized"
    assert normalized.cells[0][0].as_tuple() == pytest.approx((0.3333, 0.7926, 1.0), abs=5e-5)


def test_normalize_benefit_self_normalizes_max_row():
    matrix = matrix_of([[(2, 3, 5)], [(5, 5, 5)]])
    normalized = normalize(matrix)
    assert normalized.cells[1][0] == TFN(1, 1, 1)


def test_normalize_cost_branch():
    matrix = matrix_of([[(2, 4, 5)], [(1, 2, 3)]], directions=["cost"])
    normalized = normalize(matrix)
    assert normalized.cells[0][0].as_tuple() == pytest.approx((0.2, 0.25, 0.5), rel=1e-12)


def test_normalize_cost_rejects_zero_component():
    matrix = matrix_of([[(0, 1, 2)], [(1, 2, 3)]], directions=["cost"])
    with pytest.raises(DecisionError) as err:
        normalize(matrix)
    assert err.value.code == "COST_DIVIDE_BY_ZERO"


def test_normalize_absolute_uses_scale_bounds():
    matrix = matrix_of([[(1, 3, 5)], [(3, 5, 7)]])
    normalized = normalize(matrix, "absolute", default_scale())
    assert normalized.cells[0][0].as_tuple() == pytest.approx((1 / 9, 3 / 9, 5 / 9), rel=1e-12)


def test_normalize_relative_bounds_property():
    rng = np.random.default_rng(17)
    for _ in range(50):
        m, n = int(rng.integers(2, 6)), int(rng.integers(1, 4))
        cells = []
        for _ in range(m):
            row = []
            for _ in range(n):
                a, b, c = sorted(rng.uniform(0.5, 10, 3))
                row.append((a, b, c))
            cells.append(row)
        normalized = normalize(matrix_of(cells))
        for j in range(n):
            column = [normalized.cells[i][j] for i in range(m)]
            assert max(v.c for v in column) == pytest.approx(1.0, rel=1e-12)
            for v in column:
                assert 0 < v.a <= v.b <= v.c <= 1 + 1e-12


def test_normalize_rejects_wrong_stage():
    normalized = normalize(matrix_of([[(1, 2, 3)], [(2, 3, 4)]]))
    with pytest.raises(DecisionError) as err:
        normalize(normalized)
    assert err.value.code == "WRONG_STAGE"


# --- weighting ---------------------------------------------------------------

def test_apply_weights_identity():
    normalized = normalize(matrix_of([[(1, 2, 3)], [(2, 3, 4)]]))
    weighted = apply_weights(normalized, [TFN(1, 1, 1)])
    assert weighted.stage == "weighted"
    assert weighted.cells == normalized.cells


def test_apply_weights_componentwise():
    matrix = matrix_of([[(0.2, 0.4, 0.6)], [(0.1, 0.2, 0.3)]], stage="normalized")
    weighted = apply_weights(matrix, [TFN(0.5, 0.7, 0.9)])
    assert weighted.cells[0][0].as_tuple() == pytest.approx((0.1, 0.28, 0.54), rel=1e-12)


def test_apply_weights_dimension_mismatch():
    normalized = normalize(matrix_of([[(1, 2, 3), (1, 2, 3)], [(2, 3, 4), (2, 3, 4)]]))
    with pytest.raises(DecisionError) as err:
        apply_weights(normalized, [TFN(1, 1, 1)] * 3)
    assert err.value.code == "DIMENSION_MISMATCH"


def test_apply_weights_rejects_raw_matrix():
    with pytest.raises(DecisionError) as err:
        apply_weights(matrix_of([[(1, 2, 3)], [(2, 3, 4)]]), [TFN(1, 1, 1)])
    assert err.value.code == "WRONG_STAGE"


# --- ideals -------------------------------------------------------------------

def weighted_fixture():
    return matrix_of([[(0.2, 0.4, 0.6)], [(0.3, 0.5, 0.9)]], stage="weighted")


def test_ideals_fixed_ratio_strategy():
    ideals = compute_ideals(weighted_fixture(), "paper-fixed", default_scale())
    assert ideals.positive[0] == TFN(1, 1, 1)
    assert ideals.negative[0].as_tuple() == pytest.approx((0.111, 0.111, 0.111), abs=5e-4)


def test_ideals_chen_strategy():
    ideals = compute_ideals(weighted_fixture(), "chen-fixed")
    assert ideals.negative[0] == TFN(0, 0, 0)
    assert ideals.positive[0] == TFN(1, 1, 1)


def test_ideals_extremal_strategy():
    ideals = compute_ideals(weighted_fixture(), "extremal")
    assert ideals.positive[0] == TFN(0.3, 0.5, 0.9)
    assert ideals.negative[0] == TFN(0.2, 0.4, 0.6)


def test_ideals_require_weighted_stage():
    with pytest.raises(DecisionError) as err:
        compute_ideals(matrix_of([[(1, 2, 3)], [(2, 3, 4)]]), "chen-fixed")
    assert err.value.code == "WRONG_STAGE"


def test_ideals_unknown_strategy():
    with pytest.raises(DecisionError) as err:
        compute_ideals(weighted_fixture(), "best-of")
    assert err.value.code == "INVALID_STRATEGY"


# --- distances and closeness ----------------------------------------------------

def test_distances_match_published_row():
    matrix = matrix_of([[(0.3333, 0.7926, 1.0)], [(0.1111, 0.65, 1.0)]], stage="weighted")
    ideals = compute_ideals(matrix, "paper-fixed", default_scale())
    (s1_plus, s1_minus), (s2_plus, s2_minus) = compute_distances(matrix, ideals)
    assert s1_plus == pytest.approx(0.403, abs=1e-3)
    assert s1_minus == pytest.approx(0.659, abs=1e-3)
    assert s2_plus == pytest.approx(0.551, abs=1e-3)
    assert s2_minus == pytest.approx(0.600, abs=1e-3)


def test_distance_zero_on_ideal_row():
    matrix = matrix_of([[(1, 1, 1)], [(0.5, 0.6, 0.7)]], stage="weighted")
    ideals = compute_ideals(matrix, "chen-fixed")
    assert compute_distances(matrix, ideals)[0][0] == 0.0


def test_distances_dimension_mismatch():
    matrix = weighted_fixture()
    ideals = compute_ideals(
        matrix_of([[(0.1, 0.2, 0.3), (0.1, 0.2, 0.3)]], stage="weighted"), "chen-fixed"
    )
    with pytest.raises(DecisionError) as err:
        compute_distances(matrix, ideals)
    assert err.value.code == "DIMENSION_MISMATCH"


def test_closeness_published_value():
    assert closeness(0.403, 0.659) == pytest.approx(0.620, abs=1e-3)


def test_closeness_boundaries():
    assert closeness(1.7, 0.0) == 0.0
    assert closeness(0.0, 0.4) == 1.0


def test_closeness_degenerate():
    with pytest.raises(DecisionError) as err:
        closeness(0.0, 0.0)
    assert err.value.code == "DEGENERATE_ALTERNATIVE"


# --- ranking -----------------------------------------------------------------

def test_rank_simple_descending():
    assert rank_by_closeness([0.620, 0.613, 0.531]) == [1, 2, 3]


def test_rank_competition_style():
    assert rank_by_closeness([0.5, 0.5, 0.4]) == [1, 1, 3]


def test_rank_all_equal():
    assert rank_by_closeness([0.7, 0.7, 0.7]) == [1, 1, 1]


def test_rank_epsilon_groups_near_ties():
    assert rank_by_closeness([0.500, 0.4995, 0.490], tie_epsilon=1e-3) == [1, 1, 3]


def test_rank_epsilon_anchors_at_group_leader():
    # 0.498 is within epsilon of 0.4995 but not of the group leader 0.500
    assert rank_by_closeness([0.500, 0.4995, 0.498], tie_epsilon=1e-3) == [1, 1, 3]


# --- whole pipeline -----------------------------------------------------------

def test_pipeline_scale_order_is_respected():
    # one alternative per term: ranking must follow the scale order
    scale = default_scale()
    cells = [[value.as_tuple()] for _, value in scale.terms]
    matrix = matrix_of(cells)
    result = run_pipeline(matrix)
    ranks = {row.alternative: row.rank for row in result.rows}
    # A5 is "very high", A1 "very low"
    assert [ranks[f"A{i}"] for i in (5, 4, 3, 2, 1)] == [1, 2, 3, 4, 5]


def test_pipeline_duplicate_alternatives_tie_exactly():
    matrix = matrix_of([[(1, 5, 9)], [(1, 5, 9)], [(3, 7, 9)]])
    result = run_pipeline(matrix)
    r1 = result.row_for("A1")
    r2 = result.row_for("A2")
    assert (r1.s_plus, r1.s_minus, r1.cc, r1.rank) == (r2.s_plus, r2.s_minus, r2.cc, r2.rank)


def test_pipeline_permuting_alternatives_permutes_rows():
    rng = np.random.default_rng(31)
    for _ in range(20):
        study = make_study(rng)
        result = run_pipeline(study)
        base = {row.alternative: (row.s_plus, row.s_minus, row.cc, row.rank) for row in result.rows}
        order = list(study.config.alternatives)
        rng.shuffle(order)
        permuted_config = parse_config(
            json.dumps(
                {
                    "criteria": [spec.id for spec in study.config.criteria],
                    "alternatives": order,
                }
            )
        )
        permuted = type(study)(
            config=permuted_config,
            experts=study.experts,
            ratings=study.ratings,
            weight_ratings=study.weight_ratings,
        )
        again = run_pipeline(permuted)
        assert {
            row.alternative: (row.s_plus, row.s_minus, row.cc, row.rank) for row in again.rows
        } == base


def test_pipeline_rows_sorted_by_rank_and_cc_nonincreasing():
    rng = np.random.default_rng(37)
    for _ in range(20):
        result = run_pipeline(make_study(rng))
        ranks = [row.rank for row in result.rows]
        ccs = [row.cc for row in result.rows]
        assert ranks == sorted(ranks)
        assert all(hi >= lo for hi, lo in zip(ccs, ccs[1:]))
        assert all(0.0 <= cc <= 1.0 for cc in ccs)


def test_pipeline_degenerate_when_extremal_ideals_collapse():
    matrix = matrix_of([[(1, 5, 9)], [(1, 5, 9)]])
    with pytest.raises(DecisionError) as err:
        run_pipeline(matrix, ideal_strategy="extremal")
    assert err.value.code == "DEGENERATE_ALTERNATIVE"


def test_pipeline_round_before_rank_groups_displayed_ties():
    matrix = matrix_of([[(1, 5.066, 9)], [(1, 5.0661, 9)], [(3, 7.133, 9)]])
    exact = run_pipeline(matrix)
    rounded = run_pipeline(matrix, round_cc_to=3)
    assert [row.rank for row in exact.rows] == [1, 2, 3]
    assert {row.alternative: row.rank for row in rounded.rows} == {"A3": 1, "A1": 2, "A2": 2}
    assert "rounded to 3 decimals" in rounded.tie_policy


def test_pipeline_stage_discipline_via_prenormalized_input():
    matrix = matrix_of([[(0.1, 0.2, 0.3)], [(0.2, 0.3, 0.4)]], stage="normalized")
    with pytest.raises(DecisionError) as err:
        run_pipeline(matrix)
    assert err.value.code == "WRONG_STAGE"
