import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partialmetric.sequences import (
    DistanceEvaluator,
    NotCauchyError,
    check_cauchy_pair,
    check_limit,
    check_special_limit,
    classify_cauchy,
    default_window,
    limit_deviation,
)
from partialmetric.spaces import CatalogSpec, build_space, numeric_evaluator

AUG = numeric_evaluator("augmented_real_line")
MAX = numeric_evaluator("max_partial")
HALVES = [0.5**i for i in range(31)]


def test_default_window():
    assert default_window(31) == 11
    assert default_window(6) == 5
    assert default_window(3) == 3


def test_halves_on_augmented_line():
    v = classify_cauchy(AUG, HALVES, 1e-6, 10)
    assert v.is_cauchy and v.window == 10
    assert abs(v.central_distance + 1) <= 1e-6
    assert check_limit(AUG, HALVES, 0.0, 1e-6, 10)
    assert check_limit(AUG, HALVES, "@a", 1e-6, 10)
    assert check_special_limit(AUG, HALVES, 0.0, 1e-6, 10)
    assert not check_special_limit(AUG, HALVES, "@a", 1e-6, 10)
    # p(5, x) - p(5, 5) = |5 - x|
    assert limit_deviation(AUG, HALVES, 5.0, 10) == pytest.approx(5 - 0.5**21)
    assert not check_limit(AUG, HALVES, 5.0, 1e-6, 10)


def test_tight_tolerance_rejects_slow_tail():
    assert not classify_cauchy(AUG, HALVES, 1e-9, 10).is_cauchy


def test_alternating_basic_partial():
    ev = DistanceEvaluator.from_space(build_space(CatalogSpec("basic_partial")))
    v = classify_cauchy(ev, ["x", "y"] * 10)
    assert not v.is_cauchy
    assert v.central_distance == 1
    assert v.max_tail_deviation == 1


def test_special_limit_needs_cauchy():
    ev = DistanceEvaluator.from_space(build_space(CatalogSpec("basic_partial")))
    with pytest.raises(NotCauchyError):
        check_special_limit(ev, ["x", "y"] * 10, "x")


def test_window_errors():
    with pytest.raises(ValueError):
        classify_cauchy(MAX, [1.0, 0.5], window=3)
    with pytest.raises(ValueError):
        classify_cauchy(MAX, [1.0])


def test_cauchy_pair_examples():
    xs = [0.5**i for i in range(31)]
    ys = [1.0] * 31
    assert not check_cauchy_pair(MAX, xs, ys, 1e-6, 10).is_cauchy
    zs = [3.0**-i for i in range(31)]
    v = check_cauchy_pair(MAX, xs, zs, 1e-6, 10)
    assert v.is_cauchy and abs(v.central_distance) <= 1e-6


def test_constant_sequence():
    v = classify_cauchy(MAX, [2.0] * 6)
    assert v.is_cauchy and v.central_distance == 2


@settings(max_examples=100, deadline=None)
@given(
    st.floats(-3, 3),
    st.floats(0.05, 0.5),
    st.floats(-2, 2),
    st.sampled_from(["max_partial", "augmented_real_line", "abs_metric"]),
)
def test_orientations_agree(start, ratio, target, name):
    ev = numeric_evaluator(name)
    pts = [target + start * ratio**i for i in range(40)]
    a = classify_cauchy(ev, pts, 1e-9)
    b = classify_cauchy(ev, pts, 1e-9, mirrored=True)
    assert a.is_cauchy == b.is_cauchy


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 0.5), st.floats(-2, 2), st.floats(-3, 3), st.floats(-3, 3))
def test_special_limits_are_unique(ratio, target, s1, s2):
    ev = numeric_evaluator("max_partial")
    pts = [target + abs(s1) * ratio**i for i in range(60)]
    candidates = [target, target + 1e-3, target - 1e-3, s2]
    special = [c for c in candidates if check_special_limit(ev, pts, c)]
    assert target in special
    assert all(abs(c - target) <= 1e-9 for c in special)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 0.5), st.floats(0.05, 0.5), st.floats(-2, 2))
def test_pair_implies_each_cauchy(q1, q2, target):
    ev = numeric_evaluator("max_partial")
    xs = [target + q1**i for i in range(60)]
    ys = [target + q2**i for i in range(60)]
    tol = 1e-9
    pair = check_cauchy_pair(ev, xs, ys, tol)
    assert pair.is_cauchy
    for seq in (xs, ys):
        v = classify_cauchy(ev, seq, tol)
        assert v.is_cauchy and abs(v.central_distance - pair.central_distance) <= 2 * tol


def test_nary_pair_lower_bound_uses_same_index():
    ev = numeric_evaluator("max_partial", 3)
    xs = [0.5**i for i in range(30)]
    v = check_cauchy_pair(ev, xs, xs, 1e-6)
    assert v.is_cauchy
