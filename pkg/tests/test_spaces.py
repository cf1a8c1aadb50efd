import pytest

from partialmetric import SpaceError, check_axioms
from partialmetric.core import Family
from partialmetric.spaces import (
    CATALOG,
    SENTINEL,
    CatalogSpec,
    build_space,
    lift_evaluator,
    numeric_evaluator,
    point_label,
    sample_real_space,
)


def test_labels():
    assert [point_label(x) for x in (0.0, -0.0, 1.0, 0.5, -2.5, 0.1)] == ["0", "0", "1", "0.5", "-2.5", "0.1"]


def test_sample_points_and_labels():
    sp = sample_real_space("max_partial", 0, 1, 3)
    assert sp.elements == ("0", "0.5", "1")


def test_augmented_sample():
    sp = build_space(CatalogSpec("augmented_real_line", (0, 0.3, 1)))
    assert sp.elements == (SENTINEL, "0", "0.3", "1")
    assert sp.value("@a", "0.3") == pytest.approx(0.3)
    assert sp.value("0", "1") == 0
    assert sp.value("1", "1") == -1


def test_unit_n_tuples():
    sp = build_space(CatalogSpec("unit_n", (4, 3)))
    assert sp.value("0", "0", "0", "0") == 0
    assert sp.value("0", "0", "1", "2") == 1
    assert sp.kind.family is Family.N_METRIC


def test_pairwise_arity_maps_to_pairwise_kind():
    assert build_space(CatalogSpec("unit_n", (2, 3))).kind.family is Family.METRIC
    assert build_space(CatalogSpec("discrete_pm11", (2, 3))).kind.family is Family.PARTIAL_METRIC


@pytest.mark.parametrize(
    "spec",
    [
        CatalogSpec("basic_partial"),
        CatalogSpec("max_partial", (-1, 0, 2.5)),
        CatalogSpec("augmented_real_line", (-1, 0, 2.5)),
        CatalogSpec("positive_real_strong", (0.4, 1, 2)),
        CatalogSpec("unit_n", (3, 4)),
        CatalogSpec("five_metric_negative"),
        CatalogSpec("discrete_pm11", (4, 3)),
        CatalogSpec("max_partial_n", (3, -1, 0, 1.5)),
    ],
)
def test_catalog_members_are_valid(spec):
    assert check_axioms(build_space(spec)).overall


def test_every_catalog_name_builds():
    params = {"unit_n": (3, 2), "discrete_pm11": (3, 2), "max_partial_n": (3, 1, 2)}
    for name in CATALOG:
        build_space(CatalogSpec(name, params.get(name, (1, 2))))


def test_bad_params():
    with pytest.raises(SpaceError):
        build_space(CatalogSpec("positive_real_strong", (0, 1)))
    with pytest.raises(SpaceError):
        build_space(CatalogSpec("max_partial", (1, 1)))
    with pytest.raises(SpaceError):
        build_space(CatalogSpec("unit_n", (1, 3)))
    with pytest.raises(SpaceError):
        CatalogSpec("nope")


def test_numeric_agrees_with_finite():
    pts = (-1.0, 0.0, 0.5, 2.0)
    sp = build_space(CatalogSpec("augmented_real_line", pts))
    ev = numeric_evaluator("augmented_real_line")
    carrier = [SENTINEL, *pts]
    for x, lx in zip(carrier, sp.elements):
        for y, ly in zip(carrier, sp.elements):
            assert ev(x, y) == sp.value(lx, ly)


def test_numeric_max_any_arity():
    ev = numeric_evaluator("max_partial", 4)
    assert ev(1, 3, 2, -5) == 3


def test_lift_evaluator_matches_lift():
    ev = lift_evaluator(numeric_evaluator("abs_metric"), 3)
    assert ev(0, 1, 2) == 4
