import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partialmetric import SpaceError, check_axioms
from partialmetric.alignment import (
    ScoringScheme,
    best_alignment,
    multi_score,
    score_columns,
    score_pair,
    space_from_words,
    validate_scheme,
)

from oracles import alignments, brute_score, column

BASE = ScoringScheme("ACGT", -1, 1, 2)


def test_worked_example():
    res = best_alignment("CGATC", "CAGA", BASE)
    assert res.score == 2
    assert sum(res.column_scores) == 2
    assert score_columns(res.aligned_x, res.aligned_y, BASE) == list(res.column_scores)
    assert res.aligned_x.replace("-", "") == "CGATC"
    assert res.aligned_y.replace("-", "") == "CAGA"


def test_suboptimal_seven_columns():
    cols = score_columns("-CGA-TC", "-C-AGA-", BASE)
    assert len(cols) == 7 and sum(cols) == 5


def test_relay_columns_cost_nothing():
    assert score_columns("A-", "A-", BASE) == [-1, 0]


def test_empty_words():
    assert score_pair("", "", BASE) == 0
    assert score_pair("", "ACG", BASE) == 6


def test_unknown_letter():
    with pytest.raises(ValueError, match="outside the alphabet"):
        score_pair("ACX", "A", BASE)


@pytest.mark.parametrize(
    "args, broken",
    [
        ((-1, 1, 2), ()),
        ((-1, 5, 2), ("beta <= 2*gamma",)),
        ((1, 1, 2), ("alpha < min(beta, gamma, 0)",)),
        ((-1, 1, -2), ("alpha < min(beta, gamma, 0)", "beta <= 2*gamma", "gamma > 0")),
    ],
)
def test_validate_scheme(args, broken):
    v = validate_scheme(ScoringScheme("ACGT", *args))
    assert v.violations == broken
    assert v.valid == (not broken)


def test_table_triangle_condition():
    table = {"AC": 1, "AG": 1, "CG": 3.5}
    s = ScoringScheme("ACG", -1, 1, 2, beta_table=table)
    v = validate_scheme(s)
    assert not v.valid
    assert any("beta(" in x for x in v.violations)
    ok = ScoringScheme("ACG", -1, 1, 2, beta_table={"AC": 1, "GA": 1.5, "CG": 2})
    assert validate_scheme(ok).valid
    assert ok.mismatch("A", "G") == 1.5


def test_tables_must_be_total():
    with pytest.raises(ValueError, match="cover"):
        ScoringScheme("ACG", -1, 1, 2, beta_table={"AC": 1})
    with pytest.raises(ValueError, match="cover"):
        ScoringScheme("AC", -1, 1, 2, alpha_table={"AA": -2})


def test_gap_symbol_reserved():
    with pytest.raises(ValueError):
        ScoringScheme("A-", -1, 1, 2)


def test_alignment_enumeration_counts():
    # Delannoy numbers
    assert sum(1 for _ in alignments("AB", "CD")) == 13
    assert sum(1 for _ in alignments("ABC", "DEF")) == 63


def _words(alphabet, total):
    for lx in range(total + 1):
        for ly in range(total + 1 - lx):
            for x in itertools.product(alphabet, repeat=lx):
                for y in itertools.product(alphabet, repeat=ly):
                    yield "".join(x), "".join(y)


def test_dp_equals_bruteforce_binary_exhaustive():
    s = ScoringScheme("AC", -1, 1, 2)
    for x, y in _words("AC", 6):
        assert score_pair(x, y, s) == brute_score(x, y, -1, 1, 2)


@settings(max_examples=150, deadline=None)
@given(
    st.text("ACGT", max_size=5),
    st.text("ACGT", max_size=5),
    st.sampled_from([(-1, 1, 2), (-2, 0.5, 1), (-0.5, 3, 1.5), (-3, 2, 4)]),
)
def test_dp_equals_bruteforce(x, y, costs):
    s = ScoringScheme("ACGT", *costs)
    assert score_pair(x, y, s) == pytest.approx(brute_score(x, y, *costs))
    res = best_alignment(x, y, s)
    assert sum(res.column_scores) == pytest.approx(res.score)


@settings(max_examples=100, deadline=None)
@given(st.text("ACGT", max_size=4), st.text("ACGT", max_size=4), st.integers(0, 3))
def test_relays_never_help(x, y, relays):
    # inserting relay columns anywhere leaves the cost unchanged
    res = best_alignment(x, y, BASE)
    ax, ay = res.aligned_x + "-" * relays, res.aligned_y + "-" * relays
    assert sum(column(a, b, -1, 1, 2) for a, b in zip(ax, ay)) == res.score


def test_multi_score_sums_pairs():
    w = ["ACG", "AG", "T"]
    assert multi_score(w, BASE) == score_pair("ACG", "AG", BASE) + score_pair("ACG", "T", BASE) + score_pair(
        "AG", "T", BASE
    )
    with pytest.raises(ValueError):
        multi_score(["A"], BASE)


def test_self_score_is_sum_of_alphas():
    assert score_pair("ACGT", "ACGT", BASE) == -4


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_word_spaces_are_strong(seed):
    rng = random.Random(seed)
    words = list({"".join(rng.choice("ACGT") for _ in range(rng.randint(0, 5))) for _ in range(4)})
    for n in (2, 3):
        assert check_axioms(space_from_words(words, BASE, n)).overall


def test_word_space_with_tables_is_strong():
    s = ScoringScheme(
        "ACG", -1, 1, 2, beta_table={"AC": 1, "AG": 1.5, "CG": 2}, alpha_table={"AA": -1, "CC": -0.5, "GG": -2}
    )
    assert validate_scheme(s).valid
    words = ["", "A", "CG", "GAC", "CCA"]
    assert check_axioms(space_from_words(words, s, 2)).overall
    assert check_axioms(space_from_words(words, s, 3)).overall


def test_word_space_rejects_invalid_scheme():
    with pytest.raises(SpaceError):
        space_from_words(["A", "C"], ScoringScheme("ACGT", -1, 5, 2))
    with pytest.raises(SpaceError):
        space_from_words(["A", "A"], BASE)


def test_invalid_scheme_flagged_on_result():
    res = best_alignment("AC", "A", ScoringScheme("ACGT", -1, 5, 2))
    assert res.scheme_valid is False
