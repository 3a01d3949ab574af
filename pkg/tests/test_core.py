from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diverse_medians import (
    Budget,
    CandidateSet,
    Dataset,
    ValidationError,
    build_context,
    context_from_strings,
    hamming,
    is_approx_median,
    is_exact_median,
    median_cost,
    min_dispersion,
    sum_dispersion,
)

from conftest import random_rows


def brute_min_cost(rows, sigma):
    d = len(rows[0])
    return min(
        sum(sum(x != y for x, y in zip(s, row)) for row in rows)
        for s in product(sigma, repeat=d)
    )


def test_w_is_a_true_median_small_spaces(rng):
    for _ in range(60):
        sigma = "ab" if rng.integers(0, 2) else "abc"
        rows = random_rows(rng, d=int(rng.integers(1, 5)), sigma=sigma)
        ctx = context_from_strings(rows, alphabet=sigma)
        assert ctx.opt == brute_min_cost(rows, sigma)
        assert median_cost(ctx, ctx.w) == ctx.opt


def test_majority_tie_breaks_by_alphabet_order():
    ctx = context_from_strings(["ab", "ba"], alphabet="ab")
    assert ctx.w == ("a", "a")  # both columns tie a/b
    assert ctx.weight == (0, 0)
    assert ctx.w_hat == ("b", "b")


def test_w_hat_is_strict_second_choice():
    ctx = context_from_strings(["aa", "aa", "ab", "ba", "bc"], alphabet="abc")
    # column 0: a:3 b:2 -> hat b; column 1: a:3 b:1 c:1 -> hat b (alphabet tie-break)
    assert ctx.w == ("a", "a")
    assert ctx.w_hat == ("b", "b")
    assert ctx.weight == (1, 2)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_offset_identity(data):
    # cost(s) == opt + sum of per-index deviation weights, for any s
    sigma = data.draw(st.sampled_from(["ab", "abc"]))
    d = data.draw(st.integers(1, 5))
    n = data.draw(st.integers(1, 7))
    rows = data.draw(
        st.lists(st.text(sigma, min_size=d, max_size=d), min_size=n, max_size=n)
    )
    s = data.draw(st.text(sigma, min_size=d, max_size=d))
    ctx = context_from_strings(rows, alphabet=sigma)
    direct = sum(hamming(s, row) for row in rows)
    offset = ctx.opt + sum(
        ctx.char_cost(i, a) for i, a in enumerate(s) if a != ctx.w[i]
    )
    assert direct == offset == median_cost(ctx, s)


def test_budget_threshold_is_exact_rational():
    b = Budget.make(Fraction(1, 3), 5)  # cap = 5/3
    assert b.within(1)
    assert not b.within(2)  # 2 > 5/3, and float(5/3) must not blur this
    assert b.within(3, mult=2)  # 3 <= 10/3
    assert not b.within(4, mult=2)
    assert b.floor == 1


def test_budget_epsilon_forms():
    assert Budget.make("1/2", 10).floor == 5
    assert Budget.make("0.25", 8).floor == 2
    assert Budget.make(0, 7).floor == 0
    with pytest.raises(ValidationError):
        Budget.make(Fraction(-1, 2), 4)


def test_budget_mult_scales_threshold_not_weight():
    # within(w, mult=m) decides w <= m * eps * opt via integer cross-multiplication
    b = Budget.make(Fraction(2, 7), 7)  # eps*opt = 2
    assert b.within(2) and not b.within(3)
    assert b.within(4, mult=2) and not b.within(5, mult=2)


def test_distance_helpers():
    assert hamming("abc", "abd") == 1
    assert hamming("aaa", "aaa") == 0
    assert sum_dispersion(["aa", "ab", "bb"]) == 1 + 2 + 1
    assert min_dispersion(["aa", "ab", "bb"]) == 1
    assert min_dispersion(["aa", "aa"]) == 0  # duplicates
    with pytest.raises(ValidationError):
        min_dispersion(["aa"])  # a single member has no pair


def test_candidate_set_column_identity(rng):
    # sum_dispersion via per-column counts must equal the direct pairwise sum
    for _ in range(40):
        rows = random_rows(rng, sigma="abc")
        ctx = context_from_strings(rows, alphabet="abc")
        members = [
            tuple(random_rows(rng, n=1, d=ctx.d, sigma="abc")[0])
            for _ in range(int(rng.integers(2, 6)))
        ]
        cs = CandidateSet.from_members(ctx.freq, members)
        assert cs.sum_dispersion() == sum_dispersion(members)
        assert cs.min_dispersion() == min_dispersion(members)


def test_median_predicates():
    ctx = context_from_strings(["aa", "ab", "ba"], alphabet="ab")
    assert ctx.w == ("a", "a") and ctx.opt == 2
    b = Budget.make(Fraction(1, 2), ctx.opt)
    assert is_exact_median(ctx, "aa")
    assert not is_exact_median(ctx, "ab")  # cost 3
    assert is_approx_median(ctx, b, "ab")  # 3 <= 3
    assert not is_approx_median(ctx, b, "bb")  # cost 4


def test_median_cost_rejects_foreign_symbols():
    ctx = context_from_strings(["ab", "ab"], alphabet="ab")
    with pytest.raises(ValidationError):
        median_cost(ctx, "ax")


def test_dataset_validation():
    with pytest.raises(ValidationError):
        Dataset.from_strings(["ab", "abc"])  # ragged
    with pytest.raises(ValidationError):
        Dataset.from_strings(["ab"], alphabet="aab")  # duplicate symbols
    with pytest.raises(ValidationError):
        Dataset.from_strings(["ab"], alphabet="a")  # b outside alphabet
    ds = Dataset.from_strings(["ba", "ab"])
    assert ds.alphabet == ("b", "a")  # inferred in first-occurrence order
    assert ds.alphabet_inferred


def test_single_symbol_alphabet_has_no_second_choice():
    with pytest.raises(ValidationError):
        build_context(Dataset.from_strings(["aa", "aa"], alphabet="a"))
