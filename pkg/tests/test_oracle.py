from fractions import Fraction
from itertools import product

import pytest

from diverse_medians import (
    Budget,
    CapExceeded,
    EnumerationLimits,
    brute_diameter,
    brute_max_code_size,
    brute_mindp_k,
    brute_sumdp_k,
    context_from_strings,
    enumerate_approx_medians,
    enumerate_exact_medians,
    median_cost,
)
from diverse_medians.oracle import DEFAULT_LIMITS, pairwise_hamming_matrix

from conftest import random_rows


def words(strs):
    return {tuple(s) for s in strs}


def test_exact_enumeration_examples():
    ctx = context_from_strings(["aa", "ab", "ba", "bb"], alphabet="ab")
    pool = enumerate_exact_medians(ctx.freq, DEFAULT_LIMITS)
    assert words(["aa", "ab", "ba", "bb"]) == set(pool)

    ctx = context_from_strings(["ab", "ba"], alphabet="ab")
    assert len(enumerate_exact_medians(ctx.freq, DEFAULT_LIMITS)) == 4

    ctx = context_from_strings(["abc", "abc", "abd"], alphabet="abcd")
    assert set(enumerate_exact_medians(ctx.freq, DEFAULT_LIMITS)) == {ctx.w}


def test_exact_pool_members_are_medians(rng):
    for _ in range(25):
        rows = random_rows(rng, sigma="ab")
        ctx = context_from_strings(rows, alphabet="ab")
        for s in enumerate_exact_medians(ctx.freq, DEFAULT_LIMITS):
            assert median_cost(ctx, s) == ctx.opt


def test_approx_matches_exact_at_zero_budget(rng):
    for _ in range(25):
        rows = random_rows(rng, sigma="abc")
        ctx = context_from_strings(rows, alphabet="abc")
        b = Budget.make(0, ctx.opt)
        assert set(enumerate_approx_medians(ctx, b, DEFAULT_LIMITS)) == set(
            enumerate_exact_medians(ctx.freq, DEFAULT_LIMITS)
        )


def test_approx_pool_against_full_space_filter(rng):
    # double enumeration: DFS pool == brute filter of the whole product space
    for _ in range(30):
        sigma = "ab" if rng.integers(0, 2) else "abc"
        rows = random_rows(rng, d=int(rng.integers(1, 5)), sigma=sigma)
        ctx = context_from_strings(rows, alphabet=sigma)
        eps = Fraction(int(rng.integers(0, 4)), 2)
        b = Budget.make(eps, ctx.opt)
        pool = set(enumerate_approx_medians(ctx, b, DEFAULT_LIMITS))
        cap = (1 + eps) * ctx.opt
        ref = {
            s
            for s in product(sigma, repeat=ctx.d)
            if Fraction(median_cost(ctx, s)) <= cap
        }
        assert pool == ref


def test_approx_pool_closed_under_direct_cost_refilter(rng):
    for _ in range(15):
        rows = random_rows(rng, sigma="ab")
        ctx = context_from_strings(rows, alphabet="ab")
        b = Budget.make(Fraction(1, 2), ctx.opt)
        pool = enumerate_approx_medians(ctx, b, DEFAULT_LIMITS)
        for s in pool:
            assert b.within(ctx.freq.direct_cost(s) - ctx.opt)


def test_enumeration_caps():
    ctx = context_from_strings(["ab", "ba"], alphabet="ab")
    tiny = EnumerationLimits(max_candidates=3, max_tuples=10, max_states=10)
    with pytest.raises(CapExceeded):
        enumerate_exact_medians(ctx.freq, tiny)
    with pytest.raises(CapExceeded):
        enumerate_approx_medians(ctx, Budget.make(0, ctx.opt), tiny)


def test_brute_trio_examples():
    pool = [tuple("aa"), tuple("ab"), tuple("bb")]
    assert brute_diameter(pool) == 2
    assert brute_sumdp_k(pool, 2) == 2
    assert brute_mindp_k(pool, 2) == 2

    ctx = context_from_strings(["aa", "ab", "ba", "bb"], alphabet="ab")
    four = enumerate_exact_medians(ctx.freq, DEFAULT_LIMITS)
    assert brute_diameter(four) == 2

    single = [tuple("ab")]
    assert brute_diameter(single) == 0
    assert brute_sumdp_k(single, 2) == 0
    assert brute_mindp_k(single, 2) == 0


def test_brute_sumdp_allows_repetition():
    # k=3 from a 2-string pool: best multiset repeats one string -> 2 pairs apart
    pool = [tuple("aa"), tuple("bb")]
    assert brute_sumdp_k(pool, 3) == 4
    # minDp over subsets is degenerate at 0 for pool < k
    assert brute_mindp_k(pool, 3) == 0


def test_brute_generic_k_matches_pairwise_reasoning(rng):
    for _ in range(10):
        rows = random_rows(rng, n=4, d=4, sigma="ab")
        pool = list({tuple(r) for r in rows})
        dmat = pairwise_hamming_matrix(pool)
        k = min(3, len(pool))
        got = brute_mindp_k(pool, k, DEFAULT_LIMITS)
        if k < 2 or len(pool) < k:
            continue
        from itertools import combinations

        want = max(
            min(dmat[i, j] for i, j in combinations(sub, 2))
            for sub in combinations(range(len(pool)), k)
        )
        assert got == want


def test_brute_tuple_caps():
    pool = [tuple(f"{i:04b}") for i in range(16)]
    with pytest.raises(CapExceeded):
        brute_diameter(pool, EnumerationLimits(10**5, 5, 10**5))
    with pytest.raises(CapExceeded):
        brute_sumdp_k(pool, 3, EnumerationLimits(10**5, 5, 10**5))
    with pytest.raises(CapExceeded):
        brute_mindp_k(pool, 3, EnumerationLimits(10**5, 5, 10**5))


def test_max_code_size_examples():
    assert brute_max_code_size((2, 2, 2, 2), 3, DEFAULT_LIMITS) == 2
    assert brute_max_code_size((2, 2, 2, 2), 0, DEFAULT_LIMITS) == 16
    assert brute_max_code_size((2, 2, 2, 2), 5, DEFAULT_LIMITS) == 1
    assert brute_max_code_size((3, 3), 1, DEFAULT_LIMITS) == 9
    # size-1 coordinates contribute nothing to distance
    assert brute_max_code_size((1, 2, 2, 2, 2, 1), 3, DEFAULT_LIMITS) == 2


def test_max_code_size_known_values():
    # binary length 6, distance 3: 8 codewords (shortened Hamming)
    assert brute_max_code_size((2,) * 6, 3, DEFAULT_LIMITS) == 8
    # ternary length 4, distance 3: 9 codewords
    assert brute_max_code_size((3,) * 4, 3, DEFAULT_LIMITS) == 9


def test_max_code_size_cap():
    with pytest.raises(CapExceeded):
        brute_max_code_size((3,) * 10, 3, EnumerationLimits(100, 100, 100))
