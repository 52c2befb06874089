import math
import random

import numpy as np
import pytest

from dflab import (
    EquationInstance,
    HypothesisViolationError,
    NotASolutionError,
    check_composite_block_geometry,
    dusart_check,
    erdos_graham_ratio,
    erdos_ratio,
    radical_product_bound_check,
    sandwich_check,
    search,
    smallest_two_radicals,
    theorem24_scan,
    thm12ii_bound,
    valuation2_block_bound_check,
    valuation2_factorial_lower_check,
    verify_mertens_bound,
    verify_theta_bound,
)
from dflab.bounds import EXCEPTIONAL_PAIRS, EXCEPTIONAL_PAIRS_ORDERED

from oracles import trial_factor, trial_is_prime

# Exceptions the k in [2,7], x <= 5000 scan actually finds.  (15, 2) is a
# true violator -- P(15*16) = P(240) = 5 <= 8.84 -- that the catalogued
# 38-pair exception set omits; (29, 7) and (30, 7) are catalogued but
# satisfy the bound (P = 31 > 30.94), so they never appear as exceptions.
OBSERVED_EXCEPTIONS = [
    (9, 2), (14, 2), (15, 2), (20, 2), (24, 2), (27, 2), (35, 2), (48, 2),
    (49, 2), (63, 2), (80, 2), (125, 2), (224, 2), (2400, 2), (4374, 2),
    (13, 3), (14, 3), (20, 3), (24, 3), (25, 3), (26, 3), (48, 3), (54, 3),
    (63, 3), (64, 3), (98, 3), (350, 3),
    (24, 4), (25, 4), (32, 4), (33, 4), (48, 4), (49, 4), (63, 4),
    (24, 5), (32, 5), (48, 5),
]


def test_exceptional_catalogue_shape():
    assert len(EXCEPTIONAL_PAIRS_ORDERED) == 38
    assert len(EXCEPTIONAL_PAIRS) == 38
    assert EXCEPTIONAL_PAIRS_ORDERED[0] == (9, 2)
    assert EXCEPTIONAL_PAIRS_ORDERED[-1] == (30, 7)
    assert all(x > 4 * k for x, k in EXCEPTIONAL_PAIRS)


def test_theta_bound_small(table_small):
    res = verify_theta_bound(10_000, table_small)
    assert res.passed
    assert res.margin > 0
    # slack at nu = 2 is 2 * 1.00008 - log 2
    assert res.margin <= 2 * 1.00008 - math.log(2)


def test_theta_bound_margin_at_100(table_small):
    res = verify_theta_bound(100, table_small)
    assert res.passed
    # minimum slack over the whole scan sits at nu = 3: 3*1.00008 - log 6
    assert res.margin == pytest.approx(3 * 1.00008 - math.log(6), abs=1e-9)
    # slack at the endpoint itself is much larger
    assert 1.00008 * 100 - 83.7284 > 5


def test_mertens_bound_small(table_small):
    res = verify_mertens_bound(10_000, table_small)
    assert res.passed
    assert res.margin == pytest.approx(math.log(2) / 2, abs=1e-12)


def test_composite_block_geometry(table_small):
    assert check_composite_block_geometry(9, 2, table_small)
    assert check_composite_block_geometry(13, 3, table_small)
    for k in range(2, 51):
        for x in range(2, k):
            assert check_composite_block_geometry(x, k, table_small)


def test_sandwich_even_case_values(table_small):
    res = sandwich_check(EquationInstance(8, (6, 4)), table_small)
    assert res.passed
    lower, upper = res.details["inequalities"]
    assert lower["lhs"] == pytest.approx(4 * math.log(4) - 4, abs=1e-9)
    assert lower["rhs"] == pytest.approx(math.log(8), abs=1e-9)
    assert upper["rhs"] == pytest.approx(math.log(16), abs=1e-9)
    assert res.details["m"] == 4 and res.details["k"] == 1
    # trivial gap (k = 1): the inequalities are outside their hypotheses
    assert not lower["hypothesis_met"] and not upper["hypothesis_met"]


def test_sandwich_even_case_lower_bound_fails_numerically(table_small):
    # at a2 = 6 the stated lower bound is false (6ln6 - 6 > ln 48); it is
    # hypothesis-gated (k = 1 here), so the check still passes
    res = sandwich_check(EquationInstance(384, (382, 6, 4)), table_small)
    assert res.passed
    lower = res.details["inequalities"][0]
    assert not lower["holds"]
    assert not lower["hypothesis_met"]


def test_sandwich_odd_case_values(table_small):
    res = sandwich_check(EquationInstance(120, (118, 5, 4)), table_small)
    assert res.passed
    lower, upper = res.details["inequalities"]
    assert lower["lhs"] == pytest.approx(5 * math.log(5) - 5, abs=1e-9)
    assert lower["rhs"] == pytest.approx(math.log(720), abs=1e-9)
    assert upper["rhs"] == pytest.approx(2 * 1 * math.log(4 * 60), abs=1e-9)
    assert res.details["decomposition"] == {"x1": 60, "l1": 1, "x2": 3, "l2": 1}


def test_sandwich_odd_case_without_decomposition(table_small):
    res = sandwich_check(EquationInstance(144, (142, 6, 3)), table_small)
    assert res.passed
    upper = res.details["inequalities"][1]
    assert not upper["hypothesis_met"]
    assert res.details["decomposition"] is None


def test_sandwich_on_all_searched_solutions(table_small):
    for mode, t_max in (("r0", 3), ("r1", 3)):
        for rec in search(400, t_max, mode, table_small):
            assert sandwich_check(rec.instance, table_small).passed


def test_sandwich_errors(table_small):
    with pytest.raises(NotASolutionError):
        sandwich_check(EquationInstance(10, (6, 4)), table_small)
    with pytest.raises(ValueError):
        sandwich_check(EquationInstance(45, (43, 5, 3)), table_small)


def test_theorem24_scan_matches_observed_exceptions(table_small):
    exceptions, res = theorem24_scan(range(2, 8), 5000, table_small)
    assert sorted(exceptions, key=lambda p: (p[1], p[0])) == OBSERVED_EXCEPTIONS
    assert res.counterexamples == [(15, 2)]
    assert not res.passed
    assert res.details["pairs_scanned"] > 29_000


def test_theorem24_exceptions_agree_with_trial_division():
    for x, k in OBSERVED_EXCEPTIONS:
        lpf = 1
        for term in range(x, x + k):
            lpf = max(lpf, max(trial_factor(term)))
        assert lpf <= 4.42 * k, (x, k)


def test_theorem24_member_verdicts(table_small):
    _, res = theorem24_scan([7], 5000, table_small)
    verdicts = {(d["x"], d["k"]): d for d in res.details["exceptional_member_verdicts"]}
    assert verdicts[(29, 7)]["lpf"] == 31 and verdicts[(29, 7)]["satisfies_bound"]
    assert verdicts[(30, 7)]["lpf"] == 31 and verdicts[(30, 7)]["satisfies_bound"]
    assert res.passed


def test_theorem24_scan_validation(table_small):
    with pytest.raises(ValueError):
        theorem24_scan([1], 100, table_small)


def test_erdos_ratio(table_small):
    assert erdos_ratio(9, 2, table_small) == pytest.approx(5 / (2 * math.log(2)), abs=1e-9)
    assert erdos_ratio(13, 3, table_small) is None
    assert erdos_ratio(24, 4, table_small) == pytest.approx(13 / (4 * math.log(4)), abs=1e-9)


def test_valuation2_block_bound(table_small):
    res = valuation2_block_bound_check(2, 5, table_small)
    assert res.passed and res.details["val2"] == 4
    assert res.margin == pytest.approx(4 + math.log2(7) - 4, abs=1e-9)
    res = valuation2_block_bound_check(9, 2, table_small)
    assert res.passed and res.details["val2"] == 1


def test_valuation2_block_bound_sweep(table_big):
    rng = random.Random(17)
    for _ in range(600):
        x = rng.randint(2, 10_000)
        k = rng.randint(1, 50)
        assert valuation2_block_bound_check(x, k, table_big).passed


def test_valuation2_factorial_lower():
    res = valuation2_factorial_lower_check(100_000)
    assert res.passed
    # tightest at m = 127: nu_2(127!) = 120 and 0.99*127 - 7 = 118.73
    assert res.margin == pytest.approx(1.27, abs=1e-9)
    assert valuation2_factorial_lower_check(1).passed


def test_valuation2_factorial_matches_popcount_identity():
    res = valuation2_factorial_lower_check(4096)
    assert res.passed
    for m in (1, 16, 127, 1024, 4095):
        v2 = m - bin(m).count("1")
        assert v2 > 0.99 * m - 7


def test_thm12ii_bound():
    assert thm12ii_bound(1) == pytest.approx(12.7817, abs=1e-3)
    assert thm12ii_bound(10) == pytest.approx(55.856, abs=1e-2)
    assert thm12ii_bound(100) == pytest.approx(426.204, abs=1e-2)
    with pytest.raises(ValueError):
        thm12ii_bound(0)


def test_radical_product_bound(table_small):
    res = radical_product_bound_check(9, 2, 5, table_small)
    assert res.passed
    assert res.details["log_lhs"] == pytest.approx(math.log(30), abs=1e-9)
    assert res.details["log_rhs"] == pytest.approx(1.00008 * 5 + 2 * math.log(2), abs=1e-9)
    res = radical_product_bound_check(24, 4, 13, table_small)
    assert res.passed
    assert res.details["deleted_terms"] == [24, 27]
    with pytest.raises(HypothesisViolationError):
        radical_product_bound_check(9, 2, 3, table_small)


def test_radical_product_bound_on_random_blocks(table_small):
    from dflab import lpf_array

    lpf = lpf_array(9_010, table_small)
    rng = random.Random(31)
    for _ in range(10_000):
        k = rng.randint(2, 8)
        x = rng.randint(2, 9_000)
        a_bound = int(max(lpf[x : x + k]))
        res = radical_product_bound_check(x, k, a_bound, table_small)
        assert res.passed, (x, k, a_bound)


def test_smallest_two_radicals(table_small):
    res = smallest_two_radicals(9, 2, table_small)
    assert (res.j1, res.j2) == (0, 1)
    assert res.bound == pytest.approx(30.0, abs=1e-9)
    assert res.holds
    res = smallest_two_radicals(24, 4, table_small)
    assert (res.j1, res.j2) == (3, 1)
    assert res.radicals == (6, 5, 26, 3)
    assert res.bound == pytest.approx(2340 ** (1 / 3), abs=1e-9)
    res = smallest_two_radicals(2, 2, table_small)
    assert res.radicals == (2, 3)


def test_smallest_two_radicals_holds_everywhere(table_small):
    rng = random.Random(41)
    for _ in range(10_000):
        k = rng.randint(2, 9)
        x = rng.randint(2, 9_900)
        assert smallest_two_radicals(x, k, table_small).holds
    # blocks arising from the single-odd-part solutions' decompositions
    for x, k in [(14, 2), (35, 2)]:
        assert smallest_two_radicals(x, k, table_small).holds


def test_dusart_check(table_big):
    res = dusart_check(3275, table_big)
    assert res.passed
    assert res.details["witness"] == 3271
    assert trial_is_prime(3271)
    assert res.details["literal_form_ok"]
    assert res.details["interval_used"][0] == pytest.approx(3250.1946, abs=1e-3)
    with pytest.raises(ValueError):
        dusart_check(3274, table_big)


def test_dusart_sweep(table_big):
    # The narrow (in-use) interval fails for exactly four y just above the
    # threshold: the gap 3271 -> 3299 is wider than the interval there
    # (at y = 3296 the cutoff is 3271.07, a hair above the prime 3271).
    # The wide literal-statement interval never fails on this range.
    ys = np.arange(3275, 100_001, dtype=np.int64)
    primes = table_big.primes
    witness = primes[np.searchsorted(primes, ys, side="left") - 1]
    lo_used = ys / (1 + 1 / (2 * np.log(ys) ** 2))
    lo_literal = ys / (1 + 2 * np.log(ys) ** 2)
    assert (witness < ys).all()
    failures = ys[witness <= lo_used]
    assert list(failures) == [3296, 3297, 3298, 3299]
    assert (witness > lo_literal).all()
    # spot-check the checker against the vectorized oracle
    rng = random.Random(53)
    for y in [3275, 3296, 31397, 100_000] + [rng.randint(3300, 100_000) for _ in range(25)]:
        res = dusart_check(int(y), table_big)
        assert res.passed == (y not in (3296, 3297, 3298, 3299))
        assert res.details["witness"] == int(witness[y - 3275])
        assert res.details["literal_form_ok"]


def test_erdos_graham_ratio(table_small):
    assert erdos_graham_ratio(8, table_small) == pytest.approx(3 / math.log(8), abs=1e-9)
    assert erdos_graham_ratio(2, table_small) == pytest.approx(3 / math.log(2), abs=1e-9)
    assert erdos_graham_ratio(4374, table_small) == pytest.approx(
        7 / math.log(4374), abs=1e-9
    )
