"""Empirical checkers for every explicit inequality the toolkit relies on.

Each checker scans its stated domain and returns a BoundCheckResult that
carries the counterexamples (empty means pass) and the minimum slack
observed, so a regression in the arithmetic shows up as a shrinking
margin long before it flips a verdict.  Named constants below are never
inlined at use sites.

Verdicts that rest on double-precision comparisons are reliable down to
FLOAT_TOLERANCE; every margin at desk scale sits orders of magnitude
above it.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    PrimeTable,
    SieveRangeError,
    analyze_block,
    lpf_array,
    _walk_spf,
)
from .equation import (
    EquationInstance,
    NotASolutionError,
    check_identity,
    odd_decomposition,
)

__all__ = [
    "THETA_COEFF",
    "LPF_BLOCK_COEFF",
    "ERDOS_BLOCK_COEFF",
    "VAL2_SLOPE",
    "VAL2_OFFSET",
    "THM12II_OFFSET",
    "DUSART_MIN_Y",
    "FLOAT_TOLERANCE",
    "EXCEPTIONAL_PAIRS_ORDERED",
    "EXCEPTIONAL_PAIRS",
    "HypothesisViolationError",
    "BoundCheckResult",
    "verify_theta_bound",
    "verify_mertens_bound",
    "check_composite_block_geometry",
    "sandwich_check",
    "theorem24_scan",
    "erdos_ratio",
    "valuation2_block_bound_check",
    "valuation2_factorial_lower_check",
    "thm12ii_bound",
    "radical_product_bound_check",
    "smallest_two_radicals",
    "SmallestRadicals",
    "dusart_check",
    "erdos_graham_ratio",
]

# theta(nu) < THETA_COEFF * nu for nu > 1 (natural logs throughout).
THETA_COEFF = 1.00008
# P(x(x+1)...(x+k-1)) > LPF_BLOCK_COEFF * k for x > 4k, k >= 2, outside the
# exceptional pairs below.
LPF_BLOCK_COEFF = 4.42
# P(block) > ERDOS_BLOCK_COEFF * k * log(k) for all-composite blocks and
# k large (threshold unknown); used only for the exploratory ratio.
ERDOS_BLOCK_COEFF = 2.0 / 7.0
# nu_2(m!) > VAL2_SLOPE * m - VAL2_OFFSET (seven-term truncation of the
# floor sum).
VAL2_SLOPE = 0.99
VAL2_OFFSET = 7.0
# 0.99*a1 <= 4*l1 + THM12II_OFFSET + 2*log2(5) + 2*log2(l1) when x1 <= 4*l1.
THM12II_OFFSET = 4.01
# Below this y the short prime-gap interval statement is not asserted.
DUSART_MIN_Y = 3275
# Double-precision comparisons are trusted down to this slack.
FLOAT_TOLERANCE = 1e-9

# The 38 (x, k) pairs exempted from the LPF_BLOCK_COEFF bound.
EXCEPTIONAL_PAIRS_ORDERED = (
    (9, 2), (14, 2), (20, 2), (24, 2), (27, 2), (35, 2), (48, 2), (49, 2),
    (63, 2), (80, 2), (125, 2), (224, 2), (2400, 2), (4374, 2),
    (13, 3), (14, 3), (20, 3), (24, 3), (25, 3), (26, 3), (48, 3), (54, 3),
    (63, 3), (64, 3), (98, 3), (350, 3),
    (24, 4), (25, 4), (32, 4), (33, 4), (48, 4), (49, 4), (63, 4),
    (24, 5), (32, 5), (48, 5),
    (29, 7), (30, 7),
)
EXCEPTIONAL_PAIRS = frozenset(EXCEPTIONAL_PAIRS_ORDERED)


class HypothesisViolationError(ValueError):
    """The caller-asserted hypothesis of a check does not hold."""


@dataclass
class BoundCheckResult:
    name: str
    domain_checked: str
    counterexamples: list
    margin: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def verify_theta_bound(nu_max: int, table: PrimeTable) -> BoundCheckResult:
    """theta(nu) < THETA_COEFF * nu at every prime nu <= nu_max.

    theta only jumps at primes and the linear side grows, so the minimum
    slack over real nu is attained at a prime.
    """
    if nu_max > table.limit:
        raise SieveRangeError(f"nu_max={nu_max} exceeds sieve limit {table.limit}")
    ps = table.primes_leq(nu_max).astype(np.float64)
    if ps.size == 0:
        raise ValueError("nu_max must be at least 2")
    theta_at = np.cumsum(np.log(ps))
    slack = THETA_COEFF * ps - theta_at
    bad = np.flatnonzero(slack <= 0)
    return BoundCheckResult(
        name="theta_linear_upper",
        domain_checked=f"primes nu <= {nu_max}",
        counterexamples=[(int(ps[i]), float(theta_at[i])) for i in bad],
        margin=float(slack.min()),
        details={"primes_checked": int(ps.size), "float_tolerance": FLOAT_TOLERANCE},
    )


def verify_mertens_bound(nu_max: int, table: PrimeTable) -> BoundCheckResult:
    """sum_{p <= nu} log(p)/p < log(nu) at every prime nu <= nu_max."""
    if nu_max > table.limit:
        raise SieveRangeError(f"nu_max={nu_max} exceeds sieve limit {table.limit}")
    ps = table.primes_leq(nu_max).astype(np.float64)
    if ps.size == 0:
        raise ValueError("nu_max must be at least 2")
    partial = np.cumsum(np.log(ps) / ps)
    slack = np.log(ps) - partial
    bad = np.flatnonzero(slack <= 0)
    return BoundCheckResult(
        name="mertens_log_sum_upper",
        domain_checked=f"primes nu <= {nu_max}",
        counterexamples=[(int(ps[i]), float(partial[i])) for i in bad],
        margin=float(slack.min()),
        details={"primes_checked": int(ps.size), "float_tolerance": FLOAT_TOLERANCE},
    )


def check_composite_block_geometry(x: int, k: int, table: PrimeTable) -> bool:
    """Concrete instance of: an all-composite block forces x >= k.

    (A prime sits in ((x+k-1)/2, x+k-1) by Bertrand; were x < k that
    interval would land inside the block.)  True unless the block is
    all-composite with x < k, which should never happen.
    """
    if k < 2:
        raise ValueError(f"block length must be >= 2, got {k}")
    report = analyze_block(x, k, table)
    return not (report.all_composite and x < k)


def _log_factor_sum(m: int, step: int) -> float:
    """Sum of log over m, m-step, m-2*step, ..., down to 2 or 1."""
    total = 0.0
    v = m
    while v > 1:
        total += math.log(v)
        v -= step
    return total


def sandwich_check(instance: EquationInstance, table: PrimeTable) -> BoundCheckResult:
    """Log-scale sandwich inequalities satisfied by nontrivial solutions.

    Even case (r = 0), with m = a1/2 + 1 and k = (n - a1)/2:
        a2*log(a2) - a2 <= log(a2!!) <= k*log(4m)
    Odd case (r = 1), with (x1, l1) from the decomposition:
        a1*log(a1) - a1 <= log((a1+1)!) <= 2*l1*log(4*x1)
    Each inequality carries its hypotheses (k >= 2 resp. an all-composite
    block); inequalities whose hypotheses fail are evaluated and reported
    but cannot fail the check.  Logs of factorials are exact factor sums.
    """
    if not check_identity(instance, table):
        raise NotASolutionError(f"(n={instance.n}, a={instance.a}) does not satisfy the identity")
    r = instance.r
    if r > 1:
        raise ValueError(f"sandwich checks cover parity signatures 0 and 1, got r={r}")
    ineqs = []
    details: dict = {"case": "even" if r == 0 else "odd", "float_tolerance": FLOAT_TOLERANCE}

    def add(label, lhs, rhs, hyp_met, note):
        ineqs.append(
            {
                "label": label,
                "lhs": lhs,
                "rhs": rhs,
                "holds": lhs <= rhs,
                "hypothesis_met": hyp_met,
                "hypothesis": note,
            }
        )

    if r == 0:
        a1, a2 = instance.a[0], instance.a[1]
        m = a1 // 2 + 1
        k = instance.half_n - a1 // 2
        block = analyze_block(m, k, table)
        gap_ok = k >= 2
        log_df = _log_factor_sum(a2, 2)
        details.update({"m": m, "k": k, "a2": a2, "block_all_composite": block.all_composite})
        add(
            "a2*log(a2) - a2 <= log(a2!!)",
            a2 * math.log(a2) - a2,
            log_df,
            gap_ok,
            "k >= 2",
        )
        add(
            "log(a2!!) <= k*log(4m)",
            log_df,
            k * math.log(4 * m),
            gap_ok and block.all_composite,
            "k >= 2 and block all composite",
        )
    else:
        a1 = instance.odd_parts[0]
        dec = odd_decomposition(instance)
        log_fact = _log_factor_sum(a1 + 1, 1)
        details["a1"] = a1
        add(
            "a1*log(a1) - a1 <= log((a1+1)!)",
            a1 * math.log(a1) - a1,
            log_fact,
            True,
            "none",
        )
        if dec is None:
            details["decomposition"] = None
            add("log((a1+1)!) <= 2*l1*log(4*x1)", log_fact, math.inf, False, "no decomposition")
        else:
            block = analyze_block(dec.x1, dec.l1, table)
            details.update(
                {
                    "decomposition": {"x1": dec.x1, "l1": dec.l1, "x2": dec.x2, "l2": dec.l2},
                    "block_all_composite": block.all_composite,
                }
            )
            add(
                "log((a1+1)!) <= 2*l1*log(4*x1)",
                log_fact,
                2 * dec.l1 * math.log(4 * dec.x1),
                block.all_composite,
                "block all composite",
            )

    details["inequalities"] = ineqs
    active = [q for q in ineqs if q["hypothesis_met"]]
    counterexamples = [q for q in active if not q["holds"]]
    margin = min((q["rhs"] - q["lhs"] for q in active), default=math.inf)
    return BoundCheckResult(
        name="solution_sandwich",
        domain_checked=f"solution n={instance.n}, a={list(instance.a)}",
        counterexamples=counterexamples,
        margin=margin,
        details=details,
    )


def theorem24_scan(k_range, x_max: int, table: PrimeTable):
    """Scan P(block) > LPF_BLOCK_COEFF * k over 4k < x <= x_max, k in k_range.

    Returns (exceptions, result): exceptions are all pairs at or under the
    bound; the check passes iff every one is an exceptional pair.  The
    scan is one-directional: exceptional pairs that happen to satisfy the
    bound anyway are reported in details, never treated as errors.
    """
    ks = sorted({int(k) for k in k_range})
    if not ks or ks[0] < 2:
        raise ValueError("k values must be >= 2")
    if x_max + ks[-1] - 1 > table.limit:
        raise SieveRangeError(
            f"x_max + max(k) - 1 = {x_max + ks[-1] - 1} exceeds sieve limit {table.limit}"
        )
    lpf = lpf_array(x_max + ks[-1] - 1, table)
    exceptions = []
    min_slack = math.inf
    member_verdicts = []
    pairs_scanned = 0
    for k in ks:
        lo = 4 * k + 1
        if lo > x_max:
            continue
        count = x_max - lo + 1
        window = lpf[lo : x_max + k]
        best = window[:count].copy()
        for off in range(1, k):
            np.maximum(best, window[off : off + count], out=best)
        thresh = LPF_BLOCK_COEFF * k
        slack = best - thresh
        pairs_scanned += count
        for i in np.flatnonzero(slack <= 0):
            exceptions.append((lo + int(i), k))
        member_xs = sorted(x for (x, kk) in EXCEPTIONAL_PAIRS if kk == k and lo <= x <= x_max)
        for x in member_xs:
            p_val = int(best[x - lo])
            member_verdicts.append(
                {"x": x, "k": k, "lpf": p_val, "satisfies_bound": p_val > thresh}
            )
        nonmember = np.ones(count, dtype=bool)
        for x in member_xs:
            nonmember[x - lo] = False
        if nonmember.any():
            min_slack = min(min_slack, float(slack[nonmember].min()))
    counterexamples = [pair for pair in exceptions if pair not in EXCEPTIONAL_PAIRS]
    result = BoundCheckResult(
        name="block_lpf_linear_lower",
        domain_checked=f"k in {ks}, 4k < x <= {x_max}",
        counterexamples=counterexamples,
        margin=min_slack,
        details={
            "pairs_scanned": pairs_scanned,
            "exceptions": [list(p) for p in exceptions],
            "exceptional_member_verdicts": member_verdicts,
        },
    )
    return exceptions, result


def erdos_ratio(x: int, k: int, table: PrimeTable) -> float | None:
    """P(block) / (k*log k) when the block is all composite, else None."""
    if k < 2:
        raise ValueError(f"block length must be >= 2, got {k}")
    report = analyze_block(x, k, table)
    if not report.all_composite:
        return None
    return report.lpf / (k * math.log(k))


def valuation2_block_bound_check(x: int, k: int, table: PrimeTable) -> BoundCheckResult:
    """nu_2(x(x+1)...(x+k-1)) <= k - 1 + log2(x + k)."""
    report = analyze_block(x, k, table)
    bound = k - 1 + math.log2(x + k)
    slack = bound - report.val2
    return BoundCheckResult(
        name="block_power_of_two_upper",
        domain_checked=f"x={x}, k={k}",
        counterexamples=[] if slack > 0 else [(x, k, report.val2)],
        margin=slack,
        details={"val2": report.val2, "bound": bound, "float_tolerance": FLOAT_TOLERANCE},
    )


def valuation2_factorial_lower_check(m_max: int) -> BoundCheckResult:
    """nu_2(m!) > VAL2_SLOPE * m - VAL2_OFFSET for 1 <= m <= m_max.

    The valuation is the vectorized floor sum  sum_i (m >> i).
    """
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    ms = np.arange(1, m_max + 1, dtype=np.int64)
    v2 = np.zeros_like(ms)
    shifted = ms >> 1
    while shifted.any():
        v2 += shifted
        shifted >>= 1
    slack = v2 - (VAL2_SLOPE * ms - VAL2_OFFSET)
    bad = np.flatnonzero(slack <= 0)
    return BoundCheckResult(
        name="factorial_power_of_two_lower",
        domain_checked=f"1 <= m <= {m_max}",
        counterexamples=[(int(ms[i]), int(v2[i])) for i in bad],
        margin=float(slack.min()),
        details={"float_tolerance": FLOAT_TOLERANCE},
    )


def thm12ii_bound(l1: int) -> float:
    """Upper bound on a1 implied by 0.99*a1 <= 4*l1 + 4.01 + 2*log2(5) + 2*log2(l1)."""
    if l1 < 1:
        raise ValueError(f"l1 must be >= 1, got {l1}")
    rhs = 4 * l1 + THM12II_OFFSET + 2 * math.log2(5) + 2 * math.log2(l1)
    return rhs / VAL2_SLOPE


def radical_product_bound_check(
    x: int, k: int, a_bound: int, table: PrimeTable
) -> BoundCheckResult:
    """Deleted radical product of a block against exp(THETA_COEFF*a_bound + k*log k).

    Primes >= k divide at most one term; for each prime p < k the term
    where p appears to the maximum power is deleted (lowest index on
    ties), and the radical product of the surviving terms is bounded.
    Requires every prime factor of the block to be <= a_bound.
    """
    if k < 2:
        raise ValueError(f"block length must be >= 2, got {k}")
    if x < 2:
        raise ValueError(f"block start must be >= 2, got {x}")
    hi = x + k - 1
    if hi > table.limit:
        raise SieveRangeError(f"block end {hi} exceeds sieve limit {table.limit}")
    facs = [_walk_spf(x + i, table.spf) for i in range(k)]
    for i, fac in enumerate(facs):
        big = max(fac)
        if big > a_bound:
            raise HypothesisViolationError(
                f"prime {big} divides term {x + i} but exceeds a_bound={a_bound}"
            )
    deleted = set()
    small_primes = sorted({p for fac in facs for p in fac if p < k})
    for p in small_primes:
        best_i = max(range(k), key=lambda i: (facs[i].get(p, 0), -i))
        deleted.add(best_i)
    lhs_log = 0.0
    surviving = []
    for i, fac in enumerate(facs):
        if i in deleted:
            continue
        surviving.append(x + i)
        lhs_log += sum(math.log(p) for p in fac)
    rhs_log = THETA_COEFF * a_bound + k * math.log(k)
    slack = rhs_log - lhs_log
    return BoundCheckResult(
        name="deleted_radical_product_upper",
        domain_checked=f"x={x}, k={k}, a_bound={a_bound}",
        counterexamples=[] if slack > 0 else [(x, k)],
        margin=slack,
        details={
            "deleted_terms": sorted(x + i for i in deleted),
            "surviving_terms": surviving,
            "log_lhs": lhs_log,
            "log_rhs": rhs_log,
            "float_tolerance": FLOAT_TOLERANCE,
        },
    )


@dataclass(frozen=True)
class SmallestRadicals:
    """Indices of the two smallest term radicals and the mean-radical bound."""

    j1: int
    j2: int
    bound: float
    holds: bool
    radicals: tuple


def smallest_two_radicals(x: int, k: int, table: PrimeTable) -> SmallestRadicals:
    """Pick N(x+j1) <= N(x+j2) smallest among the term radicals.

    Also verifies N(x+j2) <= (prod_i N(x+i))^(1/(k-1)), exactly in
    integer arithmetic; ties break toward the smaller index.
    """
    if k < 2:
        raise ValueError(f"block length must be >= 2, got {k}")
    report = analyze_block(x, k, table)
    rads = report.term_radicals
    order = sorted(range(k), key=lambda i: (rads[i], i))
    j1, j2 = order[0], order[1]
    prod = 1
    for r in rads:
        prod *= r
    bound = prod ** (1.0 / (k - 1))
    holds = rads[j2] ** (k - 1) <= prod
    return SmallestRadicals(j1, j2, bound, holds, rads)


def dusart_check(y: int, table: PrimeTable) -> BoundCheckResult:
    """A prime in (y / (1 + 1/(2*log^2 y)), y) for y >= DUSART_MIN_Y.

    This is the interval the downstream estimates use.  The wider
    literal-statement interval (y / (1 + 2*log^2 y), y) is evaluated
    alongside and reported in details; neither is silently preferred.
    """
    if y < DUSART_MIN_Y:
        raise ValueError(f"the interval statement needs y >= {DUSART_MIN_Y}, got {y}")
    if y > table.limit:
        raise SieveRangeError(f"y={y} exceeds sieve limit {table.limit}")
    log_sq = math.log(y) ** 2
    lo_used = y / (1 + 1 / (2 * log_sq))
    lo_literal = y / (1 + 2 * log_sq)
    primes = table.primes
    i = int(np.searchsorted(primes, y, side="left"))
    witness = int(primes[i - 1]) if i > 0 else None
    used_ok = witness is not None and witness > lo_used
    literal_ok = witness is not None and witness > lo_literal
    return BoundCheckResult(
        name="short_prime_gap_interval",
        domain_checked=f"y={y}",
        counterexamples=[] if used_ok else [(y, witness)],
        margin=(witness - lo_used) if witness is not None else -math.inf,
        details={
            "witness": witness,
            "interval_used": [lo_used, y],
            "interval_literal": [lo_literal, y],
            "literal_form_ok": literal_ok,
        },
    )


def erdos_graham_ratio(n: int, table: PrimeTable) -> float:
    """P(n(n+1)) / log(n), the growth statistic for consecutive pairs."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if n + 1 > table.limit:
        raise SieveRangeError(f"n+1={n + 1} exceeds sieve limit {table.limit}")
    p = max(max(_walk_spf(n, table.spf)), max(_walk_spf(n + 1, table.spf)))
    return p / math.log(n)
