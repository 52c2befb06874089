"""Coprime sum triples, their radicals, and the 7/4-exponent check.

A triple (a, b, c) has a + b = c with the three entries pairwise
coprime; rad is N(abc) and quality log(c)/log(rad).  The explicit check
used throughout is c < rad^(7/4), decided exactly as c^4 < rad^7 with
the float margin reported alongside.
"""

import math
from dataclasses import dataclass

from .core import PrimeTable, SieveRangeError, radical
from .bounds import THETA_COEFF

__all__ = [
    "ABC_EXPONENT",
    "AbcTriple",
    "make_triple",
    "ProofTripleResult",
    "proof_triple",
    "inequality3_rhs",
    "scan_block_triples",
]

# Explicit exponent: c < N(abc)^ABC_EXPONENT, checked exactly as c^4 < rad^7.
ABC_EXPONENT = 7.0 / 4.0


@dataclass(frozen=True)
class AbcTriple:
    a: int
    b: int
    c: int
    rad: int
    quality: float
    explicit_ok: bool
    explicit_margin: float  # (7/4)*log(rad) - log(c)


def make_triple(a: int, b: int, table: PrimeTable) -> AbcTriple:
    """Normalize (a, b, a+b) by g = gcd(a, b) and evaluate it.

    Dividing a, b, c by gcd(a, b) alone yields pairwise coprimality:
    any prime dividing two of a, b, c = a + b divides the third, so the
    three pairwise gcds coincide.  rad then factors as
    N(a) * N(b) * N(c).
    """
    if a < 1 or b < 1:
        raise ValueError(f"triple entries must be positive, got ({a}, {b})")
    g = math.gcd(a, b)
    a, b = a // g, b // g
    c = a + b
    if c > table.limit:
        raise SieveRangeError(f"c={c} exceeds sieve limit {table.limit}")
    rad = radical(a, table) * radical(b, table) * radical(c, table)
    quality = math.log(c) / math.log(rad) if rad > 1 else math.inf
    return AbcTriple(
        a=a,
        b=b,
        c=c,
        rad=rad,
        quality=quality,
        explicit_ok=c**4 < rad**7,
        explicit_margin=ABC_EXPONENT * math.log(rad) - math.log(c),
    )


@dataclass(frozen=True)
class ProofTripleResult:
    """Difference triple of two block terms, plus its x/d bound."""

    triple: AbcTriple
    x: int
    j1: int
    j2: int
    d: int
    x_over_d: float
    bound: float
    holds: bool


def proof_triple(x: int, j1: int, j2: int, table: PrimeTable) -> ProofTripleResult:
    """Triple built from (x+j2) + (j1-j2) = (x+j1), normalized by d.

    d = gcd(x+j1, j1-j2), which equals gcd(x+j2, j1-j2) since the two
    terms differ by j1-j2.  Alongside the triple, evaluates the bound
    x/d <= (N(x+j1) * N(x+j2) * (j1-j2)/d)^(7/4), deciding it exactly in
    integer arithmetic.
    """
    if j1 <= j2:
        raise ValueError(f"need j2 < j1, got j1={j1}, j2={j2}")
    if j2 < 0:
        raise ValueError(f"need j2 >= 0, got {j2}")
    if x < 2:
        raise ValueError(f"need x >= 2, got {x}")
    if x + j1 > table.limit:
        raise SieveRangeError(f"x+j1={x + j1} exceeds sieve limit {table.limit}")
    diff = j1 - j2
    d = math.gcd(x + j1, diff)
    triple = make_triple(diff, x + j2, table)
    rad_pair = radical(x + j1, table) * radical(x + j2, table) * (diff // d)
    bound = rad_pair**ABC_EXPONENT
    holds = x**4 <= rad_pair**7 * d**4
    return ProofTripleResult(
        triple=triple,
        x=x,
        j1=j1,
        j2=j2,
        d=d,
        x_over_d=x / d,
        bound=bound,
        holds=holds,
    )


def inequality3_rhs(k: int, a2: int, m: int):
    """Evaluate k*log(m) <= (7/4)*(k*2.00016*a2/(k-1) + 2k^2*log(k)/(k-1) + k*log(k)).

    Returns (rhs, holds).  A pure evaluator: the inequality is a
    consequence of the explicit triple bound for solution-derived
    (k, a2, m), not a universal truth, and callers pick the inputs.
    The same formula serves the single-odd-part case under the
    substitution a2 -> a1 + 1, m -> x1, k -> l1.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if a2 < 3:
        raise ValueError(f"a2 must be >= 3, got {a2}")
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    log_k = math.log(k)
    rhs = ABC_EXPONENT * (
        k * (2 * THETA_COEFF) * a2 / (k - 1) + 2 * k * k * log_k / (k - 1) + k * log_k
    )
    return rhs, k * math.log(m) <= rhs


def scan_block_triples(x: int, k: int, table: PrimeTable) -> ProofTripleResult:
    """Best-quality difference triple over all pairs j2 < j1 < k.

    Deterministic: ties keep the first pair in (j1, j2) order.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    best = None
    for j1 in range(1, k):
        for j2 in range(j1):
            cand = proof_triple(x, j1, j2, table)
            if best is None or cand.triple.quality > best.triple.quality:
                best = cand
    return best
