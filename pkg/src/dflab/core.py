"""Exact integer number theory: sieving, factorization, double factorials.

The sieve is a smallest-prime-factor table (uint32, 4 bytes per integer,
plus a cached prime list), which makes factorization of any n <= limit a
walk of O(log n) array lookups.  Integer arithmetic is exact everywhere;
floats appear only in the log-space helpers.  A PrimeTable never changes
after construction, so one shared instance can back any number of threads.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SieveRangeError",
    "PrimeTable",
    "sieve_primes",
    "Factorization",
    "factorize",
    "largest_prime_factor",
    "radical",
    "valuation",
    "factorial_valuation",
    "double_factorial",
    "log_double_factorial",
    "ExpVec",
    "double_factorial_expvec",
    "BlockReport",
    "analyze_block",
    "theta",
    "mertens_log_sum",
    "factorial_valuations",
    "double_factorial_valuations",
    "lpf_array",
    "radical_array",
]

_UINT32_MAX = 2**32 - 1


class SieveRangeError(ValueError):
    """An argument lies outside the range covered by the PrimeTable."""


class PrimeTable:
    """Smallest-prime-factor sieve over [2, limit].

    ``spf[i]`` is the least prime dividing i (``spf[0] == spf[1] == 0``).
    For composite c the entry is a prime <= sqrt(c); for prime p it is p
    itself.  The table and its cached prime list are read-only after
    construction.
    """

    __slots__ = ("limit", "spf", "primes")

    def __init__(self, limit: int, spf: np.ndarray):
        if limit < 2:
            raise ValueError(f"sieve limit must be >= 2, got {limit}")
        if spf.shape != (limit + 1,):
            raise ValueError("spf array does not match the stated limit")
        self.limit = int(limit)
        self.spf = spf
        idx = np.arange(2, limit + 1, dtype=np.int64)
        self.primes = idx[spf[2:] == idx]

    def is_prime(self, n: int) -> bool:
        if n < 2:
            return False
        if n > self.limit:
            raise SieveRangeError(f"{n} exceeds sieve limit {self.limit}")
        return int(self.spf[n]) == n

    def prime_count(self) -> int:
        return int(self.primes.size)

    def primes_leq(self, bound) -> np.ndarray:
        """View of all primes <= bound (bound may be real)."""
        cut = np.searchsorted(self.primes, math.floor(bound), side="right")
        return self.primes[:cut]

    def __repr__(self):
        return f"PrimeTable(limit={self.limit}, primes={self.prime_count()})"


def sieve_primes(limit: int) -> PrimeTable:
    """Build the smallest-prime-factor table for [2, limit]."""
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    if limit > _UINT32_MAX:
        raise ValueError("sieve entries are uint32; limit must be < 2**32")
    spf = np.arange(limit + 1, dtype=np.uint32)
    spf[:2] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            view = spf[p * p :: p]
            np.minimum(view, np.uint32(p), out=view)
    return PrimeTable(limit, spf)


def _walk_spf(n: int, spf: np.ndarray) -> dict:
    """Prime -> exponent map of n via smallest-prime-factor chasing."""
    out = {}
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def _trial_factor(n: int) -> dict:
    """Prime -> exponent map by trial division (no table needed)."""
    out = {}
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out[p] = e
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e:
                out[p] = e
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return dict(sorted(out.items()))


def _is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


@dataclass(frozen=True)
class Factorization:
    """Canonical factorization: (prime, exponent) pairs, primes ascending."""

    entries: tuple

    def value(self) -> int:
        v = 1
        for p, e in self.entries:
            v *= p**e
        return v

    def as_dict(self) -> dict:
        return dict(self.entries)

    def largest_prime(self) -> int:
        return self.entries[-1][0] if self.entries else 1

    def radical_value(self) -> int:
        v = 1
        for p, _ in self.entries:
            v *= p
        return v


def factorize(n: int, table: PrimeTable) -> Factorization:
    """Factor 1 <= n <= table.limit; factorize(1) is the empty product."""
    if n < 1:
        raise ValueError(f"cannot factor {n}; need n >= 1")
    if n > table.limit:
        raise SieveRangeError(f"{n} exceeds sieve limit {table.limit}")
    return Factorization(tuple(sorted(_walk_spf(n, table.spf).items())))


def largest_prime_factor(n: int, table: PrimeTable | None = None) -> int:
    """P(n): greatest prime dividing n, with P(1) = 1."""
    if n < 1:
        raise ValueError(f"largest_prime_factor needs n >= 1, got {n}")
    if n == 1:
        return 1
    if table is not None and n <= table.limit:
        return max(_walk_spf(n, table.spf))
    return max(_trial_factor(n))


def radical(n: int, table: PrimeTable | None = None) -> int:
    """N(n): product of the distinct primes dividing n; N(1) = 1."""
    if n < 1:
        raise ValueError(f"radical needs n >= 1, got {n}")
    if n == 1:
        return 1
    if table is not None and n <= table.limit:
        fac = _walk_spf(n, table.spf)
    else:
        fac = _trial_factor(n)
    out = 1
    for p in fac:
        out *= p
    return out


def valuation(n: int, p: int, table: PrimeTable | None = None) -> int:
    """Largest e with p**e | n, for prime p and n >= 1."""
    if n < 1:
        raise ValueError(f"valuation needs n >= 1, got {n}")
    if table is not None and p <= table.limit:
        p_ok = table.is_prime(p)
    else:
        p_ok = _is_prime_trial(p)
    if not p_ok:
        raise ValueError(f"{p} is not prime")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def factorial_valuation(m: int, p: int) -> int:
    """nu_p(m!) by the floor-sum  sum_{i>=1} floor(m / p^i)."""
    if m < 0:
        raise ValueError(f"factorial_valuation needs m >= 0, got {m}")
    if not _is_prime_trial(p):
        raise ValueError(f"{p} is not prime")
    total = 0
    q = p
    while q <= m:
        total += m // q
        q *= p
    return total


def double_factorial(m: int) -> int:
    """Exact m!!, with 0!! = 1!! = 1.

    Uses (2l)!! = 2^l * l!  and  (2l-1)!! = (2l)! / (2^l * l!), so
    m!! * (m-1)!! = m! holds exactly for every m >= 1.
    """
    if m < 0:
        raise ValueError(f"double factorial needs m >= 0, got {m}")
    if m <= 1:
        return 1
    if m % 2 == 0:
        half = m // 2
        return (1 << half) * math.factorial(half)
    half = (m + 1) // 2
    return math.factorial(m + 1) // ((1 << half) * math.factorial(half))


def log_double_factorial(m: int) -> float:
    """Natural log of m!! via lgamma (exact up to float rounding)."""
    if m < 0:
        raise ValueError(f"double factorial needs m >= 0, got {m}")
    if m <= 1:
        return 0.0
    if m % 2 == 0:
        half = m // 2
        return half * math.log(2.0) + math.lgamma(half + 1)
    half = (m + 1) // 2
    return math.lgamma(m + 2) - half * math.log(2.0) - math.lgamma(half + 1)


class ExpVec:
    """Sparse prime-exponent vector standing for the product prod p^e.

    Lets gigantic products (double factorials and their products) be
    compared and divided without ever materializing the integer.  Two
    vectors are equal iff the represented integers are equal.  exact_div
    raises when any exponent would go negative, i.e. when the quotient
    would not be an integer.  Keys are trusted to be prime.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: dict | None = None):
        clean = {}
        for p, e in (entries or {}).items():
            if e < 0:
                raise ValueError(f"negative exponent for prime {p}")
            if e:
                clean[int(p)] = int(e)
        self.entries = dict(sorted(clean.items()))

    @classmethod
    def from_int(cls, n: int, table: PrimeTable) -> "ExpVec":
        return cls(factorize(n, table).as_dict())

    def __eq__(self, other):
        if not isinstance(other, ExpVec):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(tuple(self.entries.items()))

    def __bool__(self):
        return bool(self.entries)

    def __mul__(self, other: "ExpVec") -> "ExpVec":
        out = dict(self.entries)
        for p, e in other.entries.items():
            out[p] = out.get(p, 0) + e
        return ExpVec(out)

    def divides(self, other: "ExpVec") -> bool:
        return all(other.entries.get(p, 0) >= e for p, e in self.entries.items())

    def exact_div(self, other: "ExpVec") -> "ExpVec":
        """self / other; raises ValueError unless other divides self."""
        out = dict(self.entries)
        for p, e in other.entries.items():
            r = out.get(p, 0) - e
            if r < 0:
                raise ValueError(f"division not exact at prime {p}")
            if r:
                out[p] = r
            else:
                out.pop(p, None)
        return ExpVec(out)

    def to_int(self) -> int:
        v = 1
        for p, e in self.entries.items():
            v *= p**e
        return v

    def __repr__(self):
        return f"ExpVec({self.entries})"


def double_factorial_expvec(m: int, table: PrimeTable) -> ExpVec:
    """Prime-exponent form of m!! without computing the product."""
    if m < 0:
        raise ValueError(f"double factorial needs m >= 0, got {m}")
    if m > table.limit:
        raise SieveRangeError(f"{m} exceeds sieve limit {table.limit}")
    if m <= 1:
        return ExpVec({})
    entries = {}
    if m % 2 == 0:
        half = m // 2
        entries[2] = half + factorial_valuation(half, 2)
        for p in table.primes_leq(half):
            if p == 2:
                continue
            e = factorial_valuation(half, int(p))
            if e:
                entries[int(p)] = e
    else:
        half = (m + 1) // 2
        for p in table.primes_leq(m):
            if p == 2:
                continue
            e = factorial_valuation(m + 1, int(p)) - factorial_valuation(half, int(p))
            if e:
                entries[int(p)] = e
    return ExpVec(entries)


@dataclass(frozen=True)
class BlockReport:
    """Anatomy of the consecutive-integer product x(x+1)...(x+k-1)."""

    x: int
    k: int
    lpf: int
    val2: int
    all_composite: bool
    term_radicals: tuple


def analyze_block(x: int, k: int, table: PrimeTable) -> BlockReport:
    """Factor every term of x(x+1)...(x+k-1); never forms the product.

    lpf is the max over terms of each term's largest prime factor, val2
    the total power of 2, all_composite true iff no term is prime.
    """
    if x < 2:
        raise ValueError(f"block start must be >= 2, got {x}")
    if k < 1:
        raise ValueError(f"block length must be >= 1, got {k}")
    hi = x + k - 1
    if hi > table.limit:
        raise SieveRangeError(f"block end {hi} exceeds sieve limit {table.limit}")
    spf = table.spf
    lpf = 1
    val2 = 0
    all_composite = True
    rads = []
    for t in range(x, hi + 1):
        if int(spf[t]) == t:
            all_composite = False
        fac = _walk_spf(t, spf)
        rad = 1
        for p in fac:
            rad *= p
        rads.append(rad)
        val2 += fac.get(2, 0)
        big = max(fac)
        if big > lpf:
            lpf = big
    return BlockReport(x, k, lpf, val2, all_composite, tuple(rads))


def theta(nu, table: PrimeTable) -> float:
    """Chebyshev theta: sum of log p over primes p <= nu (natural log)."""
    if not nu > 1:
        raise ValueError(f"theta needs nu > 1, got {nu}")
    if nu > table.limit:
        raise SieveRangeError(f"nu={nu} exceeds sieve limit {table.limit}")
    ps = table.primes_leq(nu).astype(np.float64)
    return float(np.log(ps).sum())


def mertens_log_sum(nu, table: PrimeTable) -> float:
    """sum of log(p)/p over primes p <= nu."""
    if not nu > 1:
        raise ValueError(f"mertens_log_sum needs nu > 1, got {nu}")
    if nu > table.limit:
        raise SieveRangeError(f"nu={nu} exceeds sieve limit {table.limit}")
    ps = table.primes_leq(nu).astype(np.float64)
    return float((np.log(ps) / ps).sum())


def factorial_valuations(m: int, primes: np.ndarray) -> np.ndarray:
    """Vector of nu_p(m!) over an ascending int64 prime array."""
    if m < 0:
        raise ValueError(f"factorial_valuations needs m >= 0, got {m}")
    if m >> 31:
        raise ValueError("vectorized floor sums support m < 2**31")
    acc = np.zeros(primes.size, dtype=np.int64)
    q = primes.astype(np.int64, copy=True)
    while True:
        mask = q <= m
        if not mask.any():
            return acc
        acc[mask] += m // q[mask]
        q[mask] *= primes[mask]


def double_factorial_valuations(m: int, primes: np.ndarray) -> np.ndarray:
    """Vector of nu_p(m!!) over an ascending prime array (2 may be included).

    Even m = 2l: nu_2 = l + nu_2(l!), odd p: nu_p(l!).
    Odd m:       nu_2 = 0,            odd p: nu_p((m+1)!) - nu_p(((m+1)/2)!).
    """
    if m < 0:
        raise ValueError(f"double_factorial_valuations needs m >= 0, got {m}")
    has2 = primes.size > 0 and int(primes[0]) == 2
    if m <= 1:
        return np.zeros(primes.size, dtype=np.int64)
    if m % 2 == 0:
        half = m // 2
        vec = factorial_valuations(half, primes)
        if has2:
            vec[0] += half
        return vec
    vec = factorial_valuations(m + 1, primes) - factorial_valuations((m + 1) // 2, primes)
    if has2:
        vec[0] = 0
    return vec


def lpf_array(hi: int, table: PrimeTable) -> np.ndarray:
    """Array a with a[i] = P(i) for 0 <= i <= hi (a[0] = a[1] = 1)."""
    if hi > table.limit:
        raise SieveRangeError(f"{hi} exceeds sieve limit {table.limit}")
    res = np.ones(hi + 1, dtype=np.int64)
    rem = np.arange(hi + 1, dtype=np.int64)
    rem[:2] = 1
    spf = table.spf
    idx = np.flatnonzero(rem > 1)
    while idx.size:
        p = spf[rem[idx]].astype(np.int64)
        res[idx] = np.maximum(res[idx], p)
        rem[idx] //= p
        idx = idx[rem[idx] > 1]
    return res


def radical_array(hi: int, table: PrimeTable) -> np.ndarray:
    """Array a with a[i] = N(i) for 0 <= i <= hi (a[0] = a[1] = 1)."""
    if hi > table.limit:
        raise SieveRangeError(f"{hi} exceeds sieve limit {table.limit}")
    rad = np.ones(hi + 1, dtype=np.int64)
    rem = np.arange(hi + 1, dtype=np.int64)
    rem[:2] = 1
    last = np.zeros(hi + 1, dtype=np.int64)
    spf = table.spf
    idx = np.flatnonzero(rem > 1)
    while idx.size:
        p = spf[rem[idx]].astype(np.int64)
        fresh = p != last[idx]
        tgt = idx[fresh]
        rad[tgt] *= p[fresh]
        last[idx] = p
        rem[idx] //= p
        idx = idx[rem[idx] > 1]
    return rad
