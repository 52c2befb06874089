#!/usr/bin/env python3
"""Double factorials, exactly: values, identities, prime-exponent form.

Walks the arithmetic layer everything else is built on: m!! as an exact
integer, the two structural identities, and the sparse exponent vectors
that let gigantic products be compared without ever materializing them.
"""

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))  # run from a checkout

from dflab import (
    double_factorial,
    double_factorial_expvec,
    factorial_valuation,
    factorize,
    sieve_primes,
)

table = sieve_primes(10_000)

print("== values ==")
for m in (0, 1, 5, 9, 10, 20):
    print(f"{m:>3}!! = {double_factorial(m)}")

print("\n== the two identities behind everything ==")
print("m!! * (m-1)!! = m!      for m up to 300:",
      all(double_factorial(m) * double_factorial(m - 1) == math.factorial(m)
          for m in range(1, 301)))
print("(2l)!! = 2^l * l!       for l up to 150:",
      all(double_factorial(2 * l) == 2**l * math.factorial(l) for l in range(151)))

print("\n== prime-exponent form ==")
for m in (9, 10, 30):
    ev = double_factorial_expvec(m, table)
    print(f"{m:>3}!! = {ev.entries}  ->  {ev.to_int()}")

print("\n== exponent vectors compose like integers ==")
ten = double_factorial_expvec(10, table)
nine = double_factorial_expvec(9, table)
product = ten * nine
print("10!! * 9!! =", product.entries)
print("equals 10! =", product.to_int() == math.factorial(10))
print("9!! divides the product:", nine.divides(product))
print("product / 9!! recovers 10!!:", product.exact_div(nine) == ten)

print("\n== Legendre floor sums ==")
for m, p in ((10, 2), (16, 2), (100, 5)):
    print(f"nu_{p}({m}!) = {factorial_valuation(m, p)}")

print("\n== factorization via the sieve ==")
for n in (90, 4374, 9973):
    print(f"{n} = {dict(factorize(n, table).entries)}")
