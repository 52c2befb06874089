"""Independent reference implementations used only by the tests.

Everything here is deliberately naive (trial division, direct products,
exhaustive enumeration) so it shares no code path with the library.
"""


def trial_is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def trial_factor(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def df_direct(m: int) -> int:
    """m!! as a plain descending product."""
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def primes_upto(n: int) -> list:
    return [p for p in range(2, n + 1) if trial_is_prime(p)]


def enumerate_r0_solutions(n_max: int, t_max: int) -> set:
    """All (n, parts, classification) with every part even, by big-int products."""
    dfs = {m: df_direct(m) for m in range(3, n_max + 1)}
    found = set()

    def rec(n, target, max_v, prod, parts):
        for v in range(max_v, 3, -2):
            nxt = prod * dfs[v]
            if nxt > target:
                continue
            cur = parts + (v,)
            if nxt == target and len(cur) >= 2:
                cls = "trivial-even" if n - cur[0] == 2 else "nontrivial"
                found.add((n, cur, cls))
            elif nxt < target and len(cur) < t_max:
                rec(n, target, v, nxt, cur)

    for n in range(4, n_max + 1, 2):
        rec(n, dfs.get(n, df_direct(n)), n - 2, 1, ())
    return found


def enumerate_r1_solutions(n_max: int, t_max: int) -> set:
    """All (n, parts) with exactly one odd part, by big-int products."""
    dfs = {m: df_direct(m) for m in range(3, n_max + 1)}
    found = set()

    def rec(n, target, max_v, prod, parts, odd_used):
        for v in range(max_v, 2, -1):
            if v % 2 == 1 and odd_used:
                continue
            nxt = prod * dfs[v]
            if nxt > target:
                continue
            cur = parts + (v,)
            now_odd = odd_used or v % 2 == 1
            if nxt == target:
                if len(cur) >= 3 and now_odd:
                    found.add((n, cur))
            elif len(cur) < t_max:
                rec(n, target, v, nxt, cur, now_odd)

    for n in range(4, n_max + 1, 2):
        rec(n, dfs.get(n, df_direct(n)), n - 1, 1, (), False)
    return found
