"""Small deterministic number-theory helpers (trial division scale)."""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as sorted ``(p, e)`` pairs; ``1`` gives ``()``."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}: need a positive integer")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    """All divisors of ``n`` in ascending order."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def totient(m: int) -> int:
    """Euler's phi via the multiplicative formula."""
    if m < 1:
        raise ValueError(f"totient needs m >= 1, got {m}")
    result = m
    for p, _ in factorize(m):
        result = result // p * (p - 1)
    return result


def units(m: int) -> list[int]:
    """Reduced residue system Z*(m), by gcd filter. Z*(1) = [0]."""
    if m == 1:
        return [0]
    return [s for s in range(m) if gcd(s, m) == 1]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def first_primes(k: int) -> list[int]:
    out: list[int] = []
    c = 2
    while len(out) < k:
        if is_prime(c):
            out.append(c)
        c += 1
    return out
