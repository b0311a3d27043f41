"""Miller-Rabin primality and Pollard-rho/Brent factorization."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd, isqrt

from ..errors import UsageError

# First 13 primes as Miller-Rabin bases are deterministic below this bound.
DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
_FIXED_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
RANDOM_ROUNDS = 40
TRIAL_LIMIT = 10 ** 6
DEFAULT_RHO_BUDGET = 10 ** 7


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES: list[int] | None = None


def small_primes() -> list[int]:
    global _SMALL_PRIMES
    if _SMALL_PRIMES is None:
        _SMALL_PRIMES = _sieve(TRIAL_LIMIT)
    return _SMALL_PRIMES


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int, rng: random.Random | None = None) -> bool:
    if n < 0:
        raise UsageError("primality test needs n >= 0")
    if n < 2:
        return False
    for p in _FIXED_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_strong_probable_prime(n, a, d, s) for a in _FIXED_BASES):
        return False
    if n < DETERMINISTIC_LIMIT:
        return True
    rng = rng or random.Random(n)
    return all(_strong_probable_prime(n, rng.randrange(2, n - 1), d, s)
               for _ in range(RANDOM_ROUNDS))


def pollard_brent(n: int, budget: int, rng: random.Random) -> int | None:
    """A nontrivial factor of composite n, or None when the budget runs out."""
    if n % 2 == 0:
        return 2
    spent = 0
    while spent < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            spent += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


@dataclass
class FactoredInteger:
    sign: int
    factors: list = field(default_factory=list)  # (prime, exponent), increasing
    certified: bool = True
    uncertified: list = field(default_factory=list)  # composite cofactors left over

    def value(self) -> int:
        v = self.sign
        for p, e in self.factors:
            v *= p ** e
        for c in self.uncertified:
            v *= c
        return v

    def __str__(self) -> str:
        body = " ".join(f"{p}^{e}" for p, e in self.factors)
        body += "".join(f" [{c}]" for c in self.uncertified)
        body = body.strip() or "1"
        return f"- {body}" if self.sign < 0 else body

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "factors": [[str(p), e] for p, e in self.factors],
            "certified": self.certified,
            "uncertified": [str(c) for c in self.uncertified],
        }


def factorize(n: int, budget: int = DEFAULT_RHO_BUDGET, seed: int = 0) -> FactoredInteger:
    """Trial division to 10^6, then Pollard-rho (Brent) on what is left."""
    if n == 0:
        raise UsageError("cannot factor zero")
    sign = -1 if n < 0 else 1
    n = abs(n)
    found: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    rng = random.Random(seed)
    leftovers = []
    stack = [n] if n > 1 else []
    while stack:
        c = stack.pop()
        if is_probable_prime(c, rng):
            found[c] = found.get(c, 0) + 1
            continue
        r = isqrt(c)
        if r * r == c:
            stack += [r, r]
            continue
        d = pollard_brent(c, budget, rng)
        if d is None:
            leftovers.append(c)
        else:
            stack += [d, c // d]
    return FactoredInteger(sign, sorted(found.items()), not leftovers, sorted(leftovers))


def parse_factored(text: str) -> FactoredInteger:
    """Read the "- 2^2 3^5 ..." layout back into a FactoredInteger."""
    text = text.strip()
    sign = 1
    if text.startswith("-"):
        sign = -1
        text = text[1:].strip()
    factors = []
    if text and text != "1":
        for tok in text.split():
            p, _, e = tok.partition("^")
            factors.append((int(p), int(e or 1)))
    return FactoredInteger(sign, sorted(factors))
