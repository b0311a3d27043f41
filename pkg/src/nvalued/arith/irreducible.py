"""Irreducibility certificates for integer polynomials in one variable.

Two layers.  First a degree-pattern sieve: factor f mod several primes and
intersect the sets of achievable factor degrees; {0, deg f} proves
irreducibility.  Some irreducible polynomials (z^4 - 10 z^2 + 1 is the
classic one) split mod every prime, so the sieve can stall; the second
layer Hensel-lifts one modular factorization and tries every admissible
recombination of lifted factors (Zassenhaus).  Failure of all
recombinations is also a proof.

Polynomials are int lists, lowest degree first.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import gcd, isqrt
from typing import Sequence

from ..errors import UsageError
from .primes import is_probable_prime


class Status(str, Enum):
    IRREDUCIBLE = "Irreducible"
    REDUCIBLE = "Reducible"
    INCONCLUSIVE = "Inconclusive"


# -- GF(p)[t] --------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def pmod(a: Sequence[int], p: int) -> list[int]:
    return _trim([c % p for c in a])


def padd(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


def psub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


def pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            c = c * inv % p
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _trim(q), _trim([x % p for x in a[:db]])


def pmonic(a, p):
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def pgcd(a, b, p):
    a, b = pmod(a, p), pmod(b, p)
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    return pmonic(a, p) if a else []


def ppowmod(base, e, mod, p):
    result = [1]
    base = pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = pdivmod(pmul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = pdivmod(pmul(base, base, p), mod, p)[1]
    return result


def pderiv(a, p):
    return _trim([(i * c) % p for i, c in enumerate(a)][1:])


def distinct_degree(f, p):
    """[(product of all irreducible factors of degree d, d)] for squarefree monic f."""
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(h, p, f, p)
        g = pgcd(psub(h, [0, 1], p), f, p)
        if len(g) > 1:
            out.append((g, d))
            f = pdivmod(f, g, p)[0]
            h = pdivmod(h, f, p)[1]
    if len(f) > 1:
        out.append((pmonic(f, p), len(f) - 1))
    return out


def equal_degree(g, d, p, rng):
    """Split monic squarefree g (all factors of degree d) with Cantor-Zassenhaus; p odd."""
    if len(g) - 1 == d:
        return [g]
    while True:
        a = [rng.randrange(p) for _ in range(len(g) - 1)]
        a = _trim(a)
        if len(a) < 2:
            continue
        b = ppowmod(a, (p ** d - 1) // 2, g, p)
        h = pgcd(psub(b, [1], p), g, p)
        if 1 < len(h) < len(g):
            return (equal_degree(h, d, p, rng)
                    + equal_degree(pdivmod(g, h, p)[0], d, p, rng))


def factor_mod_p(f: Sequence[int], p: int, rng: random.Random | None = None) -> list[list[int]]:
    """Monic irreducible factors of squarefree f mod an odd prime p."""
    rng = rng or random.Random(p)
    fm = pmonic(pmod(f, p), p)
    out = []
    for g, d in distinct_degree(fm, p):
        out.extend(equal_degree(g, d, p, rng))
    return sorted(out, key=lambda g: (len(g), g))


def squarefree_mod(f, p) -> bool:
    fm = pmod(f, p)
    return len(pgcd(fm, pderiv(fm, p), p)) == 1


def subset_sums(degrees: Sequence[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


# -- integer side ----------------------------------------------------------

def content(f: Sequence[int]) -> int:
    g = 0
    for c in f:
        g = gcd(g, c)
    return g


def int_divides(g: Sequence[int], f: Sequence[int]) -> list[int] | None:
    """Quotient f / g in Z[t] when exact, else None."""
    f = list(f)
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return None
    q = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c:
            if c % g[-1]:
                return None
            c //= g[-1]
            q[i - dg] = c
            for j in range(dg + 1):
                f[i - dg + j] -= c * g[j]
    if any(f[:dg]):
        return None
    return q


def int_gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Primitive gcd in Z[t] by the primitive remainder sequence."""
    a = _prim(_trim(list(a)))
    b = _prim(_trim(list(b)))
    while b:
        if len(a) < len(b):
            a, b = b, a
            continue
        # pseudo-remainder of a by b
        r = list(a)
        lb = b[-1]
        while len(r) >= len(b) and r:
            c = r[-1]
            shift = len(r) - len(b)
            r = [x * lb for x in r]
            for j, y in enumerate(b):
                r[shift + j] -= c * y
            r = _trim(r)
        a, b = b, _prim(r)
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _prim(a):
    if not a:
        return a
    g = content(a)
    return [c // g for c in a]


def _symmetric(a, m):
    half = m // 2
    return [c - m if c > half else c for c in (x % m for x in a)]


def hensel_pair(f, g, h, p, k):
    """Lift f = g h (mod p), g monic, to mod p^k by linear lifting."""
    # s g + t h = 1 mod p
    s, t = _bezout(g, h, p)
    pk = p
    for _ in range(1, k):
        diff = [(a - b) for a, b in _zip_pad(f, _mul_int(g, h))]
        e = [c // pk % p for c in diff]
        e = _trim(e)
        if e:
            q, r = pdivmod(pmul(t, e, p), g, p)
            dh = padd(pmul(s, e, p), pmul(q, h, p), p)
            g = [a + pk * b for a, b in _zip_pad(g, r)]
            h = [a + pk * b for a, b in _zip_pad(h, dh)]
        pk *= p
        g = [c % pk for c in g]
        h = [c % pk for c in h]
    return _trim(g), _trim(h)


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)) for i in range(n)]


def _mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _bezout(a, b, p):
    r0, r1 = pmod(a, p), pmod(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    if len(r0) != 1:
        raise ValueError("factors are not coprime mod p")
    inv = pow(r0[0], -1, p)
    return [c * inv % p for c in s0], [c * inv % p for c in t0]


def hensel_lift(f, factors, p, k):
    """Lift f = lc * prod(factors) (mod p) to monic factors mod p^k."""
    pk = p ** k
    lc = f[-1]
    if len(factors) == 1:
        inv = pow(lc, -1, pk)
        return [[c * inv % pk for c in f]]
    g = factors[0]
    h = [lc % p]
    for fac in factors[1:]:
        h = pmul(h, fac, p)
    G, H = hensel_pair(f, g, h, p, k)
    return [G] + hensel_lift(H, factors[1:], p, k)


def mignotte_bound(f: Sequence[int]) -> int:
    """Coefficient bound for lc(f) * (any factor of f made to have lc(f))."""
    d = len(f) - 1
    norm = isqrt(sum(c * c for c in f)) + 1
    return (2 ** d) * norm * abs(f[-1])


@dataclass
class Certificate:
    status: Status
    degree: int
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status.value, "degree": self.degree, "evidence": self.evidence}


def _odd_primes(start=3):
    p = start
    while True:
        if is_probable_prime(p):
            yield p
        p += 2 if p > 2 else 1


def irreducibility_certificate(f: Sequence[int], primes: int = 20, seed: int = 0,
                               max_recombination_factors: int = 16) -> Certificate:
    f = [int(c) for c in f]
    f = _trim(f)
    if len(f) < 2:
        raise UsageError("need a polynomial of degree >= 1")
    if content(f) != 1:
        raise UsageError("polynomial must be primitive (content 1)")
    d = len(f) - 1
    if d == 1:
        return Certificate(Status.IRREDUCIBLE, d, {"method": "degree-one"})
    if f[0] == 0:
        return Certificate(Status.REDUCIBLE, d, {"method": "root", "factor": [0, 1]})
    g = int_gcd(f, [k * c for k, c in enumerate(f)][1:])
    if len(g) > 1:
        return Certificate(Status.REDUCIBLE, d, {"method": "repeated-factor", "factor": g})
    rng = random.Random(seed)
    lc = f[-1]
    surviving = set(range(d + 1))
    patterns: dict[int, list[int]] = {}
    best = None
    gen = _odd_primes()
    tried = 0
    while len(patterns) < primes and tried < 50 * primes:
        p = next(gen)
        tried += 1
        if lc % p == 0 or not squarefree_mod(f, p):
            continue
        facs = factor_mod_p(f, p, rng)
        degs = sorted(len(g) - 1 for g in facs)
        patterns[p] = degs
        surviving &= subset_sums(degs)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        if surviving == {0, d}:
            return Certificate(Status.IRREDUCIBLE, d, {
                "method": "degree-pattern",
                "patterns": {str(q): v for q, v in patterns.items()},
                "surviving_degrees": sorted(surviving),
            })
    evidence = {
        "patterns": {str(q): v for q, v in patterns.items()},
        "surviving_degrees": sorted(surviving),
    }
    if best is None:
        return Certificate(Status.INCONCLUSIVE, d, dict(evidence, method="none"))
    p, facs = best
    r = len(facs)
    if r > max_recombination_factors:
        return Certificate(Status.INCONCLUSIVE, d, dict(evidence, method="degree-pattern"))
    bound = 2 * mignotte_bound(f) + 1
    k = 1
    while p ** k <= bound:
        k += 1
    pk = p ** k
    lifted = hensel_lift(f, facs, p, k)
    for size in range(1, r // 2 + 1):
        for S in combinations(range(r), size):
            deg = sum(len(lifted[i]) - 1 for i in S)
            if deg not in surviving:
                continue
            cand = [lc % pk]
            for i in S:
                cand = [c % pk for c in _mul_int(cand, lifted[i])]
            cand = _symmetric(cand, pk)
            cont = content(cand)
            cand = [c // cont for c in cand]
            if int_divides(cand, f) is not None:
                return Certificate(Status.REDUCIBLE, d, dict(
                    evidence, method="zassenhaus", prime=p, precision=k,
                    factor=cand))
    return Certificate(Status.IRREDUCIBLE, d, dict(
        evidence, method="zassenhaus", prime=p, precision=k,
        lifted_factor_degrees=[len(g) - 1 for g in lifted]))
