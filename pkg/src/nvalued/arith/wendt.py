"""Wendt determinants, Wendt's congruence criterion, and the n^4 divisibility facts."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from ..elimination import int_resultant
from ..errors import InvariantBreach, UsageError
from ..polymatrix import int_det
from ..polyring import Polynomial, exact_div, poly_pow
from .primes import is_probable_prime


def wendt_matrix(n: int) -> list[list[int]]:
    """Circulant with first row C(n,0), C(n,1), ..., C(n,n-1)."""
    if n < 1:
        raise UsageError("n must be positive")
    return [[comb(n, (j - i) % n) for j in range(n)] for i in range(n)]


def wendt_det_matrix(n: int) -> int:
    return int_det(wendt_matrix(n))


def wendt_det_resultant(n: int) -> int:
    """res_t((1 + t)^n - t^n, t^n - 1)."""
    f = [comb(n, k) for k in range(n)]  # (1+t)^n - t^n
    g = [-1] + [0] * (n - 1) + [1]
    return int_resultant(f, g)


def wendt_det(n: int) -> int:
    a = wendt_det_matrix(n)
    b = wendt_det_resultant(n)
    if a != b:
        raise InvariantBreach(f"det W_{n}: matrix gives {a}, resultant gives {b}")
    return a


@dataclass
class WendtCriterion:
    p: int
    k: int
    q: int
    det: int
    divides: bool
    witness: tuple | None

    @property
    def consistent(self) -> bool:
        return self.divides == (self.witness is not None)

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "q": self.q, "det_W": str(self.det),
                "divides": self.divides,
                "witness": list(self.witness) if self.witness else None,
                "consistent": self.consistent}


def fermat_witness(p: int, q: int) -> tuple | None:
    """x, y, z in 1..q-1 with x^p + y^p + z^p = 0 mod q, or None.

    Exhaustive over residues: every x^p lands in the subgroup of p-th
    powers, so it suffices to scan pairs of that subgroup.
    """
    root = {}
    for x in range(1, q):
        root.setdefault(pow(x, p, q), x)
    powers = sorted(root)
    for a in powers:
        for b in powers:
            c = (-a - b) % q
            if c in root:
                return (root[a], root[b], root[c])
    return None


def wendt_criterion(p: int, k: int) -> WendtCriterion:
    if p < 3 or not is_probable_prime(p):
        raise UsageError(f"p = {p} must be an odd prime")
    if k < 1:
        raise UsageError("k must be positive")
    q = 2 * k * p + 1
    if not is_probable_prime(q):
        raise UsageError(f"q = 2kp + 1 = {q} is not prime")
    d = wendt_det(2 * k)
    return WendtCriterion(p, k, q, d, d % q == 0, fermat_witness(p, q))


def criterion_cases(q_max: int = 200) -> list[tuple[int, int]]:
    """All (p, k) with p an odd prime and q = 2kp + 1 a prime below q_max."""
    out = []
    for p in range(3, q_max):
        if not is_probable_prime(p):
            continue
        k = 1
        while 2 * k * p + 1 < q_max:
            if is_probable_prime(2 * k * p + 1):
                out.append((p, k))
            k += 1
    return out


def _require_prime_ge5(n: int):
    if n < 5 or not is_probable_prime(n):
        raise UsageError(f"n = {n} must be a prime >= 5")


def divisibility_quotient(n: int, pn: Polynomial | None = None) -> Polynomial:
    """(p_n - (x + y + z)^n) / (x y z), exactly."""
    from ..pn_builders import pn_wendt

    if pn is None:
        pn = pn_wendt(n)
    vars = pn.vars
    x, y, z = (Polynomial.var(vars, v) for v in ("x1", "x2", "z"))
    return exact_div(pn - poly_pow(x + y + z, n), x * y * z)


def n4_divisibility_check(n: int, pn: Polynomial | None = None) -> bool:
    _require_prime_ge5(n)
    q = divisibility_quotient(n, pn)
    mod = n ** 4
    return all(c % mod == 0 for _, c in q.items())


def central_binomial_minus_one_mod(n: int, modulus: int) -> int:
    """(C(2n-1, n-1) - 1) mod ``modulus`` via prod (n+i)/i, i < n."""
    num = den = 1
    for i in range(1, n):
        num = num * (n + i) % modulus
        den = den * i % modulus
    return (num * pow(den, -1, modulus) - 1) % modulus


def wolstenholme_check(n: int) -> dict:
    _require_prime_ge5(n)
    return {
        "mod_n3": central_binomial_minus_one_mod(n, n ** 3) == 0,
        "mod_n4": central_binomial_minus_one_mod(n, n ** 4) == 0,
    }


def binom_weighted_sum_identity(n: int) -> bool:
    """sum_{k=1}^{n-1} k C(n,k)^2 == n (C(2n-1, n-1) - 1)."""
    if n < 2:
        raise UsageError("n must be at least 2")
    lhs = sum(k * comb(n, k) ** 2 for k in range(1, n))
    return lhs == n * (comb(2 * n - 1, n - 1) - 1)
