"""Floating-point multiset model of the n-valued groups G_n and G_n^m.

Independent of the symbolic side: products are computed from explicit
n-th roots, and the universal 2- and 3-valued families by numerically
solving their defining polynomials in z.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Callable, Sequence

import mpmath
import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DegenerateLeadingCoefficient, UsageError

DEFAULT_TOL = 1e-8
DEGENERACY = 1e-10


def _close(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _rel_gap(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


@dataclass(frozen=True)
class ComplexMultiset:
    elems: tuple
    tol: float = DEFAULT_TOL

    def __init__(self, elems, tol: float = DEFAULT_TOL):
        object.__setattr__(self, "elems", tuple(complex(e) for e in elems))
        object.__setattr__(self, "tol", tol)

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def mismatch(self, other: "ComplexMultiset") -> float:
        """Largest relative gap in the best matching found; inf if sizes differ."""
        if len(self) != len(other):
            return math.inf
        if not self.elems:
            return 0.0
        a = sorted(self.elems, key=lambda c: (c.real, c.imag))
        b = sorted(other.elems, key=lambda c: (c.real, c.imag))
        tol = max(self.tol, other.tol)
        # greedy nearest neighbour
        free = list(b)
        worst = 0.0
        ok = True
        for x in a:
            j = min(range(len(free)), key=lambda i: abs(free[i] - x))
            g = _rel_gap(x, free[j])
            worst = max(worst, g)
            if g > tol:
                ok = False
                break
            free.pop(j)
        if ok:
            return worst
        # optimal assignment before declaring a mismatch
        cost = np.array([[_rel_gap(x, y) for y in b] for x in a])
        rows, cols = linear_sum_assignment(cost)
        return float(cost[rows, cols].max())

    def __eq__(self, other):
        if not isinstance(other, ComplexMultiset):
            return NotImplemented
        return self.mismatch(other) <= max(self.tol, other.tol)

    __hash__ = None


def epsilon(n: int) -> complex:
    return cmath.exp(2j * math.pi / n)


def principal_root(x: complex, n: int) -> complex:
    x = complex(x)
    if x == 0:
        return 0j
    return abs(x) ** (1.0 / n) * cmath.exp(1j * cmath.phase(x) / n)


def nth_roots(x: complex, n: int) -> list[complex]:
    """The n roots of x, ordered by root-of-unity index r = 1..n."""
    if n < 1:
        raise UsageError("n must be positive")
    r0 = principal_root(x, n)
    e = epsilon(n)
    return [r0 * e ** r for r in range(1, n + 1)]


def gmul(n: int, x: complex, y: complex, rotation: int = 0, tol: float = DEFAULT_TOL) -> ComplexMultiset:
    """x * y in G_n; ``rotation`` shifts the branch of the root of x (result is unchanged)."""
    if n < 1:
        raise UsageError("n must be positive")
    e = epsilon(n)
    rx = principal_root(x, n) * e ** rotation
    ry = principal_root(y, n)
    return ComplexMultiset([(rx + e ** r * ry) ** n for r in range(1, n + 1)], tol)


def _assoc_sides(mul: Callable, x, y, z):
    left = [v for w in mul(x, y) for v in mul(w, z)]
    right = [v for w in mul(y, z) for v in mul(x, w)]
    return left, right


def assoc_check(n: int, x: complex, y: complex, z: complex, tol: float = DEFAULT_TOL) -> bool:
    return assoc_mismatch(n, x, y, z, tol) <= tol


def assoc_mismatch(n: int, x, y, z, tol: float = DEFAULT_TOL) -> float:
    left, right = _assoc_sides(lambda a, b: gmul(n, a, b, tol=tol), x, y, z)
    return ComplexMultiset(left, tol).mismatch(ComplexMultiset(right, tol))


def pn_roots_explicit(n: int, xs: Sequence[complex]) -> list[complex]:
    """Roots in z of prod_s (z^(1/n) + sum_j eps^(s_j) x_j^(1/n)), with s_1 = 0.

    Fixing s_1 leaves one representative per root: the full product over all
    s repeats each factor n times up to a root of unity on z^(1/n).
    """
    e = epsilon(n)
    r = [principal_root(x, n) for x in xs]
    out = []
    for s in product(range(n), repeat=len(xs) - 1):
        total = r[0] + sum(e ** k * rj for k, rj in zip(s, r[1:]))
        out.append((-total) ** n)
    return out


def numeric_coeffs(pn, xs: Sequence[complex]) -> list[complex]:
    """Coefficients (lowest first) in z of a symbolic p_n evaluated at x_j = xs[j]."""
    vars = pn.vars
    iz = vars.index("z")
    idx = [vars.index(f"x{j}") for j in range(1, len(xs) + 1)]
    deg = pn.degree_in("z")
    coeffs = [0j] * (deg + 1)
    for exps, c in pn.items():
        term = complex(c)
        for i, x in zip(idx, xs):
            if exps[i]:
                term *= complex(x) ** exps[i]
        coeffs[exps[iz]] += term
    return coeffs


def poly_roots(coeffs: Sequence[complex]) -> list[complex]:
    """Roots via eigenvalues of the companion matrix (numpy)."""
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    if len(c) < 2:
        return []
    return [complex(r) for r in np.roots(c[::-1])]


def roots_match_pn(n: int, m: int, xs: Sequence[complex], pn=None, tol: float = 1e-7) -> bool:
    return roots_mismatch_pn(n, m, xs, pn, tol) <= tol


def roots_mismatch_pn(n: int, m: int, xs: Sequence[complex], pn=None, tol: float = 1e-7) -> float:
    if len(xs) != m:
        raise UsageError("need exactly m arguments")
    if pn is None:
        from .pn_builders import pn_kronecker
        pn = pn_kronecker(n, m)
    found = ComplexMultiset(poly_roots(numeric_coeffs(pn, xs)), tol)
    expect = ComplexMultiset(pn_roots_explicit(n, xs), tol)
    return found.mismatch(expect)


def cartesian_gmul(n: int, m: int, xs: Sequence[complex], ys: Sequence[complex],
                   tol: float = DEFAULT_TOL) -> list[tuple]:
    """The n^m component-wise products in G_n^m, as a list of m-tuples."""
    if len(xs) != m or len(ys) != m:
        raise UsageError("vectors must have length m")
    parts = [gmul(n, x, y, tol=tol).elems for x, y in zip(xs, ys)]
    return [tuple(t) for t in product(*parts)]


def vector_multiset_equal(a: Sequence[tuple], b: Sequence[tuple], tol: float = DEFAULT_TOL) -> bool:
    if len(a) != len(b):
        return False
    cost = np.array([[max(_rel_gap(p, q) for p, q in zip(u, v)) for v in b] for u in a])
    rows, cols = linear_sum_assignment(cost)
    return bool(cost[rows, cols].max() <= tol)


# -- universal families ------------------------------------------------------

class Family(str, Enum):
    P2 = "p2"
    P3A = "p3a"
    P3B = "p3b"


@dataclass
class UniversalFamilyParams:
    which: Family
    k2: complex = 0j
    k4: complex = 0j
    k6: complex = 0j
    c: complex = 0j
    alpha: complex = 0j

    def __post_init__(self):
        self.which = Family(self.which)
        for v in (self.k2, self.k4, self.k6, self.c, self.alpha):
            if not cmath.isfinite(complex(v)):
                raise UsageError("family parameters must be finite")

    @property
    def n(self) -> int:
        return 2 if self.which == Family.P2 else 3

    def sigma_form(self, s1, s2, s3):
        """The family's expression in the elementary symmetric functions."""
        if self.which == Family.P2:
            k2, k4, k6 = self.k2, self.k4, self.k6
            return (s1 ** 2 - 4 * s2 + 2 * k2 * s3 + (k4 ** 2 - k6 * k2) * s3 ** 2
                    + 2 * k4 * s1 * s3 + 2 * k6 * s2 * s3)
        if self.which == Family.P3A:
            c = self.c
            return (s1 ** 3 - 27 * s3 + 18 * c * s1 ** 2 * s3 - 54 * c * s2 * s3
                    - 27 * c ** 2 * s2 ** 2 * s3 + 81 * c ** 2 * s1 * s3 ** 2)
        return (s1 + self.alpha * s3) ** 3


# Argument sign for the family law: P(z; x, y) = F(sigma(ARG_SIGN*x, ARG_SIGN*y, z)).
# The P2 display is in the variables (z; x, y) directly, the P3 displays are
# stated for P_3(z; -x, -y); both follow the rule sign = (-1)^n.
def family_arg_sign(n: int) -> int:
    return (-1) ** n


class _ZPoly:
    """Polynomial in z with mpmath coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = list(c)

    def _lift(self, o):
        return o if isinstance(o, _ZPoly) else _ZPoly([o])

    def __add__(self, o):
        o = self._lift(o)
        n = max(len(self.c), len(o.c))
        return _ZPoly([(self.c[i] if i < len(self.c) else 0) + (o.c[i] if i < len(o.c) else 0)
                       for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return _ZPoly([-a for a in self.c])

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        out = [0] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(o.c):
                out[i + j] += a * b
        return _ZPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = _ZPoly([1])
        for _ in range(e):
            out = out * self
        return out


def family_coeffs(params: UniversalFamilyParams, x, y) -> list:
    """Coefficients in z (lowest first, mpmath complex) of the family law at (x, y)."""
    s = family_arg_sign(params.n)
    a, b = mpmath.mpc(x) * s, mpmath.mpc(y) * s
    s1 = _ZPoly([a + b, 1])
    s2 = _ZPoly([a * b, a + b])
    s3 = _ZPoly([0, a * b])
    P = params.sigma_form(s1, s2, s3)
    c = P.c + [0] * (params.n + 1 - len(P.c))
    return c[:params.n + 1]


def closed_form_roots(c: Sequence) -> list:
    """Roots of a quadratic or cubic (coefficients lowest first, mpmath numbers).

    Closed forms stay accurate at repeated roots, where iterative solvers
    stall; the cubic family of case (ii) is a perfect cube.
    """
    d = len(c) - 1
    if d == 1:
        return [-c[0] / c[1]]
    if d == 2:
        a, b, k = c[2], c[1], c[0]
        disc = mpmath.sqrt(b * b - 4 * a * k)
        return [(-b + disc) / (2 * a), (-b - disc) / (2 * a)]
    if d == 3:
        a, b, k, e = c[3], c[2], c[1], c[0]
        b, k, e = b / a, k / a, e / a
        # depressed cubic t^3 + p t + q with x = t - b/3
        p = k - b * b / 3
        q = 2 * b ** 3 / 27 - b * k / 3 + e
        root = mpmath.sqrt(q * q / 4 + p ** 3 / 27)
        u3 = -q / 2 + root
        if abs(u3) < abs(-q / 2 - root):
            u3 = -q / 2 - root
        u = mpmath.cbrt(u3) if u3 != 0 else mpmath.mpc(0)
        w = mpmath.exp(2j * mpmath.pi / 3)
        out = []
        for j in range(3):
            uj = u * w ** j
            vj = -p / (3 * uj) if uj != 0 else mpmath.mpc(0)
            out.append(uj + vj - b / 3)
        return out
    raise UsageError(f"closed form only for degree <= 3, got {d}")


def family_mul(params: UniversalFamilyParams, x, y, dps: int = 40) -> list[complex]:
    with mpmath.workdps(dps):
        pc = [mpmath.mpc(params.k2), mpmath.mpc(params.k4), mpmath.mpc(params.k6),
              mpmath.mpc(params.c), mpmath.mpc(params.alpha)]
        hp = UniversalFamilyParams(params.which, *pc)
        c = family_coeffs(hp, x, y)
        scale = max(abs(v) for v in c) or 1
        if abs(c[-1]) <= DEGENERACY * scale:
            raise DegenerateLeadingCoefficient(f"leading coefficient {complex(c[-1])} at ({x}, {y})")
        roots = closed_form_roots(c)
        return [complex(r) for r in roots]


def family_assoc_mismatch(params: UniversalFamilyParams, x, y, z, tol: float = DEFAULT_TOL) -> float:
    left, right = _assoc_sides(lambda a, b: family_mul(params, a, b), x, y, z)
    return ComplexMultiset(left, tol).mismatch(ComplexMultiset(right, tol))


def universal_family_assoc(params: UniversalFamilyParams, x, y, z, tol: float = DEFAULT_TOL) -> bool:
    """Associativity of the family law at (x, y, z); raises DegenerateLeadingCoefficient."""
    return family_assoc_mismatch(params, x, y, z, tol) <= tol


# -- sampling campaigns ------------------------------------------------------

def random_disk(rng: random.Random, radius: float = 1.0) -> complex:
    r = radius * math.sqrt(rng.random())
    return cmath.rect(r, rng.uniform(-math.pi, math.pi))


@dataclass
class CampaignResult:
    passed: int = 0
    failed: int = 0
    skipped_degenerate: int = 0
    max_mismatch: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def record(self, mismatch: float, tol: float, sample):
        self.max_mismatch = max(self.max_mismatch, mismatch)
        if mismatch <= tol:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append([str(v) for v in sample])

    def to_json(self) -> dict:
        return {"passed": self.passed, "failed": self.failed,
                "skipped_degenerate": self.skipped_degenerate,
                "max_mismatch": self.max_mismatch}


def assoc_campaign(n: int, samples: int = 1000, seed: int = 0, radius: float = 10.0,
                   tol: float = DEFAULT_TOL) -> CampaignResult:
    rng = random.Random(seed)
    res = CampaignResult()
    for _ in range(samples):
        x, y, z = (random_disk(rng, radius) for _ in range(3))
        res.record(assoc_mismatch(n, x, y, z, tol), tol, (x, y, z))
    return res


def roots_campaign(n: int, m: int, samples: int = 20, seed: int = 0, pn=None,
                   tol: float = 1e-7) -> CampaignResult:
    if pn is None:
        from .pn_builders import pn_kronecker
        pn = pn_kronecker(n, m)
    rng = random.Random(seed)
    res = CampaignResult()
    for _ in range(samples):
        xs = [random_disk(rng) for _ in range(m)]
        res.record(roots_mismatch_pn(n, m, xs, pn, tol), tol, xs)
    return res


def random_family(which: Family | str, rng: random.Random) -> UniversalFamilyParams:
    which = Family(which)
    if which == Family.P2:
        return UniversalFamilyParams(which, k2=random_disk(rng), k4=random_disk(rng), k6=random_disk(rng))
    if which == Family.P3A:
        return UniversalFamilyParams(which, c=random_disk(rng))
    return UniversalFamilyParams(which, alpha=random_disk(rng))


def family_campaign(which: Family | str, samples: int = 200, seed: int = 0,
                    tol: float = DEFAULT_TOL, params: UniversalFamilyParams | None = None) -> CampaignResult:
    """Fresh random parameters per sample unless ``params`` pins them."""
    rng = random.Random(seed)
    res = CampaignResult()
    for _ in range(samples):
        p = params or random_family(which, rng)
        x, y, z = (random_disk(rng) for _ in range(3))
        try:
            mm = family_assoc_mismatch(p, x, y, z, tol)
        except DegenerateLeadingCoefficient:
            res.skipped_degenerate += 1
            continue
        res.record(mm, tol, (p.k2, p.k4, p.k6, p.c, p.alpha, x, y, z))
    return res
