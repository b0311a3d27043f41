"""Sylvester resultants, discriminants and the P_{x,y,z}(T) discriminant identity."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import InexactDivision, UsageError
from .polymatrix import PolyMatrix, det_bareiss
from .polyring import Polynomial, VarTable, exact_div, poly_pow


@dataclass(frozen=True)
class UniPoly:
    """Polynomial in ``variable`` with coefficients (lowest degree first) in the other variables."""

    variable: str
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs = coeffs[:-1]
        if not coeffs:
            raise UsageError("UniPoly needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)
        vars = coeffs[0].vars
        i = vars.index(self.variable)
        for c in coeffs:
            if c.vars != vars:
                raise UsageError("coefficients must share a variable table")
            if any(e[i] for e, _ in c.items()):
                raise UsageError(f"coefficient contains the main variable {self.variable!r}")

    @classmethod
    def from_poly(cls, p: Polynomial, variable: str) -> "UniPoly":
        parts = p.coeffs_in(variable)
        d = max(parts) if parts else 0
        zero = Polynomial.zero(p.vars)
        return cls(variable, tuple(parts.get(k, zero) for k in range(d + 1)))

    @property
    def vars(self) -> VarTable:
        return self.coeffs[0].vars

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0].is_zero():
            return -1
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Polynomial:
        return self.coeffs[-1]

    def to_poly(self) -> Polynomial:
        out = Polynomial.zero(self.vars)
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + c * Polynomial.var(self.vars, self.variable, k)
        return out


def sylvester_matrix(f: UniPoly, g: UniPoly) -> PolyMatrix:
    if f.variable != g.variable or f.vars != g.vars:
        raise UsageError("polynomials must share the main variable and table")
    m, n = f.degree, g.degree
    if m < 1 and n < 1:
        raise UsageError("resultant of two constants is undefined")
    size = m + n
    zero = Polynomial.zero(f.vars)
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - i - len(fc)))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - i - len(gc)))
    return PolyMatrix.from_rows(f.vars, rows)


def sylvester_resultant(f: UniPoly, g: UniPoly) -> Polynomial:
    """det of the Sylvester matrix: lc(f)^deg g * prod g(roots of f)."""
    return det_bareiss(sylvester_matrix(f, g))


def derivative(f: UniPoly) -> UniPoly:
    if f.degree < 1:
        return UniPoly(f.variable, (Polynomial.zero(f.vars),))
    return UniPoly(f.variable, tuple(c * k for k, c in enumerate(f.coeffs) if k))


def discriminant(f: UniPoly) -> Polynomial:
    """res(f, f') / lc(f); no (-1)^(d(d-1)/2) factor."""
    if f.degree < 2:
        raise UsageError("discriminant needs degree >= 2")
    r = sylvester_resultant(f, derivative(f))
    return exact_div(r, f.lc)


DISC_VARS = VarTable(("z", "x1", "x2", "T"))


def disc_poly(n: int, vars: VarTable = DISC_VARS) -> UniPoly:
    """P(T) = ((-1)^n x T^(n-1) + (-1)^n y)(1+T)^(n-1) - T^(n-1) z."""
    if n < 2:
        raise UsageError("n must be at least 2")
    x = Polynomial.var(vars, "x1")
    y = Polynomial.var(vars, "x2")
    z = Polynomial.var(vars, "z")
    T = Polynomial.var(vars, "T")
    s = (-1) ** n
    P = (x * T ** (n - 1) * s + y * s) * poly_pow(T + 1, n - 1) - T ** (n - 1) * z
    return UniPoly.from_poly(P, "T")


@dataclass
class DiscReport:
    n: int
    ratio: Polynomial | None
    constant: int | None
    expected_abs: int
    stated_sign: int
    ok: bool
    structural_failure: str | None = None

    @property
    def sign(self) -> int | None:
        if self.constant is None:
            return None
        return 1 if self.constant > 0 else -1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "constant": None if self.constant is None else str(self.constant),
            "constant_abs": None if self.constant is None else str(abs(self.constant)),
            "expected_abs": str(self.expected_abs),
            "sign": self.sign,
            "stated_sign": self.stated_sign,
            "sign_matches_stated": self.sign == self.stated_sign,
            "ok": self.ok,
            "structural_failure": self.structural_failure,
        }


def discriminant_identity_check(n: int, pn: Polynomial | None = None) -> DiscReport:
    """disc_T P(T) / ((xyz)^(n-2) p_n) should be the constant +-(n-1)^(2n-2)."""
    from .pn_builders import pn_kronecker

    if n < 2:
        raise UsageError("n must be at least 2")
    P = disc_poly(n)
    d = discriminant(P)
    if pn is None:
        pn = pn_kronecker(n, 2)
    pn = pn.convert(DISC_VARS)
    vars = DISC_VARS
    xyz = Polynomial.var(vars, "x1") * Polynomial.var(vars, "x2") * Polynomial.var(vars, "z")
    denom = poly_pow(xyz, n - 2) * pn
    expected = (n - 1) ** (2 * n - 2)
    try:
        ratio = exact_div(d, denom)
    except InexactDivision as exc:
        return DiscReport(n, None, None, expected, (-1) ** n, False, str(exc))
    if not ratio.is_constant():
        return DiscReport(n, ratio, None, expected, (-1) ** n, False, "quotient is not constant")
    c = ratio.constant_value()
    return DiscReport(n, ratio, c, expected, (-1) ** n, abs(c) == expected)


def circulant_resultant(coeffs: Sequence[int]) -> int:
    """res_t(a_0 + ... + a_{n-1} t^(n-1), t^n - 1) over the integers."""
    from .polymatrix import int_det

    n = len(coeffs)
    a = list(coeffs)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    f = [int(c) for c in a]
    g = [-1] + [0] * (n - 1) + [1]
    return int_resultant(f, g)


def int_sylvester(f: Sequence[int], g: Sequence[int]) -> list[list[int]]:
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    fc, gc = list(reversed(f)), list(reversed(g))
    rows = [[0] * i + fc + [0] * (size - i - len(fc)) for i in range(n)]
    rows += [[0] * i + gc + [0] * (size - i - len(gc)) for i in range(m)]
    return rows


def int_resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Sylvester resultant of integer polynomials given lowest coefficient first."""
    from .polymatrix import int_det

    f, g = list(f), list(g)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    while len(g) > 1 and g[-1] == 0:
        g.pop()
    if len(f) == 1 and len(g) == 1:
        raise UsageError("resultant of two constants is undefined")
    return int_det(int_sylvester(f, g))


def int_discriminant(f: Sequence[int]) -> int:
    f = list(f)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    d = len(f) - 1
    if d < 2:
        raise UsageError("discriminant needs degree >= 2")
    fp = [k * c for k, c in enumerate(f)][1:]
    r = int_resultant(f, fp)
    q, rem = divmod(r, f[-1])
    if rem:
        raise InexactDivision("leading coefficient does not divide res(f, f')")
    return q


def binomial_row(n: int) -> list[int]:
    return [comb(n, k) for k in range(n + 1)]
