"""The polynomials p_n(z; x_1..x_m), built by four independent routes.

All routes emit into the shared table (z, x1..xm, w); ``w`` is the scratch
variable with w^n = z and never survives into a result.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import comb

from .errors import CrossCheckFailure, InvariantBreach, UsageError
from .polymatrix import (PolyMatrix, char_poly, companion, det_bareiss,
                         kronecker_sum)
from .polyring import (Polynomial, VarTable, is_homogeneous, is_symmetric,
                       reduce_w_power, substitute)

log = logging.getLogger(__name__)

MAX_MATRIX_ORDER = 243


class Route(str, Enum):
    KRONECKER = "kronecker"
    WENDT = "wendt"
    BLOCK_POWER = "blockpower"
    RESULTANT = "resultant"


# Which companion arguments make det(A^n + (-1)^(n+1) x_1 I) reproduce p_n:
# "twisted" uses (-1)^(n+1) x_j as in the Kronecker-sum formula, "literal"
# uses x_j as printed for the block-power formula.  Only "twisted" agrees
# with the Kronecker route for even n (see resolve_block_power_convention).
BLOCK_POWER_CONVENTION = "twisted"


@dataclass
class PnRequest:
    n: int
    m: int = 2
    route: Route = Route.KRONECKER

    def __post_init__(self):
        self.route = Route(self.route)
        if self.n < 1 or self.m < 1:
            raise UsageError("n and m must be positive")
        if self.route in (Route.WENDT, Route.RESULTANT) and self.m != 2:
            raise UsageError(f"route {self.route.value} requires m = 2")
        if self.route == Route.BLOCK_POWER and self.m < 2:
            raise UsageError("route blockpower requires m >= 2")


@lru_cache(maxsize=None)
def pn_vars(m: int) -> VarTable:
    return VarTable(("z",) + tuple(f"x{j}" for j in range(1, m + 1)) + ("w",))


def output_vars(m: int) -> list[str]:
    """The variables p_n is symmetric in: z, x1..xm."""
    return ["z"] + [f"x{j}" for j in range(1, m + 1)]


def _check_size(order: int):
    if order > MAX_MATRIX_ORDER:
        raise UsageError(f"matrix order {order} exceeds the supported bound {MAX_MATRIX_ORDER}")


def root_companion(n: int, a0: Polynomial) -> PolyMatrix:
    """Companion matrix of t^n + a0."""
    zero = Polynomial.zero(a0.vars)
    return companion([a0] + [zero] * (n - 1))


def _kron_sum_all(mats: list[PolyMatrix]) -> PolyMatrix:
    K = mats[0]
    for F in mats[1:]:
        K = kronecker_sum(K, F)
    return K


def kronecker_matrix(n: int, m: int, vars: VarTable | None = None) -> PolyMatrix:
    vars = vars or pn_vars(m)
    sign = (-1) ** (n + 1)
    return _kron_sum_all([root_companion(n, Polynomial.var(vars, f"x{j}") * sign)
                          for j in range(1, m + 1)])


def pn_kronecker(n: int, m: int = 2) -> Polynomial:
    """p_n from the characteristic polynomial (in w) of the Kronecker sum of companions."""
    PnRequest(n, m, Route.KRONECKER)
    _check_size(n ** m)
    vars = pn_vars(m)
    chi = char_poly(kronecker_matrix(n, m, vars), "w")
    return reduce_w_power(chi, "w", "z", n)


def wendt_xyz_matrix(n: int, vars: VarTable | None = None) -> PolyMatrix:
    """y-circulant Circ_y(w^n + (-1)^(n+1) x + y, C(n,1) w, ..., C(n,n-1) w^(n-1))."""
    if n < 1:
        raise UsageError("n must be positive")
    vars = vars or pn_vars(2)
    w = Polynomial.var(vars, "w")
    x = Polynomial.var(vars, "x1")
    y = Polynomial.var(vars, "x2")
    diag = w ** n + x * (-1) ** (n + 1) + y
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(diag)
            elif j > i:
                k = j - i
                row.append(y * w ** k * comb(n, k))
            else:
                k = n - (i - j)
                row.append(w ** k * comb(n, k))
        rows.append(row)
    return PolyMatrix.from_rows(vars, rows)


def pn_wendt(n: int) -> Polynomial:
    """p_n(z; x, y) as the determinant of the Wendt (x, y, z)-matrix."""
    PnRequest(n, 2, Route.WENDT)
    return reduce_w_power(det_bareiss(wendt_xyz_matrix(n)), "w", "z", n)


def block_power_matrix(n: int, m: int, convention: str = BLOCK_POWER_CONVENTION) -> PolyMatrix:
    """B = A^n + (-1)^(n+1) x_1 I with A = wI - F(x_2) (+) ... (+) F(x_m)."""
    if m < 2:
        raise UsageError("block-power construction needs m >= 2")
    if convention not in ("twisted", "literal"):
        raise UsageError(f"unknown sign convention {convention!r}")
    _check_size(n ** (m - 1))
    vars = pn_vars(m)
    sign = (-1) ** (n + 1) if convention == "twisted" else 1
    K = _kron_sum_all([root_companion(n, Polynomial.var(vars, f"x{j}") * sign)
                       for j in range(2, m + 1)])
    N = K.rows
    A = PolyMatrix.scalar(vars, N, Polynomial.var(vars, "w")) - K
    x1 = Polynomial.var(vars, "x1")
    return A ** n + PolyMatrix.scalar(vars, N, x1 * (-1) ** (n + 1))


def pn_block_power(n: int, m: int = 2, convention: str = BLOCK_POWER_CONVENTION) -> Polynomial:
    PnRequest(n, m, Route.BLOCK_POWER)
    B = block_power_matrix(n, m, convention)
    return reduce_w_power(det_bareiss(B), "w", "z", n)


RESULTANT_VARS = VarTable(("z", "x1", "x2", "u", "v", "t"))


def resultant_raw(n: int) -> Polynomial:
    """res_t(z - (u + v t)^n, t^n - 1) over formal u, v, z."""
    from .elimination import UniPoly, sylvester_resultant

    vars = RESULTANT_VARS
    zero = Polynomial.zero(vars)
    u = Polynomial.var(vars, "u")
    v = Polynomial.var(vars, "v")
    q = [u ** (n - k) * v ** k * (-comb(n, k)) for k in range(n + 1)]
    q[0] = q[0] + Polynomial.var(vars, "z")
    g = [Polynomial.constant(vars, -1)] + [zero] * (n - 1) + [Polynomial.one(vars)]
    return sylvester_resultant(UniPoly("t", tuple(q)), UniPoly("t", tuple(g)))


def pn_resultant(n: int) -> Polynomial:
    """p_n = (-1)^n res_t(z - (u + v t)^n, t^n - 1) with u^n = (-1)^n x, v^n = (-1)^n y."""
    PnRequest(n, 2, Route.RESULTANT)
    vars = RESULTANT_VARS
    r = resultant_raw(n)
    iu, iv = vars.index("u"), vars.index("v")
    x = Polynomial.var(vars, "x1") * (-1) ** n
    y = Polynomial.var(vars, "x2") * (-1) ** n
    out = Polynomial.zero(vars)
    xp: dict[int, Polynomial] = {}
    yp: dict[int, Polynomial] = {}
    for exps, c in r.items():
        eu, ev = exps[iu], exps[iv]
        if eu % n or ev % n:
            raise InvariantBreach(f"u^{eu} v^{ev} is not a power of (u^{n}, v^{n})")
        rest = list(exps)
        rest[iu] = rest[iv] = 0
        a, b = eu // n, ev // n
        if a not in xp:
            xp[a] = x ** a
        if b not in yp:
            yp[b] = y ** b
        out = out + Polynomial(vars, {tuple(rest): c}) * xp[a] * yp[b]
    out = out * (-1) ** n
    return out.convert(pn_vars(2))


BUILDERS = {
    Route.KRONECKER: lambda n, m: pn_kronecker(n, m),
    Route.WENDT: lambda n, m: pn_wendt(n),
    Route.BLOCK_POWER: lambda n, m: pn_block_power(n, m),
    Route.RESULTANT: lambda n, m: pn_resultant(n),
}


def build(n: int, m: int = 2, route: Route | str = Route.KRONECKER) -> Polynomial:
    req = PnRequest(n, m, route)
    return BUILDERS[req.route](n, m)


def available_routes(m: int) -> list[Route]:
    if m == 2:
        return list(Route)
    if m > 2:
        return [Route.KRONECKER, Route.BLOCK_POWER]
    return [Route.KRONECKER]


@dataclass
class CrossCheck:
    n: int
    m: int
    results: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        vals = list(self.results.values())
        return all(v == vals[0] for v in vals[1:])

    @property
    def poly(self) -> Polynomial:
        return next(iter(self.results.values()))


def cross_check(n: int, m: int = 2, routes=None) -> CrossCheck:
    routes = [Route(r) for r in (routes or available_routes(m))]
    cc = CrossCheck(n, m)
    for r in routes:
        cc.results[r.value] = build(n, m, r)
    return cc


def check_structure(p: Polynomial, n: int, m: int) -> bool:
    """Symmetric in z, x1..xm and homogeneous of degree n^(m-1)."""
    return is_symmetric(p, output_vars(m)) and is_homogeneous(p, n ** (m - 1))


def resolve_block_power_convention(n_max: int = 4, m_max: int = 3) -> dict:
    """Try both sign conventions of the block-power formula against the Kronecker route."""
    report = {}
    for conv in ("twisted", "literal"):
        ok = True
        for m in range(2, m_max + 1):
            for n in range(1, n_max + 1):
                if n ** (m - 1) > 16:
                    continue
                if pn_block_power(n, m, conv) != pn_kronecker(n, m):
                    ok = False
                    break
            if not ok:
                break
        report[conv] = ok
    accepted = [c for c in ("twisted", "literal") if report[c]]
    if not accepted:
        raise CrossCheckFailure("no sign convention reconciles the block-power route")
    report["accepted"] = accepted[0]
    return report


def sign_alternate(B: PolyMatrix) -> PolyMatrix:
    """Negate every entry with i + j odd."""
    rows = B.to_rows()
    return PolyMatrix.from_rows(B.vars, [[-e if (i + j) % 2 else e for j, e in enumerate(r)]
                                         for i, r in enumerate(rows)])


def offdiag_nonnegative(B: PolyMatrix) -> bool:
    return all(c > 0 for i in range(B.rows) for j in range(B.cols) if i != j
               for _, c in B[i, j].items())


def evaluate_matrix(B: PolyMatrix, values: dict[str, int]) -> list[list[int]]:
    out = []
    for row in B.to_rows():
        r = []
        for e in row:
            for name, val in values.items():
                e = substitute(e, name, val)
            r.append(e.constant_value())
        out.append(r)
    return out


def wendt_mn_matrix(n: int, m: int) -> list[list[int]]:
    """B with signs made positive, at x_2 = .. = x_m = z = w = 1, x_1 = (-1)^n."""
    B = sign_alternate(block_power_matrix(n, m))
    vals = {f"x{j}": 1 for j in range(2, m + 1)}
    vals.update(w=1, z=1, x1=(-1) ** n)
    return evaluate_matrix(B, vals)


def orthosymmetry_check(n: int, m: int = 2) -> bool:
    if n < 1 or m < 2:
        raise UsageError("need n >= 1 and m >= 2")
    B = block_power_matrix(n, m)
    if not B.is_persymmetric():
        return False
    W = wendt_mn_matrix(n, m)
    N = len(W)
    sym = all(W[i][j] == W[j][i] for i in range(N) for j in range(N))
    persym = all(W[i][j] == W[N - 1 - j][N - 1 - i] for i in range(N) for j in range(N))
    return sym and persym
