"""Dense matrices over Polynomial and exact determinant kernels."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import InexactDivision, UsageError
from .polyring import Polynomial, VarTable, exact_div, int_div_exact


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major Polynomials
    vars: VarTable

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise UsageError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise UsageError("entry count does not match shape")
        for e in self.entries:
            if e.vars != self.vars:
                raise UsageError("all entries must share the variable table")

    @classmethod
    def from_rows(cls, vars: VarTable, rows: Sequence[Sequence]) -> "PolyMatrix":
        r = len(rows)
        c = len(rows[0])
        flat = []
        for row in rows:
            if len(row) != c:
                raise UsageError("ragged rows")
            for e in row:
                flat.append(e if isinstance(e, Polynomial) else Polynomial.constant(vars, e))
        return cls(r, c, tuple(flat), vars)

    @classmethod
    def identity(cls, vars: VarTable, n: int) -> "PolyMatrix":
        return cls.scalar(vars, n, Polynomial.one(vars))

    @classmethod
    def scalar(cls, vars: VarTable, n: int, value: Polynomial | int) -> "PolyMatrix":
        if isinstance(value, int):
            value = Polynomial.constant(vars, value)
        zero = Polynomial.zero(vars)
        return cls(n, n, tuple(value if i == j else zero for i in range(n) for j in range(n)), vars)

    @classmethod
    def zeros(cls, vars: VarTable, r: int, c: int) -> "PolyMatrix":
        zero = Polynomial.zero(vars)
        return cls(r, c, (zero,) * (r * c), vars)

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Polynomial]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[Polynomial]]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def map(self, f: Callable[[Polynomial], Polynomial]) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, tuple(f(e) for e in self.entries), self.vars)

    def _same_shape(self, other: "PolyMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise UsageError("shape mismatch")
        if self.vars != other.vars:
            raise UsageError("variable tables differ")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same_shape(other)
        return PolyMatrix(self.rows, self.cols,
                          tuple(a + b for a, b in zip(self.entries, other.entries)), self.vars)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same_shape(other)
        return PolyMatrix(self.rows, self.cols,
                          tuple(a - b for a, b in zip(self.entries, other.entries)), self.vars)

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda e: -e)

    def scale(self, c: Polynomial | int) -> "PolyMatrix":
        return self.map(lambda e: e * c)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise UsageError("inner dimensions differ")
        if self.vars != other.vars:
            raise UsageError("variable tables differ")
        zero = Polynomial.zero(self.vars)
        out = []
        b_cols = [[other[k, j] for k in range(other.rows)] for j in range(other.cols)]
        for i in range(self.rows):
            row = self.row(i)
            nz = [(k, a) for k, a in enumerate(row) if a]
            for j in range(other.cols):
                col = b_cols[j]
                acc = zero
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                out.append(acc)
        return PolyMatrix(self.rows, other.cols, tuple(out), self.vars)

    def __pow__(self, e: int) -> "PolyMatrix":
        if not self.is_square:
            raise UsageError("matrix power needs a square matrix")
        result = PolyMatrix.identity(self.vars, self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix.from_rows(self.vars, [[self[i, j] for i in range(self.rows)]
                                                for j in range(self.cols)])

    def anti_transpose(self) -> "PolyMatrix":
        """Reflection in the anti-diagonal: (i, j) -> (c-1-j, r-1-i)."""
        r, c = self.rows, self.cols
        return PolyMatrix.from_rows(self.vars, [[self[r - 1 - j, c - 1 - i] for j in range(r)]
                                                for i in range(c)])

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.transpose()

    def is_persymmetric(self) -> bool:
        return self.is_square and self == self.anti_transpose()

    def convert(self, vars: VarTable) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, tuple(e.convert(vars) for e in self.entries), vars)

    def to_json(self) -> list:
        return [[e.to_json() for e in row] for row in self.to_rows()]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.to_rows())


def companion(coeffs: Sequence[Polynomial]) -> PolyMatrix:
    """Frobenius companion matrix of t^m + a_{m-1} t^{m-1} + ... + a_0.

    ``coeffs`` is a_0..a_{m-1}; subdiagonal ones, last column -a_i.
    """
    if not coeffs:
        raise UsageError("companion matrix needs at least one coefficient")
    vars = coeffs[0].vars
    m = len(coeffs)
    zero, one = Polynomial.zero(vars), Polynomial.one(vars)
    rows = [[zero] * m for _ in range(m)]
    for i in range(1, m):
        rows[i][i - 1] = one
    for i, a in enumerate(coeffs):
        rows[i][m - 1] = -a
    return PolyMatrix.from_rows(vars, rows)


def kronecker_product(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    if A.vars != B.vars:
        raise UsageError("variable tables differ")
    zero = Polynomial.zero(A.vars)
    rows = []
    for i in range(A.rows):
        for k in range(B.rows):
            row = []
            for j in range(A.cols):
                a = A[i, j]
                for l in range(B.cols):
                    row.append(a * B[k, l] if a else zero)
            rows.append(row)
    return PolyMatrix.from_rows(A.vars, rows)


def kronecker_sum(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    """A (x) I_n + I_m (x) B."""
    if not (A.is_square and B.is_square):
        raise UsageError("Kronecker sum needs square matrices")
    return (kronecker_product(A, PolyMatrix.identity(A.vars, B.rows))
            + kronecker_product(PolyMatrix.identity(A.vars, A.rows), B))


def _bareiss(rows: list[list], divexact: Callable, is_zero: Callable) -> object:
    """Fraction-free elimination; returns the determinant (sign included)."""
    n = len(rows)
    M = [list(r) for r in rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        if is_zero(M[k][k]):
            for i in range(k + 1, n):
                if not is_zero(M[i][k]):
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return None
        p = M[k][k]
        rowk = M[k]
        nzk = [j for j in range(k + 1, n) if not is_zero(rowk[j])]
        for i in range(k + 1, n):
            rowi = M[i]
            a = rowi[k]
            if is_zero(a):
                for j in range(k + 1, n):
                    e = rowi[j]
                    if not is_zero(e):
                        rowi[j] = divexact(e * p, prev) if prev is not None else e * p
            else:
                nzk_set = set(nzk)
                for j in range(k + 1, n):
                    e = rowi[j]
                    if j in nzk_set:
                        v = e * p - a * rowk[j]
                    elif is_zero(e):
                        continue
                    else:
                        v = e * p
                    rowi[j] = divexact(v, prev) if prev is not None else v
            rowi[k] = rowi[k] * 0
        prev = p
    return (M[n - 1][n - 1], sign)


def det_bareiss(M: PolyMatrix) -> Polynomial:
    """Exact determinant by fraction-free Bareiss elimination."""
    if not M.is_square:
        raise UsageError("determinant of a non-square matrix")
    res = _bareiss(M.to_rows(), exact_div, lambda p: p.is_zero())
    if res is None:
        return Polynomial.zero(M.vars)
    d, sign = res
    return d if sign > 0 else -d


def _int_divexact(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise InexactDivision(f"{b} does not divide {a}")
    return q


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant of an integer matrix."""
    if not rows:
        return 1
    if any(len(r) != len(rows) for r in rows):
        raise UsageError("determinant of a non-square matrix")
    res = _bareiss([[int(x) for x in r] for r in rows], _int_divexact, lambda x: x == 0)
    if res is None:
        return 0
    d, sign = res
    return sign * d


def laplace_det(M: PolyMatrix) -> Polynomial:
    """Cofactor expansion along the first row; slow, for cross-checks."""
    n = M.rows
    rows = M.to_rows()

    def rec(rs, cols):
        if len(rs) == 1:
            return rows[rs[0]][cols[0]]
        total = Polynomial.zero(M.vars)
        r0 = rs[0]
        for idx, c in enumerate(cols):
            a = rows[r0][c]
            if a:
                minor = rec(rs[1:], cols[:idx] + cols[idx + 1:])
                total = total + a * minor if idx % 2 == 0 else total - a * minor
        return total

    return rec(list(range(n)), list(range(n)))


def char_poly(M: PolyMatrix, t: str) -> Polynomial:
    """det(t I - M) by the Faddeev-LeVerrier recursion.

    The recursion only multiplies by M, so sparse rows stay cheap; its
    divisions by k are exact because the result has integer coefficients.
    """
    if not M.is_square:
        raise UsageError("characteristic polynomial needs a square matrix")
    ti = M.vars.index(t)
    for e in M.entries:
        for exps, _ in e.items():
            if exps[ti]:
                raise UsageError(f"{t!r} occurs in the matrix entries")
    vars = M.vars
    n = M.rows
    zero = Polynomial.zero(vars)
    sparse_rows = [[(j, e) for j, e in enumerate(M.row(i)) if e] for i in range(n)]

    def mul_left(X):
        out = []
        for i in range(n):
            acc = [zero] * n
            for k, a in sparse_rows[i]:
                xk = X[k]
                for j in range(n):
                    b = xk[j]
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return out

    coeffs = [Polynomial.one(vars)]  # c_0 = 1, polynomial = sum c_k t^(n-k)
    X = [[Polynomial.one(vars) if i == j else zero for j in range(n)] for i in range(n)]  # M_0 = I
    for k in range(1, n + 1):
        AM = mul_left(X)
        tr = zero
        for i in range(n):
            tr = tr + AM[i][i]
        c = int_div_exact(-tr, k)
        coeffs.append(c)
        if k < n:
            for i in range(n):
                AM[i][i] = AM[i][i] + c
            X = AM
    result = zero
    for k, c in enumerate(coeffs):
        if c:
            result = result + c * Polynomial.var(vars, t, n - k)
    return result


def char_poly_bareiss(M: PolyMatrix, t: str) -> Polynomial:
    """det(t I - M) straight through det_bareiss (reference path)."""
    tI = PolyMatrix.scalar(M.vars, M.rows, Polynomial.var(M.vars, t))
    return det_bareiss(tI - M)


def block_matrix(blocks: Sequence[Sequence[PolyMatrix]]) -> PolyMatrix:
    vars = blocks[0][0].vars
    rows = []
    for brow in blocks:
        h = brow[0].rows
        for b in brow:
            if b.rows != h:
                raise UsageError("block heights differ within a block row")
        for i in range(h):
            row = []
            for b in brow:
                row.extend(b.row(i))
            rows.append(row)
    return PolyMatrix.from_rows(vars, rows)


def block_composition_matrix(f_coeffs: Sequence[Polynomial], Cg: PolyMatrix) -> PolyMatrix:
    """Block companion matrix C_g o C_f of f(t) I_n - C_g.

    ``f_coeffs`` is a_0..a_{m-1} of monic f.
    """
    if not Cg.is_square:
        raise UsageError("C_g must be square")
    vars = Cg.vars
    n = Cg.rows
    m = len(f_coeffs)
    if m == 0:
        raise UsageError("f must have degree at least 1")
    Z = PolyMatrix.zeros(vars, n, n)
    I = PolyMatrix.identity(vars, n)
    blocks = [[Z] * m for _ in range(m)]
    for i in range(1, m):
        blocks[i][i - 1] = I
    for i, a in enumerate(f_coeffs):
        blocks[i][m - 1] = PolyMatrix.scalar(vars, n, -a)
    blocks[0][m - 1] = blocks[0][m - 1] + Cg
    return block_matrix(blocks)


def lemma_block_matrix(Ms: Sequence[PolyMatrix], Ns: Sequence[PolyMatrix]) -> PolyMatrix:
    """Assemble [[M1 .. Mm], [-I N1 0 ..], [0 -I N2 ..], ...]."""
    m = len(Ms)
    if len(Ns) != m - 1:
        raise UsageError("need exactly one N block fewer than M blocks")
    vars = Ms[0].vars
    n = Ms[0].rows
    for b in list(Ms) + list(Ns):
        if (b.rows, b.cols) != (n, n):
            raise UsageError("all blocks must be n x n")
    Z = PolyMatrix.zeros(vars, n, n)
    negI = -PolyMatrix.identity(vars, n)
    blocks = [list(Ms)]
    for r in range(1, m):
        row = [Z] * m
        row[r - 1] = negI
        row[r] = Ns[r - 1]
        blocks.append(row)
    return block_matrix(blocks)


def split_lemma_blocks(M: PolyMatrix, n: int) -> tuple[list[PolyMatrix], list[PolyMatrix]]:
    """Recover (M_1..M_m, N_1..N_{m-1}) from an assembled matrix; checks the shape."""
    if not M.is_square or M.rows % n:
        raise UsageError("matrix order is not a multiple of the block size")
    m = M.rows // n
    vars = M.vars

    def blk(bi, bj):
        return PolyMatrix.from_rows(vars, [[M[bi * n + i, bj * n + j] for j in range(n)]
                                           for i in range(n)])

    negI = -PolyMatrix.identity(vars, n)
    Z = PolyMatrix.zeros(vars, n, n)
    Ms = [blk(0, j) for j in range(m)]
    Ns = []
    for r in range(1, m):
        for c in range(m):
            b = blk(r, c)
            if c == r - 1:
                if b != negI:
                    raise UsageError(f"block ({r},{c}) must be -I")
            elif c == r:
                Ns.append(b)
            elif b != Z:
                raise UsageError(f"block ({r},{c}) must be zero")
    return Ms, Ns


def block_det_reduce(M: PolyMatrix, n: int) -> Polynomial:
    """det of the block matrix via det(M1 N1..N_{m-1} + M2 N2..N_{m-1} + ... + Mm)."""
    Ms, Ns = split_lemma_blocks(M, n)
    m = len(Ms)
    acc = Ms[0]
    for j in range(1, m):
        acc = acc @ Ns[j - 1] + Ms[j]
    return det_bareiss(acc)


def univariate(vars: VarTable, t: str, coeffs: Sequence[int | Polynomial]) -> Polynomial:
    """sum coeffs[k] t^k."""
    out = Polynomial.zero(vars)
    for k, c in enumerate(coeffs):
        if c:
            out = out + Polynomial.var(vars, t, k) * c
    return out


def compose(g: Polynomial, f: Polynomial, t: str) -> Polynomial:
    """g(f(t)) by Horner in t."""
    parts = g.coeffs_in(t)
    out = Polynomial.zero(g.vars)
    for k in range(max(parts, default=0), -1, -1):
        out = out * f + parts.get(k, Polynomial.zero(g.vars))
    return out


COMPOSE_VARS = VarTable(("t",))


def composition_routes(f: Sequence[int], g: Sequence[int]) -> dict[str, Polynomial]:
    """Three computations of g(f(t)) for monic integer f, g (coefficients lowest first).

    ``block_charpoly`` is char_poly of the block companion C_g o C_f,
    ``substitution`` expands g(f(t)) directly, ``det`` is det(f(t) I - C_g).
    """
    f, g = [int(c) for c in f], [int(c) for c in g]
    if len(f) < 2 or len(g) < 2 or f[-1] != 1 or g[-1] != 1:
        raise UsageError("f and g must be monic of degree >= 1")
    vars = COMPOSE_VARS
    consts = lambda cs: [Polynomial.constant(vars, c) for c in cs]
    Cg = companion(consts(g[:-1]))
    fp = univariate(vars, "t", f)
    gp = univariate(vars, "t", g)
    block = char_poly(block_composition_matrix(consts(f[:-1]), Cg), "t")
    n = Cg.rows
    det = det_bareiss(PolyMatrix.scalar(vars, n, fp) - Cg)
    return {"block_charpoly": block, "substitution": compose(gp, fp, "t"), "det": det}
