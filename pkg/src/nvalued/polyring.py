"""Sparse multivariate polynomials over the integers.

Monomials are packed into a single Python int: one fixed-width field per
variable plus a leading total-degree field.  Integer comparison of packed
keys is then exactly graded-lexicographic order, and monomial
multiplication is integer addition.  Each field carries a guard bit so that
monomial divisibility can be tested with one subtraction.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InexactDivision, NotSymmetric, UsageError, WNotEliminable

FIELD_BITS = 24
_VALUE_MASK = (1 << (FIELD_BITS - 1)) - 1
MAX_EXPONENT = _VALUE_MASK


@dataclass(frozen=True)
class VarTable:
    """Ordered, duplicate-free list of variable names."""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate variable names in {names}")
        k = len(names)
        shifts = tuple(FIELD_BITS * (k - 1 - i) for i in range(k))
        guard = 0
        for s in shifts + (FIELD_BITS * k,):
            guard |= 1 << (s + FIELD_BITS - 1)
        object.__setattr__(self, "_shifts", shifts)
        object.__setattr__(self, "_deg_shift", FIELD_BITS * k)
        object.__setattr__(self, "_guard", guard)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UsageError(f"unknown variable {name!r}; table is {self.names}") from None

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) > len(self.names):
            if any(exps[len(self.names):]):
                raise UsageError("exponent vector longer than the variable table")
            exps = exps[: len(self.names)]
        key = 0
        deg = 0
        for e, s in zip(exps, self._shifts):
            if e < 0 or e > MAX_EXPONENT:
                raise UsageError(f"exponent {e} out of range")
            key |= e << s
            deg += e
        return key | (deg << self._deg_shift)

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple((key >> s) & _VALUE_MASK for s in self._shifts)

    def key_degree(self, key: int) -> int:
        return key >> self._deg_shift

    def var_key(self, name: str, power: int = 1) -> int:
        exps = [0] * len(self.names)
        exps[self.index(name)] = power
        return self.pack(exps)

    def divides(self, small: int, big: int) -> int | None:
        """Packed ``big / small`` when ``small`` divides ``big``, else None."""
        d = big + self._guard - small
        if d & self._guard != self._guard:
            return None
        return d - self._guard


def vartable(*names: str) -> VarTable:
    return VarTable(tuple(names))


class Polynomial:
    """Immutable sparse polynomial with exact integer coefficients.

    ``terms`` maps exponent tuples to nonzero ints; iteration is in
    decreasing graded-lex order.
    """

    __slots__ = ("vars", "_t", "_hash")

    def __init__(self, vars: VarTable, terms: Mapping[Sequence[int], int] | None = None):
        self.vars = vars
        t: dict[int, int] = {}
        if terms:
            for exps, c in terms.items():
                c = int(c)
                if c:
                    k = vars.pack(tuple(exps))
                    v = t.get(k, 0) + c
                    if v:
                        t[k] = v
                    else:
                        t.pop(k, None)
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, vars: VarTable, packed: dict[int, int]) -> "Polynomial":
        p = cls.__new__(cls)
        p.vars = vars
        p._t = packed
        p._hash = None
        return p

    @classmethod
    def constant(cls, vars: VarTable, c: int) -> "Polynomial":
        c = int(c)
        return cls._raw(vars, {0: c} if c else {})

    @classmethod
    def var(cls, vars: VarTable, name: str, power: int = 1) -> "Polynomial":
        return cls._raw(vars, {vars.var_key(name, power): 1})

    @classmethod
    def zero(cls, vars: VarTable) -> "Polynomial":
        return cls._raw(vars, {})

    @classmethod
    def one(cls, vars: VarTable) -> "Polynomial":
        return cls._raw(vars, {0: 1})

    # -- inspection ---------------------------------------------------------

    def _sorted_keys(self) -> list[int]:
        return sorted(self._t, reverse=True)

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        un = self.vars.unpack
        return {un(k): self._t[k] for k in self._sorted_keys()}

    def items(self) -> Iterator[tuple[tuple[int, ...], int]]:
        un = self.vars.unpack
        t = self._t
        for k in self._sorted_keys():
            yield un(k), t[k]

    def __len__(self) -> int:
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise UsageError("polynomial is not constant")
        return self._t.get(0, 0)

    def total_degree(self) -> int:
        if not self._t:
            return -1
        return self.vars.key_degree(max(self._t))

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        s = self.vars._shifts[i]
        if not self._t:
            return -1
        return max((k >> s) & _VALUE_MASK for k in self._t)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        if not self._t:
            raise UsageError("zero polynomial has no leading term")
        k = max(self._t)
        return self.vars.unpack(k), self._t[k]

    def variables(self) -> set[str]:
        used = set()
        for exps, _ in self.items():
            used.update(n for n, e in zip(self.vars.names, exps) if e)
        return used

    def content(self) -> int:
        g = 0
        for c in self._t.values():
            g = gcd(g, c)
        return g

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise UsageError(f"variable tables differ: {self.vars.names} vs {other.vars.names}")
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self._t) < len(other._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        r = dict(a)
        for k, c in b.items():
            v = r.get(k, 0) + c
            if v:
                r[k] = v
            else:
                del r[k]
        return Polynomial._raw(self.vars, r)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.vars, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        r = dict(self._t)
        for k, c in other._t.items():
            v = r.get(k, 0) - c
            if v:
                r[k] = v
            else:
                del r[k]
        return Polynomial._raw(self.vars, r)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Polynomial.zero(self.vars)
            return Polynomial._raw(self.vars, {k: c * other for k, c in self._t.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if not a or not b:
            return Polynomial.zero(self.vars)
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            return Polynomial._raw(self.vars, {k + kb: c * cb for k, c in a.items()})
        r: dict[int, int] = {}
        get = r.get
        bi = list(b.items())
        for ka, ca in a.items():
            for kb, cb in bi:
                k = ka + kb
                r[k] = get(k, 0) + ca * cb
        return Polynomial._raw(self.vars, {k: c for k, c in r.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return poly_pow(self, e)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(self.vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self._t == other._t

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._t.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- conversions --------------------------------------------------------

    def convert(self, vars: VarTable) -> "Polynomial":
        """Re-express over another table; variables in use must exist there."""
        if vars == self.vars:
            return self
        pos = []
        for name in self.vars.names:
            pos.append(vars.names.index(name) if name in vars.names else -1)
        out = {}
        for exps, c in self.items():
            new = [0] * len(vars)
            for e, j, name in zip(exps, pos, self.vars.names):
                if e:
                    if j < 0:
                        raise UsageError(f"variable {name!r} missing from target table")
                    new[j] = e
            out[vars.pack(new)] = c
        return Polynomial._raw(vars, out)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at numeric values (ints, floats, complex, mpmath)."""
        idx = [(i, values[n]) for i, n in enumerate(self.vars.names) if n in values]
        missing = self.variables() - set(values)
        if missing:
            raise UsageError(f"no value for {sorted(missing)}")
        total = 0
        for exps, c in self.items():
            term = c
            for i, v in idx:
                if exps[i]:
                    term = term * v ** exps[i]
            total = total + term
        return total

    def coeffs_in(self, name: str) -> dict[int, "Polynomial"]:
        """Split as sum over k of coeff_k * name**k."""
        i = self.vars.index(name)
        s = self.vars._shifts[i]
        parts: dict[int, dict[int, int]] = {}
        for k, c in self._t.items():
            e = (k >> s) & _VALUE_MASK
            parts.setdefault(e, {})[k - self.vars.var_key(name, e) if e else k] = c
        return {e: Polynomial._raw(self.vars, d) for e, d in sorted(parts.items())}

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars.names),
            "terms": [{"exp": list(e), "coeff": str(c)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Polynomial":
        vars = VarTable(tuple(obj["vars"]))
        terms: dict[tuple[int, ...], int] = {}
        for t in obj["terms"]:
            exps = tuple(int(e) for e in t["exp"])
            terms[exps] = terms.get(exps, 0) + int(t["coeff"])
        return cls(vars, terms)


def format_poly(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for exps, c in p.items():
        mono = "*".join(
            n if e == 1 else f"{n}^{e}" for n, e in zip(p.vars.names, exps) if e
        )
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def _check_same(a: Polynomial, b: Polynomial):
    if a.vars != b.vars:
        raise UsageError(f"variable tables differ: {a.vars.names} vs {b.vars.names}")


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_same(a, b)
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_same(a, b)
    return a * b


def poly_pow(a: Polynomial, e: int) -> Polynomial:
    if e < 0:
        raise UsageError("negative exponent")
    result = Polynomial.one(a.vars)
    base = a
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient a / b; raises InexactDivision unless b divides a exactly."""
    _check_same(a, b)
    if b.is_zero():
        raise InexactDivision("division by zero polynomial")
    vars = a.vars
    bt = b._t
    if len(bt) == 1:
        (kb, cb), = bt.items()
        out = {}
        for k, c in a._t.items():
            q = vars.divides(kb, k)
            if q is None or c % cb:
                raise InexactDivision(f"{b} does not divide {a}")
            out[q] = c // cb
        return Polynomial._raw(vars, out)
    lk = max(bt)
    lc = bt[lk]
    rest = [(k, c) for k, c in bt.items() if k != lk]
    rem = dict(a._t)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    q: dict[int, int] = {}
    guard = vars._guard
    while heap:
        k = -heapq.heappop(heap)
        c = rem.pop(k, None)
        if c is None:
            continue
        d = k + guard - lk
        if d & guard != guard or c % lc:
            raise InexactDivision(f"{b} does not divide {a}")
        qk = d - guard
        qc = c // lc
        q[qk] = qc
        for kb, cb in rest:
            kk = qk + kb
            v = rem.get(kk)
            if v is None:
                rem[kk] = -qc * cb
                heapq.heappush(heap, -kk)
            else:
                v -= qc * cb
                if v:
                    rem[kk] = v
                else:
                    del rem[kk]
    return Polynomial._raw(vars, q)


def int_div_exact(p: Polynomial, d: int) -> Polynomial:
    out = {}
    for k, c in p._t.items():
        if c % d:
            raise InexactDivision(f"{d} does not divide coefficient {c}")
        out[k] = c // d
    return Polynomial._raw(p.vars, out)


def substitute(p: Polynomial, var: str, value: Polynomial | int) -> Polynomial:
    """Replace ``var`` by ``value`` everywhere in ``p``."""
    p.vars.index(var)
    if isinstance(value, int):
        value = Polynomial.constant(p.vars, value)
    else:
        _check_same(p, value)
    parts = p.coeffs_in(var)
    if not parts:
        return p
    # Horner on the exponents actually present
    exps = sorted(parts, reverse=True)
    result = Polynomial.zero(p.vars)
    prev = exps[0]
    for e in exps:
        if e != prev:
            result = result * poly_pow(value, prev - e)
            prev = e
        result = result + parts[e]
    if prev:
        result = result * poly_pow(value, prev)
    return result


def reduce_w_power(p: Polynomial, w: str, z: str, n: int) -> Polynomial:
    """Rewrite every w^(kn) as z^k; any other power of w is an error."""
    if n < 1:
        raise UsageError("n must be positive")
    iw, iz = p.vars.index(w), p.vars.index(z)
    out: dict[tuple[int, ...], int] = {}
    for exps, c in p.items():
        e = exps[iw]
        if e % n:
            raise WNotEliminable(f"{w}^{e} is not a power of {w}^{n}")
        new = list(exps)
        new[iw] = 0
        new[iz] += e // n
        out[tuple(new)] = c
    return Polynomial(p.vars, out)


def is_homogeneous(p: Polynomial, degree: int) -> bool:
    vars = p.vars
    return all(vars.key_degree(k) == degree for k in p._t)


def swap_vars(p: Polynomial, a: str, b: str) -> Polynomial:
    ia, ib = p.vars.index(a), p.vars.index(b)
    out = {}
    for exps, c in p.items():
        e = list(exps)
        e[ia], e[ib] = e[ib], e[ia]
        out[p.vars.pack(e)] = c
    return Polynomial._raw(p.vars, out)


def is_symmetric(p: Polynomial, vars: Sequence[str]) -> bool:
    vars = list(vars)
    for name in vars:
        p.vars.index(name)
    return all(swap_vars(p, a, b) == p for a, b in zip(vars, vars[1:]))


def elementary_symmetric(table: VarTable, vars: Sequence[str], k: int) -> Polynomial:
    idx = [table.index(v) for v in vars]
    terms = {}
    for combo in combinations(idx, k):
        e = [0] * len(table)
        for i in combo:
            e[i] = 1
        terms[tuple(e)] = 1
    return Polynomial(table, terms)


@dataclass(frozen=True)
class SymExpansion:
    """A polynomial written in the elementary symmetric basis sigma_1..sigma_k.

    ``coeffs`` maps exponent tuples (one entry per sigma_i) to integers.
    """

    coeffs: dict
    arity: int

    def items(self):
        # decreasing lex order on sigma exponents, i.e. sigma_1^k first
        return sorted(self.coeffs.items(), reverse=True)

    def expand(self, table: VarTable, vars: Sequence[str]) -> Polynomial:
        sig = [elementary_symmetric(table, vars, i + 1) for i in range(self.arity)]
        cache: dict[tuple[int, int], Polynomial] = {}

        def spow(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = poly_pow(sig[i], e)
            return cache[(i, e)]

        total = Polynomial.zero(table)
        for exps, c in self.coeffs.items():
            term = Polynomial.constant(table, c)
            for i, e in enumerate(exps):
                if e:
                    term = term * spow(i, e)
            total = total + term
        return total

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for exps, c in self.items():
            mono = "*".join(
                f"s{i + 1}" if e == 1 else f"s{i + 1}^{e}" for i, e in enumerate(exps) if e
            )
            a = abs(c)
            body = mono if (a == 1 and mono) else (f"{a}*{mono}" if mono else str(a))
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "terms": [{"sigma_exp": list(e), "coeff": str(c)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj) -> "SymExpansion":
        return cls({tuple(t["sigma_exp"]): int(t["coeff"]) for t in obj["terms"]}, obj["arity"])

    @classmethod
    def parse(cls, spec: Iterable[tuple[Sequence[int], int]], arity: int) -> "SymExpansion":
        coeffs: dict[tuple[int, ...], int] = {}
        for exps, c in spec:
            exps = tuple(exps) + (0,) * (arity - len(exps))
            coeffs[exps] = coeffs.get(exps, 0) + c
        return cls({e: c for e, c in coeffs.items() if c}, arity)


def reduce_to_elementary(p: Polynomial, vars: Sequence[str]) -> SymExpansion:
    """Gauss's algorithm: peel off the sigma-monomial of the leading term."""
    vars = list(vars)
    k = len(vars)
    idx = [p.vars.index(v) for v in vars]
    others = [i for i in range(len(p.vars)) if i not in idx]
    for exps, _ in p.items():
        if any(exps[i] for i in others):
            raise NotSymmetric("polynomial involves variables outside the symmetric set")
    if not is_symmetric(p, vars):
        raise NotSymmetric(f"polynomial is not symmetric in {vars}")

    # work in a private table ordered as `vars` so grlex matches the listed order
    table = VarTable(tuple(vars))
    rem = p.convert(table)
    sig = [elementary_symmetric(table, vars, i + 1) for i in range(k)]
    cache: dict[tuple[int, int], Polynomial] = {}

    def spow(i, e):
        if (i, e) not in cache:
            cache[(i, e)] = poly_pow(sig[i], e)
        return cache[(i, e)]

    out: dict[tuple[int, ...], int] = {}
    while not rem.is_zero():
        lead, c = rem.leading_term()
        if any(lead[i] < lead[i + 1] for i in range(k - 1)):
            raise NotSymmetric("leading exponent not weakly decreasing")
        sexp = tuple(lead[i] - (lead[i + 1] if i + 1 < k else 0) for i in range(k))
        out[sexp] = c
        term = Polynomial.constant(table, c)
        for i, e in enumerate(sexp):
            if e:
                term = term * spow(i, e)
        rem = rem - term
    return SymExpansion(out, k)
