import functools
import os
import sys

import sympy
from hypothesis import settings

from nvalued.polyring import Polynomial, VarTable

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def to_sympy(p: Polynomial):
    syms = sympy.symbols(p.vars.names)
    out = sympy.Integer(0)
    for exps, c in p.items():
        term = sympy.Integer(c)
        for s, e in zip(syms, exps):
            term *= s ** e
        out += term
    return sympy.expand(out)


def from_sympy(expr, vars: VarTable) -> Polynomial:
    syms = sympy.symbols(vars.names)
    poly = sympy.Poly(sympy.expand(expr), *syms)
    return Polynomial(vars, {m: int(c) for m, c in poly.terms()})


@functools.lru_cache(maxsize=None)
def built(n: int, m: int = 2, route: str = "kronecker"):
    """Shared cache so the expensive builds happen once per session."""
    from nvalued.pn_builders import build
    return build(n, m, route)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    rows = getattr(mod, "RESULTS", None)
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(rows, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
