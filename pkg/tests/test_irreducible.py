import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nvalued.arith import Status, irreducibility_certificate
from nvalued.arith.irreducible import (factor_mod_p, hensel_lift, int_divides, int_gcd, pmul,
                                       subset_sums)
from nvalued.errors import UsageError
from nvalued.pn_builders import pn_kronecker
from nvalued.polyring import substitute

T = sympy.Symbol("t")


def sym(f):
    return sympy.Poly(list(reversed(f)), T)


def sympy_irreducible(f):
    facs = sym(f).factor_list()[1]
    return len(facs) == 1 and facs[0][1] == 1


def test_quadratic_from_p2():
    # p_2(z; 2, 3) = z^2 - 10 z + 1
    c = irreducibility_certificate([1, -10, 1])
    assert c.status is Status.IRREDUCIBLE
    assert c.evidence["method"] == "degree-pattern"


def test_difference_of_squares_reducible():
    c = irreducibility_certificate([-1, 0, 1])
    assert c.status is Status.REDUCIBLE
    assert int_divides(c.evidence["factor"], [-1, 0, 1]) is not None


def test_sqrt2_plus_sqrt3_needs_recombination():
    # splits into linear or quadratic factors mod every prime
    c = irreducibility_certificate([1, 0, -10, 0, 1])
    assert c.status is Status.IRREDUCIBLE
    assert c.evidence["method"] == "zassenhaus"
    assert all(max(d) <= 2 for d in c.evidence["patterns"].values())


def _pn_in_z(n, x, y, power):
    p = pn_kronecker(n, 2)
    p = substitute(substitute(p, "x1", x), "x2", y)
    parts = p.coeffs_in("z")
    coeffs = [0] * (max(parts) * power + 1)
    for k, c in parts.items():
        coeffs[k * power] = c.constant_value()
    return coeffs


def test_p2_of_z_squared():
    f = _pn_in_z(2, 2, 3, 2)
    assert f == [1, 0, -10, 0, 1]
    assert irreducibility_certificate(f).status is Status.IRREDUCIBLE


def test_p3_of_z_cubed():
    f = _pn_in_z(3, 2, 3, 3)
    assert f == [125, 0, 0, -87, 0, 0, 15, 0, 0, 1]
    assert sympy_irreducible(f)
    assert irreducibility_certificate(f).status is Status.IRREDUCIBLE


def test_rejects_non_primitive_and_constants():
    with pytest.raises(UsageError):
        irreducibility_certificate([2, 4])
    with pytest.raises(UsageError):
        irreducibility_certificate([5])


def test_linear_and_zero_root():
    assert irreducibility_certificate([3, 7]).status is Status.IRREDUCIBLE
    assert irreducibility_certificate([0, 1, 1]).status is Status.REDUCIBLE


def test_non_monic_reducible():
    f = [-1, 0, 0, 0, 4]  # (2t^2 - 1)(2t^2 + 1)
    c = irreducibility_certificate(f)
    assert c.status is Status.REDUCIBLE
    assert int_divides(c.evidence["factor"], f) is not None


def test_repeated_factor_reducible():
    f = [1, 2, 1]  # (t+1)^2
    c = irreducibility_certificate(f)
    assert c.status is Status.REDUCIBLE and c.evidence["factor"] == [1, 1]


def test_int_gcd():
    assert int_gcd(_mul([1, 1], [2, 3]), _mul([1, 1], [5, 0, 1])) == [1, 1]
    assert int_gcd([1, 0, 1], [2, 1]) == [1]


def test_subset_sums():
    assert subset_sums([1, 2]) == {0, 1, 2, 3}
    assert subset_sums([2, 2]) == {0, 2, 4}


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_factor_mod_p_against_sympy(p):
    rng = random.Random(p)
    for _ in range(20):
        f = [rng.randrange(p) for _ in range(6)] + [1]
        fs = sympy.Poly(list(reversed(f)), T, modulus=p)
        if sympy.gcd(fs, fs.diff(T)).degree() > 0:
            continue
        ours = sorted(len(g) - 1 for g in factor_mod_p(f, p))
        theirs = sorted(g.degree() for g, e in fs.factor_list()[1] for _ in range(e))
        assert ours == theirs
        prod = [1]
        for g in factor_mod_p(f, p):
            prod = pmul(prod, g, p)
        assert prod == [c % p for c in f]


def test_hensel_lift_reproduces_product():
    f = [1, 0, -10, 0, 1]
    p, k = 5, 6
    facs = factor_mod_p(f, p)
    lifted = hensel_lift(f, facs, p, k)
    pk = p ** k
    prod = [1]
    for g in lifted:
        prod = [c % pk for c in _mul(prod, g)]
    assert prod == [c % pk for c in f]


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


poly = st.lists(st.integers(-6, 6), min_size=2, max_size=5).filter(
    lambda l: l[-1] != 0 and l[0] != 0)


def _primitive(f):
    g = 0
    for c in f:
        g = sympy.gcd(g, c)
    return [c // g for c in f]


@settings(max_examples=150)
@given(poly, poly)
def test_products_are_reducible(f, g):
    h = _primitive(_mul(f, g))
    c = irreducibility_certificate(h)
    assert c.status is Status.REDUCIBLE
    assert int_divides(c.evidence["factor"], h) is not None


@settings(max_examples=300)
@given(st.lists(st.integers(-12, 12), min_size=3, max_size=8).filter(lambda l: l[-1] != 0))
def test_status_never_contradicts_sympy(f):
    f = _primitive(f)
    c = irreducibility_certificate(f)
    if c.status is Status.IRREDUCIBLE:
        assert sympy_irreducible(f)
    elif c.status is Status.REDUCIBLE:
        assert not sympy_irreducible(f)
