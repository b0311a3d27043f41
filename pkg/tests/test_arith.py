import random
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nvalued.arith import (factorize, is_probable_prime, parse_factored, wendt_criterion,
                           wendt_det, wolstenholme_check, binom_weighted_sum_identity,
                           n4_divisibility_check, divisibility_quotient)
from nvalued.arith.primes import DETERMINISTIC_LIMIT
from nvalued.arith.wendt import (criterion_cases, fermat_witness, wendt_det_matrix,
                                 wendt_det_resultant, wendt_matrix)
from nvalued.errors import UsageError
from nvalued.polyring import reduce_to_elementary


# -- primality ----------------------------------------------------------------

@pytest.mark.parametrize("n,expected", [(0, False), (1, False), (2, True), (3, True), (4, False),
                                        (561, False), (3215031751, False),
                                        (30887295467839157373255894019, True)])
def test_is_probable_prime_examples(n, expected):
    assert is_probable_prime(n) is expected


def test_primality_against_sympy_below_5000():
    assert [n for n in range(5000) if is_probable_prime(n)] == list(sympy.primerange(0, 5000))


@settings(max_examples=300)
@given(st.integers(0, 2 ** 90))
def test_primality_matches_sympy(n):
    assert is_probable_prime(n) == sympy.isprime(n)


def test_large_semiprime_is_composite():
    p = 30887295467839157373255894019
    assert not is_probable_prime(p * 1000003)
    assert p * p > DETERMINISTIC_LIMIT


# -- factorization ------------------------------------------------------------

def _as_dict(f):
    return dict(f.factors)


def test_factorize_small():
    f = factorize(12)
    assert f.sign == 1 and f.factors == [(2, 2), (3, 1)] and f.certified
    assert str(f) == "2^2 3^1"


def test_factorize_negative_power_of_two():
    f = factorize(-2 ** 18)
    assert f.sign == -1 and f.factors == [(2, 18)]
    assert str(f) == "- 2^18"


def test_factorize_large_table_entry():
    primes = [(3, 4), (10837, 1), (8379438461, 1), (73146705440157233, 1)]
    n = 1
    for p, e in primes:
        n *= p ** e
    f = factorize(n)
    assert f.factors == primes and f.certified


def test_factorize_zero_rejected():
    with pytest.raises(UsageError):
        factorize(0)


def test_factorize_units():
    assert factorize(1).factors == [] and str(factorize(1)) == "1"
    assert factorize(-1).sign == -1


def test_factorize_random_64bit_against_sympy():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randrange(2, 2 ** 64)
        f = factorize(n)
        assert f.certified
        assert f.value() == n
        assert _as_dict(f) == sympy.factorint(n)
        assert all(is_probable_prime(p) for p, _ in f.factors)
        ps = [p for p, _ in f.factors]
        assert ps == sorted(set(ps))


def test_tiny_budget_flags_uncertified():
    # two 20-digit primes; a handful of rho steps cannot split them
    p, q = 10000000000000000051, 10000000000000000087
    f = factorize(p * q, budget=5)
    assert f.value() == p * q
    assert not f.certified and f.uncertified == [p * q]


@settings(max_examples=200)
@given(st.integers(-10 ** 15, 10 ** 15).filter(lambda n: n != 0))
def test_factor_round_trip(n):
    f = factorize(n)
    assert f.value() == n
    g = parse_factored(str(f))
    assert g.value() == n and g.factors == f.factors


# -- Wendt determinants -------------------------------------------------------

@pytest.mark.parametrize("n,expected", [(1, 1), (2, -3), (3, 28)])
def test_wendt_det_small(n, expected):
    assert wendt_det(n) == expected


def test_wendt_det_3_by_hand():
    # Circ(1,3,3): 1*(1-9) - 3*(3-9) + 3*(9-3)
    assert 1 * (1 - 9) - 3 * (3 - 9) + 3 * (9 - 3) == 28 == wendt_det(3)


@pytest.mark.parametrize("n", range(1, 13))
def test_wendt_routes_and_sympy(n):
    oracle = sympy.Matrix(n, n, lambda i, j: comb(n, (j - i) % n)).det()
    assert wendt_det_matrix(n) == wendt_det_resultant(n) == oracle


def test_wendt_matrix_first_row():
    assert wendt_matrix(4)[0] == [1, 4, 6, 4]
    assert wendt_matrix(4)[1] == [4, 1, 4, 6]


# -- Wendt criterion ----------------------------------------------------------

def _brute_witness_exists(p, q):
    pw = [pow(x, p, q) for x in range(1, q)]
    s = set(pw)
    return any((-(a + b)) % q in s for a in s for b in s)


def test_criterion_p3_k1():
    r = wendt_criterion(3, 1)
    assert r.q == 7 and r.det == -3
    assert not r.divides and r.witness is None and r.consistent


@pytest.mark.parametrize("p,k", [(3, 2), (5, 1), (3, 3), (7, 3), (5, 3)])
def test_criterion_agrees_with_brute_force(p, k):
    r = wendt_criterion(p, k)
    assert r.consistent
    assert r.divides == (wendt_det(2 * k) % (2 * k * p + 1) == 0)
    assert (r.witness is not None) == _brute_witness_exists(p, r.q)
    if r.witness:
        x, y, z = r.witness
        assert (x ** p + y ** p + z ** p) % r.q == 0
        assert all(v % r.q for v in r.witness)


def test_criterion_rejects_composite_q():
    with pytest.raises(UsageError):
        wendt_criterion(7, 1)  # 15
    with pytest.raises(UsageError):
        wendt_criterion(4, 1)


def test_criterion_cases_enumeration():
    cases = criterion_cases(50)
    for p, k in cases:
        assert sympy.isprime(p) and p > 2 and sympy.isprime(2 * k * p + 1) and 2 * k * p + 1 < 50
    assert (3, 1) in cases and (3, 2) in cases and (5, 1) in cases


def test_witness_none_for_q7():
    assert fermat_witness(3, 7) is None


# -- divisibility -------------------------------------------------------------

def test_n4_divisibility_five_quotient_values():
    q = divisibility_quotient(5)
    assert n4_divisibility_check(5)
    assert all(c % 5 ** 4 == 0 for _, c in q.items())
    # sigma form of p_5 has coefficients -5^4 and 5^5
    from nvalued.pn_builders import output_vars, pn_wendt
    s = reduce_to_elementary(pn_wendt(5), output_vars(2))
    assert sorted(c for _, c in s.items()) == [-5 ** 4, 1, 5 ** 5]


@pytest.mark.parametrize("n", [5, 7, 11, 13])
def test_n4_divisibility(n):
    assert n4_divisibility_check(n)


def test_n5_does_not_always_divide():
    q = divisibility_quotient(5)
    assert not all(c % 5 ** 5 == 0 for _, c in q.items())


@pytest.mark.parametrize("n", [4, 3, 9, 1])
def test_n4_rejects_bad_n(n):
    with pytest.raises(UsageError):
        n4_divisibility_check(n)


# -- Wolstenholme -------------------------------------------------------------

def test_wolstenholme_five():
    assert comb(9, 4) == 126
    assert wolstenholme_check(5) == {"mod_n3": True, "mod_n4": False}


def test_wolstenholme_seven():
    assert comb(13, 6) - 1 == 1715 == 5 * 7 ** 3
    assert wolstenholme_check(7)["mod_n3"]


def test_wolstenholme_primes_below_100():
    for n in sympy.primerange(5, 98):
        r = wolstenholme_check(n)
        assert r["mod_n3"]
        assert r["mod_n4"] == ((comb(2 * n - 1, n - 1) - 1) % n ** 4 == 0)


def test_known_wolstenholme_prime():
    assert wolstenholme_check(16843) == {"mod_n3": True, "mod_n4": True}


def test_wolstenholme_rejects_nonprime():
    with pytest.raises(UsageError):
        wolstenholme_check(9)


def test_binom_identity_examples():
    assert sum(k * comb(5, k) ** 2 for k in range(1, 5)) == 625 == 5 * (126 - 1)
    assert binom_weighted_sum_identity(2) and binom_weighted_sum_identity(5)
    assert binom_weighted_sum_identity(50)


def test_binom_identity_up_to_200():
    assert all(binom_weighted_sum_identity(n) for n in range(2, 201))


def test_binom_identity_rejects_small():
    with pytest.raises(UsageError):
        binom_weighted_sum_identity(1)
