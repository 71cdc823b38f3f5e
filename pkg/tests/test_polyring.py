"""Coefficient, monomial order, and polynomial arithmetic contracts."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from detlab.polyring import (Ring, xring, grevlex, lex, exact_divide,
                             NOT_DIVISIBLE, parse_polynomial, format_polynomial,
                             NEG_INF)
from oracles import hankel_entry_dicts, leibniz_det, dict_diff, grevlex_key


def rand_poly(ring, rng, terms=4, deg=3):
    d = {}
    for _ in range(terms):
        e = [0] * ring.nvars
        for _ in range(rng.randrange(deg + 1)):
            e[rng.randrange(ring.nvars)] += 1
        c = rng.randrange(-6, 7)
        d[tuple(e)] = d.get(tuple(e), 0) + c
    return ring.poly(d)


# ---------------------------------------------------------------------------
# arithmetic

def test_difference_of_squares():
    R = xring(2)
    x0, x1 = R.gens()
    assert (x0 + x1) * (x0 - x1) == x0 ** 2 - x1 ** 2


def test_mul_by_zero_annihilates():
    R = xring(3)
    f = R.from_string("x0^2 - 3*x1*x2")
    assert (f * R.zero()).is_zero()
    assert f * 0 == R.zero()


def test_square_expansion_oracle():
    # hand expansion: (x0*x2 - x1^2)^2 = x0^2x2^2 - 2x0x1^2x2 + x1^4
    R = xring(3)
    f = R.from_string("x0*x2 - x1^2")
    assert f ** 2 == R.from_string("x0^2*x2^2 - 2*x0*x1^2*x2 + x1^4")


def test_ring_axioms_random_both_modes():
    for prime in (None, (1 << 31) - 1):
        R = Ring(("x0", "x1", "x2"), prime=prime)
        rng = random.Random(987)
        for _ in range(1000):
            a, b, c = (rand_poly(R, rng, terms=3, deg=2) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert (a + b) - b == a


def test_pow_negative_raises_and_mixed_rings_raise():
    R = xring(2)
    S = xring(3)
    with pytest.raises(ValueError):
        R.gens()[0] ** -1
    with pytest.raises(ValueError):
        R.gens()[0] + S.gens()[0]


def test_homogeneous_product_degree():
    R = xring(3)
    rng = random.Random(5)
    for _ in range(50):
        a = rand_poly(R, rng)
        b = rand_poly(R, rng)
        if a.is_zero() or b.is_zero():
            continue
        assert (a * b).degree == a.degree + b.degree or not (
            a.is_homogeneous() and b.is_homogeneous())


def test_zero_polynomial_degree_sentinel():
    R = xring(2)
    assert R.zero().degree == NEG_INF
    assert R.zero().is_homogeneous()


# ---------------------------------------------------------------------------
# exact division

def test_exact_divide_monomial_factor():
    R = xring(3)
    num = R.from_string("x0^2*x2 - x0*x1^2")
    assert exact_divide(num, R.gens()[0]) == R.from_string("x0*x2 - x1^2")


def test_exact_divide_not_divisible():
    R = xring(2)
    assert exact_divide(R.from_string("x1^2"), R.gens()[0]) is NOT_DIVISIBLE


def test_exact_divide_zero_divisor_raises():
    R = xring(2)
    with pytest.raises(ZeroDivisionError):
        exact_divide(R.gens()[0], R.zero())


def test_exact_divide_roundtrip_random():
    R = xring(3)
    rng = random.Random(11)
    for _ in range(200):
        a = rand_poly(R, rng)
        b = rand_poly(R, rng)
        if b.is_zero():
            continue
        assert exact_divide(a * b, b) == a


def test_hessian_quotient_of_hankel3_determinant():
    # the Hessian determinant of the 3x3 anti-diagonal determinant equals
    # the form times a quadric (the middle partial up to coordinates)
    from detlab.structmat import build_structured, determinant
    from detlab.polar import hessian
    H = build_structured("hankel", m=3)
    f = determinant(H)
    Hf = determinant(hessian(f), enforce_budget=False)
    q = exact_divide(Hf, f)
    assert q is not NOT_DIVISIBLE
    assert q.degree == 2
    assert exact_divide(q, f) is NOT_DIVISIBLE


# ---------------------------------------------------------------------------
# differentiation

def test_diff_trivial_and_euler():
    R = xring(2)
    x0, x1 = R.gens()
    assert (x0 ** 2).diff(1).is_zero()
    from detlab.structmat import build_structured, determinant
    H = build_structured("hankel", m=3)
    f = determinant(H)
    euler = sum((H.ring.var(i) * f.diff(i) for i in range(5)), H.ring.zero())
    assert euler == f * 3


def test_diff_hankel3_middle_matches_cofactor_oracle():
    ents = hankel_entry_dicts(3)
    det = leibniz_det(ents)
    want = dict_diff(det, 2)
    from detlab.structmat import build_structured, determinant
    H = build_structured("hankel", m=3)
    got = determinant(H).diff(2)
    assert got.terms == want
    assert got == H.ring.from_string("x0*x4 + 2*x1*x3 - 3*x2^2")


def test_leibniz_rule_random():
    R = xring(3)
    rng = random.Random(21)
    for _ in range(100):
        a, b = rand_poly(R, rng), rand_poly(R, rng)
        for i in range(3):
            assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)


# ---------------------------------------------------------------------------
# evaluation and line restriction

def test_evaluate_examples():
    R = xring(3)
    f = R.from_string("x0*x2 - x1^2")
    assert f.evaluate([1, 0, 1]) == 1
    R2 = xring(2)
    assert (R2.from_string("x0 + x1") ** 2).evaluate([2, 3]) == 25
    with pytest.raises(ValueError):
        f.evaluate([1, 2])


def test_evaluate_det_matches_numeric_determinant():
    from detlab.structmat import build_structured, determinant
    from detlab.linalg import dense_det
    H = build_structured("hankel", m=3)
    f = determinant(H)
    pt = [1, 0, 0, 0, 1]
    assert f.evaluate(pt) == dense_det(H.evaluate(pt))


def test_evaluate_is_ring_homomorphism():
    R = xring(3)
    rng = random.Random(31)
    for _ in range(100):
        a, b = rand_poly(R, rng), rand_poly(R, rng)
        pt = [Fraction(rng.randrange(-4, 5), rng.randrange(1, 4)) for _ in range(3)]
        assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
        assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


def test_restrict_to_line_examples():
    R = xring(2)
    x0, x1 = R.gens()
    u = (x0 * x1).restrict_to_line([0, 0], [1, 1])
    assert str(u) == "t^2"
    # homogeneous f restricted from the origin: f(dir) * t^deg
    f = R.from_string("x0^2*x1 - x1^3")
    u = f.restrict_to_line([0, 0], [2, 3])
    assert u.terms == {(3,): f.evaluate([2, 3])}
    with pytest.raises(ValueError):
        f.restrict_to_line([0, 0], [0, 0])


def test_restrict_hankel3_degree():
    from detlab.structmat import build_structured, determinant
    H = build_structured("hankel", m=3)
    f = determinant(H)
    u = f.restrict_to_line([1, 0, 2, 1, 1], [3, 1, 4, 1, 5])
    assert u.degree == 3
    # direct substitution oracle at a few t values
    for t in (0, 1, 2, 7):
        pt = [1 + 3 * t, t, 2 + 4 * t, 1 + t, 1 + 5 * t]
        assert u.evaluate([t]) == f.evaluate(pt)


# ---------------------------------------------------------------------------
# orders

def test_monomial_order_examples():
    R = xring(5)
    key = R.order.keyfn()
    x2x4 = (0, 0, 1, 0, 1)
    x3sq = (0, 0, 0, 2, 0)
    assert key(x2x4) < key(x3sq)
    x0x3 = (1, 0, 0, 1, 0)
    x1x2 = (0, 1, 1, 0, 0)
    assert key(x0x3) < key(x1x2)
    lkey = lex(2).keyfn()
    assert lkey((1, 0)) > lkey((0, 100))


def test_order_total_and_multiplicative_random():
    rng = random.Random(3)
    key = grevlex(4).keyfn()
    for _ in range(300):
        u = tuple(rng.randrange(4) for _ in range(4))
        v = tuple(rng.randrange(4) for _ in range(4))
        w = tuple(rng.randrange(3) for _ in range(4))
        if key(u) < key(v):
            uw = tuple(a + b for a, b in zip(u, w))
            vw = tuple(a + b for a, b in zip(v, w))
            assert key(uw) < key(vw)


def test_grevlex_key_matches_oracle():
    rng = random.Random(9)
    key = grevlex(5).keyfn()
    for _ in range(200):
        u = tuple(rng.randrange(4) for _ in range(5))
        v = tuple(rng.randrange(4) for _ in range(5))
        assert (key(u) < key(v)) == (grevlex_key(u) < grevlex_key(v))


# ---------------------------------------------------------------------------
# modular mode

def test_modular_matches_rational_reduction():
    p = (1 << 31) - 1
    R = xring(3)
    Rp = Ring(R.variables, prime=p)
    rng = random.Random(77)
    for _ in range(200):
        a, b = rand_poly(R, rng), rand_poly(R, rng)
        am, bm = a.reduce_mod(p), b.reduce_mod(p)
        assert (a * b).reduce_mod(p) == am * bm
        assert (a + b).reduce_mod(p) == am + bm


def test_modular_prime_validation():
    with pytest.raises(ValueError):
        Ring(("x0",), prime=15)
    with pytest.raises(ValueError):
        Ring(("x0",), prime=2)


def test_rational_canonical_form():
    R = xring(1)
    f = R.poly({(1,): Fraction(4, 2)})
    assert f.terms == {(1,): 2}
    assert type(next(iter(f.terms.values()))) is int


# ---------------------------------------------------------------------------
# text grammar

@pytest.mark.parametrize("s", [
    "x0^2 - x1^2",
    "-x2^3 + 2*x1*x2*x3 - x0*x3^2 - x1^2*x4 + x0*x2*x4",
    "1/2*x0 - 3/7*x1^5",
    "0",
    "42",
    "-x0",
])
def test_grammar_roundtrip(s):
    R = xring(5)
    f = parse_polynomial(R, s)
    assert parse_polynomial(R, format_polynomial(f)) == f


def test_grammar_star_optional_and_whitespace():
    R = xring(2)
    assert parse_polynomial(R, "3x0x1") == parse_polynomial(R, "3 * x0 * x1")
    assert parse_polynomial(R, "2x0^2") == 2 * R.gens()[0] ** 2


def test_roundtrip_random_bit_exact():
    R = xring(4)
    rng = random.Random(13)
    for _ in range(200):
        f = rand_poly(R, rng).map_coefficients(
            lambda c: Fraction(c, rng.randrange(1, 5)))
        assert parse_polynomial(R, format_polynomial(f)) == f


@given(st.lists(st.tuples(st.tuples(st.integers(0, 4), st.integers(0, 4)),
                          st.integers(-9, 9)), max_size=6))
@settings(max_examples=60, deadline=None)
def test_add_sub_inverse_property(pairs):
    R = xring(2)
    f = R.poly({e: c for e, c in pairs})
    g = R.from_string("x0 - 2*x1 + 1")
    assert (f + g) - g == f


def test_monomial_compare_function():
    from detlab.polyring import monomial_compare, grevlex, lex
    o = grevlex(5)
    assert monomial_compare((0, 0, 1, 0, 1), (0, 0, 0, 2, 0), o) == -1
    assert monomial_compare((1, 0, 0, 1, 0), (0, 1, 1, 0, 0), o) == -1
    assert monomial_compare((1, 1, 0, 0, 0), (1, 1, 0, 0, 0), o) == 0
    assert monomial_compare((1, 0), (0, 100), lex(2)) == 1
    import pytest as _pytest
    with _pytest.raises(ValueError):
        monomial_compare((1, 0), (1, 0, 0), o)


def test_euler_identity_random_homogeneous():
    import random as _random
    from itertools import combinations_with_replacement
    R = xring(4)
    rng = _random.Random(515)
    monos = list(combinations_with_replacement(range(4), 3))
    for _ in range(100):
        d = {}
        for _ in range(4):
            pick = monos[rng.randrange(len(monos))]
            e = [0, 0, 0, 0]
            for i in pick:
                e[i] += 1
            d[tuple(e)] = d.get(tuple(e), 0) + rng.randrange(-5, 6)
        f = R.poly(d)
        if f.is_zero():
            continue
        acc = R.zero()
        for i in range(4):
            acc = acc + R.var(i) * f.diff(i)
        assert acc == f * 3


def test_order_variable_permutation():
    from detlab.polyring import monomial_compare
    # priority sequence (1, 0): the second variable becomes the big one
    o = grevlex(2, perm=(1, 0))
    assert monomial_compare((1, 0), (0, 1), o) == -1
    assert monomial_compare((0, 2), (2, 0), o) == 1
    ol = lex(3, perm=(2, 1, 0))
    assert monomial_compare((5, 0, 0), (0, 0, 1), ol) == -1
