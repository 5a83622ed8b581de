"""Field arithmetic and square classes, checked against enumeration."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wittkit.errors import (
    SquareArgument,
    UnsupportedField,
    UnsupportedInput,
    ZeroElement,
)
from wittkit.fields import (
    QQ,
    GFExt,
    LaurentElement,
    LaurentExt,
    PrimeField,
    QuadExt,
    RatFuncExt,
    is_prime,
    nonresidue,
    poly_eval,
    poly_gcd,
    poly_is_irreducible,
    poly_mul,
    poly_squarefree_decomposition,
    prime_factors,
    s_square_classes,
    squarefree_part,
    support,
)

F7 = PrimeField(7)
F5 = PrimeField(5)


# --- integer layer ----------------------------------------------------------


def test_is_prime_against_sieve():
    sieve = [True] * 2000
    sieve[0] = sieve[1] = False
    for i in range(2, 45):
        if sieve[i]:
            for j in range(i * i, 2000, i):
                sieve[j] = False
    for n in range(2000):
        assert is_prime(n) == sieve[n], n


def test_squarefree_part_by_enumeration():
    # oracle: multiply out p^e directly for every |n| <= 3000
    def oracle(n):
        s = -1 if n < 0 else 1
        n = abs(n)
        out = s
        for p in range(2, n + 1):
            e = 0
            while n % p == 0:
                e += 1
                n //= p
            if e % 2:
                out *= p
        return out

    rng = random.Random(1)
    for n in list(range(1, 300)) + [rng.randrange(1, 3000) for _ in range(200)]:
        assert squarefree_part(n) == oracle(n)
        assert squarefree_part(-n) == oracle(-n)


def test_squarefree_part_large_corner_cases():
    p = 1000003  # prime above the trial bound
    assert squarefree_part(p) == p
    assert squarefree_part(p * p) == 1
    assert squarefree_part(4 * p) == p
    q = 1000033
    with pytest.raises(UnsupportedInput):
        squarefree_part(p * p * q)  # residual p*p*q: not prime, not a square
    with pytest.raises(ZeroElement):
        squarefree_part(0)


def test_prime_factors():
    assert prime_factors(360) == {2: 3, 3: 2, 5: 1}
    assert prime_factors(-7) == {7: 1}
    assert prime_factors(1) == {}


# --- rationals --------------------------------------------------------------


def test_rational_square_class():
    assert QQ.square_class(Fraction(8)) == 2
    assert QQ.square_class(Fraction(-18)) == -2
    assert QQ.square_class(Fraction(3, 4)) == 3
    assert QQ.square_class(Fraction(2, 3)) == 6  # 2/3 ~ 2*3
    assert QQ.is_square(Fraction(49, 9))
    assert not QQ.is_square(Fraction(-4))
    assert not QQ.is_square(Fraction(8))


@given(st.integers(-(10**6), 10**6), st.integers(1, 10**4))
def test_square_class_is_class_invariant(num, den):
    if num == 0:
        return
    a = Fraction(num, den)
    t = Fraction(7, 3)
    assert QQ.square_class(a * t * t) == QQ.square_class(a)
    assert QQ.is_square(a * a)


def test_s_square_classes():
    got = s_square_classes(QQ, [2, 5])
    assert len(got) == 8
    assert set(got) == {1, 2, 5, 10, -1, -2, -5, -10}
    with pytest.raises(UnsupportedInput):
        s_square_classes(QQ, [6])


def test_support():
    assert support(QQ, Fraction(-90)) == {5}  # -90 ~ -10 = -2*5
    assert support(QQ, Fraction(1, 3)) == {3}
    assert support(QQ, Fraction(4)) == frozenset()


# --- prime fields -----------------------------------------------------------


def test_f7_squares_by_enumeration():
    squares = {x * x % 7 for x in range(1, 7)}
    assert squares == {1, 2, 4}
    for a in range(1, 7):
        assert F7.is_square(a) == (a in squares)
    assert nonresidue(7) == 3
    assert F7.square_class(5) == 3
    assert F7.square_class(2) == 1


def test_prime_field_ops():
    assert F7.mul(3, 5) == 1
    assert F7.inv(3) == 5
    assert F7.pow(3, 6) == 1
    with pytest.raises(ZeroElement):
        F7.inv(0)
    with pytest.raises(UnsupportedField):
        PrimeField(2)
    with pytest.raises(UnsupportedField):
        PrimeField(9)


# --- quadratic extensions ---------------------------------------------------


def test_quadext_arithmetic():
    K = QuadExt(QQ, Fraction(-1))
    i = (Fraction(0), Fraction(1))
    assert K.mul(i, i) == (Fraction(-1), Fraction(0))
    x = (Fraction(3), Fraction(2))
    assert K.mul(x, K.inv(x)) == K.one()
    assert K.norm(x) == 13
    with pytest.raises(SquareArgument):
        QuadExt(QQ, Fraction(9, 4))
    # descriptor normalises the radicand to its square class
    assert QuadExt(QQ, Fraction(8)).a == 2
    assert QuadExt(QQ, Fraction(8)) == QuadExt(QQ, Fraction(2))


def test_quadext_has_no_square_classes():
    K = QuadExt(QQ, Fraction(2))
    with pytest.raises(UnsupportedField):
        K.square_class(K.one())


# --- Laurent extensions -----------------------------------------------------


def test_laurent_ring_ops():
    L = LaurentExt(F7, "x")
    a = L.make(-1, (3, 0, 1))  # 3x^-1 + x
    b = L.make(1, (4,))  # 4x
    assert L.mul(a, b) == L.make(0, (5, 0, 4))
    assert L.add(a, L.neg(a)) == L.make(0, ())
    assert L.add(L.make(0, (1,)), L.make(0, (6,))) == LaurentElement(0, ())
    with pytest.raises(UnsupportedField):
        L.inv(a)


def test_laurent_square_classes():
    L = LaurentExt(F7, "x")
    # val parity and residue class are the complete invariants
    assert L.square_class(L.make(2, (2, 5))) == LaurentElement(0, (1,))
    assert L.square_class(L.make(3, (5, 1))) == LaurentElement(1, (3,))
    assert L.is_square(L.make(-2, (4, 1, 1)))
    assert not L.is_square(L.make(-1, (4,)))
    tower = LaurentExt(LaurentExt(F7, "x"), "y")
    inner = LaurentExt(F7, "x")
    e = tower.make(1, (inner.make(2, (5,)),))  # 5x^2 * y
    assert tower.square_class(e) == LaurentElement(
        1, (LaurentElement(0, (3,)),)
    )


def test_laurent_format():
    L = LaurentExt(QQ, "x")
    e = L.make(-1, (Fraction(1, 2), Fraction(0), Fraction(-3)))
    assert L.format(e) == "1/2*x^-1 - 3*x"


# --- rational function fields ----------------------------------------------


def test_ratfunc_field_ops():
    R = RatFuncExt(QQ, "x")
    x = R.gen()
    one = R.one()
    f = R.add(R.mul(x, x), R.neg(one))  # x^2 - 1
    g = R.add(x, one)  # x + 1
    q = R.div(f, g)
    assert q == R.add(x, R.neg(one))
    assert R.mul(q, R.inv(q)) == one
    assert R.format(R.div(one, g)) == "1/(x + 1)"


def test_ratfunc_square_class_strips_square_factors():
    R = RatFuncExt(QQ, "x")
    x = R.gen()
    sq = R.mul(x, x)
    f = R.mul(R.from_int(8), R.mul(sq, R.add(x, R.one())))  # 8x^2(x+1)
    rep = R.square_class(f)
    assert rep == R.mul(R.from_int(2), R.add(x, R.one()))
    assert R.is_square(R.mul(f, f))
    assert not R.is_square(f)
    # denominators count with the same parity: 1/x ~ x
    assert R.square_class(R.inv(x)) == x


def test_ratfunc_square_class_charp():
    R = RatFuncExt(F7, "x")
    x = R.gen()
    f = R.from_poly((0, 0, 0, 0, 0, 0, 0, 1))  # x^7, derivative vanishes
    assert R.square_class(f) == x
    assert not R.is_square(f)
    assert R.is_square(R.mul(f, x))


# --- polynomial layer -------------------------------------------------------


def test_squarefree_decomposition_char0():
    # (x+1)^2 (x-2)^3 * 5, rebuilt from the reported parts
    a = (Fraction(1),)
    for root, mult in ((-1, 2), (2, 3)):
        fac = (Fraction(-root), Fraction(1))
        for _ in range(mult):
            a = poly_mul(QQ, a, fac)
    a = tuple(Fraction(5) * c for c in a)
    lc, parts = poly_squarefree_decomposition(QQ, a)
    assert lc == 5
    assert parts == [((Fraction(1), Fraction(1)), 2), ((Fraction(-2), Fraction(1)), 3)]


def test_squarefree_decomposition_charp_pth_power():
    # x^14 + x^7 = (x^2 + x)^7 over F_7: derivative is identically zero
    f = [0] * 15
    f[14] = 1
    f[7] = 1
    lc, parts = poly_squarefree_decomposition(F7, tuple(f))
    assert lc == 1
    assert parts == [((0, 1, 1), 7)]  # x^2 + x, all of multiplicity 7


def test_poly_gcd_and_irreducibility():
    # gcd over F_5 cross-checked by evaluating at all points
    f = (1, 0, 1)  # x^2 + 1 = (x+2)(x+3) over F_5
    assert poly_gcd(F5, f, (2, 1)) == (2, 1)
    assert not poly_is_irreducible(F5, f)
    assert poly_is_irreducible(F7, (1, 0, 1))  # -1 is not a square mod 7
    assert {x for x in range(5) if poly_eval(F5, f, x) == 0} == {2, 3}
    assert poly_is_irreducible(F5, (1, 1, 0, 1))  # x^3 + x + 1: no roots
    assert not poly_is_irreducible(F5, (0, 1, 1))


# --- residue fields ---------------------------------------------------------


def test_gfext_f49():
    K = GFExt(7, (1, 0, 1))  # F_49 = F_7(i)
    i = K.make((0, 1))
    assert K.mul(i, i) == K.make((6,))
    assert K.mul(i, K.inv(i)) == K.one()
    # squares of F_49 by enumeration
    squares = set()
    for a in range(7):
        for b in range(7):
            e = K.make((a, b))
            if e:
                squares.add(K.mul(e, e))
    assert len(squares) == 24
    for a in range(7):
        for b in range(7):
            e = K.make((a, b))
            if e:
                assert K.is_square(e) == (e in squares)
    # every element of the prime field is a square in F_49 (norm argument)
    for a in range(1, 7):
        assert K.is_square(K.make((a,)))


def test_gfext_rejects_reducible_modulus():
    with pytest.raises(UnsupportedField):
        GFExt(5, (1, 0, 1))


# --- cross-cutting properties ----------------------------------------------


@settings(max_examples=60)
@given(st.integers(-40, 40), st.integers(-40, 40), st.integers(-40, 40))
def test_f7_field_axioms(a, b, c):
    x, y, z = F7.from_int(a), F7.from_int(b), F7.from_int(c)
    assert F7.mul(x, F7.add(y, z)) == F7.add(F7.mul(x, y), F7.mul(x, z))
    if not F7.is_zero(x):
        assert F7.mul(x, F7.inv(x)) == 1


@settings(max_examples=40)
@given(
    st.lists(st.integers(-9, 9), min_size=0, max_size=5),
    st.lists(st.integers(-9, 9), min_size=1, max_size=4),
)
def test_ratfunc_mul_div_roundtrip(nc, dc):
    R = RatFuncExt(QQ, "x")
    f = R.make([Fraction(c) for c in nc], [Fraction(c) for c in dc] + [Fraction(1)])
    g = R.add(R.gen(), R.one())
    assert R.div(R.mul(f, g), g) == f
