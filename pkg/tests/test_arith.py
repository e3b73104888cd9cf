import random

import pytest

from frobforge.arith import (
    FpElement,
    MonomialOrder,
    PolyRing,
    Prime,
    frobenius_power,
    grevlex_ring,
    parse_polynomial,
)
from frobforge.errors import DomainError, DslError, ExponentOverflowError


def naive_mul(ring, f, g):
    """Term-by-term expansion oracle, independent of Polynomial.__mul__."""
    acc = {}
    for m1, c1 in f.terms:
        for m2, c2 in g.terms:
            m = tuple(a + b for a, b in zip(m1, m2))
            acc[m] = (acc.get(m, 0) + c1 * c2) % ring.p
    return {m: c for m, c in acc.items() if c}


def random_poly(ring, rng, max_terms=4, max_deg=3):
    acc = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.randint(0, max_deg) for _ in range(ring.nvars))
        acc[mono] = rng.randint(0, ring.p - 1)
    return ring.from_terms(acc)


class TestPrime:
    def test_accepts_primes(self):
        for p in (2, 3, 5, 7, 11, 101, 2**31 - 1):
            assert Prime(p).value == p

    def test_rejects_composites_and_junk(self):
        for bad in (0, 1, 4, 9, 100, -3):
            with pytest.raises(DomainError):
                Prime(bad)
        with pytest.raises(DomainError):
            Prime(2**31 + 11)


class TestFpElement:
    def test_inverse_examples(self):
        assert FpElement(Prime(5), 2).inverse().value == 3
        assert (FpElement(Prime(2), 1) + FpElement(Prime(2), 1)).value == 0
        assert (FpElement(Prime(7), 3) * FpElement(Prime(7), 5)).value == 1

    def test_inverse_of_zero_rejected(self):
        with pytest.raises(DomainError):
            FpElement(Prime(5), 0).inverse()

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
    def test_exhaustive_tables(self, p):
        # oracle: plain modular arithmetic over every pair
        pr = Prime(p)
        for a in range(p):
            for b in range(p):
                assert (FpElement(pr, a) + FpElement(pr, b)).value == (a + b) % p
                assert (FpElement(pr, a) * FpElement(pr, b)).value == (a * b) % p
            assert (-FpElement(pr, a)).value == (-a) % p
            if a:
                inv = FpElement(pr, a).inverse().value
                assert (inv * a) % p == 1

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_fermat(self, p):
        pr = Prime(p)
        for a in range(p):
            assert (FpElement(pr, a) ** p).value == a


class TestMonomialOrder:
    def test_grevlex_examples(self):
        order = MonomialOrder("grevlex", 2)
        # x > y, x*y > x^2? no: deg 2 both, grevlex: x^2 > xy > y^2
        assert order.key((1, 0)) > order.key((0, 1))
        assert order.key((2, 0)) > order.key((1, 1)) > order.key((0, 2))

    def test_grevlex_three_vars(self):
        order = MonomialOrder("grevlex", 3)
        # classic: x*z < y^2 in grevlex with x > y > z
        assert order.key((1, 0, 1)) < order.key((0, 2, 0))

    def test_lex(self):
        order = MonomialOrder("lex", 2)
        assert order.key((1, 0)) > order.key((0, 5))

    def test_multiplicative(self):
        rng = random.Random(7)
        for kind in ("grevlex", "lex"):
            order = MonomialOrder(kind, 3)
            for _ in range(200):
                a = tuple(rng.randint(0, 4) for _ in range(3))
                b = tuple(rng.randint(0, 4) for _ in range(3))
                c = tuple(rng.randint(0, 4) for _ in range(3))
                if order.key(a) < order.key(b):
                    ac = tuple(x + y for x, y in zip(a, c))
                    bc = tuple(x + y for x, y in zip(b, c))
                    assert order.key(ac) < order.key(bc)

    def test_one_is_minimal(self):
        for kind in ("grevlex", "lex"):
            order = MonomialOrder(kind, 2)
            for mono in [(1, 0), (0, 1), (2, 3)]:
                assert order.key((0, 0)) < order.key(mono)


class TestPolynomialArithmetic:
    def test_char2_square(self):
        R = grevlex_ring(2, ["x", "y"])
        f = R.parse("x + y")
        assert f * f == R.parse("x^2 + y^2")

    def test_mul_by_zero(self):
        R = grevlex_ring(5, ["x", "y"])
        f = R.parse("3*x^2*y + 1")
        assert (f * R.zero()).is_zero()

    def test_expansion_example(self):
        R = grevlex_ring(3, ["x"])
        assert R.parse("x + 1") * R.parse("x + 2") == R.parse("x^2 + 2")

    def test_mul_against_naive_oracle(self):
        rng = random.Random(11)
        for p in (2, 3, 5):
            R = grevlex_ring(p, ["x", "y"])
            for _ in range(60):
                f = random_poly(R, rng)
                g = random_poly(R, rng)
                assert dict((f * g).terms) == naive_mul(R, f, g)

    def test_add_neg_cancels(self):
        rng = random.Random(13)
        R = grevlex_ring(5, ["x", "y", "z"])
        for _ in range(40):
            f = random_poly(R, rng)
            assert (f + (-f)).terms == ()

    def test_canonical_sorted_no_dups(self):
        R = grevlex_ring(7, ["x", "y"])
        f = R.parse("y + x^2 + 3*y + x^2")
        assert f == R.parse("2*x^2 + 4*y")
        keys = [R.order.key(m) for m, _ in f.terms]
        assert keys == sorted(keys, reverse=True)

    def test_ring_axioms_random(self):
        rng = random.Random(17)
        R = grevlex_ring(3, ["x", "y"])
        for _ in range(30):
            f, g, h = (random_poly(R, rng) for _ in range(3))
            assert f + g == g + f
            assert f * g == g * f
            assert f * (g + h) == f * g + f * h
            assert (f * g) * h == f * (g * h)


class TestFrobeniusPower:
    def test_freshman_dream(self):
        R = grevlex_ring(2, ["x", "y"])
        assert frobenius_power(R.parse("x + y"), 1) == R.parse("x^2 + y^2")

    def test_identity_fixed(self):
        R = grevlex_ring(5, ["x"])
        assert frobenius_power(R.one(), 3) == R.one()

    def test_coefficients_fermat_fixed(self):
        R = grevlex_ring(5, ["x", "y"])
        assert frobenius_power(R.parse("x^2*y + 3"), 1) == R.parse("x^10*y^5 + 3")

    def test_against_repeated_multiplication(self):
        # oracle: f ** (p^e) via plain polynomial multiplication
        rng = random.Random(23)
        count = 0
        for p in (2, 3, 5):
            R = grevlex_ring(p, ["x", "y"])
            for e in (1, 2):
                for _ in range(10):
                    f = random_poly(R, rng, max_terms=3, max_deg=3)
                    assert frobenius_power(f, e) == f ** (p**e)
                    count += 1
        assert count >= 50

    def test_ring_homomorphism(self):
        rng = random.Random(29)
        for p in (2, 3, 5):
            R = grevlex_ring(p, ["x", "y"])
            for _ in range(15):
                f = random_poly(R, rng)
                g = random_poly(R, rng)
                assert frobenius_power(f * g, 1) == frobenius_power(f, 1) * frobenius_power(g, 1)
                assert frobenius_power(f + g, 1) == frobenius_power(f, 1) + frobenius_power(g, 1)

    def test_overflow_detected(self):
        R = grevlex_ring(2, ["x"])
        f = R.monomial((2**20,))
        with pytest.raises(ExponentOverflowError):
            frobenius_power(f, 12)

    def test_bad_exponent(self):
        R = grevlex_ring(2, ["x"])
        with pytest.raises(DomainError):
            frobenius_power(R.one(), 0)


class TestParsePrint:
    def test_round_trip(self):
        R = grevlex_ring(7, ["x", "y"])
        for text in ["3*x^2*y + 1", "x + y", "0", "5", "x^3 + 2*x*y + 6"]:
            f = R.parse(text)
            assert R.parse(str(f)) == f

    def test_optional_star_and_minus(self):
        R = grevlex_ring(5, ["x"])
        assert R.parse("3x^2") == R.parse("3*x^2")
        assert R.parse("x - 1") == R.parse("x + 4")

    def test_unknown_variable(self):
        R = grevlex_ring(5, ["x"])
        with pytest.raises(DslError):
            R.parse("x + z")

    def test_syntax_error(self):
        R = grevlex_ring(5, ["x"])
        with pytest.raises(DslError):
            R.parse("x + + 1")
        with pytest.raises(DslError):
            R.parse("x ^ y")
