"""Exact arithmetic over F_p and sparse multivariate polynomials.

Coefficients are canonical residues in [0, p).  Monomials are exponent
tuples, one entry per ring variable.  A polynomial stores its terms sorted
descending in the ring's monomial order with no zero coefficients, so equal
polynomials have identical representations.

Exponents are kept below 2**31 and checked on every operation that can grow
them; raising to a p^e-th power scales exponents, so overflow fails loudly
instead of silently wrapping a downstream computation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DomainError, DslError, ExponentOverflowError, StructuralError

Monomial = tuple  # exponent vector, one non-negative int per variable

EXPONENT_LIMIT = 1 << 31
PRIME_LIMIT = (1 << 31) - 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Prime:
    """A prime characteristic, verified by trial division at construction."""

    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise DomainError(f"characteristic must be an integer, got {self.value!r}")
        if not 2 <= self.value <= PRIME_LIMIT:
            raise DomainError(
                f"characteristic must lie in [2, {PRIME_LIMIT}], got {self.value}"
            )
        if not _is_prime(self.value):
            raise DomainError(f"characteristic {self.value} is not prime")

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class FpElement:
    """Canonical residue in [0, p); the coefficient field of every ring here."""

    prime: Prime
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.prime.value)

    def _check(self, other: "FpElement"):
        if self.prime != other.prime:
            raise StructuralError("field elements over different primes")

    def __add__(self, other: "FpElement") -> "FpElement":
        self._check(other)
        return FpElement(self.prime, self.value + other.value)

    def __sub__(self, other: "FpElement") -> "FpElement":
        self._check(other)
        return FpElement(self.prime, self.value - other.value)

    def __mul__(self, other: "FpElement") -> "FpElement":
        self._check(other)
        return FpElement(self.prime, self.value * other.value)

    def __neg__(self) -> "FpElement":
        return FpElement(self.prime, -self.value)

    def inverse(self) -> "FpElement":
        if self.value == 0:
            raise DomainError("zero has no multiplicative inverse")
        return FpElement(self.prime, pow(self.value, self.prime.value - 2, self.prime.value))

    def __pow__(self, n: int) -> "FpElement":
        if n < 0:
            return self.inverse() ** (-n)
        return FpElement(self.prime, pow(self.value, n, self.prime.value))

    def __bool__(self):
        return self.value != 0


@dataclass(frozen=True)
class MonomialOrder:
    """Total multiplicative well-ordering of exponent vectors.

    kind is "grevlex" or "lex"; priority permutes the variables before
    comparison (defaults to declared order).  key() returns a sort key that
    is ascending in the order, so the largest monomial has the largest key.
    """

    kind: str
    nvars: int
    priority: tuple = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise DomainError(f"unknown monomial order {self.kind!r}")
        if self.priority is None:
            object.__setattr__(self, "priority", tuple(range(self.nvars)))
        if sorted(self.priority) != list(range(self.nvars)):
            raise DomainError("order priority must be a permutation of the variables")

    def key(self, mono: Monomial):
        m = tuple(mono[i] for i in self.priority)
        if self.kind == "lex":
            return m
        return (sum(m), tuple(-e for e in reversed(m)))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    out = tuple(x + y for x, y in zip(a, b))
    if any(e >= EXPONENT_LIMIT for e in out):
        raise ExponentOverflowError(f"exponent exceeds {EXPONENT_LIMIT} in product")
    return out


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_degree(a: Monomial) -> int:
    return sum(a)


@dataclass(frozen=True)
class PolyRing:
    """F_p[x_1..x_n] with a fixed monomial order; context shared by polynomials."""

    prime: Prime
    variables: tuple
    order: MonomialOrder

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise DomainError("duplicate variable names")
        for name in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise DomainError(f"invalid variable name {name!r}")
        if self.order.nvars != len(self.variables):
            raise StructuralError("order arity does not match variable count")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def p(self) -> int:
        return self.prime.value

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        if c == 0:
            return self.zero()
        return Polynomial(self, (((0,) * self.nvars, c),))

    def variable(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.variables.index(i)
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, ((mono, 1),))

    def monomial(self, mono: Monomial, coeff: int = 1) -> "Polynomial":
        return self.from_terms({tuple(mono): coeff})

    def from_terms(self, terms: dict) -> "Polynomial":
        """Canonicalize a {monomial: coefficient} mapping."""
        p = self.p
        clean = {}
        for mono, c in terms.items():
            c %= p
            if c:
                if len(mono) != self.nvars:
                    raise StructuralError("exponent vector arity mismatch")
                clean[tuple(mono)] = c
        ordered = sorted(clean, key=self.order.key, reverse=True)
        return Polynomial(self, tuple((m, clean[m]) for m in ordered))

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


def grevlex_ring(p: int, variables) -> PolyRing:
    names = tuple(variables)
    return PolyRing(Prime(p), names, MonomialOrder("grevlex", len(names)))


class Polynomial:
    """Immutable sparse polynomial over F_p; terms descending, no zeros."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise StructuralError("polynomials over different rings")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.prime, self.ring.variables, self.terms))
        return self._hash

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        acc = dict(self.terms)
        for mono, c in other.terms:
            acc[mono] = acc.get(mono, 0) + c
        return self.ring.from_terms(acc)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        acc = dict(self.terms)
        for mono, c in other.terms:
            acc[mono] = acc.get(mono, 0) - c
        return self.ring.from_terms(acc)

    def __neg__(self) -> "Polynomial":
        p = self.ring.p
        return Polynomial(self.ring, tuple((m, p - c) for m, c in self.terms))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        acc = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = monomial_mul(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return self.ring.from_terms(acc)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise DomainError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        c %= self.ring.p
        if c == 0:
            return self.ring.zero()
        p = self.ring.p
        return Polynomial(self.ring, tuple((m, (k * c) % p) for m, k in self.terms))

    def mul_term(self, mono: Monomial, coeff: int) -> "Polynomial":
        coeff %= self.ring.p
        if coeff == 0:
            return self.ring.zero()
        p = self.ring.p
        return Polynomial(
            self.ring,
            tuple((monomial_mul(m, mono), (c * coeff) % p) for m, c in self.terms),
        )

    def lead_monomial(self) -> Monomial:
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        return self.terms[0][0]

    def lead_coeff(self) -> int:
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        return self.terms[0][1]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = pow(self.lead_coeff(), self.ring.p - 2, self.ring.p)
        return self.scale(inv)

    def constant_term(self) -> int:
        zero = (0,) * self.ring.nvars
        for m, c in self.terms:
            if m == zero:
                return c
        return 0

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(monomial_degree(m) for m, _ in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.terms:
            factors = []
            for name, e in zip(self.ring.variables, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"<poly {self} over F_{self.ring.p}[{','.join(self.ring.variables)}]>"


def frobenius_power(f: Polynomial, e: int) -> Polynomial:
    """f^(p^e) computed by scaling exponents; F_p coefficients are fixed.

    Raising to the p^e-th power is a ring map in characteristic p, so the
    result has the same term count as f.  Fails on exponent overflow.
    """
    if e < 1:
        raise DomainError(f"Frobenius exponent must be >= 1, got {e}")
    q = f.ring.p ** e
    if q >= EXPONENT_LIMIT:
        raise ExponentOverflowError(f"p^e = {q} exceeds the exponent regime")
    terms = []
    for mono, c in f.terms:
        scaled = tuple(a * q for a in mono)
        if any(a >= EXPONENT_LIMIT for a in scaled):
            raise ExponentOverflowError(
                f"exponent {max(scaled)} exceeds {EXPONENT_LIMIT} after p^{e} scaling"
            )
        terms.append((scaled, c))
    # scaling exponents by q preserves both grevlex and lex comparisons
    return Polynomial(f.ring, tuple(terms))


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-)|(.))")


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse `3*x^2*y + 1` style syntax; `*` optional after the coefficient."""
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(7) is not None:
            raise DslError(f"unexpected character {m.group(7)!r} in polynomial {text!r}")
        tokens.append(m.group(0).strip())
    tokens = [t for t in tokens if t]
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def parse_term(sign: int):
        nonlocal pos
        coeff = 1
        mono = [0] * ring.nvars
        saw_factor = False
        tok = peek()
        if tok is not None and tok.isdigit():
            coeff = int(take())
            saw_factor = True
            if peek() == "*":
                take()
                saw_factor = False
        while True:
            tok = peek()
            if tok is None or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", tok):
                break
            name = take()
            if name not in ring.variables:
                raise DslError(f"unknown variable {name!r} in polynomial {text!r}")
            exp = 1
            if peek() == "^":
                take()
                etok = take()
                if etok is None or not etok.isdigit():
                    raise DslError(f"expected integer exponent in polynomial {text!r}")
                exp = int(etok)
            mono[ring.variables.index(name)] += exp
            saw_factor = True
            if peek() == "*":
                take()
                saw_factor = False
                continue
            break
        if not saw_factor:
            raise DslError(f"dangling operator in polynomial {text!r}")
        return tuple(mono), sign * coeff

    acc = {}
    sign = 1
    tok = peek()
    if tok in ("+", "-"):
        take()
        sign = -1 if tok == "-" else 1
    while True:
        mono, c = parse_term(sign)
        acc[mono] = acc.get(mono, 0) + c
        tok = peek()
        if tok is None:
            break
        if tok not in ("+", "-"):
            raise DslError(f"expected + or - in polynomial {text!r}, got {tok!r}")
        take()
        sign = -1 if tok == "-" else 1
    return ring.from_terms(acc)
