"""Ideal arithmetic in F_p[x_1..x_n]: reduced Groebner bases, normal forms,
colon ideals, regular-sequence certification, and combinatorial Krull
dimension of the quotient.

All outputs are deterministic: reduced bases are unique for a fixed order,
reducers are chosen by (lead degree, index), and results are cached by
content hash.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .arith import (
    MonomialOrder,
    PolyRing,
    Polynomial,
    monomial_degree,
    monomial_div,
    monomial_divides,
)
from .cache import CACHE
from .errors import DomainError, InternalConsistencyError, StructuralError
from .modgb import DEFAULT_PAIR_LIMIT, ModuleBasis

if TYPE_CHECKING:
    from .modcore import QuotientRing


@dataclass(frozen=True)
class Ideal:
    """Finitely many nonzero generators in a fixed ring; zero gens dropped."""

    ring: PolyRing
    generators: tuple

    def __post_init__(self):
        for g in self.generators:
            if g.ring != self.ring:
                raise StructuralError("ideal generator from a different ring")
        object.__setattr__(
            self, "generators", tuple(g for g in self.generators if not g.is_zero())
        )


def ideal(ring: PolyRing, generators) -> Ideal:
    return Ideal(ring, tuple(generators))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced basis: monic, no lead term divides a term of another element."""

    ring: PolyRing
    elements: tuple

    def lead_monomials(self):
        return tuple(g.lead_monomial() for g in self.elements)

    def is_unit_ideal(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant() and bool(
            self.elements[0]
        )

    def __iter__(self):
        return iter(self.elements)


def _order_payload(order: MonomialOrder):
    return [order.kind, list(order.priority)]


def buchberger(I: Ideal, pair_limit: int = DEFAULT_PAIR_LIMIT) -> GroebnerBasis:
    """Reduced Groebner basis of I under I.ring.order.

    Each input generator is verified to self-reduce to zero against the
    result.  Results are content-cached; a hit is byte-identical to a fresh
    computation because the reduced basis is unique.
    """
    ring = I.ring
    payload = {
        "op": "groebner",
        "p": ring.p,
        "vars": list(ring.variables),
        "order": _order_payload(ring.order),
        "gens": sorted(str(g) for g in I.generators),
    }
    cached = CACHE.get(payload)
    if cached is not None:
        elements = tuple(ring.parse(s) for s in cached)
        return GroebnerBasis(ring, elements)
    basis = ModuleBasis(ring, [(g,) for g in I.generators], rank=1, pair_limit=pair_limit)
    elements = tuple(vec[0] for vec in basis.elements)
    gb = GroebnerBasis(ring, elements)
    for g in I.generators:
        if not normal_form(g, gb).is_zero():
            raise InternalConsistencyError(
                f"generator {g} does not reduce to zero against its own basis"
            )
    CACHE.put(payload, [str(g) for g in elements])
    return gb


def poly_divmod(f: Polynomial, divisors):
    """Multivariate division: f = sum q_i * d_i + r, no term of r reducible.

    Reducers are chosen by (lead degree, list index).  The remainder is the
    unique normal form whenever the divisors form a Groebner basis.
    """
    ring = f.ring
    order = ring.order
    p = ring.p
    divs = [(d.lead_monomial(), d.lead_coeff(), d) for d in divisors if not d.is_zero()]
    ranked = sorted(
        range(len(divs)), key=lambda i: (monomial_degree(divs[i][0]), i)
    )
    quotients = [{} for _ in divisors]
    work = dict(f.terms)
    remainder = {}
    while work:
        mono = max(work, key=order.key)
        coeff = work.pop(mono)
        hit = None
        for i in ranked:
            if monomial_divides(divs[i][0], mono):
                hit = i
                break
        if hit is None:
            remainder[mono] = coeff
            continue
        lead_mono, lead_coeff, d = divs[hit]
        shift = monomial_div(mono, lead_mono)
        q = (coeff * pow(lead_coeff, p - 2, p)) % p
        quotients[hit][shift] = (quotients[hit].get(shift, 0) + q) % p
        for m2, c2 in d.terms:
            m = tuple(a + b for a, b in zip(m2, shift))
            v = (work.get(m, 0) - q * c2) % p
            if m == mono:
                continue  # the lead term cancels by construction
            if v:
                work[m] = v
            else:
                work.pop(m, None)
    return (
        [ring.from_terms(q) for q in quotients],
        ring.from_terms(remainder),
    )


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Unique remainder of f modulo G; f - result lies in the ideal of G."""
    if f.ring != G.ring:
        raise StructuralError("polynomial and basis over different rings")
    _, r = poly_divmod(f, list(G.elements))
    return r


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g for g dividing f; raises if the division leaves a remainder."""
    qs, r = poly_divmod(f, [g])
    if not r.is_zero():
        raise DomainError(f"{g} does not divide {f}")
    return qs[0]


def _fresh_variable(ring: PolyRing) -> str:
    name = "t"
    while name in ring.variables:
        name = "_" + name
    return name


def colon_ideal(I: Ideal, f: Polynomial, pair_limit: int = DEFAULT_PAIR_LIMIT) -> Ideal:
    """(I : f) = {g : g*f in I} via intersection with (f) in an extended ring.

    Computes I ∩ (f) by eliminating a fresh variable t from t*I + (1-t)*(f)
    under lex (t first), then divides the t-free generators by f.  Every
    returned generator is checked to multiply back into I.
    """
    ring = I.ring
    if f.is_zero():
        raise DomainError("colon ideal by zero")
    if f.ring != ring:
        raise StructuralError("polynomial and ideal over different rings")
    tname = _fresh_variable(ring)
    ext = PolyRing(
        ring.prime,
        (tname,) + ring.variables,
        MonomialOrder("lex", ring.nvars + 1),
    )

    def inject(g):
        return ext.from_terms({(0,) + mono: c for mono, c in g.terms})

    t = ext.variable(0)
    one = ext.one()
    gens = [t * inject(g) for g in I.generators]
    gens.append((one - t) * inject(f))
    G = buchberger(ideal(ext, gens), pair_limit=pair_limit)
    intersection = []
    for g in G.elements:
        if all(mono[0] == 0 for mono, _ in g.terms):
            intersection.append(ring.from_terms({mono[1:]: c for mono, c in g.terms}))
    quotients = [exact_divide(g, f) for g in intersection]
    result = ideal(ring, quotients)
    gb_I = buchberger(I, pair_limit=pair_limit)
    for q in result.generators:
        if not normal_form(q * f, gb_I).is_zero():
            raise InternalConsistencyError("colon generator fails the membership check")
    return result


def ideals_equal(I: Ideal, J: Ideal) -> bool:
    """Equality via uniqueness of the reduced Groebner basis."""
    return buchberger(I).elements == buchberger(J).elements


@dataclass(frozen=True)
class RegularSequenceResult:
    is_regular: bool
    first_failure: int | None  # 1-based index of the first failing element


def is_regular_sequence(elements, R: "QuotientRing") -> RegularSequenceResult:
    """Certify x_1..x_s as a regular sequence on R via colon-ideal stability.

    At step i the element must satisfy (J : x_i) = J for J = I + (x_1..x_{i-1})
    and leave the ideal proper.  Elements must lie in the irrelevant maximal
    ideal (zero constant term).
    """
    ring = R.poly_ring
    for x in elements:
        if x.constant_term() != 0:
            raise DomainError(
                f"element {x} has a nonzero constant term; not in the maximal ideal"
            )
    current = list(R.ideal.generators)
    for idx, x in enumerate(elements, start=1):
        if x.is_zero():
            return RegularSequenceResult(False, idx)
        J = ideal(ring, current)
        if not ideals_equal(colon_ideal(J, x), J):
            return RegularSequenceResult(False, idx)
        current.append(x)
        if buchberger(ideal(ring, current)).is_unit_ideal():
            return RegularSequenceResult(False, idx)
    return RegularSequenceResult(True, None)


def monomial_set_dimension(monomials, nvars: int) -> int:
    """Largest subset of variables meeting the support of no monomial.

    This is the combinatorial Krull dimension of a quotient by a monomial
    ideal; brute force over all subsets, fine for desk-scale variable counts.
    """
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in monomials]
    if any(not s for s in supports):
        return -1  # a unit monomial: zero ring
    best = -1
    for mask in range(1 << nvars):
        subset = {i for i in range(nvars) if mask >> i & 1}
        if all(not s <= subset for s in supports):
            best = max(best, len(subset))
    return best


def krull_dimension(R: "QuotientRing") -> int:
    """dim R from the staircase of the lead-term ideal of gb(I); -1 for the zero ring."""
    if R.is_zero_ring:
        return -1
    return monomial_set_dimension(R.groebner_basis.lead_monomials(), R.poly_ring.nvars)
