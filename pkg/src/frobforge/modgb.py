"""Buchberger engine for submodules of free modules over F_p[x_1..x_n].

Vectors are tuples of polynomials.  Terms are (position, monomial) pairs
ordered position-over-term: a term in a lower position beats any term in a
higher position, and the ring's monomial order breaks ties within a
position.  Rank-one vectors recover the ideal case.

The same engine drives syzygy extraction, membership and lifting through
`GraphBasis`: a generator column is paired with a tag unit vector, the
value block dominates the tag block, and the elimination property of the
order splits the Groebner basis into a basis of the column span and a
generating set for the syzygies of the columns.
"""

from __future__ import annotations

import heapq

from .arith import (
    PolyRing,
    Polynomial,
    monomial_degree,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)
from .errors import ResourceLimitError, StructuralError

DEFAULT_PAIR_LIMIT = 200_000


class _Element:
    __slots__ = ("cols", "lead_pos", "lead_mono", "lead_deg")

    def __init__(self, cols, order):
        self.cols = cols
        self.lead_pos = None
        self.lead_mono = None
        self.lead_deg = -1
        for pos, d in enumerate(cols):
            if d:
                self.lead_pos = pos
                self.lead_mono = max(d, key=order.key)
                self.lead_deg = monomial_degree(self.lead_mono)
                break

    def is_zero(self):
        return self.lead_pos is None


def _to_cols(vec, rank):
    cols = [dict(p.terms) for p in vec]
    if len(cols) != rank:
        raise StructuralError("vector rank mismatch")
    return cols


def _axpy(target, coeff, shift, src_cols, p):
    """target += coeff * x^shift * src, in place."""
    for pos, d in enumerate(src_cols):
        if not d:
            continue
        t = target[pos]
        for mono, c in d.items():
            m = monomial_mul(mono, shift)
            v = (t.get(m, 0) + coeff * c) % p
            if v:
                t[m] = v
            else:
                t.pop(m, None)


class ModuleBasis:
    """Reduced Groebner basis of the span of the given vectors.

    Deterministic throughout: pairs are processed by (lcm degree, i, j),
    reducers chosen by (lead degree, basis index), and the reduced basis is
    sorted by lead term.
    """

    def __init__(self, ring: PolyRing, vectors, rank=None, pair_limit=DEFAULT_PAIR_LIMIT):
        self.ring = ring
        vectors = list(vectors)
        if rank is None:
            if not vectors:
                raise StructuralError("cannot infer rank of empty generator set")
            rank = len(vectors[0])
        self.rank = rank
        self._basis = self._buchberger(vectors, pair_limit)
        self._by_pos = {}
        for idx, el in enumerate(self._basis):
            self._by_pos.setdefault(el.lead_pos, []).append((el.lead_deg, idx, el))
        for entries in self._by_pos.values():
            entries.sort(key=lambda t: (t[0], t[1]))

    # -- construction ---------------------------------------------------

    def _make_monic(self, el):
        c = el.cols[el.lead_pos][el.lead_mono]
        if c != 1:
            inv = pow(c, self.ring.p - 2, self.ring.p)
            p = self.ring.p
            for d in el.cols:
                for mono in d:
                    d[mono] = (d[mono] * inv) % p
        return el

    def _reduce_full(self, cols, basis_list, index):
        """Full normal form of cols against basis_list using the index."""
        p = self.ring.p
        order = self.ring.order
        for pos in range(self.rank):
            while True:
                d = cols[pos]
                if not d:
                    break
                reduced = False
                for mono in sorted(d, key=order.key, reverse=True):
                    hit = None
                    for deg, _, el in index.get(pos, ()):  # sorted (degree, index)
                        if monomial_divides(el.lead_mono, mono):
                            hit = el
                            break
                    if hit is not None:
                        shift = monomial_div(mono, hit.lead_mono)
                        _axpy(cols, -d[mono], shift, hit.cols, p)
                        reduced = True
                        break
                if not reduced:
                    break
        return cols

    def _buchberger(self, vectors, pair_limit):
        order = self.ring.order
        p = self.ring.p
        basis = []
        index = {}

        def add(el):
            idx = len(basis)
            basis.append(el)
            index.setdefault(el.lead_pos, []).append((el.lead_deg, idx, el))
            index[el.lead_pos].sort(key=lambda t: (t[0], t[1]))
            return idx

        for vec in vectors:
            el = _Element(_to_cols(vec, self.rank), order)
            if not el.is_zero():
                add(self._make_monic(el))

        heap = []
        popped = set()
        for i in range(len(basis)):
            for j in range(i):
                if basis[i].lead_pos == basis[j].lead_pos:
                    L = monomial_lcm(basis[i].lead_mono, basis[j].lead_mono)
                    heapq.heappush(heap, (monomial_degree(L), j, i))

        processed = 0
        while heap:
            deg, i, j = heapq.heappop(heap)
            gi, gj = basis[i], basis[j]
            L = monomial_lcm(gi.lead_mono, gj.lead_mono)
            if self._product_skip(gi, gj, L) or self._chain_skip(basis, popped, i, j, L):
                popped.add((i, j))
                continue
            popped.add((i, j))
            processed += 1
            if processed > pair_limit:
                raise ResourceLimitError(
                    f"Groebner pair ceiling {pair_limit} exceeded"
                )
            s = [dict() for _ in range(self.rank)]
            _axpy(s, 1, monomial_div(L, gi.lead_mono), gi.cols, p)
            _axpy(s, -1, monomial_div(L, gj.lead_mono), gj.cols, p)
            self._reduce_full(s, basis, index)
            el = _Element(s, order)
            if el.is_zero():
                continue
            t = add(self._make_monic(el))
            for k in range(t):
                if basis[k].lead_pos == el.lead_pos:
                    L2 = monomial_lcm(basis[k].lead_mono, el.lead_mono)
                    heapq.heappush(heap, (monomial_degree(L2), k, t))

        return self._interreduce(basis)

    @staticmethod
    def _product_skip(gi, gj, L):
        # valid only when both vectors live entirely in the shared position
        if L != monomial_mul(gi.lead_mono, gj.lead_mono):
            return False
        for el in (gi, gj):
            for pos, d in enumerate(el.cols):
                if d and pos != el.lead_pos:
                    return False
        return True

    @staticmethod
    def _chain_skip(basis, popped, i, j, L):
        pos = basis[i].lead_pos
        for k, el in enumerate(basis):
            if k in (i, j) or el.lead_pos != pos:
                continue
            if not monomial_divides(el.lead_mono, L):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in popped and b in popped:
                return True
        return False

    def _interreduce(self, basis):
        live = [el for el in basis if not el.is_zero()]
        live.sort(key=self._lead_sort_key)
        minimal = []
        for el in live:
            if not any(
                kept.lead_pos == el.lead_pos
                and monomial_divides(kept.lead_mono, el.lead_mono)
                for kept in minimal
            ):
                minimal.append(el)
        # tail reduction against the other elements
        reduced = []
        for i, el in enumerate(minimal):
            others = minimal[:i] + minimal[i + 1 :]
            index = {}
            for idx, other in enumerate(others):
                index.setdefault(other.lead_pos, []).append(
                    (other.lead_deg, idx, other)
                )
            for entries in index.values():
                entries.sort(key=lambda t: (t[0], t[1]))
            cols = [dict(d) for d in el.cols]
            self._reduce_full(cols, others, index)
            new = _Element(cols, self.ring.order)
            if not new.is_zero():
                reduced.append(self._make_monic(new))
        reduced.sort(key=self._lead_sort_key)
        return reduced

    def _lead_sort_key(self, el):
        return (el.lead_pos, self.ring.order.key(el.lead_mono))

    # -- queries ---------------------------------------------------------

    @property
    def elements(self):
        return tuple(self._vec(el.cols) for el in self._basis)

    def _vec(self, cols):
        ring = self.ring
        out = []
        for d in cols:
            out.append(ring.from_terms(d))
        return tuple(out)

    def normal_form(self, vec):
        cols = _to_cols(vec, self.rank)
        self._reduce_full(cols, self._basis, self._by_pos)
        return self._vec(cols)

    def contains(self, vec) -> bool:
        return all(p.is_zero() for p in self.normal_form(vec))

    def lead_terms(self):
        """(position, monomial) of every basis element, in basis order."""
        return tuple((el.lead_pos, el.lead_mono) for el in self._basis)


class GraphBasis:
    """Tagged basis for a list of columns in P^r.

    Computes the Groebner basis of {(col_j, e_j)} in P^r + P^s with the
    value block dominating.  Elements whose value part vanishes carry
    syzygies of the columns in their tags; the value parts of the rest form
    a Groebner basis of the column span.  Reducing (v, 0) lifts v to
    explicit coefficients on the columns.
    """

    def __init__(self, ring: PolyRing, columns, rank=None, pair_limit=DEFAULT_PAIR_LIMIT):
        columns = [tuple(col) for col in columns]
        if rank is None:
            if not columns:
                raise StructuralError("cannot infer rank of empty column set")
            rank = len(columns[0])
        self.ring = ring
        self.rank = rank
        self.count = len(columns)
        zero = ring.zero()
        graph = []
        for j, col in enumerate(columns):
            if len(col) != rank:
                raise StructuralError("column rank mismatch")
            tags = tuple(ring.one() if t == j else zero for t in range(self.count))
            graph.append(col + tags)
        self._gb = ModuleBasis(ring, graph, rank=rank + self.count, pair_limit=pair_limit)
        self._span = []
        self._syz = []
        for el in self._gb.elements:
            value, tags = el[:rank], el[rank:]
            if any(not p.is_zero() for p in value):
                self._span.append(value)
            else:
                self._syz.append(tags)

    @property
    def span_basis(self):
        """Groebner basis of the column span in P^r."""
        return tuple(self._span)

    @property
    def syzygies(self):
        """Generators of the syzygy module of the columns, in P^count."""
        return tuple(self._syz)

    def lift(self, vec):
        """Coefficients c with vec = sum c_j * col_j, or None if not in span."""
        zero = self.ring.zero()
        padded = tuple(vec) + (zero,) * self.count
        nf = self._gb.normal_form(padded)
        if any(not p.is_zero() for p in nf[: self.rank]):
            return None
        return tuple(-p for p in nf[self.rank :])

    def contains(self, vec) -> bool:
        return self.lift(vec) is not None
