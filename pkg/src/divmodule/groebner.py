"""Buchberger engine for ideals and submodules of free modules.

Internally every element is a dict ``{(position, exponents): coefficient}``;
ideals live in position 0.  Submodules use a position-over-term order in
which lower positions dominate, so the reduced module basis is unique for a
given ring order.  Pairs are pruned with the Gebauer-Moeller criteria (the
coprime-leads criterion only for ideals) and selected by lowest lcm degree.
"""

from __future__ import annotations

import os
from itertools import combinations

from .errors import (BudgetExceeded, InputError, InternalError, UnitIdealError,
                     ZeroIdealError)
from .matrix import PolyMatrix
from .ring import GREVLEX, MonomialOrder, Polynomial, Ring

DEFAULT_BUDGET = 10**6

# When true every freshly computed basis is checked for the S-pair criterion.
AUDIT = os.environ.get("DIVMOD_AUDIT", "") not in ("", "0")
audit_count = 0


def step_budget():
    raw = os.environ.get("DIVMOD_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    return not any(x and y for x, y in zip(a, b))


class _Engine:
    """One Groebner computation: field arithmetic, term order and step counter."""

    def __init__(self, field, order: MonomialOrder, budget=None):
        self.field = field
        self.p = field.characteristic
        mono_key = order.key
        self.key = lambda t: (-t[0], mono_key(t[1]))
        self.steps = 0
        self.budget = step_budget() if budget is None else budget

    def lead(self, v):
        return max(v, key=self.key)

    def monic(self, v):
        lt = self.lead(v)
        c = v[lt]
        if c == 1:
            return v
        inv = self.field.inv(c)
        p = self.p
        return {t: (a * inv) % p if p else a * inv for t, a in v.items()}

    def _sub_multiple(self, v, q, shift, g):
        """v -= q * x^shift * g  (in place)."""
        p = self.p
        for (pos, e), c in g.items():
            t = (pos, tuple(a + b for a, b in zip(e, shift)))
            val = v.get(t, 0) - q * c
            if p:
                val %= p
            if val:
                v[t] = val
            else:
                del v[t]

    def reduce(self, v, basis, leads):
        """Full normal form of ``v`` with respect to monic ``basis``."""
        v = dict(v)
        rem = {}
        key = self.key
        while v:
            t = max(v, key=key)
            pos, e = t
            for g, (gp, ge) in zip(basis, leads):
                if gp == pos and _divides(ge, e):
                    break
            else:
                rem[t] = v.pop(t)
                continue
            self.steps += 1
            if self.steps > self.budget:
                raise BudgetExceeded(f"Groebner computation exceeded {self.budget} reduction steps")
            shift = tuple(a - b for a, b in zip(e, ge))
            self._sub_multiple(v, v[t], shift, g)
        return rem

    def spoly(self, f, lf, g, lg):
        pos = lf[0]
        L = _lcm(lf[1], lg[1])
        s = {}
        sf = tuple(a - b for a, b in zip(L, lf[1]))
        for (q, e), c in f.items():
            s[(q, tuple(a + b for a, b in zip(e, sf)))] = c
        sg = tuple(a - b for a, b in zip(L, lg[1]))
        self._sub_multiple(s, 1, sg, g)
        assert (pos, L) not in s
        return s

    def buchberger(self, gens, ideal_case):
        polys, leads = [], []
        active = []
        pairs = []  # (i, j, lcm term)

        def update(h):
            nonlocal active, pairs
            th = leads[h]
            cands = [(g, (th[0], _lcm(th[1], leads[g][1]))) for g in active if leads[g][0] == th[0]]
            kept = []
            while cands:
                g1, l1 = cands.pop(0)
                if (ideal_case and _coprime(th[1], leads[g1][1])) or not any(
                        _divides(l2[1], l1[1]) for _, l2 in cands + kept):
                    kept.append((g1, l1))
            new = [(g, h, l) for g, l in kept if not (ideal_case and _coprime(th[1], leads[g][1]))]
            survivors = []
            for i, j, l in pairs:
                if (l[0] == th[0] and _divides(th[1], l[1])
                        and _lcm(leads[i][1], th[1]) != l[1] and _lcm(leads[j][1], th[1]) != l[1]):
                    continue
                survivors.append((i, j, l))
            pairs = survivors + new
            active = [g for g in active if not (leads[g][0] == th[0] and _divides(th[1], leads[g][1]))] + [h]

        def add(v):
            v = self.monic(v)
            polys.append(v)
            leads.append(self.lead(v))
            update(len(polys) - 1)

        def current():
            return [polys[g] for g in active], [leads[g] for g in active]

        for f in gens:
            if f:
                h = self.reduce(f, *current())
                if h:
                    add(h)
        while pairs:
            best = min(range(len(pairs)), key=lambda k: (sum(pairs[k][2][1]), self.key(pairs[k][2]), pairs[k][:2]))
            i, j, _ = pairs.pop(best)
            s = self.spoly(polys[i], leads[i], polys[j], leads[j])
            if s:
                h = self.reduce(s, *current())
                if h:
                    add(h)
        # interreduce the (already lead-minimal) active set
        basis = [polys[g] for g in active]
        lts = [leads[g] for g in active]
        out = []
        for k, g in enumerate(basis):
            others = basis[:k] + basis[k + 1:]
            olts = lts[:k] + lts[k + 1:]
            head = {lts[k]: g[lts[k]]}
            tail = {t: c for t, c in g.items() if t != lts[k]}
            head.update(self.reduce(tail, others, olts))
            out.append(self.monic(head))
        out.sort(key=lambda v: self.key(self.lead(v)), reverse=True)
        return out

    def audit(self, basis):
        """Every S-pair of ``basis`` must reduce to zero."""
        basis = [self.monic(g) for g in basis]
        leads = [self.lead(g) for g in basis]
        for a, b in combinations(range(len(basis)), 2):
            if leads[a][0] != leads[b][0]:
                continue
            s = self.spoly(basis[a], leads[a], basis[b], leads[b])
            if s and self.reduce(s, basis, leads):
                raise InternalError("computed basis fails the S-pair criterion")


def _run(field, order, vectors, ideal_case, budget=None):
    global audit_count
    eng = _Engine(field, order, budget)
    basis = eng.buchberger(vectors, ideal_case)
    if AUDIT:
        eng.audit(basis)
        audit_count += 1
    return basis


def audit_basis(field, order, vectors):
    """Raise ``InternalError`` unless ``vectors`` (internal dicts) form a Groebner basis."""
    _Engine(field, order).audit([v for v in vectors if v])


def _poly_to_vec(f: Polynomial, pos=0):
    return {(pos, e): c for e, c in f.terms.items()}


def _vec_to_poly(ring, v):
    return Polynomial(ring, {e: c for (_, e), c in v.items()})


# -- ideals -----------------------------------------------------------------

class Ideal:
    """Finitely generated ideal with cached reduced Groebner bases (one per order)."""

    def __init__(self, ring: Ring, gens=()):
        self.ring = ring
        self.gens = tuple(ring(g) for g in gens)
        self._gb = {}

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one])

    @classmethod
    def maximal(cls, ring):
        """The ideal generated by all the variables."""
        return cls(ring, ring.gens())

    def groebner(self, order=None):
        order = order or self.ring.order
        hit = self._gb.get(order)
        if hit is None:
            vecs = [_poly_to_vec(g) for g in self.gens if g]
            basis = _run(self.ring.field, order, vecs, ideal_case=True)
            hit = tuple(_vec_to_poly(self.ring, v) for v in basis)
            self._gb[order] = hit
        return list(hit)

    def normal_form(self, f, order=None):
        order = order or self.ring.order
        f = self.ring(f)
        gb = self.groebner(order)
        eng = _Engine(self.ring.field, order)
        vecs = [_poly_to_vec(g) for g in gb]
        return _vec_to_poly(self.ring, eng.reduce(_poly_to_vec(f), vecs, [eng.lead(v) for v in vecs]))

    def contains(self, f):
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def issubset(self, other):
        return all(other.contains(g) for g in self.gens)

    def is_zero(self):
        return all(g.is_zero() for g in self.gens)

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gens)

    def nonzero_gens(self):
        return [g for g in self.gens if g]

    def __add__(self, other):
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        return Ideal(self.ring, [a * b for a in self.nonzero_gens() for b in other.nonzero_gens()])

    def to_ring(self, ring):
        return Ideal(ring, [g.to_ring(ring) for g in self.gens])

    def __eq__(self, other):
        return isinstance(other, Ideal) and ideal_equal(self, other)

    __hash__ = None

    def __str__(self):
        return format_ideal(self)

    def __repr__(self):
        return f"Ideal({format_ideal(self)})"


def format_ideal(i: Ideal, order=GREVLEX):
    """Canonical text of the reduced basis: ``(0)``, ``(1)``, ``(x, y)``."""
    gb = i.groebner(order)
    if not gb:
        return "(0)"
    from .ring import format_poly
    return "(" + ", ".join(format_poly(g, order) for g in gb) + ")"


def groebner_basis(i: Ideal, order: MonomialOrder = None):
    return i.groebner(order)


def normal_form(f, i: Ideal):
    return i.normal_form(f)


def ideal_equal(i: Ideal, j: Ideal) -> bool:
    if i.ring.field != j.ring.field or set(i.ring.variables) != set(j.ring.variables):
        raise InputError(f"ring mismatch: {i.ring} vs {j.ring}")
    if i.ring != j.ring:
        j = j.to_ring(i.ring)
    return i.groebner(GREVLEX) == j.groebner(GREVLEX)


def _elimination_ring(ring, drop):
    drop = [v for v in ring.variables if v in set(drop)]
    keep = [v for v in ring.variables if v not in set(drop)]
    return Ring(ring.field, tuple(drop + keep), MonomialOrder("block", len(drop))), len(drop)


def eliminate(i: Ideal, keep) -> Ideal:
    """``i`` intersected with the subring generated by the ``keep`` variables."""
    keep = set(keep)
    unknown = keep - set(i.ring.variables)
    if unknown:
        raise InputError(f"unknown variables {sorted(unknown)}")
    drop = [v for v in i.ring.variables if v not in keep]
    if not drop:
        return Ideal(i.ring, i.gens)
    er, k = _elimination_ring(i.ring, drop)
    gb = Ideal(er, [g.to_ring(er) for g in i.gens]).groebner()
    kept = [g for g in gb if all(not any(e[:k]) for e in g.terms)]
    return Ideal(i.ring, [g.to_ring(i.ring) for g in kept])


def intersect(i: Ideal, j: Ideal) -> Ideal:
    ring = i.ring
    (t,) = ring.fresh_names("T", 1)
    big = ring.extend([t])
    T = big.var(t)
    gens = [T * g.to_ring(big) for g in i.gens] + [(1 - T) * g.to_ring(big) for g in j.gens]
    out = eliminate(Ideal(big, gens), ring.variables)
    return Ideal(ring, [g.to_ring(ring) for g in out.gens])


def quotient(i: Ideal, j: Ideal) -> Ideal:
    """``(i : j) = {f : f*j in i}``."""
    ring = i.ring
    result = Ideal.unit(ring)
    for g in j.nonzero_gens():
        part = intersect(i, Ideal(ring, [g]))
        colon = Ideal(ring, [h.divide_exact(g) for h in part.groebner()])
        result = colon if result.is_unit() else intersect(result, colon)
    return result


def saturate(i: Ideal, f) -> Ideal:
    """``(i : f^infinity)`` via an auxiliary variable ``1 - T*f``."""
    ring = i.ring
    f = ring(f)
    if f.is_zero():
        raise ZeroIdealError("cannot saturate with respect to 0")
    (t,) = ring.fresh_names("T", 1)
    big = ring.extend([t])
    gens = [g.to_ring(big) for g in i.gens] + [1 - big.var(t) * f.to_ring(big)]
    out = eliminate(Ideal(big, gens), ring.variables)
    return Ideal(ring, [g.to_ring(ring) for g in out.groebner()])


def independent_set_size(leads, nvars):
    """Largest variable set containing no lead-monomial support (depth-first, pruned)."""
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in leads]
    best = 0

    def search(i, chosen):
        nonlocal best
        if len(chosen) + (nvars - i) <= best:
            return
        if i == nvars:
            best = len(chosen)
            return
        with_i = chosen | {i}
        if not any(s <= with_i for s in supports if i in s):
            search(i + 1, with_i)
        search(i + 1, chosen)

    search(0, frozenset())
    return best


def dimension(i: Ideal) -> int:
    """Krull dimension of ``S/i`` from the lead-term ideal of the reduced basis."""
    gb = i.groebner()
    if any(g.is_constant() for g in gb):
        raise UnitIdealError("the unit ideal defines the empty scheme")
    return independent_set_size([g.lead_monomial() for g in gb], i.ring.ngens)


def height_and_grade(i: Ideal):
    """(height, grade); equal because polynomial rings are Cohen-Macaulay."""
    if i.is_zero():
        raise ZeroIdealError("height/grade of the zero ideal")
    h = i.ring.ngens - dimension(i)
    return h, h


def height(i: Ideal) -> int:
    return height_and_grade(i)[0]


# -- submodules -------------------------------------------------------------

def _column_to_vec(col, offset=0):
    v = {}
    for pos, f in enumerate(col):
        for e, c in f.terms.items():
            v[(pos + offset, e)] = c
    return v


def _vec_to_column(ring, v, rank, offset=0):
    parts = [dict() for _ in range(rank)]
    for (pos, e), c in v.items():
        parts[pos - offset][e] = c
    return [Polynomial(ring, p) for p in parts]


class Submodule:
    """Submodule of ``ring^rank`` spanned by column vectors."""

    def __init__(self, ring: Ring, rank: int, generators):
        self.ring = ring
        self.rank = rank
        self.generators = [tuple(ring(a) for a in g) for g in generators]
        if any(len(g) != rank for g in self.generators):
            raise InputError(f"generators must have {rank} components")
        self._gb = None

    @classmethod
    def from_matrix(cls, m: PolyMatrix):
        return cls(m.ring, m.nrows, m.columns())

    def _basis_vecs(self):
        if self._gb is None:
            vecs = [_column_to_vec(g) for g in self.generators]
            self._gb = _run(self.ring.field, self.ring.order, [v for v in vecs if v], ideal_case=False)
        return self._gb

    def groebner(self):
        return [tuple(_vec_to_column(self.ring, v, self.rank)) for v in self._basis_vecs()]

    def reduce(self, vector):
        if len(vector) != self.rank:
            raise InputError(f"vector has {len(vector)} components, ambient rank is {self.rank}")
        eng = _Engine(self.ring.field, self.ring.order)
        basis = self._basis_vecs()
        rem = eng.reduce(_column_to_vec([self.ring(a) for a in vector]), basis, [eng.lead(v) for v in basis])
        return _vec_to_column(self.ring, rem, self.rank)

    def contains(self, vector):
        return all(f.is_zero() for f in self.reduce(vector))

    def issubset(self, other):
        return all(other.contains(g) for g in self.generators)

    def equals(self, other):
        return self.issubset(other) and other.issubset(self)


def submodule_membership(v, m: Submodule) -> bool:
    return m.contains(v)


def _monic_column(ring, col):
    v = _column_to_vec(col)
    eng = _Engine(ring.field, ring.order)
    return tuple(_vec_to_column(ring, eng.monic(v), len(col))), eng.key(eng.lead(v))


def prune_columns(ring, rank, columns):
    """Drop columns lying in the span of the remaining ones (last to first)."""
    cols = [tuple(c) for c in columns if any(not f.is_zero() for f in c)]
    k = len(cols) - 1
    while k >= 0:
        others = cols[:k] + cols[k + 1:]
        if others and Submodule(ring, rank, others).contains(cols[k]):
            cols = others
        k -= 1
    return cols


def syzygies(ring: Ring, rank: int, gens, minimize=True) -> PolyMatrix:
    """Matrix whose columns generate the syzygies of the column vectors ``gens``.

    Each generator g_i is lifted to (g_i, e_i) in ring^(rank+n); under the
    position-over-term order the basis elements vanishing in the first
    ``rank`` positions span the syzygy module.
    """
    gens = [[ring(a) for a in g] for g in gens]
    n = len(gens)
    if n == 0:
        raise InputError("syzygies of an empty generator list")
    if any(len(g) != rank for g in gens):
        raise InputError("generators must share the ambient rank")
    lifted = []
    for i, g in enumerate(gens):
        v = _column_to_vec(g)
        v[(rank + i, (0,) * ring.ngens)] = ring.field.coerce(1)
        lifted.append(v)
    basis = _run(ring.field, ring.order, lifted, ideal_case=False)
    cols = [_vec_to_column(ring, v, n, offset=rank) for v in basis if all(t[0] >= rank for t in v)]
    if minimize:
        cols = prune_columns(ring, n, cols)
    normed = sorted((_monic_column(ring, c) for c in cols), key=lambda t: t[1], reverse=True)
    return PolyMatrix.from_columns(ring, [c for c, _ in normed], n)


def in_radical(f, i: Ideal) -> bool:
    """``f`` lies in the radical of ``i`` iff ``(i : f^infinity)`` is the unit ideal."""
    f = i.ring(f)
    return f.is_zero() or saturate(i, f).is_unit()


def same_zero_set(i: Ideal, j: Ideal) -> bool:
    """``V(i) == V(j)``, decided by mutual radical containment of generators."""
    return all(in_radical(g, j) for g in i.nonzero_gens()) and all(in_radical(g, i) for g in j.nonzero_gens())
