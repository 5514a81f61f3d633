"""Rees algebra, fiber cone, analytic spread, reduction numbers and the deviation classifiers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

from .errors import BudgetExceeded, InternalError, PreconditionError
from .groebner import Ideal, Submodule, dimension, eliminate, height_and_grade
from .presmod import EmbeddedModule, fitting_ideal, mu_local, presentation_of_embedded
from .ring import MonomialOrder, Ring

DEFAULT_RMAX = 5
# at most this many degree-(r+1) products are tested per degree
PRODUCT_CAP = 4000


@dataclass(frozen=True)
class ReesPresentation:
    """``R(E) = S[y]/K`` with ``y_i -> l_i = sum_j A_ji t_j``."""

    module: EmbeddedModule
    ring: Ring          # S[y]
    t_names: tuple
    y_names: tuple
    K: Ideal

    def forms(self):
        """The linear forms ``l_i`` in ``S[t]``."""
        E = self.module
        big = E.ring.extend(self.t_names)
        ts = [big.var(t) for t in self.t_names]
        return [sum((a.to_ring(big) * t for a, t in zip(col, ts)), big.zero) for col in E.columns()]


@dataclass(frozen=True)
class FiberCone:
    ideal: Ideal        # in k[y]
    dimension: int


def _names(E: EmbeddedModule):
    ring = E.ring
    t = tuple(ring.fresh_names("t", E.ambient_rank))
    y = tuple(ring.extend(t).fresh_names("y", E.ngens))
    return t, y


def rees_presentation(E: EmbeddedModule) -> ReesPresentation:
    E.require_full_rank()
    t, y = _names(E)
    S = E.ring
    work = Ring(S.field, t + S.variables + y, MonomialOrder("block", len(t)))
    ts = [work.var(v) for v in t]
    gens = []
    for yi, col in zip(y, E.columns()):
        form = sum((a.to_ring(work) * tj for a, tj in zip(col, ts)), work.zero)
        gens.append(work.var(yi) - form)
    K = eliminate(Ideal(work, gens), S.variables + y)
    target = Ring(S.field, S.variables + y, S.order)
    return ReesPresentation(E, target, t, y, Ideal(target, [g.to_ring(target) for g in K.groebner()]))


def fiber_cone(E: EmbeddedModule, rees: ReesPresentation = None) -> FiberCone:
    """``(K + (x)) cap k[y]`` and its Krull dimension."""
    rees = rees or rees_presentation(E)
    R = rees.ring
    xs = [R.var(v) for v in E.ring.variables]
    F = eliminate(Ideal(R, list(rees.K.gens) + xs), rees.y_names)
    kring = Ring(R.field, rees.y_names, E.ring.order)
    F = Ideal(kring, [g.to_ring(kring) for g in F.groebner()])
    return FiberCone(F, dimension(F))


def analytic_spread(E: EmbeddedModule) -> int:
    return fiber_cone(E).dimension


@dataclass(frozen=True)
class ReductionOutcome:
    r: int | None
    rmax: int

    @property
    def known(self):
        return self.r is not None

    def __str__(self):
        return str(self.r) if self.known else "unknown-beyond-rmax"


def _t_monomials(e, d):
    out = []
    for combo in combinations_with_replacement(range(e), d):
        m = [0] * e
        for j in combo:
            m[j] += 1
        out.append(tuple(m))
    return out


def _multiply(u, w):
    """Product of two t-graded elements ``{t-monomial: coefficient}``."""
    out = {}
    for a, f in u.items():
        for b, g in w.items():
            k = tuple(i + j for i, j in zip(a, b))
            acc = out.get(k)
            out[k] = f * g if acc is None else acc + f * g
    return {k: v for k, v in out.items() if not v.is_zero()}


def _as_forms(M: EmbeddedModule):
    e = M.ambient_rank
    forms = []
    for col in M.columns():
        forms.append({tuple(int(i == j) for i in range(e)): a for j, a in enumerate(col) if not a.is_zero()})
    return forms


def _products(forms, d, e, one):
    """Distinct degree-d products of the forms (duplicates dropped)."""
    if comb(len(forms) + d - 1, d) > PRODUCT_CAP:
        raise BudgetExceeded(f"more than {PRODUCT_CAP} degree-{d} products in the reduction test")
    seen, out = set(), []
    e0 = {(0,) * e: one}
    for combo in combinations_with_replacement(range(len(forms)), d):
        p = e0
        for i in combo:
            p = _multiply(p, forms[i])
        key = tuple(sorted((k, str(v)) for k, v in p.items()))
        if p and key not in seen:
            seen.add(key)
            out.append(p)
    return out


def _to_vector(p, index, ring):
    v = [ring.zero] * len(index)
    for k, f in p.items():
        v[index[k]] = f
    return v


def reduction_number(U, E: EmbeddedModule, rmax: int = DEFAULT_RMAX) -> ReductionOutcome:
    """Least ``r <= rmax`` with ``R(E)_{r+1} = U R(E)_r``.

    ``U`` is a list of column indices of ``E`` or an embedded module in the
    same ambient free module.
    """
    if not isinstance(U, EmbeddedModule):
        U = E.select(U)
    if U.ambient_rank != E.ambient_rank:
        raise PreconditionError("U and E must live in the same free module")
    if U.rank != E.rank:
        raise PreconditionError(f"U has rank {U.rank} < rank E = {E.rank}; it cannot be a reduction")
    whole = E.submodule()
    if not all(whole.contains(c) for c in U.columns()):
        raise PreconditionError("U is not contained in E")
    ring, e = E.ring, E.ambient_rank
    fE, fU = _as_forms(E), _as_forms(U)
    one = ring.one
    for r in range(rmax + 1):
        index = {m: i for i, m in enumerate(_t_monomials(e, r + 1))}
        lower = _products(fE, r, e, one)
        span = [_to_vector(_multiply(u, w), index, ring) for u in fU for w in lower]
        span = [v for v in span if any(not f.is_zero() for f in v)]
        target = Submodule(ring, len(index), span)
        if all(target.contains(_to_vector(p, index, ring)) for p in _products(fE, r + 1, e, one)):
            return ReductionOutcome(r, rmax)
    return ReductionOutcome(None, rmax)


@dataclass(frozen=True)
class Classification:
    mu: int
    spread: int
    ht: int
    grade: int
    ad: int
    equimultiple: bool
    principal_class: bool
    complete_intersection: bool

    def to_dict(self):
        return {"mu": self.mu, "spread": self.spread, "ht_Fe": self.ht, "grade_Fe": self.grade, "ad": self.ad,
                "equimultiple": self.equimultiple, "principal_class": self.principal_class,
                "complete_intersection": self.complete_intersection}


def classify_module(E: EmbeddedModule) -> Classification:
    from .divisors import is_free_local, is_ideal_module
    if not is_ideal_module(E) or is_free_local(E):
        raise PreconditionError("classification needs a non-free ideal module")
    e = E.ambient_rank
    M = presentation_of_embedded(E)
    mu = mu_local(M)
    spread = analytic_spread(E)
    ht, grade = height_and_grade(fitting_ideal(M, e))
    if not mu >= spread >= ht + e - 1:
        raise InternalError(f"chain mu >= l >= ht + e - 1 violated: {mu}, {spread}, {ht + e - 1}")
    ad = spread - e + 1 - ht
    return Classification(mu, spread, ht, grade, ad, ad == 0, mu == ht + e - 1, mu == grade + e - 1)
