"""Divisor ideals of a module: order determinant, norm representative, inverse, non-free locus."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import CertificationError, InternalError, PreconditionError, ZeroIdealError
from .groebner import Ideal, height, ideal_equal, quotient, same_zero_set
from .matrix import PolyMatrix, determinant, generic_rank, minors
from .presmod import (EmbeddedModule, PresentedModule, _empty, fitting_ideal, is_pd_at_most_one,
                      presentation_of_embedded, theta_values)
from .ring import Polynomial


@dataclass(frozen=True)
class FractionalIdeal:
    """``(1/denominator) * numerator``."""

    numerator: Ideal
    denominator: Polynomial

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroIdealError("fractional ideal with zero denominator")

    def __str__(self):
        return f"(1/{self.denominator})*{self.numerator}"


@dataclass(frozen=True)
class NormCertificate:
    rho: PolyMatrix
    E1: PresentedModule
    ideal: Ideal
    columns: tuple


def det0(E: EmbeddedModule) -> Ideal:
    """Ideal of the ``e x e`` minors of the generator matrix."""
    E.require_full_rank()
    return Ideal(E.ring, minors(E.A, E.ambient_rank))


def cokernel_presentation(E: EmbeddedModule) -> PresentedModule:
    """``G/E`` presented by the reduced module basis of ``E``, not by ``A`` itself.

    Using a different generating system makes ``F_0(G/E) == det0(E)`` a real check.
    """
    gb = E.submodule().groebner()
    phi = PolyMatrix.from_columns(E.ring, gb, E.ambient_rank) if gb else _empty(E.ring, E.ambient_rank)
    return PresentedModule(E.ambient_rank, phi, label=E.label and f"G/{E.label}")


def norm_representative(M: PresentedModule, seed: int = 0) -> NormCertificate:
    """First column subset ``rho`` of ``phi`` with generic rank ``n - e``; ideal ``I_{n-e}(rho)``."""
    e, n = M.rank, M.n
    if e < 1:
        raise PreconditionError("the norm needs a module of positive rank")
    if n == e:
        return NormCertificate(_empty(M.ring, n), M, Ideal.unit(M.ring), ())
    for cols in combinations(range(M.phi.ncols), n - e):
        rho = M.phi.submatrix(None, cols)
        if generic_rank(rho, seed=seed) == n - e:
            E1 = PresentedModule(n, rho, witness=M.witness, label=M.label and f"{M.label}/E1")
            return NormCertificate(rho, E1, Ideal(M.ring, minors(rho, n - e)), cols)
    raise InternalError(f"no {n - e} columns of phi have full rank although rank(M) = {e}")


def find_psi(M: PresentedModule, first_rows_excluded: int) -> PolyMatrix:
    """Lexicographically first ``(n-e+1) x (n-e)`` block of ``phi`` below the excluded rows
    whose maximal minors do not all vanish."""
    k = first_rows_excluded
    m = M.n - k - 1
    if m < 0:
        raise PreconditionError(f"cannot exclude {k} rows from {M.n} generators")
    rows = list(range(k, M.n))
    if m == 0:
        return _empty(M.ring, len(rows))
    for cols in combinations(range(M.phi.ncols), m):
        psi = M.phi.submatrix(rows, cols)
        if generic_rank(psi) == m:
            return psi
    raise PreconditionError("no column block of the presentation has a nonzero maximal minor")


def fractional_inverse(i: Ideal) -> FractionalIdeal:
    """``i^{-1} = (1/a)(aS : i)`` with ``a`` the first reduced basis element."""
    gb = i.groebner()
    if not gb:
        raise ZeroIdealError("the zero ideal has no inverse")
    a = gb[0]
    return FractionalIdeal(quotient(Ideal(i.ring, [a]), i), a)


def nonfree_locus_ideal(E: EmbeddedModule) -> Ideal:
    """``det0(E) * det0(E)^{-1}``, as an honest ideal."""
    d = det0(E)
    inv = fractional_inverse(d)
    a = inv.denominator
    gens = []
    for g in d.groebner():
        for h in inv.numerator.groebner():
            try:
                gens.append((g * h).divide_exact(a))
            except ValueError as exc:
                raise InternalError(f"{g}*{h} is not divisible by {a}") from exc
    return Ideal(E.ring, gens)


def is_free_local(E: EmbeddedModule) -> bool:
    """Free at the origin iff the non-free locus ideal has a unit there."""
    return any(not g.constant_term() == 0 for g in nonfree_locus_ideal(E).groebner())


def is_ideal_module(E: EmbeddedModule) -> bool:
    """``grade F_0(G/E) >= 2``; the full module ``E = G`` is excluded by convention."""
    d = det0(E)
    if d.is_zero():
        raise ZeroIdealError("det0 vanishes: module is not of full rank")
    if d.is_unit():
        return False
    return height(d) >= 2


def nonfree_locus_matches(E: EmbeddedModule, M: PresentedModule = None) -> bool:
    """``V(det0 * det0^{-1}) == V(F_e(E))``: both cut out the non-free locus."""
    M = M or presentation_of_embedded(E)
    return same_zero_set(nonfree_locus_ideal(E), fitting_ideal(M, E.ambient_rank))


def proportional_minors(A: PolyMatrix, rho: PolyMatrix):
    """Certify ``I_e(A) ~= I_{n-e}(rho)`` when ``A rho = 0``.

    Returns ``(p, q)`` with ``q * Delta_rho(H^c) = +-p * Delta_A(H)`` for every
    e-subset H of the n columns of A, so ``q I_{n-e}(rho) = p I_e(A)``; or None.
    """
    e, n = A.shape
    if rho.shape != (n, n - e):
        raise PreconditionError("rho must be n x (n-e)")
    pairs = []
    for H in combinations(range(n), e):
        Hc = tuple(i for i in range(n) if i not in H)
        dA = determinant(A.submatrix(None, H))
        drho = determinant(rho.submatrix(Hc, None)) if n > e else A.ring.one
        pairs.append((dA, drho))
    base = next(((a, r) for a, r in pairs if a and r), None)
    if base is None:
        return None
    q, p = base[0], base[1]
    for dA, drho in pairs:
        lhs, rhs = q * drho, p * dA
        if lhs != rhs and lhs != -rhs:
            return None
    return p, q


def det0_via_wedge(E: EmbeddedModule) -> Ideal:
    """det0 through the exterior-algebra product of the rows of ``A``."""
    E.require_full_rank()
    wedge, _ = theta_values(E.A.transpose())
    return Ideal(E.ring, wedge)


def zak_report(E: EmbeddedModule, seed: int = 0) -> dict:
    """Spread of the top exterior power against heights of the divisor ideals."""
    from .rees import analytic_spread
    if is_free_local(E):
        raise PreconditionError("Zak bounds are stated for non-free modules")
    e = E.ambient_rank
    d = det0(E)
    M = presentation_of_embedded(E)
    cert = norm_representative(M, seed)
    spread = analytic_spread(EmbeddedModule.from_ideal(d))
    ht_f0 = height(d)
    ht_e1 = height(cert.ideal)
    ht_fe = height(fitting_ideal(M, e))
    pd1 = is_pd_at_most_one(M)
    return {
        "spread_det0": spread,
        "ht_F0": ht_f0,
        "ht_Fe_E1": ht_e1,
        "ht_Fe": ht_fe,
        "pd_one": pd1,
        "zak": spread >= ht_f0,
        "zak2": spread >= ht_e1,
        "zak3": (spread >= ht_fe) if pd1 else None,
    }


def check_norm_isomorphic(E: EmbeddedModule, seed: int = 0) -> bool:
    """``det0(E)`` and the norm representative agree as ideals or up to a proportionality certificate."""
    M = presentation_of_embedded(E)
    cert = norm_representative(M, seed)
    d = det0(E)
    if ideal_equal(d, cert.ideal):
        return True
    if cert.rho.ncols == 0:
        # n = e: E is free and the norm is (1), isomorphic to det0 iff det0 is principal
        return len(d.groebner()) == 1
    found = proportional_minors(E.A, cert.rho)
    if found is None:
        raise CertificationError("no proportionality between complementary minors")
    p, q = found
    return ideal_equal(Ideal(E.ring, [q * g for g in cert.ideal.gens]), Ideal(E.ring, [p * g for g in d.gens]))
