"""Embedded and finitely presented modules.

An ``EmbeddedModule`` is a submodule of ``S^e`` given by generator columns.
A ``PresentedModule`` is ``coker(phi)`` for an ``n x m`` matrix ``phi``, with
an optional witness: an ``e x n`` matrix ``W`` with ``W @ phi == 0`` that maps
generator ``i`` to column ``i`` of ``W``.  Torsion is only ever handled
through such a witness (the image of M in a free module is M mod torsion).
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations

from .errors import InputError, InternalError, PreconditionError
from .groebner import Ideal, Submodule, syzygies
from .matrix import (PolyMatrix, determinant, evaluate_at_origin, generic_rank, minors,
                     scalar_rank)


def _empty(ring, nrows):
    return PolyMatrix(ring, [[] for _ in range(nrows)], 0)


class EmbeddedModule:
    """Submodule of ``S^e`` spanned by the columns of ``A``."""

    def __init__(self, A: PolyMatrix, label=None):
        if A.nrows < 1:
            raise InputError("an embedded module needs ambient rank at least 1")
        if A.ncols < 1:
            raise InputError("an embedded module needs at least one generator")
        self.A = A
        self.label = label

    @classmethod
    def from_columns(cls, ring, columns, ambient_rank=None, label=None):
        columns = [list(c) for c in columns]
        if ambient_rank is None:
            ambient_rank = len(columns[0]) if columns else 0
        return cls(PolyMatrix.from_columns(ring, columns, ambient_rank), label)

    @classmethod
    def from_ideal(cls, ideal: Ideal, label=None):
        gens = ideal.nonzero_gens() or [ideal.ring.zero]
        return cls(PolyMatrix(ideal.ring, [gens]), label)

    @property
    def ring(self):
        return self.A.ring

    @property
    def ambient_rank(self):
        return self.A.nrows

    @property
    def ngens(self):
        return self.A.ncols

    @cached_property
    def rank(self):
        return generic_rank(self.A)

    def require_full_rank(self):
        if self.rank != self.ambient_rank:
            raise PreconditionError(
                f"module has rank {self.rank} but ambient rank {self.ambient_rank}; full rank is required")

    def columns(self):
        return self.A.columns()

    def select(self, cols, label=None):
        cols = list(cols)
        if not cols or any(not 0 <= c < self.ngens for c in cols):
            raise InputError(f"bad column selection {cols} for a module with {self.ngens} generators")
        return EmbeddedModule(self.A.submatrix(None, cols), label)

    def submodule(self):
        return Submodule.from_matrix(self.A)

    def to_ring(self, ring):
        return EmbeddedModule(self.A.to_ring(ring), self.label)

    def is_homogeneous(self):
        return self.A.is_homogeneous()

    def __repr__(self):
        return f"EmbeddedModule({self.label or ''} {self.ambient_rank}x{self.ngens})"


class PresentedModule:
    """``coker(phi)`` with ``n`` generators and an optional embedding witness."""

    def __init__(self, n, phi: PolyMatrix, witness: PolyMatrix = None, label=None):
        if phi.nrows != n:
            raise InputError(f"presentation matrix has {phi.nrows} rows, expected {n}")
        self.n = n
        self.phi = phi
        self.witness = witness
        self.label = label
        if witness is not None:
            if witness.ncols != n:
                raise InputError("witness must have one column per generator")
            if phi.ncols and not (witness @ phi).is_zero():
                raise InputError("witness columns do not satisfy the relations")

    @property
    def ring(self):
        return self.phi.ring

    @cached_property
    def rank(self):
        return self.n - generic_rank(self.phi)

    def is_free(self):
        return self.phi.is_zero()

    def __repr__(self):
        return f"PresentedModule({self.label or ''} n={self.n}, m={self.phi.ncols})"


def presentation_of_embedded(E: EmbeddedModule) -> PresentedModule:
    phi = syzygies(E.ring, E.ambient_rank, E.columns())
    if phi.ncols == 0:
        phi = _empty(E.ring, E.ngens)
    return PresentedModule(E.ngens, phi, witness=E.A, label=E.label)


def fitting_ideal(M: PresentedModule, i: int) -> Ideal:
    """``F_i(M)``: ideal of the ``(n-i)``-minors of the presentation."""
    if i < 0:
        raise InputError("Fitting index must be non-negative")
    k = M.n - i
    if k <= 0:
        return Ideal.unit(M.ring)
    if k > min(M.n, M.phi.ncols):
        return Ideal(M.ring, [])
    return Ideal(M.ring, minors(M.phi, k))


def mu_local(M: PresentedModule) -> int:
    """Minimal number of generators after localizing at the origin (Nakayama)."""
    if M.phi.ncols == 0 or M.n == 0:
        return M.n
    return M.n - scalar_rank(evaluate_at_origin(M.phi), M.ring.field)


def is_pd_at_most_one(M: PresentedModule) -> bool:
    """True when the relation module is free, i.e. a 1-step resolution exists.

    Valid for a presentation whose relation columns are a minimal system,
    which is what ``presentation_of_embedded`` produces on graded input.
    """
    return M.phi.ncols == M.n - M.rank


def quotient_by_generators(M: PresentedModule, kill) -> PresentedModule:
    """Present ``M / <x_j : j in kill>``.

    Adding the unit relation ``e_j`` and eliminating it against row ``j``
    amounts to deleting row ``j``; rows are removed from the highest index down.
    """
    kill = sorted(set(kill), reverse=True)
    if any(not 0 <= j < M.n for j in kill):
        raise InputError(f"generator indices {kill} out of range for n = {M.n}")
    rows = M.phi.rows()
    for j in kill:
        del rows[j]
    n = M.n - len(kill)
    cols = [c for c in PolyMatrix(M.ring, rows, M.phi.ncols).columns() if any(not a.is_zero() for a in c)]
    phi = PolyMatrix.from_columns(M.ring, cols, n) if cols else _empty(M.ring, n)
    return PresentedModule(n, phi, label=M.label)


def wedge_sign(V, i):
    """Sign of ``x_V ^ x_i`` relative to ``x_{V+i}`` (V sorted, i not in V)."""
    return -1 if sum(1 for j in V if j > i) % 2 else 1


def pair_sign(H, K):
    """``epsilon_{H,K}``: parity of pairs (i, j) in H x K with i > j."""
    return -1 if sum(1 for i in H for j in K if i > j) % 2 else 1


def exterior_power(M: PresentedModule, k: int) -> PresentedModule:
    """Presentation of the k-th exterior power on the basis ``x_H`` (H lexicographic)."""
    if not 1 <= k <= M.n:
        raise InputError(f"exterior power {k} out of range 1..{M.n}")
    ring = M.ring
    subsets = list(combinations(range(M.n), k))
    index = {H: r for r, H in enumerate(subsets)}
    rels = []
    for V in combinations(range(M.n), k - 1):
        for u in M.phi.columns():
            col = [ring.zero] * len(subsets)
            for i, a in enumerate(u):
                if a.is_zero() or i in V:
                    continue
                H = tuple(sorted(V + (i,)))
                col[index[H]] = col[index[H]] + (a if wedge_sign(V, i) > 0 else -a)
            if any(not a.is_zero() for a in col):
                rels.append(col)
    phi = PolyMatrix.from_columns(ring, rels, len(subsets)) if rels else _empty(ring, len(subsets))
    witness = None
    if M.witness is not None:
        W = M.witness
        if k <= W.nrows:
            targets = list(combinations(range(W.nrows), k))
            witness = PolyMatrix(ring, [[determinant(W.submatrix(K, H)) for H in subsets] for K in targets],
                                 len(subsets))
    return PresentedModule(len(subsets), phi, witness=witness, label=M.label)


class ExteriorElement:
    """Element of the exterior algebra on ``x_0..x_{n-1}``: ``{sorted tuple: coeff}``."""

    def __init__(self, ring, n, terms=None):
        self.ring = ring
        self.n = n
        self.terms = dict(terms or {(): ring.one})

    @classmethod
    def one(cls, ring, n):
        return cls(ring, n)

    def wedge_vector(self, v):
        """Right multiplication by ``sum v_i x_i``."""
        out = {}
        for K, c in self.terms.items():
            for i, a in enumerate(v):
                if a.is_zero() or i in K:
                    continue
                H = tuple(sorted(K + (i,)))
                term = c * a
                term = term if wedge_sign(K, i) > 0 else -term
                acc = out.get(H)
                out[H] = term if acc is None else acc + term
        return ExteriorElement(self.ring, self.n, {H: c for H, c in out.items() if not c.is_zero()})

    def coefficient(self, K):
        return self.terms.get(tuple(K), self.ring.zero)


def theta_values(psi: PolyMatrix):
    """Return ``[(H, theta(x_H))]`` for H the (n-m)-subsets, plus the minor-path values.

    The wedge path multiplies the columns of ``psi`` in the exterior algebra;
    the minor path takes Laplace determinants of complementary row blocks.
    """
    n, m = psi.shape
    if n < m:
        raise InputError(f"theta needs rows >= cols, got {psi.shape}")
    omega = ExteriorElement.one(psi.ring, n)
    for u in psi.columns():
        omega = omega.wedge_vector(u)
    wedge, direct = [], []
    for H in combinations(range(n), n - m):
        K = tuple(i for i in range(n) if i not in H)
        eps = pair_sign(H, K)
        w = omega.coefficient(K)
        d = determinant(psi.submatrix(K, None)) if m else psi.ring.one
        wedge.append(w if eps > 0 else -w)
        direct.append(d if eps > 0 else -d)
    return wedge, direct


def _up_to_sign(values):
    return sorted(min(str(f), str(-f)) for f in values)


def theta_image(psi: PolyMatrix) -> Ideal:
    """``im theta = I_m(psi)`` computed on two independent paths that must agree."""
    wedge, direct = theta_values(psi)
    if wedge != direct:
        raise InternalError("exterior-algebra and determinant paths disagree on theta")
    if psi.ncols and _up_to_sign(wedge) != _up_to_sign(minors(psi, psi.ncols)):
        raise InternalError("theta values do not match the maximal minors")
    return Ideal(psi.ring, wedge)


def image_in_free(M: PresentedModule) -> EmbeddedModule:
    """``M`` modulo torsion, realized by its embedding witness."""
    if M.witness is None:
        raise PreconditionError("module carries no embedding witness; torsion cannot be removed")
    return EmbeddedModule(M.witness, M.label)
