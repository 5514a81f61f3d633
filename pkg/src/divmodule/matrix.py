"""Dense matrices over a polynomial ring, minors and generic rank."""

from __future__ import annotations

import random
from itertools import combinations

from .errors import CertificationError, InputError, PreconditionError
from .ring import Polynomial, Ring

# GF(p) evaluation is only trusted for generic rank above this size
MIN_GENERIC_CHARACTERISTIC = 1000


class PolyMatrix:
    """Immutable ``rows x cols`` matrix with entries in ``ring``."""

    __slots__ = ("ring", "nrows", "ncols", "_rows")

    def __init__(self, ring: Ring, rows, ncols=None):
        rows = tuple(tuple(ring(v) for v in row) for row in rows)
        if ncols is None:
            if not rows:
                raise InputError("an empty matrix needs an explicit column count")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise InputError("ragged matrix rows")
        self.ring = ring
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = rows

    @classmethod
    def from_columns(cls, ring, columns, nrows):
        columns = [list(c) for c in columns]
        if any(len(c) != nrows for c in columns):
            raise InputError("all columns must have the same length")
        return cls(ring, [[c[i] for c in columns] for i in range(nrows)], len(columns))

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        return cls(ring, [[0] * ncols for _ in range(nrows)], ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def rows(self):
        return [list(r) for r in self._rows]

    def row(self, i):
        return list(self._rows[i])

    def column(self, j):
        return [r[j] for r in self._rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def submatrix(self, rows=None, cols=None):
        rows = range(self.nrows) if rows is None else list(rows)
        cols = range(self.ncols) if cols is None else list(cols)
        return PolyMatrix(self.ring, [[self._rows[i][j] for j in cols] for i in rows], len(cols))

    def transpose(self):
        return PolyMatrix.from_columns(self.ring, self._rows, self.ncols)

    def hstack(self, other):
        if other.nrows != self.nrows:
            raise InputError("hstack needs equal row counts")
        return PolyMatrix(self.ring, [a + b for a, b in zip(self._rows, other._rows)], self.ncols + other.ncols)

    def vstack(self, other):
        if other.ncols != self.ncols:
            raise InputError("vstack needs equal column counts")
        return PolyMatrix(self.ring, self._rows + other._rows, self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.ring.zero
        out = []
        for row in self._rows:
            new = []
            for j in range(other.ncols):
                acc = zero
                for a, r in zip(row, other._rows):
                    if a and r[j]:
                        acc = acc + a * r[j]
                new.append(acc)
            out.append(new)
        return PolyMatrix(self.ring, out, other.ncols)

    def map(self, fn):
        return PolyMatrix(self.ring, [[fn(a) for a in r] for r in self._rows], self.ncols)

    def to_ring(self, ring):
        return PolyMatrix(ring, [[a.to_ring(ring) for a in r] for r in self._rows], self.ncols)

    def is_zero(self):
        return all(a.is_zero() for r in self._rows for a in r)

    def is_homogeneous(self):
        return all(a.is_homogeneous() for r in self._rows for a in r)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def to_strings(self):
        return [[str(a) for a in r] for r in self._rows]

    def __repr__(self):
        return f"PolyMatrix({self.to_strings()})"

    def __str__(self):
        cells = self.to_strings()
        if not cells or not self.ncols:
            return f"[{self.nrows} x {self.ncols} empty]"
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in r) + "]" for r in cells)


def determinant(m: PolyMatrix) -> Polynomial:
    """Laplace expansion along rows, memoized on the set of unused columns."""
    if m.nrows != m.ncols:
        raise InputError(f"determinant of a non-square {m.shape} matrix")
    n = m.nrows
    rows = m._rows
    ring = m.ring
    memo = {}

    def expand(i, cols):
        if i == n:
            return ring.one
        hit = memo.get(cols)
        if hit is not None:
            return hit
        total = ring.zero
        for pos, j in enumerate(cols):
            a = rows[i][j]
            if not a:
                continue
            sub = expand(i + 1, cols[:pos] + cols[pos + 1:])
            if sub:
                term = a * sub
                total = total - term if pos % 2 else total + term
        memo[cols] = total
        return total

    return expand(0, tuple(range(n)))


def minors(m: PolyMatrix, t: int):
    """All ``t x t`` minors, ordered lexicographically by (row set, column set)."""
    if t == 0:
        return [m.ring.one]
    if not 0 < t <= min(m.nrows, m.ncols):
        raise InputError(f"minor size {t} out of range for a {m.shape} matrix")
    out = []
    for rs in combinations(range(m.nrows), t):
        for cs in combinations(range(m.ncols), t):
            out.append(determinant(m.submatrix(rs, cs)))
    return out


def evaluate_at_origin(m: PolyMatrix):
    """Constant terms of the entries, as a list of rows of field elements."""
    return [[a.constant_term() for a in r] for r in m._rows]


def scalar_rank(rows, field, with_pivots=False):
    """Rank of a matrix of field elements by Gaussian elimination.

    With ``with_pivots`` also return (pivot rows, pivot columns) of a nonsingular
    square submatrix of full size.
    """
    p = field.characteristic
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    orig = list(range(len(work)))
    prows, pcols = [], []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        orig[r], orig[piv] = orig[piv], orig[r]
        inv = field.inv(work[r][c])
        for i in range(r + 1, len(work)):
            f = work[i][c]
            if f:
                f = f * inv
                work[i] = [(a - f * b) % p if p else a - f * b for a, b in zip(work[i], work[r])]
        prows.append(orig[r])
        pcols.append(c)
        r += 1
        if r == len(work):
            break
    if with_pivots:
        return r, sorted(prows), pcols
    return r


def generic_rank(m: PolyMatrix, seed: int = 0, trials: int = 2) -> int:
    """Largest ``t`` with a nonzero ``t x t`` minor.

    Entries are evaluated at seeded random points; the best rank found is
    certified by recomputing the corresponding minor symbolically.
    """
    F = m.ring.field
    if F.characteristic and F.characteristic <= MIN_GENERIC_CHARACTERISTIC:
        raise PreconditionError(
            f"generic rank over F{F.characteristic} needs characteristic > {MIN_GENERIC_CHARACTERISTIC}")
    if m.nrows == 0 or m.ncols == 0:
        return 0
    rng = random.Random(seed)
    p = F.characteristic
    best = (0, [], [])
    for _ in range(trials):
        point = [rng.randrange(1, p) if p else rng.randint(1, 10**6) for _ in m.ring.variables]
        vals = [[a.evaluate(point) for a in r] for r in m._rows]
        found = scalar_rank(vals, F, with_pivots=True)
        if found[0] > best[0]:
            best = found
        if best[0] == min(m.nrows, m.ncols):
            break
    r, prows, pcols = best
    if r and determinant(m.submatrix(prows, pcols)).is_zero():
        raise CertificationError("generic rank certificate minor vanished identically")
    return r
