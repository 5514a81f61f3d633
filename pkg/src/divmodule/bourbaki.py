"""Generic Bourbaki ideals by random specialization.

The generic free submodule F = <x_1..x_{e-1}> uses seeded random scalars in
place of indeterminates.  Every run is certified; a failed certificate means
an unlucky draw and triggers a retry with the next seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import PreconditionError
from .groebner import Ideal, Submodule, height, syzygies
from .matrix import PolyMatrix, evaluate_at_origin, scalar_rank
from .presmod import (EmbeddedModule, PresentedModule, is_pd_at_most_one, mu_local,
                      presentation_of_embedded, quotient_by_generators, theta_image, theta_values)

MAX_ATTEMPTS = 8
COEFF_RANGE = 10**4


@dataclass
class BourbakiResult:
    seed: int
    coefficients: list           # c_ij, one row per generic element
    generic: list                # the columns x_1..x_{e-1}
    generators: PolyMatrix       # reordered minimal generating set, x's first
    presentation: PresentedModule
    psi: PolyMatrix
    ideal: Ideal
    ebar: PresentedModule
    certificates: dict = field(default_factory=dict)
    attempts: int = 1

    @property
    def e(self):
        return self.generators.nrows


def _draw(field_, rng, count):
    p = field_.characteristic
    return [field_.coerce(rng.randrange(p) if p else rng.randint(1, COEFF_RANGE)) for _ in range(count)]


def _extend_minimal(E: EmbeddedModule, coeffs, U_cols):
    """Start with the generic elements and append original generators that grow E/mE."""
    M = presentation_of_embedded(E)
    F = E.ring.field
    n = E.ngens
    relations = [list(c) for c in zip(*evaluate_at_origin(M.phi))] if M.phi.ncols else []
    chosen_vecs = list(relations)
    base = scalar_rank(chosen_vecs, F) if chosen_vecs else 0
    for row in coeffs:
        vec = [F.coerce(0)] * n
        for c, j in zip(row, U_cols):
            vec[j] = c
        chosen_vecs.append(vec)
    rank_x = scalar_rank(chosen_vecs, F)
    if rank_x - base != len(coeffs):
        return None
    picks = []
    current = rank_x
    target = mu_local(M)
    for j in range(n):
        if current - base == target:
            break
        trial = chosen_vecs + [[F.coerce(int(i == j)) for i in range(n)]]
        r = scalar_rank(trial, F)
        if r > current:
            chosen_vecs, current = trial, r
            picks.append(j)
    return picks if current - base == target else None


def hilbert_burch_check(result: BourbakiResult):
    """Exactness of ``0 -> S^m -psi-> S^{m+1} -theta-> I``; None when grade I < 2."""
    psi = result.psi
    ring = psi.ring
    if result.ideal.is_zero() or result.ideal.is_unit() or height(result.ideal) < 2:
        return None
    # signed maximal minors theta(x_i), one per row of psi
    row, _ = theta_values(psi)
    syz = syzygies(ring, 1, [[v] for v in row], minimize=False)
    image = Submodule(ring, psi.nrows, psi.columns())
    return Submodule(ring, psi.nrows, syz.columns()).equals(image) and \
        Ideal(ring, row).groebner() == result.ideal.groebner()


def generic_bourbaki(E: EmbeddedModule, U=None, seed: int = 0, attempts: int = MAX_ATTEMPTS) -> BourbakiResult:
    """Generic Bourbaki ideal ``I_{n-e}(psi)`` of ``E`` (or of the reduction ``U``)."""
    from .divisors import det0, find_psi
    E.require_full_rank()
    e = E.ambient_rank
    d = det0(E)
    if d.is_unit():
        raise PreconditionError("free module has no proper Bourbaki construction")
    if height(d) < 2:
        raise PreconditionError("the Bourbaki construction needs grade det0(E) >= 2")
    U_cols = list(range(E.ngens)) if U is None else list(U)
    if U is not None:
        from .rees import reduction_number
        if not reduction_number(U_cols, E).known:
            raise PreconditionError("the supplied U is not a reduction of E within rmax")
    mu_E = mu_local(presentation_of_embedded(E))
    failures = []
    for k in range(attempts):
        s = seed + k
        rng = random.Random(s)
        coeffs = [_draw(E.ring.field, rng, len(U_cols)) for _ in range(e - 1)]
        picks = _extend_minimal(E, coeffs, U_cols)
        if picks is None:
            failures.append(f"seed {s}: generic elements not part of a minimal generating set")
            continue
        cols = E.columns()
        generic = []
        for row in coeffs:
            generic.append([sum((E.ring.const(c) * cols[j][i] for c, j in zip(row, U_cols)), E.ring.zero)
                            for i in range(e)])
        gens = generic + [cols[j] for j in picks]
        A = PolyMatrix.from_columns(E.ring, gens, e)
        M = presentation_of_embedded(EmbeddedModule(A, E.label))
        try:
            psi = find_psi(M, e - 1)
        except PreconditionError as exc:
            failures.append(f"seed {s}: {exc}")
            continue
        ideal = theta_image(psi)
        ebar = quotient_by_generators(M, range(e - 1))
        result = BourbakiResult(s, coeffs, generic, A, M, psi, ideal, ebar, attempts=k + 1)
        certs = {
            "mu_formula": mu_local(ebar) == mu_E - e + 1,
            "rank_one": ebar.rank == 1,
            "grade_psi": not ideal.is_zero() and height(ideal) >= 1,
        }
        certs["hilbert_burch"] = hilbert_burch_check(result)
        result.certificates = certs
        if all(v is not False for v in certs.values()):
            return result
        failures.append(f"seed {s}: certificates {certs}")
    raise PreconditionError("retry budget exhausted: " + "; ".join(failures))


def _mu_ideal(i: Ideal) -> int:
    return mu_local(presentation_of_embedded(EmbeddedModule.from_ideal(Ideal(i.ring, i.groebner()))))


def verify_bourbaki(result: BourbakiResult, E: EmbeddedModule) -> dict:
    """Invariants that must transfer from E to the Bourbaki ideal."""
    from .rees import analytic_spread
    e = E.ambient_rank
    ME = presentation_of_embedded(E)
    mu_E = mu_local(ME)
    mu_bar = mu_local(result.ebar)
    spread_E = analytic_spread(E)
    spread_I = analytic_spread(EmbeddedModule.from_ideal(result.ideal))
    report = {
        "mu": {"computed": mu_bar, "expected": mu_E - e + 1, "pass": mu_bar == mu_E - e + 1},
        "rank_one": {"computed": result.ebar.rank, "expected": 1, "pass": result.ebar.rank == 1},
        "spread": {"computed": spread_I + e - 1, "expected": spread_E, "pass": spread_I + e - 1 == spread_E},
    }
    if is_pd_at_most_one(ME) and ME.phi.ncols == ME.n - e:
        gens = result.ideal.groebner()
        MI = presentation_of_embedded(EmbeddedModule.from_ideal(Ideal(E.ring, gens)))
        report["pd"] = {"computed": is_pd_at_most_one(MI), "expected": True, "pass": is_pd_at_most_one(MI)}
    else:
        report["pd"] = None
    report["mu_ideal"] = _mu_ideal(result.ideal)
    return report
