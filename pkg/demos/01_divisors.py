"""Divisor ideals of E = m + S inside S^2, S = Q[x, y].

E is generated by (x,0), (y,0), (0,1).  It has rank 2 but needs three
generators, so it is not free; everything below measures how far from free.
"""

from divmodule import (EmbeddedModule, det0, fitting_ideal, is_free_local, is_ideal_module, mu_local,
                       nonfree_locus_ideal, norm_representative, polynomial_ring, presentation_of_embedded)

S = polynomial_ring(["x", "y"])
E = EmbeddedModule.from_columns(S, [["x", "0"], ["y", "0"], ["0", "1"]], label="m + S")

M = presentation_of_embedded(E)
print("relations (columns of phi):")
print(M.phi)
print("rank", M.rank, "minimal generators", mu_local(M))

for i in range(M.n + 1):
    print(f"F_{i}(E) =", fitting_ideal(M, i))

# The order determinant: maximal minors of the generator matrix.
print("det0(E) =", det0(E))

# A norm representative comes from n - e columns of phi with full rank.
cert = norm_representative(M)
print("norm representative from columns", cert.columns, "=", cert.ideal)

# det0 * det0^{-1} cuts out exactly the points where E is not free.
print("non-free locus ideal =", nonfree_locus_ideal(E))
print("free at the origin?", is_free_local(E))
print("ideal module (grade of G/E >= 2)?", is_ideal_module(E))
