"""Reductions of m^2 = (x^2, xy, y^2) and how they show up in the Fitting ideals."""

from divmodule import (EmbeddedModule, Ideal, fitting_ideal, polynomial_ring, presentation_of_embedded,
                       reduction_number)

S = polynomial_ring(["x", "y"])
E = EmbeddedModule.from_ideal(Ideal(S, [S("x^2"), S("x*y"), S("y^2")]))

for u in ([0, 2], [0, 1, 2], [0]):
    out = reduction_number(u, E, rmax=4)
    print("U =", [str(E.A[0, j]) for j in u], " r_U(E) =", out)

# For pd-1 modules the same pair is visible one level down, on Fitting ideals.
FU = fitting_ideal(presentation_of_embedded(E.select([0, 2])), 1)
FE = fitting_ideal(presentation_of_embedded(E), 1)
print("F_1(U) =", FU, " F_1(E) =", FE)
