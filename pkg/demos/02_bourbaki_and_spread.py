"""From a module to an ideal: generic Bourbaki ideals and analytic spread.

A generic element x_1 of E is split off; what remains is isomorphic to an
ideal I with mu(I) = mu(E) - e + 1 and l(I) = l(E) - e + 1.  Randomness stands
in for generic coefficients, so every run is certified and seeds are echoed.
"""

from divmodule import (EmbeddedModule, analytic_spread, classify_module, fiber_cone, generic_bourbaki,
                       polynomial_ring, rees_presentation, verify_bourbaki)

S = polynomial_ring(["x", "y", "z"], field=32003)
E = EmbeddedModule.from_columns(S, [["x*y", "0"], ["x*z", "0"], ["y*z", "0"], ["0", "1"]], label="(xy,xz,yz) + S")

rees = rees_presentation(E)
print("Rees ideal K =", rees.K)
F = fiber_cone(E, rees)
print("fiber cone ideal", F.ideal, "dimension", F.dimension)

for seed in (0, 1):
    res = generic_bourbaki(E, seed=seed)
    print(f"seed {res.seed}: c = {res.coefficients}  I = {res.ideal}")
    print("   certificates", res.certificates)

report = verify_bourbaki(res, E)
print("mu check", report["mu"])
print("spread check", report["spread"])
print("spread of I:", analytic_spread(EmbeddedModule.from_ideal(res.ideal)))
print("classification", classify_module(E).to_dict())
