"""Small modules shared across test files."""

from divmodule import EmbeddedModule, Ideal, polynomial_ring

R = polynomial_ring(["x", "y"])


def embedded(columns, ring=R, label=None):
    return EmbeddedModule.from_columns(ring, [[ring(a) for a in c] for c in columns], label=label)


def ideal_module(*gens, ring=R):
    return EmbeddedModule.from_ideal(Ideal(ring, [ring(g) for g in gens]))


def m_plus_free():
    return embedded([["x", "0"], ["y", "0"], ["0", "1"]], label="m-plus-free")


def m_squared():
    return ideal_module("x^2", "x*y", "y^2")


def free2():
    return embedded([["1", "0"], ["0", "1"]], label="free2")


def x_split():
    return embedded([["x", "0"], ["0", "1"]], label="x-split")


def ideal_of(ring, *gens):
    return Ideal(ring, [ring(g) for g in gens])
