"""Independent oracles: sympy for Groebner bases and determinants, plain
enumeration for anything monomial.  Nothing here calls the package's engine."""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

import sympy


def to_sympy(f, symbols=None):
    """Package polynomial -> sympy expression (via the term dictionary, not the printer)."""
    symbols = symbols or sympy.symbols(list(f.ring.variables))
    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        c = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        mono = sympy.Integer(1)
        for s, a in zip(symbols, e):
            mono *= s**a
        expr += c * mono
    return expr


def reduced_gb(polys, variables, order="grevlex", modulus=None):
    """Reduced basis from sympy as a set of expanded, monic expressions."""
    symbols = sympy.symbols(list(variables))
    exprs = [to_sympy(p, symbols) for p in polys if not p.is_zero()]
    if not exprs:
        return set()
    opts = {"order": order}
    if modulus:
        opts["modulus"] = modulus
    G = sympy.groebner(exprs, *symbols, **opts)
    out = set()
    for g in G.polys:
        lc = sympy.Integer(int(g.LC(order=order))) if modulus else g.LC(order=order)
        scale = sympy.mod_inverse(lc, modulus) if modulus else 1 / lc
        out.add(_normal(sympy.expand(g.as_expr() * scale), symbols, modulus))
    return out


def _normal(expr, symbols, modulus):
    p = sympy.Poly(expr, *symbols, modulus=modulus) if modulus else sympy.Poly(expr, *symbols)
    if modulus:
        # symmetric residues from sympy -> [0, p)
        terms = {m: int(c) % modulus for m, c in p.terms()}
        return tuple(sorted(terms.items()))
    return tuple(sorted((m, sympy.Rational(c)) for m, c in p.terms()))


def package_gb_set(gb, modulus=None):
    out = set()
    for g in gb:
        symbols = sympy.symbols(list(g.ring.variables))
        out.add(_normal(to_sympy(g, symbols), symbols, modulus))
    return out


def sympy_det(rows, variables):
    symbols = sympy.symbols(list(variables))
    M = sympy.Matrix([[to_sympy(a, symbols) for a in r] for r in rows])
    return sympy.expand(M.det(method="berkowitz"))


def sympy_rank(rows, variables):
    symbols = sympy.symbols(list(variables))
    return sympy.Matrix([[to_sympy(a, symbols) for a in r] for r in rows]).rank(simplify=True)


def independent_set_dimension(lead_exponents, nvars):
    """Largest variable subset with no lead-monomial support inside it (exhaustive)."""
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in lead_exponents]
    for size in range(nvars, -1, -1):
        for X in combinations(range(nvars), size):
            if not any(s <= frozenset(X) for s in supports):
                return size
    return 0


# -- monomial ideals ----------------------------------------------------------

def _mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def monomial_power(gens, r, nvars):
    if r == 0:
        return [(0,) * nvars]
    out = set()
    for combo in combinations_with_replacement(gens, r):
        m = (0,) * nvars
        for g in combo:
            m = _mul(m, g)
        out.add(m)
    return sorted(out)


def monomial_reduction_number(U, E, nvars, rmax):
    """Least r with E^{r+1} = U E^r for monomial ideals given by exponent tuples."""
    for r in range(rmax + 1):
        UEr = [_mul(u, w) for u in U for w in monomial_power(E, r, nvars)]
        if all(any(_divides(g, m) for g in UEr) for m in monomial_power(E, r + 1, nvars)):
            return r
    return None


def equigenerated_monomial_spread(gens):
    """Dimension of k[monomials of one degree] = rank of the exponent matrix."""
    return sympy.Matrix([list(g) for g in gens]).rank()


def random_points(variables, count, seed=0, bound=50):
    import random
    rng = random.Random(seed)
    return [[rng.randint(-bound, bound) for _ in variables] for _ in range(count)]


def all_exponents(nvars, max_degree):
    return [e for e in product(range(max_degree + 1), repeat=nvars) if sum(e) <= max_degree]
