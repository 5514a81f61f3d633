import pytest
from hypothesis import assume, given, settings, strategies as st

from divmodule import (BudgetExceeded, Ideal, InputError, LEX, PolyMatrix, Submodule, UnitIdealError,
                       ZeroIdealError, dimension, eliminate, groebner_basis, height_and_grade, ideal_equal,
                       intersect, normal_form, polynomial_ring, quotient, saturate, submodule_membership, syzygies)
from divmodule import groebner
from divmodule.groebner import format_ideal, in_radical, same_zero_set

from oracles import independent_set_dimension, package_gb_set, reduced_gb

R = polynomial_ring(["x", "y"])
R3 = polynomial_ring(["x", "y", "z"])
Y = polynomial_ring(["y1", "y2", "y3"])


def I(ring, *gens):
    return Ideal(ring, [ring(g) for g in gens])


def gb(i, order=None):
    return [str(g) for g in groebner_basis(i, order)]


def test_basis_examples():
    assert gb(I(R, "x^2", "x*y")) == ["x^2", "x*y"]
    assert gb(I(R, "0")) == []
    assert gb(I(R, "x", "1 + x")) == ["1"]


@pytest.mark.parametrize("f,expected", [("x^2*y", "0"), ("y^2", "y^2"), ("x*y^2 + y^3", "y^3")])
def test_normal_form(f, expected):
    assert str(normal_form(R(f), I(R, "x^2", "x*y"))) == expected


def test_normal_form_modulo_zero():
    assert normal_form(R("x + 1"), I(R)) == R("x + 1")


def test_eliminate():
    assert ideal_equal(eliminate(I(R, "y - x^2", "x"), ["y"]), I(R, "y"))
    assert eliminate(I(R, "y - x^2"), ["y"]).is_zero()
    assert eliminate(I(R, "1"), ["y"]).is_unit()
    with pytest.raises(InputError):
        eliminate(I(R, "x"), ["w"])


def test_quotient():
    m = I(R, "x", "y")
    assert ideal_equal(quotient(I(R, "x^2", "x*y"), I(R, "x")), m)
    assert ideal_equal(quotient(I(R, "x"), m), I(R, "x"))
    i = I(R, "x^2", "y^3")
    assert ideal_equal(quotient(i, I(R, "1")), i)


def test_saturate():
    # x * x lies in (x^2, xy), so the saturation is the unit ideal
    assert saturate(I(R, "x^2", "x*y"), "x").is_unit()
    assert ideal_equal(saturate(I(R, "x^2", "x*y"), "y"), I(R, "x"))
    assert ideal_equal(saturate(I(R, "x"), "y"), I(R, "x"))
    assert saturate(I(R, "1"), "x*y").is_unit()
    with pytest.raises(ZeroIdealError):
        saturate(I(R, "x"), "0")


def test_intersect():
    assert ideal_equal(intersect(I(R, "x"), I(R, "y")), I(R, "x*y"))
    assert ideal_equal(intersect(I(R, "x^2", "y"), I(R, "x", "y^2")), I(R, "x^2", "x*y", "y^2"))


def test_dimension():
    assert dimension(I(R)) == 2
    assert dimension(I(Y, "y1*y3 - y2^2")) == 2
    assert dimension(I(R, "x", "y")) == 0
    with pytest.raises(UnitIdealError):
        dimension(I(R, "1"))


@pytest.mark.parametrize("gens,hg", [(("x", "y"), (2, 2)), (("x",), (1, 1)), (("x^2", "x*y", "y^2"), (2, 2))])
def test_height_and_grade(gens, hg):
    assert height_and_grade(I(R, *gens)) == hg


def test_height_of_zero_ideal_is_an_error():
    with pytest.raises(ZeroIdealError):
        height_and_grade(I(R))


def _cols(m):
    return [[str(p) for p in c] for c in m.columns()]


def test_syzygies_of_generator_matrix():
    phi = syzygies(R, 2, [["x", "0"], ["y", "0"], ["0", "1"]])
    assert phi.shape == (3, 1)
    assert _cols(phi) == [["y", "-x", "0"]]


def test_syzygies_of_square_of_maximal_ideal():
    phi = syzygies(R, 1, [["x^2"], ["x*y"], ["y^2"]])
    assert phi.shape == (3, 2)
    koszul = Submodule(R, 3, [["y", "-x", "0"], ["0", "y", "-x"]])
    assert Submodule(R, 3, phi.columns()).equals(koszul)
    assert _cols(phi) == [["y", "-x", "0"], ["0", "y", "-x"]]


def test_syzygies_of_free_basis_are_empty():
    assert syzygies(R, 2, [["1", "0"], ["0", "1"]]).ncols == 0


def test_submodule_membership():
    N = Submodule(R, 2, [["x", "0"], ["y", "0"]])
    assert submodule_membership([R("x"), R.zero], N)
    assert not submodule_membership([R.one, R.zero], N)
    assert submodule_membership([R.zero, R.zero], N)
    assert submodule_membership([R("x^2 + y"), R.zero], N)


def test_ideal_equal():
    assert ideal_equal(I(R, "x", "y"), I(R, "y", "x + y"))
    assert not ideal_equal(I(R, "x"), I(R, "x^2"))
    assert ideal_equal(I(R), I(R))
    with pytest.raises(InputError):
        ideal_equal(I(R, "x"), I(R3, "x"))


def test_format_ideal():
    assert format_ideal(I(R, "1 + x", "x")) == "(1)"
    assert format_ideal(I(R)) == "(0)"
    assert format_ideal(I(R, "x + y", "y")) == "(x, y)"


def test_radical_tools():
    assert in_radical(R("x"), I(R, "x^3", "y"))
    assert not in_radical(R("x"), I(R, "x*y"))
    assert same_zero_set(I(R, "x^2", "x*y", "y^2"), I(R, "x", "y"))
    assert not same_zero_set(I(R, "x"), I(R, "x", "y"))


def test_budget_exceeded(monkeypatch):
    monkeypatch.setenv("DIVMOD_BUDGET", "2")
    with pytest.raises(BudgetExceeded):
        groebner_basis(I(R3, "x^2 - y*z", "y^2 - x*z", "z^2 - x*y", "x^3 + y^3 + z^3"))


def test_audit_rejects_non_basis():
    from divmodule.groebner import _poly_to_vec, audit_basis
    from divmodule.errors import InternalError
    with pytest.raises(InternalError):
        audit_basis(R.field, R.order, [_poly_to_vec(R("x^2 - y")), _poly_to_vec(R("x*y - 1"))])


def test_audit_counter_moves():
    before = groebner.audit_count
    groebner_basis(I(R, "x^3 - y", "x*y^2 - 1"))
    assert groebner.audit_count > before


def test_prime_field_basis():
    F = polynomial_ring(["x", "y"], field=7)
    i = Ideal(F, [F("x^2 + 3*y"), F("x*y - 1")])
    assert package_gb_set(groebner_basis(i), 7) == reduced_gb(i.gens, F.variables, modulus=7)


# -- properties -----------------------------------------------------------------

atoms = ["x", "y", "z", "x^2", "x*y", "y*z", "z^2", "x^2*y", "y^3", "x*z^2", "1", "2", "-3"]


@st.composite
def small_polys(draw, ring=R3):
    k = draw(st.integers(1, 3))
    parts = [f"{draw(st.integers(-3, 3))}*{draw(st.sampled_from(atoms))}" for _ in range(k)]
    return ring(" + ".join(parts))


ideals = st.lists(small_polys(), min_size=1, max_size=3).map(lambda gs: Ideal(R3, gs))


@settings(max_examples=40, deadline=None)
@given(ideals, st.sampled_from(["grevlex", "lex"]))
def test_reduced_basis_matches_oracle(i, order):
    o = LEX if order == "lex" else None
    assert package_gb_set(groebner_basis(i, o)) == reduced_gb(i.gens, R3.variables, order=order)


@settings(max_examples=40, deadline=None)
@given(ideals, st.lists(small_polys(), min_size=3, max_size=3))
def test_combinations_reduce_to_zero(i, cs):
    f = sum((c * g for c, g in zip(cs, i.gens)), R3.zero)
    assert normal_form(f, i).is_zero()
    assert f in i


@settings(max_examples=40, deadline=None)
@given(ideals, st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)))
def test_standard_monomials_are_normal(i, e):
    leads = [g.lead_monomial() for g in groebner_basis(i)]
    assume(not any(all(a <= b for a, b in zip(l, e)) for l in leads))
    m = R3.monomial(e)
    assert normal_form(m, i) == m


@settings(max_examples=30, deadline=None)
@given(ideals)
def test_dimension_matches_exhaustive_search(i):
    basis = groebner_basis(i)
    assume(not any(g.is_constant() for g in basis))
    leads = [g.lead_monomial() for g in basis]
    assert dimension(i) == independent_set_dimension(leads, 3)


@settings(max_examples=30, deadline=None)
@given(ideals, st.sampled_from([["x"], ["y"], ["z"], ["x", "y"], ["y", "z"]]))
def test_elimination_is_contained_and_supported(i, keep):
    out = eliminate(i, keep)
    assert out.issubset(i)
    idx = [R3.variables.index(v) for v in keep]
    for g in out.gens:
        for e in g.terms:
            assert all(a == 0 for k, a in enumerate(e) if k not in idx)


@st.composite
def vector_families(draw):
    rank = draw(st.integers(1, 2))
    count = draw(st.integers(1, 3))
    return rank, [[draw(small_polys()) for _ in range(rank)] for _ in range(count)]


@settings(max_examples=25, deadline=None)
@given(vector_families())
def test_syzygies_form_a_complex(fam):
    rank, gens = fam
    G = PolyMatrix.from_columns(R3, gens, rank)
    phi = syzygies(R3, rank, gens)
    assert (G @ phi).is_zero()
    if phi.ncols:
        second = syzygies(R3, phi.nrows, phi.columns())
        if second.ncols:
            assert (phi @ second).is_zero()
            image = Submodule(R3, phi.ncols, second.columns())
            kernel = Submodule(R3, phi.ncols, syzygies(R3, phi.nrows, phi.columns(), minimize=False).columns())
            assert image.issubset(kernel)
