import pytest

from divmodule import (EmbeddedModule, Ideal, PolyMatrix, PreconditionError, PresentedModule,
                       ZeroIdealError, det0, find_psi, fitting_ideal, fractional_inverse, ideal_equal,
                       is_free_local, is_ideal_module, mu_local, nonfree_locus_ideal, norm_representative,
                       presentation_of_embedded, zak_report)
from divmodule.divisors import (FractionalIdeal, check_norm_isomorphic, cokernel_presentation, det0_via_wedge,
                                nonfree_locus_matches, proportional_minors)
from divmodule.groebner import format_ideal

from modules import R, embedded, free2, ideal_of, m_plus_free, m_squared, x_split

ALL = [free2, m_plus_free, m_squared, x_split]


def s(i):
    return format_ideal(i)


def test_det0_examples():
    assert s(det0(m_plus_free())) == "(x, y)"
    assert s(det0(m_squared())) == "(x^2, x*y, y^2)"
    assert s(det0(free2())) == "(1)"


def test_det0_needs_full_rank():
    with pytest.raises(PreconditionError):
        det0(embedded([["x", "y"], ["x^2", "x*y"]]))


@pytest.mark.parametrize("make", ALL)
def test_det0_is_initial_fitting_ideal_of_cokernel(make):
    E = make()
    assert ideal_equal(det0(E), fitting_ideal(cokernel_presentation(E), 0))
    assert ideal_equal(det0(E), det0_via_wedge(E))


def test_norm_representative_examples():
    c = norm_representative(presentation_of_embedded(m_plus_free()))
    assert c.columns == (0,) and s(c.ideal) == "(x, y)"
    assert c.E1.phi == presentation_of_embedded(m_plus_free()).phi
    c2 = norm_representative(presentation_of_embedded(m_squared()))
    assert c2.columns == (0, 1) and s(c2.ideal) == "(x^2, x*y, y^2)"
    c3 = norm_representative(presentation_of_embedded(free2()))
    assert c3.rho.ncols == 0 and c3.ideal.is_unit()


@pytest.mark.parametrize("make", ALL)
def test_norm_inside_fitting_ideal(make):
    E = make()
    M = presentation_of_embedded(E)
    c = norm_representative(M)
    assert c.ideal.issubset(fitting_ideal(M, E.ambient_rank))
    assert ideal_equal(c.ideal, fitting_ideal(c.E1, E.ambient_rank))
    if M.phi.ncols == M.n - E.ambient_rank:
        assert ideal_equal(c.ideal, fitting_ideal(M, E.ambient_rank))


def test_find_psi_examples():
    M = PresentedModule(3, PolyMatrix(R, [["0"], ["y"], ["-x"]]))
    psi = find_psi(M, 1)
    assert [[str(a) for a in r] for r in psi.rows()] == [["y"], ["-x"]]
    N = presentation_of_embedded(m_squared())
    assert find_psi(N, 0) == N.phi
    Z = PresentedModule(3, PolyMatrix(R, [["1", "0"], ["0", "y"], ["0", "-x"]]))
    assert [[str(a) for a in r] for r in find_psi(Z, 1).rows()] == [["y"], ["-x"]]
    with pytest.raises(PreconditionError):
        find_psi(PresentedModule(3, PolyMatrix(R, [["x"], ["0"], ["0"]])), 1)


def test_fractional_inverse_examples():
    inv = fractional_inverse(ideal_of(R, "x", "y"))
    assert str(inv.denominator) == "x" and s(inv.numerator) == "(x)"
    inv = fractional_inverse(ideal_of(R, "x"))
    assert str(inv.denominator) == "x" and inv.numerator.is_unit()
    inv = fractional_inverse(ideal_of(R, "1"))
    assert str(inv.denominator) == "1" and inv.numerator.is_unit()
    with pytest.raises(ZeroIdealError):
        fractional_inverse(Ideal(R, []))
    with pytest.raises(ZeroIdealError):
        FractionalIdeal(Ideal.unit(R), R.zero)


def test_nonfree_locus_examples():
    assert s(nonfree_locus_ideal(m_plus_free())) == "(x, y)"
    assert nonfree_locus_ideal(x_split()).is_unit()
    assert nonfree_locus_ideal(free2()).is_unit()


@pytest.mark.parametrize("make", ALL)
def test_nonfree_locus_is_the_top_fitting_locus(make):
    assert nonfree_locus_matches(make())


@pytest.mark.parametrize("make,free", [(free2, True), (m_plus_free, False), (x_split, True), (m_squared, False)])
def test_freeness_agrees_with_nakayama(make, free):
    E = make()
    assert is_free_local(E) is free
    assert (mu_local(presentation_of_embedded(E)) == E.rank) is free


def test_ideal_module():
    assert is_ideal_module(m_plus_free())
    assert not is_ideal_module(x_split())
    assert not is_ideal_module(free2())
    assert is_ideal_module(m_squared())


def test_zak_reports():
    r = zak_report(m_plus_free())
    assert (r["spread_det0"], r["ht_F0"], r["ht_Fe_E1"], r["ht_Fe"]) == (2, 2, 2, 2)
    assert r["pd_one"] and r["zak"] and r["zak2"] and r["zak3"]
    r = zak_report(m_squared())
    assert (r["spread_det0"], r["ht_Fe"]) == (2, 2) and r["zak3"]
    with pytest.raises(PreconditionError):
        zak_report(free2())


def test_norm_isomorphism_certificates():
    assert check_norm_isomorphic(m_plus_free())
    assert check_norm_isomorphic(m_squared())
    # det0 = x*m but the norm representative is m: proportional, not equal
    E = embedded([["x", "0"], ["y", "0"], ["0", "x"], ["0", "y"]])
    assert check_norm_isomorphic(E)
    assert check_norm_isomorphic(free2())


def test_proportional_minors_rejects_unrelated_rho():
    A = PolyMatrix(R, [["x", "y", "0"], ["0", "0", "1"]])
    assert proportional_minors(A, PolyMatrix(R, [["y"], ["-x"], ["0"]])) is not None
    assert proportional_minors(A, PolyMatrix(R, [["1"], ["x"], ["y^2"]])) is None
    with pytest.raises(PreconditionError):
        proportional_minors(A, PolyMatrix(R, [["1", "0"], ["x", "0"], ["y", "0"]]))


def test_base_change_adjoining_a_variable():
    S = R.extend(["w"])
    for make in ALL:
        E = make()
        lifted = EmbeddedModule(E.A.to_ring(S))
        assert ideal_equal(det0(lifted), det0(E).to_ring(S))
