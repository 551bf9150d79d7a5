import pytest
from hypothesis import given, settings, strategies as st

from affqsp.qchar import (
    A,
    C,
    EigenData,
    SpectralParam,
    YMonomial,
    YPolynomial,
    boundary_chi_eval_sl2,
    boundary_chi_eval_sl2_direct,
    chi_q_eval_sl2,
    dagger,
    gamma_iota,
    monomial_symmetry_check,
    onsager_partner,
    star,
    y_twist,
)

Y = YMonomial.Y
P = SpectralParam.parse


def poly(*monos):
    return YPolynomial.from_monomials(monos)


# frozen values -------------------------------------------------------------


def test_spectral_params():
    assert P("C a^-1 q^3") == SpectralParam(-1, 3, 1)
    assert P("1") == SpectralParam()
    assert A * A.inverse() == SpectralParam()
    assert str(P("a q^2")) == "aq^2"
    with pytest.raises(ValueError):
        P("b")


def test_twist_values():
    assert y_twist(poly(Y(1, A))) == poly(Y(1, C * A) * Y(1, A.inverse(), -1))
    assert y_twist(YPolynomial.one()) == YPolynomial.one()
    ainv = A.inverse()
    got = y_twist(poly(Y(1, A) * Y(1, ainv)))
    want = poly(Y(1, C * A) * Y(1, C * ainv) * (Y(1, ainv) * Y(1, A)).inverse())
    assert got == want


def test_sl2_characters():
    assert chi_q_eval_sl2(0) == YPolynomial.one()
    assert chi_q_eval_sl2(1) == poly(Y(1, A), Y(1, P("a q^2"), -1))
    assert chi_q_eval_sl2(2) == poly(
        Y(1, P("a q^-1")) * Y(1, P("a q")),
        Y(1, P("a q^-1")) * Y(1, P("a q^3"), -1),
        Y(1, P("a q")) .inverse() * Y(1, P("a q^3"), -1),
    )
    with pytest.raises(ValueError):
        chi_q_eval_sl2(-1)


def test_boundary_characters():
    assert boundary_chi_eval_sl2(0) == YPolynomial.one()
    m0 = Y(1, P("C a")) * Y(1, P("a^-1"), -1)
    m1 = Y(1, P("a^-1 q^-2")) * Y(1, P("C a q^2"), -1)
    assert boundary_chi_eval_sl2(1) == poly(m0, m1)
    assert boundary_chi_eval_sl2_direct(1) == poly(m0, m1)


def test_onsager_partner():
    assert onsager_partner(A) == P("q^-2 C^-1 a^-1")
    assert onsager_partner(onsager_partner(A)) == A


@pytest.mark.parametrize("n", [0, 1, 10])
def test_monomial_symmetry(n):
    assert monomial_symmetry_check(n)


def test_gamma_trivial():
    g = gamma_iota(EigenData(), 1)
    assert g.qtilde == () and g.qtilde_dag == ()
    assert g.is_trivial()


def test_gamma_single_factor():
    e = EigenData.from_json({"Q": {"1": ["a"]}})
    g = gamma_iota(e, 1)
    assert g.qtilde == (P("C a"),)
    assert g.qtilde_dag == (P("a^-1"),)
    assert g.numerator == tuple(sorted([P("C a q^-1"), P("a^-1 q")]))
    assert g.denominator == tuple(sorted([P("C a q"), P("a^-1 q^-1")]))
    assert g.to_dict()["qtilde"] == ["Ca"]


def test_dagger_and_star_are_involutions():
    ps = [P("a"), P("C a^2 q^-3"), P("q")]
    assert dagger(dagger(ps)) == tuple(sorted(ps))
    assert star(star(ps)) == tuple(sorted(ps))


# properties ------------------------------------------------------------------

params = st.builds(SpectralParam, st.integers(-2, 2), st.integers(-4, 4), st.integers(-1, 1))
monos = st.dictionaries(st.tuples(st.integers(1, 2), params), st.integers(-2, 2), max_size=4).map(YMonomial)


@settings(max_examples=200, derandomize=True, deadline=None)
@given(monos, monos)
def test_twist_is_multiplicative(m1, m2):
    assert y_twist(poly(m1 * m2)) == y_twist(poly(m1)) * y_twist(poly(m2))


@pytest.mark.parametrize("n", range(13))
def test_twist_equals_direct_sum(n):
    assert y_twist(chi_q_eval_sl2(n)) == boundary_chi_eval_sl2_direct(n)


@pytest.mark.parametrize("n", range(13))
def test_onsager_symmetry(n):
    assert boundary_chi_eval_sl2(n) == boundary_chi_eval_sl2(n, onsager_partner(A))
    assert monomial_symmetry_check(n)


@settings(max_examples=100, derandomize=True, deadline=None)
@given(st.integers(0, 6), params)
def test_onsager_symmetry_any_parameter(n, a):
    assert boundary_chi_eval_sl2(n, a) == boundary_chi_eval_sl2(n, onsager_partner(a))


@settings(max_examples=100, derandomize=True, deadline=None)
@given(st.lists(params, max_size=3), st.lists(params, max_size=3))
def test_gamma_swap_identity(qs, rs):
    e = EigenData({1: qs}, {1: rs})
    g, h = gamma_iota(e, 1), gamma_iota(e.swapped(), 1)
    assert dagger(g.qtilde) == h.qtilde
    assert g.qtilde_dag == dagger(g.qtilde)
