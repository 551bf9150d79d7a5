import random

import pytest

from affqsp import iqg
from affqsp.freealg import BAlgebra, UqAlgebra
from affqsp.iqg import (
    P_k,
    Pprime_k,
    SubtermType,
    boldP,
    bracket_right,
    check_i_good,
    eta,
    extract_Qi,
    hatP,
    omega_prime_polynomial,
    preimage,
    subterm_decompose,
)
from affqsp.scalars import EXACT, ModularField
from affqsp.uq import in_positive_subalgebra, is_zero, normal_form, triangular_form
from affqsp.weyl import root_datum

FIELD = ModularField(qv=2_718_281)


def algs(name, field=EXACT):
    d = root_datum(name[0], int(name[1:]))
    return d, UqAlgebra(d, field), BAlgebra(d, field)


# frozen values -------------------------------------------------------------


def test_eta_on_generators():
    _, u, b = algs("A2")
    assert eta(b.B(1), u) == normal_form(u.F(1) - (u.KK(1) * u.E(1) * u.K(1, -1)).scale_q(-2))
    assert eta(b.KK(1), u) == u.KK(1)


def test_eta_kills_the_iquantum_serre_relation():
    _, u, b = algs("A2")
    for i, j in ((1, 2), (2, 1), (0, 1)):
        s = (b.B(i) * b.B(i) * b.B(j) - (b.B(i) * b.B(j) * b.B(i)).scale(EXACT.qint(2))
             + b.B(j) * b.B(i) * b.B(i))
        assert is_zero(eta(s + (b.KK(i) * b.B(j)).scale_q(-1), u))
        assert not is_zero(eta(s, u))


def test_preimage_inverts_eta():
    _, u, b = algs("B2", FIELD)
    p = bracket_right([b.B(1), b.B(2), b.B(0)], 2) + b.KK(2) * b.B(1)
    assert eta(preimage(eta(p, u), b), u) == eta(p, u)
    with pytest.raises(ValueError):
        preimage(u.E(1), b)


def test_brackets():
    _, _, b = algs("A3")
    y = [b.B(j) for j in (1, 2, 3)]
    assert P_k(y[:1]) == y[0]
    assert P_k(y[:2]) == y[0] * y[1] - (y[1] * y[0]).scale_q(1)
    assert P_k(y) == P_k([y[0], P_k(y[1:])])
    assert Pprime_k(y) == Pprime_k([Pprime_k(y[:2]), y[2]])
    with pytest.raises(ValueError):
        P_k([])


def test_three_term_polynomials():
    _, _, b = algs("B2")
    a, c = b.B(1), b.B(2)
    assert hatP(a, b.zero()) == b.zero()
    assert boldP(2, a, c) - hatP(a, c) == b.KK(2) * a


def test_closed_forms_examples():
    d, _, b = algs("D4")
    B = b.B
    assert omega_prime_polynomial(d, 2) == bracket_right([B(1), bracket_right([B(3), bracket_right([B(4), B(2), B(0)])])])
    d, _, b = algs("C3")
    B = b.B
    assert omega_prime_polynomial(d, 3) == boldP(2, boldP(1, B(0), B(1)), B(2))
    d, _, b = algs("B2")
    B = b.B
    assert omega_prime_polynomial(d, 2) == bracket_right([B(1), bracket_right([B(2), B(0)], 2)], 2)


def test_subterm_types_of_a_generator():
    _, u, b = algs("A2")
    subs = subterm_decompose(b.B(1), u)
    assert set(subs) == {SubtermType(((0, 0), (1, 0), (0, 0))), SubtermType(((0, 0), (0, 1), (0, 0)))}


def test_omega_prime_closed_form_is_good_d4():
    d, u, _ = algs("D4", FIELD)
    rep = check_i_good(omega_prime_polynomial(d, 2, FIELD), 2, u)
    assert rep.passed, rep.to_dict()
    assert rep.mixed_vanish and rep.degree_bound


def test_omega_prime_closed_form_is_good_c3():
    d, u, _ = algs("C3", FIELD)
    assert check_i_good(omega_prime_polynomial(d, 3, FIELD), 3, u).passed


def test_goodness_in_rank_one():
    # omega'_1 is a single fundamental-group letter, which sends B_1 to B_0
    d, u, b = algs("A1")
    assert check_i_good(b.B(0), 1, u).passed
    with pytest.raises(ValueError):
        check_i_good(b.B(1), 1, u)


def test_goodness_negative_controls():
    d, u, b = algs("D4", FIELD)
    rep = check_i_good(b.B(0), 2, u)
    assert not rep.passed and not rep.plus_match
    rep = check_i_good(b.B(2) * b.B(2) * b.B(0), 2, u)
    assert not rep.passed and not rep.degree_bound


@pytest.mark.parametrize("name", ["A2", "B2", "C2"])
def test_weak_compatibility_rank_two(name):
    d, _, _ = algs(name)
    for i in d.I0:
        assert iqg.weak_compat_check(d, i, FIELD, cross_check=True)


def test_qi_extraction():
    d, u, _ = algs("D4", FIELD)
    q = extract_Qi(omega_prime_polynomial(d, 2, FIELD), 2, u)
    assert in_positive_subalgebra(q, "d_i_ge_r", 2, 1)
    d, u, b = algs("B2", FIELD)
    assert iqg.qi_membership(d, 1, FIELD)


def test_qi_of_pure_minus_minus_is_zero():
    d, u, b = algs("A2", FIELD)
    # the closed form in type A2 has one all-F subterm of top degree and no other F-side terms
    p = omega_prime_polynomial(d, 1, FIELD)
    q = extract_Qi(p, 1, u)
    assert is_zero(q) or in_positive_subalgebra(q, "d_i_ge_r", 1, 1)


def test_type_d_correction_identities():
    d = root_datum("D", 4)
    rows = {r["id"]: r for r in iqg.verify_section8_identities(d, FIELD)}
    for key in ("vanish_one", "vanish_two", "commutator_2", "expansion_2", "expansion_1_all_i", "expansion_2_all_i"):
        assert rows[key]["pass"], key
    assert not rows["expansion_1"]["pass"]
    with pytest.raises(ValueError):
        iqg.verify_section8_identities(root_datum("B", 3), FIELD)


def test_chain_identities_a3():
    d = root_datum("A", 3)
    for ch in iqg.chains(d, 3):
        assert all(r["pass"] for r in iqg.verify_chain_identities(d, ch, FIELD))


# properties ----------------------------------------------------------------------

SIMPLY_LACED = [root_datum(f, n) for f, n in (("A", 3), ("A", 4), ("A", 5), ("D", 4), ("D", 5))]


def _elem(u, kind, j):
    return {"F": u.F, "E": u.tE, "B": lambda j: u.F(j) + u.tE(j)}[kind](j)


def _almost_commuting(d, ch):
    return all(d.cartan[a][c] == 0 for x, a in enumerate(ch) for c in ch[x + 2:])


def test_nested_brackets_agree_on_chains():
    rng = random.Random(51)
    cases = [(d, ch) for d in SIMPLY_LACED for k in (3, 4, 5) for ch in iqg.chains(d, k) if _almost_commuting(d, ch)]
    picks = rng.sample(cases, 60)
    count = 0
    for d, ch in picks:
        u = UqAlgebra(d, FIELD)
        for kind in ("F", "E", "B"):
            y = [_elem(u, kind, j) for j in ch]
            assert normal_form(P_k(y)) == normal_form(Pprime_k(y)), (d.name, ch, kind)
            count += 1
    assert count >= 100


def test_commuting_arguments_can_be_exchanged():
    rng = random.Random(52)
    count = 0
    while count < 120:
        d = rng.choice(SIMPLY_LACED + [root_datum("B", 3), root_datum("C", 3)])
        u = UqAlgebra(d, FIELD)
        k = rng.randrange(3, 5)
        nodes = [rng.choice(d.I) for _ in range(k)]
        m = rng.randrange(k - 1)
        a, c = nodes[m], nodes[m + 1]
        if a == c or d.cartan[a][c] != 0:
            continue
        kinds = [rng.choice("FEB") for _ in range(k)]
        y = [_elem(u, kd, j) for kd, j in zip(kinds, nodes)]
        z = y[:m] + [y[m + 1], y[m]] + y[m + 2:]
        e = rng.randrange(-2, 3)
        assert normal_form(P_k(y, e)) == normal_form(P_k(z, e)), (d.name, nodes, m, kinds)
        count += 1


def test_subterms_sum_to_eta():
    rng = random.Random(53)
    for n in range(120):
        d, u, b = algs(("A2", "B2", "C2", "D4")[n % 4], FIELD)
        p = b.zero()
        for _ in range(rng.randrange(1, 4)):
            t = b.KK(rng.randrange(b.size), rng.choice((-1, 0, 1)))
            for _ in range(rng.randrange(1, 4)):
                t = t * b.B(rng.randrange(b.size))
            p = p + t.scale_q(rng.randrange(-2, 3))
        subs = subterm_decompose(p, u)
        total = u.zero()
        for piece in subs.values():
            total = total + piece
        assert triangular_form(total) == eta(p, u, canonical=False)
