import random

import pytest
from hypothesis import given, settings, strategies as st

from affqsp.freealg import (
    BAlgebra,
    Generator,
    UqAlgebra,
    degree_split,
    divided_power,
    expand_substitutions,
    parse_sexpr,
    qcomm,
    substitute_B,
)
from affqsp.iqg import eta, subterm_decompose
from affqsp.scalars import EXACT, ModularField, qfactorial
from affqsp.uq import triangular_form
from affqsp.weyl import root_datum

PROPS = settings(max_examples=100, derandomize=True, deadline=None)

A1 = UqAlgebra(root_datum("A", 1))
A2 = UqAlgebra(root_datum("A", 2))
D4 = UqAlgebra(root_datum("D", 4))


def test_k_moves_right_with_q_power():
    u = A1
    assert u.K(1) * u.E(1) == (u.E(1) * u.K(1)).scale_q(2)
    assert u.E(1) * u.K(1) == (u.K(1) * u.E(1)).scale_q(-2)
    assert u.K(1) * u.F(1) == (u.F(1) * u.K(1)).scale_q(-2)
    assert u.one() * u.E(1) == u.E(1)


def test_qcomm_definition():
    u = A1
    x = u.E(1) + u.F(1)
    assert qcomm(x, x) == u.zero()
    assert qcomm(u.E(1), u.F(1)) == u.E(1) * u.F(1) - u.F(1) * u.E(1)
    assert qcomm(u.E(1), u.F(1), qexp=1) == u.E(1) * u.F(1) - (u.F(1) * u.E(1)).scale_q(1)


def test_degree_split():
    u = A2
    assert set(degree_split(u.E(1) * u.F(1))) == {(0, 0)}
    assert set(degree_split(u.F(0))) == {(1, 1)}
    assert set(degree_split(u.E(0))) == {(-1, -1)}
    parts = degree_split(u.E(1) + u.F(2))
    assert set(parts) == {(1, 0), (0, -1)}
    assert parts[(1, 0)] + parts[(0, -1)] == u.E(1) + u.F(2)


def test_divided_powers():
    u = A1
    e = Generator("E", 1)
    assert divided_power(u, e, 0) == u.one()
    assert divided_power(u, e, 1) == u.E(1)
    assert divided_power(u, e, 2) == (u.E(1) * u.E(1)).scale(EXACT.inv(qfactorial(2, 1)))
    with pytest.raises(ValueError):
        divided_power(u, Generator("Kpow", 0, (1, 0)), 2)


def test_substitute_B_choices():
    b = BAlgebra(A2.datum)
    tE1 = substitute_B(b.B(1), A2, "E")
    assert tE1 == A2.tE(1)
    assert tE1 == (A2.KK(1) * A2.E(1) * A2.K(1, -1)).scale_q(-2).scale(EXACT.from_int(-1))
    assert substitute_B(b.B(1), A2, "F") == A2.F(1)


def test_six_homogeneous_types():
    b = BAlgebra(A2.datum)
    p = b.B(2) * b.B(2) * b.B(1)
    types = {t for t, e in expand_substitutions(p, A2)}
    assert len(types) == 6
    assert len(subterm_decompose(p, A2)) == 6


@pytest.mark.parametrize("field", [EXACT, ModularField(qv=987654321)], ids=["exact", "prob"])
def test_sexpr_round_trip(field):
    u = UqAlgebra(root_datum("B", 2), field)
    x = qcomm(u.tE(1), u.F(2) * u.K(0, -1), qexp=2) + u.KK(2) * u.F(0) * u.E(2)
    x = x + divided_power(u, Generator("F", 1), 2)
    text = x.to_sexpr()
    y = parse_sexpr(u, text)
    assert y == x
    assert y.to_sexpr() == text
    with pytest.raises(ValueError):
        parse_sexpr(u, "(add (mul (E 1)")


def test_sexpr_hand_written_forms():
    u = A1
    x = parse_sexpr(u, "(add (qcomm (E 1) (F 1) (qpow 2)) (neg (scalar (qint 2 1))))")
    assert x == qcomm(u.E(1), u.F(1), qexp=2) - u.scalar(qfactorial(2, 1))


# properties ------------------------------------------------------------------

letters = st.lists(
    st.one_of(
        st.tuples(st.sampled_from("EF"), st.integers(0, 4)),
        st.tuples(st.just("K"), st.tuples(*[st.integers(-1, 1)] * 5)),
    ),
    min_size=1,
    max_size=7,
)


def _letter(u, t):
    kind, x = t
    return {"E": u.E, "F": u.F}[kind](x) if kind in "EF" else u.K(x)


def _direct(u, seq):
    """The K-right form of a letter sequence computed in one pass."""
    word, k, e = [], [0] * u.size, 0
    for pos, (kind, x) in enumerate(seq):
        if kind == "K":
            rest = tuple((x + 1) if kd == "E" else -(x + 1) for kd, x in seq[pos + 1:] if kd != "K")
            e += u.pair(x, u.word_weight(rest))
            k = [a + b for a, b in zip(k, x)]
        else:
            word.append((x + 1) if kind == "E" else -(x + 1))
    return u.element({(tuple(word), u.canon_k(k), u.zero_vec): EXACT.qpow(e)})


@PROPS
@given(letters, st.randoms(use_true_random=False))
def test_k_normalisation_is_confluent(seq, rnd):
    u = D4
    elems = [_letter(u, t) for t in seq]
    while len(elems) > 1:
        p = rnd.randrange(len(elems) - 1)
        elems[p:p + 2] = [elems[p] * elems[p + 1]]
    assert elems[0] == _direct(u, seq)


small = st.lists(st.tuples(st.sampled_from("EF"), st.integers(0, 2)), min_size=1, max_size=3)


@PROPS
@given(small, small, small)
def test_mul_associative_and_degree_additive(a, b, c):
    u = A2
    x, y, z = (_direct(u, s) + u.one() for s in (a, b, c))
    assert (x * y) * z == x * (y * z)
    dx, dy = _direct(u, a), _direct(u, b)
    (gx,), (gy,) = dx.degrees(), dy.degrees()
    assert (dx * dy).degrees() == {tuple(p + q for p, q in zip(gx, gy))}


@PROPS
@given(st.lists(st.integers(0, 2), min_size=1, max_size=4), st.integers(0, 2))
def test_substitutions_sum_to_eta(word, extra):
    b = BAlgebra(A2.datum)
    p = b.one()
    for j in word:
        p = p * b.B(j)
    p = p + b.KK(extra) * b.B(extra)
    total = A2.zero()
    for _, e in expand_substitutions(p, A2):
        total = total + e
    assert triangular_form(total) == eta(p, A2, canonical=False)
