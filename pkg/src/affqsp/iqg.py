"""The iquantum side.

Polynomials in ``B_0 .. B_n`` are pushed into the quantum loop algebra by
``B_j -> F_j + tE_j``; everything here is built on that map:

* iterated q-brackets (right- and left-nested) and the three-term
  divided-power polynomials;
* closed forms for ``TT_{w}(B_i)`` along the fundamental-weight words with
  the final reflection removed, in types A, B, C, D;
* the split of a polynomial into subterms by (tE, F) bidegree and the
  i-goodness checker built on it;
* the weak compatibility congruence, the correction term ``Q_i`` and the
  finite identities used for the strong version in type D;
* the rank-two braid identities and the chain identities.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .braid import lusztig_T_word, qsp_T_word, qsp_T_word_embedded
from .freealg import AlgElement, BAlgebra, UqAlgebra, divided_power, qcomm
from .scalars import EXACT
from .uq import DEFAULT_CAP, _append_letter, in_positive_subalgebra, is_zero, normal_form, triangular_form
from .weyl import RootDatum, WeylWord, interval, omega_prime_word, root_datum, tau_word

__all__ = [
    "SubtermType",
    "GoodPolyReport",
    "eta",
    "preimage",
    "qsp_image",
    "bracket_right",
    "bracket_left",
    "P_k",
    "Pprime_k",
    "boldP",
    "hatP",
    "omega_prime_polynomial",
    "omega_prime_target",
    "subterm_decompose",
    "check_i_good",
    "weak_compat_check",
    "weak_compat_report",
    "extract_Qi",
    "qi_membership",
    "verify_section8_identities",
    "verify_fe_vanishing",
    "verify_rank_two_braid",
    "chains",
    "verify_chain_identities",
]


# ---------------------------------------------------------------------------
# substitution B_j -> F_j / tE_j, computed directly in triangular form
# ---------------------------------------------------------------------------


def _uq_for(p: AlgElement, uq: UqAlgebra | None) -> UqAlgebra:
    if uq is not None:
        return uq
    return UqAlgebra(p.alg.datum, p.alg.field)


def _append_tE(uq: UqAlgebra, tri: dict, j: int) -> dict:
    """Right-multiply a triangular dict by ``E_j K_j^{-1}`` times ``-q_j^{-2}``.

    The central factor of ``tE_j`` is tracked by the caller.
    """
    f = uq.field
    coeff = f.neg(f.qpow(-2 * uq.datum.d[j]))
    t = _append_letter(uq, tri, j + 1)
    out = {}
    for (fw, ew, k), c in t.items():
        k2 = list(k)
        k2[j] -= 1
        out[(fw, ew, uq.canon_k(k2))] = f.mul(c, coeff)
    return out


def _add_into(f, acc: dict, src: dict, scale):
    zero = f.zero
    for key, c in src.items():
        v = f.mul(c, scale) if scale is not None else c
        w = acc.get(key)
        if w is not None:
            v = f.add(w, v)
        if v == zero:
            acc.pop(key, None)
        else:
            acc[key] = v


def _charge_central(lab: tuple, m: tuple) -> tuple:
    """Count a central factor ``KK_j^k`` (k > 0) as k letters tE_j and k letters F_j.

    ``KK_j`` is what ``tE_j F_j - F_j tE_j`` leaves behind, so it has the same
    bidegree as that pair; without this, terms that cancel against such a
    commutator would land in a different subterm.
    """
    if not any(m):
        return lab
    out = list(lab)
    for j, k in enumerate(m):
        if k > 0:
            out[2 * j] += k
            out[2 * j + 1] += k
    return tuple(out)


def _expand(p: AlgElement, uq: UqAlgebra, by_type: bool) -> dict:
    """Sum over all choices ``B_j -> tE_j | F_j``, grouped by a label.

    With ``by_type`` the label is the flattened subterm type
    ``(d_0^+, d_0^-, d_1^+, ...)``, with the polynomial's own central
    factors charged as in :func:`_charge_central`; otherwise it is the
    vector of tE counts,
    which is all that is needed to place the central factors.  Values are
    triangular dicts keyed ``(fw, ew, k)``.  Prefix states are shared across
    the words of ``p``.
    """
    if p.alg.kind != "B":
        raise TypeError("expected a polynomial in the B generators")
    size = uq.size
    f = uq.field
    zero_label = (0,) * (2 * size if by_type else size)
    start = {zero_label: {((), (), uq.zero_vec): f.one}}
    memo: dict[tuple, dict] = {(): start}

    def state(word):
        hit = memo.get(word)
        if hit is not None:
            return hit
        prev = state(word[:-1])
        j = word[-1]
        out: dict = {}
        for lab, tri in prev.items():
            for plus in (True, False):
                nl = list(lab)
                if by_type:
                    nl[2 * j + (0 if plus else 1)] += 1
                elif plus:
                    nl[j] += 1
                nl = tuple(nl)
                t = _append_tE(uq, tri, j) if plus else _append_letter(uq, tri, -(j + 1))
                dst = out.setdefault(nl, {})
                _add_into(f, dst, t, None)
        memo[word] = out
        return out

    src_f = p.alg.field
    totals: dict = {}
    for (word, _, m), c in p.terms.items():
        c2 = c if src_f == f else f.from_ratfunc(src_f.to_ratfunc(c))
        for lab, tri in state(word).items():
            plus = lab[0::2] if by_type else lab
            cen = tuple(a + b for a, b in zip(m, plus))
            if by_type:
                lab = _charge_central(lab, m)
            dst = totals.setdefault(lab, {})
            for (fw, ew, k), v in tri.items():
                key = (fw + ew, k, cen)
                w = f.mul(v, c2)
                old = dst.get(key)
                if old is not None:
                    w = f.add(old, w)
                if w == f.zero:
                    dst.pop(key, None)
                else:
                    dst[key] = w
    return totals


def eta(p: AlgElement, uq: UqAlgebra | None = None, canonical: bool = True) -> AlgElement:
    """Image of a B-polynomial under ``B_j -> F_j + tE_j``.

    Central ``KK`` factors map to themselves.  The result is in normal form,
    or only in triangular form with ``canonical=False``.  Elements already on
    the quantum group side are just normalised.
    """
    norm = normal_form if canonical else triangular_form
    if p.alg.kind == "U":
        return norm(p)
    uq = _uq_for(p, uq)
    acc: dict = {}
    for terms in _expand(p, uq, by_type=False).values():
        _add_into(uq.field, acc, terms, None)
    out = AlgElement(uq, acc)
    return normal_form(out) if canonical else out


def _lift_pure_f(u: AlgElement, balg: BAlgebra) -> tuple[int, AlgElement]:
    """Top-length part of the E-free, Cartan-free terms of ``u``, with ``F_j -> B_j``."""
    zero_k = u.alg.zero_vec
    pure = [(w, m, c) for (w, k, m), c in u.terms.items() if k == zero_k and all(x < 0 for x in w)]
    if not pure:
        return -1, balg.zero()
    top = max(len(w) for w, _, _ in pure)
    terms = {}
    for w, m, c in pure:
        if len(w) == top:
            terms[(tuple(-x - 1 for x in w), (), m)] = c
    return top, balg.element(terms)


def preimage(u: AlgElement, balg: BAlgebra | None = None) -> AlgElement:
    """The canonical B-polynomial mapping to ``u`` under ``eta``.

    Reading off the E-free, Cartan-free part of ``u`` is injective on the
    image of ``eta``, with leading term the B-word itself; peeling off the
    longest such words one length at a time recovers a B-polynomial in
    standard words.  Raises ``ValueError`` when ``u`` is not in the image.
    """
    uq = u.alg
    balg = balg or BAlgebra(uq.datum, uq.field)
    rest = normal_form(u)
    out = balg.zero()
    last = None
    while rest.terms:
        top, piece = _lift_pure_f(rest, balg)
        if top < 0 or (last is not None and top >= last):
            raise ValueError("element is not in the image of the B generators")
        out = out + piece
        rest = normal_form(rest - eta(piece, uq))
        last = top
    return out


def qsp_image(w, i: int, uq: UqAlgebra, reduce: bool = True) -> tuple[AlgElement, AlgElement]:
    """``TT_w(B_i)`` applied one letter at a time from the right.

    Returns ``(polynomial, image)``: a B-polynomial for the result and its
    normal form under ``eta``.  With ``reduce`` the polynomial is replaced by
    its canonical preimage after every letter, which keeps it of the size
    of the answer instead of the size of the formal expansion.
    """
    from .braid import _as_word, _qsp
    w = _as_word(w)
    balg = BAlgebra(uq.datum, uq.field)
    act = _qsp(balg, True)
    x = balg.B(i)
    for letter in reversed(w.letters):
        x = act.apply_letters((letter,), x)
        if reduce:
            x = preimage(eta(x, uq), balg)
    return x, eta(x, uq)


# ---------------------------------------------------------------------------
# iterated brackets and the three-term polynomials
# ---------------------------------------------------------------------------


def _exponents(qexp, k: int) -> list[int]:
    if isinstance(qexp, int):
        return [qexp] * (k - 1)
    qexp = list(qexp)
    if len(qexp) != k - 1:
        raise ValueError(f"need {k - 1} bracket exponents, got {len(qexp)}")
    return qexp


def bracket_right(args: Sequence[AlgElement], qexp: int | Sequence[int] = 1) -> AlgElement:
    """``[y_1, [y_2, ... [y_{k-1}, y_k]_v ...]_v]_v`` with ``v = q^qexp``.

    ``qexp`` may also list one exponent per bracket, outermost first.
    """
    args = list(args)
    if not args:
        raise ValueError("at least one argument is required")
    ex = _exponents(qexp, len(args))
    acc = args[-1]
    for y, e in zip(reversed(args[:-1]), reversed(ex)):
        acc = qcomm(y, acc, qexp=e)
    return acc


def bracket_left(args: Sequence[AlgElement], qexp: int | Sequence[int] = 1) -> AlgElement:
    """``[[... [y_1, y_2]_v, ...]_v, y_k]_v``; ``qexp`` per bracket, innermost first."""
    args = list(args)
    if not args:
        raise ValueError("at least one argument is required")
    ex = _exponents(qexp, len(args))
    acc = args[0]
    for y, e in zip(args[1:], ex):
        acc = qcomm(acc, y, qexp=e)
    return acc


P_k = bracket_right
Pprime_k = bracket_left


def hatP(a: AlgElement, b: AlgElement, d: int = 1, alternating: bool = True) -> AlgElement:
    """``sum_r (+-q)^r b^(2-r) a b^(r)`` with divided powers in ``q^d``.

    ``alternating=False`` drops the sign ``(-1)^r``.
    """
    alg = a.alg
    out = alg.zero()
    for r in range(3):
        t = divided_power(alg, b, 2 - r, d) * a * divided_power(alg, b, r, d)
        t = t.scale_q(r)
        out = out + (-t if alternating and r == 1 else t)
    return out


def boldP(i: int, a: AlgElement, b: AlgElement, d: int = 1, alternating: bool = True) -> AlgElement:
    """``hatP(a, b) + KK_i a``."""
    return hatP(a, b, d, alternating) + a.alg.KK(i) * a


# ---------------------------------------------------------------------------
# closed forms along the omega'_i words
# ---------------------------------------------------------------------------


def _closed_form(datum: RootDatum, i: int, letter: Callable[[int], AlgElement],
                 three_term: Callable[[int, AlgElement, AlgElement], AlgElement]) -> AlgElement:
    n, fam = datum.n, datum.family
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range 1..{n}")
    y = letter
    down = lambda hi, lo: [y(j) for j in range(hi, lo - 1, -1)]  # noqa: E731
    up = lambda lo, hi: [y(j) for j in range(lo, hi + 1)]  # noqa: E731
    if fam == "A":
        return bracket_right(down(i - 1, 1) + [bracket_right(up(i + 1, n) + [y(0)])])
    if fam == "D":
        if i <= n - 2:
            if i % 2 == 0:
                inner = bracket_right([y(n)] + down(n - 2, 2) + [y(0)])
                middle = up(i + 1, n - 1)
            else:
                inner = bracket_right([y(n - 1)] + down(n - 2, 2) + [y(0)])
                middle = up(i + 1, n - 2) + [y(n)]
            return bracket_right(down(i - 1, 1) + [bracket_right(middle + [inner])])
        head = n if i == n - 1 else n - 1
        inner = bracket_right([y(head)] + down(n - 2, 2) + [y(0)])
        return bracket_right(down(n - 2, 1) + [inner])
    if fam == "B":
        if i < n:
            inner = three_term(n, bracket_right(down(n - 1, 2) + [y(0)], 2), y(n))
            return bracket_right(down(i - 1, 1) + [bracket_right(up(i + 1, n - 1) + [inner], 2)], 2)
        return bracket_right(down(n - 1, 1) + [bracket_right(down(n, 2) + [y(0)], 2)], 2)
    if fam == "C":
        if i < n:
            # brackets between short neighbours use q, the one against B_0 uses q^2
            chain = bracket_right(down(n - 1, 1) + [y(0)], [1] * (n - 2) + [2])
            inner = qcomm(y(n), chain, qexp=2)
            return bracket_right(down(i - 1, 1) + [bracket_right(up(i + 1, n - 1) + [inner])])
        acc = three_term(1, y(0), y(1))
        for k in range(2, n):
            acc = three_term(k, acc, y(k))
        return acc
    raise ValueError(f"unsupported family {fam!r}")


def omega_prime_polynomial(datum: RootDatum, i: int, field=EXACT) -> AlgElement:
    """Nested bracket expression for the QSP braid image of ``B_i`` along ``omega'_i``."""
    alg = BAlgebra(datum, field)
    return _closed_form(datum, i, alg.B, lambda k, a, b: boldP(k, a, b, datum.d[k]))


def omega_prime_target(datum: RootDatum, i: int, kind: str, uq: UqAlgebra | None = None) -> AlgElement:
    """The same nested expression in ``tE`` letters (``kind="E"``) or ``F`` letters.

    Three-term polynomials lose their central tail.  These are the expected
    images of ``tE_i`` and ``F_i`` under Lusztig's operator of ``omega'_i``.
    """
    uq = uq or UqAlgebra(datum)
    if kind == "E":
        letter = uq.tE
    elif kind == "F":
        letter = uq.F
    else:
        raise ValueError("kind must be 'E' or 'F'")
    return triangular_form(_closed_form(datum, i, letter, lambda k, a, b: hatP(a, b, datum.d[k])))


# ---------------------------------------------------------------------------
# subterms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SubtermType:
    """Numbers of tE_j and F_j letters in a subterm, one pair per node."""

    d: tuple[tuple[int, int], ...]

    @classmethod
    def from_flat(cls, flat: Sequence[int]) -> "SubtermType":
        return cls(tuple((flat[2 * j], flat[2 * j + 1]) for j in range(len(flat) // 2)))

    def plus(self, j: int) -> int:
        return self.d[j][0]

    def minus(self, j: int) -> int:
        return self.d[j][1]

    @property
    def is_mixed(self) -> bool:
        return any(p for p, _ in self.d) and any(m for _, m in self.d)

    @property
    def total_degree(self) -> int:
        return sum(p + m for p, m in self.d)

    def finite_load(self) -> tuple[int, ...]:
        """``sum_{j >= 1} (d_j^+ + d_j^-) alpha_j`` in simple-root coordinates."""
        return tuple(p + m for p, m in self.d[1:])

    def __str__(self):
        parts = []
        for j, (p, m) in enumerate(self.d):
            if p:
                parts.append(f"E{j}^{p}" if p > 1 else f"E{j}")
            if m:
                parts.append(f"F{j}^{m}" if m > 1 else f"F{j}")
        return "·".join(parts) or "1"


def subterm_decompose(p: AlgElement, uq: UqAlgebra | None = None) -> dict[SubtermType, AlgElement]:
    """Split the image of ``p`` by how many tE_j / F_j letters were chosen.

    Each piece is in triangular form; types whose piece cancels structurally
    are omitted.  The pieces sum to ``eta(p)``.
    """
    uq = _uq_for(p, uq)
    out = {}
    for lab, terms in _expand(p, uq, by_type=True).items():
        if terms:
            out[SubtermType.from_flat(lab)] = AlgElement(uq, terms)
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# i-goodness
# ---------------------------------------------------------------------------


@dataclass
class GoodPolyReport:
    i: int
    mixed: list = dc_field(default_factory=list)  # (type string, vanishes)
    degree_bound: bool = True
    degree_violations: list = dc_field(default_factory=list)
    plus_match: bool = False
    minus_minus_match: bool = False
    minus_minus_type: str | None = None
    braid_cross_check: bool | None = None
    notes: list = dc_field(default_factory=list)

    @property
    def mixed_vanish(self) -> bool:
        return all(ok for _, ok in self.mixed)

    @property
    def passed(self) -> bool:
        ok = self.mixed_vanish and self.degree_bound and self.plus_match and self.minus_minus_match
        return ok and self.braid_cross_check is not False

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "pass": self.passed,
            "mixed_vanish": self.mixed_vanish,
            "mixed": [{"type": t, "vanishes": ok} for t, ok in self.mixed],
            "degree_bound": self.degree_bound,
            "degree_violations": self.degree_violations,
            "plus_match": self.plus_match,
            "minus_minus_match": self.minus_minus_match,
            "minus_minus_type": self.minus_minus_type,
            "braid_cross_check": self.braid_cross_check,
            "notes": list(self.notes),
        }


def _sum(uq, elems):
    acc = uq.zero()
    for e in elems:
        acc = acc + e
    return acc


def _split_plus_minus(subs: dict):
    for t in subs:
        if t.plus(0) + t.minus(0) != 1:
            raise ValueError(f"subterm {t} does not carry exactly one B_0")
    plus = {t: e for t, e in subs.items() if t.plus(0) == 1}
    minus = {t: e for t, e in subs.items() if t.minus(0) == 1}
    return plus, minus


def _minus_minus(subs: dict, cap: int):
    """The all-F subterms of maximal total degree among the nonzero ones."""
    pure = [(t, e) for t, e in subs.items() if not any(t.plus(j) for j in range(len(t.d)))]
    pure = [(t, e) for t, e in pure if not is_zero(e, cap)]
    if not pure:
        return []
    top = max(t.total_degree for t, _ in pure)
    return [(t, e) for t, e in pure if t.total_degree == top]


def check_i_good(p: AlgElement, i: int, uq: UqAlgebra | None = None, targets: tuple | None = None,
                 cross_check_braid: bool = False, cap: int = DEFAULT_CAP) -> GoodPolyReport:
    """Check the i-goodness conditions for a B-polynomial.

    ``targets`` is ``(plus_target, minus_minus_target)``; by default the
    closed forms from :func:`omega_prime_target` are used.  With
    ``cross_check_braid`` those targets are also compared with Lusztig's
    operators applied to ``tE_i`` and ``F_i``.
    """
    datum = p.alg.datum
    uq = _uq_for(p, uq)
    subs = subterm_decompose(p, uq)
    plus, minus = _split_plus_minus(subs)
    rep = GoodPolyReport(i=i)

    bound = list(datum.c[1:])
    bound[i - 1] -= 1
    for t, e in subs.items():
        load = t.finite_load()
        if any(x > b for x, b in zip(load, bound)) and not is_zero(e, cap):
            rep.degree_bound = False
            rep.degree_violations.append(str(t))

    for t, e in plus.items():
        if t.is_mixed:
            rep.mixed.append((str(t), is_zero(e, cap)))

    if targets is None:
        targets = (omega_prime_target(datum, i, "E", uq), omega_prime_target(datum, i, "F", uq))
    t_plus, t_mm = targets
    rep.plus_match = is_zero(_sum(uq, plus.values()) - t_plus, cap)

    top = _minus_minus(subs, cap)
    if len(top) == 1:
        rep.minus_minus_type = str(top[0][0])
        rep.minus_minus_match = is_zero(top[0][1] - t_mm, cap)
    elif not top:
        rep.notes.append("no nonzero all-F subterm")
    else:
        rep.notes.append("several all-F subterms share the maximal degree: " + ", ".join(str(t) for t, _ in top))

    if cross_check_braid:
        w = omega_prime_word(datum, i)
        e_img = lusztig_T_word(w, uq.tE(i))
        f_img = lusztig_T_word(w, uq.F(i))
        rep.braid_cross_check = is_zero(e_img - t_plus, cap) and is_zero(f_img - t_mm, cap)
    return rep


# ---------------------------------------------------------------------------
# weak compatibility and Q_i
# ---------------------------------------------------------------------------


def weak_compat_report(datum: RootDatum, i: int, field=EXACT, cross_check: bool = False,
                       cap: int = DEFAULT_CAP) -> dict:
    """Both sides of the congruence for ``omega'_i`` and the membership verdict.

    The left side pushes the QSP braid image of ``B_i`` through ``eta``; the
    right side applies Lusztig's operator to ``F_i`` and ``tE_i``.  With
    ``cross_check`` the QSP image is also compared with the closed form, and
    Lusztig's images with the substituted closed forms.
    """
    uq = UqAlgebra(datum, field)
    w = omega_prime_word(datum, i)
    _, lhs = qsp_image(w, i, uq)
    e_img = lusztig_T_word(w, uq.tE(i))
    f_img = lusztig_T_word(w, uq.F(i))
    rhs = e_img + f_img
    out = {
        "type": datum.name,
        "i": i,
        "word": str(w),
        "congruent": in_positive_subalgebra(lhs - rhs, "d_i_ge_r", i, 1, cap),
    }
    if cross_check:
        closed = eta(omega_prime_polynomial(datum, i, field), uq)
        out["closed_form_match"] = is_zero(lhs - closed, cap)
        out["lusztig_match"] = (is_zero(e_img - omega_prime_target(datum, i, "E", uq), cap)
                                and is_zero(f_img - omega_prime_target(datum, i, "F", uq), cap))
    out["pass"] = all(v for k, v in out.items() if k in ("congruent", "closed_form_match", "lusztig_match"))
    return out


def weak_compat_check(datum: RootDatum, i: int, field=EXACT, cross_check: bool = False,
                      cap: int = DEFAULT_CAP) -> bool:
    return weak_compat_report(datum, i, field, cross_check, cap)["pass"]


def extract_Qi(p: AlgElement, i: int, uq: UqAlgebra | None = None, check: bool = True,
               cap: int = DEFAULT_CAP) -> AlgElement:
    """``C^{-1} KK_i (P_- - P_--)`` for an i-good polynomial ``p``.

    ``C`` is the central element ``KK_delta``.  With ``check`` the
    polynomial is first run through :func:`check_i_good`.
    """
    datum = p.alg.datum
    uq = _uq_for(p, uq)
    if check:
        rep = check_i_good(p, i, uq, cap=cap)
        if not rep.passed:
            raise ValueError(f"polynomial is not {i}-good")
    subs = subterm_decompose(p, uq)
    _, minus = _split_plus_minus(subs)
    top = _minus_minus(subs, cap)
    if len(top) > 1:
        raise ValueError("maximal all-F subterm is not unique")
    diff = _sum(uq, minus.values())
    if top:
        diff = diff - top[0][1]
    cen = [-c for c in datum.delta]
    cen[i] += 1
    return triangular_form(uq.KK(cen) * diff)


def qi_membership(datum: RootDatum, i: int, field=EXACT, cap: int = DEFAULT_CAP) -> bool:
    """Whether ``Q_i`` of the closed form lies in ``U_{d_i >= 1, +}``."""
    p = omega_prime_polynomial(datum, i, field)
    q = extract_Qi(p, i, UqAlgebra(datum, field), cap=cap)
    return in_positive_subalgebra(q, "d_i_ge_r", i, 1, cap)


# ---------------------------------------------------------------------------
# finite identities behind the strong version, type D
# ---------------------------------------------------------------------------


def _monotone_choices(length: int, ascending: bool = True) -> list[tuple[str, ...]]:
    """Sign patterns over ``length`` slots that switch at most once.

    Slots are listed in the order the arguments appear.  With ``ascending``
    the pattern is ``E..E F..F`` (tE letters first), otherwise ``F..F E..E``.
    """
    pats = []
    for cut in range(length + 1):
        first, second = ("E", "F") if ascending else ("F", "E")
        pats.append((first,) * cut + (second,) * (length - cut))
    return pats


def _letters_with(uq, indices, pattern):
    return [uq.tE(j) if s == "E" else uq.F(j) for j, s in zip(indices, pattern)]


def verify_section8_identities(datum: RootDatum, field=EXACT, cap: int = DEFAULT_CAP,
                               ascending: bool = True) -> list[dict]:
    """Finite identities for the correction terms in type D.

    * ``vanish_one``: ``[F_{n-1}, P(tE_n, tE_{n-2}, B_{n-3}, .., B_2, F_0)]_q = 0``;
    * ``vanish_two``: ``[F_{n-2}, [F_{n-1}, P(tE_n, F_{n-2}, B_{n-3}, .., B_2, F_0)]_q]_q = 0``;
    * ``commutator_i``: the commutator of the first mixed block with ``F_i``
      lies in ``U_{d_i >= 2, +}`` (``2 <= i <= n-2``);
    * ``expansion_i``: the expansion of the block with ``F_{i+1}`` into sums
      over sign patterns, with the extra block only at ``i = n-2``
      (``1 <= i <= n-2``); this fails for ``i < n-2``;
    * ``expansion_i_all_i``: the same expansion with the extra block written
      for every ``i``, which holds throughout.

    ``B`` stands for ``F + tE``.  ``ascending`` picks the order of the sign
    patterns in the expansion.
    """
    if datum.family != "D":
        raise ValueError("these identities are stated in type D")
    n = datum.n
    uq = UqAlgebra(datum, field)
    F, tE = uq.F, uq.tE
    B = lambda j: F(j) + tE(j)  # noqa: E731
    rng = lambda hi, lo: list(range(hi, lo - 1, -1))  # noqa: E731
    out = []

    inner1 = bracket_right([tE(n), tE(n - 2)] + [B(j) for j in rng(n - 3, 2)] + [F(0)])
    out.append({"id": "vanish_one", "pass": is_zero(qcomm(F(n - 1), inner1, qexp=1), cap)})
    inner2 = bracket_right([tE(n), F(n - 2)] + [B(j) for j in rng(n - 3, 2)] + [F(0)])
    x = qcomm(F(n - 2), qcomm(F(n - 1), inner2, qexp=1), qexp=1)
    out.append({"id": "vanish_two", "pass": is_zero(x, cap)})

    R = bracket_right([B(n)] + [B(j) for j in rng(n - 2, 2)] + [F(0)])
    for i in range(2, n - 1):
        mid = bracket_right([tE(i + 1)] + [B(j) for j in range(i + 2, n)] + [R])
        block = bracket_right([tE(i - 1)] + [B(j) for j in rng(i - 2, 1)] + [mid])
        c = qcomm(block, F(i), qexp=-2)
        out.append({"id": f"commutator_{i}", "i": i,
                    "pass": in_positive_subalgebra(c, "d_i_ge_r", i, 2, cap)})

    for i in range(1, n - 1):
        lhs_inner = bracket_right([B(n)] + [B(j) for j in rng(n - 2, 2)] + [F(0)])
        lhs = bracket_right([B(j) for j in rng(i - 1, 1)]
                            + [bracket_right([F(i + 1)] + [B(j) for j in range(i + 2, n)] + [lhs_inner])])
        f_tail = bracket_right([F(j) for j in range(i + 1, n)]
                               + [bracket_right([F(n)] + [F(j) for j in rng(n - 2, 2)] + [F(0)])])
        rhs = uq.zero()
        outer = rng(i - 1, 1)
        for pat in _monotone_choices(len(outer), ascending):
            rhs = rhs + bracket_right(_letters_with(uq, outer, pat) + [f_tail])
        # the extra block as displayed, present only for i = n - 2
        literal = rhs
        if i == n - 2:
            tail2 = bracket_right([tE(n), bracket_right([F(n - 1)] + [F(j) for j in rng(n - 2, 2)] + [F(0)])])
            for pat in _monotone_choices(len(outer), ascending):
                literal = literal + bracket_right(_letters_with(uq, outer, pat) + [tail2])
        out.append({"id": f"expansion_{i}", "i": i, "pass": is_zero(lhs - literal, cap)})
        # the extra block for every i: F_{i+1}, then tE along the middle and
        # down the inner bracket to node i+1, then F the rest of the way
        inner3 = bracket_right([tE(n)] + [tE(j) for j in rng(n - 2, i + 1)] + [F(j) for j in rng(i, 2)] + [F(0)])
        tail3 = bracket_right([F(i + 1)] + [tE(j) for j in range(i + 2, n)] + [inner3])
        full = rhs
        for pat in _monotone_choices(len(outer), ascending):
            full = full + bracket_right(_letters_with(uq, outer, pat) + [tail3])
        out.append({"id": f"expansion_{i}_all_i", "i": i, "pass": is_zero(lhs - full, cap)})
    return out


# ---------------------------------------------------------------------------
# rank-two braid identities
# ---------------------------------------------------------------------------


def verify_fe_vanishing(datum: RootDatum, field=EXACT, cap: int = DEFAULT_CAP) -> list[dict]:
    """For each ordered pair with ``a_ji = -1``: the three q-bracket identities."""
    uq = UqAlgebra(datum, field)
    F, tE = uq.F, uq.tE
    out = []
    for i in datum.I:
        for j in datum.I:
            if i == j or datum.cartan[j][i] != -1:
                continue
            di = datum.d[i]
            vanish = is_zero(qcomm(F(j), tE(i), qexp=di), cap)
            tf = is_zero(lusztig_T_word([i], F(j)) - qcomm(F(j), F(i), qexp=di), cap)
            te = is_zero(lusztig_T_word([i], tE(j)) - qcomm(tE(j), tE(i), qexp=di), cap)
            out.append({"i": i, "j": j, "vanish": vanish, "T_F": tf, "T_tE": te,
                        "pass": vanish and tf and te})
    return out


def verify_rank_two_braid(datum: RootDatum, field=EXACT, cap: int = DEFAULT_CAP) -> list[dict]:
    """Closed forms for ``TT_j TT_i (B_j)`` and ``T_j T_i`` of ``tE_j``, ``F_j``.

    Covers every ordered pair with ``a_ij a_ji = 2``.  B-side identities are
    compared after ``eta``.
    """
    uq = UqAlgebra(datum, field)
    balg = BAlgebra(datum, field)
    F, tE = uq.F, uq.tE
    out = []
    for i in datum.I:
        for j in datum.I:
            if i == j or datum.cartan[i][j] * datum.cartan[j][i] != 2:
                continue
            a = datum.cartan[j][i]
            di = datum.d[i]
            word = [j, i]
            b_img = eta(qsp_T_word(word, balg.B(j), check_reduced=False), uq)
            e_img = lusztig_T_word(word, tE(j), check_reduced=False)
            f_img = lusztig_T_word(word, F(j), check_reduced=False)
            if a == -2:
                b_exp = eta(boldP(i, balg.B(j), balg.B(i), di), uq)
                e_mixed = uq.KK(i) * tE(j) + hatP(tE(j), F(i) + tE(i), di)
                e_exp = hatP(tE(j), tE(i), di)
                f_exp = hatP(F(j), F(i), di)
            else:
                b_exp = eta(qcomm(balg.B(i), balg.B(j), qexp=2), uq)
                e_mixed = qcomm(F(i) + tE(i), tE(j), qexp=2)
                e_exp = qcomm(tE(i), tE(j), qexp=2)
                f_exp = qcomm(F(i), F(j), qexp=2)
            row = {
                "i": i, "j": j, "a_ji": a,
                "B": is_zero(b_img - b_exp, cap),
                "tE": is_zero(e_img - e_exp, cap),
                "tE_mixed": is_zero(e_mixed - e_exp, cap),
                "F": is_zero(f_img - f_exp, cap),
            }
            row["pass"] = all(row[k] for k in ("B", "tE", "tE_mixed", "F"))
            out.append(row)
    return out


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------


def chains(datum: RootDatum, k: int) -> list[tuple[int, ...]]:
    """All ordered chains of length ``k``: distinct nodes, consecutive ones simply joined."""
    cart = datum.cartan
    out = []

    def grow(path):
        if len(path) == k:
            out.append(tuple(path))
            return
        last = path[-1]
        for j in datum.I:
            if j not in path and cart[last][j] * cart[j][last] == 1:
                grow(path + [j])

    for s in datum.I:
        grow([s])
    return out


def verify_chain_identities(datum: RootDatum, chain: Sequence[int], field=EXACT,
                            cap: int = DEFAULT_CAP) -> list[dict]:
    """Braid images along a chain versus iterated brackets, for B, F and tE.

    First the word ``s_{c_k} .. s_{c_2}`` applied to the first node, then
    the words ``tau_l`` applied to node ``c_l``.
    """
    chain = tuple(chain)
    k = len(chain)
    uq = UqAlgebra(datum, field)
    balg = BAlgebra(datum, field)
    d = datum.d[chain[0]]
    makers = {"B": balg.B, "F": uq.F, "E": uq.tE}
    out = []

    def compare(kind, word, start, expected_nodes):
        mk = makers[kind]
        expected = expected_nodes(mk)
        if kind == "B":
            got = qsp_T_word(word, mk(start), check_reduced=False)
            ok = is_zero(eta(got, uq) - eta(expected, uq), cap)
        else:
            got = lusztig_T_word(word, mk(start), check_reduced=False)
            ok = is_zero(got - expected, cap)
        return ok

    first = WeylWord(chain[x - 1] for x in interval(k, 2).letters) if k > 1 else WeylWord()
    for kind in makers:
        ok = compare(kind, first, chain[0], lambda mk: bracket_right([mk(c) for c in chain], d))
        out.append({"chain": chain, "kind": kind, "word": "first", "pass": ok})
    for l in range(1, k + 1):
        w = tau_word(k, l, chain)

        def exp(mk, l=l):
            head = [mk(chain[x - 1]) for x in range(k, k - l + 1, -1)]
            tail = bracket_right([mk(chain[x - 1]) for x in range(1, k - l + 2)], d)
            return bracket_right(head + [tail], d)

        for kind in makers:
            out.append({"chain": chain, "kind": kind, "word": f"tau_{l}",
                        "pass": compare(kind, w, chain[l - 1], exp)})
    return out
