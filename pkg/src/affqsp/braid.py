"""Braid group actions.

* Lusztig's automorphisms ``T_i``, ``T_lambda`` of the quantum loop algebra
  (extended to the central KK's by ``T_i(KK_mu) = KK_{s_i mu}``);
* the automorphisms ``TT_i``, ``TT_lambda`` of the universal iquantum group,
  acting on polynomials in ``B_0 .. B_n`` with no relations imposed.

For a word ``w = l_1 ... l_r`` the operator is ``T_{l_1} ... T_{l_r}``.  Images
of generators are computed recursively: when a suffix ``v`` of the word
sends ``alpha_j`` to a simple root ``alpha_k`` the image of the ``j``-th
generator under ``T_v`` is the ``k``-th generator; otherwise the last letter
is peeled off and the prefix images are substituted into the one-letter
image.  ``shortcut=False`` disables the first rule.
"""
from __future__ import annotations

from typing import Sequence

from .freealg import AlgElement, BAlgebra, UqAlgebra, divided_power
from .scalars import qint
from .uq import normal_form, triangular_form
from .weyl import Pi, RootDatum, WeylWord, is_positive_simple, is_reduced, root_matrix

__all__ = [
    "NonReducedWord",
    "lusztig_T",
    "lusztig_T_word",
    "qsp_T",
    "qsp_T_word",
    "BraidAction",
    "qsp_T_word_embedded",
]


class NonReducedWord(ValueError):
    pass


def _as_word(w) -> WeylWord:
    if isinstance(w, WeylWord):
        return w
    if isinstance(w, str):
        return WeylWord.parse(w)
    if isinstance(w, (int, Pi)):
        return WeylWord([w])
    return WeylWord(w)


def _matvec(m, v):
    return tuple(sum(m[r][k] * v[k] for k in range(len(v)) if v[k]) for r in range(len(m)))


def _simple_suffix(datum: RootDatum, letters: tuple, j: int):
    """Longest suffix ``v`` of the word with ``v alpha_j`` simple: ``(start, k)`` or None."""
    beta = datum.simple_root(j)
    best = None
    for p in range(len(letters) - 1, -1, -1):
        beta = _matvec(root_matrix(datum, [letters[p]]), beta)
        if sum(beta) == 1 and is_positive_simple(beta):
            best = (p, beta.index(1))
    return best


class BraidAction:
    """Shared machinery for both braid actions on one algebra."""

    def __init__(self, alg, shortcut: bool = True):
        self.alg = alg
        self.datum: RootDatum = alg.datum
        self.shortcut = shortcut
        self._images: dict = {}
        self._letter_images: dict = {}

    # one-letter images ---------------------------------------------------------
    def letter_image(self, x, gen: int) -> AlgElement:
        """Image of a single generator letter under the operator of one braid letter."""
        key = (x, gen)
        hit = self._letter_images.get(key)
        if hit is None:
            hit = self._compute_letter_image(x, gen)
            self._letter_images[key] = hit
        return hit

    def _compute_letter_image(self, x, gen):
        raise NotImplementedError

    def _letter_for(self, gen: int, j: int) -> int:
        """The generator letter of the same kind as ``gen`` attached to node ``j``."""
        raise NotImplementedError

    def _node(self, gen: int) -> int:
        raise NotImplementedError

    def _normalize(self, x: AlgElement) -> AlgElement:
        return x

    # images under words ---------------------------------------------------------
    def generator_image(self, letters: tuple, gen: int) -> AlgElement:
        key = (letters, gen)
        hit = self._images.get(key)
        if hit is not None:
            return hit
        alg = self.alg
        if not letters:
            out = alg.element({((gen,),) + alg.unit_key[1:]: alg.field.one})
            self._images[key] = out
            return out
        j = self._node(gen)
        best = _simple_suffix(self.datum, letters, j) if self.shortcut else None
        if best is not None:
            p, k = best
            out = self.generator_image(letters[:p], self._letter_for(gen, k))
            self._images[key] = out
            return out
        head, last = letters[:-1], letters[-1]
        out = self.apply_letters(head, self.letter_image(last, gen))
        self._images[key] = out
        return out

    def apply_letters(self, letters: tuple, x: AlgElement) -> AlgElement:
        """Apply ``T_{letters}`` to an element by substituting generator images."""
        if not letters:
            return x
        alg = self.alg
        m = root_matrix(self.datum, letters)
        out = alg.zero()
        memo: dict = {(): alg.one()}
        for (word, k, cen), c in x.terms.items():
            p = len(word)
            while word[:p] not in memo:
                p -= 1
            acc = memo[word[:p]]
            for t in range(p, len(word)):
                acc = self._normalize(acc * self.generator_image(letters, word[t]))
                memo[word[: t + 1]] = acc
            tail = self._cartan_central(m, k, cen)
            out = out + (acc * tail).scale(c)
        return self._normalize(out)

    def _cartan_central(self, m, k, cen) -> AlgElement:
        alg = self.alg
        cen2 = _matvec(m, cen) if any(cen) else cen
        if isinstance(alg, UqAlgebra):
            k2 = alg.canon_k(_matvec(m, k)) if any(k) else k
            return alg.element({((), k2, cen2): alg.field.one})
        return alg.element({((), (), cen2): alg.field.one})

    def apply(self, w, x: AlgElement, check_reduced: bool = True) -> AlgElement:
        w = _as_word(w)
        w.validate(self.datum)
        if check_reduced and not is_reduced(self.datum, w):
            raise NonReducedWord(f"{w} is not reduced")
        return self.apply_letters(w.letters, x)


# ---------------------------------------------------------------------------
# Lusztig's action on the quantum loop algebra
# ---------------------------------------------------------------------------


class LusztigAction(BraidAction):
    """Lusztig's operators; ``canonical`` keeps intermediate results in normal form."""

    def __init__(self, alg: UqAlgebra, shortcut: bool = True, canonical: bool = True):
        if not isinstance(alg, UqAlgebra):
            raise TypeError("Lusztig's action lives on the quantum group side")
        super().__init__(alg, shortcut)
        self.canonical = canonical

    def _node(self, gen):
        return abs(gen) - 1

    def _letter_for(self, gen, j):
        return j + 1 if gen > 0 else -(j + 1)

    def _normalize(self, x):
        return normal_form(x) if self.canonical else triangular_form(x)

    def _compute_letter_image(self, x, gen):
        alg: UqAlgebra = self.alg
        datum = self.datum
        j = abs(gen) - 1
        if isinstance(x, Pi):
            t = datum.fundamental_group[x.j][j]
            return alg.E(t) if gen > 0 else alg.F(t)
        i = x
        f = alg.field
        if j == i:
            if gen > 0:
                return -(alg.F(i) * alg.K(i, 1))
            return -(alg.K(i, -1) * alg.E(i))
        a = datum.cartan[j][i]
        di = datum.d[i]
        out = alg.zero()
        for r in range(-a + 1):
            s = -a - r
            sign = -1 if r % 2 else 1
            if gen > 0:
                ei = alg.E(i)
                term = (_dp(alg, ei, s, di) * alg.E(j) * _dp(alg, ei, r, di)).scale_q(-r * di)
            else:
                fi = alg.F(i)
                term = (_dp(alg, fi, r, di) * alg.F(j) * _dp(alg, fi, s, di)).scale_q(r * di)
            out = out + (term if sign > 0 else -term)
        return out


def _dp(alg, x, r, d):
    return divided_power(alg, x, r, d)


_LUSZTIG: dict = {}
_QSP: dict = {}


def _lusztig(alg: UqAlgebra, shortcut: bool, canonical: bool = True) -> LusztigAction:
    key = (alg, shortcut, canonical)
    act = _LUSZTIG.get(key)
    if act is None:
        act = LusztigAction(alg, shortcut, canonical)
        _LUSZTIG[key] = act
    return act


def lusztig_T(i, a: AlgElement) -> AlgElement:
    """One braid letter (``int`` for ``T_i`` or :class:`Pi`) applied to ``a``."""
    return _lusztig(a.alg, True).apply_letters((i,), a)


def lusztig_T_word(w, a: AlgElement, shortcut: bool = True, check_reduced: bool = True,
                   canonical: bool = True) -> AlgElement:
    """``T_w(a)`` for a reduced word ``w``.

    The result is in normal form, or only in triangular form when
    ``canonical=False`` (slower on long words, but independent of the
    spanning sets behind the normal form).
    """
    return _lusztig(a.alg, shortcut, canonical).apply(w, a, check_reduced)


# ---------------------------------------------------------------------------
# QSP action on B-polynomials
# ---------------------------------------------------------------------------


class QSPAction(BraidAction):
    def __init__(self, alg: BAlgebra, shortcut: bool = True):
        if not isinstance(alg, BAlgebra):
            raise TypeError("the QSP action lives on B-polynomials")
        super().__init__(alg, shortcut)

    def _node(self, gen):
        return gen

    def _letter_for(self, gen, j):
        return j

    def _compute_letter_image(self, x, j):
        alg: BAlgebra = self.alg
        datum = self.datum
        if isinstance(x, Pi):
            return alg.B(datum.fundamental_group[x.j][j])
        i = x
        f = alg.field
        B = alg.B
        di = datum.d[i]
        if i == j:
            return alg.KK(j, -1) * B(j)
        a = datum.cartan[j][i]
        bi, bj = B(i), B(j)
        if a == 0:
            return bj
        if a == -1:
            return bj * bi - (bi * bj).scale_q(di)
        q2 = f.from_ratfunc(qint(2, di))
        if a == -2:
            inner = (bj * bi * bi) - (bi * bj * bi).scale(f.mulq(q2, di)) + (bi * bi * bj).scale_q(2 * di)
            return inner.scale(f.inv(q2)) + bj * alg.KK(i, 1)
        if a == -3:
            q3 = f.from_ratfunc(qint(3, di))
            kk = alg.KK(i, 1)
            br3 = bj * bi - (bi * bj).scale_q(3 * di)
            br1 = bj * bi - (bi * bj).scale_q(di)
            inner = (bj * bi ** 3
                     - (bi * bj * bi * bi).scale(f.mulq(q3, di))
                     + (bi * bi * bj * bi).scale(f.mulq(q3, 2))
                     - (bi ** 3 * bj).scale_q(3 * di)
                     + (br3 * kk).scale_q(-di))
            return inner.scale(f.inv(f.mul(q3, q2))) + br1 * kk
        raise ValueError(f"unsupported Cartan entry {a}")


def _qsp(alg: BAlgebra, shortcut: bool) -> QSPAction:
    key = (alg, shortcut)
    act = _QSP.get(key)
    if act is None:
        act = QSPAction(alg, shortcut)
        _QSP[key] = act
    return act


def qsp_T(i, p: AlgElement) -> AlgElement:
    """One QSP braid letter applied to a B-polynomial."""
    return _qsp(p.alg, True).apply_letters((i,), p)


def qsp_T_word(w, p: AlgElement, shortcut: bool = True, check_reduced: bool = True,
               factorization: Sequence | None = None) -> AlgElement:
    """``TT_w(p)`` for a reduced word ``w``.

    ``factorization`` may give words ``(zeta, tau)`` with ``w = zeta tau``; the
    factors are then applied one after the other.  The result is the same.
    """
    act = _qsp(p.alg, shortcut)
    if factorization is not None:
        w = _as_word(w)
        parts = [_as_word(x) for x in factorization]
        joined = WeylWord(l for part in parts for l in part.letters)
        if joined != w:
            raise ValueError("factorization does not multiply to the word")
        if check_reduced and not is_reduced(act.datum, w):
            raise NonReducedWord(f"{w} is not reduced")
        for part in reversed(parts):
            p = act.apply(part, p, check_reduced=False)
        return p
    return act.apply(w, p, check_reduced)


# ---------------------------------------------------------------------------
# QSP action pushed into the quantum group
# ---------------------------------------------------------------------------


class EmbeddedQSPAction:
    """``TT_w(B_j)`` computed directly as its image under ``B_j -> F_j + tE_j``.

    One-letter images are the B-polynomials of :class:`QSPAction`; the images
    of their letters under the remaining prefix are substituted as elements
    of the quantum group and brought to normal form after every product.
    This never forms the (much longer) B-polynomial of the whole word.
    """

    def __init__(self, uq: UqAlgebra, shortcut: bool = True):
        self.uq = uq
        self.datum = uq.datum
        self.shortcut = shortcut
        self.qsp = _qsp(BAlgebra(uq.datum, uq.field), shortcut)
        self._images: dict = {}

    def generator_image(self, letters: tuple, j: int) -> AlgElement:
        key = (letters, j)
        hit = self._images.get(key)
        if hit is not None:
            return hit
        uq = self.uq
        if not letters:
            out = normal_form(uq.F(j) + uq.tE(j))
        else:
            best = _simple_suffix(self.datum, letters, j) if self.shortcut else None
            if best is not None:
                out = self.generator_image(letters[:best[0]], best[1])
            else:
                out = self.substitute(letters[:-1], self.qsp.letter_image(letters[-1], j))
        self._images[key] = out
        return out

    def substitute(self, letters: tuple, p: AlgElement) -> AlgElement:
        """Image of ``TT_{letters}(p)`` for a B-polynomial ``p``."""
        uq = self.uq
        m = root_matrix(self.datum, letters) if letters else None
        out = uq.zero()
        memo: dict = {(): uq.one()}
        for (word, _, cen), c in p.terms.items():
            q = len(word)
            while word[:q] not in memo:
                q -= 1
            acc = memo[word[:q]]
            for t in range(q, len(word)):
                acc = normal_form(acc * self.generator_image(letters, word[t]))
                memo[word[: t + 1]] = acc
            cen2 = _matvec(m, cen) if (m is not None and any(cen)) else cen
            c2 = c if p.alg.field == uq.field else uq.field.from_ratfunc(p.alg.field.to_ratfunc(c))
            out = out + (acc * uq.KK(cen2)).scale(c2)
        return normal_form(out)


_EMBEDDED: dict = {}


def qsp_T_word_embedded(w, j: int, uq: UqAlgebra, shortcut: bool = True,
                        check_reduced: bool = True) -> AlgElement:
    """Normal form of the image of ``TT_w(B_j)`` under ``B -> F + tE``."""
    w = _as_word(w)
    w.validate(uq.datum)
    if check_reduced and not is_reduced(uq.datum, w):
        raise NonReducedWord(f"{w} is not reduced")
    key = (uq, shortcut)
    act = _EMBEDDED.get(key)
    if act is None:
        act = EmbeddedQSPAction(uq, shortcut)
        _EMBEDDED[key] = act
    return act.generator_image(w.letters, j)
