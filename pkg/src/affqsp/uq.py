"""Defining relations of the quantum loop algebra (with central KK's) and decision procedures.

The straightening rule ``E_i F_j = F_j E_i + delta_ij (K_i - K_i^-1)/(q_i - q_i^-1)``
brings every element to *triangular form*: a sum of terms
``(F-word)(E-word) K^k KK^m``.  By the triangular decomposition such an
element vanishes iff, for every Cartan/central part and every pair of
degrees, the tensor ``sum c f (x) e`` vanishes in ``U^- (x) U^+``, where
``U^{+-}`` are the free algebras modulo the quantum Serre relations.

To decide that we use the skew derivations ``r_i`` of the positive part
(``r_i(xy) = x r_i(y) + q^{(alpha_i, |y|)} r_i(x) y``).  For generic ``q`` an
element of positive degree of ``U^+`` vanishes iff all ``r_i`` of it vanish,
so iterating the derivations down to scalars (on both tensor factors) decides
membership in the Serre ideal.  The iteration is carried out level by level,
keeping only a basis of the span at each level.

A second, independent procedure (:class:`GradedBasisCache`) spans the graded
pieces of the Serre ideal by ``u S_ij v`` and reduces by Gaussian
elimination.  Reducing both tensor factors against these spans gives a
canonical representative (:func:`normal_form`), which keeps long braid
computations small; two elements are equal iff their normal forms agree.
"""
from __future__ import annotations

import heapq
import itertools
import random
from typing import Callable, Iterable, Sequence

from .freealg import AlgElement, UqAlgebra
from .scalars import EXACT, ModularField, qbinom
from .weyl import RootDatum

__all__ = [
    "DegreeCapExceeded",
    "Presentation",
    "GradedBasisCache",
    "triangular_form",
    "normal_form",
    "is_zero",
    "equal_mod_relations",
    "in_positive_subalgebra",
    "positive_violations",
    "serre_poly",
    "coefficient_fields",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 12


class DegreeCapExceeded(RuntimeError):
    """Raised when a word exceeds the configured E- or F-length cap."""


# ---------------------------------------------------------------------------
# coefficient fields for the two evaluation modes
# ---------------------------------------------------------------------------


def coefficient_fields(mode: str = "prob", seed: int = 0, points: int = 3) -> list:
    """Fields to evaluate a check in: one exact field, or ``points`` random specialisations."""
    if mode == "exact":
        return [EXACT]
    if mode != "prob":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    return [ModularField(qv=rng.randrange(2, (1 << 61) - 2)) for _ in range(points)]


# ---------------------------------------------------------------------------
# triangular form
# ---------------------------------------------------------------------------


def _tri_cache(alg: UqAlgebra) -> dict:
    cache = getattr(alg, "_tri_cache", None)
    if cache is None:
        cache = {(): {((), (), alg.zero_vec): alg.field.one}}
        alg._tri_cache = cache
    elif len(cache) > 50000:
        cache.clear()
        cache[()] = {((), (), alg.zero_vec): alg.field.one}
    return cache


def _append_letter(alg: UqAlgebra, tri: dict, x: int) -> dict:
    """Right-multiply a triangular sum (keys ``(fw, ew, k)``) by one E/F letter."""
    f = alg.field
    datum = alg.datum
    form = datum.form
    zero = f.zero
    out: dict = {}

    def put(key, c):
        v = out.get(key)
        if v is None:
            out[key] = c
        else:
            v = f.add(v, c)
            if v == zero:
                del out[key]
            else:
                out[key] = v

    if x > 0:
        j = x - 1
        col = [form[i][j] for i in range(alg.size)]
        for (fw, ew, k), c in tri.items():
            e = sum(ki * ci for ki, ci in zip(k, col) if ki)
            put((fw, ew + (x,), k), f.mulq(c, e) if e else c)
        return out
    j = -x - 1
    dj = datum.d[j]
    col = form[j]
    inv_gap = f.inv(f.sub(f.qpow(dj), f.qpow(-dj)))
    for (fw, ew, k), c in tri.items():
        e = -sum(ki * form[i][j] for i, ki in enumerate(k) if ki)
        c0 = f.mulq(c, e) if e else c
        put((fw + (x,), ew, k), c0)
        if j + 1 not in ew:
            continue
        cg = f.mul(c0, inv_gap)
        s = 0  # (alpha_j, weight of the E-letters to the right of position p)
        for p in range(len(ew) - 1, -1, -1):
            y = ew[p]
            if y == j + 1:
                rest = ew[:p] + ew[p + 1:]
                kp = list(k)
                kp[j] += 1
                km = list(k)
                km[j] -= 1
                put((fw, rest, alg.canon_k(kp)), f.mulq(cg, s))
                put((fw, rest, alg.canon_k(km)), f.neg(f.mulq(cg, -s)))
            s += col[y - 1]
    return out


def _triangular_word(alg: UqAlgebra, word: tuple) -> dict:
    cache = _tri_cache(alg)
    hit = cache.get(word)
    if hit is not None:
        return hit
    # longest cached prefix
    p = len(word) - 1
    while p > 0 and word[:p] not in cache:
        p -= 1
    tri = cache[word[:p]]
    for q_ in range(p, len(word)):
        tri = _append_letter(alg, tri, word[q_])
        cache[word[: q_ + 1]] = tri
    return tri


def triangular_form(a: AlgElement) -> AlgElement:
    """Rewrite every term as (F-word)(E-word) K KK using the E-F straightening rule."""
    alg = a.alg
    if alg.kind != "U":
        raise TypeError("triangular form is defined on the quantum group side")
    f = alg.field
    zero = f.zero
    out: dict = {}
    for (word, k, m), c in a.terms.items():
        if _is_triangular(word):
            key = (word, k, m)
            v = out.get(key)
            out[key] = c if v is None else f.add(v, c)
            continue
        for (fw, ew, k2), c2 in _triangular_word(alg, word).items():
            kk = alg.canon_k(tuple(x + y for x, y in zip(k2, k))) if any(k2) else k
            key = (fw + ew, kk, m)
            val = f.mul(c, c2)
            v = out.get(key)
            out[key] = val if v is None else f.add(v, val)
    return AlgElement(alg, {k: v for k, v in out.items() if v != zero})


def _is_triangular(word: tuple) -> bool:
    seen_e = False
    for x in word:
        if x > 0:
            seen_e = True
        elif seen_e:
            return False
    return True


def _split(word: tuple) -> tuple[tuple, tuple]:
    for p, x in enumerate(word):
        if x > 0:
            return word[:p], word[p:]
    return word, ()


# ---------------------------------------------------------------------------
# zero test via skew derivations
# ---------------------------------------------------------------------------


def _derive(form, f, word: tuple, i_letter: int):
    """``r_i`` on a one-sided word (letters all of one sign); yields ``(coeff_exponent, word)``."""
    out = []
    s = 0
    sign = 1 if i_letter > 0 else -1
    i = abs(i_letter) - 1
    for p in range(len(word) - 1, -1, -1):
        y = word[p]
        if y == i_letter:
            out.append((s, word[:p] + word[p + 1:]))
        s += form[i][abs(y) - 1]
    return out


class _Echelon:
    """Incremental row reduction of sparse vectors over a coefficient field.

    Row ``r`` is zero at the pivots of rows ``< r``, so eliminating pivots in
    insertion order leaves a remainder that vanishes at every pivot; that
    remainder is unique.  Only pivots actually present are visited.
    """

    def __init__(self, field):
        self.f = field
        self.pivots: list[tuple] = []
        self.rows: list[dict] = []
        self.index: dict = {}

    def reduce(self, vec: dict) -> dict:
        f = self.f
        zero = f.zero
        index = self.index
        vec = dict(vec)
        heap = [index[k] for k in vec if k in index]
        heapq.heapify(heap)
        last = -1
        while heap:
            r = heapq.heappop(heap)
            if r == last:
                continue
            last = r
            c = vec.get(self.pivots[r])
            if c is None:
                continue
            for k, v in self.rows[r].items():
                w = vec.get(k)
                t = f.mul(c, v)
                if w is None:
                    vec[k] = f.neg(t)
                    j = index.get(k)
                    if j is not None and j > r:
                        heapq.heappush(heap, j)
                else:
                    w = f.sub(w, t)
                    if w == zero:
                        del vec[k]
                    else:
                        vec[k] = w
        return vec

    def insert(self, vec: dict) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        f = self.f
        pk = min(vec)
        inv = f.inv(vec[pk])
        self.index[pk] = len(self.pivots)
        self.pivots.append(pk)
        self.rows.append({k: f.mul(v, inv) for k, v in vec.items()})
        return True

    def __len__(self):
        return len(self.rows)


def _tensor_is_zero(alg: UqAlgebra, tensor: dict) -> bool:
    """Decide whether ``sum c f (x) e`` vanishes in ``U^- (x) U^+`` (one homogeneous block)."""
    f = alg.field
    form = alg.datum.form
    zero = f.zero
    level = [tensor]
    for side in (1, 0):  # E-side first, then F-side
        while True:
            sample = next(iter(level[0]))
            if not sample[side]:
                break
            letters = sorted({x for vec in level for key in vec for x in key[side]})
            ech = _Echelon(f)
            for vec in level:
                for x in letters:
                    new: dict = {}
                    for key, c in vec.items():
                        for e, w in _derive(form, f, key[side], x):
                            nk = (key[0], w) if side == 1 else (w, key[1])
                            val = f.mulq(c, e) if e else c
                            v = new.get(nk)
                            if v is None:
                                new[nk] = val
                            else:
                                v = f.add(v, val)
                                if v == zero:
                                    del new[nk]
                                else:
                                    new[nk] = v
                    if new:
                        ech.insert(new)
            if not len(ech):
                return True
            level = ech.rows
    return not any(level)


def _blocks(alg: UqAlgebra, tri: AlgElement, cap: int) -> dict:
    blocks: dict = {}
    for (word, k, m), c in tri.terms.items():
        fw, ew = _split(word)
        if len(fw) > cap or len(ew) > cap:
            raise DegreeCapExceeded(f"word of E-length {len(ew)} / F-length {len(fw)} exceeds cap {cap}")
        bk = (k, m, alg.word_weight(fw), alg.word_weight(ew))
        blocks.setdefault(bk, {})[(fw, ew)] = c
    return blocks


def is_zero(a: AlgElement, cap: int = DEFAULT_CAP, method: str = "derivation") -> bool:
    """True iff ``a`` lies in the ideal of defining relations.

    ``method="spanning"`` uses :class:`GradedBasisCache` instead of the
    derivation test; it handles one-sided (E-only or F-only) elements of small
    degree and is meant as an independent cross-check.  ``method="normal_form"``
    reduces both tensor factors against the same spanning sets.
    """
    if a.alg.kind != "U":
        raise TypeError("is_zero works on the quantum group side")
    if not a.terms:
        return True
    tri = triangular_form(a)
    if not tri.terms:
        return True
    if method == "spanning":
        return GradedBasisCache.for_algebra(tri.alg).contains(tri)
    if method == "normal_form":
        return not normal_form(tri).terms
    for block in _blocks(tri.alg, tri, cap).values():
        if not _tensor_is_zero(tri.alg, block):
            return False
    return True


def equal_mod_relations(a: AlgElement, b: AlgElement, cap: int = DEFAULT_CAP) -> bool:
    return is_zero(a - b, cap)


# ---------------------------------------------------------------------------
# positivity subalgebras
# ---------------------------------------------------------------------------


def _degree_ok(deg: Sequence[int], mode: str, i: int | None, r: int) -> bool:
    n = len(deg)
    if mode == "plus":
        return all(x >= 0 for x in deg) and any(x > 0 for x in deg)
    if i is None:
        raise ValueError(f"mode {mode!r} needs an index")
    others = [deg[j] for j in range(n) if j != i - 1]
    base = all(x >= 0 for x in others) and any(x > 0 for x in others)
    if mode == "d_i_ge_r":
        return base and deg[i - 1] >= r
    if mode == "neq_i":
        return base
    raise ValueError(f"unknown mode {mode!r}")


def positive_violations(a: AlgElement, mode: str = "plus", i: int | None = None, r: int = 1,
                        cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """Q-degrees of the nonzero components of ``a`` that violate the positivity mode."""
    tri = triangular_form(a)
    comps: dict = {}
    for key, c in tri.terms.items():
        comps.setdefault(tri.alg.finite_degree(key), {})[key] = c
    bad = []
    for deg, terms in sorted(comps.items()):
        if _degree_ok(deg, mode, i, r):
            continue
        if not is_zero(AlgElement(tri.alg, terms), cap):
            bad.append(deg)
    return bad


def in_positive_subalgebra(a: AlgElement, mode: str = "plus", i: int | None = None, r: int = 1,
                           cap: int = DEFAULT_CAP) -> bool:
    """Membership in U_+ (``plus``), U_{d_i >= r,+} (``d_i_ge_r``) or U_{!=i,+} (``neq_i``)."""
    return not positive_violations(a, mode, i, r, cap)


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------


def serre_poly(alg: UqAlgebra, i: int, j: int, sign: int = 1) -> AlgElement:
    """``sum_r (-1)^r [1-a_ji choose r]_{q_i} x^{1-a_ji-r} y x^r`` with x = e_i^sign, y = e_j^sign."""
    if i == j:
        raise ValueError("Serre polynomials need i != j")
    datum = alg.datum
    a = datum.cartan[j][i]
    m = 1 - a
    x = alg.E(i) if sign > 0 else alg.F(i)
    y = alg.E(j) if sign > 0 else alg.F(j)
    f = alg.field
    out = alg.zero()
    for r in range(m + 1):
        c = f.from_ratfunc(qbinom(m, r, datum.d[i]))
        if r % 2:
            c = f.neg(c)
        out = out + (x ** (m - r) * y * x ** r).scale(c)
    return out


class Presentation:
    """The defining relations as explicit elements (Cartan relations are built into the keys)."""

    def __init__(self, alg: UqAlgebra):
        self.alg = alg
        self.datum = alg.datum

    def ef_relation(self, i: int, j: int) -> AlgElement:
        alg = self.alg
        f = alg.field
        rel = alg.E(i) * alg.F(j) - alg.F(j) * alg.E(i)
        if i == j:
            d = self.datum.d[i]
            gap = f.inv(f.sub(f.qpow(d), f.qpow(-d)))
            rel = rel - (alg.K(i, 1) - alg.K(i, -1)).scale(gap)
        return rel

    def serre_relations(self) -> list[AlgElement]:
        out = []
        for i in self.datum.I:
            for j in self.datum.I:
                if i != j:
                    out.append(serre_poly(self.alg, i, j, 1))
                    out.append(serre_poly(self.alg, i, j, -1))
        return out

    def relations(self) -> list[AlgElement]:
        out = [self.ef_relation(i, j) for i in self.datum.I for j in self.datum.I]
        return out + self.serre_relations()


# ---------------------------------------------------------------------------
# spanning-set oracle
# ---------------------------------------------------------------------------


def _words_of_weight(weight: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All words (as index tuples) with the given letter multiplicities."""
    letters = [i for i, c in enumerate(weight) for _ in range(c)]
    return sorted(set(itertools.permutations(letters)))


class GradedBasisCache:
    """Row-reduced spanning sets of the graded pieces of the Serre ideal.

    Pieces are keyed by ``(sign, weight)``; a piece is built once and never
    modified afterwards.
    """

    _instances: dict = {}

    def __init__(self, alg: UqAlgebra):
        self.alg = alg
        self.pieces: dict = {}

    @classmethod
    def for_algebra(cls, alg: UqAlgebra) -> "GradedBasisCache":
        inst = cls._instances.get(alg)
        if inst is None:
            inst = cls(alg)
            cls._instances[alg] = inst
        return inst

    def _serre_words(self, i: int, j: int) -> dict[tuple, object]:
        """The Serre polynomial S_ij as a map from index words to coefficients."""
        datum = self.alg.datum
        f = self.alg.field
        m = 1 - datum.cartan[j][i]
        out = {}
        for r in range(m + 1):
            c = f.from_ratfunc(qbinom(m, r, datum.d[i]))
            out[(i,) * (m - r) + (j,) + (i,) * r] = f.neg(c) if r % 2 else c
        return out

    def piece(self, sign: int, weight: tuple[int, ...]) -> _Echelon:
        key = (sign, weight)
        hit = self.pieces.get(key)
        if hit is not None:
            return hit
        datum = self.alg.datum
        ech = _Echelon(self.alg.field)
        for i in datum.I:
            for j in datum.I:
                if i == j:
                    continue
                m = 1 - datum.cartan[j][i]
                rest = list(weight)
                rest[i] -= m
                rest[j] -= 1
                if min(rest) < 0:
                    continue
                s = self._serre_words(i, j)
                for total in _words_of_weight(tuple(rest)):
                    for cut in range(len(total) + 1):
                        u, v = total[:cut], total[cut:]
                        ech.insert({u + w + v: c for w, c in s.items()})
        self.pieces[key] = ech
        return ech

    def contains(self, tri: AlgElement) -> bool:
        """Membership for triangular elements whose terms are one-sided."""
        alg = tri.alg
        groups: dict = {}
        for (word, k, m), c in tri.terms.items():
            if word and any(x > 0 for x in word) and any(x < 0 for x in word):
                raise ValueError("the spanning oracle handles one-sided elements only")
            sign = 1 if word and word[0] > 0 else -1
            idx = tuple(abs(x) - 1 for x in word)
            wt = [0] * alg.size
            for t in idx:
                wt[t] += 1
            groups.setdefault((k, m, sign, tuple(wt)), {})[idx] = c
        for (k, m, sign, wt), vec in groups.items():
            if not any(wt):
                if vec:
                    return False
                continue
            if self.piece(sign, wt).reduce(vec):
                return False
        return True


def _reduce_side(alg: UqAlgebra, cache: GradedBasisCache, groups: dict, sign: int) -> dict:
    """Reduce word vectors of one sign, grouped by weight, to canonical remainders."""
    out = {}
    f = alg.field
    for (ctx, wt), vec in groups.items():
        if sum(1 for x in wt if x) > 1:
            vec = cache.piece(sign, wt).reduce(vec)
        for idx, c in vec.items():
            if c != f.zero:
                out[(ctx, idx)] = c
    return out


def normal_form(a: AlgElement) -> AlgElement:
    """Canonical representative modulo the defining relations.

    The E-factor of every triangular term is reduced against the Serre
    ideal first, then the F-factor attached to each surviving E-word.  The
    remainders avoid all pivot words, so equal elements get equal forms.
    """
    tri = triangular_form(a)
    alg = tri.alg
    cache = GradedBasisCache.for_algebra(alg)
    size = alg.size

    def weight(idx):
        w = [0] * size
        for t in idx:
            w[t] += 1
        return tuple(w)

    groups: dict = {}
    for (word, k, m), c in tri.terms.items():
        fw, ew = _split(word)
        idx = tuple(x - 1 for x in ew)
        groups.setdefault(((fw, k, m), weight(idx)), {})[idx] = c
    stage = _reduce_side(alg, cache, groups, 1)
    groups = {}
    for ((fw, k, m), eidx), c in stage.items():
        idx = tuple(-x - 1 for x in fw)
        groups.setdefault(((eidx, k, m), weight(idx)), {})[idx] = c
    stage = _reduce_side(alg, cache, groups, -1)
    terms = {}
    for ((eidx, k, m), fidx), c in stage.items():
        word = tuple(-(t + 1) for t in fidx) + tuple(t + 1 for t in eidx)
        terms[(word, k, m)] = c
    return AlgElement(alg, terms)
