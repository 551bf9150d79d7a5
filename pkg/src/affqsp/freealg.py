"""Noncommutative polynomials with Cartan letters pushed to the right.

Two algebras share the machinery here:

* :class:`UqAlgebra` -- words in ``E_i``, ``F_i`` followed by one Cartan
  monomial ``K^k`` and one central monomial ``KK^m``;
* :class:`BAlgebra` -- words in the symbols ``B_0 .. B_n`` followed by a
  central monomial.

No relations other than the commutation of Cartan letters past E/F letters
are applied here; straightening and ideal membership live in :mod:`affqsp.uq`.

Coefficients belong to a *coefficient field* (see :mod:`affqsp.scalars`),
either exact rational functions of ``q`` or residues with ``q`` specialised.
Central monomials are kept in the term key so that the braid action can move
them around.

In the loop algebra ``K_delta = 1``; Cartan exponent vectors are therefore
stored modulo ``delta`` with their ``alpha_0`` entry cleared.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import pyparsing as pp

from .scalars import EXACT, CentralMonomial, RationalFunc, Scalar
from .weyl import RootDatum

__all__ = [
    "Generator",
    "UqAlgebra",
    "BAlgebra",
    "AlgElement",
    "qcomm",
    "degree_split",
    "divided_power",
    "substitute_B",
    "expand_substitutions",
    "parse_sexpr",
]


@dataclass(frozen=True)
class Generator:
    """A single generator: ``kind`` is ``"E"``, ``"F"``, ``"B"`` or ``"Kpow"``."""

    kind: str
    index: int = 0
    exponents: tuple[int, ...] = ()


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vneg(a):
    return tuple(-x for x in a)


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------


class _Algebra:
    """Common plumbing: datum, coefficient field and element construction."""

    kind = ""

    def __init__(self, datum: RootDatum, field=EXACT):
        self.datum = datum
        self.field = field
        self.size = datum.n + 1
        self.zero_vec = (0,) * self.size
        self._wt_cache: dict[tuple, tuple[int, ...]] = {}

    def __eq__(self, other):
        return type(self) is type(other) and self.datum == other.datum and self.field == other.field

    def __hash__(self):
        return hash((self.kind, self.datum, self.field))

    def __repr__(self):
        return f"{type(self).__name__}({self.datum.name}, {self.field!r})"

    def with_field(self, field):
        return type(self)(self.datum, field)

    # element constructors -------------------------------------------------
    def element(self, terms: Mapping | None = None) -> "AlgElement":
        return AlgElement(self, dict(terms or {}))

    def zero(self) -> "AlgElement":
        return AlgElement(self, {})

    def one(self) -> "AlgElement":
        return AlgElement(self, {self.unit_key: self.field.one})

    def scalar(self, c) -> "AlgElement":
        """Coerce an int, Fraction, RationalFunc or :class:`Scalar` into the algebra."""
        f = self.field
        if isinstance(c, AlgElement):
            return c
        if isinstance(c, Scalar):
            terms = {}
            for mono, rf in c.terms.items():
                key = self.central_key(mono.exponents)
                terms[key] = f.from_ratfunc(rf)
            return AlgElement(self, terms)
        if isinstance(c, RationalFunc):
            v = f.from_ratfunc(c)
        else:
            v = f.from_int(c)
        if v == f.zero:
            return self.zero()
        return AlgElement(self, {self.unit_key: v})

    def coeff(self, c):
        """Coerce a ground-ring value to a field coefficient."""
        f = self.field
        if isinstance(c, RationalFunc):
            return f.from_ratfunc(c)
        return f.from_int(c)

    def qpow(self, k: int) -> "AlgElement":
        return AlgElement(self, {self.unit_key: self.field.qpow(k)})

    def KK(self, vec: Sequence[int] | int, e: int = 1) -> "AlgElement":
        """Central monomial; either an exponent vector or ``(index, exponent)``."""
        if isinstance(vec, int):
            v = [0] * self.size
            v[vec] = e
            vec = v
        return AlgElement(self, {self.central_key(tuple(vec)): self.field.one})

    def word_weight(self, word: tuple) -> tuple[int, ...]:
        """Affine root-lattice weight of a word."""
        w = self._wt_cache.get(word)
        if w is None:
            v = [0] * self.size
            for x in word:
                j, s = self.letter_index(x)
                v[j] += s
            w = tuple(v)
            if len(self._wt_cache) > 200000:
                self._wt_cache.clear()
            self._wt_cache[word] = w
        return w

    def finite_degree(self, key) -> tuple[int, ...]:
        """Q-degree over alpha_1..alpha_n (alpha_0 contributes -theta)."""
        b = self.word_weight(key[0])
        c = self.datum.c
        return tuple(b[i] - b[0] * c[i] for i in range(1, self.size))


class UqAlgebra(_Algebra):
    """The algebra generated by E_i, F_i, K_i^{+-1} (i in I) and central KK_i^{+-1}.

    Term keys are ``(word, k, m)`` with ``word`` a tuple of letters
    (``i + 1`` for ``E_i``, ``-(i + 1)`` for ``F_i``), ``k`` the Cartan
    exponent vector (reduced mod delta) and ``m`` the central exponent vector.
    """

    kind = "U"

    def __init__(self, datum: RootDatum, field=EXACT):
        super().__init__(datum, field)
        self.unit_key = ((), self.zero_vec, self.zero_vec)
        self.form = datum.form

    def central_key(self, m):
        return ((), self.zero_vec, tuple(m))

    @staticmethod
    def letter_index(x: int) -> tuple[int, int]:
        return (x - 1, 1) if x > 0 else (-x - 1, -1)

    def canon_k(self, k: Sequence[int]) -> tuple[int, ...]:
        k0 = k[0]
        if k0 == 0:
            return tuple(k)
        c = self.datum.c
        return tuple(x - k0 * ci for x, ci in zip(k, c))

    def pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        return self.datum.pair(a, b)

    def mul_keys(self, k1, k2):
        """Product of two basis keys: returns ``(q-exponent, key)``."""
        w1, c1, m1 = k1
        w2, c2, m2 = k2
        e = 0
        if w2 and any(c1):
            e = self.datum.pair(c1, self.word_weight(w2))
        return e, (w1 + w2, self.canon_k(_vadd(c1, c2)), _vadd(m1, m2))

    # generators ---------------------------------------------------------------
    def E(self, i: int) -> "AlgElement":
        return AlgElement(self, {((i + 1,), self.zero_vec, self.zero_vec): self.field.one})

    def F(self, i: int) -> "AlgElement":
        return AlgElement(self, {((-(i + 1),), self.zero_vec, self.zero_vec): self.field.one})

    def K(self, vec: Sequence[int] | int, e: int = 1) -> "AlgElement":
        """Cartan monomial; either an exponent vector or ``(index, exponent)``."""
        if isinstance(vec, int):
            v = [0] * self.size
            v[vec] = e
            vec = v
        return AlgElement(self, {((), self.canon_k(tuple(vec)), self.zero_vec): self.field.one})

    def gen(self, g: Generator) -> "AlgElement":
        if g.kind == "E":
            return self.E(g.index)
        if g.kind == "F":
            return self.F(g.index)
        if g.kind == "Kpow":
            return self.K(g.exponents)
        raise ValueError(f"generator kind {g.kind!r} does not belong to U")

    def tE(self, i: int) -> "AlgElement":
        """``-q_i^{-2} KK_i E_i K_i^{-1}``."""
        d = self.datum.d[i]
        coeff = self.field.neg(self.field.qpow(-2 * d))
        k = [0] * self.size
        k[i] = -1
        m = [0] * self.size
        m[i] = 1
        return AlgElement(self, {((i + 1,), self.canon_k(k), tuple(m)): coeff})

    def letter_str(self, x: int) -> str:
        return f"E{x - 1}" if x > 0 else f"F{-x - 1}"


class BAlgebra(_Algebra):
    """Free algebra in B_0..B_n over the ground ring with central KK's.

    Term keys are ``(word, (), m)``; no relation among the B's is imposed.
    """

    kind = "B"

    def __init__(self, datum: RootDatum, field=EXACT):
        super().__init__(datum, field)
        self.unit_key = ((), (), self.zero_vec)

    def central_key(self, m):
        return ((), (), tuple(m))

    @staticmethod
    def letter_index(x: int) -> tuple[int, int]:
        return x, 1

    def mul_keys(self, k1, k2):
        return 0, (k1[0] + k2[0], (), _vadd(k1[2], k2[2]))

    def B(self, i: int) -> "AlgElement":
        return AlgElement(self, {((i,), (), self.zero_vec): self.field.one})

    def gen(self, g: Generator) -> "AlgElement":
        if g.kind == "B":
            return self.B(g.index)
        raise ValueError(f"generator kind {g.kind!r} does not belong to the B-algebra")

    def letter_str(self, x: int) -> str:
        return f"B{x}"


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class AlgElement:
    """A finite linear combination of canonical keys."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: _Algebra, terms: dict):
        self.alg = alg
        self.terms = terms

    # basic structure ----------------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        """Structural zero (no relations applied)."""
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def copy(self) -> "AlgElement":
        return AlgElement(self.alg, dict(self.terms))

    def _check(self, other: "AlgElement"):
        if other.alg is not self.alg and other.alg != self.alg:
            raise ValueError("elements live in different algebras")

    def _coerce(self, other):
        if isinstance(other, AlgElement):
            self._check(other)
            return other
        return self.alg.scalar(other)

    # linear structure ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        f = self.alg.field
        zero = f.zero
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = f.add(v, c)
                if v == zero:
                    del out[k]
                else:
                    out[k] = v
        return AlgElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.alg.field
        return AlgElement(self.alg, {k: f.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "AlgElement":
        """Multiply by a field coefficient."""
        f = self.alg.field
        if c == f.zero:
            return AlgElement(self.alg, {})
        return AlgElement(self.alg, {k: f.mul(v, c) for k, v in self.terms.items()})

    def scale_q(self, e: int) -> "AlgElement":
        f = self.alg.field
        return AlgElement(self.alg, {k: f.mulq(v, e) for k, v in self.terms.items()})

    # products -----------------------------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, AlgElement):
            c = self.alg.scalar(other)
            return self * c
        self._check(other)
        alg = self.alg
        f = alg.field
        mul_keys = alg.mul_keys
        zero = f.zero
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                e, key = mul_keys(k1, k2)
                c = f.mul(c1, c2)
                if e:
                    c = f.mulq(c, e)
                v = out.get(key)
                if v is None:
                    out[key] = c
                else:
                    v = f.add(v, c)
                    if v == zero:
                        del out[key]
                    else:
                        out[key] = v
        return AlgElement(alg, {k: v for k, v in out.items() if v != zero})

    def __rmul__(self, other):
        return self.alg.scalar(other) * self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not available")
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    # comparison ---------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            try:
                other = self.alg.scalar(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    # gradings -----------------------------------------------------------------
    def degrees(self) -> set[tuple[int, ...]]:
        return {self.alg.finite_degree(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def map_coefficients(self, fn: Callable, alg: _Algebra | None = None) -> "AlgElement":
        alg = alg or self.alg
        zero = alg.field.zero
        out = {}
        for k, c in self.terms.items():
            v = fn(c)
            if v != zero:
                out[k] = v
        return AlgElement(alg, out)

    def specialize(self, field) -> "AlgElement":
        """Re-express an exactly computed element over another coefficient field."""
        if self.alg.field == field:
            return self
        src = self.alg.field
        alg = self.alg.with_field(field)
        return self.map_coefficients(lambda c: field.from_ratfunc(src.to_ratfunc(c)), alg)

    # printing -----------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _key_order(kv[0]))

    def __repr__(self):
        return f"AlgElement({self.alg!r}, {len(self.terms)} terms)"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.sorted_terms():
            parts.append(f"({c})*{_key_str(self.alg, key)}")
        return " + ".join(parts)

    def to_sexpr(self) -> str:
        """Canonical prefix S-expression; :func:`parse_sexpr` inverts it exactly."""
        items = [_term_sexpr(self.alg, key, c) for key, c in self.sorted_terms()]
        return "(add" + "".join(" " + t for t in items) + ")"


def _key_order(key):
    word, k, m = key
    return (len(word), tuple(abs(x) * 2 - (x > 0) for x in word), tuple(k), tuple(m))


def _key_str(alg, key) -> str:
    word, k, m = key
    parts = [alg.letter_str(x) for x in word]
    if k and any(k):
        parts.append("K[" + ",".join(map(str, k)) + "]")
    if any(m):
        parts.append("KK[" + ",".join(map(str, m)) + "]")
    return "*".join(parts) or "1"


# ---------------------------------------------------------------------------
# helpers named in the public API
# ---------------------------------------------------------------------------


def qcomm(a: AlgElement, b: AlgElement, v=1, *, qexp: int | None = None) -> AlgElement:
    """``[a, b]_v = ab - v ba``; pass ``qexp=k`` for ``v = q^k``."""
    if qexp is not None:
        return a * b - (b * a).scale_q(qexp)
    return a * b - (b * a).scale(a.alg.coeff(v))


def degree_split(a: AlgElement) -> dict[tuple[int, ...], AlgElement]:
    """Split into Q-homogeneous components (finite root lattice)."""
    out: dict[tuple[int, ...], dict] = {}
    for k, c in a.terms.items():
        out.setdefault(a.alg.finite_degree(k), {})[k] = c
    return {d: AlgElement(a.alg, t) for d, t in out.items()}


def divided_power(alg: _Algebra, g: Generator | AlgElement, r: int, d: int | None = None) -> AlgElement:
    """``x^r / [r]_{q_x}!`` for a generator (or element with a given symmetriser ``d``)."""
    if r < 0:
        raise ValueError("negative divided power")
    if isinstance(g, Generator):
        if g.kind == "Kpow":
            raise ValueError("divided powers of Cartan letters are not defined")
        x = alg.gen(g)
        d = alg.datum.d[g.index]
    else:
        x = g
        if d is None:
            raise ValueError("symmetriser required for a non-generator base")
    f = alg.field
    return (x ** r).scale(f.inv(f.qfactorial(r, d)))


# ---------------------------------------------------------------------------
# B-substitutions
# ---------------------------------------------------------------------------


def _subst_images(uq: UqAlgebra, j: int):
    return {"E": uq.tE(j), "F": uq.F(j)}


def _central_element(uq: UqAlgebra, m) -> AlgElement:
    return AlgElement(uq, {((), uq.zero_vec, tuple(m)): uq.field.one})


def substitute_B(p: AlgElement, uq: UqAlgebra, choice) -> AlgElement:
    """Substitute ``tE_j`` or ``F_j`` for each occurrence of ``B_j``.

    ``choice`` is ``"E"``/``"F"`` (uniform), or a callable
    ``(word, position) -> "E" | "F"``.
    """
    if p.alg.kind != "B":
        raise TypeError("substitute_B expects a B-polynomial")
    out = uq.zero()
    cache: dict[int, dict] = {}
    for (word, _, m), c in p.terms.items():
        acc = _central_element(uq, m)
        for pos, j in enumerate(word):
            ch = choice if isinstance(choice, str) else choice(word, pos)
            imgs = cache.setdefault(j, _subst_images(uq, j))
            acc = acc * imgs[ch]
        out = out + acc.scale(_convert(p.alg.field, uq.field, c))
    return out


def _convert(src, dst, c):
    if src == dst:
        return c
    return dst.from_ratfunc(src.to_ratfunc(c))


def expand_substitutions(p: AlgElement, uq: UqAlgebra) -> Iterator[tuple[tuple, AlgElement]]:
    """Yield ``(type, element)`` over all substitution choices, word by word.

    ``type`` is a tuple of ``(d_j^+, d_j^-)`` pairs over ``j in I``, where
    ``d_j^+`` counts tE-choices and ``d_j^-`` counts F-choices of ``B_j``.
    Elements of equal type from different words are yielded separately.
    """
    if p.alg.kind != "B":
        raise TypeError("expand_substitutions expects a B-polynomial")
    size = uq.size
    imgs = {j: _subst_images(uq, j) for j in range(size)}
    for (word, _, m), c in p.terms.items():
        coeff = _convert(p.alg.field, uq.field, c)
        # incremental product over choices, grouped by type as we go
        layer: dict[tuple, AlgElement] = {tuple((0, 0) for _ in range(size)): _central_element(uq, m).scale(coeff)}
        for j in word:
            nxt: dict[tuple, AlgElement] = {}
            for t, acc in layer.items():
                for ch in ("E", "F"):
                    tt = list(t)
                    plus, minus = tt[j]
                    tt[j] = (plus + 1, minus) if ch == "E" else (plus, minus + 1)
                    tt = tuple(tt)
                    val = acc * imgs[j][ch]
                    prev = nxt.get(tt)
                    nxt[tt] = val if prev is None else prev + val
            layer = nxt
        yield from layer.items()


# ---------------------------------------------------------------------------
# S-expression text format
# ---------------------------------------------------------------------------

_SEXPR = pp.nested_expr("(", ")")


def _frac_tok(x) -> str:
    return str(x)


def _coeff_sexpr(alg, c) -> str:
    f = alg.field
    if f.exact:
        rf: RationalFunc = c
        num = " ".join(_frac_tok(x) for x in rf.num.coeffs())
        den = " ".join(_frac_tok(x) for x in rf.den.coeffs())
        return f"(rat {rf.val} ({num}) ({den}))"
    return f"(mod {c})"


def _term_sexpr(alg, key, c) -> str:
    word, k, m = key
    factors = []
    for x in word:
        if alg.kind == "U":
            factors.append(f"({'E' if x > 0 else 'F'} {abs(x) - 1})")
        else:
            factors.append(f"(B {x})")
    if k and any(k):
        factors.append("(Kvec " + " ".join(map(str, k)) + ")")
    if any(m):
        factors.append("(KKvec " + " ".join(map(str, m)) + ")")
    body = "(mul" + "".join(" " + x for x in factors) + ")"
    return f"(scale {_coeff_sexpr(alg, c)} {body})"


def _parse_coeff(alg, node):
    f = alg.field
    if isinstance(node, str):
        return alg.coeff(_fraction(node))
    head = node[0]
    if head == "rat":
        from fractions import Fraction
        import flint

        val = int(node[1])
        def poly(tokens):
            fr = [Fraction(x) for x in tokens]
            return flint.fmpq_poly([flint.fmpq(x.numerator, x.denominator) for x in fr])

        num, den = poly(node[2]), poly(node[3])
        return f.from_ratfunc(RationalFunc(val, num, den))
    if head == "mod":
        if f.exact:
            raise ValueError("modular coefficient in an exact context")
        return int(node[1]) % f.p
    if head == "qpow":
        return f.qpow(int(node[1]))
    if head == "qint":
        return f.qint(int(node[1]), int(node[2]) if len(node) > 2 else 1)
    raise ValueError(f"unknown coefficient form {head!r}")


def _fraction(tok: str):
    from fractions import Fraction

    return Fraction(tok)


def _build(alg, node) -> AlgElement:
    if isinstance(node, str):
        return alg.scalar(_fraction(node))
    head, args = node[0], node[1:]
    if head == "add":
        out = alg.zero()
        for a in args:
            out = out + _build(alg, a)
        return out
    if head == "mul":
        out = alg.one()
        for a in args:
            out = out * _build(alg, a)
        return out
    if head == "neg":
        return -_build(alg, args[0])
    if head == "scale":
        return _build(alg, args[1]).scale(_parse_coeff(alg, args[0]))
    if head == "scalar":
        return alg.one().scale(_parse_coeff(alg, args[0] if len(args) == 1 else args))
    if head in ("E", "F", "B"):
        return getattr(alg, head)(int(args[0]))
    if head == "tE":
        return alg.tE(int(args[0]))
    if head == "K":
        return alg.K(int(args[0]), int(args[1]) if len(args) > 1 else 1)
    if head == "KK":
        return alg.KK(int(args[0]), int(args[1]) if len(args) > 1 else 1)
    if head == "Kvec":
        return alg.K(tuple(int(x) for x in args))
    if head == "KKvec":
        return alg.KK(tuple(int(x) for x in args))
    if head == "qcomm":
        a, b = _build(alg, args[0]), _build(alg, args[1])
        return a * b - (b * a).scale(_parse_coeff(alg, args[2]))
    raise ValueError(f"unknown form {head!r}")


def parse_sexpr(alg: _Algebra, text: str) -> AlgElement:
    """Parse the prefix S-expression format produced by :meth:`AlgElement.to_sexpr`.

    Besides the canonical forms, ``neg``, ``scalar``, ``tE``, ``K``, ``KK``,
    ``qcomm`` and the coefficient forms ``(qpow k)``, ``(qint n d)`` and plain
    rationals are accepted for hand-written input.
    """
    try:
        tree = _SEXPR.parse_string(text, parse_all=True).as_list()
    except pp.ParseException as exc:
        raise ValueError(f"malformed expression: {exc}") from None
    return _build(alg, tree[0])
