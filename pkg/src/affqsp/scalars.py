"""Exact coefficient arithmetic.

The ground ring of every algebra in this package is Q(q) tensored with the
Laurent ring in the central generators KK_0, ..., KK_n.  This module provides

* :class:`LaurentPoly` and :class:`RationalFunc` for elements of Q[q, q^-1]
  and Q(q) (the latter backed by FLINT polynomials, always kept in a
  canonical reduced form so that equality is structural);
* :class:`CentralMonomial` and :class:`Scalar` for the central extension;
* quantum integers, factorials and binomials;
* two *coefficient fields* used by the algebra engines: :class:`ExactField`
  (coefficients are :class:`RationalFunc`) and :class:`ModularField`
  (q is specialised to a random residue modulo a large prime).
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import flint

__all__ = [
    "LaurentPoly",
    "RationalFunc",
    "CentralMonomial",
    "Scalar",
    "qint",
    "qfactorial",
    "qbinom",
    "ExactField",
    "ModularField",
    "EXACT",
    "MERSENNE61",
]

MERSENNE61 = (1 << 61) - 1


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, flint.fmpq):
        return Fraction(int(c.p), int(c.q))
    if isinstance(c, flint.fmpz):
        return Fraction(int(c))
    return Fraction(c)


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """A Laurent polynomial in ``q`` with rational coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _to_fraction(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls({k: c})

    @property
    def coefficients(self) -> dict[int, Fraction]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c) if self._c else 0

    def max_exp(self) -> int:
        return max(self._c) if self._c else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: v * other for e, v in self._c.items()})
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def bar(self) -> "LaurentPoly":
        """The image under ``q -> q^-1``."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            if e == 0:
                parts.append(_fmt_coeff(v))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                if v == 1:
                    parts.append(mono)
                elif v == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{_fmt_coeff(v)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _poly(coeffs) -> flint.fmpq_poly:
    return flint.fmpq_poly(list(coeffs))


_ONE_POLY = flint.fmpq_poly([1])
_ZERO_POLY = flint.fmpq_poly([])


def _strip_low(p: flint.fmpq_poly) -> tuple[flint.fmpq_poly, int]:
    """Write ``p = q^k * p'`` with ``p'(0) != 0``."""
    cs = p.coeffs()
    k = 0
    while not cs[k]:
        k += 1
    if k == 0:
        return p, 0
    return _poly(cs[k:]), k


class RationalFunc:
    """An element of Q(q) in canonical form.

    The value is ``q**val * num / den`` where ``num`` and ``den`` are coprime
    polynomials with nonzero constant terms and ``den(0) == 1``.  Zero is
    stored as ``num = 0, den = 1, val = 0``.  These conditions make the
    representation unique, so ``==`` is a structural comparison.
    """

    __slots__ = ("val", "num", "den", "_hash")

    def __init__(self, val: int, num: flint.fmpq_poly, den: flint.fmpq_poly, _trusted: bool = False):
        if not _trusted:
            val, num, den = RationalFunc._canon(val, num, den)
        self.val = val
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _canon(val, num, den):
        if num.is_zero():
            return 0, _ZERO_POLY, _ONE_POLY
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        num, k = _strip_low(num)
        den, m = _strip_low(den)
        val += k - m
        if not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
        c = den.coeffs()[0]
        if c != 1:
            num = num / c
            den = den / c
        return val, num, den

    # constructors -------------------------------------------------------
    @classmethod
    def from_int(cls, c) -> "RationalFunc":
        c = _to_fraction(c)
        if not c:
            return _RF_ZERO
        return cls(0, flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator)]), _ONE_POLY, True)

    @classmethod
    def q_power(cls, k: int, c=1) -> "RationalFunc":
        c = _to_fraction(c)
        if not c:
            return _RF_ZERO
        return cls(k, flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator)]), _ONE_POLY, True)

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RationalFunc":
        if p.is_zero():
            return _RF_ZERO
        lo, hi = p.min_exp(), p.max_exp()
        cs = [0] * (hi - lo + 1)
        for e, v in p.coefficients.items():
            cs[e - lo] = flint.fmpq(v.numerator, v.denominator)
        return cls(lo, _poly(cs), _ONE_POLY, True)

    @classmethod
    def from_laurent_pair(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFunc":
        a, b = cls.from_laurent(num), cls.from_laurent(den)
        return a / b

    # inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return LaurentPoly({self.val + k: _to_fraction(c) for k, c in enumerate(self.num.coeffs())})

    @property
    def numerator(self) -> LaurentPoly:
        return LaurentPoly({self.val + k: _to_fraction(c) for k, c in enumerate(self.num.coeffs())})

    @property
    def denominator(self) -> LaurentPoly:
        return LaurentPoly({k: _to_fraction(c) for k, c in enumerate(self.den.coeffs())})

    def key(self) -> tuple:
        return (
            self.val,
            tuple(_to_fraction(c) for c in self.num.coeffs()),
            tuple(_to_fraction(c) for c in self.den.coeffs()),
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunc.from_int(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self.val == other.val and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RationalFunc):
            other = RationalFunc.from_int(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        v1, v2 = self.val, other.val
        v = min(v1, v2)
        n1 = self.num if v1 == v else self.num.left_shift(v1 - v)
        n2 = other.num if v2 == v else other.num.left_shift(v2 - v)
        if self.den.is_one() and other.den.is_one():
            num = n1 + n2
            if num.is_zero():
                return _RF_ZERO
            num, k = _strip_low(num)
            return RationalFunc(v + k, num, _ONE_POLY, True)
        if self.den == other.den:
            return RationalFunc(v, n1 + n2, self.den)
        return RationalFunc(v, n1 * other.den + n2 * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        if self.num.is_zero():
            return self
        return RationalFunc(self.val, -self.num, self.den, True)

    def __sub__(self, other):
        if not isinstance(other, RationalFunc):
            other = RationalFunc.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalFunc):
            other = RationalFunc.from_int(other)
        if self.num.is_zero() or other.num.is_zero():
            return _RF_ZERO
        if self.den.is_one() and other.den.is_one():
            return RationalFunc(self.val + other.val, self.num * other.num, _ONE_POLY, True)
        return RationalFunc(self.val + other.val, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def shift(self, k: int) -> "RationalFunc":
        """Multiply by ``q**k``."""
        if not k or self.num.is_zero():
            return self
        return RationalFunc(self.val + k, self.num, self.den, True)

    def inv(self) -> "RationalFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunc(-self.val, self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunc):
            other = RationalFunc.from_int(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return RationalFunc.from_int(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = _RF_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def bar(self) -> "RationalFunc":
        """The image under ``q -> q^-1``."""
        a = self.numerator.bar()
        b = self.denominator.bar()
        return RationalFunc.from_laurent_pair(a, b)

    def eval_mod(self, qv: int, p: int) -> int:
        """Evaluate at ``q = qv`` in the field Z/p."""
        def ev(poly):
            acc = 0
            for c in reversed(poly.coeffs()):
                acc = (acc * qv + int(c.p) * pow(int(c.q), -1, p)) % p
            return acc
        d = ev(self.den)
        if d == 0:
            raise ZeroDivisionError("specialisation hits a pole")
        return ev(self.num) * pow(d, -1, p) % p * pow(qv, self.val, p) % p

    def __repr__(self):
        return f"RationalFunc({self})"

    def __str__(self):
        if self.is_laurent():
            return str(self.numerator)
        return f"({self.numerator})/({self.denominator})"


_RF_ZERO = RationalFunc(0, _ZERO_POLY, _ONE_POLY, True)
_RF_ONE = RationalFunc(0, _ONE_POLY, _ONE_POLY, True)
RationalFunc.ZERO = _RF_ZERO
RationalFunc.ONE = _RF_ONE


@lru_cache(maxsize=None)
def qint(n: int, d: int = 1) -> RationalFunc:
    """The quantum integer [n] at q^d, as a (Laurent) rational function."""
    if d <= 0:
        raise ValueError("d must be positive")
    if n == 0:
        return _RF_ZERO
    sign = 1 if n > 0 else -1
    m = abs(n)
    # q^{d(m-1)} + q^{d(m-3)} + ... + q^{-d(m-1)}
    return RationalFunc.from_laurent(LaurentPoly({d * (m - 1 - 2 * k): sign for k in range(m)}))


@lru_cache(maxsize=None)
def qfactorial(n: int, d: int = 1) -> RationalFunc:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    out = _RF_ONE
    for k in range(1, n + 1):
        out = out * qint(k, d)
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, r: int, d: int = 1) -> RationalFunc:
    if n < 0 or r < 0 or r > n:
        raise ValueError(f"qbinom({n}, {r}) needs 0 <= r <= n")
    return qfactorial(n, d) / (qfactorial(r, d) * qfactorial(n - r, d))


class CentralMonomial:
    """A Laurent monomial ``KK_0^{e_0} ... KK_n^{e_n}`` in the central generators."""

    __slots__ = ("exponents",)

    def __init__(self, exponents: Iterable[int]):
        self.exponents = tuple(int(e) for e in exponents)

    @classmethod
    def one(cls, size: int) -> "CentralMonomial":
        return cls((0,) * size)

    @classmethod
    def generator(cls, size: int, i: int, e: int = 1) -> "CentralMonomial":
        v = [0] * size
        v[i] = e
        return cls(v)

    def is_one(self) -> bool:
        return not any(self.exponents)

    def __mul__(self, other: "CentralMonomial") -> "CentralMonomial":
        return CentralMonomial(a + b for a, b in zip(self.exponents, other.exponents))

    def inv(self) -> "CentralMonomial":
        return CentralMonomial(-a for a in self.exponents)

    def __pow__(self, k: int) -> "CentralMonomial":
        return CentralMonomial(a * k for a in self.exponents)

    def __eq__(self, other):
        return isinstance(other, CentralMonomial) and self.exponents == other.exponents

    def __lt__(self, other):
        return self.exponents < other.exponents

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return f"CentralMonomial({self.exponents})"

    def __str__(self):
        parts = [f"KK{i}^{e}" for i, e in enumerate(self.exponents) if e]
        return "*".join(parts) if parts else "1"


class Scalar:
    """A finite sum of central monomials with coefficients in Q(q)."""

    __slots__ = ("size", "terms")

    def __init__(self, size: int, terms: Mapping[CentralMonomial, RationalFunc] | None = None):
        self.size = size
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def from_rational(cls, size: int, c) -> "Scalar":
        if not isinstance(c, RationalFunc):
            c = RationalFunc.from_int(c)
        return cls(size, {CentralMonomial.one(size): c})

    @classmethod
    def q_power(cls, size: int, k: int) -> "Scalar":
        return cls(size, {CentralMonomial.one(size): RationalFunc.q_power(k)})

    @classmethod
    def central(cls, size: int, exponents: Iterable[int]) -> "Scalar":
        return cls(size, {CentralMonomial(exponents): _RF_ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RationalFunc)):
            other = Scalar.from_rational(self.size, other)
        return isinstance(other, Scalar) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.size != self.size:
                raise ValueError("scalars over different index sets")
            return other
        return Scalar.from_rational(self.size, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return Scalar(self.size, t)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.size, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        t: dict[CentralMonomial, RationalFunc] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                c = c1 * c2
                t[m] = t[m] + c if m in t else c
        return Scalar(self.size, t)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def inv(self) -> "Scalar":
        if len(self.terms) != 1:
            raise ValueError("only single-term scalars are invertible")
        (m, c), = self.terms.items()
        return Scalar(self.size, {m.inv(): c.inv()})

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = Scalar.from_rational(self.size, 1)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            cs = str(c)
            if m.is_one():
                parts.append(f"({cs})")
            else:
                parts.append(f"({cs})*{m}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# coefficient fields used by the algebra engines
# ---------------------------------------------------------------------------


class ExactField:
    """Coefficients are canonical :class:`RationalFunc` values."""

    exact = True
    name = "exact"

    def __init__(self):
        self.zero = _RF_ZERO
        self.one = _RF_ONE

    def __repr__(self):
        return "ExactField()"

    def __eq__(self, other):
        return isinstance(other, ExactField)

    def __hash__(self):
        return hash("ExactField")

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def mulq(a, k):
        return a.shift(k)

    @staticmethod
    def inv(a):
        return a.inv()

    @staticmethod
    def qpow(k):
        return RationalFunc.q_power(k)

    @staticmethod
    def from_int(c):
        return RationalFunc.from_int(c)

    @staticmethod
    def from_ratfunc(rf: RationalFunc):
        return rf

    @staticmethod
    def qint(n, d=1):
        return qint(n, d)

    @staticmethod
    def qfactorial(n, d=1):
        return qfactorial(n, d)

    @staticmethod
    def to_ratfunc(a) -> RationalFunc:
        return a


class ModularField:
    """Coefficients are residues modulo ``p`` with ``q`` specialised to ``qv``.

    Only the deformation parameter is specialised; central monomials keep
    their exponents, so the braid-group action on them stays available.  A
    nonzero rational function of bounded degree vanishes at a uniformly
    random residue with probability at most ``deg / p``.
    """

    exact = False
    name = "prob"

    def __init__(self, qv: int | None = None, p: int = MERSENNE61, seed: int | None = None):
        self.p = p
        if qv is None:
            qv = random.Random(seed).randrange(2, p - 1)
        self.qv = qv % p
        self.qinv = pow(self.qv, -1, p)
        self.zero = 0
        self.one = 1
        self._pow: dict[int, int] = {}
        self._qi: dict[tuple[int, int], int] = {}

    def __repr__(self):
        return f"ModularField(qv={self.qv}, p={self.p})"

    def __eq__(self, other):
        return isinstance(other, ModularField) and (self.qv, self.p) == (other.qv, other.p)

    def __hash__(self):
        return hash(("ModularField", self.qv, self.p))

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def mulq(self, a, k):
        return a * self.qpow(k) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def qpow(self, k):
        v = self._pow.get(k)
        if v is None:
            v = pow(self.qv if k >= 0 else self.qinv, abs(k), self.p)
            self._pow[k] = v
        return v

    def from_int(self, c):
        c = _to_fraction(c)
        return c.numerator * pow(c.denominator, -1, self.p) % self.p

    def from_ratfunc(self, rf: RationalFunc):
        return rf.eval_mod(self.qv, self.p)

    def qint(self, n, d=1):
        key = (n, d)
        v = self._qi.get(key)
        if v is None:
            v = self.from_ratfunc(qint(n, d))
            self._qi[key] = v
        return v

    def qfactorial(self, n, d=1):
        out = 1
        for k in range(1, n + 1):
            out = out * self.qint(k, d) % self.p
        return out

    def to_ratfunc(self, a) -> RationalFunc:
        raise TypeError("modular coefficients have no exact lift")


EXACT = ExactField()
