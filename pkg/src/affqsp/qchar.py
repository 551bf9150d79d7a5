"""Y-monomials, sl2 evaluation q-characters and their boundary twist.

Spectral parameters are formal monomials ``a^x q^y C^z`` stored as integer
exponent vectors, so every comparison here is exact.  Rational functions in
the spectral variable are described by the multisets ``{p}`` appearing in
factors ``(1 - z p)``; no series are expanded.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

__all__ = [
    "SpectralParam",
    "YMonomial",
    "YPolynomial",
    "EigenData",
    "GammaDescriptor",
    "y_twist",
    "chi_q_eval_sl2",
    "boundary_chi_eval_sl2",
    "boundary_chi_eval_sl2_direct",
    "dagger",
    "star",
    "gamma_iota",
    "monomial_symmetry_check",
    "onsager_partner",
]


@dataclass(frozen=True, order=True)
class SpectralParam:
    """The monomial ``a^ea q^eq C^eC``; the group law adds exponents."""

    ea: int = 0
    eq: int = 0
    eC: int = 0

    def __mul__(self, other: "SpectralParam") -> "SpectralParam":
        return SpectralParam(self.ea + other.ea, self.eq + other.eq, self.eC + other.eC)

    def inverse(self) -> "SpectralParam":
        return SpectralParam(-self.ea, -self.eq, -self.eC)

    def shift(self, k: int) -> "SpectralParam":
        """Multiply by ``q^k``."""
        return SpectralParam(self.ea, self.eq + k, self.eC)

    def __str__(self):
        parts = []
        for sym, e in (("C", self.eC), ("a", self.ea), ("q", self.eq)):
            if e == 1:
                parts.append(sym)
            elif e:
                parts.append(f"{sym}^{e}")
        return "".join(parts) or "1"

    @classmethod
    def parse(cls, text: str) -> "SpectralParam":
        """Read strings such as ``"a"``, ``"C a^-1 q^3"`` or ``"1"``."""
        exps = {"a": 0, "q": 0, "C": 0}
        for tok in text.replace("*", " ").split():
            if tok == "1":
                continue
            sym, _, e = tok.partition("^")
            if sym not in exps:
                raise ValueError(f"unknown spectral symbol {sym!r}")
            exps[sym] += int(e) if e else 1
        return cls(exps["a"], exps["q"], exps["C"])


A = SpectralParam(1, 0, 0)
C = SpectralParam(0, 0, 1)


class YMonomial:
    """A product of ``Y_{i,p}^{e}``; zero exponents are never stored."""

    __slots__ = ("exps", "_key")

    def __init__(self, exps: Mapping[tuple[int, SpectralParam], int] | None = None):
        clean = {k: e for k, e in (exps or {}).items() if e}
        self.exps = clean
        self._key = tuple(sorted(clean.items()))

    @classmethod
    def Y(cls, i: int, p: SpectralParam, e: int = 1) -> "YMonomial":
        return cls({(i, p): e})

    def __mul__(self, other: "YMonomial") -> "YMonomial":
        out = dict(self.exps)
        for k, e in other.exps.items():
            out[k] = out.get(k, 0) + e
        return YMonomial(out)

    def inverse(self) -> "YMonomial":
        return YMonomial({k: -e for k, e in self.exps.items()})

    def __eq__(self, other):
        return isinstance(other, YMonomial) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return self._key < other._key

    def is_one(self) -> bool:
        return not self.exps

    def __str__(self):
        if not self.exps:
            return "1"
        parts = []
        for (i, p), e in self._key:
            s = f"Y[{i},{p}]"
            parts.append(s if e == 1 else f"{s}^{e}")
        return "*".join(parts)

    __repr__ = __str__


class YPolynomial:
    """An integer combination of Y-monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[YMonomial, int] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def one(cls) -> "YPolynomial":
        return cls({YMonomial(): 1})

    @classmethod
    def from_monomials(cls, monos: Iterable[YMonomial]) -> "YPolynomial":
        return cls(Counter(monos))

    def __add__(self, other: "YPolynomial") -> "YPolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return YPolynomial(out)

    def __sub__(self, other: "YPolynomial") -> "YPolynomial":
        return self + YPolynomial({m: -c for m, c in other.terms.items()})

    def __mul__(self, other: "YPolynomial") -> "YPolynomial":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return YPolynomial(out)

    def __eq__(self, other):
        return isinstance(other, YPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            parts.append(str(m) if c == 1 else f"{c}*{m}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_list(self) -> list:
        """JSON-friendly form: ``[[coeff, "Y[i,p]^e*..."], ...]`` in a fixed order."""
        return [[c, str(m)] for m, c in sorted(self.terms.items())]


def _twist_monomial(m: YMonomial) -> YMonomial:
    out = YMonomial()
    for (i, p), e in m.exps.items():
        out = out * YMonomial({(i, C * p): e, (i, p.inverse()): -e})
    return out


def y_twist(p: YPolynomial) -> YPolynomial:
    """The ring map ``Y_{i,p} -> Y_{i,Cp} Y_{i,p^-1}^-1``."""
    out: dict = {}
    for m, c in p.terms.items():
        t = _twist_monomial(m)
        out[t] = out.get(t, 0) + c
    return YPolynomial(out)


def _chi_monomial(n: int, k0: int, a: SpectralParam) -> YMonomial:
    exps: Counter = Counter()
    for k in range(k0 + 1, n + 1):
        exps[(1, a.shift(n - 2 * k + 1))] += 1
    for k in range(1, k0 + 1):
        exps[(1, a.shift(n - 2 * k + 3))] -= 1
    return YMonomial(exps)


def chi_q_eval_sl2(n: int, a: SpectralParam = A) -> YPolynomial:
    """q-character of the (n+1)-dimensional evaluation module at spectral parameter ``a``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return YPolynomial.from_monomials(_chi_monomial(n, k0, a) for k0 in range(n + 1))


def _boundary_monomial(n: int, k0: int, a: SpectralParam) -> YMonomial:
    ainv = a.inverse()
    ca = C * a
    exps: Counter = Counter()
    for k in range(k0 + 1, n + 1):
        exps[(1, ca.shift(n - 2 * k + 1))] += 1
        exps[(1, ainv.shift(-n + 2 * k - 1))] -= 1
    for k in range(1, k0 + 1):
        exps[(1, ainv.shift(-n + 2 * k - 3))] += 1
        exps[(1, ca.shift(n - 2 * k + 3))] -= 1
    return YMonomial(exps)


def boundary_monomials(n: int, a: SpectralParam = A) -> list[YMonomial]:
    """The summands of the boundary character, written out directly, in order ``k0 = 0..n``."""
    return [_boundary_monomial(n, k0, a) for k0 in range(n + 1)]


def boundary_chi_eval_sl2_direct(n: int, a: SpectralParam = A) -> YPolynomial:
    """Boundary character as the explicit monomial sum."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return YPolynomial.from_monomials(boundary_monomials(n, a))


def boundary_chi_eval_sl2(n: int, a: SpectralParam = A, check: bool = True) -> YPolynomial:
    """Boundary character as the twist of the ordinary one.

    With ``check`` the explicit monomial sum is also built and an
    ``AssertionError`` is raised if the two disagree.
    """
    out = y_twist(chi_q_eval_sl2(n, a))
    if check and out != boundary_chi_eval_sl2_direct(n, a):
        raise AssertionError("twisted character differs from the direct monomial sum")
    return out


def onsager_partner(a: SpectralParam) -> SpectralParam:
    """``q^-2 C^-1 a^-1``, the parameter giving an isomorphic q-Onsager module."""
    return SpectralParam(-a.ea, -a.eq - 2, -a.eC - 1)


def monomial_symmetry_check(n: int, a: SpectralParam = A) -> bool:
    """Whether the k-th boundary monomial at ``a`` is the (n-k)-th at the partner parameter."""
    mine = boundary_monomials(n, a)
    theirs = boundary_monomials(n, onsager_partner(a))
    return all(mine[k] == theirs[n - k] for k in range(n + 1))


# ---------------------------------------------------------------------------
# eigenvalue series
# ---------------------------------------------------------------------------


def star(params: Iterable[SpectralParam]) -> tuple[SpectralParam, ...]:
    """Invert the zeros of ``prod (1 - z p)``: each ``p`` becomes ``p^-1``."""
    return tuple(sorted(p.inverse() for p in params))


def dagger(params: Iterable[SpectralParam]) -> tuple[SpectralParam, ...]:
    """Send each zero ``r`` of ``prod (1 - z p)`` to ``C^-1 r^-1``.

    On the factor parameters ``p = r^-1`` this reads ``p -> C p^-1``.
    """
    return tuple(sorted(C * p.inverse() for p in params))


@dataclass
class EigenData:
    """Factor parameters of ``Q_i(z) = prod (1 - z a)`` and ``R_i(z) = prod (1 - z b)`` per node."""

    Q: dict = field(default_factory=dict)
    R: dict = field(default_factory=dict)

    def q_params(self, i: int) -> tuple[SpectralParam, ...]:
        return tuple(sorted(self.Q.get(i, ())))

    def r_params(self, i: int) -> tuple[SpectralParam, ...]:
        return tuple(sorted(self.R.get(i, ())))

    @classmethod
    def from_json(cls, data: Mapping) -> "EigenData":
        """Read ``{"Q": {"1": ["a", ...]}, "R": {...}}``."""
        out = cls()
        for key, target in (("Q", out.Q), ("R", out.R)):
            for i, roots in (data.get(key) or {}).items():
                target[int(i)] = [SpectralParam.parse(r) for r in roots]
        return out

    def swapped(self) -> "EigenData":
        return EigenData(dict(self.R), dict(self.Q))


@dataclass
class GammaDescriptor:
    """``Qt(q_i^-1 z)/Qt(q_i z) * Qd(q_i z)/Qd(q_i^-1 z)`` stored by factor parameters.

    ``numerator`` and ``denominator`` list the parameters ``p`` of factors
    ``(1 - z p)`` after cancelling common ones.  The scalar prefactor of the
    generating series is kept as a label only.
    """

    i: int
    d: int
    qtilde: tuple
    qtilde_dag: tuple
    numerator: tuple
    denominator: tuple
    prefactor: str = "(1 - q_i^-2 C z^2)/(1 - C z^2)"

    def is_trivial(self) -> bool:
        return not self.numerator and not self.denominator

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "qtilde": [str(p) for p in self.qtilde],
            "qtilde_dagger": [str(p) for p in self.qtilde_dag],
            "numerator": [str(p) for p in self.numerator],
            "denominator": [str(p) for p in self.denominator],
            "prefactor": self.prefactor,
        }


def gamma_iota(e: EigenData, i: int, d: int = 1) -> GammaDescriptor:
    """Eigenvalue series of the boundary Cartan current at node ``i``.

    ``Qt(z) = Q(Cz) R*(z)`` and ``Qd(z) = R(Cz) Q*(z)``; ``d`` is the
    symmetrising integer with ``q_i = q^d``.
    """
    qs, rs = e.q_params(i), e.r_params(i)
    qtilde = tuple(sorted([C * a for a in qs] + list(star(rs))))
    qdag = tuple(sorted([C * b for b in rs] + list(star(qs))))
    num = Counter([p.shift(-d) for p in qtilde] + [p.shift(d) for p in qdag])
    den = Counter([p.shift(d) for p in qtilde] + [p.shift(-d) for p in qdag])
    common = num & den
    num, den = num - common, den - common
    return GammaDescriptor(i, d, qtilde, qdag, tuple(sorted(num.elements())), tuple(sorted(den.elements())))
