"""Truncated power series in ``u^{-1}`` and factored highest-weight series.

A :class:`TruncatedSeries` stores ``c_0 + c_1 u^{-1} + ... + c_K u^{-K}``.
Coefficients may be scalars (:class:`~fractions.Fraction`) or any ring
element supporting ``+``, ``-``, ``*`` (e.g. sparse operators).  Products keep
the left/right order of the factors, so noncommutative coefficients are fine.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import InvalidInput, SingularSeries
from .exact import Polynomial, RationalFunction, RootMultiset, as_fraction, rational_roots

DEFAULT_ORDER = 8

__all__ = [
    "DEFAULT_ORDER",
    "TruncatedSeries",
    "FactoredSeries",
    "series_add",
    "series_mul",
    "series_inverse",
    "shift_argument",
    "factored_to_series",
    "rf_to_series",
    "factored_mul",
    "factored_div",
    "ring_inverse",
]


def ring_inverse(x):
    """Two-sided inverse of a scalar or an operator."""
    if isinstance(x, (int, Fraction)):
        if x == 0:
            raise SingularSeries("constant term is not invertible")
        return 1 / Fraction(x)
    try:
        return x.inverse()
    except ZeroDivisionError as exc:
        raise SingularSeries(f"constant term is not invertible: {exc}") from exc


def _zero_like(c):
    return c * 0


def _scalar(x) -> bool:
    return isinstance(x, (int, Fraction))


class TruncatedSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if len(coeffs) == 0:
            raise InvalidInput("a truncated series needs at least the constant term")
        self.coeffs = tuple(Fraction(c) if isinstance(c, int) else c for c in coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, order: int) -> "TruncatedSeries":
        z = _zero_like(c)
        return cls([c] + [z] * order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.constant(Fraction(1), order)

    def __getitem__(self, r: int):
        return self.coeffs[r]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise InvalidInput(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def map(self, fn) -> "TruncatedSeries":
        return TruncatedSeries([fn(c) for c in self.coeffs])

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            k = min(self.order, other.order)
            return TruncatedSeries([a + b for a, b in zip(self.coeffs[: k + 1], other.coeffs)])
        cs = list(self.coeffs)
        cs[0] = cs[0] + other
        return TruncatedSeries(cs)

    def __radd__(self, other):
        cs = list(self.coeffs)
        cs[0] = other + cs[0]
        return TruncatedSeries(cs)

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            k = min(self.order, other.order)
            a, b = self.coeffs, other.coeffs
            out = []
            for r in range(k + 1):
                acc = a[0] * b[r]
                for s in range(1, r + 1):
                    acc = acc + a[s] * b[r - s]
                out.append(acc)
            return TruncatedSeries(out)
        return TruncatedSeries([c * other for c in self.coeffs])

    def __rmul__(self, other):
        return TruncatedSeries([other * c for c in self.coeffs])

    def __truediv__(self, scalar):
        if not _scalar(scalar):
            return NotImplemented
        inv = 1 / Fraction(scalar)
        return TruncatedSeries([c * inv for c in self.coeffs])

    def inverse(self) -> "TruncatedSeries":
        a = self.coeffs
        a0inv = ring_inverse(a[0])
        b = [a0inv]
        for r in range(1, len(a)):
            acc = a[1] * b[r - 1]
            for k in range(2, r + 1):
                acc = acc + a[k] * b[r - k]
            b.append(-(a0inv * acc))
        return TruncatedSeries(b)

    def shift(self, c) -> "TruncatedSeries":
        """Substitute ``u -> u + c``; exact to the stored order."""
        c = as_fraction(c)
        if c == 0:
            return self
        k = self.order
        out = [self.coeffs[0]] + [None] * k
        for t in range(1, k + 1):
            acc = None
            for r in range(1, t + 1):
                j = t - r
                # binom(-r, j) = (-1)^j binom(r + j - 1, j)
                w = (-1) ** j * comb(r + j - 1, j) * c**j
                if w == 0:
                    continue
                term = self.coeffs[r] * w
                acc = term if acc is None else acc + term
            out[t] = acc if acc is not None else _zero_like(self.coeffs[t])
        return TruncatedSeries(out)

    def scale(self, a) -> "TruncatedSeries":
        """Substitute ``u -> a*u``."""
        a = as_fraction(a)
        if a == 0:
            raise InvalidInput("cannot substitute u -> 0*u")
        return TruncatedSeries([c * (1 / a) ** r for r, c in enumerate(self.coeffs)])

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def first_nonzero(self):
        for r, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return r
        return None

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        k = min(self.order, other.order)
        return all(_eq(a, b) for a, b in zip(self.coeffs[: k + 1], other.coeffs[: k + 1]))

    __hash__ = None

    def __repr__(self):
        if all(_scalar(c) for c in self.coeffs):
            terms = []
            for r, c in enumerate(self.coeffs):
                if c:
                    terms.append(f"{c}" if r == 0 else f"{c}*u^-{r}")
            return "TruncatedSeries(" + (" + ".join(terms) or "0") + f" + O(u^-{self.order + 1}))"
        return f"TruncatedSeries(order={self.order})"


def _is_zero(c) -> bool:
    if _scalar(c):
        return c == 0
    return c.is_zero()


def _eq(a, b) -> bool:
    if _scalar(a) and _scalar(b):
        return a == b
    return a == b


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    return a.inverse()


def shift_argument(s: TruncatedSeries, c) -> TruncatedSeries:
    return s.shift(c)


def rf_to_series(f: RationalFunction, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Expand a rational function regular at ``u = oo`` in powers of ``u^{-1}``."""
    if not f.is_regular_at_infinity():
        raise InvalidInput(f"{f} has a pole at infinity")
    if f.is_zero():
        return TruncatedSeries([Fraction(0)] * (order + 1))
    d = f.denom.degree
    # f = n(w)/q(w) with w = 1/u, n(w) = w^d N(1/w), q(w) = w^d D(1/w)
    n = [f.numer[d - k] for k in range(d + 1)]
    q = [f.denom[d - k] for k in range(d + 1)]
    out = []
    for r in range(order + 1):
        acc = n[r] if r < len(n) else Fraction(0)
        for k in range(1, min(r, d) + 1):
            acc -= q[k] * out[r - k]
        out.append(acc / q[0])
    return TruncatedSeries(out)


class FactoredSeries:
    """``prod_a (1 + a u^{-1})^{mult(a)} * tail(u)``, an element of ``1 + u^{-1}Q[[u^{-1}]]``.

    Equality is equality of the underlying series, not of the factorization.
    """

    __slots__ = ("roots", "tail", "_rf")

    def __init__(self, roots=None, tail: RationalFunction | None = None):
        self.roots = roots if isinstance(roots, RootMultiset) else RootMultiset(roots or {})
        self.tail = RationalFunction.one() if tail is None else tail
        t = self.tail
        if t.numer.degree != t.denom.degree or t.numer.lead != 1:
            raise InvalidInput(f"tail {t} must be regular at infinity with value 1")
        self._rf = None

    @classmethod
    def one(cls) -> "FactoredSeries":
        return cls()

    @classmethod
    def linear(cls, a) -> "FactoredSeries":
        """``1 + a u^{-1}``."""
        a = as_fraction(a)
        return cls({a: 1}) if a != 0 else cls()

    @classmethod
    def from_rational(cls, f: RationalFunction) -> "FactoredSeries":
        """Canonical factorization: nonzero rational parameters of the numerator become roots."""
        if f.numer.degree != f.denom.degree or f.numer.lead != 1:
            raise InvalidInput(f"{f} is not of the form 1 + O(u^-1)")
        zeros, _ = rational_roots(f.numer)
        roots = {-z: k for z, k in zeros.items() if z != 0}
        prefactor = RationalFunction.one()
        for a, k in roots.items():
            prefactor = prefactor * RationalFunction.linear_uinv(a) ** k
        return cls(roots, f / prefactor)

    def to_rational(self) -> RationalFunction:
        if self._rf is None:
            num = Polynomial([1])
            for a, k in self.roots.items():
                num = num * Polynomial([a, 1]) ** k
            rf = RationalFunction(num, Polynomial([0, 1]) ** self.roots.size())
            self._rf = rf * self.tail
        return self._rf

    def series(self, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        return rf_to_series(self.to_rational(), order)

    def is_polynomial_in_uinv(self) -> bool:
        d = self.to_rational().denom
        return d == Polynomial([0, 1]) ** d.degree

    def __mul__(self, other):
        if not isinstance(other, FactoredSeries):
            return NotImplemented
        return FactoredSeries.from_rational(self.to_rational() * other.to_rational())

    def __truediv__(self, other):
        if not isinstance(other, FactoredSeries):
            return NotImplemented
        return FactoredSeries.from_rational(self.to_rational() / other.to_rational())

    def __pow__(self, k: int):
        return FactoredSeries.from_rational(self.to_rational() ** k)

    def inverse(self) -> "FactoredSeries":
        return FactoredSeries.from_rational(self.to_rational().inverse())

    def shift(self, c) -> "FactoredSeries":
        """``f(u + c)``."""
        return FactoredSeries.from_rational(self.to_rational().shift(c))

    def __call__(self, x):
        return self.to_rational()(x)

    def __eq__(self, other):
        if isinstance(other, FactoredSeries):
            return self.to_rational() == other.to_rational()
        if isinstance(other, RationalFunction):
            return self.to_rational() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.to_rational())

    def __repr__(self):
        return f"FactoredSeries(roots={dict(self.roots)}, tail={self.tail})"

    def __str__(self):
        parts = []
        for a, k in self.roots.items():
            base = f"(1 + {a}u^-1)" if a > 0 else f"(1 - {-a}u^-1)"
            parts.append(base + (f"^{k}" if k > 1 else ""))
        if self.tail != RationalFunction.one():
            parts.append(f"[{self.tail}]")
        return "*".join(parts) or "1"


def factored_to_series(f: FactoredSeries, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return f.series(order)


def factored_mul(a: FactoredSeries, b: FactoredSeries) -> FactoredSeries:
    return a * b


def factored_div(a: FactoredSeries, b: FactoredSeries) -> FactoredSeries:
    return a / b


def rational_from_series(s: TruncatedSeries, max_degree: int | None = None):
    """Recover ``N(u)/D(u)`` with ``deg <= max_degree`` matching every stored coefficient.

    Returns None when no such rational function reproduces the series; the
    degree bound is kept below half the order so the fit is overdetermined.
    """
    from .exact import solve_linear

    k = s.order
    if max_degree is None:
        max_degree = (k - 1) // 2
    c = [as_fraction(x) for x in s.coeffs]
    for d in range(max_degree + 1):
        # q(w) s(w) = n(w) + O(w^{k+1}); q(w) = 1 + q_1 w + ... + q_d w^d, deg n <= d
        rows, rhs = [], []
        for r in range(d + 1, k + 1):
            rows.append([c[r - j] if r - j >= 0 else Fraction(0) for j in range(1, d + 1)])
            rhs.append(-c[r])
        q = solve_linear(rows, rhs) if d else ([] if all(x == 0 for x in rhs) else None)
        if q is None:
            continue
        qw = [Fraction(1)] + q
        nw = []
        for r in range(d + 1):
            nw.append(sum(qw[j] * c[r - j] for j in range(0, r + 1) if j < len(qw)))
        numer = Polynomial([nw[d - i] for i in range(d + 1)])
        denom = Polynomial([qw[d - i] for i in range(d + 1)])
        try:
            f = RationalFunction(numer, denom)
        except InvalidInput:
            continue
        if f.is_regular_at_infinity() and rf_to_series(f, k) == s:
            return f
    return None

