"""Exact polynomials and rational functions in one variable ``u`` over Q.

Scalars are :class:`fractions.Fraction`.  Everything here is immutable.
"""
from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import InvalidInput, PoleError, UnsupportedRoot

__all__ = [
    "Polynomial",
    "RationalFunction",
    "RootMultiset",
    "rf_reduce",
    "rational_roots",
    "shift_quotient_witness",
    "arrow_scalar",
    "as_fraction",
    "rref",
    "solve_linear",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use exact rationals")
    return Fraction(x)


class Polynomial:
    """Polynomial in ``u`` with rational coefficients, stored ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def u(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Polynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def monic(self) -> "Polynomial":
        if self.is_zero():
            raise InvalidInput("the zero polynomial has no monic normalization")
        lc = self.lead
        return Polynomial(c / lc for c in self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Polynomial", self.coeffs))

    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coeffs)
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise InvalidInput("negative power of a polynomial")
        out = Polynomial([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "Polynomial"):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lead
        if self.degree < dq:
            return Polynomial(), self
        quot = [Fraction(0)] * (self.degree - dq + 1)
        for k in range(self.degree - dq, -1, -1):
            c = rem[k + dq] / lc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Polynomial(quot), Polynomial(rem[:dq])

    def __floordiv__(self, other) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Polynomial":
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, q: "Polynomial") -> "Polynomial":
        out = Polynomial()
        for c in reversed(self.coeffs):
            out = out * q + Polynomial([c])
        return out

    def shift(self, c) -> "Polynomial":
        """Return ``p(u + c)``."""
        c = as_fraction(c)
        if c == 0:
            return self
        return self.compose(Polynomial([c, 1]))

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return _poly_str(self.coeffs)


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial([x])
    return NotImplemented


def _poly_str(coeffs, var="u") -> str:
    if not coeffs:
        return "0"
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd; gcd(0, 0) is 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


class RationalFunction:
    """Reduced quotient ``numer/denom`` with ``denom`` monic."""

    __slots__ = ("numer", "denom")

    def __init__(self, numer, denom=None):
        numer = _as_poly(numer) if not isinstance(numer, Polynomial) else numer
        denom = Polynomial([1]) if denom is None else _as_poly(denom)
        if denom.is_zero():
            raise InvalidInput("zero denominator")
        if numer.is_zero():
            self.numer, self.denom = Polynomial(), Polynomial([1])
            return
        g = poly_gcd(numer, denom)
        if g.degree > 0:
            numer, denom = numer // g, denom // g
        lc = denom.lead
        self.numer = numer * (1 / lc)
        self.denom = denom * (1 / lc)

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls(Polynomial([1]))

    @classmethod
    def linear_uinv(cls, a) -> "RationalFunction":
        """``1 + a u^{-1} = (u + a)/u``."""
        return cls(Polynomial([as_fraction(a), 1]), Polynomial([0, 1]))

    def is_zero(self) -> bool:
        return self.numer.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.numer == other.numer and self.denom == other.denom
        if isinstance(other, (int, Fraction, Polynomial)):
            return self == RationalFunction(other)
        return NotImplemented

    def __hash__(self):
        return hash(("RationalFunction", self.numer, self.denom))

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, Polynomial)):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(
            self.numer * other.denom + other.numer * self.denom, self.denom * other.denom
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numer, self.denom)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.numer * other.numer, self.denom * other.denom)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.denom, self.numer)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.numer**k, self.denom**k)

    def __call__(self, x):
        x = as_fraction(x)
        d = self.denom(x)
        if d == 0:
            raise PoleError(f"pole at u = {x}")
        return self.numer(x) / d

    def shift(self, c) -> "RationalFunction":
        """Return ``f(u + c)``."""
        return RationalFunction(self.numer.shift(c), self.denom.shift(c))

    def substitute_linear(self, a, b) -> "RationalFunction":
        """Return ``f(a*u + b)``."""
        q = Polynomial([as_fraction(b), as_fraction(a)])
        return RationalFunction(self.numer.compose(q), self.denom.compose(q))

    def is_regular_at_infinity(self) -> bool:
        return self.numer.degree <= self.denom.degree

    def value_at_infinity(self) -> Fraction:
        if not self.is_regular_at_infinity():
            raise PoleError("pole at infinity")
        if self.numer.degree < self.denom.degree:
            return Fraction(0)
        return self.numer.lead

    def zeros(self) -> "RootMultiset":
        return rational_roots(self.numer)[0]

    def poles(self) -> "RootMultiset":
        return rational_roots(self.denom)[0]

    def __repr__(self):
        return f"RationalFunction({self.numer!r}, {self.denom!r})"

    def __str__(self):
        if self.denom.degree == 0:
            return str(self.numer)
        return f"({self.numer})/({self.denom})"


def rf_reduce(numer: Polynomial, denom: Polynomial) -> RationalFunction:
    """Cancel common factors and make the denominator monic."""
    return RationalFunction(numer, denom)


class RootMultiset(Mapping):
    """Immutable map from rational root to positive multiplicity."""

    __slots__ = ("_data", "_hash")

    def __init__(self, data=None):
        acc: dict = defaultdict(int)
        if data is not None:
            items = data.items() if isinstance(data, Mapping) else ((r, 1) for r in data)
            for r, k in items:
                acc[as_fraction(r)] += int(k)
        for r, k in acc.items():
            if k < 0:
                raise InvalidInput(f"negative multiplicity {k} for root {r}")
        self._data = {r: k for r, k in sorted(acc.items()) if k}
        self._hash = None

    def __getitem__(self, r):
        return self._data.get(as_fraction(r), 0)

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __contains__(self, r):
        return as_fraction(r) in self._data

    def size(self) -> int:
        return sum(self._data.values())

    def elements(self) -> list:
        out = []
        for r, k in self._data.items():
            out.extend([r] * k)
        return out

    def __add__(self, other: "RootMultiset") -> "RootMultiset":
        acc = dict(self._data)
        for r, k in other.items():
            acc[r] = acc.get(r, 0) + k
        return RootMultiset(acc)

    def __sub__(self, other: "RootMultiset") -> "RootMultiset":
        """Multiset difference, clipped at zero."""
        return RootMultiset({r: max(k - other[r], 0) for r, k in self._data.items()})

    def __and__(self, other: "RootMultiset") -> "RootMultiset":
        return RootMultiset({r: min(k, other[r]) for r, k in self._data.items()})

    def shifted(self, c) -> "RootMultiset":
        c = as_fraction(c)
        return RootMultiset({r + c: k for r, k in self._data.items()})

    def __eq__(self, other):
        if isinstance(other, RootMultiset):
            return self._data == other._data
        if isinstance(other, Mapping):
            return self == RootMultiset(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._data.items()))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{r}: {k}" for r, k in self._data.items())
        return "RootMultiset({" + body + "})"


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _integer_primitive(p: Polynomial) -> list:
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints]


def _divide_linear(p: Polynomial, r: Fraction) -> Polynomial:
    """Synthetic division by ``u - r``; caller guarantees ``p(r) == 0``."""
    n = p.degree
    out = [Fraction(0)] * n
    carry = Fraction(0)
    for k in range(n, 0, -1):
        carry = p.coeffs[k] + carry * r
        out[k - 1] = carry
    return Polynomial(out)


def rational_roots(p: Polynomial):
    """Split ``p = remainder * prod (u - r)^mult`` over the rationals.

    Returns ``(RootMultiset, remainder)``; the remainder has no rational root.
    """
    if p.is_zero():
        raise InvalidInput("the zero polynomial has no root decomposition")
    roots: dict = {}
    rem = p
    k0 = 0
    while rem.degree > 0 and rem.coeffs[0] == 0:
        rem = Polynomial(rem.coeffs[1:])
        k0 += 1
    if k0:
        roots[Fraction(0)] = k0
    if rem.degree > 0:
        ints = _integer_primitive(rem)
        cands = set()
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                cands.add(Fraction(a, b))
                cands.add(Fraction(-a, b))
        for r in sorted(cands):
            while rem.degree > 0 and rem(r) == 0:
                rem = _divide_linear(rem, r)
                roots[r] = roots.get(r, 0) + 1
    return RootMultiset(roots), rem


def shift_quotient_witness(f: RationalFunction, step=1) -> Optional[Polynomial]:
    """Find the monic ``Q`` with ``Q(u + step)/Q(u) == f``, or return None.

    Zeros count +1 and poles -1; on each coset ``x + step*Z`` the multiplicity
    of ``x`` in ``Q`` is minus the sum of the signed counts at ``x, x+step, ...``.
    """
    step = as_fraction(step)
    if step <= 0 or step.denominator != 1:
        raise InvalidInput("step must be a positive integer")
    if f.is_zero():
        raise InvalidInput("f must be nonzero")
    if f.numer.degree != f.denom.degree or f.numer.lead != f.denom.lead:
        return None
    zeros, rem_n = rational_roots(f.numer)
    poles, rem_d = rational_roots(f.denom)
    if rem_n.degree > 0 or rem_d.degree > 0:
        raise UnsupportedRoot(
            f"irrational zeros or poles in {f}: factors {rem_n} / {rem_d}"
        )
    chi: dict = defaultdict(int)
    for r, k in zeros.items():
        chi[r] += k
    for r, k in poles.items():
        chi[r] -= k
    cosets: dict = defaultdict(dict)
    for x, k in chi.items():
        if k == 0:
            continue
        base = x - step * math.floor(x / step)
        cosets[base][int((x - base) / step)] = k
    mult: dict = {}
    for base, counts in cosets.items():
        if sum(counts.values()) != 0:
            return None
        lo, hi = min(counts), max(counts)
        suffix = 0
        for pos in range(hi, lo - 1, -1):
            suffix += counts.get(pos, 0)
            m = -suffix
            if m < 0:
                return None
            if m:
                mult[base + step * pos] = m
    q = Polynomial([1])
    for x, m in sorted(mult.items()):
        q = q * Polynomial([-x, 1]) ** m
    return q


def arrow_scalar(a, b) -> bool:
    """``a -> b``: the difference ``a - b`` is a nonnegative integer."""
    d = as_fraction(a) - as_fraction(b)
    return d.denominator == 1 and d >= 0


def rref(rows: list) -> tuple:
    """Reduced row echelon form over Q.  Returns ``(matrix, pivot_columns)``."""
    a = [[as_fraction(x) for x in row] for row in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def solve_linear(matrix: list, rhs: list) -> Optional[list]:
    """One solution of ``matrix @ x = rhs`` (free variables set to 0), or None."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x
