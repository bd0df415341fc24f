"""Super linear algebra over C^{2n|2m} with exact rational entries.

Sign convention.  Every tensor product of operators is realized on the
graded tensor product of spaces by the Koszul rule

    (a_1 (x) ... (x) a_k)(x_1 (x) ... (x) x_k)
        = (-1)^{sum_{i<j} |a_j||x_i|} a_1 x_1 (x) ... (x) a_k x_k,

and a matrix ``A = [a_ij]`` over a superalgebra is the element
``sum e_ij (x) a_ij (-1)^{ij + j}`` (bars dropped).  All two- and three-site
operators (P, Q, R and their leg embeddings, T_1, T_2) are built from this
single rule in :func:`koszul` / :func:`embed_units`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInput, PoleError
from .exact import Polynomial, RationalFunction, as_fraction
from .report import Report

__all__ = [
    "AlgebraContext",
    "Op",
    "koszul",
    "embed_units",
    "TwoSiteOperator",
    "permutation_op",
    "q_op",
    "r_matrix",
    "r_matrix_symbolic",
    "SuperMatrix",
    "super_transpose",
    "check_yang_baxter",
]


@dataclass(frozen=True)
class AlgebraContext:
    """Parity data for osp_{2n|2m}; indices are 0-based, ``i' = N-1-i``."""

    m: int
    n: int
    parity: tuple

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise InvalidInput("need m, n >= 0 and m + n >= 1")
        p = tuple(int(b) for b in self.parity)
        object.__setattr__(self, "parity", p)
        if len(p) != self.m + self.n or any(b not in (0, 1) for b in p):
            raise InvalidInput(f"parity sequence {self.parity!r} is not a 0/1 string of length m+n")
        if p.count(0) != self.n:
            raise InvalidInput(f"parity sequence must contain exactly n={self.n} zeros")

    @classmethod
    def standard(cls, m: int, n: int) -> "AlgebraContext":
        return cls(m, n, (1,) * m + (0,) * n)

    @classmethod
    def from_string(cls, m: int, n: int, parity: str | None = None) -> "AlgebraContext":
        if parity is None:
            return cls.standard(m, n)
        if any(ch not in "01" for ch in parity):
            raise InvalidInput(f"parity string {parity!r} may only contain 0 and 1")
        return cls(m, n, tuple(int(ch) for ch in parity))

    @property
    def N(self) -> int:
        return 2 * (self.m + self.n)

    @property
    def kappa(self) -> int:
        return self.n - self.m - 1

    @property
    def parity_string(self) -> str:
        return "".join(map(str, self.parity))

    def prime(self, i: int) -> int:
        return self.N - 1 - i

    def bar(self, i: int) -> int:
        half = self.m + self.n
        return self.parity[i] if i < half else self.parity[self.N - 1 - i]

    def theta(self, i: int) -> int:
        return -1 if (i >= self.m + self.n and self.bar(i) == 1) else 1

    @property
    def grading(self) -> tuple:
        return tuple(self.bar(i) for i in range(self.N))

    def reduced(self) -> "AlgebraContext":
        """Context obtained by deleting the first parity bit (embedding theorem)."""
        if self.m + self.n < 2:
            raise InvalidInput("cannot reduce a rank-one context")
        first, rest = self.parity[0], self.parity[1:]
        if first == 0:
            return AlgebraContext(self.m, self.n - 1, rest)
        return AlgebraContext(self.m - 1, self.n, rest)

    def label(self) -> str:
        return f"osp({2 * self.n}|{2 * self.m}) parity {self.parity_string}"


class Op:
    """Sparse exact matrix; ``rows[i][j]`` holds the nonzero entries."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int | None = None, rows=None):
        self.nrows = nrows
        self.ncols = nrows if ncols is None else ncols
        self.rows = {} if rows is None else rows

    @classmethod
    def identity(cls, n: int) -> "Op":
        return cls(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def zero(cls, n: int, m: int | None = None) -> "Op":
        return cls(n, m)

    @classmethod
    def unit(cls, n: int, i: int, j: int, value=1) -> "Op":
        v = as_fraction(value)
        return cls(n, n, {i: {j: v}} if v else {})

    @classmethod
    def diag(cls, values: Sequence) -> "Op":
        n = len(values)
        return cls(n, n, {i: {i: as_fraction(v)} for i, v in enumerate(values) if v})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "Op":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        out = {}
        for i, row in enumerate(rows):
            d = {j: as_fraction(v) for j, v in enumerate(row) if v}
            if d:
                out[i] = d
        return cls(nr, nc, out)

    def to_dense(self) -> list:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, Fraction(0))

    def entries(self):
        for i, row in self.rows.items():
            for j, v in row.items():
                yield i, j, v

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def _check_shape(self, other: "Op"):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise InvalidInput(
                f"shape mismatch {(self.nrows, self.ncols)} vs {(other.nrows, other.ncols)}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + Op.identity(self.nrows) * other
        self._check_shape(other)
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            tgt = rows.setdefault(i, {})
            for j, v in r.items():
                s = tgt.get(j, 0) + v
                if s:
                    tgt[j] = s
                else:
                    tgt.pop(j, None)
            if not tgt:
                del rows[i]
        return Op(self.nrows, self.ncols, rows)

    __radd__ = __add__

    def __neg__(self):
        return Op(self.nrows, self.ncols, {i: {j: -v for j, v in r.items()} for i, r in self.rows.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Op(self.nrows, self.ncols)
            return Op(
                self.nrows,
                self.ncols,
                {i: {j: v * other for j, v in r.items()} for i, r in self.rows.items()},
            )
        if not isinstance(other, Op):
            return NotImplemented
        if self.ncols != other.nrows:
            raise InvalidInput(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        orows = other.rows
        out = {}
        for i, r in self.rows.items():
            acc = {}
            for k, a in r.items():
                ok = orows.get(k)
                if not ok:
                    continue
                for j, b in ok.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return Op(self.nrows, other.ncols, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, scalar):
        return self * (1 / as_fraction(scalar))

    def __eq__(self, other):
        if isinstance(other, Op):
            return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.rows == other.rows
        if isinstance(other, (int, Fraction)):
            return self == Op.identity(self.nrows) * other
        return NotImplemented

    __hash__ = None

    def apply(self, vec: dict) -> dict:
        out = {}
        for i, r in self.rows.items():
            acc = 0
            for j, v in r.items():
                x = vec.get(j)
                if x:
                    acc += v * x
            if acc:
                out[i] = Fraction(acc)
        return out

    def transpose(self) -> "Op":
        out = {}
        for i, j, v in self.entries():
            out.setdefault(j, {})[i] = v
        return Op(self.ncols, self.nrows, out)

    def scale_columns(self, signs: Sequence) -> "Op":
        return Op(
            self.nrows,
            self.ncols,
            {i: {j: v * signs[j] for j, v in r.items()} for i, r in self.rows.items()},
        )

    def inverse(self) -> "Op":
        if self.nrows != self.ncols:
            raise InvalidInput("only square operators are invertible")
        n = self.nrows
        a = [dict(self.rows.get(i, {})) for i in range(n)]
        inv = [{i: Fraction(1)} for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r].get(c)), None)
            if piv is None:
                raise ZeroDivisionError("singular operator")
            a[c], a[piv] = a[piv], a[c]
            inv[c], inv[piv] = inv[piv], inv[c]
            f = 1 / a[c][c]
            a[c] = {j: v * f for j, v in a[c].items()}
            inv[c] = {j: v * f for j, v in inv[c].items()}
            for r in range(n):
                if r != c and a[r].get(c):
                    g = a[r][c]
                    for j, v in a[c].items():
                        s = a[r].get(j, 0) - g * v
                        if s:
                            a[r][j] = s
                        else:
                            a[r].pop(j, None)
                    for j, v in inv[c].items():
                        s = inv[r].get(j, 0) - g * v
                        if s:
                            inv[r][j] = s
                        else:
                            inv[r].pop(j, None)
        return Op(n, n, {i: r for i, r in enumerate(inv) if r})

    def max_abs_entry(self):
        """``(value, (i, j))`` of the largest entry in absolute value, or ``(0, None)``."""
        best, where = Fraction(0), None
        for i, j, v in self.entries():
            if abs(v) > best:
                best, where = abs(v), (i, j)
        return best, where

    def __repr__(self):
        return f"Op({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def kron(a: Op, b: Op) -> Op:
    nb, mb = b.nrows, b.ncols
    out = {}
    for i, ra in a.rows.items():
        for k, rb in b.rows.items():
            row = {}
            for j, x in ra.items():
                base = j * mb
                for l, y in rb.items():
                    row[base + l] = x * y
            out[i * nb + k] = row
    return Op(a.nrows * nb, a.ncols * mb, out)


def parity_signs(grading: Sequence[int]) -> list:
    return [(-1) ** g for g in grading]


def koszul(factors: Sequence) -> Op:
    """Realize ``a_1 (x) ... (x) a_k`` on the graded tensor product.

    ``factors`` holds ``(op, parity, grading)`` triples with homogeneous ``op``.
    """
    op, _, grading = factors[-1]
    acc = op
    tail_parity = factors[-1][1]
    for op, parity, grading in reversed(factors[:-1]):
        left = op.scale_columns(parity_signs(grading)) if tail_parity % 2 else op
        acc = kron(left, acc)
        tail_parity += parity
    return acc


def embed_units(terms: dict, legs: Sequence[int], gradings: Sequence[Sequence[int]]) -> Op:
    """Realize ``sum coef * e_{i1 j1} (x) e_{i2 j2} (x) ...`` on chosen legs.

    ``terms`` maps ``((i1, j1), (i2, j2), ...)`` to a coefficient; the unit
    ``e_{i_s j_s}`` sits on leg ``legs[s]`` and the identity on every other leg.
    """
    dims = [len(g) for g in gradings]
    strides = [1] * len(dims)
    for a in range(len(dims) - 2, -1, -1):
        strides[a] = strides[a + 1] * dims[a + 1]
    total = strides[0] * dims[0]
    free = [a for a in range(len(dims)) if a not in legs]
    out: dict = {}
    for units, coef in terms.items():
        if not coef:
            continue
        unit_par = {leg: gradings[leg][i] + gradings[leg][j] for leg, (i, j) in zip(legs, units)}
        for free_idx in itertools.product(*(range(dims[a]) for a in free)):
            x = [0] * len(dims)
            for a, v in zip(free, free_idx):
                x[a] = v
            for leg, (_, j) in zip(legs, units):
                x[leg] = j
            y = list(x)
            for leg, (i, _) in zip(legs, units):
                y[leg] = i
            sign = 0
            for b, pb in unit_par.items():
                if pb % 2:
                    sign += sum(gradings[a][x[a]] for a in range(b))
            col = sum(s * v for s, v in zip(strides, x))
            row = sum(s * v for s, v in zip(strides, y))
            val = coef if sign % 2 == 0 else -coef
            r = out.setdefault(row, {})
            s = r.get(col, 0) + val
            if s:
                r[col] = s
            else:
                r.pop(col, None)
    out = {i: r for i, r in out.items() if r}
    return Op(total, total, out)


class TwoSiteOperator:
    """Element of End C^{2n|2m} (x) End C^{2n|2m} as a sum of matrix-unit terms."""

    def __init__(self, ctx: AlgebraContext, terms: dict):
        self.ctx = ctx
        self.terms = {k: as_fraction(v) for k, v in terms.items() if v}

    def __add__(self, other: "TwoSiteOperator") -> "TwoSiteOperator":
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0) + v
        return TwoSiteOperator(self.ctx, acc)

    def __mul__(self, scalar) -> "TwoSiteOperator":
        s = as_fraction(scalar)
        return TwoSiteOperator(self.ctx, {k: v * s for k, v in self.terms.items()})

    __rmul__ = __mul__

    @classmethod
    def identity(cls, ctx: AlgebraContext) -> "TwoSiteOperator":
        return cls(ctx, {((i, i), (j, j)): 1 for i in range(ctx.N) for j in range(ctx.N)})

    def realize(self) -> Op:
        g = self.ctx.grading
        return embed_units(self.terms, (0, 1), (g, g))

    def embed(self, legs: Sequence[int], gradings: Sequence[Sequence[int]]) -> Op:
        return embed_units(self.terms, legs, gradings)


def permutation_op(ctx: AlgebraContext) -> TwoSiteOperator:
    """``P = sum e_ij (x) e_ji (-1)^{j}``."""
    N = ctx.N
    return TwoSiteOperator(
        ctx, {((i, j), (j, i)): (-1) ** ctx.bar(j) for i in range(N) for j in range(N)}
    )


def q_op(ctx: AlgebraContext) -> TwoSiteOperator:
    """``Q = sum e_ij (x) e_{i'j'} (-1)^{ij} theta_i theta_j``."""
    N = ctx.N
    terms = {}
    for i in range(N):
        for j in range(N):
            sign = (-1) ** (ctx.bar(i) * ctx.bar(j)) * ctx.theta(i) * ctx.theta(j)
            terms[((i, j), (ctx.prime(i), ctx.prime(j)))] = sign
    return TwoSiteOperator(ctx, terms)


def r_matrix(ctx: AlgebraContext, at) -> TwoSiteOperator:
    """``R(x) = 1 - P/x + Q/(x - kappa)`` at a rational point."""
    x = as_fraction(at)
    if x == 0 or x == ctx.kappa:
        raise PoleError(f"R(u) has a pole at u = {x}")
    return TwoSiteOperator.identity(ctx) + permutation_op(ctx) * (-1 / x) + q_op(ctx) * (
        1 / (x - ctx.kappa)
    )


def r_matrix_symbolic(ctx: AlgebraContext) -> dict:
    """Terms of ``R(u)`` with :class:`RationalFunction` coefficients."""
    u = Polynomial([0, 1])
    one = RationalFunction.one()
    inv_u = RationalFunction(Polynomial([1]), u)
    inv_uk = RationalFunction(Polynomial([1]), u - ctx.kappa)
    out: dict = {}
    for k in TwoSiteOperator.identity(ctx).terms:
        out[k] = out.get(k, 0) + one
    for k, v in permutation_op(ctx).terms.items():
        out[k] = out.get(k, 0) - inv_u * v
    for k, v in q_op(ctx).terms.items():
        out[k] = out.get(k, 0) + inv_uk * v
    return {k: v for k, v in out.items() if not v.is_zero()}


class SuperMatrix:
    """Even N x N matrix with entries in some ring (scalars, series, operators)."""

    def __init__(self, ctx: AlgebraContext, entries: Sequence[Sequence]):
        if len(entries) != ctx.N or any(len(r) != ctx.N for r in entries):
            raise InvalidInput(f"expected a {ctx.N}x{ctx.N} grid")
        self.ctx = ctx
        self.entries = [list(r) for r in entries]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __mul__(self, other: "SuperMatrix") -> "SuperMatrix":
        N = self.ctx.N
        out = []
        for i in range(N):
            row = []
            for j in range(N):
                acc = self.entries[i][0] * other.entries[0][j]
                for k in range(1, N):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return SuperMatrix(self.ctx, out)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.ctx == other.ctx and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    __hash__ = None


def super_transpose(A: SuperMatrix) -> SuperMatrix:
    """``(A^t)_ij = a_{j'i'} (-1)^{ij + j} theta_i theta_j``."""
    ctx = A.ctx
    N = ctx.N
    out = []
    for i in range(N):
        row = []
        for j in range(N):
            bi, bj = ctx.bar(i), ctx.bar(j)
            sign = (-1) ** (bi * bj + bj) * ctx.theta(i) * ctx.theta(j)
            a = A.entries[ctx.prime(j)][ctx.prime(i)]
            row.append(a * sign if sign == 1 else -a)
        out.append(row)
    return SuperMatrix(ctx, out)


def ybe_residual(ctx: AlgebraContext, x, y) -> Op:
    """``R12(x-y) R13(x) R23(y) - R23(y) R13(x) R12(x-y)`` on three copies of C^{2n|2m}."""
    g = ctx.grading
    gs = (g, g, g)
    r12 = r_matrix(ctx, x - y).embed((0, 1), gs)
    r13 = r_matrix(ctx, x).embed((0, 2), gs)
    r23 = r_matrix(ctx, y).embed((1, 2), gs)
    return r12 * r13 * r23 - r23 * r13 * r12


def _poles_hit(ctx: AlgebraContext, points: Iterable) -> list:
    return [p for p in points if p == 0 or p == ctx.kappa]


def check_yang_baxter(ctx: AlgebraContext, samples: Iterable) -> Report:
    rep = Report(f"verify ybe {ctx.label()}")
    N = ctx.N
    for x, y in samples:
        x, y = as_fraction(x), as_fraction(y)
        hit = _poles_hit(ctx, (x, y, x - y))
        if hit:
            rep.note(f"skipped (u, v) = ({x}, {y}): R-matrix pole at {hit[0]}")
            continue
        res = ybe_residual(ctx, x, y)
        val, where = res.max_abs_entry()
        witness = None
        if where is not None:
            row, col = where
            witness = {
                "row": _split_index(row, (N, N, N)),
                "col": _split_index(col, (N, N, N)),
                "value": str(res[row, col]),
            }
        rep.add(f"YBE at (u, v) = ({x}, {y})", val == 0, f"max |residual| = {val}", witness)
    return rep.finish()


def _split_index(k: int, dims: Sequence[int]) -> list:
    out = []
    for d in reversed(dims):
        out.append(k % d)
        k //= d
    return out[::-1]
