"""Operator realizations of T(u) and the verifiers built on them.

A module is an :class:`OperatorSeriesMatrix`: an ``N x N`` grid of operators
on a graded space ``V`` that can be evaluated at rational points (``at``) or
expanded in ``u^{-1}`` (``series``).  Identities that are rational in the
spectral parameters (RTT, Yang-Baxter) are checked at sample points; identities
involving inverses or shifts of series (Gauss factors, c(u), the gl(1|2)
images) are checked coefficientwise up to a truncation order.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import ContextMismatch, InvalidInput, NotApplicable, PoleError, SingularSeries, UnsupportedRoot, ViolationError
from .exact import RationalFunction, as_fraction
from .report import Report
from .series import DEFAULT_ORDER, TruncatedSeries, rational_from_series, rf_to_series
from .superlinalg import AlgebraContext, Op, kron, r_matrix

DEFAULT_MAX_DIM = 4096


def max_module_dim() -> int:
    raw = os.environ.get("YOSP_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidInput(f"YOSP_MAX_DIM must be an integer, got {raw!r}") from exc
    if value < 1:
        raise InvalidInput("YOSP_MAX_DIM must be positive")
    return value


Grid = list  # N x N list of Op


class OperatorSeriesMatrix:
    """Generator matrix ``T(u)`` acting on a graded module of dimension ``dim``."""

    def __init__(
        self,
        ctx: AlgebraContext,
        grading: Sequence[int],
        at: Callable,
        series: Callable,
        label: str = "module",
    ):
        self.ctx = ctx
        self.grading = tuple(grading)
        self._at = at
        self._series = series
        self._at_cache: dict = {}
        self._series_cache: dict = {}
        self.label = label

    @property
    def dim(self) -> int:
        return len(self.grading)

    @property
    def N(self) -> int:
        return self.ctx.N

    def at(self, x) -> Grid:
        """Entries ``t_ij(x)`` as operators; raises :class:`PoleError` at poles."""
        x = as_fraction(x)
        if x not in self._at_cache:
            self._at_cache[x] = self._at(x)
        return self._at_cache[x]

    def series(self, order: int = DEFAULT_ORDER) -> list:
        """Entries as :class:`TruncatedSeries` of operators, to ``u^{-order}``."""
        for k, grid in self._series_cache.items():
            if k >= order:
                return grid if k == order else [[s.truncate(order) for s in row] for row in grid]
        grid = self._series(order)
        self._series_cache[order] = grid
        return grid

    def identity_op(self) -> Op:
        return Op.identity(self.dim)

    def __repr__(self):
        return f"OperatorSeriesMatrix({self.label}, {self.ctx.label()}, dim={self.dim})"


def _check_dim(dim: int, max_dim: int | None) -> None:
    cap = max_module_dim() if max_dim is None else max_dim
    if dim > cap:
        raise NotApplicable(f"module dimension {dim} exceeds the cap {cap} (see --max-dim / YOSP_MAX_DIM)")


def _vector_parts(ctx: AlgebraContext):
    N = ctx.N
    A, B = {}, {}
    for i in range(N):
        for j in range(N):
            bi, bj = ctx.bar(i), ctx.bar(j)
            A[i, j] = Op.unit(N, i, j, (-1) ** bi)
            sign = (-1) ** (bi * bj) * ctx.theta(i) * ctx.theta(j)
            B[i, j] = Op.unit(N, ctx.prime(j), ctx.prime(i), sign)
    return A, B


def vector_representation(ctx: AlgebraContext) -> OperatorSeriesMatrix:
    """``t_ij(u) = d_ij + u^{-1} e_ij (-1)^i - (u+kappa)^{-1} e_{j'i'} (-1)^{ij} theta_i theta_j``."""
    N, kappa = ctx.N, ctx.kappa
    A, B = _vector_parts(ctx)
    one = Op.identity(N)
    zero = Op.zero(N)

    def at(x):
        if x == 0 or x + kappa == 0:
            raise PoleError(f"vector representation has a pole at u = {x}")
        a, b = 1 / x, 1 / (x + kappa)
        return [
            [(one if i == j else zero) + A[i, j] * a - B[i, j] * b for j in range(N)]
            for i in range(N)
        ]

    def series(order):
        grid = []
        for i in range(N):
            row = []
            for j in range(N):
                coeffs = [one if i == j else zero]
                for r in range(1, order + 1):
                    c = B[i, j] * (-(Fraction(-kappa) ** (r - 1)))
                    coeffs.append(c + A[i, j] if r == 1 else c)
                row.append(TruncatedSeries(coeffs))
            grid.append(row)
        return grid

    return OperatorSeriesMatrix(ctx, ctx.grading, at, series, label="vector")


def trivial_representation(ctx: AlgebraContext) -> OperatorSeriesMatrix:
    N = ctx.N
    one, zero = Op.identity(1), Op.zero(1)

    def at(x):
        return [[one if i == j else zero for j in range(N)] for i in range(N)]

    def series(order):
        return [
            [TruncatedSeries([one if i == j else zero] + [zero] * order) for j in range(N)]
            for i in range(N)
        ]

    return OperatorSeriesMatrix(ctx, (0,), at, series, label="trivial")


def _signed(op: Op, grading, odd: int) -> Op:
    """``op * G^odd`` with ``G`` the parity operator of the left factor."""
    if odd % 2 == 0:
        return op
    return op.scale_columns([(-1) ** g for g in grading])


def _coproduct_grid(ctx, left: Grid, gl, right: Grid) -> Grid:
    N = ctx.N
    out = []
    for i in range(N):
        row = []
        for j in range(N):
            acc = None
            for k in range(N):
                a, b = left[i][k], right[k][j]
                if a.is_zero() or b.is_zero():
                    continue
                term = kron(_signed(a, gl, ctx.bar(k) + ctx.bar(j)), b)
                acc = term if acc is None else acc + term
            if acc is None:
                acc = Op.zero(left[0][0].nrows * right[0][0].nrows)
            row.append(acc)
        out.append(row)
    return out


def _coproduct_series(ctx, left: list, gl, right: list, order: int) -> list:
    N = ctx.N
    dl, dr = left[0][0][0].nrows, right[0][0][0].nrows
    out = []
    for i in range(N):
        row = []
        for j in range(N):
            coeffs = []
            for r in range(order + 1):
                acc = Op.zero(dl * dr)
                for k in range(N):
                    odd = ctx.bar(k) + ctx.bar(j)
                    for a in range(r + 1):
                        x, y = left[i][k][a], right[k][j][r - a]
                        if x.is_zero() or y.is_zero():
                            continue
                        acc = acc + kron(_signed(x, gl, odd), y)
                coeffs.append(acc)
            row.append(TruncatedSeries(coeffs))
        out.append(row)
    return out


def twisted(T: OperatorSeriesMatrix, f: RationalFunction) -> OperatorSeriesMatrix:
    """The module with ``t_ij(u)`` acting as ``f(u) t_ij(u)``; ``f(oo) = 1``."""
    if not f.is_regular_at_infinity() or f.value_at_infinity() != 1:
        raise InvalidInput(f"twist {f} must equal 1 at u = oo")

    def at(x):
        c = f(x)  # raises PoleError at poles of f
        return [[e * c for e in row] for row in T.at(x)]

    def series(K):
        fs = rf_to_series(f, K)
        return [[s * fs for s in row] for row in T.series(K)]

    return OperatorSeriesMatrix(T.ctx, T.grading, at, series, label=f"{T.label} twisted by {f}")


def shifted(T: OperatorSeriesMatrix, c) -> OperatorSeriesMatrix:
    """The module with ``t_ij(u)`` acting as ``t_ij(u + c)``."""
    c = as_fraction(c)
    if c == 0:
        return T
    return OperatorSeriesMatrix(
        T.ctx,
        T.grading,
        lambda x: T.at(x + c),
        lambda K: [[s.shift(c) for s in row] for row in T.series(K)],
        label=f"{T.label}(u{'+' if c > 0 else ''}{c})",
    )


def tensor_product(T: OperatorSeriesMatrix, S: OperatorSeriesMatrix, max_dim: int | None = None) -> OperatorSeriesMatrix:
    """Coproduct action ``t_ij -> sum_k t_ik (x) t_kj`` on ``V (x) W``."""
    if T.ctx != S.ctx:
        raise ContextMismatch(f"cannot tensor {T.ctx.label()} with {S.ctx.label()}")
    dim = T.dim * S.dim
    _check_dim(dim, max_dim)
    ctx = T.ctx
    grading = tuple((a + b) % 2 for a in T.grading for b in S.grading)
    return OperatorSeriesMatrix(
        ctx,
        grading,
        lambda x: _coproduct_grid(ctx, T.at(x), T.grading, S.at(x)),
        lambda K: _coproduct_series(ctx, T.series(K), T.grading, S.series(K), K),
        label=f"({T.label} (x) {S.label})",
    )


def tensor_shifted(reps: Sequence[OperatorSeriesMatrix], shifts: Sequence, max_dim: int | None = None) -> OperatorSeriesMatrix:
    """``T_ij(u) = sum T^(1)_{i a1}(u+c1) (x) ... (x) T^(d)_{a_{d-1} j}(u+c_d)``."""
    if len(reps) != len(shifts) or not reps:
        raise InvalidInput("need one shift per tensor factor")
    ctx = reps[0].ctx
    if any(r.ctx != ctx for r in reps):
        raise ContextMismatch("all tensor factors must share one algebra context")
    total = 1
    for r in reps:
        total *= r.dim
    _check_dim(total, max_dim)
    acc = shifted(reps[0], shifts[0])
    for r, c in zip(reps[1:], shifts[1:]):
        acc = tensor_product(acc, shifted(r, c), max_dim)
    return acc


def sharp_module(ctx: AlgebraContext, d: int, a=0, max_dim: int | None = None) -> OperatorSeriesMatrix:
    """``d`` vector factors with shifts ``d-1, ..., 0``, then ``u -> u - a``."""
    if d < 1:
        raise InvalidInput("d must be positive")
    v = vector_representation(ctx)
    a = as_fraction(a)
    return tensor_shifted([v] * d, [d - 1 - k - a for k in range(d)], max_dim)


def flat_module(ctx: AlgebraContext, d: int, a=0, max_dim: int | None = None) -> OperatorSeriesMatrix:
    """``d`` vector factors with shifts ``-d+1, ..., 0``, then ``u -> u - a``."""
    if d < 1:
        raise InvalidInput("d must be positive")
    v = vector_representation(ctx)
    a = as_fraction(a)
    return tensor_shifted([v] * d, [-(d - 1 - k) - a for k in range(d)], max_dim)


def corrupted(T: OperatorSeriesMatrix, i: int, j: int, delta: Op | None = None) -> OperatorSeriesMatrix:
    """Negative control: ``t_ij(u) + u^{-1} delta``."""
    if delta is None:
        delta = Op.identity(T.dim)

    def at(x):
        grid = [list(row) for row in T.at(x)]
        grid[i][j] = grid[i][j] + delta * (1 / x)
        return grid

    def series(K):
        grid = [list(row) for row in T.series(K)]
        s = grid[i][j]
        grid[i][j] = TruncatedSeries([s[0], s[1] + delta] + list(s.coeffs[2:]))
        return grid

    return OperatorSeriesMatrix(T.ctx, T.grading, at, series, label=f"{T.label}[corrupt t{i + 1}{j + 1}]")


# ----------------------------------------------------------------------------
# RTT


def realize_T1(ctx: AlgebraContext, grid: Grid, grading) -> Op:
    """``T_1 = sum e_ij (x) 1 (x) t_ij (-1)^{ij+j}`` on C^N (x) C^N (x) V."""
    N, D = ctx.N, len(grading)
    rows: dict = {}
    for i in range(N):
        for j in range(N):
            t = grid[i][j]
            if t.is_zero():
                continue
            pij = ctx.bar(i) + ctx.bar(j)
            for k in range(N):
                sign = -1 if (pij * ctx.bar(k)) % 2 else 1
                rbase, cbase = (i * N + k) * D, (j * N + k) * D
                for v, w, val in t.entries():
                    r = rows.setdefault(rbase + v, {})
                    r[cbase + w] = r.get(cbase + w, 0) + sign * val
    return Op(N * N * D, N * N * D, {i: {j: v for j, v in r.items() if v} for i, r in rows.items()})


def realize_T2(ctx: AlgebraContext, grid: Grid, grading) -> Op:
    """``T_2 = sum 1 (x) e_ij (x) t_ij (-1)^{ij+j}``; the Koszul signs cancel."""
    N, D = ctx.N, len(grading)
    rows: dict = {}
    for i in range(N):
        for j in range(N):
            t = grid[i][j]
            if t.is_zero():
                continue
            for a in range(N):
                rbase, cbase = (a * N + i) * D, (a * N + j) * D
                for v, w, val in t.entries():
                    r = rows.setdefault(rbase + v, {})
                    r[cbase + w] = r.get(cbase + w, 0) + val
    return Op(N * N * D, N * N * D, {i: {j: v for j, v in r.items() if v} for i, r in rows.items()})


def rtt_residual(T: OperatorSeriesMatrix, x, y) -> Op:
    ctx = T.ctx
    g = ctx.grading
    R = r_matrix(ctx, x - y).embed((0, 1), (g, g, T.grading))
    T1 = realize_T1(ctx, T.at(x), T.grading)
    T2 = realize_T2(ctx, T.at(y), T.grading)
    return R * T1 * T2 - T2 * T1 * R


def _rtt_pole(T: OperatorSeriesMatrix, x, y):
    ctx = T.ctx
    d = x - y
    if d == 0 or d == ctx.kappa:
        return f"R-matrix pole at u - v = {d}"
    for p in (x, y):
        try:
            T.at(p)
        except PoleError as exc:
            return str(exc)
    return None


def verify_rtt(T: OperatorSeriesMatrix, samples, report: Report | None = None) -> Report:
    """``R(u-v) T_1(u) T_2(v) = T_2(v) T_1(u) R(u-v)`` at each sample point."""
    rep = report or Report(f"verify rtt {T.ctx.label()} on {T.label}")
    N, D = T.N, T.dim
    for x, y in samples:
        x, y = as_fraction(x), as_fraction(y)
        why = _rtt_pole(T, x, y)
        if why:
            rep.note(f"skipped (u, v) = ({x}, {y}): {why}")
            continue
        res = rtt_residual(T, x, y)
        val, where = res.max_abs_entry()
        witness = None
        if where is not None:
            r, c = where
            witness = {
                "row": _split(r, (N, N, D)),
                "col": _split(c, (N, N, D)),
                "entries": _implicated_generators(T, x, y, r, c),
                "value": str(res[r, c]),
            }
        rep.add(f"RTT at (u, v) = ({x}, {y})", val == 0, f"max |residual| = {val}", witness)
    return rep.finish()


def _implicated_generators(T, x, y, r, c):
    N, D = T.N, T.dim
    (i1, i2, _), (j1, j2, _) = _split(r, (N, N, D)), _split(c, (N, N, D))
    return [f"t{i1 + 1},{j1 + 1}(u)", f"t{i2 + 1},{j2 + 1}(v)"]


def _split(k: int, dims) -> list:
    out = []
    for d in reversed(dims):
        out.append(k % d)
        k //= d
    return out[::-1]


def supercommutator(a: Op, pa: int, b: Op, pb: int) -> Op:
    ab, ba = a * b, b * a
    return ab - ba if (pa * pb) % 2 == 0 else ab + ba


def verify_rtt_components(T: OperatorSeriesMatrix, samples, report: Report | None = None) -> Report:
    """Check the super-commutator form of the defining relations entry by entry."""
    ctx = T.ctx
    N = ctx.N
    bar, th, pr, kappa = ctx.bar, ctx.theta, ctx.prime, ctx.kappa
    rep = report or Report(f"verify rtt (components) {ctx.label()} on {T.label}")
    for x, y in samples:
        x, y = as_fraction(x), as_fraction(y)
        why = _rtt_pole(T, x, y)
        if why:
            rep.note(f"skipped (u, v) = ({x}, {y}): {why}")
            continue
        tu, tv = T.at(x), T.at(y)
        a, b = 1 / (x - y), 1 / (x - y - kappa)
        bad = None
        for i, j, k, l in itertools.product(range(N), repeat=4):
            lhs = supercommutator(tu[i][j], bar(i) + bar(j), tv[k][l], bar(k) + bar(l))
            s = (-1) ** (bar(i) * bar(j) + bar(i) * bar(k) + bar(j) * bar(k))
            rhs = (tu[k][j] * tv[i][l] - tv[k][j] * tu[i][l]) * (a * s)
            if k == pr(i):
                acc = Op.zero(T.dim)
                for p in range(N):
                    sg = (-1) ** (bar(i) + bar(i) * bar(j) + bar(j) * bar(p)) * th(i) * th(p)
                    acc = acc + tu[p][j] * tv[pr(p)][l] * sg
                rhs = rhs - acc * b
            if l == pr(j):
                acc = Op.zero(T.dim)
                for p in range(N):
                    sg = (-1) ** (bar(i) * bar(k) + bar(j) * bar(k) + bar(i) * bar(p)) * th(pr(j)) * th(pr(p))
                    acc = acc + tv[k][pr(p)] * tu[i][p] * sg
                rhs = rhs + acc * b
            if lhs != rhs:
                bad = (i, j, k, l)
                break
        rep.add(
            f"component relations at (u, v) = ({x}, {y})",
            bad is None,
            "all index quadruples hold" if bad is None else f"fails at (i,j,k,l) = {tuple(t + 1 for t in bad)}",
            None if bad is None else {"ijkl": [t + 1 for t in bad]},
        )
    return rep.finish()


# ----------------------------------------------------------------------------
# series-level helpers


def _zero_series(dim: int, order: int) -> TruncatedSeries:
    z = Op.zero(dim)
    return TruncatedSeries([z] * (order + 1))


def _one_series(dim: int, order: int) -> TruncatedSeries:
    return TruncatedSeries([Op.identity(dim)] + [Op.zero(dim)] * order)


def series_is_zero(s: TruncatedSeries) -> bool:
    return all(c.is_zero() for c in s.coeffs)


def first_difference(a: TruncatedSeries, b: TruncatedSeries):
    """Lowest order ``r`` where the two series differ, or None."""
    k = min(a.order, b.order)
    for r in range(k + 1):
        if a[r] != b[r]:
            return r
    return None


def scalar_series(s: TruncatedSeries):
    """Fraction series if every coefficient is a multiple of the identity, else None."""
    out = []
    for c in s.coeffs:
        n = c.nrows
        lam = c[0, 0]
        if c != Op.identity(n) * lam:
            return None
        out.append(lam)
    return TruncatedSeries(out)


def substitute_grid(grid: list, scale=1, shift=0) -> list:
    """Entries ``t(scale*u + shift)``; exact to the stored order."""
    scale, shift = as_fraction(scale), as_fraction(shift)
    out = []
    for row in grid:
        new = []
        for s in row:
            t = s.scale(scale) if scale != 1 else s
            t = t.shift(shift / scale) if shift else t
            new.append(t)
        out.append(new)
    return out


# ----------------------------------------------------------------------------
# central series


def super_transpose_grid(ctx: AlgebraContext, grid: list) -> list:
    N = ctx.N
    out = []
    for i in range(N):
        row = []
        for j in range(N):
            bi, bj = ctx.bar(i), ctx.bar(j)
            sign = (-1) ** (bi * bj + bj) * ctx.theta(i) * ctx.theta(j)
            s = grid[ctx.prime(j)][ctx.prime(i)]
            row.append(s if sign == 1 else -s)
        out.append(row)
    return out


def grid_product(A: list, B: list) -> list:
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(len(B[0])):
            acc = A[i][0] * B[0][j]
            for k in range(1, len(B)):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def central_series(T: OperatorSeriesMatrix, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``c(u)`` from ``T(u - kappa) T^t(u) = c(u) 1``.

    Raises :class:`ViolationError` naming the first off-scalar entry.
    """
    ctx = T.ctx
    S = T.series(order)
    left = [[s.shift(-ctx.kappa) for s in row] for row in S]
    prod = grid_product(left, super_transpose_grid(ctx, S))
    c = prod[0][0]
    for i in range(ctx.N):
        for j in range(ctx.N):
            target = c if i == j else None
            s = prod[i][j]
            if target is None:
                if not series_is_zero(s):
                    r = next(r for r, x in enumerate(s.coeffs) if not x.is_zero())
                    raise ViolationError(
                        f"T(u-kappa)T^t(u) has a nonzero off-diagonal entry ({i + 1},{j + 1}) at order {r}",
                        {"entry": [i + 1, j + 1], "order": r},
                    )
            else:
                r = first_difference(s, target)
                if r is not None:
                    raise ViolationError(
                        f"diagonal entries (1,1) and ({i + 1},{i + 1}) differ at order {r}",
                        {"entry": [i + 1, i + 1], "order": r},
                    )
    return c


def commutes_with_generators(T: OperatorSeriesMatrix, s: TruncatedSeries, order: int, indices=None):
    """First ``(i, j, r, q)`` with ``[s^(q), t_ij^(r)] != 0``, or None."""
    S = T.series(order)
    N = T.N
    idx = indices if indices is not None else [(i, j) for i in range(N) for j in range(N)]
    for i, j in idx:
        for r in range(1, order + 1):
            t = S[i][j][r]
            for q in range(order + 1):
                a = s[q]
                if a * t != t * a:
                    return (i, j, r, q)
    return None


def verify_center(T: OperatorSeriesMatrix, order: int = DEFAULT_ORDER, report: Report | None = None) -> Report:
    ctx = T.ctx
    rep = report or Report(f"verify center {ctx.label()} on {T.label}")
    try:
        c = central_series(T, order)
    except ViolationError as exc:
        rep.add("T(u-kappa) T^t(u) is scalar", False, str(exc), exc.witness)
        return rep.finish()
    rep.add("T(u-kappa) T^t(u) is scalar", True, f"to order {order}")
    bad = commutes_with_generators(T, c, order)
    rep.add(
        "c(u) is central",
        bad is None,
        "commutes with every t_ij^(r)" if bad is None else f"[c^({bad[3]}), t{bad[0] + 1}{bad[1] + 1}^({bad[2]})] != 0",
        None if bad is None else {"i": bad[0] + 1, "j": bad[1] + 1, "r": bad[2], "c_order": bad[3]},
    )
    sc = scalar_series(c)
    if sc is not None:
        rep.data["c(u)"] = [str(x) for x in sc.coeffs]
        f = rational_from_series(sc)
        if f is not None:
            rep.data["c(u) rational"] = str(f)
    return rep.finish()


# ----------------------------------------------------------------------------
# embedding and Gauss decomposition


def embed_reduce(T: OperatorSeriesMatrix) -> OperatorSeriesMatrix:
    """``t_ij - t_i1 t_11^{-1} t_1j`` for ``2 <= i, j <= 2'`` over the reduced context."""
    ctx = T.ctx
    red = ctx.reduced()
    N = ctx.N
    inner = range(1, N - 1)

    def at(x):
        g = T.at(x)
        try:
            inv = g[0][0].inverse()
        except ZeroDivisionError as exc:
            raise PoleError(f"t_11({x}) is singular on the module") from exc
        return [[g[i][j] - g[i][0] * inv * g[0][j] for j in inner] for i in inner]

    def series(K):
        S = T.series(K)
        try:
            inv = S[0][0].inverse()
        except SingularSeries:
            raise
        return [[S[i][j] - S[i][0] * inv * S[0][j] for j in inner] for i in inner]

    return OperatorSeriesMatrix(red, T.grading, at, series, label=f"reduce({T.label})")


@dataclass
class GaussFactors:
    F: list
    H: list
    E: list

    @property
    def size(self) -> int:
        return len(self.H)

    def h(self, i: int) -> TruncatedSeries:
        return self.H[i]

    def e(self, i: int, j: int) -> TruncatedSeries:
        return self.E[i][j]

    def f(self, i: int, j: int) -> TruncatedSeries:
        return self.F[i][j]

    def reconstruct(self) -> list:
        n = self.size
        dim = self.H[0][0].nrows
        order = self.H[0].order
        zero = _zero_series(dim, order)
        Hm = [[self.H[i] if i == j else zero for j in range(n)] for i in range(n)]
        return grid_product(grid_product(self.F, Hm), self.E)


def gauss_decompose(grid: list) -> GaussFactors:
    """``T = F H E`` by successive Schur complements of the leading block."""
    n = len(grid)
    dim = grid[0][0][0].nrows
    order = grid[0][0].order
    zero, one = _zero_series(dim, order), _one_series(dim, order)
    A = [list(row) for row in grid]
    F = [[one if i == j else zero for j in range(n)] for i in range(n)]
    E = [[one if i == j else zero for j in range(n)] for i in range(n)]
    H = []
    for k in range(n):
        h = A[k][k]
        hinv = h.inverse()
        H.append(h)
        for j in range(k + 1, n):
            E[k][j] = hinv * A[k][j]
        for i in range(k + 1, n):
            F[i][k] = A[i][k] * hinv
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = A[i][j] - F[i][k] * A[k][j]
    return GaussFactors(F, H, E)


def block_inverse_2x2(a, b, c, d):
    """Inverse of ``[[a, b], [c, d]]`` with noncommuting entries."""
    ai = a.inverse()
    s = d - c * ai * b
    si = s.inverse()
    return [[ai + ai * b * si * c * ai, -(ai * b * si)], [-(si * c * ai), si]]


def quasideterminant_h2(S: list) -> TruncatedSeries:
    return S[1][1] - S[1][0] * S[0][0].inverse() * S[0][1]


def quasideterminant_h3(S: list) -> TruncatedSeries:
    Ainv = block_inverse_2x2(S[0][0], S[0][1], S[1][0], S[1][1])
    acc = S[2][2]
    for i in range(2):
        for j in range(2):
            acc = acc - S[2][i] * Ainv[i][j] * S[j][2]
    return acc


def berezinian(G: GaussFactors) -> TruncatedSeries:
    """``b(u) = h_1(u) h_2(u)^{-1}``."""
    return G.H[0] * G.H[1].inverse()


def verify_gauss(T: OperatorSeriesMatrix, order: int = DEFAULT_ORDER, report: Report | None = None) -> Report:
    ctx = T.ctx
    rep = report or Report(f"verify gauss {ctx.label()} on {T.label}")
    S = T.series(order)
    G = gauss_decompose(S)
    rec = G.reconstruct()
    bad = None
    for i in range(ctx.N):
        for j in range(ctx.N):
            r = first_difference(rec[i][j], S[i][j])
            if r is not None:
                bad = (i, j, r)
                break
        if bad:
            break
    rep.add(
        "F H E = T",
        bad is None,
        f"to order {order}" if bad is None else f"entry ({bad[0] + 1},{bad[1] + 1}) differs at order {bad[2]}",
        None if bad is None else {"entry": [bad[0] + 1, bad[1] + 1], "order": bad[2]},
    )
    rep.add("h_1 = t_11", first_difference(G.H[0], S[0][0]) is None)
    if ctx.N >= 2:
        r = first_difference(G.H[1], quasideterminant_h2(S))
        rep.add("h_2 = t22 - t21 t11^-1 t12", r is None, "" if r is None else f"differs at order {r}")
    if ctx.N >= 3:
        r = first_difference(G.H[2], quasideterminant_h3(S))
        rep.add("h_3 = t33 - sum t3i A_ij tj3", r is None, "" if r is None else f"differs at order {r}")
    if ctx.bar(0) != ctx.bar(1):
        b = berezinian(G)
        sub = [(i, j) for i in range(2) for j in range(2)]
        hit = commutes_with_generators(T, b, order, sub)
        rep.add(
            "b(u) = h1 h2^-1 is central in the gl(1|1) block",
            hit is None,
            "" if hit is None else f"fails against t{hit[0] + 1}{hit[1] + 1}^({hit[2]})",
        )
    if ctx.parity == (1, 0):
        _h3_identities(T, G, order, rep)
    return rep.finish()


def _h3_identities(T: OperatorSeriesMatrix, G: GaussFactors, order: int, rep: Report) -> None:
    """Parity-10 osp(2|2) identities linking h_3, c(u) and the Berezinian."""
    try:
        c = central_series(T, order)
    except ViolationError as exc:
        rep.add("c(u) is scalar", False, str(exc))
        return
    h1, h2, h3 = G.H[0], G.H[1], G.H[2]
    b = berezinian(G)
    lhs = c.shift(-1) * b * h1.shift(-1).inverse()
    r = first_difference(h3, lhs)
    rep.add("h3(u) = c(u-1) b(u) h1(u-1)^-1", r is None, "" if r is None else f"differs at order {r}")
    rhs = h1 * h1.shift(1).inverse() * h2.shift(1) * h3.shift(1)
    r = first_difference(c, rhs)
    rep.add("c(u) = h1(u) h1(u+1)^-1 h2(u+1) h3(u+1)", r is None, "" if r is None else f"differs at order {r}")


# ----------------------------------------------------------------------------
# highest vectors


def antisymmetrizer_vector(ctx: AlgebraContext, d: int) -> dict:
    """``xi_d = sum_sigma sgn(sigma) e_sigma(1) (x) ... (x) e_sigma(d)`` in the plain tensor power."""
    if d < 1 or d > ctx.N:
        raise InvalidInput(f"d = {d} out of range")
    N = ctx.N
    out = {}
    for perm in itertools.permutations(range(d)):
        inv = sum(1 for a in range(d) for b in range(a + 1, d) if perm[a] > perm[b])
        idx = 0
        for p in perm:
            idx = idx * N + p
        out[idx] = Fraction((-1) ** inv)
    return out


def basis_vector(k: int) -> dict:
    return {k: Fraction(1)}


def _eigenvalue(w: dict, xi: dict):
    if not w:
        return Fraction(0)
    p = next(iter(xi))
    lam = w.get(p, Fraction(0)) / xi[p]
    for k in set(w) | set(xi):
        if w.get(k, 0) != lam * xi.get(k, 0):
            return None
    return lam


@dataclass
class HighestWeightExtraction:
    """Eigenvalue series of ``t_ii`` on a candidate highest vector."""

    series: list  # one scalar TruncatedSeries per diagonal index, 0-based
    rational: list  # RationalFunction or None, same indexing
    report: Report

    @property
    def ok(self) -> bool:
        return self.report.ok

    def component(self, i: int):
        return self.rational[i]

    def highest_weight(self):
        from .series import FactoredSeries

        ctx_half = len(self.series) // 2
        if any(f is None for f in self.rational[: ctx_half + 1]):
            raise InvalidInput("some components are not rational within the truncation order")
        comps = [FactoredSeries.from_rational(f) for f in self.rational[:ctx_half]]
        return comps, FactoredSeries.from_rational(self.rational[ctx_half])


def extract_highest_weight(T: OperatorSeriesMatrix, xi: dict, order: int = DEFAULT_ORDER) -> HighestWeightExtraction:
    ctx = T.ctx
    N = ctx.N
    if not xi:
        raise InvalidInput("the candidate highest vector is zero")
    S = T.series(order)
    rep = Report(f"highest weight on {T.label}")
    failure = None
    for i in range(N):
        for j in range(i + 1, N):
            for r in range(1, order + 1):
                if S[i][j][r].apply(xi):
                    failure = (i, j, r)
                    break
            if failure:
                break
        if failure:
            break
    rep.add(
        "t_ij(u) xi = 0 for i < j",
        failure is None,
        f"to order {order}" if failure is None else f"t{failure[0] + 1},{failure[1] + 1}^({failure[2]}) xi != 0",
        None if failure is None else {"i": failure[0] + 1, "j": failure[1] + 1, "r": failure[2]},
    )
    series, rational = [], []
    for i in range(N):
        coeffs = [Fraction(1)]
        bad = None
        for r in range(1, order + 1):
            lam = _eigenvalue(S[i][i][r].apply(xi), xi)
            if lam is None:
                bad = r
                break
            coeffs.append(lam)
        rep.add(
            f"xi is an eigenvector of t{i + 1},{i + 1}(u)",
            bad is None,
            "" if bad is None else f"fails at order {bad}",
            None if bad is None else {"i": i + 1, "r": bad},
        )
        if bad is None:
            s = TruncatedSeries(coeffs)
            series.append(s)
            rational.append(rational_from_series(s))
        else:
            series.append(None)
            rational.append(None)
    return HighestWeightExtraction(series, rational, rep.finish())


def apply_series(s: TruncatedSeries, v: dict) -> list:
    """Coefficients of ``s(u) v`` as a list of vectors."""
    return [c.apply(v) for c in s.coeffs]


def is_eigen_series(s: TruncatedSeries, v: dict, expected: TruncatedSeries):
    """First order where ``s(u) v != expected(u) v``, or None."""
    for r in range(min(s.order, expected.order) + 1):
        w = s[r].apply(v)
        target = {k: x * expected[r] for k, x in v.items() if x * expected[r]}
        if w != target:
            return r
    return None


# ----------------------------------------------------------------------------
# the gl(1|2) isomorphism

GL_PARITY = (0, 1, 1)


NORMALIZATIONS = ("consistent", "stated")


@dataclass
class PhiImages:
    """Images of the barred generators and the osp series they are built from."""

    tbar: list  # 3 x 3 grid of operator series
    t2u: list  # osp T(2u)
    t2um: list  # osp T(2u - 1)
    order: int
    normalization: str
    f_scale: Fraction  # fbar_21 -> f_scale * f21(2u), fbar_32 -> f_scale * f32(2u)


def _stated_images(a: list, b: list, half: Fraction) -> list:
    """The RTT images written out in closed form (t11(2u-1) factors, 1/2 on column 3)."""
    t11m = b[0][0]
    t11inv = a[0][0].inverse()
    img = [[None] * 3 for _ in range(3)]
    img[0][0] = t11m * a[0][0]
    img[0][1] = t11m * a[0][1]
    img[1][0] = a[1][0] * t11m
    img[0][2] = t11m * a[0][2] * half
    img[2][0] = a[2][0] * t11m
    for i in (1, 2):
        img[i][1] = a[i][1] * t11m + a[i][0] * b[0][1] - a[i][0] * t11inv * t11m * a[0][1]
    img[1][2] = (a[1][2] * t11m + a[1][0] * b[0][2] - a[1][0] * t11inv * t11m * a[0][2]) * half
    Abar = block_inverse_2x2(img[0][0], img[0][1], img[1][0], img[1][1])
    acc = t11m * quasideterminant_h3(a)
    for i in range(2):
        for j in range(2):
            acc = acc + img[2][i] * Abar[i][j] * img[j][2]
    img[2][2] = acc
    return img


def _images_from_gauss(a: list, b: list, half: Fraction, f_scale: Fraction) -> list:
    """``Tbar = Fbar Hbar Ebar`` with hbar_i = h1(2u-1) h_i(2u) and rescaled lower factors."""
    ga = gauss_decompose([row[:3] for row in a[:3]])
    gb = gauss_decompose([row[:3] for row in b[:3]])
    dim = a[0][0][0].nrows
    order = a[0][0].order
    one, zero = _one_series(dim, order), _zero_series(dim, order)
    H = [gb.H[0] * ga.H[i] for i in range(3)]
    E = [[one, ga.E[0][1], ga.E[0][2] * half], [zero, one, ga.E[1][2] * Fraction(1, 2)], [zero, zero, one]]
    Fm = [
        [one, zero, zero],
        [ga.F[1][0] * f_scale, one, zero],
        [ga.F[2][0] * f_scale**2, ga.F[2][1] * f_scale, one],
    ]
    Hm = [[H[i] if i == j else zero for j in range(3)] for i in range(3)]
    return grid_product(grid_product(Fm, Hm), E)


def phi_images(
    T: OperatorSeriesMatrix,
    order: int = DEFAULT_ORDER,
    normalization: str = "consistent",
    half=Fraction(1, 2),
) -> PhiImages:
    """Barred ``t_ij(u)`` in terms of the parity-01 osp(2|2) generators.

    ``stated`` uses the closed-form images with ``fbar -> f(2u)``; ``consistent``
    doubles the two simple lowering currents, which is what the gl(1|2)
    relations force (see :func:`verify_gl12_isomorphism`).  ``half`` replaces
    the 1/2 in the image of ``tbar_13`` (negative control when not 1/2).
    """
    ctx = T.ctx
    if (ctx.m, ctx.n, ctx.parity) != (1, 1, (0, 1)):
        raise InvalidInput("the gl(1|2) images are defined on osp(2|2) with parity 01")
    if normalization not in NORMALIZATIONS:
        raise InvalidInput(f"normalization must be one of {NORMALIZATIONS}")
    half = as_fraction(half)
    S = T.series(order)
    a = substitute_grid(S, 2, 0)  # t(2u)
    b = substitute_grid(S, 2, -1)  # t(2u - 1)
    if normalization == "stated":
        return PhiImages(_stated_images(a, b, half), a, b, order, normalization, Fraction(1))
    f_scale = Fraction(2)
    return PhiImages(_images_from_gauss(a, b, half, f_scale), a, b, order, normalization, f_scale)


def gl_relation_failure(tbar: list, parity=GL_PARITY, max_order: int | None = None):
    """First ``(i, j, k, l, r, s)`` violating the gl-type RTT relation, or None.

    Coefficient form: ``[t_ij^(r+1), t_kl^(s)] - [t_ij^(r), t_kl^(s+1)]
    = sign (t_kj^(r) t_il^(s) - t_kj^(s) t_il^(r))`` with ``t^(0) = delta``.
    """
    n = len(tbar)
    order = tbar[0][0].order
    top = order - 1 if max_order is None else min(max_order, order - 1)
    for i, j, k, l in itertools.product(range(n), repeat=4):
        pij, pkl = parity[i] + parity[j], parity[k] + parity[l]
        sign = (-1) ** (parity[i] * parity[j] + parity[i] * parity[k] + parity[j] * parity[k])
        A, B = tbar[i][j], tbar[k][l]
        C, D = tbar[k][j], tbar[i][l]
        for r in range(top + 1):
            for s in range(top + 1):
                lhs = supercommutator(A[r + 1], pij, B[s], pkl) - supercommutator(A[r], pij, B[s + 1], pkl)
                rhs = C[r] * D[s] - C[s] * D[r]
                if sign < 0:
                    rhs = -rhs
                if lhs != rhs:
                    return (i, j, k, l, r, s)
    return None


def verify_gl12_isomorphism(
    T: OperatorSeriesMatrix | None = None,
    order: int = DEFAULT_ORDER,
    normalization: str = "consistent",
    half=Fraction(1, 2),
) -> Report:
    """Relations, Gaussian images, Drinfeld currents and central series under phi."""
    if T is None:
        T = vector_representation(AlgebraContext(1, 1, (0, 1)))
    rep = Report(f"verify iso gl(1|2) parity 011 -> osp(2|2) parity 01 on {T.label} ({normalization})")
    rep.data["order"] = order
    rep.data["normalization"] = normalization
    K = order + 1  # relations use coefficient r + 1
    P = phi_images(T, K, normalization, half)
    hit = gl_relation_failure(P.tbar, max_order=order - 1)
    rep.add(
        "gl(1|2) defining relations on the images",
        hit is None,
        f"all (i,j,k,l) and orders r, s < {order}"
        if hit is None
        else "fails at (i,j,k,l,r,s) = ({},{},{},{},{},{})".format(*(x + 1 for x in hit[:4]), hit[4], hit[5]),
        None if hit is None else {"ijkl": [x + 1 for x in hit[:4]], "r": hit[4], "s": hit[5]},
    )
    S = T.series(K)
    tr = lambda s: s.truncate(order)  # noqa: E731

    def expect(name, got, want):
        r = first_difference(tr(got), tr(want))
        rep.add(name, r is None, "" if r is None else f"differs at order {r}", None if r is None else {"order": r})

    if normalization == "consistent":
        stated = _stated_images(P.t2u, P.t2um, as_fraction(half))
        for j in range(3):
            expect(f"tbar_1{j + 1} agrees with the closed-form image", P.tbar[0][j], stated[0][j])

    gbar = gauss_decompose([[tr(P.tbar[i][j]) for j in range(3)] for i in range(3)])
    ga = gauss_decompose([row[:3] for row in substitute_grid(S, 2, 0)[:3]])
    gb = gauss_decompose([row[:3] for row in substitute_grid(S, 2, -1)[:3]])
    gp = gauss_decompose([row[:3] for row in substitute_grid(S, 2, 1)[:3]])
    g2 = gauss_decompose([row[:3] for row in substitute_grid(S, 2, 2)[:3]])
    h, fs = Fraction(1, 2), P.f_scale
    fl = "" if fs == 1 else f"{fs} "

    for i in range(3):
        expect(f"hbar_{i + 1}(u) -> h1(2u-1) h{i + 1}(2u)", gbar.H[i], gb.H[0] * ga.H[i])
    expect("ebar_12(u) -> e12(2u)", gbar.E[0][1], ga.E[0][1])
    expect("ebar_23(u) -> 1/2 e23(2u)", gbar.E[1][2], ga.E[1][2] * h)
    expect(f"fbar_21(u) -> {fl}f21(2u)", gbar.F[1][0], ga.F[1][0] * fs)
    expect(f"fbar_32(u) -> {fl}f32(2u)", gbar.F[2][1], ga.F[2][1] * fs)

    # Drinfeld currents; barred series at u + 1/2 correspond to osp series at 2u + 1
    expect("kappabar_1(u) -> kappa_1(2u)", gbar.H[0].inverse() * gbar.H[1], ga.H[0].inverse() * ga.H[1])
    kb2 = gbar.H[1].shift(h).inverse() * gbar.H[2].shift(h)
    expect("kappabar_2(u) -> kappa_2(2u)", kb2, gp.H[1].inverse() * gp.H[2])
    expect(f"xibar_1^+(u) -> {fl}xi_1^+(2u)", gbar.F[1][0], ga.F[1][0] * fs)
    expect("xibar_1^-(u) -> xi_1^-(2u)", gbar.E[0][1], ga.E[0][1])
    expect(f"xibar_2^+(u) -> {fl}xi_2^+(2u)", gbar.F[2][1].shift(h), gp.F[2][1] * fs)
    expect("xibar_2^-(u) -> xi_2^-(2u)", -gbar.E[1][2].shift(h), -(gp.E[1][2] * h))

    # central series: beta(u) = hbar1^-1 hbar2 hbar3(u+1) -> sigma(2u)
    beta = gbar.H[0].inverse() * gbar.H[1] * gbar.H[2].shift(1)
    expect("beta(u) -> sigma(2u)", beta, ga.H[0].inverse() * ga.H[1] * gp.H[0] * g2.H[2])
    sig = _sigma(T, order)
    hit_c = commutes_with_generators(T, sig, order)
    rep.add(
        "sigma(u) = h1(u)^-1 h2(u) h1(u+1) h3(u+2) is central",
        hit_c is None,
        "" if hit_c is None else "fails against t{}{}^({})".format(hit_c[0] + 1, hit_c[1] + 1, hit_c[2]),
    )

    # h2(u) h1(u+1) = t22(u+1) t11(u) + t12(u+1) t21(u)
    Sk = T.series(order)
    G = gauss_decompose(Sk)
    lhs = G.H[1] * G.H[0].shift(1)
    rhs = Sk[1][1].shift(1) * Sk[0][0] + Sk[0][1].shift(1) * Sk[1][0]
    expect("h2(u) h1(u+1) = t22(u+1) t11(u) + t12(u+1) t21(u)", lhs, rhs)
    return rep.finish()


def _sigma(T: OperatorSeriesMatrix, order: int) -> TruncatedSeries:
    S = T.series(order)
    G = gauss_decompose(S)
    h1, h2, h3 = G.H[0], G.H[1], G.H[2]
    return h1.inverse() * h2 * h1.shift(1) * h3.shift(2)


# ----------------------------------------------------------------------------
# rank-(1,1) odd reflection on a module


def _uinv_poly_series(f: RationalFunction, order: int) -> TruncatedSeries:
    return rf_to_series(f, order)


def certify_osp22_reflection(
    T: OperatorSeriesMatrix | None = None,
    xi: dict | None = None,
    order: int = DEFAULT_ORDER,
) -> Report:
    """Build the reflected vector on a parity-10 osp(2|2) module and check its eigenvalues."""
    from .hw import padded_roots
    from .series import FactoredSeries

    if T is None:
        T = vector_representation(AlgebraContext(1, 1, (1, 0)))
    if xi is None:
        xi = basis_vector(0)
    ctx = T.ctx
    if (ctx.m, ctx.n, ctx.parity) != (1, 1, (1, 0)):
        raise InvalidInput("the rank-(1,1) reflection is certified on osp(2|2) with parity 10")
    rep = Report(f"osp(2|2) odd reflection on {T.label}")
    hwx = extract_highest_weight(T, xi, order)
    for c in hwx.report.checks:
        rep.add(c.name, c.passed, c.detail, c.witness)
    if not hwx.ok or any(f is None for f in hwx.rational[:4]):
        rep.note("highest weight could not be extracted")
        return rep.finish()
    lam1, lam2, lam2p, lam1p = (FactoredSeries.from_rational(f) for f in hwx.rational[:4])
    try:
        alphas, betas = padded_roots(lam1, lam2)
    except (NotApplicable, UnsupportedRoot) as exc:
        rep.not_applicable = f"{exc}; twist the module first"
        return rep.finish()
    p = len(alphas)
    rep.data["p"] = p
    rep.data["alpha"] = [str(a) for a in alphas]
    rep.data["beta"] = [str(b) for b in betas]
    if set(alphas) & set(betas):
        rep.not_applicable = "alpha_i = beta_j for some i, j"
        return rep.finish()

    S = T.series(order)
    t21 = S[1][0]
    zeta = dict(xi)
    for a in reversed(alphas):
        for r in range(p + 1, order + 1):
            if t21[r].apply(zeta):
                rep.add(f"t21^({r}) vanishes on the cyclic span", False, "T21(u) is not polynomial here")
                return rep.finish()
        # T21(-a) = sum_r t21^(r) (-a)^(p-r)
        acc: dict = {}
        for r in range(1, p + 1):
            w = t21[r].apply(zeta)
            coef = Fraction(-a) ** (p - r)
            for k, v in w.items():
                acc[k] = acc.get(k, 0) + coef * v
        zeta = {k: v for k, v in acc.items() if v}
    rep.add("zeta = T21(-alpha_1)...T21(-alpha_p) xi is nonzero", bool(zeta))
    rep.data["zeta"] = {str(k + 1): v for k, v in sorted(zeta.items())}
    if not zeta:
        return rep.finish()

    u = RationalFunction.linear_uinv
    l1, l2, l2p, l1p = (x.to_rational() for x in (lam1, lam2, lam2p, lam1p))
    up = u(1) ** p  # (u+1)/u
    um = u(-1) ** p  # (u-1)/u
    want_h3 = um * l1.shift(-1) * l2p / l1
    order_zero = TruncatedSeries([Fraction(0)] * (order + 1))

    def check(name, s, want):
        r = is_eigen_series(s, zeta, rf_to_series(want, order) if want is not None else order_zero)
        rep.add(name, r is None, "" if r is None else f"fails at order {r}", None if r is None else {"order": r})

    check("t11(u) zeta = ((u+1)/u)^p lambda_1(u+1) zeta", S[0][0], up * l1.shift(1))
    check("t22(u) zeta = ((u+1)/u)^p lambda_2(u+1) zeta", S[1][1], up * l2.shift(1))
    r = first_nonzero_action(t21, zeta)
    rep.add("t21(u) zeta = 0", r is None, "" if r is None else f"t21^({r}) zeta != 0")
    G = gauss_decompose(S)
    check("h3(u) zeta = ((u-1)/u)^p lambda_1(u-1) lambda_2'(u)/lambda_1(u) zeta", G.H[2], want_h3)
    check("h3(u) zeta = ((u-1)/u)^p lambda_1(u-1) lambda_1'(u)/lambda_2(u) zeta", G.H[2], um * l1.shift(-1) * l1p / l2)
    check("t2'2'(u) zeta has the h3 eigenvalue", S[2][2], want_h3)
    rep.data["h3 eigenvalue"] = str(want_h3)

    # t_{12'}, t_{21'}, t_{11'}, t_{22'} kill the span of ordered t21 monomials applied to xi
    span = [dict(xi)]
    for q in range(1, p + 1):
        for rs in itertools.combinations(range(1, p + 1), q):
            v = dict(xi)
            for rr in reversed(rs):
                v = t21[rr].apply(v)
            span.append(v)
    names = ("1", "2", "2'", "1'")
    for i, j in [(0, 2), (1, 3), (0, 3), (1, 2)]:
        bad = None
        for v in span:
            bad = first_nonzero_action(S[i][j], v)
            if bad is not None:
                break
        rep.add(
            f"t{names[i]}{names[j]}(u) annihilates the t21-span of xi",
            bad is None,
            "" if bad is None else f"coefficient {bad} acts nontrivially",
        )
    return rep.finish()


OSP22_SWAP = (1, 0, 3, 2)  # (1 2)(2' 1')


def swap_parity_osp22(T: OperatorSeriesMatrix) -> OperatorSeriesMatrix:
    """Regard a parity-10 osp(2|2) module as a parity-01 one via ``t_ij -> t_{s(i)s(j)}``."""
    ctx = T.ctx
    if (ctx.m, ctx.n, ctx.parity) != (1, 1, (1, 0)):
        raise InvalidInput("expected an osp(2|2) module with parity 10")
    target = AlgebraContext(1, 1, (0, 1))
    s = OSP22_SWAP

    def at(x):
        g = T.at(x)
        return [[g[s[i]][s[j]] for j in range(4)] for i in range(4)]

    def series(K):
        g = T.series(K)
        return [[g[s[i]][s[j]] for j in range(4)] for i in range(4)]

    return OperatorSeriesMatrix(target, T.grading, at, series, label=f"{T.label} relabelled")


def first_nonzero_action(s: TruncatedSeries, v: dict):
    for r in range(1, s.order + 1):
        if s[r].apply(v):
            return r
    return None
