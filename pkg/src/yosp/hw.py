"""Highest weights: consistency, odd reflections, finiteness criteria, linear classification.

Components are :class:`FactoredSeries`, i.e. rational functions equal to 1 at
``u = oo``.  Roots use the ``1 + a u^{-1}`` convention, so the root ``a`` is a
zero of the numerator at ``u = -a``.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ContextMismatch, InvalidInput, NotApplicable, UnsupportedRoot
from .exact import Polynomial, RationalFunction, arrow_scalar, as_fraction, rational_roots, shift_quotient_witness
from .report import Report
from .series import FactoredSeries
from .superlinalg import AlgebraContext

U = Polynomial.u()


def _fs(x) -> FactoredSeries:
    if isinstance(x, FactoredSeries):
        return x
    if isinstance(x, RationalFunction):
        return FactoredSeries.from_rational(x)
    raise InvalidInput(f"expected a FactoredSeries, got {type(x).__name__}")


def uinv_power(a, p: int) -> RationalFunction:
    """``((u + a)/u)^p``."""
    return RationalFunction.linear_uinv(a) ** p


# ---------------------------------------------------------------- weights


@dataclass(frozen=True)
class HighestWeight:
    """``(lambda_1, ..., lambda_{m+n}, lambda_{(m+n)'})`` for a given context."""

    ctx: AlgebraContext
    components: tuple
    last: FactoredSeries

    def __post_init__(self):
        comps = tuple(_fs(c) for c in self.components)
        if len(comps) != self.ctx.m + self.ctx.n:
            raise InvalidInput(f"expected {self.ctx.m + self.ctx.n} components, got {len(comps)}")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "last", _fs(self.last))

    @classmethod
    def trivial(cls, ctx: AlgebraContext) -> "HighestWeight":
        one = FactoredSeries.one()
        return cls(ctx, (one,) * (ctx.m + ctx.n), one)

    @classmethod
    def from_full(cls, ctx: AlgebraContext, full: Sequence) -> "HighestWeight":
        """From the first ``m+n+1`` entries of a full diagonal tuple."""
        k = ctx.m + ctx.n
        return cls(ctx, tuple(full[:k]), full[k])

    def __getitem__(self, i: int) -> FactoredSeries:
        """1-based access; index ``m+n+1`` is ``lambda_{(m+n)'}``."""
        k = len(self.components)
        if 1 <= i <= k:
            return self.components[i - 1]
        if i == k + 1:
            return self.last
        raise IndexError(i)

    def full(self) -> list:
        return consistency_extend(self)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in (*self.components, self.last)) + ")"


def consistency_extend(hw: HighestWeight) -> list:
    """All ``N`` diagonal eigenvalues, solving the consistency relations downward from ``(m+n)'``.

    ``lambda_i(u) lambda_{i'}(u + s_i) = lambda_{i+1}(u) lambda_{(i+1)'}(u + s_i)``
    with ``s_i = -kappa + sum_{k<=i} (-1)^{bar k}``.
    """
    ctx = hw.ctx
    k = ctx.m + ctx.n
    lam = list(hw.components)
    primed = {k: hw.last}  # 1-based i -> lambda_{i'}
    s = -ctx.kappa
    shifts = []
    for i in range(1, k):
        s += (-1) ** ctx.parity[i - 1]
        shifts.append(s)
    for i in range(k - 1, 0, -1):
        si = shifts[i - 1]
        # lambda_{i'}(v) = lambda_{i+1}(v - s) lambda_{(i+1)'}(v) / lambda_i(v - s)
        primed[i] = lam[i].shift(-si) * primed[i + 1] / lam[i - 1].shift(-si)
    return lam + [primed[i] for i in range(k, 0, -1)]


def central_eigenvalue(hw: HighestWeight) -> FactoredSeries:
    """``c(u) -> lambda_1(u) lambda_{1'}(u - n + m + 1)``."""
    full = consistency_extend(hw)
    return full[0] * full[-1].shift(-hw.ctx.kappa)


def twist(hw: HighestWeight, f) -> HighestWeight:
    f = _fs(f)
    return HighestWeight(hw.ctx, tuple(c * f for c in hw.components), hw.last * f)


def tensor_highest_weight(mu: HighestWeight, nu: HighestWeight) -> HighestWeight:
    """Highest weight of the cyclic span of ``eta (x) zeta``: componentwise product."""
    if mu.ctx != nu.ctx:
        raise ContextMismatch(f"{mu.ctx.label()} vs {nu.ctx.label()}")
    return HighestWeight(
        mu.ctx, tuple(a * b for a, b in zip(mu.components, nu.components)), mu.last * nu.last
    )


def _signed_points(f: RationalFunction) -> dict:
    zeros, rn = rational_roots(f.numer)
    poles, rd = rational_roots(f.denom)
    if rn.degree > 0 or rd.degree > 0:
        raise UnsupportedRoot(f"irrational zeros or poles in {f}")
    chi: dict = defaultdict(int)
    for x, k in zeros.items():
        chi[x] += k
    for x, k in poles.items():
        chi[x] -= k
    return {x: k for x, k in chi.items() if k}


def solve_product_twist(h) -> FactoredSeries | None:
    """The unique rational ``f = 1 + O(u^-1)`` with ``f(u) f(u+1) = h(u)``, if any."""
    h = _fs(h).to_rational()
    chi = _signed_points(h)
    # chi_f(x) + chi_f(x + 1) = chi_h(x), solved per integer coset from the top
    cosets: dict = defaultdict(dict)
    for x, k in chi.items():
        base = x - math.floor(x)
        cosets[base][int(x - base)] = k
    numer, denom = Polynomial([1]), Polynomial([1])
    for base, counts in cosets.items():
        lo, hi = min(counts), max(counts)
        nxt = 0
        for pos in range(hi, lo - 1, -1):
            cur = counts.get(pos, 0) - nxt
            x = base + pos
            if cur > 0:
                numer = numer * Polynomial([-x, 1]) ** cur
            elif cur < 0:
                denom = denom * Polynomial([-x, 1]) ** (-cur)
            nxt = cur
        if nxt != 0:
            return None
    if numer.degree != denom.degree:
        return None
    f = RationalFunction(numer, denom)
    return FactoredSeries.from_rational(f) if f * f.shift(1) == h else None


def normalizing_twist(hw: HighestWeight) -> FactoredSeries | None:
    """``f`` such that the twisted weight satisfies ``lambda_{m+n}(u) lambda_{(m+n)'}(u+1) = 1``."""
    g = hw.components[-1] * hw.last.shift(1)
    return solve_product_twist(g.inverse())


# ---------------------------------------------------------------- odd reflections


def uinv_roots(f) -> list:
    """Roots ``a_1..a_p`` with ``f = prod (1 + a_i u^-1)``; requires ``f`` polynomial in ``u^-1``."""
    rf = _fs(f).to_rational()
    if rf.denom != U ** rf.denom.degree:
        raise NotApplicable(f"{f} is not a polynomial in u^-1")
    zeros, rem = rational_roots(rf.numer)
    if rem.degree > 0:
        raise UnsupportedRoot(f"irrational roots in {rf.numer}")
    return sorted(-z for z in zeros.elements())


def padded_roots(lam1, lam2) -> tuple:
    """Root lists of two ``u^-1``-polynomials, padded with zeros to a common length ``p``."""
    a, b = uinv_roots(lam1), uinv_roots(lam2)
    p = max(len(a), len(b))
    return a + [Fraction(0)] * (p - len(a)), b + [Fraction(0)] * (p - len(b))


@dataclass(frozen=True)
class ReducedPair:
    """``alpha = A(u) u^-p gamma``, ``beta = B(u) u^-p gamma`` with ``A, B`` coprime and monic."""

    A: Polynomial
    B: Polynomial
    gamma: FactoredSeries

    @property
    def p(self) -> int:
        return self.A.degree

    @property
    def alpha_roots(self) -> list:
        return _neg_roots(self.A)

    @property
    def beta_roots(self) -> list:
        return _neg_roots(self.B)


def _neg_roots(P: Polynomial) -> list:
    zeros, rem = rational_roots(P)
    if rem.degree > 0:
        raise UnsupportedRoot(f"irrational roots in {P}")
    return sorted(-z for z in zeros.elements())


def reduce_pair(alpha, beta) -> ReducedPair:
    """Split off the maximal common factor ``gamma`` of two series."""
    alpha, beta = _fs(alpha), _fs(beta)
    r = alpha.to_rational() / beta.to_rational()
    A, B = r.numer, r.denom
    gamma = alpha * FactoredSeries.from_rational(RationalFunction(U ** A.degree, A))
    pair = ReducedPair(A, B, gamma)
    _ = (pair.alpha_roots, pair.beta_roots)  # raise early on irrational roots
    return pair


def odd_reflection_A(alpha, beta) -> tuple:
    """``(alpha, beta) -> (beta^[1], alpha^[1])``: residual roots shift by +1, common part stays."""
    pr = reduce_pair(alpha, beta)
    a1 = _fs(alpha) * FactoredSeries.from_rational(RationalFunction(pr.A.shift(1), pr.A))
    b1 = _fs(beta) * FactoredSeries.from_rational(RationalFunction(pr.B.shift(1), pr.B))
    return b1, a1


def odd_reflection_osp22(lam1, lam2, lam2p) -> tuple:
    """Weight for parity ``01`` of the module with parity-``10`` weight ``(lam1, lam2, lam2')``.

    Needs ``lam1, lam2`` polynomial in ``u^-1`` of a common (padded) degree ``p``
    with no shared roots.
    """
    lam1, lam2, lam2p = _fs(lam1), _fs(lam2), _fs(lam2p)
    alphas, betas = padded_roots(lam1, lam2)
    common = set(alphas) & set(betas)
    if common:
        raise NotApplicable(f"lambda_1 and lambda_2 share the root(s) {sorted(common)}")
    p = len(alphas)
    up = FactoredSeries.from_rational(uinv_power(1, p))
    um = FactoredSeries.from_rational(uinv_power(-1, p))
    return (
        up * lam2.shift(1),
        up * lam1.shift(1),
        um * lam2.shift(-1) * lam2p / lam1,
    )


@dataclass
class ChainStep:
    pair: tuple  # (index label, index label)
    p: int
    common: FactoredSeries


@dataclass
class ChainResult:
    final: FactoredSeries  # lambda_m^[n-1]
    reflected: list  # lambda^[1]_{m+1}, ..., lambda^[1]_{m+n-1}
    steps: list = field(default_factory=list)

    @property
    def branch(self) -> str:
        """``equal-pair`` when some step met two identical series (the degenerate case)."""
        return "equal-pair" if any(s.p == 0 for s in self.steps) else "generic"


def chain_reflection(hw: HighestWeight) -> ChainResult:
    """Push ``lambda_m`` through ``lambda_{m+1}, ..., lambda_{m+n-1}`` by type-A reflections."""
    ctx = hw.ctx
    m, n = ctx.m, ctx.n
    if m < 1 or n < 1:
        raise NotApplicable("the reflection chain needs m >= 1 and n >= 1")
    cur = hw.components[m - 1]
    reflected, steps = [], []
    for i in range(n - 1):
        nxt = hw.components[m + i]
        pr = reduce_pair(cur, nxt)
        b1, a1 = odd_reflection_A(cur, nxt)
        steps.append(ChainStep((f"m^[{i}]" if i else "m", f"m+{i + 1}"), pr.p, pr.gamma))
        reflected.append(b1)
        cur = a1
    return ChainResult(cur, reflected, steps)


# ---------------------------------------------------------------- osp(2|2) criterion


@dataclass
class FdVerdict:
    holds: bool
    witness: Polynomial | None
    p: int
    twist: FactoredSeries
    f: RationalFunction

    def __bool__(self):
        return self.holds


def fd_criterion_osp22(lam1, lam2, lam2p) -> FdVerdict:
    """Decide finite dimensionality of the parity-10 osp(2|2) weight ``(lam1, lam2, lam2')``.

    The weight is first twisted so that ``lam1, lam2`` become coprime ``u^-1``-polynomials;
    the condition is then ``f(u) = P(u+2)/P(u)`` for a monic ``P``.
    """
    lam1, lam2, lam2p = _fs(lam1), _fs(lam2), _fs(lam2p)
    pr = reduce_pair(lam1, lam2)
    g = pr.gamma.inverse()
    l1 = FactoredSeries.from_rational(RationalFunction(pr.A, U ** pr.p))
    l2 = FactoredSeries.from_rational(RationalFunction(pr.B, U ** pr.p))
    l2p = lam2p * g
    p = pr.p
    f = (
        RationalFunction(Polynomial([-1, 1]), Polynomial([1, 1])) ** p
        * l2.shift(-1).to_rational()
        * l2p.to_rational()
        / (l1.to_rational() * l1.shift(1).to_rational())
    )
    P = shift_quotient_witness(f, 2)
    return FdVerdict(P is not None, P, p, g, f)


def fd_symmetry_check(lam1, lam2, lam2p) -> bool:
    """Whether the verdict is unchanged by swapping ``lam2`` and ``lam2'``."""
    return fd_criterion_osp22(lam1, lam2, lam2p).holds == fd_criterion_osp22(lam1, lam2p, lam2).holds


# ---------------------------------------------------------------- necessary conditions


def _arrow(rep: Report, name: str, left: FactoredSeries, right: FactoredSeries) -> None:
    """``left -> right``: ``left/right = Q(u+1)/Q(u)``."""
    Q = shift_quotient_witness((left / right).to_rational(), 1)
    rep.add(name, Q is not None, f"Q = {Q}" if Q is not None else "no monic Q", {"Q": Q} if Q is not None else None)


def necessary_conditions(hw: HighestWeight) -> Report:
    """Conditions every finite-dimensional ``L(lambda)`` satisfies (standard parity)."""
    ctx = hw.ctx
    m, n = ctx.m, ctx.n
    rep = Report(f"check necessary {ctx.label()}")
    if m < 1 or n < 1:
        rep.not_applicable = "needs m >= 1 and n >= 1"
        return rep.finish()
    if ctx.parity != AlgebraContext.standard(m, n).parity:
        rep.not_applicable = "stated for the standard parity sequence 1..10..0"
        return rep.finish()
    lam = {i + 1: c for i, c in enumerate(hw.components)}
    try:
        ratio = (lam[m] / lam[m + 1]).to_rational()
        rep.add(f"lambda_{m}/lambda_{m + 1} is rational in u^-1", True, str(ratio))
        for i in range(1, m):
            _arrow(rep, f"lambda_{i} <- lambda_{i + 1}", lam[i + 1], lam[i])
        for i in range(m + 1, m + n):
            _arrow(rep, f"lambda_{i} -> lambda_{i + 1}", lam[i], lam[i + 1])
        if n >= 2:
            _arrow(rep, f"lambda_{m + n - 1} -> lambda_({m + n})'", lam[m + n - 1], hw.last)
        else:
            rep.note("n = 1 lies outside the range n >= 2 of the theorem; no vertical arrow is checked")
        try:
            chain = chain_reflection(hw)
        except NotApplicable as exc:
            rep.add("reflection chain", False, str(exc))
            return rep.finish()
        rep.data["lambda_m^[n-1]"] = str(chain.final)
        rep.data["chain branch"] = chain.branch
        rep.data["chain p"] = [s.p for s in chain.steps]
        v = fd_criterion_osp22(chain.final, lam[m + n], hw.last)
        rep.add(
            f"lambda_{m + n} => lambda_{m}^[{n - 1}] <= lambda_({m + n})'",
            v.holds,
            f"p = {v.p}, P = {v.witness}" if v.holds else f"p = {v.p}, f = {v.f} is not P(u+2)/P(u)",
            {"p": v.p, "P": v.witness, "f": v.f},
        )
        sym = fd_criterion_osp22(chain.final, hw.last, lam[m + n])
        rep.add(
            "criterion unchanged under lambda_2 <-> lambda_2'",
            sym.holds == v.holds,
            f"swapped verdict {sym.holds}",
        )
    except UnsupportedRoot as exc:
        rep.checks.clear()
        rep.not_applicable = f"unsupported: {exc}"
    return rep.finish()


# ---------------------------------------------------------------- linear weights


@dataclass(frozen=True)
class YoungDiagram:
    rows: tuple

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r < 0 for r in rows) or any(a < b for a, b in zip(rows, rows[1:])):
            raise InvalidInput(f"rows {rows} are not weakly decreasing and nonnegative")
        while rows and rows[-1] == 0:
            rows = rows[:-1]
        object.__setattr__(self, "rows", rows)

    def row(self, i: int) -> int:
        """1-based row length, 0 past the end."""
        return self.rows[i - 1] if 1 <= i <= len(self.rows) else 0

    @property
    def size(self) -> int:
        return sum(self.rows)

    def conjugate(self) -> "YoungDiagram":
        return YoungDiagram(tuple(sum(1 for r in self.rows if r >= j) for j in range(1, self.row(1) + 1)))

    def in_hook(self, m: int, n: int) -> bool:
        return self.row(m + 1) <= n

    def mu(self, m: int, n: int) -> tuple:
        return tuple(max(self.row(i) - n, 0) for i in range(1, m + 1))

    def nu(self, m: int, n: int) -> tuple:
        c = self.conjugate()
        return tuple(max(c.row(j) - m, 0) for j in range(1, n + 1))

    def sharp(self, m: int, n: int) -> tuple:
        return tuple(-self.row(i) for i in range(1, m + 1)) + self.nu(m, n)

    def __str__(self):
        return "(" + ",".join(map(str, self.rows)) + ")"


def partitions(total: int, largest: int | None = None):
    if largest is None:
        largest = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


def hook_diagrams(m: int, n: int, max_size: int) -> list:
    out = []
    for k in range(max_size + 1):
        for rows in partitions(k):
            d = YoungDiagram(rows)
            if d.in_hook(m, n):
                out.append(d)
    return out


@dataclass(frozen=True)
class LinearWeight:
    """``lambda_i(u) = 1 + lambda_i u^-1`` normalized by ``lambda_{m+n}(u) lambda_{(m+n)'}(u+1) = 1``."""

    ctx: AlgebraContext
    values: tuple

    def __post_init__(self):
        vals = tuple(as_fraction(v) for v in self.values)
        if len(vals) != self.ctx.m + self.ctx.n:
            raise InvalidInput(f"expected {self.ctx.m + self.ctx.n} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    def last(self) -> FactoredSeries:
        a = self.values[-1]
        return FactoredSeries.from_rational(RationalFunction(Polynomial([-1, 1]), Polynomial([a - 1, 1])))

    def to_highest_weight(self) -> HighestWeight:
        return HighestWeight(self.ctx, tuple(FactoredSeries.linear(a) for a in self.values), self.last())

    @classmethod
    def from_highest_weight(cls, hw: HighestWeight) -> "LinearWeight":
        vals = []
        for c in hw.components:
            roots = uinv_roots(c)
            if len(roots) > 1:
                raise NotApplicable(f"component {c} is not linear in u^-1")
            vals.append(roots[0] if roots else Fraction(0))
        w = cls(hw.ctx, tuple(vals))
        if w.last() != hw.last:
            raise NotApplicable("last component is not (u-1)/(u+lambda_{m+n}-1)")
        return w


def classify_linear(w: LinearWeight) -> tuple:
    """``(True, diagram)`` exactly when the linear weight is ``Gamma^sharp`` of an (m,n)-hook diagram."""
    m, n = w.ctx.m, w.ctx.n
    lam = w.values
    if m < 1:
        raise NotApplicable("the classification needs m >= 1")
    if any(v.denominator != 1 for v in lam):
        return False, None
    a, b = [int(v) for v in lam[:m]], [int(v) for v in lam[m:]]
    # lambda_1 <- ... <- lambda_m = -l
    if any(not arrow_scalar(a[i + 1], a[i]) for i in range(m - 1)):
        return False, None
    l = -a[-1]
    if l < 0:
        return False, None
    # lambda_{m+1} -> ... -> lambda_{m+min(l,n)} -> 0, zeros after
    k = min(l, n)
    chain = b[:k] + [0]
    if any(not arrow_scalar(chain[i], chain[i + 1]) for i in range(k)):
        return False, None
    if any(v != 0 for v in b[k:]):
        return False, None
    nu = b
    lower = [sum(1 for x in nu if x >= r) for r in range(1, (max(nu) if nu else 0) + 1)]
    diagram = YoungDiagram(tuple(-x for x in a) + tuple(lower))
    if not diagram.in_hook(m, n) or diagram.sharp(m, n) != tuple(a + b):
        return False, None
    return True, diagram
