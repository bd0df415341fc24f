"""Independent reference computations (sympy and direct enumeration)."""
from fractions import Fraction

import sympy as sp

u, w = sp.symbols("u w")


def to_sympy(p) -> sp.Expr:
    return sum(sp.Rational(c.numerator, c.denominator) * u**k for k, c in enumerate(p.coeffs))


def rf_to_sympy(f) -> sp.Expr:
    return to_sympy(f.numer) / to_sympy(f.denom)


def from_sympy_poly(expr) -> list:
    coeffs = sp.Poly(sp.expand(expr), u).all_coeffs()[::-1]
    return [Fraction(int(sp.numer(c)), int(sp.denom(c))) for c in coeffs]


def uinv_coefficients(expr, order: int) -> list:
    """Coefficients of ``u^0 .. u^-order`` of a function regular at infinity."""
    e = sp.together(expr.subs(u, 1 / w))
    ser = sp.series(e, w, 0, order + 1).removeO()
    out = []
    for r in range(order + 1):
        c = sp.Rational(ser.coeff(w, r))
        out.append(Fraction(int(c.p), int(c.q)))
    return out
