"""2- and 3-isogenies of Weierstrass curves, verified symbolically.

Verification works in the coordinate ring of the source curve: elements
are f0(X) + f1(X) Y with rational-function coefficients, multiplied modulo
the curve equation.  A claimed isogeny or isomorphism passes when the
pulled-back target equation reduces to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .fields import FunctionField, PrimeField, QuadField
from .poly import Poly, RatFun, parse_expr
from .weierstrass import WeierstrassCurve, ec_add, ec_mul, ec_on_curve

Q = Fraction


class CurveAlgebra:
    """K(T)[X, Y] modulo a Weierstrass equation (monic of degree 2 in Y)."""

    def __init__(self, curve: WeierstrassCurve, var: str = "T"):
        self.FT = FunctionField(curve.F, var)
        FT = self.FT
        a = [FT.from_poly(p.cs) for p in curve.coefficients()]
        self.a = a
        x = Poly.gen(FT)
        self.R = x ** 3 + Poly.const(FT, a[1]) * x * x + Poly.const(FT, a[3]) * x + Poly.const(FT, a[4])
        self.S = -(Poly.const(FT, a[0]) * x) - Poly.const(FT, a[2])

    def scalar(self, c) -> "OnCurve":
        return OnCurve(self, Poly.const(self.FT, self.FT.of(c)), Poly(self.FT, ()))

    def scalar_ff(self, elt) -> "OnCurve":
        return OnCurve(self, Poly.const(self.FT, elt), Poly(self.FT, ()))

    def X(self) -> "OnCurve":
        return OnCurve(self, Poly.gen(self.FT), Poly(self.FT, ()))

    def Y(self) -> "OnCurve":
        return OnCurve(self, Poly(self.FT, ()), Poly.const(self.FT, self.FT.one))

    def T(self) -> "OnCurve":
        return self.scalar_ff(self.FT.gen)


class OnCurve:
    __slots__ = ("alg", "p", "q")

    def __init__(self, alg: CurveAlgebra, p: Poly, q: Poly):
        self.alg = alg
        self.p = p
        self.q = q

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.q.is_zero()

    def is_scalar(self) -> bool:
        return self.q.is_zero() and self.p.degree <= 0

    def scalar_value(self):
        if not self.is_scalar():
            raise ValueError("not a scalar on the curve")
        return self.p.const_value() if not self.p.is_zero() else self.alg.FT.zero

    def _coerce(self, other) -> "OnCurve":
        if isinstance(other, OnCurve):
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        o = self._coerce(other)
        return OnCurve(self.alg, self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self):
        return OnCurve(self.alg, -self.p, -self.q)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        yy = self.q * o.q
        p = self.p * o.p + yy * self.alg.R
        q = self.p * o.q + self.q * o.p + yy * self.alg.S
        return OnCurve(self.alg, p, q)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        c = o.scalar_value()
        inv = self.alg.FT.inv(c)
        cp = Poly.const(self.alg.FT, inv)
        return OnCurve(self.alg, self.p * cp, self.q * cp)

    def __pow__(self, n: int):
        out = self.alg.scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out


def _eval_poly_in_ff(p: Poly, tau, FT: FunctionField):
    acc = FT.zero
    for c in reversed(p.cs):
        acc = FT.add(FT.mul(acc, tau), FT.of(c))
    return acc


# ---------------------------------------------------------------------------
# the 3-isogeny with kernel (0, 0) on y^2 + A xy + B y = x^3


@dataclass
class ThreeIsogeny:
    source: WeierstrassCurve
    image: WeierstrassCurve       # direct invariant-function quotient
    normalized: WeierstrassCurve  # kernel-of-dual moved to (0,0)


def three_isogeny(A: Poly, B: Poly) -> ThreeIsogeny:
    if B.is_zero():
        raise ValueError("B must not vanish identically")
    F = A.F
    zero = Poly(F, ())
    source = WeierstrassCurve(F, A, zero, B, zero, zero)
    image = WeierstrassCurve(F, A, zero, 3 * B, -6 * A * B, -(B * (A ** 3 + 9 * B)))
    normalized = WeierstrassCurve(F, -3 * A, zero, 27 * B - A ** 3, zero, zero)
    return ThreeIsogeny(source, image, normalized)


def three_isogeny_residual_is_zero(A: Poly, B: Poly) -> bool:
    """Substitute the quotient map into the image equation modulo the source."""
    iso = three_isogeny(A, B)
    alg = CurveAlgebra(iso.source)
    X, Y = alg.X(), alg.Y()
    Ac = alg.scalar_ff(alg.FT.from_poly(A.cs))
    Bc = alg.scalar_ff(alg.FT.from_poly(B.cs))
    U = X ** 3 + Ac * Bc * X + Bc * Bc               # X^2 * x1
    V = Y * (X ** 3 - Ac * Bc * X - 2 * Bc * Bc) - Bc * (
        X ** 3 + Ac * Ac * X * X + 2 * Ac * Bc * X + Bc * Bc
    )                                                 # X^3 * y1
    lhs = V * V + (Ac * U + 3 * Bc * X * X) * V * X
    rhs = U ** 3 - 6 * Ac * Bc * U * (X ** 4) - Bc * (Ac ** 3 + 9 * Bc) * (X ** 6)
    return (lhs - rhs).is_zero()


def two_isogeny(a: Poly, b: Poly) -> Tuple[WeierstrassCurve, WeierstrassCurve]:
    """Quotient of y^2 = x (x^2 + a x + b) by the 2-torsion point (0, 0)."""
    if b.is_zero():
        raise ValueError("b must not vanish identically")
    F = a.F
    zero = Poly(F, ())
    source = WeierstrassCurve(F, zero, a, zero, b, zero)
    image = WeierstrassCurve(F, zero, -2 * a, zero, a * a - 4 * b, zero)
    return source, image


def two_isogeny_residual_is_zero(a: Poly, b: Poly) -> bool:
    source, image = two_isogeny(a, b)
    alg = CurveAlgebra(source)
    X, Y = alg.X(), alg.Y()
    ac = alg.scalar_ff(alg.FT.from_poly(a.cs))
    bc = alg.scalar_ff(alg.FT.from_poly(b.cs))
    # X2 = (Y/X)^2, Y2 = Y (b - X^2)/X^2; multiply the image equation by X^6
    Y2sq = (Y * (bc - X * X)) ** 2 * (X * X)
    X2_1 = Y * Y * (X ** 4)
    X2_2 = (Y * Y) ** 2 * (X * X)
    X2_3 = (Y * Y) ** 3
    lhs = Y2sq
    rhs = X2_3 - 2 * ac * X2_2 + (ac * ac - 4 * bc) * X2_1
    return (lhs - rhs).is_zero()


# ---------------------------------------------------------------------------
# claimed coordinate transformations


def verify_transformation(src: WeierstrassCurve, dst: WeierstrassCurve, subst: Dict[str, str],
                          var: str = "T") -> bool:
    """True iff the src equation pulled back through subst dies on dst.

    subst gives t, x, y of the source as expressions in T, X, Y (and the
    field radical s when present); both curves must share the field.
    """
    alg = CurveAlgebra(dst, var)
    env = {var: alg.T(), "X": alg.X(), "Y": alg.Y()}
    fld = src.F
    if isinstance(fld, QuadField):
        env[fld.symbol] = alg.scalar(fld.gen)
    t_expr = parse_expr(subst["t"], env, fld, make_const=lambda n: alg.scalar(fld.of(n)))
    x_expr = parse_expr(subst["x"], env, fld, make_const=lambda n: alg.scalar(fld.of(n)))
    y_expr = parse_expr(subst["y"], env, fld, make_const=lambda n: alg.scalar(fld.of(n)))
    if not t_expr.is_scalar():
        raise ValueError("the base substitution may not involve X or Y")
    tau = t_expr.scalar_value()
    a = [alg.scalar_ff(_eval_poly_in_ff(p, tau, alg.FT)) for p in src.coefficients()]
    lhs = y_expr * y_expr + a[0] * x_expr * y_expr + a[2] * y_expr
    rhs = x_expr ** 3 + a[1] * x_expr * x_expr + a[3] * x_expr + a[4]
    return (lhs - rhs).is_zero()


def j_matches_through(src: WeierstrassCurve, dst: WeierstrassCurve, t_expr: str,
                      var: str = "T") -> bool:
    """j_src(t(T)) == j_dst(T) for an isomorphism's base substitution."""
    from .poly import parse_ratfun

    tau = parse_ratfun(t_expr, src.F, var=var)
    return src.j_invariant().eval_ratfun(tau) == dst.j_invariant()


# ---------------------------------------------------------------------------
# dual-isogeny composition over prime fields


def three_isogeny_point_map(Fp: PrimeField, A, B):
    """Point map of the normalized 3-isogeny over GF(p), p = 1 mod 3."""
    w = Fp.sqrt(Fp.of(-3))
    inv3 = Fp.inv(3)
    u = Fp.mul(Fp.neg(w), inv3)
    u2, u3 = Fp.mul(u, u), Fp.mul(Fp.mul(u, u), u)
    r = Fp.neg(Fp.mul(Fp.mul(A, A), inv3))
    s = Fp.mul(Fp.mul(A, Fp.sub(w, 1)), Fp.inv(2))
    B1 = Fp.sub(Fp.mul(27, B), Fp.mul(A, Fp.mul(A, A)))
    t_sh = Fp.mul(
        Fp.sub(Fp.sub(Fp.mul(B1, u3), Fp.mul(3, B)), Fp.mul(r, A)),
        Fp.inv(2),
    )

    def phi(P):
        if P is None:
            return None
        X, Y = P
        if Fp.is_zero(X):
            return None  # the kernel
        X2 = Fp.mul(X, X)
        X3 = Fp.mul(X2, X)
        x1 = Fp.div(Fp.add(X3, Fp.add(Fp.mul(Fp.mul(A, B), X), Fp.mul(B, B))), X2)
        y1 = Fp.div(
            Fp.sub(
                Fp.mul(Y, Fp.sub(X3, Fp.add(Fp.mul(Fp.mul(A, B), X), Fp.mul(2, Fp.mul(B, B))))),
                Fp.mul(B, Fp.add(X3, Fp.add(Fp.mul(Fp.mul(A, A), X2),
                                            Fp.add(Fp.mul(2, Fp.mul(Fp.mul(A, B), X)), Fp.mul(B, B))))),
            ),
            X3,
        )
        x2 = Fp.div(Fp.sub(x1, r), u2)
        y2 = Fp.div(Fp.sub(y1, Fp.add(Fp.mul(s, Fp.mul(u2, x2)), t_sh)), u3)
        return (x2, y2)

    return phi


def dual_three_isogeny_is_multiplication(Fp: PrimeField, A, B, P) -> bool:
    """phi-hat o phi = [+-3] checked on one point over GF(p).

    The sign depends on the branch of sqrt(-3) picked inside each
    normalization, so multiplication by 3 holds up to the [-1] automorphism.
    """
    from .weierstrass import ec_neg

    a_src = [Fp.of(A), Fp.zero, Fp.of(B), Fp.zero, Fp.zero]
    A2 = Fp.neg(Fp.mul(3, Fp.of(A)))
    B2 = Fp.sub(Fp.mul(27, Fp.of(B)), Fp.mul(Fp.of(A), Fp.mul(Fp.of(A), Fp.of(A))))
    phi1 = three_isogeny_point_map(Fp, Fp.of(A), Fp.of(B))
    phi2 = three_isogeny_point_map(Fp, A2, B2)
    img = phi2(phi1(P))
    trip = ec_mul(Fp, a_src, P, 3)
    if img is None:
        return trip is None
    x, y = img
    back = (Fp.div(x, Fp.of(81)), Fp.div(y, Fp.of(729)))
    return back == trip or back == ec_neg(Fp, a_src, trip)


def dual_two_isogeny_is_multiplication(Fp: PrimeField, a, b, P) -> bool:
    a_src = [Fp.zero, Fp.of(a), Fp.zero, Fp.of(b), Fp.zero]

    def phi(P, aa, bb):
        if P is None:
            return None
        x, y = P
        if Fp.is_zero(x):
            return None
        X = Fp.div(Fp.mul(y, y), Fp.mul(x, x))
        Y = Fp.div(Fp.mul(y, Fp.sub(bb, Fp.mul(x, x))), Fp.mul(x, x))
        return (X, Y)

    from .weierstrass import ec_neg

    a1, b1 = Fp.neg(Fp.mul(2, Fp.of(a))), Fp.sub(Fp.mul(Fp.of(a), Fp.of(a)), Fp.mul(4, Fp.of(b)))
    img = phi(phi(P, Fp.of(a), Fp.of(b)), a1, b1)
    dbl = ec_mul(Fp, a_src, P, 2)
    if img is None:
        return dbl is None
    x, y = img
    back = (Fp.div(x, Fp.of(4)), Fp.div(y, Fp.of(8)))
    return back == dbl or back == ec_neg(Fp, a_src, dbl)
