"""Weierstrass equations over K(t): invariants, fibers, sections, heights.

A curve is given by polynomials a1, a2, a3, a4, a6 in t over an exact
coefficient field (Q, Q(sqrt d) or a rational function field).  Sections
are points with coordinates in the rational function field K(t); the group
law is written against the generic field protocol so the same code runs
over K(t) and over prime fields for specialization checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .fields import FunctionField
from .poly import Poly, RatFun, gcd, parse_poly, parse_ratfun, squarefree_decomposition, valuation

Q = Fraction

INF = "inf"


def euler_number(kind: str) -> int:
    if kind in ("II", "III", "IV"):
        return {"II": 2, "III": 3, "IV": 4}[kind]
    if kind in ("II*", "III*", "IV*"):
        return {"II*": 10, "III*": 9, "IV*": 8}[kind]
    if kind.endswith("*"):
        return int(kind[1:-1]) + 6
    return int(kind[1:])  # I_n


def simple_component_count(kind: str) -> int:
    """Number of simple fiber components (local discriminant contribution)."""
    if kind in ("II", "II*"):
        return 1
    if kind in ("III", "III*"):
        return 2
    if kind in ("IV", "IV*"):
        return 3
    if kind.endswith("*"):
        return 4
    return max(int(kind[1:]), 1)


def total_component_count(kind: str) -> int:
    if kind in ("II", "III", "IV"):
        return {"II": 1, "III": 2, "IV": 3}[kind]
    if kind in ("II*", "III*", "IV*"):
        return {"II*": 9, "III*": 8, "IV*": 7}[kind]
    if kind.endswith("*"):
        return int(kind[1:-1]) + 5
    return max(int(kind[1:]), 1)


@dataclass
class WeierstrassCurve:
    F: object
    a1: Poly
    a2: Poly
    a3: Poly
    a4: Poly
    a6: Poly

    @staticmethod
    def from_strings(field, a: Sequence[str]) -> "WeierstrassCurve":
        ps = [parse_poly(str(s), field) if str(s) not in ("", "0") else Poly(field, ()) for s in a]
        return WeierstrassCurve(field, *ps)

    def coefficients(self) -> List[Poly]:
        return [self.a1, self.a2, self.a3, self.a4, self.a6]

    def b_invariants(self) -> Tuple[Poly, Poly, Poly, Poly]:
        a1, a2, a3, a4, a6 = self.coefficients()
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def c_invariants(self) -> Tuple[Poly, Poly]:
        b2, b4, b6, _ = self.b_invariants()
        return b2 * b2 - 24 * b4, -(b2 ** 3) + 36 * b2 * b4 - 216 * b6

    def discriminant(self) -> Poly:
        b2, b4, b6, b8 = self.b_invariants()
        return -(b2 * b2 * b8) - 8 * (b4 ** 3) - 27 * (b6 * b6) + 9 * b2 * b4 * b6

    def j_invariant(self) -> RatFun:
        c4, _ = self.c_invariants()
        return RatFun(c4 ** 3, self.discriminant())

    def infinity_model(self) -> Tuple["WeierstrassCurve", int]:
        """Substitute t = 1/s, twisting minimally to polynomial coefficients."""
        weights = (1, 2, 3, 4, 6)
        m = 0
        for w, a in zip(weights, self.coefficients()):
            if not a.is_zero():
                m = max(m, -(-a.degree // w))  # ceil(deg / w)
        coeffs = []
        for w, a in zip(weights, self.coefficients()):
            coeffs.append(a.reversed_coeffs(w * m) if not a.is_zero() else a)
        return WeierstrassCurve(self.F, *coeffs), m

    def to_json(self) -> dict:
        return {"a": [[self.F.to_json(c) for c in p.cs] for p in self.coefficients()]}


def translate_x_local(a: List[RatFun], r: RatFun) -> List[RatFun]:
    """Coefficients after x -> x + r (y untouched)."""
    a1, a2, a3, a4, a6 = a
    return [
        a1,
        a2 + 3 * r,
        a3 + r * a1,
        a4 + 2 * r * a2 + 3 * (r * r),
        a6 + r * a4 + (r * r) * a2 + r ** 3,
    ]


# ---------------------------------------------------------------------------
# places and Kodaira types


@dataclass(frozen=True)
class Place:
    poly: Optional[Poly]  # None marks the place at infinity

    @property
    def at_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.at_infinity else self.poly.degree

    def label(self) -> str:
        return INF if self.at_infinity else repr(self.poly)


def _refine_by(places: List[Poly], q: Poly) -> List[Poly]:
    """Split monic squarefree places until the valuation of q is uniform."""
    if q.is_zero():
        return places
    out: List[Poly] = []
    stack = list(places)
    while stack:
        p = stack.pop()
        qq = q
        while True:
            g = gcd(qq, p)
            if g.degree == 0:
                out.append(p)
                break
            if g.degree < p.degree:
                stack.append(g)
                stack.append((p // g).monic())
                break
            qq = qq // p
    return out


def bad_places(E: WeierstrassCurve) -> List[Tuple[Poly, int]]:
    """Finite places of bad reduction with uniform (c4, c6, disc) valuations.

    The place at infinity is examined through the twisted 1/t chart by
    fiber_configuration, which appends it when the model degenerates there.
    """
    disc = E.discriminant()
    if disc.is_zero():
        raise ValueError("discriminant vanishes identically")
    c4, c6 = E.c_invariants()
    places: List[Poly] = []
    for f, _m in squarefree_decomposition(disc):
        parts = _refine_by([f], c4)
        parts = sum((_refine_by([p], c6) for p in parts), [])
        places.extend(parts)
    uniq = {p.cs: p for p in places}
    out = []
    for cs in sorted(uniq, key=lambda cs: (len(cs), [str(c) for c in cs])):
        p = uniq[cs]
        out.append((p, valuation(disc, p)))
    return out


def _val(p: Poly, place: Poly) -> Optional[int]:
    if p.is_zero():
        return None
    return valuation(p, place)


def kodaira_symbol(vc4: Optional[int], vc6: Optional[int], vd: int) -> Tuple[str, int]:
    """Kodaira type from valuations (residue characteristic zero).

    Returns (symbol, reductions): reductions counts removed 12th powers of
    the local parameter (non-minimal models).
    """
    red = 0
    while vd >= 12 and (vc4 is None or vc4 >= 4) and (vc6 is None or vc6 >= 6):
        vd -= 12
        vc4 = None if vc4 is None else vc4 - 4
        vc6 = None if vc6 is None else vc6 - 6
        red += 1
    if vd == 0:
        return "I0", red
    if vc4 == 0:
        return f"I{vd}", red
    if vd == 2:
        return "II", red
    if vd == 3:
        return "III", red
    if vd == 4:
        return "IV", red
    if vc4 is not None and vc4 == 2 and vd >= 7:
        return f"I{vd - 6}*", red
    if vd == 6:
        return "I0*", red
    if vd == 7:
        return "I1*", red
    if vd == 8:
        return "IV*", red
    if vd == 9:
        return "III*", red
    if vd == 10:
        return "II*", red
    raise ValueError(f"unclassifiable valuations ({vc4}, {vc6}, {vd})")


def kodaira_type(E: WeierstrassCurve, place: Poly) -> Tuple[str, int]:
    c4, c6 = E.c_invariants()
    vd = valuation(E.discriminant(), place)
    return kodaira_symbol(_val(c4, place), _val(c6, place), vd)


@dataclass
class FiberConfiguration:
    fibers: List[Tuple[Place, str]]

    def euler_sum(self) -> int:
        return sum(euler_number(kind) * pl.degree for pl, kind in self.fibers)

    def multiset(self) -> List[Tuple[str, str, int]]:
        return sorted((kind, pl.label(), pl.degree) for pl, kind in self.fibers)

    def root_names(self) -> List[str]:
        """Lattice-level ADE names of the reducible fibers."""
        out = []
        for pl, kind in self.fibers:
            name = fiber_root_name(kind)
            if name:
                out.extend([name] * pl.degree)
        return sorted(out, key=lambda s: (s[0], int(s[1:])))

    def to_json(self) -> list:
        return [
            {"type": kind, "place": pl.label(), "count": pl.degree}
            for pl, kind in sorted(self.fibers, key=lambda f: (f[1], f[0].label()))
        ]


def fiber_root_name(kind: str) -> Optional[str]:
    """Frame-level root type of one fiber (I2 and III both give A1, etc.)."""
    if kind in ("I0", "I1", "II"):
        return None
    if kind == "III":
        return "A1"
    if kind == "IV":
        return "A2"
    if kind == "II*":
        return "E8"
    if kind == "III*":
        return "E7"
    if kind == "IV*":
        return "E6"
    if kind.endswith("*"):
        return f"D{int(kind[1:-1]) + 4}"
    return f"A{int(kind[1:]) - 1}"


def fiber_configuration(E: WeierstrassCurve) -> FiberConfiguration:
    cached = E.__dict__.get("_config_cache")
    if cached is not None:
        return cached
    fibers: List[Tuple[Place, str]] = []
    for p, _vd in bad_places(E):
        kind, _ = kodaira_type(E, p)
        if kind != "I0":
            fibers.append((Place(p), kind))
    Einf, _m = E.infinity_model()
    dinf = Einf.discriminant()
    if dinf.is_zero():
        raise ValueError("infinity model degenerates identically")
    s = Poly.gen(E.F)
    if valuation(dinf, s) > 0:
        kind, _ = kodaira_type(Einf, s)
        if kind != "I0":
            fibers.append((Place(None), kind))
    config = FiberConfiguration(fibers)
    E.__dict__["_config_cache"] = config
    return config


def extend_scalars(E: WeierstrassCurve, K, embed) -> WeierstrassCurve:
    """The same curve over an extension field.

    Kodaira data is invariant under extension of the (exact, characteristic
    zero) coefficient field, so the fiber configuration is carried over
    instead of being recomputed in the larger field.
    """
    out = WeierstrassCurve(K, *[p.map_coeffs(embed, K) for p in E.coefficients()])
    cached = E.__dict__.get("_config_cache") or fiber_configuration(E)
    lifted = []
    for pl, kind in cached.fibers:
        if pl.at_infinity:
            lifted.append((pl, kind))
        else:
            lifted.append((Place(pl.poly.map_coeffs(embed, K)), kind))
    out.__dict__["_config_cache"] = FiberConfiguration(lifted)
    return out


# ---------------------------------------------------------------------------
# group law (field protocol)

O_POINT = None


def ec_on_curve(F, a, P) -> bool:
    if P is O_POINT:
        return True
    a1, a2, a3, a4, a6 = a
    x, y = P
    lhs = F.add(F.mul(y, y), F.add(F.mul(a1, F.mul(x, y)), F.mul(a3, y)))
    rhs = F.add(F.mul(x, F.mul(x, x)), F.add(F.mul(a2, F.mul(x, x)), F.add(F.mul(a4, x), a6)))
    return F.eq(lhs, rhs)


def ec_neg(F, a, P):
    if P is O_POINT:
        return O_POINT
    a1, _, a3, _, _ = a
    x, y = P
    return (x, F.sub(F.sub(F.neg(y), F.mul(a1, x)), a3))


def ec_add(F, a, P, Qp):
    if P is O_POINT:
        return Qp
    if Qp is O_POINT:
        return P
    a1, a2, a3, a4, _ = a
    x1, y1 = P
    x2, y2 = Qp
    if F.eq(x1, x2):
        neg_y2 = F.sub(F.sub(F.neg(y2), F.mul(a1, x2)), a3)
        if F.eq(y1, neg_y2):
            return O_POINT
        num = F.add(
            F.mul(F.of(3), F.mul(x1, x1)),
            F.add(F.mul(F.of(2), F.mul(a2, x1)), F.sub(a4, F.mul(a1, y1))),
        )
        den = F.add(F.mul(F.of(2), y1), F.add(F.mul(a1, x1), a3))
        lam = F.div(num, den)
    else:
        lam = F.div(F.sub(y2, y1), F.sub(x2, x1))
    nu = F.sub(y1, F.mul(lam, x1))
    x3 = F.sub(F.sub(F.add(F.mul(lam, lam), F.mul(a1, lam)), a2), F.add(x1, x2))
    y3 = F.sub(F.sub(F.neg(F.mul(F.add(lam, a1), x3)), nu), a3)
    return (x3, y3)


def ec_mul(F, a, P, n: int):
    if n < 0:
        return ec_mul(F, a, ec_neg(F, a, P), -n)
    acc = O_POINT
    base = P
    while n:
        if n & 1:
            acc = ec_add(F, a, acc, base)
        base = ec_add(F, a, base, base)
        n >>= 1
    return acc


def function_field_of(E: WeierstrassCurve) -> FunctionField:
    return FunctionField(E.F, "t")


def curve_constants(E: WeierstrassCurve, FT: FunctionField):
    return [FT.from_poly(p.cs) for p in E.coefficients()]


def section_from_strings(E: WeierstrassCurve, x: str, y: str):
    rx = parse_ratfun(x, E.F)
    ry = parse_ratfun(y, E.F)
    return ((rx.num.cs, rx.den.cs), (ry.num.cs, ry.den.cs))


def base_specialization(F):
    """A specialization hom of the coefficient field onto Q or Q(sqrt d)."""
    if isinstance(F, FunctionField):
        sub, hom = base_specialization(F.base)

        def f(elt, value=Q(17)):
            num = Poly(F.base, list(elt[0])).eval(F.base.of(value))
            den = Poly(F.base, list(elt[1])).eval(F.base.of(value))
            return hom(F.base.div(num, den))

        return sub, f
    return F, lambda x: x


def specialize_section(E: WeierstrassCurve, P, t0):
    """Evaluate curve and section at t = t0 (coefficient field specialized too)."""
    sub, hom = base_specialization(E.F)
    t0e = E.F.of(t0)
    a = [hom(p.eval(t0e)) for p in E.coefficients()]
    if P is O_POINT:
        return sub, a, O_POINT
    x = _rf(E.F, P[0])
    y = _rf(E.F, P[1])
    if E.F.is_zero(x.den.eval(t0e)) or E.F.is_zero(y.den.eval(t0e)):
        raise ZeroDivisionError("section has a pole at the chosen value")
    return sub, a, (hom(x.eval(t0e)), hom(y.eval(t0e)))


def torsion_order(E: WeierstrassCurve, P, bound: int = 12) -> Optional[int]:
    """Least n <= bound with nP = O; None means infinite up to the bound.

    Candidate orders are filtered through rational specializations (sound,
    since specialization is a homomorphism on sections); only surviving
    candidates are confirmed by the symbolic group law.
    """
    FT = function_field_of(E)
    a = curve_constants(E, FT)
    if not ec_on_curve(FT, a, P):
        raise ValueError("point is not on the curve")
    disc = E.discriminant()
    candidates = set(range(1, bound + 1))
    tried = 0
    t0 = 2
    while tried < 3 and candidates and t0 < 40:
        t0 += 1
        try:
            t0e = E.F.of(t0)
            if E.F.is_zero(disc.eval(t0e)):
                continue
            sub, a0, P0 = specialize_section(E, P, t0)
        except ZeroDivisionError:
            continue
        tried += 1
        acc = O_POINT
        orders = set()
        for n in range(1, bound + 1):
            acc = ec_add(sub, a0, acc, P0)
            if acc is O_POINT:
                orders.add(n)
        candidates &= orders
    for n in sorted(candidates):
        if ec_mul(FT, a, P, n) is O_POINT:
            return n
    return None


# ---------------------------------------------------------------------------
# heights


def _rf(F, ff_elt) -> RatFun:
    num, den = ff_elt
    return RatFun(Poly(F, list(num)), Poly(F, list(den)))


def _vrf(x: RatFun, p: Poly) -> int:
    if x.is_zero():
        return 10 ** 9
    return x.valuation(p)


def _sing_x_multiplicative(a: List[RatFun]) -> RatFun:
    """Exact node x-coordinate estimate from the completed-square cubic."""
    F = a[0].F
    quarter = RatFun.const(F, F.of(Q(1, 4)))
    half = RatFun.const(F, F.of(Q(1, 2)))
    a1, a2, a3, a4, a6 = a
    c2 = a2 + quarter * a1 * a1
    c1 = a4 + half * a1 * a3
    c0 = a6 + quarter * a3 * a3
    den = 2 * (3 * c1 - c2 * c2)
    num = c2 * c1 - 9 * c0
    return num / den


def _sing_y(a: List[RatFun], xs: RatFun) -> RatFun:
    F = a[0].F
    return RatFun.const(F, F.of(Q(-1, 2))) * (a[0] * xs + a[2])


def _mod_reduce(x: RatFun, p: Poly, k: int) -> RatFun:
    """The p-integral x reduced modulo p^k (degrees stay bounded)."""
    from .poly import poly_xgcd

    m = p ** k
    g, u, _ = poly_xgcd(x.den, m)
    if g.degree != 0:
        raise ValueError("element is not integral at the place")
    inv = u * Poly.const(p.F, p.F.inv(g.const_value()))
    red = (x.num * inv) % m
    return RatFun(red, Poly.const(p.F, p.F.one))


def _node_center(a: List[RatFun], p: Poly, cap: int) -> RatFun:
    """Iterated centering of the node at a multiplicative place, mod p^(cap+1)."""
    F = p.F
    prec = cap + 1
    shift = RatFun.const(F, F.zero)
    cur = list(a)
    last_v = -1
    for _ in range(cap + 4):
        xs = _sing_x_multiplicative(cur)
        v = _vrf(xs, p)
        if v > cap:
            return shift
        xs = _mod_reduce(xs, p, prec)
        if xs.is_zero() or _vrf(xs, p) > cap:
            return shift
        if _vrf(xs, p) <= last_v:
            return shift + xs
        last_v = _vrf(xs, p)
        shift = shift + xs
        cur = translate_x_local(cur, xs)
    return shift


def _additive_center(a: List[RatFun], p: Poly) -> RatFun:
    F = p.F
    c = RatFun.const(F, F.of(Q(-1, 12)))
    b2 = a[0] * a[0] + 4 * a[1]
    xs = _mod_reduce(c * b2, p, 3)
    cur = translate_x_local(a, xs)
    b2b = cur[0] * cur[0] + 4 * cur[1]
    xs2 = _mod_reduce(c * b2b, p, 3)
    if not xs2.is_zero() and _vrf(xs2, p) >= 1:
        return xs + xs2
    return xs


def _is_mult(kind: str) -> bool:
    return kind[0] == "I" and kind[1:].isdigit()


def _component_contribution(kind: str, a: List[RatFun], x: RatFun, y: RatFun, p: Poly) -> Q:
    """Height correction at one root of p (the caller multiplies by degree)."""
    if kind in ("I0", "I1", "II", "II*"):
        return Q(0)
    if _vrf(x, p) < 0:
        return Q(0)  # pole: the section meets the identity component
    if _is_mult(kind):
        n = int(kind[1:])
        cap = n // 2
        shift = _node_center(a, p, cap)
        ys = _sing_y(a, shift)
        if _vrf(x - shift, p) < 1 or _vrf(y - ys, p) < 1:
            return Q(0)
        i = min(_vrf(x - shift, p), cap)
        return Q(i * (n - i), n)
    xs = _additive_center(a, p)
    ys = _sing_y(a, xs)
    if _vrf(x - xs, p) < 1 or _vrf(y - ys, p) < 1:
        return Q(0)
    if kind == "III":
        return Q(1, 2)
    if kind == "IV":
        return Q(2, 3)
    if kind == "IV*":
        return Q(4, 3)
    if kind == "III*":
        return Q(3, 2)
    if kind == "I0*":
        return Q(1)
    n = int(kind[1:-1])
    vx = _vrf(x - xs, p)
    return Q(1) if vx == 1 else Q(1) + Q(n, 4)


def _split_place(p: Poly, quantities: List[RatFun]) -> List[Poly]:
    """Refine p so each returned factor behaves uniformly for the section."""
    parts = [p]
    changed = True
    while changed:
        changed = False
        nxt: List[Poly] = []
        for part in parts:
            done = False
            for qn in quantities:
                if qn.is_zero():
                    continue
                g = gcd(qn.num, part)
                if 0 < g.degree < part.degree:
                    nxt.append(g)
                    nxt.append((part // g).monic())
                    changed = True
                    done = True
                    break
            if not done:
                nxt.append(part)
        parts = nxt
    return parts


def _local_correction(kind: str, a: List[RatFun], x: RatFun, y: RatFun, p: Poly,
                      overrides: dict, label: Optional[str] = None) -> Q:
    key = label if label is not None else repr(p)
    if key in overrides:
        return Q(overrides[key])
    if kind in ("I0", "I1", "II", "II*"):
        return Q(0)
    splitters = [RatFun(x.den, Poly.const(p.F, p.F.one))]
    if _is_mult(kind) and _vrf(x, p) >= 0:
        try:
            probe = _mod_reduce(_sing_x_multiplicative(a), p, 1)
            splitters.append(x - probe)
            splitters.append(y - _mod_reduce(_sing_y(a, probe), p, 1))
        except ZeroDivisionError:
            pass
    elif _vrf(x, p) >= 0:
        probe = _additive_center(a, p)
        splitters.append(x - probe)
        splitters.append(y - _mod_reduce(_sing_y(a, probe), p, 1))
    total = Q(0)
    for part in _split_place(p, splitters):
        total += _component_contribution(kind, a, x, y, part) * part.degree
    return total


def _reciprocal_ratfun(x: RatFun, weight: int) -> RatFun:
    """s^weight * x(1/s)."""
    n, d = x.num, x.den
    deg = max(n.degree, d.degree)
    rn = n.reversed_coeffs(deg)
    rd = d.reversed_coeffs(deg)
    s = Poly.gen(x.F)
    if weight >= 0:
        return RatFun(rn * s ** weight, rd)
    return RatFun(rn, rd * s ** (-weight))


def height(E: WeierstrassCurve, P, overrides: Optional[dict] = None) -> Q:
    """Canonical height of a section; overrides force local corrections."""
    if P is O_POINT:
        return Q(0)
    FT = function_field_of(E)
    a_ff = curve_constants(E, FT)
    if not ec_on_curve(FT, a_ff, P):
        raise ValueError("section is not on the curve")
    overrides = dict(overrides or {})
    config = fiber_configuration(E)
    chi = Q(config.euler_sum(), 12)
    x = _rf(E.F, P[0])
    y = _rf(E.F, P[1])

    contact = Q(0)  # (P.O)
    for f, m in squarefree_decomposition(x.den):
        if m % 2:
            raise ValueError("odd pole order of x; unexpected section geometry")
        contact += Q(m, 2) * f.degree
    Einf, tw = E.infinity_model()
    x_inf = _reciprocal_ratfun(x, 2 * tw)
    y_inf = _reciprocal_ratfun(y, 3 * tw)
    s = Poly.gen(E.F)
    v_inf = _vrf(x_inf, s)
    if v_inf < 0:
        contact += Q(-v_inf, 2)

    total = 2 * chi + 2 * contact
    one = Poly.const(E.F, E.F.one)
    a_loc = [RatFun(pc, one) for pc in E.coefficients()]
    for pl, kind in config.fibers:
        if pl.at_infinity:
            a_inf = [RatFun(pc, one) for pc in Einf.coefficients()]
            total -= _local_correction(kind, a_inf, x_inf, y_inf, s, overrides, label=INF)
        else:
            total -= _local_correction(kind, a_loc, x, y, pl.poly, overrides)
    return total


def height_pairing(E: WeierstrassCurve, P, Qp, overrides=None) -> Q:
    FT = function_field_of(E)
    a = curve_constants(E, FT)
    s = ec_add(FT, a, P, Qp)
    hP = height(E, P, overrides)
    hQ = height(E, Qp, overrides)
    hS = height(E, s, overrides) if s is not O_POINT else Q(0)
    return (hS - hP - hQ) / 2


# ---------------------------------------------------------------------------
# Shioda-Tate bookkeeping


def shioda_tate_disc(config: FiberConfiguration, height_gram: List[List[Q]], torsion: int) -> Q:
    """|disc NS| = (prod m_v) * det(height Gram) / torsion^2."""
    prod = 1
    for pl, kind in config.fibers:
        prod *= simple_component_count(kind) ** pl.degree
    det = _det_fraction(height_gram) if height_gram else Q(1)
    return Q(prod) * det / (torsion * torsion)


def picard_number(config: FiberConfiguration, rank: int) -> int:
    rho = 2 + rank
    for pl, kind in config.fibers:
        rho += (total_component_count(kind) - 1) * pl.degree
    return rho


def _det_fraction(m: List[List[Q]]) -> Q:
    n = len(m)
    a = [[Q(x) for x in row] for row in m]
    det = Q(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Q(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                a[r] = [u - f * v for u, v in zip(a[r], a[c])]
    return det
