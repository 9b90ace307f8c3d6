"""Dense univariate polynomials and rational functions over an exact field."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Any, List, Sequence, Tuple

from .fields import (QQ, FunctionField, PrimeField, QuadField, pt_divmod, pt_gcd,
                     pt_mul, pt_scale, pt_sub, pt_trim)


class Poly:
    """Polynomial in one variable, dense ascending coefficients."""

    __slots__ = ("F", "cs")

    def __init__(self, field, coeffs: Sequence = ()):
        self.F = field
        self.cs = pt_trim(field, [field.of(c) if not _is_elt(field, c) else c for c in coeffs])

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def const(field, c) -> "Poly":
        return Poly(field, (field.of(c),))

    @staticmethod
    def gen(field) -> "Poly":
        return Poly(field, (field.zero, field.one))

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.cs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.cs

    def is_const(self) -> bool:
        return len(self.cs) <= 1

    def const_value(self):
        if not self.cs:
            return self.F.zero
        if len(self.cs) > 1:
            raise ValueError("not a constant polynomial")
        return self.cs[0]

    def lead(self):
        if not self.cs:
            return self.F.zero
        return self.cs[-1]

    def coeff(self, i: int):
        return self.cs[i] if 0 <= i < len(self.cs) else self.F.zero

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(self.F, self.F.of(other))

    def __add__(self, other):
        if isinstance(other, RatFun):
            return RatFun(self, Poly.const(self.F, self.F.one)) + other
        o = self._coerce(other)
        F = self.F
        n = max(len(self.cs), len(o.cs))
        out = [
            F.add(
                self.cs[i] if i < len(self.cs) else F.zero,
                o.cs[i] if i < len(o.cs) else F.zero,
            )
            for i in range(n)
        ]
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.F, [self.F.neg(c) for c in self.cs])

    def __sub__(self, other):
        if isinstance(other, RatFun):
            return RatFun(self, Poly.const(self.F, self.F.one)) - other
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFun):
            return RatFun(self, Poly.const(self.F, self.F.one)) * other
        o = self._coerce(other)
        F = self.F
        if not self.cs or not o.cs:
            return Poly(F, ())
        out = [F.zero] * (len(self.cs) + len(o.cs) - 1)
        for i, x in enumerate(self.cs):
            if F.is_zero(x):
                continue
            for j, y in enumerate(o.cs):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RatFun):
            return RatFun(self, Poly.const(self.F, self.F.one)) / other
        o = self._coerce(other)
        q, r = divmod(self, o)
        if r.is_zero():
            return q
        return RatFun(self, o)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __divmod__(self, other):
        o = self._coerce(other)
        q, r = pt_divmod(self.F, self.cs, o.cs)
        return Poly(self.F, q), Poly(self.F, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial; use RatFun")
        out = Poly.const(self.F, self.F.one)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.F is other.F and self.cs == other.cs
        if isinstance(other, RatFun):
            return other == self
        try:
            return self == self._coerce(other)
        except Exception:
            return NotImplemented

    def __hash__(self):
        return hash((id(self.F), self.cs))

    # -- calculus & transforms ----------------------------------------------

    def derivative(self) -> "Poly":
        F = self.F
        return Poly(F, [F.mul(F.of(i), c) for i, c in enumerate(self.cs)][1:])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.F.inv(self.cs[-1])
        return Poly(self.F, [self.F.mul(c, inv) for c in self.cs])

    def eval(self, x):
        F = self.F
        acc = F.zero
        for c in reversed(self.cs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def eval_poly(self, x: "Poly") -> "Poly":
        acc = Poly(self.F, ())
        for c in reversed(self.cs):
            acc = acc * x + Poly.const(self.F, c)
        return acc

    def eval_ratfun(self, x: "RatFun") -> "RatFun":
        one = RatFun.const(self.F, self.F.one)
        acc = RatFun.const(self.F, self.F.zero)
        for c in reversed(self.cs):
            acc = acc * x + RatFun.const(self.F, c) * one
        return acc

    def shift(self, c) -> "Poly":
        """Substitute t -> t + c."""
        t = Poly(self.F, (self.F.of(c), self.F.one))
        return self.eval_poly(t)

    def reversed_coeffs(self, upto: int) -> "Poly":
        """t^upto * self(1/t); requires upto >= degree."""
        if self.is_zero():
            return self
        if upto < self.degree:
            raise ValueError("reversal order below degree")
        cs = [self.F.zero] * (upto + 1)
        for i, c in enumerate(self.cs):
            cs[upto - i] = c
        return Poly(self.F, cs)

    def map_coeffs(self, func, new_field) -> "Poly":
        return Poly(new_field, [func(c) for c in self.cs])

    def __repr__(self):
        from .fields import _poly_str

        return _poly_str(self.F, self.cs, "t")


def _is_elt(F, c) -> bool:
    # crude but sufficient: fields here use Fraction/tuple/int encodings
    if F is QQ:
        return isinstance(c, Fraction)
    if isinstance(F, PrimeField):
        return isinstance(c, int)
    return isinstance(c, tuple)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd.  Rational and rational-function coefficients go through
    fraction-free pseudo-remainder sequences to avoid blowup."""
    if a.F is QQ and b.F is QQ:
        return _gcd_rational(a, b)
    if isinstance(a.F, FunctionField):
        return _gcd_funfield(a, b)
    if isinstance(a.F, QuadField) and a.F.base is QQ:
        from .fields import pt_gcd_quadrat

        return Poly(a.F, pt_gcd_quadrat(a.F, a.cs, b.cs))
    return Poly(a.F, pt_gcd(a.F, a.cs, b.cs))


def _gcd_funfield(a: Poly, b: Poly) -> Poly:
    """Monic gcd for coefficients in a rational function field.

    Works on denominator-cleared coefficient lists (polynomials in the
    inner variable) with a primitive-part PRS in the outer variable.
    """
    FF = a.F
    B = FF.base

    def base_gcd(x, y):
        if not x:
            return pt_scale(B, y, B.inv(y[-1])) if y else ()
        if not y:
            return pt_scale(B, x, B.inv(x[-1]))
        if B is QQ:
            return _gcd_rational(Poly(QQ, x), Poly(QQ, y)).cs
        return pt_gcd(B, x, y)

    def lift(p: Poly):
        den = (B.one,)
        for (n, d) in p.cs:
            g = base_gcd(den, d)
            extra, _ = pt_divmod(B, d, g)
            den = pt_mul(B, den, extra)
        out = []
        for (n, d) in p.cs:
            q, r = pt_divmod(B, den, d)
            if r:
                raise ArithmeticError("denominator clearing failed")
            out.append(pt_mul(B, n, q))
        return out

    def content(cs):
        g = ()
        for c in cs:
            g = base_gcd(g, c)
            if len(g) == 1:
                return g
        return g if g else (B.one,)

    def primitive(cs):
        cs = [c for c in cs]
        while cs and not cs[-1]:
            cs.pop()
        if not cs:
            return cs
        g = content(cs)
        if len(g) > 1:
            out = []
            for c in cs:
                q, r = pt_divmod(B, c, g)
                if r:
                    raise ArithmeticError("content division failed")
                out.append(q)
            return out
        return cs

    def pseudo_rem(A, Bc):
        A = [c for c in A]
        db, lead = len(Bc) - 1, Bc[-1]
        while A and len(A) - 1 >= db:
            if not A[-1]:
                A.pop()
                continue
            la = A[-1]
            A = [pt_mul(B, c, lead) for c in A]
            off = len(A) - len(Bc)
            for i, c in enumerate(Bc):
                A[off + i] = pt_sub(B, A[off + i], pt_mul(B, la, c))
            A.pop()
            while A and not A[-1]:
                A.pop()
        return A

    x = primitive(lift(a))
    y = primitive(lift(b))
    if not x:
        x, y = y, x
    while y:
        x, y = y, primitive(pseudo_rem(x, y))
    if not x:
        return Poly(FF, ())
    coeffs = [FF._norm(c, (B.one,)) for c in x]
    g = Poly(FF, coeffs)
    return g.monic()


def _gcd_rational(a: Poly, b: Poly) -> Poly:
    x, y = _int_clear(a), _int_clear(b)
    while y:
        x, y = y, _prem(x, y)
        y = _prim(y)
    if not x:
        return Poly(QQ, ())
    return Poly(QQ, [Fraction(c, x[-1]) for c in x])


def _int_clear(p: Poly) -> List[int]:
    if p.is_zero():
        return []
    den = 1
    for c in p.cs:
        den = den * c.denominator // _igcd(den, c.denominator)
    ints = [int(c * den) for c in p.cs]
    return _prim(ints)


def _igcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _prim(xs: List[int]) -> List[int]:
    g = 0
    for x in xs:
        g = _igcd(g, x)
    if g in (0, 1):
        return list(xs)
    return [x // g for x in xs]


def _prem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder of integer coefficient lists."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        if a[-1] == 0:
            a.pop()
            continue
        la = a[-1]
        off = len(a) - len(b)
        a = [x * lb for x in a]
        for i in range(len(b)):
            a[off + i] -= la * b[i]
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def poly_xgcd(a: Poly, b: Poly) -> Tuple[Poly, Poly, Poly]:
    """Monic g with g = u*a + v*b."""
    F = a.F
    one = Poly.const(F, F.one)
    zero = Poly(F, ())
    r0, r1 = a, b
    u0, u1 = one, zero
    v0, v1 = zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.is_zero():
        return r0, u0, v0
    c = Poly.const(F, F.inv(r0.lead()))
    return r0 * c, u0 * c, v0 * c


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero() or p.degree == 0:
        return Poly.const(p.F, p.F.one)
    g = gcd(p, p.derivative())
    return (p // g).monic()


def squarefree_decomposition(p: Poly) -> List[Tuple[Poly, int]]:
    """Yun's algorithm: p = c * prod f_i^i with the f_i squarefree, coprime."""
    out: List[Tuple[Poly, int]] = []
    if p.is_zero() or p.degree == 0:
        return out
    d = p.derivative()
    a = gcd(p, d)
    b = p // a
    c = (d // a) - b.derivative()
    i = 1
    while b.degree > 0:
        f = gcd(b, c)  # monic
        if f.degree > 0:
            out.append((f, i))
        b = b // f
        c = (c // f) - b.derivative()
        i += 1
    return out


def valuation(p: Poly, place: Poly) -> int:
    """Largest e with place^e dividing p; the zero polynomial raises."""
    if p.is_zero():
        raise ValueError("valuation of the zero polynomial")
    v = 0
    while True:
        q, r = divmod(p, place)
        if not r.is_zero():
            return v
        p = q
        v += 1


def poly_sqrt(p: Poly) -> Poly:
    """Exact polynomial square root; raises if p is not a perfect square."""
    if p.is_zero():
        return p
    if p.degree % 2:
        raise ValueError("odd degree, not a square")
    root = Poly.const(p.F, p.F.one)
    for f, m in squarefree_decomposition(p):
        if m % 2:
            raise ValueError("not a perfect square")
        root = root * f ** (m // 2)
    lead_quot = p // (root * root)
    if lead_quot.degree != 0 or not (p % (root * root)).is_zero():
        raise ValueError("not a perfect square")
    c = field_sqrt(p.F, lead_quot.const_value())
    return root * Poly.const(p.F, c)


def field_sqrt(F, a):
    """A square root of a field element, raising if none exists."""
    if F is QQ:
        if a < 0:
            raise ValueError("negative rational has no rational square root")
        rn, rd = isqrt(a.numerator), isqrt(a.denominator)
        if rn * rn != a.numerator or rd * rd != a.denominator:
            raise ValueError(f"{a} is not a rational square")
        return Fraction(rn, rd)
    if isinstance(F, PrimeField):
        return F.sqrt(a)
    if isinstance(F, QuadField):
        # (u + v s)^2 = x + y s  with s^2 = d
        x, y = a
        B = F.base
        if B.is_zero(y):
            try:
                return (field_sqrt(B, x), B.zero)
            except ValueError:
                # maybe a = d * square
                return (B.zero, field_sqrt(B, B.div(x, F.d)))
        disc = B.sub(B.mul(x, x), B.mul(F.d, B.mul(y, y)))
        r = field_sqrt(B, disc)
        for sgn in (r, B.neg(r)):
            u2 = B.div(B.add(x, sgn), B.of(2))
            try:
                u = field_sqrt(B, u2)
            except ValueError:
                continue
            if B.is_zero(u):
                continue
            v = B.div(y, B.mul(B.of(2), u))
            return (u, v)
        raise ValueError("no square root in quadratic field")
    if isinstance(F, FunctionField):
        num = poly_sqrt(Poly(F.base, a[0]))
        den = poly_sqrt(Poly(F.base, a[1]))
        return F._norm(num.cs, den.cs)
    raise TypeError(f"no sqrt for {F!r}")


class RatFun:
    """Rational function num/den with monic reduced denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lead_inv = den.F.inv(den.lead())
        self.num = num * Poly.const(num.F, lead_inv)
        self.den = den * Poly.const(den.F, lead_inv)

    @staticmethod
    def const(field, c) -> "RatFun":
        return RatFun(Poly.const(field, c), Poly.const(field, field.one))

    @staticmethod
    def from_poly(p: Poly) -> "RatFun":
        return RatFun(p, Poly.const(p.F, p.F.one))

    @property
    def F(self):
        return self.num.F

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError(f"{self!r} is not polynomial")
        return self.num

    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, Poly):
            return RatFun.from_poly(other)
        return RatFun.const(self.F, self.F.of(other))

    def __add__(self, other):
        o = self._coerce(other)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFun(self.den, self.num) ** (-n)
        out = RatFun.const(self.F, self.F.one)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def eval(self, x):
        return self.F.div(self.num.eval(x), self.den.eval(x))

    def eval_ratfun(self, x: "RatFun") -> "RatFun":
        n = self.num.eval_ratfun(x)
        d = self.den.eval_ratfun(x)
        return n / d

    def valuation(self, place: Poly) -> int:
        if self.num.is_zero():
            raise ValueError("valuation of zero")
        vd = valuation(self.den, place) if self.den.degree > 0 else 0
        return valuation(self.num, place) - vd

    def map_coeffs(self, func, new_field) -> "RatFun":
        return RatFun(self.num.map_coeffs(func, new_field), self.den.map_coeffs(func, new_field))

    def __repr__(self):
        if self.is_poly():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


# ---------------------------------------------------------------------------
# expression parsing


def tokenize(s: str) -> List[str]:
    out: List[str] = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            out.append(s[i:j])
            i = j
        elif ch.isalpha():
            j = i + 1
            while j < len(s) and s[j].isdigit():
                j += 1
            out.append(s[i:j])
            i = j
        elif ch in "+-*/^()[],":
            out.append(ch)
            i += 1
        else:
            raise ValueError(f"bad character {ch!r} in {s!r}")
    # implicit multiplication: NUM NAME, NUM '(', ')' NAME, ')' '(', NAME '('
    merged: List[str] = []
    for tok in out:
        if merged:
            prev = merged[-1]
            if (prev[0].isdigit() or prev == ")" or prev[0].isalpha()) and (
                tok[0].isalpha() or tok == "(" or (tok == "[" and prev == ")")
            ):
                merged.append("*")
            elif prev[0].isdigit() and tok[0].isdigit():
                raise ValueError(f"adjacent numbers in {s!r}")
        merged.append(tok)
    return merged


def parse_expr(s: str, env: dict, field, make_const=None) -> Any:
    """Evaluate an arithmetic expression with +,-,*,/,^ over env values.

    Bare integers go through make_const (default: RatFun constants over
    `field`), so the same parser serves polynomials and lattice vectors.
    """
    if make_const is None:
        make_const = lambda n: RatFun.const(field, field.of(n))
    toks = tokenize(s)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = toks[pos]
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r}, got {tok!r} in {s!r}")
        pos += 1
        return tok

    def atom():
        tok = peek()
        if tok is None:
            raise ValueError(f"unexpected end of {s!r}")
        if tok == "(":
            take()
            v = expr()
            take(")")
            return v
        if tok == "-":
            take()
            return -atom_pow()
        if tok == "+":
            take()
            return atom_pow()
        if tok == "[":
            # glue label like [3]
            take()
            lab = take()
            take("]")
            key = f"[{lab}]"
            if key not in env:
                raise ValueError(f"unknown glue label {key} in {s!r}")
            return env[key]
        take()
        if tok[0].isdigit():
            return make_const(int(tok))
        if tok in env:
            return env[tok]
        raise ValueError(f"unknown symbol {tok!r} in {s!r}")

    def atom_pow():
        v = atom()
        while peek() == "^":
            take()
            e = take()
            neg = False
            if e == "-":
                neg = True
                e = take()
            n = int(e)
            v = v ** (-n if neg else n)
        return v

    def term():
        v = atom_pow()
        while peek() in ("*", "/"):
            op = take()
            w = atom_pow()
            v = v * w if op == "*" else v / w
        return v

    def expr():
        v = term()
        while peek() in ("+", "-"):
            op = take()
            w = term()
            v = v + w if op == "+" else v - w
        return v

    v = expr()
    if pos != len(toks):
        raise ValueError(f"trailing tokens in {s!r}")
    return v


def parse_ratfun(s: str, field, var: str = "t", extra_env: dict | None = None) -> RatFun:
    env = {var: RatFun.from_poly(Poly.gen(field))}
    if isinstance(field, QuadField):
        env[field.symbol] = RatFun.const(field, field.gen)
    if isinstance(field, FunctionField):
        env[field.var] = RatFun.const(field, field.gen)
        if isinstance(field.base, QuadField):
            env[field.base.symbol] = RatFun.const(
                field, ((field.base.gen,), (field.base.one,))
            )
    if extra_env:
        env.update(extra_env)
    v = parse_expr(s, env, field)
    if isinstance(v, Poly):
        return RatFun.from_poly(v)
    if not isinstance(v, RatFun):
        return RatFun.const(field, field.of(v))
    return v


def parse_poly(s: str, field, var: str = "t") -> Poly:
    return parse_ratfun(s, field, var).as_poly()
