"""Exact coefficient fields: Q, Q(sqrt d), rational functions, prime fields.

A field is a small object with the usual operations; element encodings are
field-specific (Fraction for Q, pairs for quadratic extensions, coefficient
tuple pairs for function fields, ints for prime fields).  Keeping elements
as plain data avoids a class per element and keeps hashing/equality cheap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Tuple

# ---------------------------------------------------------------------------


class Rationals:
    """The field Q with Fraction elements."""

    name = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    def of(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return 1 / a

    def div(self, a, b):
        return a / self._nonzero(b)

    def _nonzero(self, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return b

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def to_str(self, a) -> str:
        return str(a)

    def to_json(self, a):
        return str(a) if a.denominator != 1 else int(a)

    def __repr__(self):
        return "QQ"


QQ = Rationals()


class QuadField:
    """Quadratic extension base(sqrt(d)); elements are (a, b) pairs."""

    def __init__(self, d, base=QQ, symbol: str = "s"):
        self.base = base
        self.d = base.of(d)
        self.symbol = symbol
        self.name = f"{base.name}(sqrt({d}))"
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.zero)
        self.gen = (base.zero, base.one)

    def of(self, x) -> Tuple[Any, Any]:
        if isinstance(x, tuple) and len(x) == 2:
            return (self.base.of(x[0]), self.base.of(x[1]))
        return (self.base.of(x), self.base.zero)

    def add(self, a, b):
        return (self.base.add(a[0], b[0]), self.base.add(a[1], b[1]))

    def sub(self, a, b):
        return (self.base.sub(a[0], b[0]), self.base.sub(a[1], b[1]))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def mul(self, a, b):
        F = self.base
        return (
            F.add(F.mul(a[0], b[0]), F.mul(self.d, F.mul(a[1], b[1]))),
            F.add(F.mul(a[0], b[1]), F.mul(a[1], b[0])),
        )

    def inv(self, a):
        F = self.base
        nrm = F.sub(F.mul(a[0], a[0]), F.mul(self.d, F.mul(a[1], a[1])))
        if F.is_zero(nrm):
            raise ZeroDivisionError(f"division by zero in {self.name}")
        return (F.div(a[0], nrm), F.neg(F.div(a[1], nrm)))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return self.base.is_zero(a[0]) and self.base.is_zero(a[1])

    def eq(self, a, b) -> bool:
        return self.base.eq(a[0], b[0]) and self.base.eq(a[1], b[1])

    def conj(self, a):
        return (a[0], self.base.neg(a[1]))

    def to_str(self, a) -> str:
        sa, sb = self.base.to_str(a[0]), self.base.to_str(a[1])
        if self.base.is_zero(a[1]):
            return sa
        bpart = self.symbol if sb == "1" else (f"-{self.symbol}" if sb == "-1" else f"{sb}*{self.symbol}")
        if self.base.is_zero(a[0]):
            return bpart
        return f"{sa}+{bpart}" if not bpart.startswith("-") else f"{sa}{bpart}"

    def to_json(self, a):
        return [self.base.to_json(a[0]), self.base.to_json(a[1])]

    def __repr__(self):
        return self.name


# ---------------------------------------------------------------------------
# coefficient-tuple polynomial helpers (shared with poly.Poly)


def pt_trim(F, cs):
    cs = list(cs)
    while cs and F.is_zero(cs[-1]):
        cs.pop()
    return tuple(cs)


def pt_add(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.add(x, y))
    return pt_trim(F, out)


def pt_neg(F, a):
    return tuple(F.neg(x) for x in a)


def pt_sub(F, a, b):
    return pt_add(F, a, pt_neg(F, b))


def pt_mul(F, a, b):
    if not a or not b:
        return ()
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return pt_trim(F, out)


def pt_scale(F, a, c):
    return pt_trim(F, [F.mul(x, c) for x in a])


def pt_divmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [F.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = F.inv(b[-1])
    while len(a) >= len(b) and a:
        if F.is_zero(a[-1]):
            a.pop()
            continue
        c = F.mul(a[-1], inv_lead)
        off = len(a) - len(b)
        q[off] = c
        for i, y in enumerate(b):
            a[off + i] = F.sub(a[off + i], F.mul(c, y))
        a.pop()
    return pt_trim(F, q), pt_trim(F, a)


def pt_gcd(F, a, b):
    a, b = pt_trim(F, a), pt_trim(F, b)
    while b:
        _, a = pt_divmod(F, a, b)
        a, b = b, a
    if a:
        a = pt_scale(F, a, F.inv(a[-1]))
    return a


def pt_gcd_rational(a, b):
    """Monic gcd of Fraction coefficient tuples via an integer primitive PRS."""
    x, y = _int_clear_tuple(a), _int_clear_tuple(b)
    if not x:
        x, y = y, x
    while y:
        x, y = y, _int_prim(_int_prem(x, y))
    if not x:
        return ()
    lead = x[-1]
    return tuple(Fraction(c, lead) for c in x)


def _int_clear_tuple(cs):
    cs = [c for c in cs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return []
    den = 1
    for c in cs:
        d = c.denominator
        den = den * d // _int_gcd(den, d)
    return _int_prim([int(c * den) for c in cs])


def _int_gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _int_prim(xs):
    g = 0
    for x in xs:
        g = _int_gcd(g, x)
    if g in (0, 1):
        return list(xs)
    return [x // g for x in xs]


def _int_prem(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while a and len(a) - 1 >= db:
        if a[-1] == 0:
            a.pop()
            continue
        la = a[-1]
        a = [x * lb for x in a]
        off = len(a) - len(b)
        for i in range(len(b)):
            a[off + i] -= la * b[i]
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def pt_gcd_quadrat(F, a, b):
    """Monic gcd over Q(sqrt d)[x] via a PRS in the ring Z[sqrt d]."""
    d = F.d

    def clear(cs):
        cs = [c for c in cs]
        while cs and F.is_zero(cs[-1]):
            cs.pop()
        den = 1
        for (p, q) in cs:
            den = den * p.denominator // _int_gcd(den, p.denominator)
            den = den * q.denominator // _int_gcd(den, q.denominator)
        out = [(int(p * den), int(q * den)) for (p, q) in cs]
        return _q_prim(out)

    def _q_prim(cs):
        g = 0
        for (p, q) in cs:
            g = _int_gcd(g, _int_gcd(abs(p), abs(q)))
        if g in (0, 1):
            return cs
        return [(p // g, q // g) for (p, q) in cs]

    def qmul(u, v):
        return (u[0] * v[0] + int(d) * u[1] * v[1], u[0] * v[1] + u[1] * v[0])

    def prem(x, y):
        x = list(x)
        db, lead = len(y) - 1, y[-1]
        while x and len(x) - 1 >= db:
            if x[-1] == (0, 0):
                x.pop()
                continue
            la = x[-1]
            x = [qmul(c, lead) for c in x]
            off = len(x) - len(y)
            for i, c in enumerate(y):
                m = qmul(la, c)
                x[off + i] = (x[off + i][0] - m[0], x[off + i][1] - m[1])
            x.pop()
            while x and x[-1] == (0, 0):
                x.pop()
        return x

    if int(d) != d:
        return pt_gcd(F, a, b)  # non-integer d: fall back
    x, y = clear(a), clear(b)
    if not x:
        x, y = y, x
    while y:
        x, y = y, _q_prim(prem(x, y))
    if not x:
        return ()
    coeffs = [(Fraction(p), Fraction(q)) for (p, q) in x]
    inv = F.inv(coeffs[-1])
    return tuple(F.mul(c, inv) for c in coeffs)


def pt_eval(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


class FunctionField:
    """Rational functions in one symbol over a base field.

    Elements are (num, den) pairs of coefficient tuples with den monic and
    gcd(num, den) = 1.
    """

    def __init__(self, base=QQ, var: str = "k"):
        self.base = base
        self.var = var
        self.name = f"{base.name}({var})"
        self.zero = ((), (base.one,))
        self.one = ((base.one,), (base.one,))
        self.gen = ((base.zero, base.one), (base.one,))

    def _norm(self, num, den):
        F = self.base
        num, den = pt_trim(F, num), pt_trim(F, den)
        if not den:
            raise ZeroDivisionError(f"zero denominator in {self.name}")
        if not num:
            return ((), (F.one,))
        if len(num) > 1 or len(den) > 1:
            if F is QQ:
                g = pt_gcd_rational(num, den)
            elif isinstance(F, QuadField) and F.base is QQ:
                g = pt_gcd_quadrat(F, num, den)
            else:
                g = pt_gcd(F, num, den)
            if len(g) > 1:
                num, _ = pt_divmod(F, num, g)
                den, _ = pt_divmod(F, den, g)
        c = F.inv(den[-1])
        return (pt_scale(F, num, c), pt_scale(F, den, c))

    def of(self, x):
        if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], tuple):
            return self._norm(x[0], x[1])
        F = self.base
        return ((F.of(x),), (F.one,)) if not F.is_zero(F.of(x)) else self.zero

    def from_poly(self, coeffs) -> Tuple:
        F = self.base
        return self._norm(tuple(F.of(c) for c in coeffs), (F.one,))

    def add(self, a, b):
        F = self.base
        num = pt_add(F, pt_mul(F, a[0], b[1]), pt_mul(F, b[0], a[1]))
        return self._norm(num, pt_mul(F, a[1], b[1]))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return (pt_neg(self.base, a[0]), a[1])

    def mul(self, a, b):
        F = self.base
        return self._norm(pt_mul(F, a[0], b[0]), pt_mul(F, a[1], b[1]))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        return self._norm(a[1], a[0])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not a[0]

    def eq(self, a, b) -> bool:
        return a == b

    def to_str(self, a) -> str:
        F = self.base
        num = _poly_str(F, a[0], self.var)
        if a[1] == (F.one,):
            return num
        return f"({num})/({_poly_str(F, a[1], self.var)})"

    def to_json(self, a):
        F = self.base
        if a[1] == (F.one,):
            return {"num": [F.to_json(c) for c in a[0]]}
        return {
            "num": [F.to_json(c) for c in a[0]],
            "den": [F.to_json(c) for c in a[1]],
        }

    def __repr__(self):
        return self.name


class PrimeField:
    """GF(p) with int elements in [0, p)."""

    def __init__(self, p: int):
        self.p = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def of(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def eq(self, a, b) -> bool:
        return (a - b) % self.p == 0

    def sqrt(self, a) -> int:
        a %= self.p
        for r in range(self.p):
            if (r * r) % self.p == a:
                return r
        raise ValueError(f"{a} is not a square mod {self.p}")

    def to_str(self, a) -> str:
        return str(a % self.p)

    def to_json(self, a):
        return a % self.p

    def __repr__(self):
        return self.name


def _poly_str(F, coeffs, var: str) -> str:
    if not coeffs:
        return "0"
    parts = []
    for i, c in enumerate(coeffs):
        if F.is_zero(c):
            continue
        cs = F.to_str(c)
        if i == 0:
            parts.append(cs)
        else:
            head = "" if cs == "1" else ("-" if cs == "-1" else f"{cs}*")
            mono = var if i == 1 else f"{var}^{i}"
            parts.append(f"{head}{mono}")
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


def quad_to_base(field: QuadField, a):
    """Extract the base-field value of a quadratic element with no radical part."""
    if not field.base.is_zero(a[1]):
        raise ValueError(f"{field.to_str(a)} has a nonzero radical part")
    return a[0]
