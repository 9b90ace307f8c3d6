import random
from fractions import Fraction as Q

from k3forge.fields import QQ, FunctionField, PrimeField, QuadField
from k3forge.isogeny import (
    dual_three_isogeny_is_multiplication,
    dual_two_isogeny_is_multiplication,
    j_matches_through,
    three_isogeny,
    three_isogeny_residual_is_zero,
    two_isogeny,
    two_isogeny_residual_is_zero,
    verify_transformation,
)
from k3forge.poly import Poly, parse_poly
from k3forge.weierstrass import WeierstrassCurve, ec_on_curve


def test_three_isogeny_normalized_forms():
    Fk = FunctionField(QQ, "k")
    A = parse_poly("-(t^2-k*t+3)", Fk)
    B = parse_poly("-(t^2-k*t+1)", Fk)
    nrm = three_isogeny(A, B).normalized
    want = WeierstrassCurve.from_strings(
        Fk, ["3*(t^2-k*t+3)", "0", "t^2*(t^2-k*t+9)*(t-k)^2", "0", "0"])
    assert [p.cs for p in nrm.coefficients()] == [p.cs for p in want.coefficients()]


def test_three_isogeny_residual_generic():
    Fk = FunctionField(QQ, "k")
    assert three_isogeny_residual_is_zero(parse_poly("k*t", Fk),
                                          parse_poly("t^2*(t^2+k*t+1)", Fk))


def test_degenerate_square_two_isogeny():
    # b = a^2/4 still gives a valid isogeny
    a = parse_poly("t", QQ)
    b = parse_poly("t^2/4", QQ)
    assert two_isogeny_residual_is_zero(a, b)


def test_isomorphism_e9():
    F2 = QuadField(-2)
    src = WeierstrassCurve.from_strings(F2, ["0", "28t^2", "0", "t^3*(t^2+98t+1)", "0"])
    dst = WeierstrassCurve.from_strings(F2, ["0", "-56t^2", "0", "-4t^3*(t^2-98t+1)", "0"])
    subst = {"t": "-T", "x": "-X/2", "y": "Y/(2s)"}
    assert verify_transformation(src, dst, subst)
    assert j_matches_through(src, dst, subst["t"])


def test_identity_map():
    E = WeierstrassCurve.from_strings(QQ, ["0", "t", "0", "t^2-1", "0"])
    assert verify_transformation(E, E, {"t": "T", "x": "X", "y": "Y"})


def test_wrong_map_fails():
    E = WeierstrassCurve.from_strings(QQ, ["0", "t", "0", "t^2-1", "0"])
    assert not verify_transformation(E, E, {"t": "T", "x": "X+1", "y": "Y"})


def test_random_isogeny_property_suite():
    rng = random.Random(13)
    primes = [p for p in (2011, 2017, 2029, 2053, 2063) ]
    for _ in range(12):
        A = Poly(QQ, [rng.randint(-4, 4) for _ in range(3)])
        B = Poly(QQ, [rng.randint(-4, 4) for _ in range(3)])
        if B.is_zero():
            continue
        assert three_isogeny_residual_is_zero(A, B)
        a = Poly(QQ, [rng.randint(-4, 4) for _ in range(3)])
        b = Poly(QQ, [rng.randint(-4, 4) for _ in range(3)])
        if b.is_zero():
            continue
        assert two_isogeny_residual_is_zero(a, b)


def _point_on_3tors_curve(Fp, A0, B0, rng):
    a_src = [Fp.of(A0), 0, Fp.of(B0), 0, 0]
    for _ in range(200):
        x = rng.randrange(1, Fp.p)
        bq = Fp.add(Fp.mul(Fp.of(A0), x), Fp.of(B0))
        disc = Fp.add(Fp.mul(bq, bq), Fp.mul(4, pow(x, 3, Fp.p)))
        try:
            r = Fp.sqrt(disc)
        except ValueError:
            continue
        y = Fp.div(Fp.sub(r, bq), 2)
        if ec_on_curve(Fp, a_src, (x, y)):
            return (x, y)
    raise AssertionError("no point found")


def test_dual_isogenies_multiply():
    rng = random.Random(4)
    Fp = PrimeField(2011)  # 2011 = 1 mod 3, so sqrt(-3) exists
    for _ in range(5):
        A0, B0 = rng.randrange(1, 60), rng.randrange(1, 60)
        P = _point_on_3tors_curve(Fp, A0, B0, rng)
        assert dual_three_isogeny_is_multiplication(Fp, A0, B0, P)
    for _ in range(5):
        a0, b0 = rng.randrange(1, 60), rng.randrange(1, 60)
        a_src = [0, Fp.of(a0), 0, Fp.of(b0), 0]
        for _ in range(200):
            x = rng.randrange(1, 2011)
            rhs = Fp.mul(x, Fp.add(Fp.mul(x, x), Fp.add(Fp.mul(Fp.of(a0), x), Fp.of(b0))))
            try:
                y = Fp.sqrt(rhs)
            except ValueError:
                continue
            if ec_on_curve(Fp, a_src, (x, y)):
                assert dual_two_isogeny_is_multiplication(Fp, a0, b0, (x, y))
                break


def test_fiber_exchange_under_three_isogeny():
    # I3 <-> I1 and I6 <-> I2 multiplicities swap between source and image
    from k3forge.corpus import load_curve
    from k3forge.weierstrass import fiber_configuration

    src, _ = load_curve("e20_k")
    img, _ = load_curve("h20_k")
    def by_kind(E):
        out = {}
        for pl, kind in fiber_configuration(E).fibers:
            out[kind] = out.get(kind, 0) + pl.degree
        return out
    s, i = by_kind(src), by_kind(img)
    assert s.get("I3", 0) == i.get("I1", 0) and s.get("I1", 0) == i.get("I3", 0)
    assert s.get("I2", 0) == i.get("I6", 0) and s.get("I6", 0) == i.get("I2", 0)
    assert s.get("I12", 0) == 1 and i.get("I4", 0) == 1


def test_j_invariance_of_isomorphisms():
    F2 = QuadField(-2)
    cases = [
        (["0", "t*(t^2+10t-2)", "0", "(2t+1)^3*t^2", "0"],
         ["0", "-2t*(t^2+10t-2)", "0", "t^3*(t-4)^3", "0"], "-2/T"),
        (["0", "-28t^2*(t-1)", "0", "4t^3*(t-1)^2*(24t+1)", "0"],
         ["0", "56t^2*(t-1)", "0", "16t^3*(t-1)^2*(25t-1)", "0"], "T/(T-1)"),
    ]
    for asrc, adst, texpr in cases:
        src = WeierstrassCurve.from_strings(F2, asrc)
        dst = WeierstrassCurve.from_strings(F2, adst)
        assert j_matches_through(src, dst, texpr)
