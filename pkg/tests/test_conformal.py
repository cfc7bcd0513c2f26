import numpy as np
import pytest

from cliffhopf.blocks import Mat2
from cliffhopf.conformal import (
    BadParameter,
    ConditionsViolated,
    Paravector,
    PointAtInfinity,
    StepTooLarge,
    VahlenMatrix,
    WrongSignature,
    bar,
    chart_iso,
    conformality,
    embed_point,
    inverse,
    klein_residual,
    make_map,
    map_from_json,
    mobius,
    paravector_41,
    quadric_point,
    twisted_adjoint,
    vahlen_check,
)
from cliffhopf.mvcore import CL13, CL24, CL30, CL41, Multivector, gmul, random_multivector, wedge
from cliffhopf.qdeform import periodicity_split


def points(rng, n=20):
    return [rng.uniform(-2, 2, 4) for _ in range(n)]


def rotor(angle):
    e1, e2 = Multivector.basis(CL30, 0), Multivector.basis(CL30, 1)
    return Multivector.scalar(CL30, np.cos(angle / 2)) + wedge(e1, e2) * np.sin(angle / 2)


def all_maps(rng):
    return [
        make_map("translation", rng.uniform(-1, 1, 4)),
        make_map("dilation", 2.5),
        make_map("inversion"),
        make_map("transvection", rng.uniform(-0.3, 0.3, 4)),
        make_map("rotation", rotor(0.7)),
    ]


def test_paravector_basics():
    p = Paravector.from_coords([2, 1, 0, 0])
    assert np.allclose(p.coords(), [2, 1, 0, 0])
    assert p.norm2() == 3
    with pytest.raises(BadParameter):
        Paravector(wedge(Multivector.basis(CL30, 0), Multivector.basis(CL30, 1)))
    with pytest.raises(WrongSignature):
        Paravector(Multivector.scalar(CL13, 1))


def test_inverse():
    x = Paravector.from_coords([2, 1, 0, 0]).m
    assert gmul(x, inverse(x)).approx_eq(Multivector.scalar(CL30, 1), 1e-14)
    with pytest.raises(PointAtInfinity):
        inverse(Paravector.from_coords([1, 1, 0, 0]).m)


def test_translation_and_dilation_exact(rng):
    for x in points(rng):
        h = rng.uniform(-1, 1, 4)
        assert np.array_equal(mobius(make_map("translation", h), x).x_prime.coords(), x + h)
        r = mobius(make_map("dilation", 4.0), x)
        assert np.allclose(r.x_prime.coords(), 4 * x, rtol=0, atol=1e-14)
        assert abs(r.delta - 0.25) < 1e-15


def test_inversion_rule(rng):
    for x in points(rng):
        xm = Paravector.from_coords(x)
        expect = -bar(xm.m) / xm.norm2()
        assert mobius(make_map("inversion"), x).x_prime.m.approx_eq(expect, 1e-12)


def test_inversion_at_origin():
    with pytest.raises(PointAtInfinity):
        mobius(make_map("inversion"), [0, 0, 0, 0])


def test_group_law_and_sign(rng):
    maps = all_maps(rng)
    for x in points(rng, 5):
        for g1 in maps:
            for g2 in maps:
                try:
                    direct = mobius(g1 @ g2, x).x_prime.coords()
                    stepwise = mobius(g1, mobius(g2, x).x_prime).x_prime.coords()
                except PointAtInfinity:
                    continue
                assert np.max(np.abs(direct - stepwise)) <= 1e-9
            assert np.allclose(mobius(-g1, x).x_prime.coords(), mobius(g1, x).x_prime.coords(), atol=1e-12)


def test_every_map_passes_vahlen(rng):
    for g in all_maps(rng):
        assert vahlen_check(g, points(rng, 3)).all()


def test_products_keep_unit_norm(rng):
    # (v) and (vi) say g gbar = 1, which is closed under products
    for a in all_maps(rng):
        for b in all_maps(rng):
            conds = vahlen_check(a @ b)
            assert conds.v and conds.vi


def test_vahlen_detects_violation():
    one = Multivector.scalar(CL30, 1)
    bad = VahlenMatrix(one * 2, Multivector.zero(CL30), Multivector.zero(CL30), one)
    conds = vahlen_check(bad)
    assert not conds.all() and not conds.vi
    with pytest.raises(ConditionsViolated):
        twisted_adjoint(bad, embed_point([1, 0, 0, 0]))


def test_rotation_preserves_norm(rng):
    g = make_map("rotation", rotor(1.1))
    for x in points(rng, 5):
        xp = mobius(g, x).x_prime
        assert abs(xp.norm2() - Paravector.from_coords(x).norm2()) < 1e-12
        assert abs(xp.coords()[0] - x[0]) < 1e-12


def test_klein_residual_of_embedded_points(rng):
    for x in points(rng):
        assert klein_residual(quadric_point(x)) <= 1e-12
    with pytest.raises(WrongSignature):
        klein_residual(Multivector.basis(CL41, 0))


def test_quadric_point_splits_to_embedding(rng):
    for x in points(rng, 5):
        b = paravector_41(quadric_point(x))
        assert periodicity_split(b, (4, 0), reduced=CL30).approx_eq(embed_point(x), 1e-12)


def test_twisted_adjoint_matches_mobius(rng):
    # the sandwich moves the embedded point to Delta times the embedding of x'
    for g in all_maps(rng):
        for x in points(rng, 3):
            r = mobius(g, x)
            moved = twisted_adjoint(g, embed_point(x))
            assert moved.approx_eq(embed_point(r.x_prime).scale(r.delta), 1e-9)


def test_conformality_factors(rng):
    x = rng.uniform(-1, 1, 4)
    lam, res = conformality(make_map("translation", [1, 2, 0, 0]), x)
    assert abs(lam - 1) <= 1e-4 and res <= 1e-4
    lam, _ = conformality(make_map("dilation", 4.0), x)
    assert abs(lam - 16) <= 1e-4
    lam, _ = conformality(make_map("inversion"), [2.0, 0.3, 0.1, 0.2])
    assert np.isfinite(lam)


def test_conformality_step_errors():
    with pytest.raises(ValueError):
        conformality(make_map("inversion"), [1.0, 0.2, 0, 0], h=0)
    with pytest.raises(StepTooLarge):
        conformality(make_map("inversion"), [0.05, 0.02, 0, 0], h=0.04, limit=1e-6)


def test_make_map_errors():
    with pytest.raises(BadParameter):
        make_map("dilation", -1)
    with pytest.raises(BadParameter):
        make_map("shear")
    with pytest.raises(BadParameter):
        make_map("translation", [1, 2])


def test_map_from_json():
    g = map_from_json({"kind": "rotation", "g": {"1": 0.6, "e1^e2": 0.8}})
    assert vahlen_check(g).all()
    t = map_from_json({"kind": "translation", "h": [1, 0, 0, 0]})
    assert np.allclose(mobius(t, [0, 0, 0, 0]).x_prime.coords(), [1, 0, 0, 0])
    with pytest.raises(BadParameter):
        map_from_json({"kind": "nope"})


def test_chart_isomorphisms_are_homomorphisms(rng):
    for kind in ("xi", "poi"):
        for _ in range(10):
            a, b = random_multivector(CL41, rng), random_multivector(CL41, rng)
            assert (chart_iso(kind, gmul(a, b)) - gmul(chart_iso(kind, a), chart_iso(kind, b))).norm() <= 1e-12
    top = Multivector(CL41, {31: 1})
    assert chart_iso("poi", top) == Multivector.scalar(CL13, 1j)
    assert chart_iso("xi", Multivector.basis(CL41, 0)).sig == CL24
    with pytest.raises(WrongSignature):
        chart_iso("xi", Multivector.basis(CL13, 0))


def test_embed_point_shape():
    m = embed_point([1, 2, 0, 0])
    assert isinstance(m, Mat2)
    assert m[1, 0] == Multivector.scalar(CL30, 1)
    assert m[0, 1] == Multivector.scalar(CL30, -3)
