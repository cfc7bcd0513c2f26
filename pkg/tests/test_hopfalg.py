import pytest

from cliffhopf.hopfalg import (
    ModeMismatch,
    TensorElement,
    antipode,
    coproduct,
    counit,
    hopf_check,
    multiply_legs,
    tmul,
)
from cliffhopf.mvcore import CL13, CL24, Multivector, wedge


def e(i):
    return Multivector.basis(CL13, i)


@pytest.mark.parametrize("sig", [CL13, CL24])
def test_grassmann_axioms_exact(sig):
    res = hopf_check(sig, "grassmann")
    assert set(res) == {"coassociativity", "counit_left", "counit_right",
                        "antipode_left", "antipode_right", "antipode_involution"}
    assert max(res.values()) <= 1e-12


def test_vector_is_primitive():
    one = Multivector.scalar(CL13, 1)
    expect = TensorElement.from_pairs([(e(2), one, 1), (one, e(2), 1)], leg_product="wedge")
    assert coproduct(e(2)).approx_eq(expect, 0)


def test_bivector_coproduct_has_koszul_sign():
    one = Multivector.scalar(CL13, 1)
    e01 = wedge(e(0), e(1))
    expect = TensorElement.from_pairs(
        [(e01, one, 1), (e(0), e(1), 1), (e(1), e(0), -1), (one, e01, 1)], leg_product="wedge")
    assert coproduct(e01).approx_eq(expect, 0)


def test_counit_and_antipode():
    x = Multivector.scalar(CL13, 3) + e(1) + wedge(e(0), e(1))
    assert counit(x) == 3
    assert antipode(x) == Multivector.scalar(CL13, 3) - e(1) + wedge(e(0), e(1))


def test_multiply_legs_recovers_double():
    # m(Delta x) = 2^grade x for a blade in the wedge algebra
    x = wedge(wedge(e(0), e(1)), e(3))
    assert multiply_legs(coproduct(x), "wedge") == x * 8


def test_tensor_mode_mismatch():
    a = TensorElement.one(CL13, leg_product="wedge")
    b = TensorElement.one(CL13, leg_product="clifford")
    with pytest.raises(ModeMismatch):
        tmul(a, b)
    with pytest.raises(ValueError):
        coproduct(e(0), mode="nope")


def test_swap_and_arithmetic():
    t = TensorElement.simple(e(0), e(1))
    assert t.swap().swap().approx_eq(t, 0)
    assert (t - t).norm() == 0
    assert (t * 2).norm() == 2
