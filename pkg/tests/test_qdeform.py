import itertools

import numpy as np
import pytest

from cliffhopf.blocks import Mat2
from cliffhopf.mvcore import (
    CL24,
    CL30,
    CL41,
    Multivector,
    SignatureMismatch,
    all_blades,
    gmul,
    random_multivector,
    wedge,
)
from cliffhopf.qdeform import (
    BadHyperbolicPair,
    CrossTermDeformation,
    Deformation,
    NotAVector,
    bcontract,
    bmul,
    dotted_wedge,
    periodicity_assemble,
    periodicity_split,
    random_antisymmetric,
    wick,
    wick_iso_check,
)

PAIR = (4, 0)


def rand_def(sig, rng, complex_entries=True):
    return Deformation(sig, random_antisymmetric(sig.n, rng, complex_entries))


def scalar(sig, c):
    return Multivector.scalar(sig, c)


def test_deformation_validation():
    with pytest.raises(ValueError):
        Deformation(CL30, np.ones((3, 3)))
    with pytest.raises(ValueError):
        Deformation(CL30, np.zeros((2, 2)))
    d = Deformation.from_B(CL30, [[1, 2, 0], [0, 1, 0], [0, 0, 1]])
    assert d.A[0, 1] == 1 and d.A[1, 0] == -1


def test_deformation_json_round_trip(rng):
    d = rand_def(CL24, rng)
    back = Deformation.from_json(d.to_json(), CL24)
    assert np.array_equal(back.A, d.A)
    with pytest.raises(SignatureMismatch):
        Deformation.from_json(d.to_json(), CL41)


def test_wick_inverse_on_all_blades(rng):
    d = rand_def(CL24, rng)
    for b in all_blades(CL24):
        assert (wick(d, "inverse", wick(d, "forward", b)) - b).norm() <= 1e-12


def test_wick_fixes_scalars_and_vectors(rng):
    d = rand_def(CL24, rng)
    for i in range(6):
        e = Multivector.basis(CL24, i)
        assert wick(d, "forward", e) == e
    e01 = wedge(Multivector.basis(CL24, 0), Multivector.basis(CL24, 1))
    assert wick(d, "forward", e01).approx_eq(e01 + d.A[0, 1], 1e-14)


def test_bcontract_on_vectors(rng):
    d = rand_def(CL24, rng)
    for i, j in itertools.product(range(6), repeat=2):
        ei, ej = Multivector.basis(CL24, i), Multivector.basis(CL24, j)
        assert bcontract(ei, ej, d).approx_eq(scalar(CL24, d.B[i, j]), 1e-14)
    with pytest.raises(NotAVector):
        bcontract(wedge(Multivector.basis(CL24, 0), Multivector.basis(CL24, 1)), scalar(CL24, 1), d)


def test_vector_square_is_metric(rng):
    d = rand_def(CL24, rng)
    for _ in range(50):
        u = random_multivector(CL24, rng, grades=[1])
        gu = gmul(u, u).scalar_part()
        assert (bmul(u, u, d) - scalar(CL24, gu)).norm() <= 1e-12


def test_bmul_associative(rng):
    d = rand_def(CL24, rng)
    for _ in range(10):
        a, b, c = (random_multivector(CL24, rng, complex_coeffs=True) for _ in range(3))
        assert (bmul(bmul(a, b, d), c, d) - bmul(a, bmul(b, c, d), d)).norm() <= 1e-10


def test_zero_deformation_is_clifford(rng):
    d = Deformation.zero(CL41)
    a, b = random_multivector(CL41, rng), random_multivector(CL41, rng)
    assert bmul(a, b, d).approx_eq(gmul(a, b))


def test_wick_iso_all_monomials(rng):
    d = rand_def(CL24, rng)
    for k in range(1, 5):
        for idx in itertools.combinations(range(6), k):
            assert wick_iso_check(d, idx) <= 1e-12
    with pytest.raises(ValueError):
        wick_iso_check(d, [2, 1])


def test_wick_intertwines_products(rng):
    d = rand_def(CL41, rng)
    a, b = random_multivector(CL41, rng), random_multivector(CL41, rng)
    lhs = wick(d, "forward", gmul(a, b))
    rhs = bmul(wick(d, "forward", a), wick(d, "forward", b), d)
    assert (lhs - rhs).norm() <= 1e-10


def test_dotted_wedge_vectors(rng):
    d = rand_def(CL24, rng)
    u, v = Multivector.basis(CL24, 1), Multivector.basis(CL24, 3)
    assert dotted_wedge(u, v, d).approx_eq(wedge(u, v) + d.A[1, 3], 1e-14)
    # vector case agrees with the general transported wedge
    general = wick(d, "forward", wedge(wick(d, "inverse", u), wick(d, "inverse", v)))
    assert dotted_wedge(u, v, d).approx_eq(general, 1e-14)


def mat(m11, m12, m21, m22):
    return Mat2.of(CL30, m11, m12, m21, m22)


def split(x):
    return periodicity_split(x, PAIR, reduced=CL30)


def test_split_reproduces_generator_matrices():
    E = [Multivector.basis(CL41, i) for i in range(5)]
    assert split(E[4]).approx_eq(mat(0, 1, 1, 0), 0)
    assert split(E[0]).approx_eq(mat(0, -1, 1, 0), 0)
    assert split((E[4] + E[0]) / 2).approx_eq(mat(0, 0, 1, 0), 0)
    assert split((E[4] - E[0]) / 2).approx_eq(mat(0, 1, 0, 0), 0)
    assert split(gmul(E[4], E[0])).approx_eq(mat(1, 0, 0, -1), 0)


def test_split_is_homomorphism(rng):
    for _ in range(30):
        a, b = random_multivector(CL41, rng, complex_coeffs=True), random_multivector(CL41, rng, complex_coeffs=True)
        assert (split(gmul(a, b)) - split(a) @ split(b)).norm() <= 1e-12


def test_assemble_inverts_split(rng):
    for b in all_blades(CL41):
        assert periodicity_assemble(split(b), PAIR, CL41) == b
    x = random_multivector(CL41, rng, complex_coeffs=True)
    assert (periodicity_assemble(split(x), PAIR, CL41) - x).norm() <= 1e-12


def test_split_bad_pair():
    with pytest.raises(BadHyperbolicPair):
        periodicity_split(Multivector.basis(CL41, 1), (0, 4))
    with pytest.raises(BadHyperbolicPair):
        periodicity_split(Multivector.basis(CL41, 1), (1, 1))


def block_deformation(rng):
    A = np.zeros((5, 5), dtype=complex)
    A[1:4, 1:4] = random_antisymmetric(3, rng, True)
    A[0, 4], A[4, 0] = 0.3, -0.3
    return Deformation(CL41, A)


def test_deformed_split_homomorphism(rng):
    d = block_deformation(rng)
    for _ in range(10):
        a, b = random_multivector(CL41, rng), random_multivector(CL41, rng)
        lhs = periodicity_split(bmul(a, b, d), PAIR, d, CL30)
        rhs = periodicity_split(a, PAIR, d, CL30) @ periodicity_split(b, PAIR, d, CL30)
        assert (lhs - rhs).norm() <= 1e-10
        back = periodicity_assemble(periodicity_split(a, PAIR, d, CL30), PAIR, CL41, d)
        assert (back - a).norm() <= 1e-10


def test_deformed_split_rejects_cross_terms(rng):
    A = random_antisymmetric(5, rng)
    with pytest.raises(CrossTermDeformation):
        periodicity_split(Multivector.basis(CL41, 1), PAIR, Deformation(CL41, A))
