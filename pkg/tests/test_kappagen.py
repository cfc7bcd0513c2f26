import itertools

import numpy as np
import pytest

from cliffhopf.kappagen import (
    SUITE_NAMES,
    GeneratorSet,
    MissingParameter,
    Relation,
    RelationSuite,
    UnknownSuite,
    conformal_generators,
    deformed_generators,
    gamma,
    gamma5,
    kappa_generators,
    levi_civita,
    nilpotent_arg,
    substitute,
    suite,
)
from cliffhopf.mvcore import CL13, Multivector, gmul, series_apply
from cliffhopf.qdeform import Deformation, random_antisymmetric
from cliffhopf.relcheck import EvalEnv, run

ONE = Multivector.scalar(CL13, 1)
ZERO = Multivector.zero(CL13)


def test_nilpotent_square_is_zero():
    X = nilpotent_arg()
    assert gmul(X, X) == ZERO


@pytest.mark.parametrize("kappa", [0.5, 1.0, 10.0])
def test_series_truncate(kappa):
    X = nilpotent_arg() / kappa
    s, n = series_apply("sinh", X, return_terms=True)
    c, m = series_apply("cosh", X, return_terms=True)
    assert s == X and c == ONE
    assert n <= 2 and m <= 2


def test_chiral_projectors():
    g5 = gamma5()
    p = (ONE + g5 * 1j) * 0.5
    q = (ONE - g5 * 1j) * 0.5
    assert gmul(p, p) == p and gmul(q, q) == q
    assert gmul(p, q) == ZERO and gmul(q, p) == ZERO


def test_p_and_k_products_vanish():
    gs = conformal_generators()
    for mu, nu in itertools.product(range(4), repeat=2):
        assert gmul(gs[f"P{mu}"], gs[f"P{nu}"]) == ZERO
        assert gmul(gs[f"K{mu}"], gs[f"K{nu}"]) == ZERO


def test_m_lookup_by_antisymmetry():
    gs = conformal_generators()
    assert gs["M10"] == -gs["M01"]
    assert gs["M22"] == ZERO
    assert "M31" in gs and "Q1" not in gs
    with pytest.raises(KeyError):
        gs["Q1"]


def test_orientations_differ_by_sign():
    a, b = conformal_generators("mu_nu"), conformal_generators("nu_mu")
    assert a["M01"] == -b["M01"]
    with pytest.raises(ValueError):
        conformal_generators("other")


def test_generator_set_is_read_only():
    gs = conformal_generators()
    with pytest.raises(TypeError):
        gs.generators["P0"] = ONE
    with pytest.raises(ValueError):
        GeneratorSet("nope", None, {})


def test_kappa_generators():
    gs = kappa_generators(2.0)
    assert gs["K1"] == gs["M10"]
    assert gs["Kp"] == gs["M10"] + gs["M20"] * 1j
    assert gs["M3"] == gs["M12"]
    assert gs["Kr1"] == (gs["Krp"] + gs["Krm"]) * 0.5
    assert "K0" not in gs.generators
    assert "K0" in kappa_generators(2.0, "bicross").generators
    with pytest.raises(MissingParameter):
        kappa_generators(None)
    with pytest.raises(MissingParameter):
        kappa_generators(-1.0)


def test_deformed_generators_zero_is_identity():
    d = Deformation.zero(CL13)
    base = conformal_generators()
    dg = deformed_generators(1.0, d)
    for name in base.names():
        assert dg[name] == base[name]


def test_both_mode_keeps_conformal_relations(rng):
    d = Deformation(CL13, random_antisymmetric(4, rng, True))
    env = EvalEnv(generators=conformal_generators(), deformation=d, deform_mode="both")
    rep = run(suite("conformal"), env)
    assert rep.max_residual() <= 1e-10


def test_levi_civita():
    assert levi_civita(1, 2, 3) == 1
    assert levi_civita(2, 1, 3) == -1
    assert levi_civita(1, 1, 3) == 0


def test_substitute():
    assert substitute("P{mu}", {"mu": 2}) == "P2"
    assert substitute("{g:mu,nu}*D", {"mu": 1, "nu": 1}) == "(-1)*D"
    assert substitute("{eps:i,j,3}", {"i": 1, "j": 2}) == "(1)"
    with pytest.raises(Exception):
        substitute("P{zz}", {})


def test_relation_assignments_and_json():
    r = Relation("x", "P{mu}", "0", {"mu": (0, 3), "nu": (1, 2)}, "diagnostic")
    assert len(list(r.assignments())) == 8
    assert Relation.from_json(r.to_json()) == r
    assert r.swapped().lhs == "0"
    with pytest.raises(ValueError):
        Relation("x", "a", "b", expect="maybe")


def test_conformal_suite_shape():
    s = suite("conformal")
    assert len(s.families()) == 9
    assert s.row_count() == 16 * 3 + 64 * 2 + 256 + 16 + 8
    assert all(r.expect == "must_pass" for r in s.relations)
    sym = suite("conformal_symmetry")
    assert sym.row_count() == s.row_count()
    assert "(-K" in sym.relations[0].lhs


@pytest.mark.parametrize("name", SUITE_NAMES[2:])
def test_kappa_suites_need_kappa_and_are_diagnostic(name):
    with pytest.raises(MissingParameter):
        suite(name)
    s = suite(name, 1.0)
    assert s.parameters["kappa"] == 1.0
    assert all(r.expect == "diagnostic" for r in s.relations)
    assert s.row_count() > 0


def test_coalgebra_suites_include_counits():
    for name in ("kappa_coalgebra", "ringK_coalgebra", "bicross_coalgebra"):
        fams = suite(name, 1.0).families()
        assert any(f.startswith("eps") for f in fams), name


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        suite("nonsense")


def test_suite_json_round_trip():
    s = suite("kappa_algebra", 0.5)
    back = RelationSuite.from_json(s.to_json())
    assert back == s


def test_gamma_helpers():
    assert gmul(gamma(0), gamma(0)) == ONE
    assert gmul(gamma5(), gamma5()) == -ONE
    assert np.isclose(gmul(gamma(1), gamma(1)).scalar_part(), -1)
