import numpy as np
import pytest

from cliffhopf.kappagen import Relation, RelationSuite, conformal_generators, suite
from cliffhopf.mvcore import CL13
from cliffhopf.qdeform import Deformation
from cliffhopf.relcheck import BadFamily, EvalEnv, PairFamily, family, fit
from cliffhopf.relcheck.evaluate import evaluate


def synthetic_suite(A):
    """Rows gamma_mu * gamma_nu = B_mu_nu + gamma_mu ^ gamma_nu for a known A."""
    rels = []
    for mu in range(4):
        for nu in range(mu + 1, 4):
            z = complex(A[mu, nu])
            rhs = f"({float(z.real)}) + ({float(z.imag)})*i + (gamma{mu} ^ gamma{nu})"
            rels.append(Relation(f"g{mu}{nu}", f"gamma{mu}*gamma{nu}", rhs))
    return RelationSuite("synthetic", tuple(rels))


def test_pair_family_round_trip(rng):
    fam = PairFamily(4)
    x = rng.normal(size=fam.size)
    A = fam(x)
    assert np.allclose(A, -A.T)
    assert np.allclose(fam.inverse(A), x)
    scaled = PairFamily(4, kappa=2.0)
    assert np.allclose(scaled(x), A / 2)
    assert PairFamily(4, complex_params=False).size == 6
    with pytest.raises(BadFamily):
        fam(np.zeros(3))


def test_family_lookup():
    assert family("default", CL13).size == 12
    assert family("real", CL13).size == 6
    with pytest.raises(BadFamily):
        family("kappa", CL13)
    with pytest.raises(BadFamily):
        family("cubic", CL13)


def test_conformal_objective_zero_at_start():
    env = EvalEnv(generators=conformal_generators())
    res = fit(suite("conformal"), env)
    assert res.objective == 0 and res.iterations == 0 and res.converged


def test_synthetic_recovery():
    target = np.zeros((4, 4), dtype=complex)
    target[0, 1], target[2, 3], target[1, 3] = 0.4, -0.3j, 0.2 + 0.1j
    target = target - target.T
    s = synthetic_suite(target)
    env = EvalEnv()
    # the relations hold exactly at the target
    at_target = env.with_deformation(Deformation(CL13, target))
    for rel in s.relations:
        lhs, rhs = rel.instantiate({})
        assert (evaluate(lhs, at_target) - evaluate(rhs, at_target)).norm() <= 1e-15
    res = fit(s, env, max_iter=2000, seed=1)
    assert res.objective <= 1e-8
    assert res.iterations <= 2000
    assert all(b <= a for a, b in zip(res.trace, res.trace[1:]))
    assert np.max(np.abs(res.A - target)) <= 1e-4
    assert res.to_json()["trace_length"] == len(res.trace)


def test_unparseable_rows_are_penalised():
    s = RelationSuite("bad", (Relation("r", "gamma0 +", "0"),))
    res = fit(s, EvalEnv(), max_iter=5, restarts=1)
    assert res.objective >= 1e6
