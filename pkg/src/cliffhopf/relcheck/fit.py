"""Derivative-free search for a deformation A that makes a suite hold."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

from ..kappagen import RelationSuite
from ..mvcore import AlgebraError, Signature
from ..qdeform import Deformation
from .evaluate import EvalEnv, evaluate, residual
from .parser import ExprSyntaxError, parse

ERROR_PENALTY = 1e6


class BadFamily(AlgebraError):
    pass


@dataclass(frozen=True)
class PairFamily:
    """A = sum over i<j of (x_ij + i y_ij) (E_ij - E_ji), optionally divided by kappa."""

    n: int
    kappa: float | None = None
    complex_params: bool = True

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)]

    @property
    def size(self) -> int:
        return len(self.pairs) * (2 if self.complex_params else 1)

    def __call__(self, params: Sequence[float]) -> np.ndarray:
        params = np.asarray(params, dtype=float)
        if params.shape != (self.size,):
            raise BadFamily(f"expected {self.size} parameters, got {params.shape}")
        m = len(self.pairs)
        vals = params[:m] + (1j * params[m:] if self.complex_params else 0)
        if self.kappa:
            vals = vals / self.kappa
        A = np.zeros((self.n, self.n), dtype=complex)
        for (i, j), v in zip(self.pairs, vals):
            A[i, j] = v
            A[j, i] = -v
        return A

    def inverse(self, A: np.ndarray) -> np.ndarray:
        vals = np.array([A[i, j] for i, j in self.pairs], dtype=complex)
        if self.kappa:
            vals = vals * self.kappa
        if self.complex_params:
            return np.concatenate([vals.real, vals.imag])
        return vals.real.copy()


def family(name: str, sig: Signature, kappa: float | None = None) -> PairFamily:
    if name == "default":
        return PairFamily(sig.n)
    if name == "kappa":
        if not kappa:
            raise BadFamily("the kappa-scaled family needs kappa")
        return PairFamily(sig.n, kappa)
    if name == "real":
        return PairFamily(sig.n, complex_params=False)
    raise BadFamily(f"unknown family {name!r}")


@dataclass(frozen=True)
class FitResult:
    A: np.ndarray
    objective: float
    iterations: int
    converged: bool
    trace: tuple[float, ...]
    params: tuple[float, ...]

    def to_json(self) -> dict:
        return {"objective": self.objective, "iterations": self.iterations, "converged": self.converged,
                "A": [[[float(x.real), float(x.imag)] for x in row] for row in self.A],
                "params": list(self.params), "trace_length": len(self.trace)}


class Objective:
    """Sum of squared residuals over all rows; failing rows cost ERROR_PENALTY each."""

    def __init__(self, suite: RelationSuite, env: EvalEnv, fam: Callable[[Sequence[float]], np.ndarray]):
        self.env = env
        self.family = fam
        self.rows = []
        for rel in suite.relations:
            for asg in rel.assignments():
                try:
                    lhs, rhs = rel.instantiate(asg)
                    self.rows.append((parse(lhs), parse(rhs)))
                except (AlgebraError, ExprSyntaxError):
                    self.rows.append(None)
        self.calls = 0
        self.best = np.inf
        self.best_x = None

    def matrix(self, x) -> np.ndarray:
        A = np.asarray(self.family(x), dtype=complex)
        n = self.env.sig.n
        if A.shape != (n, n) or np.max(np.abs(A + A.T), initial=0.0) > 1e-12:
            raise BadFamily("family produced a matrix that is not antisymmetric")
        return A

    def __call__(self, x) -> float:
        self.calls += 1
        A = self.matrix(x)
        env = self.env.with_deformation(Deformation(self.env.sig, (A - A.T) / 2))
        total = 0.0
        for row in self.rows:
            if row is None:
                total += ERROR_PENALTY
                continue
            try:
                r = residual(evaluate(row[0], env), evaluate(row[1], env))
                total += r * r if np.isfinite(r) else ERROR_PENALTY
            except (AlgebraError, ArithmeticError, ValueError):
                total += ERROR_PENALTY
        if total < self.best:
            self.best = total
            self.best_x = np.array(x, dtype=float)
        return total


def fit(suite: RelationSuite, env: EvalEnv, fam: Callable | None = None, max_iter: int = 2000,
        ftol: float = 1e-12, seed: int = 0, restarts: int = 5, x0: Sequence[float] | None = None,
        spread: float = 0.5) -> FitResult:
    """Nelder-Mead with restarts around the best point found so far.

    The trace records the best objective after each simplex iteration, so it never increases.
    """
    fam = fam or PairFamily(env.sig.n)
    size = getattr(fam, "size", None)
    if x0 is None:
        if size is None:
            raise BadFamily("x0 is needed for a family without a size")
        x0 = np.zeros(size)
    x0 = np.asarray(x0, dtype=float)
    obj = Objective(suite, env, fam)
    f0 = obj(x0)
    trace = [f0]
    iterations = 0
    converged = f0 <= ftol
    rng = np.random.default_rng(seed)
    start = x0
    prev = f0
    for r in range(restarts):
        if converged or iterations >= max_iter:
            break
        if r > 0:
            start = obj.best_x + rng.normal(scale=spread * max(1.0, np.sqrt(obj.best)), size=x0.shape)

        def record(*_):
            trace.append(float(obj.best))

        # scipy's default simplex is tiny around zero; start with edges of length `spread`
        simplex = np.vstack([start, start + spread * np.eye(start.size)])
        res = minimize(obj, start, method="Nelder-Mead", callback=record,
                       options={"maxiter": max_iter - iterations, "xatol": 1e-13, "fatol": ftol * 1e-3,
                                "adaptive": True, "initial_simplex": simplex})
        iterations += int(res.nit)
        if obj.best <= ftol:
            converged = True
        elif prev - obj.best < ftol * max(1.0, prev) and r > 0:
            converged = bool(res.success)
            break
        prev = obj.best
    best_x = obj.best_x if obj.best_x is not None else x0
    A = obj.matrix(best_x)
    return FitResult(A, float(obj.best), iterations, bool(converged), tuple(trace), tuple(float(v) for v in best_x))
