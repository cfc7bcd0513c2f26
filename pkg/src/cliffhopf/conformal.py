"""
Conformal maps of R^{1,3} through 2x2 Vahlen matrices over Cl(3,0).

A point is the paravector x = x0 + x1 e1 + x2 e2 + x3 e3.  A matrix
[[a, c], [b, d]] acts by the fractional-linear rule x' = (ax + c)(bx + d)^{-1},
and on the embedded point [[x, x xbar], [1, xbar]] by the sandwich
g m [[dbar, cbar], [bbar, abar]] = Delta [[x', x' x'bar], [1, x'bar]].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .blocks import Mat2
from .mvcore import (
    CL13,
    CL24,
    CL30,
    CL41,
    DEFAULT_TOL,
    AlgebraError,
    Multivector,
    Signature,
    gmul,
    grade_of,
    involute,
)


class PointAtInfinity(AlgebraError):
    pass


class BadParameter(AlgebraError):
    pass


class ConditionsViolated(AlgebraError):
    pass


class StepTooLarge(AlgebraError):
    pass


class WrongSignature(AlgebraError):
    pass


def bar(x: Multivector) -> Multivector:
    return involute("conjugation", x)


def rev(x: Multivector) -> Multivector:
    return involute("reversion", x)


def hat(x: Multivector) -> Multivector:
    return involute("grade", x)


def _in_grades(x: Multivector, allowed: set[int], tol: float) -> bool:
    return all(abs(c) <= tol for m, c in x.terms.items() if grade_of(m) not in allowed)


def _is_real_scalar(x: Multivector, tol: float) -> bool:
    return x.is_scalar(tol) and abs(x.scalar_part().imag) <= tol


class Paravector:
    """Scalar-plus-vector element of Cl(3,0)."""

    __slots__ = ("m",)

    def __init__(self, m: Multivector, tol: float = 1e-9):
        if m.sig != CL30:
            raise WrongSignature("paravectors live in Cl(3,0)")
        if not _in_grades(m, {0, 1}, tol):
            raise BadParameter(f"not a paravector: {m}")
        self.m = Multivector(CL30, {k: c for k, c in m.terms.items() if grade_of(k) <= 1})

    @classmethod
    def from_coords(cls, coords: Sequence[float]) -> "Paravector":
        x0, x1, x2, x3 = coords
        return cls(Multivector(CL30, {0: x0, 1: x1, 2: x2, 4: x3}))

    def coords(self) -> np.ndarray:
        t = self.m.terms
        return np.array([t.get(k, 0j).real for k in (0, 1, 2, 4)])

    def norm2(self) -> complex:
        """x xbar, the paravector quadratic form (x0^2 - |x|^2)."""
        return gmul(self.m, bar(self.m)).scalar_part()

    def __repr__(self):
        return f"Paravector({self.m})"


def as_para(x) -> Paravector:
    if isinstance(x, Paravector):
        return x
    if isinstance(x, Multivector):
        return Paravector(x)
    return Paravector.from_coords(x)


def inverse(y: Multivector, tol: float = DEFAULT_TOL) -> Multivector:
    """y^{-1} = ybar / (y ybar), for y whose norm y ybar is a non-zero scalar."""
    n = gmul(y, bar(y))
    if not n.is_scalar(max(tol, tol * n.norm())):
        raise ConditionsViolated(f"{y} has non-scalar norm {n}")
    s = n.scalar_part()
    if abs(s) <= tol:
        raise PointAtInfinity(f"{y} is not invertible")
    return bar(y) / s


def embed_point(x) -> Mat2:
    """[[x, x xbar], [1, xbar]]: the projective section mu = 1, lambda = x xbar."""
    x = as_para(x).m
    xb = bar(x)
    return Mat2.of(CL30, x, gmul(x, xb), 1, xb)


def quadric_point(x) -> Multivector:
    """The vector alpha in R^{2,4} on the Klein absolute with mu = 1, lambda = x xbar."""
    p = as_para(x)
    x0, x1, x2, x3 = p.coords()
    lam = p.norm2().real
    mu = 1.0
    a4 = (lam + mu) / 2
    a0 = (mu - lam) / 2
    return Multivector.vector(CL24, [a0, x1, x2, x3, a4, x0])


def klein_residual(alpha: Multivector) -> float:
    """|alpha . alpha| in Cl(2,4); zero exactly on the Klein absolute."""
    if alpha.sig != CL24:
        raise WrongSignature("quadric points live in Cl(2,4)")
    return abs(gmul(alpha, alpha).scalar_part())


def paravector_41(alpha: Multivector) -> Multivector:
    """b = alpha eps5 read in Cl(4,1): alpha^5 + alpha^A E_A."""
    if alpha.sig != CL24:
        raise WrongSignature("expected a vector of Cl(2,4)")
    a = [alpha[1 << k] for k in range(6)]
    return Multivector(CL41, {0: a[5], 1: a[0], 2: a[1], 4: a[2], 8: a[3], 16: a[4]})


@dataclass(frozen=True, eq=False)
class VahlenMatrix:
    """g = [[a, c], [b, d]] with entries in Cl(3,0)."""

    a: Multivector
    b: Multivector
    c: Multivector
    d: Multivector

    def __post_init__(self):
        for name in "abcd":
            v = getattr(self, name)
            if not isinstance(v, Multivector):
                v = Multivector.scalar(CL30, v)
                object.__setattr__(self, name, v)
            if v.sig != CL30:
                raise WrongSignature("Vahlen entries live in Cl(3,0)")

    @classmethod
    def from_rows(cls, rows) -> "VahlenMatrix":
        (a, c), (b, d) = rows
        return cls(a, b, c, d)

    def as_mat(self) -> Mat2:
        return Mat2.of(CL30, self.a, self.c, self.b, self.d)

    def __matmul__(self, other: "VahlenMatrix") -> "VahlenMatrix":
        m = self.as_mat() @ other.as_mat()
        return VahlenMatrix(m[0, 0], m[1, 0], m[0, 1], m[1, 1])

    def __neg__(self) -> "VahlenMatrix":
        return VahlenMatrix(-self.a, -self.b, -self.c, -self.d)

    def bar_reversed(self) -> Mat2:
        return Mat2.of(CL30, bar(self.d), bar(self.c), bar(self.b), bar(self.a))


@dataclass(frozen=True)
class VahlenConditions:
    i: bool
    ii: bool
    iii: bool
    iv: bool
    v: bool
    vi: bool

    def all(self) -> bool:
        return all((self.i, self.ii, self.iii, self.iv, self.v, self.vi))

    def as_dict(self) -> dict[str, bool]:
        return {"i": self.i, "ii": self.ii, "iii": self.iii, "iv": self.iv, "v": self.v, "vi": self.vi}


BASIS_PARAVECTORS = [Paravector.from_coords(v) for v in np.eye(4)]


def vahlen_check(g: VahlenMatrix, trial_vectors: Sequence = (), tol: float = 1e-10) -> VahlenConditions:
    a, b, c, d = g.a, g.b, g.c, g.d
    vs = [as_para(v).m for v in trial_vectors] + [p.m for p in BASIS_PARAVECTORS]

    def mul(*xs):
        out = xs[0]
        for x in xs[1:]:
            out = gmul(out, x)
        return out

    real = lambda x: _is_real_scalar(x, tol)  # noqa: E731
    para = lambda x: _in_grades(x, {0, 1}, tol)  # noqa: E731
    c1 = all(real(mul(x, bar(x))) for x in (a, b, c, d))
    c2 = para(mul(a, bar(b))) and para(mul(c, bar(d)))
    c3 = all(real(mul(a, v, bar(c)) + mul(c, bar(v), bar(a)))
             and real(mul(c, v, bar(d)) + mul(d, bar(v), bar(c))) for v in vs)
    c4 = all(para(mul(a, v, bar(d)) + mul(c, bar(v), bar(b))) for v in vs)
    c5 = (mul(a, rev(c)) - mul(c, rev(a))).norm() <= tol and (mul(b, rev(d)) - mul(d, rev(b))).norm() <= tol
    c6 = (mul(a, rev(d)) - mul(c, rev(b)) - 1).norm() <= tol
    return VahlenConditions(c1, c2, c3, c4, c5, c6)


def _para_param(h, name="h") -> Multivector:
    try:
        return as_para(h).m
    except (BadParameter, WrongSignature, ValueError, TypeError) as exc:
        raise BadParameter(f"{name} must be a paravector: {exc}") from None


def make_map(kind: str, param=None, ghat: Multivector | None = None) -> VahlenMatrix:
    one = Multivector.scalar(CL30, 1)
    zero = Multivector.zero(CL30)
    if kind == "translation":
        return VahlenMatrix(one, zero, _para_param(param), one)
    if kind == "dilation":
        rho = float(param)
        if not rho > 0:
            raise BadParameter("dilation factor must be positive")
        r = math.sqrt(rho)
        return VahlenMatrix(one * r, zero, zero, one / r)
    if kind == "rotation":
        if not isinstance(param, Multivector) or param.sig != CL30:
            raise BadParameter("rotation needs a Cl(3,0) element")
        return VahlenMatrix(param, zero, zero, hat(param) if ghat is None else ghat)
    if kind == "inversion":
        return VahlenMatrix(zero, one, -one, zero)
    if kind == "transvection":
        return VahlenMatrix(one, _para_param(param), zero, one)
    raise BadParameter(f"unknown map kind {kind!r}")


def map_from_json(obj: dict) -> VahlenMatrix:
    """{"kind": "dilation", "rho": 4} / {"kind": "translation", "h": [h0, h1, h2, h3]} / ..."""
    kind = obj.get("kind")
    if kind in ("translation", "transvection"):
        return make_map(kind, obj["h"])
    if kind == "dilation":
        return make_map(kind, obj["rho"])
    if kind == "inversion":
        return make_map(kind)
    if kind == "rotation":
        def mv(spec):
            terms = {}
            for label, coeff in spec.items():
                mask = 0
                if label != "1":
                    for part in label.split("^"):
                        mask |= 1 << CL30.index(part)
                terms[mask] = complex(*coeff) if isinstance(coeff, list) else coeff
            return Multivector(CL30, terms)
        return make_map(kind, mv(obj["g"]), mv(obj["ghat"]) if "ghat" in obj else None)
    if kind == "matrix":
        ents = [Paravector.from_coords(obj[k]).m if isinstance(obj[k], list) else obj[k] for k in "abcd"]
        return VahlenMatrix(*ents)
    raise BadParameter(f"unknown map kind {kind!r}")


@dataclass(frozen=True)
class MobiusResult:
    x_prime: Paravector
    delta: float


def mobius(g: VahlenMatrix, x, tol: float = DEFAULT_TOL) -> MobiusResult:
    """x' = (ax + c)(bx + d)^{-1}, Delta = (bx + d)(bx + d)bar."""
    x = as_para(x).m
    den = gmul(g.b, x) + g.d
    delta = gmul(den, bar(den))
    if not delta.is_scalar(max(tol, 1e-9 * delta.norm())):
        raise ConditionsViolated(f"(bx+d)(bx+d)bar is not scalar: {delta}")
    dv = delta.scalar_part()
    if abs(dv) <= tol:
        raise PointAtInfinity("(bx+d)(bx+d)bar vanishes")
    num = gmul(g.a, x) + g.c
    xp = gmul(num, bar(den)) / dv
    if abs(dv.imag) > tol:
        raise ConditionsViolated(f"Delta is not real: {dv}")
    return MobiusResult(Paravector(xp), dv.real)


def twisted_adjoint(g: VahlenMatrix, m: Mat2, tol: float = 1e-10) -> Mat2:
    """g m [[dbar, cbar], [bbar, abar]], defined for matrices passing the Vahlen conditions."""
    conds = vahlen_check(g, [Paravector(m[0, 0])], tol)
    if not conds.all():
        raise ConditionsViolated(f"Vahlen conditions fail: {conds.as_dict()}")
    return g.as_mat() @ m @ g.bar_reversed()


_ETA = np.diag([1.0, -1.0, -1.0, -1.0])


def conformality(g: VahlenMatrix, x, h: float = 1e-4, limit: float = 1e-2) -> tuple[float, float]:
    """Central-difference Jacobian J of the Mobius map; returns (lambda, ||J^T eta J - lambda eta||_max)."""
    if not h > 0:
        raise ValueError("step must be positive")
    x0 = as_para(x).coords()
    J = np.empty((4, 4))
    for k in range(4):
        dx = np.zeros(4)
        dx[k] = h
        fp = mobius(g, x0 + dx).x_prime.coords()
        fm = mobius(g, x0 - dx).x_prime.coords()
        J[:, k] = (fp - fm) / (2 * h)
    G = J.T @ _ETA @ J
    lam = G[0, 0] / _ETA[0, 0]
    residual = float(np.max(np.abs(G - lam * _ETA)))
    if residual > limit:
        raise StepTooLarge(f"conformality residual {residual:.3e} exceeds {limit}")
    return float(lam), residual


# --- chart isomorphisms out of Cl(4,1) ---------------------------------------------------

def _chart_images(kind: str) -> list[Multivector]:
    if kind == "xi":
        e5 = Multivector.basis(CL24, 5)
        return [gmul(Multivector.basis(CL24, a), e5) for a in range(5)]
    if kind == "poi":
        gam = [Multivector.basis(CL13, m) for m in range(4)]
        g5 = gmul(gmul(gam[0], gam[1]), gmul(gam[2], gam[3]))
        return [g * -1j for g in gam] + [g5 * -1j]
    raise ValueError(f"unknown chart {kind!r}")


def chart_iso(kind: str, psi: Multivector) -> Multivector:
    """Multiplicative extension of E_A -> eps_A eps_5 (xi) or E_mu -> -i gamma_mu, E_4 -> -i gamma_5 (poi)."""
    if psi.sig != CL41:
        raise WrongSignature("chart isomorphisms act on Cl(4,1)")
    imgs = _chart_images(kind)
    target = imgs[0].sig
    out = Multivector.zero(target)
    for m, c in psi.terms.items():
        acc = Multivector.scalar(target, c)
        for i in range(5):
            if m >> i & 1:
                acc = gmul(acc, imgs[i])
        out = out + acc
    return out


__all__ = [
    "Paravector", "VahlenMatrix", "VahlenConditions", "MobiusResult",
    "PointAtInfinity", "BadParameter", "ConditionsViolated", "StepTooLarge", "WrongSignature",
    "embed_point", "quadric_point", "klein_residual", "paravector_41", "vahlen_check",
    "make_map", "map_from_json", "mobius", "twisted_adjoint", "conformality", "chart_iso",
    "inverse", "bar", "rev", "hat",
]
