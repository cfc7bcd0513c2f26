"""Evaluation of parsed expressions against a generator set and an optional deformation."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Mapping, Union

import numpy as np

from ..hopfalg import COPRODUCT_MODES, PRODUCT_MODES, TensorElement, coproduct, tmul
from ..kappagen import GeneratorSet
from ..mvcore import (
    CL13,
    DEFAULT_TOL,
    AlgebraError,
    Multivector,
    Signature,
    contract,
    gmul,
    grade_project,
    involute,
    series_apply,
    wedge,
)
from ..qdeform import Deformation, bmul, dotted_wedge, wick
from .parser import Bin, Call, Expr, Num, Sym, Unary, parse

Value = Union[complex, Multivector, TensorElement]

DEFORM_MODES = ("product", "generators", "both")


class UnboundSymbol(AlgebraError):
    pass


class TypeMismatch(AlgebraError):
    pass


@dataclass(frozen=True, eq=False)
class EvalEnv:
    """Everything an expression can refer to.

    deform_mode says where a non-zero deformation enters: the product (``*`` becomes the
    B-product), the generators (replaced by their Wick images), or both.  A generator set
    that already carries a deformation is used as given.
    """

    sig: Signature = CL13
    generators: GeneratorSet | None = None
    deformation: Deformation | None = None
    deform_mode: str = "product"
    kappa: float | None = None
    braiding: str = "graded"
    coproduct_mode: str = "grassmann"
    tol: float = DEFAULT_TOL
    bindings: Mapping[str, Value] = field(default_factory=dict)

    def __post_init__(self):
        if self.deform_mode not in DEFORM_MODES:
            raise ValueError(f"deform_mode must be one of {DEFORM_MODES}")
        if self.braiding not in PRODUCT_MODES:
            raise ValueError(f"braiding must be one of {PRODUCT_MODES}")
        if self.coproduct_mode not in COPRODUCT_MODES:
            raise ValueError(f"coproduct_mode must be one of {sorted(COPRODUCT_MODES)}")
        gens = self.generators
        if gens is not None and gens.deformation is not None and self.deformation is None:
            object.__setattr__(self, "deformation", gens.deformation)
        if self.deformation is not None and self.deformation.sig != self.sig:
            raise ValueError("deformation signature differs from the environment signature")
        if gens is not None and gens.generators:
            if next(iter(gens.generators.values())).sig != self.sig:
                raise ValueError("generator signature differs from the environment signature")
        if self.kappa is None and gens is not None:
            object.__setattr__(self, "kappa", gens.kappa)

    @property
    def _active(self) -> bool:
        return self.deformation is not None and bool(np.any(self.deformation.A))

    @property
    def deformed_product(self) -> bool:
        return self._active and self.deform_mode in ("product", "both")

    @cached_property
    def active_generators(self) -> GeneratorSet | None:
        gens = self.generators
        if gens is None or gens.deformation is not None:
            return gens
        if self._active and self.deform_mode in ("generators", "both"):
            d = self.deformation
            return GeneratorSet(gens.basis_kind, gens.kappa,
                                {k: wick(d, "forward", v) for k, v in gens.generators.items()}, d)
        return gens

    def with_deformation(self, d: Deformation | None) -> "EvalEnv":
        return replace(self, deformation=d)

    def mul(self, a: Multivector, b: Multivector) -> Multivector:
        if self.deformed_product:
            return bmul(a, b, self.deformation)
        return gmul(a, b)

    def form(self):
        if self.deformed_product:
            return self.deformation.form()
        return None

    def fingerprint(self) -> dict:
        A = None
        if self.deformation is not None:
            A = [[_num_json(complex(x)) for x in row] for row in self.deformation.A]
        return {"signature": list(self.sig.diag), "kappa": self.kappa, "A": A, "tolerance": self.tol,
                "braiding": self.braiding, "deform_mode": self.deform_mode,
                "coproduct_mode": self.coproduct_mode,
                "basis": self.generators.basis_kind if self.generators is not None else None}


def _num_json(c: complex):
    return c.real if c.imag == 0 else [c.real, c.imag]


class Evaluator:
    def __init__(self, env: EvalEnv):
        self.env = env
        self.sig = env.sig
        self._g5 = None
        if env.sig.labels[:4] == ("gamma0", "gamma1", "gamma2", "gamma3") and env.sig.n == 4:
            self._g5 = Multivector(env.sig, {0b1111: 1})

    # -- helpers --
    def _mv(self, x) -> Multivector:
        if isinstance(x, Multivector):
            return x
        if isinstance(x, complex):
            return Multivector.scalar(self.sig, x)
        raise TypeMismatch("expected a multivector, got a tensor element")

    def _tmodes(self) -> dict:
        return {"product_mode": self.env.braiding, "leg_product": COPRODUCT_MODES[self.env.coproduct_mode]}

    def mul(self, a: Value, b: Value) -> Value:
        if isinstance(a, complex) and isinstance(b, complex):
            return a * b
        if isinstance(a, complex):
            return b * a
        if isinstance(b, complex):
            return a * b
        if isinstance(a, Multivector) and isinstance(b, Multivector):
            return self.env.mul(a, b)
        if isinstance(a, TensorElement) and isinstance(b, TensorElement):
            return tmul(a, b)
        if isinstance(a, Multivector):
            return self._leg_mul(b, lambda x: self.env.mul(a, x), left=True)
        return self._leg_mul(a, lambda x: self.env.mul(x, b), left=False)

    def _leg_mul(self, t: TensorElement, f, left: bool) -> TensorElement:
        pairs = []
        for x, y, c in t.pairs():
            pairs.append((f(x), y, c) if left else (x, f(y), c))
        return TensorElement.from_pairs(pairs, sig=t.sig, **t.modes())

    def add(self, a: Value, b: Value, sign: int = 1) -> Value:
        if isinstance(a, complex) and isinstance(b, complex):
            return a + sign * b
        if isinstance(a, TensorElement) or isinstance(b, TensorElement):
            # a literal 0 is the zero of every type
            if isinstance(b, complex) and b == 0:
                return a
            if isinstance(a, complex) and a == 0:
                return b.scale(sign)
            if not (isinstance(a, TensorElement) and isinstance(b, TensorElement)):
                raise TypeMismatch("cannot add a tensor element and a multivector")
            return a + b.scale(sign)
        return self._mv(a) + self._mv(b) * sign

    # -- evaluation --
    def __call__(self, e: Expr) -> Value:
        if isinstance(e, Num):
            return complex(e.value)
        if isinstance(e, Sym):
            return self.symbol(e.name)
        if isinstance(e, Unary):
            return -self(e.operand)
        if isinstance(e, Bin):
            return self.binary(e.op, self(e.left), self(e.right))
        if isinstance(e, Call):
            return self.call(e.func, [self(a) for a in e.args], e.args)
        raise TypeError(f"not an expression: {e!r}")

    def symbol(self, name: str) -> Value:
        env = self.env
        if name in env.bindings:
            v = env.bindings[name]
            return complex(v) if isinstance(v, (int, float, complex)) else v
        if name == "i":
            return 1j
        if name == "kappa":
            if env.kappa is None:
                raise UnboundSymbol("kappa is not set")
            return complex(env.kappa)
        if env.active_generators is not None:
            g = env.active_generators.lookup(name)
            if g is not None:
                return g
        if name in env.sig.labels:
            return Multivector.basis(env.sig, name)
        if name == "gamma5" and self._g5 is not None:
            return self._g5
        raise UnboundSymbol(f"unbound symbol {name!r}")

    def binary(self, op: str, a: Value, b: Value) -> Value:
        if op == "+":
            return self.add(a, b)
        if op == "-":
            return self.add(a, b, -1)
        if op == "*":
            return self.mul(a, b)
        if op == "/":
            if not isinstance(b, complex):
                raise TypeMismatch("division is only by scalars")
            if b == 0:
                raise ZeroDivisionError("division by zero")
            return a / b
        if op == "ox":
            if isinstance(a, TensorElement) or isinstance(b, TensorElement):
                raise TypeMismatch("ox takes two multivectors")
            return TensorElement.from_pairs([(self._mv(a), self._mv(b), 1)], sig=self.sig, **self._tmodes())
        if isinstance(a, TensorElement) or isinstance(b, TensorElement):
            raise TypeMismatch(f"{op!r} is not defined on tensor elements")
        if op == "^":
            if isinstance(a, complex) or isinstance(b, complex):
                return self.mul(a, b)
            return wedge(a, b)
        if op == ".^":
            if isinstance(a, complex) or isinstance(b, complex):
                return self.mul(a, b)
            d = self.env.deformation or Deformation.zero(self.sig)
            return dotted_wedge(a, b, d)
        if op in ("_|", "|_"):
            side = "left" if op == "_|" else "right"
            return contract(side, self._mv(a), self._mv(b), self.env.form())
        raise TypeMismatch(f"unknown operator {op!r}")

    def call(self, f: str, args: list[Value], raw) -> Value:
        if f in ("comm", "acomm"):
            a, b = args
            return self.add(self.mul(a, b), self.mul(b, a), -1 if f == "comm" else 1)
        if f == "grade":
            k = int(raw[1].value.real)
            x = args[0]
            if isinstance(x, TensorElement):
                raise TypeMismatch("grade of a tensor element")
            return grade_project(self._mv(x), k)
        x = args[0]
        if f == "Delta":
            if isinstance(x, TensorElement):
                raise TypeMismatch("Delta of a tensor element")
            return coproduct(self._mv(x), self.env.coproduct_mode, self.env.braiding)
        if isinstance(x, TensorElement):
            raise TypeMismatch(f"{f} of a tensor element")
        if f in ("sinh", "cosh", "exp"):
            if isinstance(x, complex):
                return {"sinh": cmath.sinh, "cosh": cmath.cosh, "exp": cmath.exp}[f](x)
            return series_apply(f, x, product=self.env.mul)
        if f in ("rev", "gi", "conj", "S"):
            if isinstance(x, complex):
                return x
            kind = {"rev": "reversion", "gi": "grade", "conj": "conjugation", "S": "grade"}[f]
            return involute(kind, x)
        if f == "eps":
            return x if isinstance(x, complex) else x.scalar_part()
        raise TypeMismatch(f"unknown function {f!r}")


def evaluate(expr: Expr | str, env: EvalEnv) -> Value:
    if isinstance(expr, str):
        expr = parse(expr)
    return Evaluator(env)(expr)


def residual(a: Value, b: Value) -> float:
    """Max-abs coefficient of a - b; a scalar zero matches any type."""
    if isinstance(a, TensorElement) != isinstance(b, TensorElement):
        t, other = (a, b) if isinstance(a, TensorElement) else (b, a)
        if isinstance(other, complex) and other == 0:
            return t.norm()
        raise TypeMismatch("comparing a tensor element with a multivector")
    if isinstance(a, TensorElement):
        return (a - b).norm()
    if isinstance(a, complex) and isinstance(b, complex):
        return abs(a - b)
    if isinstance(a, complex):
        return (b - a).norm()
    return (a - b).norm()


def max_coeff(v: Value) -> float:
    if isinstance(v, complex):
        return abs(v)
    return v.norm()


def mv_to_expr(mv: Multivector) -> str:
    """Expression text that evaluates back to ``mv`` (wedge form over basis labels)."""
    parts = []
    for m, c in sorted(mv.terms.items()):
        coeff = f"({c.real!r} + {c.imag!r}*i)" if c.imag else f"({c.real!r})"
        labels = [mv.sig.labels[k] for k in range(mv.sig.n) if m >> k & 1]
        parts.append(coeff if not labels else coeff + "*(" + " ^ ".join(labels) + ")")
    return " + ".join(parts) if parts else "0"
