"""
Tensor-square algebra and the Clifford-Hopf co-structures.

The Hopf structure lives on the wedge product (Grassmann-Hopf); the
coproduct is the multiplicative extension of the primitive rule
Delta(e_i) = e_i (x) 1 + 1 (x) e_i under the Koszul-signed tensor product.
A Clifford-legged coproduct is kept as a diagnostic mode only.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .mvcore import (
    DEFAULT_TOL,
    AlgebraError,
    Multivector,
    Signature,
    SignatureMismatch,
    _is_number,
    get_form,
    grade_of,
    involute,
    wedge_sign,
)

PRODUCT_MODES = ("graded", "ungraded")
LEG_PRODUCTS = ("wedge", "clifford")
COPRODUCT_MODES = {"grassmann": "wedge", "clifford_formal": "clifford"}


class ModeMismatch(AlgebraError):
    pass


def _leg_table(sig: Signature, leg: str):
    if leg == "wedge":
        def table(a, b):
            s = wedge_sign(a, b)
            return ((a | b, s),) if s else ()
        return table
    if leg == "clifford":
        return get_form(sig.form()).mul
    raise ValueError(f"unknown leg product {leg!r}")


@dataclass(frozen=True, eq=False)
class TensorElement:
    """Finite sum of weighted blade pairs (left (x) right)."""

    sig: Signature
    terms: Mapping[tuple[int, int], complex] = field(default_factory=dict)
    product_mode: str = "graded"
    leg_product: str = "wedge"

    def __post_init__(self):
        if self.product_mode not in PRODUCT_MODES:
            raise ValueError(f"product_mode must be one of {PRODUCT_MODES}")
        if self.leg_product not in LEG_PRODUCTS:
            raise ValueError(f"leg_product must be one of {LEG_PRODUCTS}")
        clean = {}
        for k, c in self.terms.items():
            c = complex(c)
            if c != 0:
                clean[k] = clean.get(k, 0) + c
        object.__setattr__(self, "terms", {k: c for k, c in clean.items() if c != 0})

    @classmethod
    def simple(cls, a: Multivector, b: Multivector, w=1.0, **modes) -> "TensorElement":
        return cls.from_pairs([(a, b, w)], **modes)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Multivector, Multivector, complex]], sig: Signature | None = None,
                   **modes) -> "TensorElement":
        acc: dict[tuple[int, int], complex] = defaultdict(complex)
        for a, b, w in pairs:
            if sig is None:
                sig = a.sig
            if a.sig != sig or b.sig != sig:
                raise SignatureMismatch("all legs must share a signature")
            for ma, ca in a.terms.items():
                for mb, cb in b.terms.items():
                    acc[(ma, mb)] += w * ca * cb
        if sig is None:
            raise ValueError("signature needed for an empty tensor element")
        return cls(sig, dict(acc), **modes)

    @classmethod
    def one(cls, sig: Signature, **modes) -> "TensorElement":
        return cls(sig, {(0, 0): 1}, **modes)

    def modes(self) -> dict:
        return {"product_mode": self.product_mode, "leg_product": self.leg_product}

    def _same(self, other: "TensorElement"):
        if other.sig != self.sig:
            raise SignatureMismatch("tensor elements over different signatures")
        if (other.product_mode, other.leg_product) != (self.product_mode, self.leg_product):
            raise ModeMismatch(f"{self.modes()} vs {other.modes()}")

    def pairs(self):
        for (ma, mb), c in sorted(self.terms.items()):
            yield Multivector(self.sig, {ma: 1}), Multivector(self.sig, {mb: 1}), c

    def norm(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def approx_eq(self, other: "TensorElement", tol: float = DEFAULT_TOL) -> bool:
        return (self - other).norm() <= tol

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._same(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, 0) + c
        return TensorElement(self.sig, acc, **self.modes())

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = complex(c)
        return TensorElement(self.sig, {k: v * c for k, v in self.terms.items()}, **self.modes())

    def __mul__(self, other):
        if _is_number(other):
            return self.scale(other)
        if isinstance(other, TensorElement):
            return tmul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_number(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_number(other):
            return self.scale(1 / complex(other))
        return NotImplemented

    def swap(self) -> "TensorElement":
        """Flip legs, with the Koszul sign in graded mode."""
        out = {}
        for (ma, mb), c in self.terms.items():
            s = -1 if self.product_mode == "graded" and (grade_of(ma) * grade_of(mb)) & 1 else 1
            out[(mb, ma)] = s * c
        return TensorElement(self.sig, out, **self.modes())

    def to_json(self) -> list:
        out = []
        for (ma, mb), c in sorted(self.terms.items()):
            left = Multivector(self.sig).blade_label(ma) or "1"
            right = Multivector(self.sig).blade_label(mb) or "1"
            out.append({"left": left, "right": right,
                        "w": c.real if c.imag == 0 else [c.real, c.imag]})
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        one = Multivector(self.sig)

        def label(m):
            return one.blade_label(m) if m else "1"
        parts = []
        for (ma, mb), c in sorted(self.terms.items()):
            parts.append(f"{Multivector(self.sig, {0: c})}·{label(ma)} (x) {label(mb)}")
        return " + ".join(parts)

    __repr__ = __str__


def tmul(s: TensorElement, t: TensorElement) -> TensorElement:
    """(a (x) b)(c (x) d) = sigma (a o c) (x) (b o d), sigma the Koszul sign in graded mode."""
    s._same(t)
    table = _leg_table(s.sig, s.leg_product)
    graded = s.product_mode == "graded"
    acc: dict[tuple[int, int], complex] = defaultdict(complex)
    for (a, b), x in s.terms.items():
        for (c, d), y in t.terms.items():
            sign = -1 if graded and (grade_of(b) * grade_of(c)) & 1 else 1
            w = sign * x * y
            for m1, c1 in table(a, c):
                for m2, c2 in table(b, d):
                    acc[(m1, m2)] += w * c1 * c2
    return TensorElement(s.sig, dict(acc), **s.modes())


@lru_cache(maxsize=None)
def _blade_coproduct(sig: Signature, mask: int, mode: str, product_mode: str):
    leg = COPRODUCT_MODES[mode]
    modes = {"product_mode": product_mode, "leg_product": leg}
    acc = TensorElement.one(sig, **modes)
    i = 0
    m = mask
    while m:
        if m & 1:
            e = 1 << i
            acc = tmul(acc, TensorElement(sig, {(e, 0): 1, (0, e): 1}, **modes))
        m >>= 1
        i += 1
    return acc


def coproduct(psi: Multivector, mode: str = "grassmann", product_mode: str = "graded") -> TensorElement:
    if mode not in COPRODUCT_MODES:
        raise ValueError(f"mode must be one of {sorted(COPRODUCT_MODES)}")
    acc: dict[tuple[int, int], complex] = defaultdict(complex)
    for m, c in psi.terms.items():
        for k, w in _blade_coproduct(psi.sig, m, mode, product_mode).terms.items():
            acc[k] += c * w
    return TensorElement(psi.sig, dict(acc), product_mode=product_mode, leg_product=COPRODUCT_MODES[mode])


def counit(psi: Multivector) -> complex:
    return psi.scalar_part()


def antipode(psi: Multivector) -> Multivector:
    return involute("grade", psi)


def _apply_left(t: TensorElement, f) -> TensorElement:
    acc: dict[tuple[int, int], complex] = defaultdict(complex)
    for (ma, mb), c in t.terms.items():
        for m, w in f(Multivector(t.sig, {ma: 1})).terms.items():
            acc[(m, mb)] += c * w
    return TensorElement(t.sig, dict(acc), **t.modes())


def _apply_right(t: TensorElement, f) -> TensorElement:
    acc: dict[tuple[int, int], complex] = defaultdict(complex)
    for (ma, mb), c in t.terms.items():
        for m, w in f(Multivector(t.sig, {mb: 1})).terms.items():
            acc[(ma, m)] += c * w
    return TensorElement(t.sig, dict(acc), **t.modes())


def multiply_legs(t: TensorElement, leg: str = "wedge") -> Multivector:
    table = _leg_table(t.sig, leg)
    acc: dict[int, complex] = defaultdict(complex)
    for (ma, mb), c in t.terms.items():
        for m, w in table(ma, mb):
            acc[m] += c * w
    return Multivector(t.sig, acc)


def hopf_check(sig: Signature, mode: str = "grassmann") -> dict[str, float]:
    """Max residual of each Hopf axiom over all basis blades."""
    if sig.n > 6:
        raise ValueError("hopf_check supports n <= 6")
    res = dict.fromkeys(("coassociativity", "counit_left", "counit_right",
                         "antipode_left", "antipode_right", "antipode_involution"), 0.0)
    leg = COPRODUCT_MODES[mode]

    def delta_blade(mask):
        return _blade_coproduct(sig, mask, mode, "graded")

    for mask in range(1 << sig.n):
        x = Multivector(sig, {mask: 1})
        dx = delta_blade(mask)
        left3: dict = defaultdict(complex)
        right3: dict = defaultdict(complex)
        for (a, b), c in dx.terms.items():
            for (a1, a2), w in delta_blade(a).terms.items():
                left3[(a1, a2, b)] += c * w
            for (b1, b2), w in delta_blade(b).terms.items():
                right3[(a, b1, b2)] += c * w
        keys = set(left3) | set(right3)
        res["coassociativity"] = max(res["coassociativity"],
                                     max((abs(left3.get(k, 0) - right3.get(k, 0)) for k in keys), default=0.0))

        cl = Multivector(sig, {})
        cr = Multivector(sig, {})
        for (a, b), c in dx.terms.items():
            if a == 0:
                cl = cl + Multivector(sig, {b: c})
            if b == 0:
                cr = cr + Multivector(sig, {a: c})
        res["counit_left"] = max(res["counit_left"], (cl - x).norm())
        res["counit_right"] = max(res["counit_right"], (cr - x).norm())

        unit = Multivector.scalar(sig, counit(x))
        sl = multiply_legs(_apply_left(dx, antipode), leg)
        sr = multiply_legs(_apply_right(dx, antipode), leg)
        res["antipode_left"] = max(res["antipode_left"], (sl - unit).norm())
        res["antipode_right"] = max(res["antipode_right"], (sr - unit).norm())
        res["antipode_involution"] = max(res["antipode_involution"], (antipode(antipode(x)) - x).norm())
    return res
