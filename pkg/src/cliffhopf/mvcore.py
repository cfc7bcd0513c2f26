"""
Sparse multivector engine over Lambda(R^{p,q}).

Blades are stored as bitmasks (bit i set means basis vector i is present,
canonical ascending order) mapped to complex coefficients.  Every product is
derived from a bilinear form through the Chevalley recursion

    (e_i ^ rest) o X = e_i o (rest o X) - (e_i _| rest) o X,
    e_i o X = e_i _| X + e_i ^ X,

so the same code serves the orthogonal Clifford product and the deformed
products of :mod:`cliffhopf.qdeform`.
"""

from __future__ import annotations

import cmath
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_TOL = 1e-12
MAX_DIM = 8


class AlgebraError(Exception):
    """Base class for errors raised by the algebra engine."""


class RepeatedIndex(AlgebraError):
    pass


class IndexOutOfRange(AlgebraError):
    pass


class SignatureMismatch(AlgebraError):
    pass


class GradeOutOfRange(AlgebraError):
    pass


class SeriesNotConverged(AlgebraError):
    def __init__(self, func, last_norm):
        super().__init__(f"{func} series did not converge (last term norm {last_norm:.3e})")
        self.last_norm = last_norm


@dataclass(frozen=True)
class Tolerance:
    eq_tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.eq_tol < 0:
            raise ValueError("eq_tol must be non-negative")


@dataclass(frozen=True)
class Signature:
    """Diagonal metric (entries +1/-1) with display labels per basis vector."""

    diag: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(int(s) for s in self.diag))
        object.__setattr__(self, "labels", tuple(self.labels))
        if any(s not in (1, -1) for s in self.diag):
            raise ValueError(f"signature entries must be +1 or -1, got {self.diag}")
        if len(self.labels) != len(self.diag):
            raise ValueError("one label per basis vector is required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")
        if len(self.diag) > MAX_DIM:
            raise ValueError(f"at most {MAX_DIM} basis vectors are supported")

    @classmethod
    def from_diag(cls, diag: Sequence[int], prefix: str = "e", start: int = 1) -> "Signature":
        return cls(tuple(diag), tuple(f"{prefix}{k + start}" for k in range(len(diag))))

    @property
    def n(self) -> int:
        return len(self.diag)

    @property
    def pq(self) -> tuple[int, int]:
        return self.diag.count(1), self.diag.count(-1)

    def metric(self, i: int, j: int) -> int:
        return self.diag[i] if i == j else 0

    def form(self) -> tuple[tuple[complex, ...], ...]:
        """The metric as a hashable matrix, usable as a product form key."""
        n = self.n
        return tuple(tuple(complex(self.metric(i, j)) for j in range(n)) for i in range(n))

    def index(self, label: str) -> int:
        return self.labels.index(label)


CL13 = Signature((1, -1, -1, -1), ("gamma0", "gamma1", "gamma2", "gamma3"))
CL30 = Signature((1, 1, 1), ("e1", "e2", "e3"))
CL41 = Signature((-1, 1, 1, 1, 1), ("E0", "E1", "E2", "E3", "E4"))
CL24 = Signature((1, -1, -1, -1, -1, 1), ("eps0", "eps1", "eps2", "eps3", "eps4", "eps5"))

PRESETS = {"cl13": CL13, "cl30": CL30, "cl41": CL41, "cl24": CL24}


def preset(name: str) -> Signature:
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown signature preset {name!r}; known: {sorted(PRESETS)}") from None


def grade_of(mask: int) -> int:
    return bin(mask).count("1")


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def wedge_sign(a: int, b: int) -> int:
    """Sign of reordering e_a ^ e_b into canonical order (0 if they overlap)."""
    if a & b:
        return 0
    swaps = 0
    a >>= 1
    while a:
        swaps += grade_of(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


class _Form:
    """Memoised blade-level products for one bilinear form B (B[i][j] = e_i _| e_j)."""

    def __init__(self, matrix: tuple[tuple[complex, ...], ...]):
        self.B = matrix
        self.n = len(matrix)
        self._mul: dict = {}
        self._lc: dict = {}
        self._rc: dict = {}

    def vlc(self, i: int, mask: int) -> dict[int, complex]:
        """e_i _| e_mask for a single basis vector."""
        out: dict[int, complex] = {}
        row = self.B[i]
        for p, j in enumerate(_bits(mask)):
            c = row[j]
            if c != 0:
                out[mask ^ (1 << j)] = -c if p & 1 else c
        return out

    def vrc(self, mask: int, i: int) -> dict[int, complex]:
        """e_mask |_ e_i for a single basis vector."""
        out: dict[int, complex] = {}
        bits = _bits(mask)
        k = len(bits)
        for p, j in enumerate(bits):
            c = self.B[j][i]
            if c != 0:
                out[mask ^ (1 << j)] = -c if (k - 1 - p) & 1 else c
        return out

    def vmul(self, i: int, mask: int) -> dict[int, complex]:
        out = self.vlc(i, mask)
        s = wedge_sign(1 << i, mask)
        if s:
            m = mask | (1 << i)
            out[m] = out.get(m, 0) + s
        return out

    def mul(self, a: int, b: int) -> tuple[tuple[int, complex], ...]:
        key = (a, b)
        hit = self._mul.get(key)
        if hit is not None:
            return hit
        if a == 0:
            res = ((b, 1 + 0j),)
        else:
            i = (a & -a).bit_length() - 1
            rest = a ^ (1 << i)
            acc: dict[int, complex] = defaultdict(complex)
            for m, c in self.mul(rest, b):
                for m2, c2 in self.vmul(i, m).items():
                    acc[m2] += c * c2
            for m, c in self.vlc(i, rest).items():
                for m2, c2 in self.mul(m, b):
                    acc[m2] -= c * c2
            res = tuple((m, c) for m, c in sorted(acc.items()) if c != 0)
        self._mul[key] = res
        return res

    def lcontract(self, a: int, b: int) -> tuple[tuple[int, complex], ...]:
        # (e_i ^ rest) _| X = e_i _| (rest _| X)
        key = (a, b)
        hit = self._lc.get(key)
        if hit is not None:
            return hit
        if a == 0:
            res = ((b, 1 + 0j),)
        else:
            i = (a & -a).bit_length() - 1
            acc: dict[int, complex] = defaultdict(complex)
            for m, c in self.lcontract(a ^ (1 << i), b):
                for m2, c2 in self.vlc(i, m).items():
                    acc[m2] += c * c2
            res = tuple((m, c) for m, c in sorted(acc.items()) if c != 0)
        self._lc[key] = res
        return res

    def rcontract(self, a: int, b: int) -> tuple[tuple[int, complex], ...]:
        # X |_ (e_i ^ rest) = (X |_ e_i) |_ rest
        key = (a, b)
        hit = self._rc.get(key)
        if hit is not None:
            return hit
        if b == 0:
            res = ((a, 1 + 0j),)
        else:
            i = (b & -b).bit_length() - 1
            acc: dict[int, complex] = defaultdict(complex)
            for m, c in self.vrc(a, i).items():
                for m2, c2 in self.rcontract(m, b ^ (1 << i)):
                    acc[m2] += c * c2
            res = tuple((m, c) for m, c in sorted(acc.items()) if c != 0)
        self._rc[key] = res
        return res


@lru_cache(maxsize=256)
def get_form(matrix: tuple[tuple[complex, ...], ...]) -> _Form:
    return _Form(matrix)


def _coerce(x) -> complex:
    return complex(x)


def _is_number(x) -> bool:
    return isinstance(x, (int, float, complex, np.number)) and not isinstance(x, bool)


def _fmt_coeff(c: complex) -> str:
    if c.imag == 0:
        return format(c.real, ".12g")
    if c.real == 0:
        return format(c.imag, ".12g") + "i"
    return f"({c.real:.12g}{c.imag:+.12g}i)"


class Multivector:
    """Immutable sparse multivector: blade mask -> complex coefficient."""

    __slots__ = ("sig", "terms")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, sig: Signature, terms: Mapping[int, complex] | None = None):
        limit = 1 << sig.n
        clean: dict[int, complex] = {}
        if terms:
            for m, c in terms.items():
                if not 0 <= m < limit:
                    raise IndexOutOfRange(f"blade mask {m} out of range for n={sig.n}")
                c = _coerce(c)
                if c != 0:
                    clean[m] = c
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # constructors
    @classmethod
    def scalar(cls, sig: Signature, c=1.0) -> "Multivector":
        return cls(sig, {0: c})

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls(sig)

    @classmethod
    def basis(cls, sig: Signature, i: int | str) -> "Multivector":
        if isinstance(i, str):
            i = sig.index(i)
        if not 0 <= i < sig.n:
            raise IndexOutOfRange(f"basis index {i} out of range")
        return cls(sig, {1 << i: 1})

    @classmethod
    def vector(cls, sig: Signature, coords: Sequence) -> "Multivector":
        if len(coords) != sig.n:
            raise ValueError("one coordinate per basis vector is required")
        return cls(sig, {1 << i: c for i, c in enumerate(coords)})

    @classmethod
    def from_dense(cls, sig: Signature, values: Sequence) -> "Multivector":
        return cls(sig, {m: c for m, c in enumerate(values)})

    def to_dense(self) -> np.ndarray:
        out = np.zeros(1 << self.sig.n, dtype=complex)
        for m, c in self.terms.items():
            out[m] = c
        return out

    # inspection
    def __getitem__(self, mask: int) -> complex:
        return self.terms.get(mask, 0j)

    def scalar_part(self) -> complex:
        return self.terms.get(0, 0j)

    def grades(self) -> set[int]:
        return {grade_of(m) for m in self.terms}

    def norm(self) -> float:
        """Max absolute coefficient."""
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.norm() <= tol

    def is_scalar(self, tol: float = DEFAULT_TOL) -> bool:
        return all(abs(c) <= tol for m, c in self.terms.items() if m)

    def approx_eq(self, other, tol: float = DEFAULT_TOL) -> bool:
        return (self - other).norm() <= tol

    def normalize(self, tol: float = DEFAULT_TOL) -> "Multivector":
        return Multivector(self.sig, {m: c for m, c in self.terms.items() if abs(c) > tol})

    def grade(self, k: int) -> "Multivector":
        return grade_project(self, k)

    # arithmetic
    def _lift(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            if other.sig != self.sig:
                raise SignatureMismatch(f"{self.sig.labels} vs {other.sig.labels}")
            return other
        if _is_number(other):
            return Multivector.scalar(self.sig, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return Multivector(self.sig, acc)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.sig, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_number(other):
            c = complex(other)
            return Multivector(self.sig, {m: v * c for m, v in self.terms.items()})
        if isinstance(other, Multivector):
            return gmul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_number(other):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if _is_number(other):
            return self * (1 / complex(other))
        return NotImplemented

    def __xor__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return wedge(self, other)

    def __rxor__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return wedge(other, self)

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.sig == other.sig and self.terms == other.terms
        if _is_number(other):
            return self.terms == ({0: complex(other)} if other != 0 else {})
        return NotImplemented

    def reverse(self) -> "Multivector":
        return involute("reversion", self)

    def gradeinv(self) -> "Multivector":
        return involute("grade", self)

    def conj(self) -> "Multivector":
        return involute("conjugation", self)

    def blade_label(self, mask: int) -> str:
        return "^".join(self.sig.labels[i] for i in _bits(mask))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (grade_of(m), m)):
            c = self.terms[m]
            neg = c.imag == 0 and c.real < 0
            body = _fmt_coeff(-c if neg else c)
            if m:
                body += "·" + self.blade_label(m)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Multivector({self})"


def _check_same(a: Multivector, b: Multivector):
    if a.sig != b.sig:
        raise SignatureMismatch(f"{a.sig.labels} vs {b.sig.labels}")


def bilinear(a: Multivector, b: Multivector, table) -> Multivector:
    """Extend a blade-level table(ma, mb) -> ((mask, coeff), ...) bilinearly."""
    _check_same(a, b)
    acc: dict[int, complex] = defaultdict(complex)
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            for m, s in table(ma, mb):
                acc[m] += ca * cb * s
    return Multivector(a.sig, acc)


def blade(sig: Signature, indices: Sequence[int], coeff=1.0) -> Multivector:
    """coeff * e_{i1} ^ ... ^ e_{ik}, reordered canonically with permutation sign."""
    idx = list(indices)
    for i in idx:
        if not 0 <= i < sig.n:
            raise IndexOutOfRange(f"basis index {i} out of range for n={sig.n}")
    if len(set(idx)) != len(idx):
        raise RepeatedIndex(f"repeated basis index in {idx}")
    sign = 1
    for x in range(len(idx)):
        for y in range(x + 1, len(idx)):
            if idx[x] > idx[y]:
                sign = -sign
    mask = 0
    for i in idx:
        mask |= 1 << i
    return Multivector(sig, {mask: sign * complex(coeff)})


def _wedge_table(a: int, b: int):
    s = wedge_sign(a, b)
    return ((a | b, s),) if s else ()


def wedge(a: Multivector, b: Multivector) -> Multivector:
    return bilinear(a, b, _wedge_table)


def contract(side: str, a: Multivector, b: Multivector, form=None) -> Multivector:
    """Left (a _| b) or right (a |_ b) contraction with respect to the metric or a given form."""
    f = get_form(form if form is not None else a.sig.form())
    if side == "left":
        return bilinear(a, b, f.lcontract)
    if side == "right":
        return bilinear(a, b, f.rcontract)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def form_mul(a: Multivector, b: Multivector, form) -> Multivector:
    return bilinear(a, b, get_form(form).mul)


def gmul(a: Multivector, b: Multivector) -> Multivector:
    """Clifford product for the diagonal metric of the signature."""
    _check_same(a, b)
    return bilinear(a, b, get_form(a.sig.form()).mul)


_INVOLUTION_SIGN = {
    "reversion": lambda k: -1 if (k * (k - 1) // 2) & 1 else 1,
    "grade": lambda k: -1 if k & 1 else 1,
    "conjugation": lambda k: -1 if (k * (k + 1) // 2) & 1 else 1,
}


def involute(kind: str, a: Multivector) -> Multivector:
    try:
        sign = _INVOLUTION_SIGN[kind]
    except KeyError:
        raise ValueError(f"unknown involution {kind!r}") from None
    return Multivector(a.sig, {m: sign(grade_of(m)) * c for m, c in a.terms.items()})


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.sig.n:
        raise GradeOutOfRange(f"grade {k} outside 0..{a.sig.n}")
    return Multivector(a.sig, {m: c for m, c in a.terms.items() if grade_of(m) == k})


def gpair(a: Multivector, b: Multivector) -> complex:
    """Extended metric g(a, b): Gram determinant on equal-grade blades, zero across grades."""
    _check_same(a, b)
    total = 0j
    diag = a.sig.diag
    for m, ca in a.terms.items():
        cb = b.terms.get(m)
        if cb is None:
            continue
        s = 1
        for i in _bits(m):
            s *= diag[i]
        total += s * ca * cb
    return total


def series_apply(f: str, a: Multivector, max_deg: int = 32, tol: float = DEFAULT_TOL,
                 return_terms: bool = False, product=None):
    """Partial power series of exp, sinh or cosh under the Clifford product.

    Stops as soon as a power term a^k/k! falls to ``tol``; with ``return_terms``
    also returns how many degrees were summed before that happened.
    ``product`` replaces the Clifford product (e.g. a deformed one).
    """
    mul = gmul if product is None else product
    if f not in ("exp", "sinh", "cosh"):
        raise ValueError(f"unknown series {f!r}")
    if max_deg < 1:
        raise ValueError("max_deg must be >= 1")
    total = Multivector.zero(a.sig)
    term = Multivector.scalar(a.sig, 1)
    used = 0
    for k in range(max_deg + 1):
        if k > 0:
            term = mul(term, a) / k
        if term.norm() <= tol:
            break
        if f == "exp" or (f == "sinh" and k % 2 == 1) or (f == "cosh" and k % 2 == 0):
            total = total + term
        used = k + 1
    else:
        last = mul(term, a) / (max_deg + 1)
        if last.norm() > tol:
            raise SeriesNotConverged(f, last.norm())
    return (total, used) if return_terms else total


def scalar_function(f: str, z: complex) -> complex:
    return {"exp": cmath.exp, "sinh": cmath.sinh, "cosh": cmath.cosh}[f](z)


def basis_vectors(sig: Signature) -> list[Multivector]:
    return [Multivector.basis(sig, i) for i in range(sig.n)]


def pseudoscalar(sig: Signature) -> Multivector:
    return Multivector(sig, {(1 << sig.n) - 1: 1})


def all_blades(sig: Signature) -> Iterable[Multivector]:
    for m in range(1 << sig.n):
        yield Multivector(sig, {m: 1})


def random_multivector(sig: Signature, rng: np.random.Generator, complex_coeffs: bool = False,
                       grades: Iterable[int] | None = None) -> Multivector:
    keep = set(grades) if grades is not None else None
    terms = {}
    for m in range(1 << sig.n):
        if keep is not None and grade_of(m) not in keep:
            continue
        c = rng.uniform(-1, 1)
        if complex_coeffs:
            c = complex(c, rng.uniform(-1, 1))
        terms[m] = c
    return Multivector(sig, terms)
