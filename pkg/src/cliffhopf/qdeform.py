"""
Quantum Clifford algebra Cl(V, B) with B = g + A, A antisymmetric.

The Wick map W_A is contraction by the exterior exponential of the 2-form
dual to A: on a blade it sums over all partial pairings of its indices, each
pair (i, j) contributing A_ij and the pairing sign.  It sends wedge monomials
to dotted-wedge monomials and intertwines the g- and B-Clifford products.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .blocks import Mat2
from .mvcore import (
    DEFAULT_TOL,
    AlgebraError,
    IndexOutOfRange,
    Multivector,
    Signature,
    SignatureMismatch,
    _bits,
    bilinear,
    contract,
    form_mul,
    gmul,
    grade_of,
    involute,
    wedge,
)


class NotAVector(AlgebraError):
    pass


class BadHyperbolicPair(AlgebraError):
    pass


class CrossTermDeformation(AlgebraError):
    pass


@dataclass(frozen=True, eq=False)
class Deformation:
    sig: Signature
    A: np.ndarray

    def __post_init__(self):
        A = np.array(self.A, dtype=complex)
        n = self.sig.n
        if A.shape != (n, n):
            raise ValueError(f"A must be {n}x{n}, got {A.shape}")
        if np.max(np.abs(A + A.T), initial=0.0) > 1e-14:
            raise ValueError("A must be antisymmetric")
        A.setflags(write=False)
        object.__setattr__(self, "A", A)

    @classmethod
    def zero(cls, sig: Signature) -> "Deformation":
        return cls(sig, np.zeros((sig.n, sig.n)))

    @classmethod
    def from_B(cls, sig: Signature, B) -> "Deformation":
        B = np.asarray(B, dtype=complex)
        return cls(sig, (B - B.T) / 2)

    @property
    def B(self) -> np.ndarray:
        return np.diag(np.array(self.sig.diag, dtype=complex)) + self.A

    def form(self) -> tuple[tuple[complex, ...], ...]:
        return tuple(tuple(complex(x) for x in row) for row in self.B)

    def a_form(self) -> tuple[tuple[complex, ...], ...]:
        return tuple(tuple(complex(x) for x in row) for row in self.A)

    def negated(self) -> "Deformation":
        return Deformation(self.sig, -self.A)

    def is_zero(self) -> bool:
        return not np.any(self.A)

    def restrict(self, keep: Sequence[int], sig: Signature) -> "Deformation":
        return Deformation(sig, self.A[np.ix_(list(keep), list(keep))])

    def to_json(self) -> dict:
        def enc(z):
            z = complex(z)
            return z.real if z.imag == 0 else [z.real, z.imag]
        return {"signature": list(self.sig.diag), "A": [[enc(z) for z in row] for row in self.A]}

    @classmethod
    def from_json(cls, obj, sig: Signature | None = None) -> "Deformation":
        if isinstance(obj, str):
            obj = json.loads(obj)
        diag = tuple(obj["signature"])
        if sig is None:
            sig = Signature.from_diag(diag)
        elif tuple(sig.diag) != diag:
            raise SignatureMismatch(f"deformation signature {diag} does not match {sig.diag}")

        def dec(z):
            if isinstance(z, (list, tuple)):
                return complex(z[0], z[1])
            if isinstance(z, str):
                return complex(z.replace("i", "j"))
            return complex(z)
        return cls(sig, np.array([[dec(z) for z in row] for row in obj["A"]], dtype=complex))


def _check_sig(x: Multivector, d: Deformation):
    if x.sig != d.sig:
        raise SignatureMismatch(f"{x.sig.labels} vs {d.sig.labels}")


def bcontract(u: Multivector, psi: Multivector, d: Deformation) -> Multivector:
    """u _|_B psi = u _|_g psi + u _|_A psi for a vector u."""
    _check_sig(u, d)
    _check_sig(psi, d)
    if u.grades() - {1}:
        raise NotAVector("bcontract needs a grade-1 left argument")
    return contract("left", u, psi, d.form())


def bcontract_general(a: Multivector, b: Multivector, d: Deformation) -> Multivector:
    _check_sig(a, d)
    return contract("left", a, b, d.form())


def bmul(a: Multivector, b: Multivector, d: Deformation) -> Multivector:
    """Clifford product for the bilinear form B = g + A."""
    _check_sig(a, d)
    return form_mul(a, b, d.form())


@lru_cache(maxsize=None)
def _pairings(indices: tuple[int, ...]) -> tuple[tuple[int, tuple[tuple[int, int], ...], tuple[int, ...]], ...]:
    """All partial pairings of an ordered index tuple: (sign, pairs, leftover)."""
    if not indices:
        return ((1, (), ()),)
    first, rest = indices[0], indices[1:]
    out = []
    # first index stays unpaired: it keeps its leading position
    for s, pairs, left in _pairings(rest):
        # leftover first must be moved past the pair factors: pairs are even, no sign
        out.append((s, pairs, (first,) + left))
    for pos, partner in enumerate(rest):
        # bring partner next to first: pos transpositions
        sgn = -1 if pos & 1 else 1
        remaining = rest[:pos] + rest[pos + 1:]
        for s, pairs, left in _pairings(remaining):
            out.append((sgn * s, ((first, partner),) + pairs, left))
    return tuple(out)


def _wick_blade(mask: int, A: np.ndarray) -> dict[int, complex]:
    out: dict[int, complex] = defaultdict(complex)
    for sign, pairs, left in _pairings(tuple(_bits(mask))):
        c = complex(sign)
        for i, j in pairs:
            c *= A[i, j]
            if c == 0:
                break
        if c != 0:
            m = 0
            for i in left:
                m |= 1 << i
            out[m] += c
    return out


def wick(d: Deformation, direction: str, psi: Multivector) -> Multivector:
    """Apply W_A (forward) or W_{-A} (inverse)."""
    _check_sig(psi, d)
    if direction == "forward":
        A = d.A
    elif direction == "inverse":
        A = -d.A
    else:
        raise ValueError(f"direction must be 'forward' or 'inverse', not {direction!r}")
    acc: dict[int, complex] = defaultdict(complex)
    for m, c in psi.terms.items():
        for m2, w in _wick_blade(m, A).items():
            acc[m2] += c * w
    return Multivector(psi.sig, acc)


def dotted_wedge(u: Multivector, v: Multivector, d: Deformation) -> Multivector:
    """Dotted wedge u ^. v; for vectors this is u ^ v + A(u, v)."""
    _check_sig(u, d)
    _check_sig(v, d)
    if not (u.grades() - {1} or v.grades() - {1}):
        A = d.A
        scalar = sum(cu * cv * A[_bits(mu)[0], _bits(mv)[0]]
                     for mu, cu in u.terms.items() for mv, cv in v.terms.items())
        return wedge(u, v) + complex(scalar)
    return wick(d, "forward", wedge(wick(d, "inverse", u), wick(d, "inverse", v)))


def wick_iso_check(d: Deformation, blade_indices: Sequence[int]) -> float:
    """|| e_i1 o_B ... o_B e_ik - W_A(e_i1 o_g ... o_g e_ik) || for ascending indices."""
    idx = list(blade_indices)
    for i in idx:
        if not 0 <= i < d.sig.n:
            raise IndexOutOfRange(f"basis index {i} out of range")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError("indices must be strictly ascending")
    lhs = Multivector.scalar(d.sig, 1)
    rhs = Multivector.scalar(d.sig, 1)
    for i in idx:
        e = Multivector.basis(d.sig, i)
        lhs = bmul(lhs, e, d)
        rhs = gmul(rhs, e)
    return (lhs - wick(d, "forward", rhs)).norm()


# --- periodicity split Cl(p,q) -> M(2, Cl(p-1,q-1)) --------------------------------------

@dataclass(frozen=True)
class _Split:
    sig: Signature
    plus: int
    minus: int
    keep: tuple[int, ...]
    reduced: Signature


def _split_setup(sig: Signature, pair, reduced: Signature | None) -> _Split:
    plus, minus = pair
    if plus == minus or not (0 <= plus < sig.n and 0 <= minus < sig.n):
        raise BadHyperbolicPair(f"bad index pair {pair}")
    if sig.diag[plus] != 1 or sig.diag[minus] != -1:
        raise BadHyperbolicPair(
            f"need diag[plus]=+1 and diag[minus]=-1, got {sig.diag[plus]}, {sig.diag[minus]}")
    keep = tuple(k for k in range(sig.n) if k not in (plus, minus))
    want = tuple(sig.diag[k] for k in keep)
    if reduced is None:
        reduced = Signature(want, tuple(sig.labels[k] for k in keep))
    elif reduced.diag != want:
        raise SignatureMismatch(f"reduced signature must be {want}, got {reduced.diag}")
    return _Split(sig, plus, minus, keep, reduced)


def _check_block(d: Deformation, s: _Split):
    M = (s.plus, s.minus)
    for i in s.keep:
        for j in M:
            if abs(d.A[i, j]) > 0:
                raise CrossTermDeformation(f"A has a cross term between e{i} and e{j}")


def _generator_images(s: _Split, product) -> dict[int, Mat2]:
    red = s.reduced
    imgs = {
        s.plus: Mat2.of(red, 0, 1, 1, 0, product),
        s.minus: Mat2.of(red, 0, -1, 1, 0, product),
    }
    for r, k in enumerate(s.keep):
        e = Multivector.basis(red, r)
        imgs[k] = Mat2.of(red, e, 0, 0, -e, product)
    return imgs


def _split_g(psi: Multivector, s: _Split) -> Mat2:
    imgs = _generator_images(s, gmul)
    red = s.reduced
    total = Mat2.of(red, 0, 0, 0, 0)
    for m, c in psi.terms.items():
        acc = Mat2.identity(red)
        for i in _bits(m):
            acc = acc @ imgs[i]
        total = total + acc.scale(c)
    return total


def periodicity_split(psi: Multivector, pair, d: Deformation | None = None,
                      reduced: Signature | None = None) -> Mat2:
    """Image of psi in 2x2 matrices over the algebra of the orthogonal complement of ``pair``.

    ``pair`` is (index with square +1, index with square -1); the plus vector
    maps to [[0,1],[1,0]], the minus vector to [[0,-1],[1,0]], every other
    generator e_k to diag(e_k, -e_k).
    """
    s = _split_setup(psi.sig, pair, reduced)
    if d is None or d.is_zero():
        return _split_g(psi, s)
    _check_sig(psi, d)
    _check_block(d, s)
    dn = d.restrict(s.keep, s.reduced)
    mat = _split_g(wick(d, "inverse", psi), s)
    return Mat2(mat.map(lambda x: wick(dn, "forward", x)).rows, lambda a, b: bmul(a, b, dn))


def _lift(x: Multivector, s: _Split) -> Multivector:
    terms = {}
    for m, c in x.terms.items():
        full = 0
        for r in _bits(m):
            full |= 1 << s.keep[r]
        terms[full] = c
    return Multivector(s.sig, terms)


def periodicity_assemble(mat: Mat2, pair, sig: Signature, d: Deformation | None = None) -> Multivector:
    """Inverse of :func:`periodicity_split`."""
    s = _split_setup(sig, pair, mat.sig)
    if d is not None and not d.is_zero():
        if d.sig != sig:
            raise SignatureMismatch("deformation signature differs")
        _check_block(d, s)
        dn = d.restrict(s.keep, s.reduced)
        plain = mat.map(lambda x: wick(dn, "inverse", x))
        return wick(d, "forward", periodicity_assemble(Mat2(plain.rows), pair, sig))
    ep = Multivector.basis(sig, s.plus)
    em = Multivector.basis(sig, s.minus)
    e_plus = (ep + em) / 2   # [[0,0],[1,0]]
    e_minus = (ep - em) / 2  # [[0,1],[0,0]]
    u11 = gmul(e_minus, e_plus)
    u22 = gmul(e_plus, e_minus)
    hat = lambda x: involute("grade", x)  # noqa: E731
    return (gmul(_lift(mat[0, 0], s), u11) + gmul(_lift(mat[0, 1], s), e_minus)
            + gmul(_lift(hat(mat[1, 0]), s), e_plus) + gmul(_lift(hat(mat[1, 1]), s), u22))


def random_antisymmetric(n: int, rng: np.random.Generator, complex_entries: bool = False) -> np.ndarray:
    X = rng.uniform(-1, 1, (n, n))
    if complex_entries:
        X = X + 1j * rng.uniform(-1, 1, (n, n))
    return np.triu(X, 1) - np.triu(X, 1).T
