"""2x2 matrices whose entries are multivectors of a common (reduced) algebra."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .mvcore import DEFAULT_TOL, Multivector, Signature, gmul

Product = Callable[[Multivector, Multivector], Multivector]


@dataclass(frozen=True, eq=False)
class Mat2:
    rows: tuple[tuple[Multivector, Multivector], tuple[Multivector, Multivector]]
    product: Product = gmul

    @classmethod
    def of(cls, sig: Signature, m11, m12, m21, m22, product: Product = gmul) -> "Mat2":
        def lift(x):
            return x if isinstance(x, Multivector) else Multivector.scalar(sig, x)
        return cls(((lift(m11), lift(m12)), (lift(m21), lift(m22))), product)

    @classmethod
    def identity(cls, sig: Signature, product: Product = gmul) -> "Mat2":
        return cls.of(sig, 1, 0, 0, 1, product)

    @property
    def sig(self) -> Signature:
        return self.rows[0][0].sig

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def map(self, f) -> "Mat2":
        return Mat2(tuple(tuple(f(x) for x in row) for row in self.rows), self.product)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        p = self.product
        r = [[p(self[i, 0], other[0, j]) + p(self[i, 1], other[1, j]) for j in range(2)]
             for i in range(2)]
        return Mat2(((r[0][0], r[0][1]), (r[1][0], r[1][1])), p)

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                    self.product)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return self + other.scale(-1)

    def __neg__(self) -> "Mat2":
        return self.scale(-1)

    def scale(self, c) -> "Mat2":
        return self.map(lambda x: x * c)

    def norm(self) -> float:
        return max(x.norm() for row in self.rows for x in row)

    def approx_eq(self, other: "Mat2", tol: float = DEFAULT_TOL) -> bool:
        return (self - other).norm() <= tol

    def __str__(self):
        return "[[{}, {}], [{}, {}]]".format(*(str(x) for row in self.rows for x in row))

    __repr__ = __str__
