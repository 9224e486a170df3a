"""
Exact arithmetic in GF(p^k) on top of :mod:`galois`.

Elements travel through the rest of the package as their canonical integer
encoding ``e = sum(a_i * p**i)``; every computation builds a ``galois``
field array from those integers and converts back.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Type, Union

import galois
import numpy as np

from .errors import DivisionByZero, NonPrimeCharacteristic, UnsupportedSize

MAX_ORDER = 2 ** 16

Row = Tuple[int, ...]


@lru_cache(maxsize=None)
def _galois_field(p: int, k: int) -> Type[galois.FieldArray]:
    # The default (Conway) modulus: t^2+t+1 for GF(4), t^2+2t+2 for GF(9)
    return galois.GF(p ** k)


@dataclass(frozen=True)
class Field:
    p: int
    k: int = 1

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def GF(self) -> Type[galois.FieldArray]:
        return _galois_field(self.p, self.k)

    @property
    def modulus(self) -> Tuple[int, ...]:
        """
        Coefficients of the defining polynomial over GF(p), lowest degree
        first.
        """
        coeffs = self.GF.irreducible_poly.coeffs
        return tuple(int(c) for c in coeffs[::-1])

    def __call__(self, values) -> galois.FieldArray:
        return self.GF(values)

    def __str__(self):
        return f'GF({self.q})'

    def elements(self) -> range:
        return range(self.q)

    def zeros(self, rows: int, cols: int) -> galois.FieldArray:
        return self.GF.Zeros((rows, cols))

    def identity(self, size: int) -> galois.FieldArray:
        return self.GF.Identity(size)

    def automorphisms(self) -> List['FieldAutomorphism']:
        return [FieldAutomorphism(self, j) for j in range(self.k)]

    def rank(self, rows: Sequence[Sequence[int]]) -> int:
        if not len(rows):
            return 0
        return int(np.linalg.matrix_rank(self.GF(rows)))

    def normalize_rows(self, rows: galois.FieldArray) -> List[Optional[Row]]:
        """
        Scale every row so that its first nonzero entry is 1. Zero rows come
        back as ``None``.
        """
        raw = rows.view(np.ndarray)
        nonzero = raw != 0
        defined = nonzero.any(axis=1)
        lead = nonzero.argmax(axis=1)
        pivots = rows[np.arange(rows.shape[0]), lead]
        pivots[~defined] = 1
        normed = (rows / pivots[:, np.newaxis]).view(np.ndarray).tolist()
        return [
            tuple(row) if ok else None
            for row, ok in zip(normed, defined.tolist())
        ]

    @staticmethod
    def to_rows(matrix: galois.FieldArray) -> Tuple[Row, ...]:
        return tuple(tuple(row) for row in matrix.view(np.ndarray).tolist())


@dataclass(frozen=True)
class FieldAutomorphism:
    """The Frobenius power ``x -> x ** (p ** j)``."""

    field: Field
    j: int = 0

    def __post_init__(self):
        if not 0 <= self.j < self.field.k:
            raise ValueError(
                f'Frobenius exponent {self.j} out of range for {self.field}'
            )

    @property
    def power(self) -> int:
        return self.field.p ** self.j

    @property
    def order(self) -> int:
        return self.field.k // math.gcd(self.j, self.field.k)

    @property
    def is_identity(self) -> bool:
        return self.j == 0

    def inverse(self) -> 'FieldAutomorphism':
        return FieldAutomorphism(self.field, (-self.j) % self.field.k)

    def __call__(
        self, x: Union[int, galois.FieldArray]
    ) -> Union[int, galois.FieldArray]:
        if isinstance(x, galois.FieldArray):
            return x ** self.power
        return int(self.field.GF(x) ** self.power)


def field_new(p: int, k: int = 1) -> Field:
    if not galois.is_prime(p):
        raise NonPrimeCharacteristic(f'{p} is not a prime')
    if k < 1 or p ** k > MAX_ORDER:
        raise UnsupportedSize(
            f'GF({p}^{k}) is outside the supported range (order <= {MAX_ORDER})'
        )
    return Field(p, k)


_ops = {
    'add': lambda a, b: a + b,
    'sub': lambda a, b: a - b,
    'mul': lambda a, b: a * b,
    'div': lambda a, b: a / b,
}


def arith(field: Field, a: int, b: int, op: str) -> int:
    if op not in _ops:
        raise ValueError(f'Unknown field operation: {op}')
    if op == 'div' and b == 0:
        raise DivisionByZero(f'{a} / 0 in {field}')
    return int(_ops[op](field.GF(a), field.GF(b)))


def frobenius_apply(sigma: FieldAutomorphism, x: int) -> int:
    return sigma(x)


def automorphism_group(field: Field) -> List[FieldAutomorphism]:
    return field.automorphisms()


# vim:sw=4:ts=4:et:
