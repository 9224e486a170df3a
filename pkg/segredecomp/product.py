"""
The product space PG(n, F) x PG(m, F) as a semilinear space.
"""

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import FrozenSet, Iterable, Tuple, Union

from .gf import Field
from .projspace import ProjPoint, Subspace, enumerate_points, enumerate_subspaces, line_through

_product_point_regex = re.compile(r'^\s*(\([^()]*\))\s*x\s*(\([^()]*\))\s*$')


@dataclass(frozen=True, order=True)
class ProductPoint:
    x: ProjPoint
    y: ProjPoint

    def __str__(self):
        return f'{self.x}x{self.y}'

    @classmethod
    def parse(cls, text: str) -> 'ProductPoint':
        m = _product_point_regex.match(text)
        if not m:
            raise ValueError(f'Invalid product point literal: {text!r}')
        return cls(ProjPoint.parse(m.group(1)), ProjPoint.parse(m.group(2)))


class LineKind(Enum):
    FIXED_FIRST = 'fixed-first'
    FIXED_SECOND = 'fixed-second'


@dataclass(frozen=True)
class ProductLine:
    """Either ``fixed x line`` or ``line x fixed``."""

    kind: LineKind
    fixed: ProjPoint
    line: Subspace

    def points(self) -> Tuple[ProductPoint, ...]:
        if self.kind == LineKind.FIXED_FIRST:
            return tuple(ProductPoint(self.fixed, y) for y in self.line.points())
        return tuple(ProductPoint(x, self.fixed) for x in self.line.points())

    def __contains__(self, point: ProductPoint) -> bool:
        if self.kind == LineKind.FIXED_FIRST:
            return point.x == self.fixed and point.y in self.line
        return point.y == self.fixed and point.x in self.line

    def __str__(self):
        if self.kind == LineKind.FIXED_FIRST:
            return f'{self.fixed}x{self.line}'
        return f'{self.line}x{self.fixed}'


class Collinearity(Enum):
    NOT_COLLINEAR = 'not-collinear'
    EQUAL = 'equal'


def collinear(
    field: Field, a: ProductPoint, b: ProductPoint
) -> Union[Collinearity, ProductLine]:
    if a == b:
        return Collinearity.EQUAL
    if a.x == b.x:
        return ProductLine(LineKind.FIXED_FIRST, a.x, line_through(field, a.y, b.y))
    if a.y == b.y:
        return ProductLine(LineKind.FIXED_SECOND, a.y, line_through(field, a.x, b.x))
    return Collinearity.NOT_COLLINEAR


def product_join(
    field: Field, first: Iterable[ProductPoint], second: Iterable[ProductPoint]
) -> FrozenSet[ProductPoint]:
    """
    ``first`` union ``second`` union every line joining two distinct
    collinear points, one from each set. A single step, not a closure.
    """
    first, second = frozenset(first), frozenset(second)
    joined = set(first | second)

    for a in first:
        for b in second:
            line = collinear(field, a, b)
            if isinstance(line, ProductLine):
                joined.update(line.points())

    return frozenset(joined)


@lru_cache(maxsize=32)
def enumerate_product_points(field: Field, n: int, m: int) -> Tuple[ProductPoint, ...]:
    return tuple(
        ProductPoint(x, y)
        for x in enumerate_points(n, field)
        for y in enumerate_points(m, field)
    )


@lru_cache(maxsize=32)
def enumerate_product_lines(n: int, m: int, field: Field) -> Tuple[ProductLine, ...]:
    first = [
        ProductLine(LineKind.FIXED_FIRST, x, g)
        for x in enumerate_points(n, field)
        for g in enumerate_subspaces(field, m, 1)
    ]
    second = [
        ProductLine(LineKind.FIXED_SECOND, y, g)
        for g in enumerate_subspaces(field, n, 1)
        for y in enumerate_points(m, field)
    ]
    return tuple(first + second)


# vim:sw=4:ts=4:et:
