"""
Points and subspaces of PG(d, F).

Points are normalised homogeneous coordinate tuples (first nonzero entry is
1). Subspaces are stored through their reduced row-echelon basis, so two
subspaces are equal iff their bases are.
"""

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from .errors import EqualPoints, NotComplementary, ZeroVector
from .gf import Field, Row

_point_regex = re.compile(r'^\(\s*(\d+(\s*:\s*\d+)*)\s*\)$')


@dataclass(frozen=True, order=True)
class ProjPoint:
    coords: Row

    @property
    def dimension(self) -> int:
        return len(self.coords) - 1

    def vector(self, field: Field) -> galois.FieldArray:
        return field(list(self.coords))

    def __str__(self):
        return '(' + ':'.join(str(c) for c in self.coords) + ')'

    @classmethod
    def parse(cls, text: str) -> 'ProjPoint':
        m = _point_regex.match(text.strip())
        if not m:
            raise ValueError(f'Invalid point literal: {text!r}')
        return cls(tuple(int(c) for c in m.group(1).split(':')))


def normalize(
    field: Field, v: Union[Sequence[int], galois.FieldArray]
) -> ProjPoint:
    vector = v if isinstance(v, galois.FieldArray) else field(list(v))
    (row,) = field.normalize_rows(vector.reshape(1, -1))
    if row is None:
        raise ZeroVector('The zero vector does not represent a point')
    return ProjPoint(row)


@lru_cache(maxsize=32)
def enumerate_points(d: int, field: Field) -> Tuple[ProjPoint, ...]:
    """
    All the points of PG(d, F), sorted by their coordinate encodings.
    """
    points = [
        ProjPoint((0,) * lead + (1,) + tail)
        for lead in range(d + 1)
        for tail in itertools.product(field.elements(), repeat=d - lead)
    ]
    return tuple(sorted(points))


@dataclass(frozen=True)
class Subspace:
    field: Field
    ambient: int
    basis: Tuple[Row, ...] = ()

    @classmethod
    def from_vectors(
        cls, field: Field, ambient: int, vectors: Iterable[Sequence[int]]
    ) -> 'Subspace':
        rows = [tuple(v) for v in vectors]
        if not rows:
            return cls(field, ambient)

        reduced = Field.to_rows(field(rows).row_reduce())
        return cls(field, ambient, tuple(row for row in reduced if any(row)))

    @classmethod
    def whole(cls, field: Field, ambient: int) -> 'Subspace':
        return cls(field, ambient, Field.to_rows(field.identity(ambient + 1)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def dimension(self) -> int:
        return self.rank - 1

    @property
    def is_empty(self) -> bool:
        return not self.basis

    @property
    def is_whole(self) -> bool:
        return self.rank == self.ambient + 1

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(
            next(i for i, c in enumerate(row) if c) for row in self.basis
        )

    def matrix(self) -> galois.FieldArray:
        if not self.basis:
            return self.field.zeros(0, self.ambient + 1)
        return self.field(list(self.basis))

    def __contains__(self, point: ProjPoint) -> bool:
        if not self.basis:
            return False
        return self.field.rank(self.basis + (point.coords,)) == self.rank

    def points(self) -> Tuple[ProjPoint, ...]:
        return _subspace_points(self)

    def coordinates(self, point: ProjPoint) -> ProjPoint:
        """
        Coordinates of a point of this subspace with respect to its
        echelon basis. They are the entries at the pivot columns.
        """
        if point not in self:
            raise ValueError(f'{point} does not lie on {self}')
        return ProjPoint(tuple(point.coords[p] for p in self.pivots))

    def lift(self, coords: ProjPoint) -> ProjPoint:
        """Inverse of :meth:`coordinates`."""
        if coords.dimension != self.dimension:
            raise ValueError(f'{coords} is not a point of PG({self.dimension})')
        return normalize(self.field, coords.vector(self.field) @ self.matrix())

    def __str__(self):
        return '<' + ' '.join(str(ProjPoint(row)) for row in self.basis) + '>'


@lru_cache(maxsize=1024)
def _subspace_points(space: Subspace) -> Tuple[ProjPoint, ...]:
    if space.is_empty:
        return ()

    field = space.field
    coeffs = field([p.coords for p in enumerate_points(space.dimension, field)])
    rows = field.normalize_rows(coeffs @ space.matrix())
    return tuple(sorted(ProjPoint(row) for row in rows))


@lru_cache(maxsize=32)
def enumerate_subspaces(field: Field, d: int, k: int) -> Tuple[Subspace, ...]:
    """
    All the k-dimensional subspaces of PG(d, F), built directly as reduced
    echelon forms and sorted by basis.
    """
    rank = k + 1
    if rank <= 0:
        return (Subspace(field, d),)
    if rank > d + 1:
        return ()

    found = []
    for pivots in itertools.combinations(range(d + 1), rank):
        free = [
            (r, c)
            for r, p in enumerate(pivots)
            for c in range(p + 1, d + 1)
            if c not in pivots
        ]

        for values in itertools.product(field.elements(), repeat=len(free)):
            rows = [[0] * (d + 1) for _ in pivots]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            found.append(Subspace(field, d, tuple(tuple(row) for row in rows)))

    return tuple(sorted(found, key=lambda s: s.basis))


def span(
    field: Field, points: Iterable[ProjPoint], ambient: Optional[int] = None
) -> Subspace:
    points = list(points)
    if ambient is None:
        if not points:
            raise ValueError('The ambient dimension of an empty span is needed')
        ambient = points[0].dimension

    return Subspace.from_vectors(field, ambient, [p.coords for p in points])


def line_through(field: Field, p: ProjPoint, q: ProjPoint) -> Subspace:
    if p == q:
        raise EqualPoints(f'A line needs two distinct points, got {p} twice')
    if p.dimension != q.dimension:
        raise ValueError(f'{p} and {q} live in different spaces')
    return span(field, [p, q])


def join(s: Subspace, t: Subspace) -> Subspace:
    if s.ambient != t.ambient or s.field != t.field:
        raise ValueError('Cannot join subspaces of different spaces')
    return Subspace.from_vectors(s.field, s.ambient, s.basis + t.basis)


def complement(space: Subspace, containing: Optional[Subspace] = None) -> Subspace:
    """
    A complement of ``space``, built greedily from the standard basis in
    index order. When ``containing`` is given, the complement is grown from
    that subspace instead of from the empty one.
    """
    field, d = space.field, space.ambient
    rows = list(space.basis)
    chosen = []

    if containing is not None:
        chosen = list(containing.basis)
        if field.rank(rows + chosen) != space.rank + containing.rank:
            raise NotComplementary(f'{containing} meets {space}')

    rank = space.rank + len(chosen)
    for i in range(d + 1):
        if rank == d + 1:
            break

        unit = tuple(int(i == j) for j in range(d + 1))
        if field.rank(rows + chosen + [unit]) > rank:
            chosen.append(unit)
            rank += 1

    return Subspace.from_vectors(field, d, chosen)


class Projection:
    """
    The projection of PG(d, F) onto ``target`` from the complementary
    subspace ``center``. Undefined exactly on the center.
    """

    def __init__(self, center: Subspace, target: Subspace):
        field, d = center.field, center.ambient
        if (
            target.ambient != d
            or center.rank + target.rank != d + 1
            or field.rank(center.basis + target.basis) != d + 1
        ):
            raise NotComplementary(f'{center} and {target} are not complementary')

        self.center = center
        self.target = target
        self._field = field
        self._inverse = np.linalg.inv(field(list(center.basis + target.basis)))

    def _target_part(self, point: ProjPoint) -> galois.FieldArray:
        coeffs = point.vector(self._field) @ self._inverse
        return coeffs[self.center.rank:]

    def coordinates(self, point: ProjPoint) -> Optional[ProjPoint]:
        """The image point in the echelon frame of the target."""
        part = self._target_part(point)
        if not np.any(part.view(np.ndarray)):
            return None
        return normalize(self._field, part)

    def __call__(self, point: ProjPoint) -> Optional[ProjPoint]:
        coords = self.coordinates(point)
        return self.target.lift(coords) if coords is not None else None


def project_from(
    center: Subspace, target: Subspace, point: ProjPoint
) -> Optional[ProjPoint]:
    return Projection(center, target)(point)


# vim:sw=4:ts=4:et:
