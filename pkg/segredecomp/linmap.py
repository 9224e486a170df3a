"""
Linear mappings of projective spaces, i.e. partial maps satisfying the
axioms (L1) and (L2).

Two representations live here: :class:`SemilinearMap` (matrix plus field
automorphism, possibly singular and non-square) and :class:`ProductMapTable`
(an explicit table on a product space, the input format of the decomposer).
"""

import itertools
import logging
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from typing import (
    Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple,
)

import galois
import numpy as np

from ._parallel import shard_map
from .errors import NotSemilinear, RadicalNotSubspace
from .gf import Field, FieldAutomorphism, Row
from .product import (
    ProductLine, ProductPoint, enumerate_product_lines, enumerate_product_points,
)
from .projspace import (
    ProjPoint, Subspace, complement, enumerate_points, line_through, normalize, span,
)

logger = logging.getLogger(__name__)

PointTable = Dict[ProjPoint, Optional[ProjPoint]]


@lru_cache(maxsize=1024)
def _as_array(field: Field, rows: Tuple[Row, ...]) -> galois.FieldArray:
    return field(list(rows))


@dataclass(frozen=True)
class SemilinearMap:
    """
    ``v -> normalize(sigma(v) @ matrix)`` on homogeneous coordinates, where
    ``sigma`` is the Frobenius power of exponent :attr:`sigma`.
    """

    field: Field
    matrix: Tuple[Row, ...]
    sigma: int = 0

    def __post_init__(self):
        if not self.matrix or len({len(row) for row in self.matrix}) != 1:
            raise ValueError('A semilinear map needs a non-empty rectangular matrix')
        if not 0 <= self.sigma < self.field.k:
            raise ValueError(f'Invalid automorphism exponent {self.sigma}')

    @classmethod
    def from_array(
        cls, field: Field, matrix: galois.FieldArray, sigma: int = 0
    ) -> 'SemilinearMap':
        """Build the map with the canonical scaling of ``matrix``."""
        nonzero = np.flatnonzero(matrix.view(np.ndarray))
        if nonzero.size:
            matrix = matrix / matrix.reshape(-1)[nonzero[0]]
        return cls(field, Field.to_rows(matrix), sigma)

    @classmethod
    def identity(cls, field: Field, d: int) -> 'SemilinearMap':
        return cls.from_array(field, field.identity(d + 1))

    @property
    def source_dim(self) -> int:
        return len(self.matrix) - 1

    @property
    def target_dim(self) -> int:
        return len(self.matrix[0]) - 1

    @property
    def automorphism(self) -> FieldAutomorphism:
        return FieldAutomorphism(self.field, self.sigma)

    @property
    def array(self) -> galois.FieldArray:
        return _as_array(self.field, self.matrix)

    @property
    def rank(self) -> int:
        return self.field.rank(self.matrix)

    @property
    def is_invertible(self) -> bool:
        return self.source_dim == self.target_dim and self.rank == len(self.matrix)

    def canonical(self) -> 'SemilinearMap':
        return SemilinearMap.from_array(self.field, self.array, self.sigma)

    def apply_many(self, points: Sequence[ProjPoint]) -> List[Optional[ProjPoint]]:
        if not points:
            return []

        vectors = self.field([p.coords for p in points])
        images = self.automorphism(vectors) @ self.array
        return [
            ProjPoint(row) if row is not None else None
            for row in self.field.normalize_rows(images)
        ]

    def apply(self, point: ProjPoint) -> Optional[ProjPoint]:
        return self.apply_many([point])[0]

    __call__ = apply

    def tabulate(self) -> PointTable:
        points = enumerate_points(self.source_dim, self.field)
        return dict(zip(points, self.apply_many(points)))

    def exceptional_subspace(self) -> Subspace:
        kernel = self.array.left_null_space()
        if kernel.shape[0] == 0:
            return Subspace(self.field, self.source_dim)

        # sigma(v) in the kernel iff v in sigma^-1(kernel)
        rows = self.automorphism.inverse()(kernel)
        return Subspace.from_vectors(self.field, self.source_dim, Field.to_rows(rows))

    def compose(self, other: 'SemilinearMap') -> 'SemilinearMap':
        """``self`` first, then ``other``."""
        if self.target_dim != other.source_dim:
            raise ValueError('Dimension mismatch in composition')

        matrix = other.automorphism(self.array) @ other.array
        sigma = (self.sigma + other.sigma) % self.field.k
        return SemilinearMap.from_array(self.field, matrix, sigma)

    def inverse(self) -> 'SemilinearMap':
        if not self.is_invertible:
            raise ValueError('Only collineations can be inverted')

        sigma = self.automorphism.inverse()
        return SemilinearMap.from_array(
            self.field, sigma(np.linalg.inv(self.array)), sigma.j
        )


def apply(f: SemilinearMap, point: ProjPoint) -> Optional[ProjPoint]:
    return f.apply(point)


def exceptional_subspace(f: SemilinearMap) -> Subspace:
    return f.exceptional_subspace()


@dataclass
class ProductMapTable:
    """
    A total table ``PG(n, F) x PG(m, F) -> PG(N, F) | None``; ``None``
    marks the exceptional points.
    """

    field: Field
    n: int
    m: int
    N: int
    entries: Dict[ProductPoint, Optional[ProjPoint]]

    def __post_init__(self):
        expected = set(self.points())
        if set(self.entries) != expected:
            missing = len(expected - set(self.entries))
            extra = len(set(self.entries) - expected)
            raise ValueError(
                f'The table must list every product point exactly once '
                f'({missing} missing, {extra} unexpected)'
            )

        for image in self.entries.values():
            if image is not None and image.dimension != self.N:
                raise ValueError(f'{image} is not a point of PG({self.N})')

    @classmethod
    def tabulate(
        cls,
        field: Field,
        n: int,
        m: int,
        N: int,
        func: Callable[[ProductPoint], Optional[ProjPoint]],
    ) -> 'ProductMapTable':
        return cls(
            field, n, m, N,
            {p: func(p) for p in enumerate_product_points(field, n, m)},
        )

    def points(self) -> Tuple[ProductPoint, ...]:
        return enumerate_product_points(self.field, self.n, self.m)

    def first_points(self) -> Tuple[ProjPoint, ...]:
        return enumerate_points(self.n, self.field)

    def second_points(self) -> Tuple[ProjPoint, ...]:
        return enumerate_points(self.m, self.field)

    def __getitem__(self, point: ProductPoint) -> Optional[ProjPoint]:
        return self.entries[point]

    def __call__(self, x: ProjPoint, y: ProjPoint) -> Optional[ProjPoint]:
        return self.entries[ProductPoint(x, y)]

    def domain(self) -> List[ProductPoint]:
        return [p for p in self.points() if self.entries[p] is not None]

    def exceptional(self) -> List[ProductPoint]:
        return [p for p in self.points() if self.entries[p] is None]

    def images(self, points: Iterable[ProductPoint]) -> Set[ProjPoint]:
        return {
            self.entries[p] for p in points if self.entries[p] is not None
        }

    def image_dimension(self, points: Iterable[ProductPoint]) -> int:
        return image_dimension(self.field, self.images(points), self.N)

    def is_global(self) -> bool:
        return all(image is not None for image in self.entries.values())

    def is_embedding(self) -> bool:
        return self.is_global() and len(set(self.entries.values())) == len(self.entries)

    def is_degenerate(self) -> bool:
        rad1, rad2 = radicals(self)
        return not (rad1.is_empty and rad2.is_empty)

    def restrict_row(self, x: ProjPoint) -> PointTable:
        return {y: self(x, y) for y in self.second_points()}

    def restrict_col(self, y: ProjPoint) -> PointTable:
        return {x: self(x, y) for x in self.first_points()}

    def replace(
        self, point: ProductPoint, image: Optional[ProjPoint]
    ) -> 'ProductMapTable':
        entries = dict(self.entries)
        entries[point] = image
        return ProductMapTable(self.field, self.n, self.m, self.N, entries)


def restrict_row(t: ProductMapTable, x: ProjPoint) -> PointTable:
    return t.restrict_row(x)


def restrict_col(t: ProductMapTable, y: ProjPoint) -> PointTable:
    return t.restrict_col(y)


def image_dimension(field: Field, images: Iterable[ProjPoint], ambient: int) -> int:
    """Projective dimension of the closure of a set of points."""
    return span(field, images, ambient).dimension


@lru_cache(maxsize=4096)
def point_join(
    field: Field, a: Optional[ProjPoint], b: Optional[ProjPoint]
) -> FrozenSet[ProjPoint]:
    """Join of two possibly empty points of a projective space."""
    if a is None and b is None:
        return frozenset()
    if a is None or b is None or a == b:
        return frozenset({a if a is not None else b})
    return frozenset(line_through(field, a, b).points())


def line_violations(
    field: Field, images: Sequence[Optional[ProjPoint]]
) -> List[Tuple[int, int, str]]:
    """
    Test (L1) and (L2) on the images of the points of one line. Returns
    ``(i, j, axiom)`` for every failing pair of positions.
    """
    defined = frozenset(image for image in images if image is not None)
    has_exception = any(image is None for image in images)
    violations = []

    for i, j in itertools.combinations(range(len(images)), 2):
        if point_join(field, images[i], images[j]) != defined:
            violations.append((i, j, 'L1'))
        if images[i] is not None and images[i] == images[j] and not has_exception:
            violations.append((i, j, 'L2'))

    return violations


@dataclass(frozen=True, order=True)
class Violation:
    axiom: str
    first: ProductPoint
    second: ProductPoint
    witness: str

    def __str__(self):
        return f'{self.axiom} {self.first} {self.second}: {self.witness}'


@dataclass
class AxiomReport:
    violations: List[Violation] = dataclass_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: 'AxiomReport') -> 'AxiomReport':
        return AxiomReport(sorted(self.violations + other.violations))


def _fmt(points: Iterable[ProjPoint]) -> str:
    return '{' + ', '.join(str(p) for p in sorted(points)) + '}'


def _check_lines(
    lines: Sequence[ProductLine], t: ProductMapTable, axioms: Tuple[str, ...]
) -> List[Violation]:
    found = []
    for line in lines:
        points = line.points()
        images = [t[p] for p in points]
        for i, j, axiom in line_violations(t.field, images):
            if axiom not in axioms:
                continue

            if axiom == 'L1':
                witness = (
                    f'line image {_fmt(t.images(points))} != '
                    f'join {_fmt(point_join(t.field, images[i], images[j]))}'
                )
            else:
                witness = f'both map to {images[i]} and no point of the line is exceptional'

            found.append(Violation(axiom, points[i], points[j], witness))

    return found


def _check(t: ProductMapTable, axioms: Tuple[str, ...], workers: int) -> AxiomReport:
    lines = enumerate_product_lines(t.n, t.m, t.field)
    violations = shard_map(_check_lines, lines, workers, t, axioms)
    logger.debug('Axioms %s: %d violations on %d lines', axioms, len(violations), len(lines))
    return AxiomReport(sorted(violations))


def check_L1(t: ProductMapTable, workers: int = 1) -> AxiomReport:
    return _check(t, ('L1',), workers)


def check_L2(t: ProductMapTable, workers: int = 1) -> AxiomReport:
    return _check(t, ('L2',), workers)


def check_axioms(t: ProductMapTable, workers: int = 1) -> AxiomReport:
    return _check(t, ('L1', 'L2'), workers)


def points_subspace(
    field: Field, ambient: int, points: Sequence[ProjPoint]
) -> Optional[Subspace]:
    space = span(field, points, ambient)
    if space.points() != tuple(sorted(points)):
        return None
    return space


def radicals(t: ProductMapTable) -> Tuple[Subspace, Subspace]:
    rad1 = [
        x for x in t.first_points()
        if all(t(x, y) is None for y in t.second_points())
    ]
    rad2 = [
        y for y in t.second_points()
        if all(t(x, y) is None for x in t.first_points())
    ]

    spaces = []
    for name, ambient, points in (('first', t.n, rad1), ('second', t.m, rad2)):
        space = points_subspace(t.field, ambient, points)
        if space is None:
            raise RadicalNotSubspace(
                f'The {name} radical {_fmt(points)} is not a subspace'
            )
        spaces.append(space)

    return spaces[0], spaces[1]


def _frame_weights(
    field: Field, basis: Sequence[Row], images: PointTable, frame: List[ProjPoint]
) -> galois.FieldArray:
    """
    Scalars ``w`` such that the images of the basis points, scaled by ``w``,
    add up to the image of the unit point of the basis.
    """
    if len(basis) == 1:
        return field([1])

    unit = images[normalize(field, field(list(basis)).sum(axis=0))]
    stacked = field([p.coords for p in frame] + [unit.coords])
    relation = stacked.left_null_space()
    if relation.shape[0] != 1 or relation[0, -1] == 0:
        raise NotSemilinear('The images of a frame are not in general position')

    weights = -relation[0, :-1] / relation[0, -1]
    if np.any(weights.view(np.ndarray) == 0):
        raise NotSemilinear('The images of a frame are not in general position')
    return weights


def coordinatize(
    field: Field,
    images: PointTable,
    d: int,
    N: int,
    sigma: Optional[int] = None,
) -> SemilinearMap:
    """
    Recover ``(M, sigma)`` from the point table of a semilinear map of
    PG(d, F) into PG(N, F). Every automorphism is tried in turn (only
    ``sigma`` when given); the first one reproducing the whole table wins.
    """
    points = enumerate_points(d, field)
    if set(images) != set(points):
        raise ValueError(f'The table must list every point of PG({d}) exactly once')
    if any(image is not None and image.dimension != N for image in images.values()):
        raise ValueError(f'Every image must be a point of PG({N})')

    candidates = [sigma] if sigma is not None else list(range(field.k))
    undefined = [p for p in points if images[p] is None]
    kernel = points_subspace(field, d, undefined)
    if kernel is None:
        raise NotSemilinear('The exceptional points do not form a subspace')

    domain = complement(kernel)
    if domain.is_empty:
        return SemilinearMap(field, Field.to_rows(field.zeros(d + 1, N + 1)), candidates[0])

    frame = [images[ProjPoint(row)] for row in domain.basis]
    weights = _frame_weights(field, domain.basis, images, frame)
    targets = np.concatenate(
        [
            field([p.coords for p in frame]) * weights[:, np.newaxis],
            field.zeros(kernel.rank, N + 1),
        ]
    )
    expected = dict(images)

    for j in candidates:
        twist = FieldAutomorphism(field, j)
        source = twist(field(list(domain.basis + kernel.basis)))
        candidate = SemilinearMap.from_array(
            field, np.linalg.inv(source) @ targets, j
        )
        if candidate.tabulate() == expected:
            return candidate

    raise NotSemilinear('No semilinear map reproduces the table')


# vim:sw=4:ts=4:et:
