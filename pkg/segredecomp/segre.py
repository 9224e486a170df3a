"""
The Segre embedding of PG(n, F) x PG(m, F) into PG(nm+n+m, F).

Coordinate ``i*(m+1) + j`` of the image of ``(x, y)`` is ``x_i * y_j``.
"""

from dataclasses import dataclass
from typing import List, Sequence

import galois
import numpy as np

from .errors import NotOnVariety
from .gf import Field
from .linmap import ProductMapTable, SemilinearMap, coordinatize
from .product import ProductPoint, enumerate_product_points
from .projspace import ProjPoint, Subspace, normalize, span


def kron(a: galois.FieldArray, b: galois.FieldArray) -> galois.FieldArray:
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    return (a[:, np.newaxis, :, np.newaxis] * b[np.newaxis, :, np.newaxis, :]).reshape(
        rows, cols
    )


@dataclass(frozen=True)
class SegreEmbedding:
    field: Field
    n: int
    m: int

    @property
    def ambient(self) -> int:
        return self.n * self.m + self.n + self.m

    def index(self, i: int, j: int) -> int:
        return i * (self.m + 1) + j

    def embed_many(self, points: Sequence[ProductPoint]) -> List[ProjPoint]:
        if not points:
            return []

        xs = self.field([p.x.coords for p in points])
        ys = self.field([p.y.coords for p in points])
        tensors = (xs[:, :, np.newaxis] * ys[:, np.newaxis, :]).reshape(len(points), -1)
        return [ProjPoint(row) for row in self.field.normalize_rows(tensors)]

    def __call__(self, x: ProjPoint, y: ProjPoint) -> ProjPoint:
        if x.dimension != self.n or y.dimension != self.m:
            raise ValueError(f'{x}x{y} is not a point of PG({self.n})xPG({self.m})')
        return self.embed_many([ProductPoint(x, y)])[0]

    def preimage(self, z: ProjPoint) -> ProductPoint:
        if z.dimension != self.ambient:
            raise NotOnVariety(f'{z} is not a point of PG({self.ambient})')

        matrix = z.vector(self.field).reshape(self.n + 1, self.m + 1)
        if np.linalg.matrix_rank(matrix) != 1:
            raise NotOnVariety(f'{z} does not lie on the Segre variety')

        raw = matrix.view(np.ndarray)
        row = int(np.flatnonzero(raw.any(axis=1))[0])
        y = normalize(self.field, matrix[row])
        col = next(j for j, c in enumerate(y.coords) if c)
        return ProductPoint(normalize(self.field, matrix[:, col]), y)

    def image(self) -> List[ProjPoint]:
        return self.embed_many(enumerate_product_points(self.field, self.n, self.m))

    def regularity_dimension(self) -> int:
        return span(self.field, self.image(), self.ambient).dimension

    def tabulate(self) -> ProductMapTable:
        """The embedding itself as a table."""
        points = enumerate_product_points(self.field, self.n, self.m)
        return ProductMapTable(
            self.field, self.n, self.m, self.ambient,
            dict(zip(points, self.embed_many(points))),
        )

    def line_transfer(
        self, g: Subspace, first: ProjPoint, second: ProjPoint
    ) -> SemilinearMap:
        """
        The map ``(P, first) -> (P, second)`` between the images of
        ``g x first`` and ``g x second``, in the echelon coordinates of the
        two image lines.
        """
        g1 = span(self.field, [self(p, first) for p in g.points()])
        g2 = span(self.field, [self(p, second) for p in g.points()])
        table = {
            g1.coordinates(self(p, first)): g2.coordinates(self(p, second))
            for p in g.points()
        }
        return coordinatize(self.field, table, g1.dimension, g2.dimension)


def segre_embed(field: Field, x: ProjPoint, y: ProjPoint) -> ProjPoint:
    return SegreEmbedding(field, x.dimension, y.dimension)(x, y)


def regularity_dimension(embedding: SegreEmbedding) -> int:
    return embedding.regularity_dimension()


def segre_preimage(embedding: SegreEmbedding, z: ProjPoint) -> ProductPoint:
    return embedding.preimage(z)


# vim:sw=4:ts=4:et:
