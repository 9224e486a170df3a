import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Type

import galois
import numpy as np

from .decomp import annihilated_subspace, enumerate_grid_tables
from .gf import Field, FieldAutomorphism
from .linmap import ProductMapTable, SemilinearMap
from .product import ProductPoint, enumerate_product_points
from .projspace import Subspace, complement, enumerate_points, enumerate_subspaces
from .segre import SegreEmbedding

logger = logging.getLogger(__name__)


@dataclass
class Instance:
    table: ProductMapTable
    # (beta', psi) with t(X, Y) = psi(gamma(X, beta'(Y)))
    answer: Optional[Tuple[SemilinearMap, SemilinearMap]] = None


class InstanceGenerator(ABC):
    """
    Seeded random instances. ``sigma`` fixes the Frobenius exponent of
    every drawn map, otherwise it is drawn too.
    """

    def __init__(
        self, field: Field, n: int, m: int, N: int, seed: int = 0,
        sigma: Optional[int] = None,
    ):
        if min(n, m) < 1 or N < 0:
            raise ValueError(f'Invalid shape ({n}, {m}, {N})')
        if sigma is not None and not 0 <= sigma < field.k:
            raise ValueError(f'Invalid automorphism exponent {sigma} for {field}')

        self.field = field
        self.n = n
        self.m = m
        self.N = N
        self.segre = SegreEmbedding(field, n, m)
        self.sigma = sigma
        self.rng = np.random.default_rng(seed)

    @abstractmethod
    def __call__(self) -> Instance:
        raise NotImplementedError()

    def _sigma(self) -> int:
        if self.sigma is not None:
            return self.sigma
        return int(self.rng.integers(0, self.field.k))

    def _matrix(self, rows: int, cols: int) -> galois.FieldArray:
        return self.field(self.rng.integers(0, self.field.q, size=(rows, cols)))

    def _full_rank(self, rows: int, cols: int) -> galois.FieldArray:
        attempts = 1
        matrix = self._matrix(rows, cols)
        while np.linalg.matrix_rank(matrix) < min(rows, cols):
            attempts += 1
            matrix = self._matrix(rows, cols)

        logger.debug('Full rank %dx%d matrix after %d attempts', rows, cols, attempts)
        return matrix

    def _collineation(self, d: int) -> SemilinearMap:
        return SemilinearMap.from_array(
            self.field, self._full_rank(d + 1, d + 1), self._sigma()
        )

    def _table(self, beta: SemilinearMap, psi: SemilinearMap) -> ProductMapTable:
        points = enumerate_product_points(self.field, self.n, self.m)
        second = enumerate_points(self.m, self.field)
        moved = dict(zip(second, beta.apply_many(second)))
        images = psi.apply_many(
            self.segre.embed_many([ProductPoint(p.x, moved[p.y]) for p in points])
        )
        return ProductMapTable(self.field, self.n, self.m, self.N, dict(zip(points, images)))


class SegreInstance(InstanceGenerator):
    """The Segre embedding itself, padded with zero coordinates up to PG(N)."""

    def __call__(self) -> Instance:
        ambient = self.segre.ambient
        if self.N < ambient:
            raise ValueError(f'The Segre embedding needs N >= {ambient}')

        psi = SemilinearMap.from_array(
            self.field, self.field.identity(self.N + 1)[:ambient + 1]
        )
        return Instance(self._table(SemilinearMap.identity(self.field, self.m), psi))


class RoundTripInstance(InstanceGenerator):
    """``psi(gamma(X, beta'(Y)))`` with an injective ``psi``."""

    def __call__(self) -> Instance:
        ambient = self.segre.ambient
        if self.N < ambient:
            raise ValueError(f'An injective psi needs N >= {ambient}')

        beta = self._collineation(self.m)
        psi = SemilinearMap.from_array(
            self.field, self._full_rank(ambient + 1, self.N + 1), self._sigma()
        )
        return Instance(self._table(beta, psi), (beta, psi))


class DegenerateInstance(InstanceGenerator):
    """
    Like :class:`RoundTripInstance`, but ``psi`` kills the join ``U`` of the
    Segre images of ``R1 x PG(m)`` and ``PG(n) x R2``, for random subspaces
    ``R1``, ``R2`` of the given dimensions (-1 for none).
    """

    def __init__(self, *args, radicals: Tuple[int, int] = (-1, 0), **kwargs):
        super().__init__(*args, **kwargs)
        r1, r2 = radicals
        if not -1 <= r1 < self.n or not -1 <= r2 <= self.m - 2:
            raise ValueError(f'Unsupported radical dimensions ({r1}, {r2})')
        self.radicals = (r1, r2)

    def _subspace(self, d: int, k: int) -> Subspace:
        if k < 0:
            return Subspace(self.field, d)
        choices = enumerate_subspaces(self.field, d, k)
        return choices[int(self.rng.integers(0, len(choices)))]

    def __call__(self) -> Instance:
        field = self.field
        rad1 = self._subspace(self.n, self.radicals[0])
        rad2 = self._subspace(self.m, self.radicals[1])
        kernel = annihilated_subspace(field, self.n, self.m, rad1, rad2)
        domain = complement(kernel)
        if self.N + 1 < domain.rank:
            raise ValueError(f'psi must be injective off U: N >= {domain.rank - 1}')

        sigma = FieldAutomorphism(field, self._sigma())
        source = sigma(np.concatenate([domain.matrix(), kernel.matrix()]))
        target = np.concatenate([
            self._full_rank(domain.rank, self.N + 1),
            field.zeros(kernel.rank, self.N + 1),
        ])
        psi = SemilinearMap.from_array(field, np.linalg.inv(source) @ target, sigma.j)
        beta = self._collineation(self.m)
        return Instance(self._table(beta, psi), (beta, psi))


class GridInstance(InstanceGenerator):
    """
    A linear mapping of PG(1) x PG(1) whose first row is fully defined.
    Drawn from the exhaustive enumeration over GF(2) for N <= 2, from
    random ``psi . gamma`` otherwise.
    """

    _enumerated: Dict[Tuple[Field, int], Tuple[ProductMapTable, ...]] = {}

    def __init__(self, field: Field, n: int, m: int, N: int, seed: int = 0, **kwargs):
        super().__init__(field, 1, 1, N, seed, **kwargs)

    def __call__(self) -> Instance:
        if self.field.q == 2 and self.N <= 2:
            key = (self.field, self.N)
            if key not in self._enumerated:
                self._enumerated[key] = tuple(enumerate_grid_tables(self.field, self.N))
            tables = self._enumerated[key]
            return Instance(tables[int(self.rng.integers(0, len(tables)))])

        a = enumerate_points(1, self.field)[0]
        row = [ProductPoint(a, y) for y in enumerate_points(1, self.field)]
        attempts = 0
        while True:
            attempts += 1
            psi = SemilinearMap.from_array(self.field, self._matrix(4, self.N + 1), self._sigma())
            if any(z is None for z in psi.apply_many(self.segre.embed_many(row))):
                continue

            logger.debug('Grid instance after %d attempts', attempts)
            return Instance(self._table(SemilinearMap.identity(self.field, 1), psi))


generators: Dict[str, Type[InstanceGenerator]] = {
    'segre': SegreInstance,
    'roundtrip': RoundTripInstance,
    'degenerate': DegenerateInstance,
    'grid': GridInstance,
}


# vim:sw=4:ts=4:et:
