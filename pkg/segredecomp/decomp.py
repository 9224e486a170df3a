"""
Decomposition of a linear mapping ``chi`` of PG(n, F) x PG(m, F) into
PG(N, F) as ``gamma phi = alpha chi``, where ``gamma`` is the Segre
embedding, ``phi`` a linear mapping of the Segre ambient space and
``alpha = (id, alpha')`` a collineation of the product.
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from typing import (
    Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple,
)

import numpy as np

from ._parallel import shard_map
from .errors import (
    HypothesisFailure, InconsistentAutomorphisms, NoUniquePreimage, NotSemilinear,
    PreconditionViolated, RowNotSemilinear,
)
from .gf import Field, FieldAutomorphism
from .linmap import (
    ProductMapTable, SemilinearMap, coordinatize, image_dimension, line_violations,
    points_subspace, radicals,
)
from .product import ProductPoint
from .projspace import (
    Projection, ProjPoint, Subspace, complement, enumerate_points,
    enumerate_subspaces, line_through, span,
)
from .segre import SegreEmbedding, kron

logger = logging.getLogger(__name__)


class Mismatch(NamedTuple):
    point: ProductPoint
    left: Optional[ProjPoint]
    right: Optional[ProjPoint]

    def __str__(self):
        def fmt(p):
            return str(p) if p is not None else 'UNDEF'

        return f'{self.point}: gamma.phi = {fmt(self.left)}, alpha.chi = {fmt(self.right)}'


@dataclass
class VerificationReport:
    checked: int
    mismatches: List[Mismatch]
    # Points of U (degenerate certificates only) that phi does not annihilate
    unannihilated: List[ProjPoint] = dataclass_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.unannihilated


@dataclass
class DecompositionCertificate:
    alpha_prime: SemilinearMap
    phi: SemilinearMap
    a: ProjPoint
    basis: Tuple[ProjPoint, ...]
    plane: Subspace
    verified: bool = False
    annihilated: Optional[Subspace] = None
    report: Optional[VerificationReport] = None


def _segre(t: ProductMapTable) -> SegreEmbedding:
    return SegreEmbedding(t.field, t.n, t.m)


def _row(x: ProjPoint, ys: Iterable[ProjPoint]) -> List[ProductPoint]:
    return [ProductPoint(x, y) for y in ys]


def check_condition_ii(t: ProductMapTable) -> Optional[ProjPoint]:
    """The first A whose row ``A x PG(m)`` has an image of dimension m."""
    for a in t.first_points():
        if t.image_dimension(_row(a, t.second_points())) == t.m:
            return a
    return None


def _search_plane_and_basis(
    t: ProductMapTable,
    planes: Sequence[Subspace],
    candidates: Sequence[ProjPoint],
    size: int,
) -> Optional[Tuple[Subspace, Tuple[ProjPoint, ...]]]:
    """
    First plane E and basis (A_0, ..., A_size-1) drawn from ``candidates``
    such that every ``E x {A_0, A_i}`` is global with an image of
    dimension at least 3.
    """
    for plane in planes:
        plane_points = plane.points()
        rows = [
            y for y in candidates
            if all(t(x, y) is not None for x in plane_points)
        ]
        cache: Dict[Tuple[ProjPoint, ProjPoint], bool] = {}

        def good_pair(y0: ProjPoint, yi: ProjPoint) -> bool:
            if (y0, yi) not in cache:
                points = [ProductPoint(x, y) for x in plane_points for y in (y0, yi)]
                cache[(y0, yi)] = t.image_dimension(points) >= 3
            return cache[(y0, yi)]

        for a0 in rows:
            partners = [y for y in rows if y != a0 and good_pair(a0, y)]
            for rest in itertools.combinations(partners, size - 1):
                basis = (a0,) + rest
                if t.field.rank([p.coords for p in basis]) == size:
                    return plane, basis

    return None


def check_condition_i(
    t: ProductMapTable,
) -> Optional[Tuple[Subspace, Tuple[ProjPoint, ...]]]:
    if t.n < 2:
        return None

    return _search_plane_and_basis(
        t, enumerate_subspaces(t.field, t.n, 2), t.second_points(), t.m + 1
    )


def build_phi(t: ProductMapTable, basis: Sequence[ProjPoint]) -> SemilinearMap:
    """
    The linear mapping of the Segre ambient space that agrees with
    ``gamma^-1 chi`` on every ``PG(n) x A_j``, assembled from the
    coordinatised row maps ``X -> t(X, A_j)``.
    """
    field = t.field
    blocks: Optional[List[SemilinearMap]] = None
    sigma = 0

    # Rank one rows fit every automorphism, so one common sigma is fixed first
    for sigma in range(field.k):
        found = []
        for a in basis:
            try:
                found.append(coordinatize(field, t.restrict_col(a), t.n, t.N, sigma))
            except NotSemilinear:
                break
        else:
            blocks = found
            break

    if blocks is None:
        for a in basis:
            try:
                coordinatize(field, t.restrict_col(a), t.n, t.N)
            except NotSemilinear as e:
                raise RowNotSemilinear(
                    f'The map X -> t(X, {a}) is not semilinear: {e}'
                ) from e
        raise InconsistentAutomorphisms(
            f'The rows over {", ".join(str(a) for a in basis)} need different '
            f'field automorphisms'
        )

    twist = FieldAutomorphism(field, sigma)
    frame = field([a.coords for a in basis])
    change = kron(field.identity(t.n + 1), twist(frame))
    # Row i*(m+1) + j is row i of the j-th block
    targets = field([
        blocks[j].matrix[i] for i in range(t.n + 1) for j in range(len(basis))
    ])

    phi = SemilinearMap.from_array(field, np.linalg.inv(change) @ targets, sigma)
    logger.info('Built phi with automorphism exponent %d', sigma)
    return phi


def build_alpha(
    t: ProductMapTable, phi: SemilinearMap, a: ProjPoint
) -> SemilinearMap:
    """
    The collineation ``X -> Y`` of PG(m) defined by
    ``t(A, Y) = phi(gamma(A, X))``.
    """
    preimages: Dict[ProjPoint, List[ProjPoint]] = defaultdict(list)
    for y, image in t.restrict_row(a).items():
        if image is not None:
            preimages[image].append(y)

    second = t.second_points()
    targets = phi.apply_many(_segre(t).embed_many(_row(a, second)))
    table = {}

    for x, z in zip(second, targets):
        candidates = preimages.get(z, []) if z is not None else []
        if len(candidates) != 1:
            raise NoUniquePreimage(
                f'phi(gamma({a}, {x})) = {z if z is not None else "UNDEF"} has '
                f'{len(candidates)} preimages in the row of {a}'
            )
        table[x] = candidates[0]

    if len(set(table.values())) != len(table):
        raise NoUniquePreimage(f'The row of {a} does not induce a bijection')

    return coordinatize(t.field, table, t.m, t.m)


def _mismatches(
    points: List[ProductPoint],
    t: ProductMapTable,
    alpha_prime: SemilinearMap,
    phi: SemilinearMap,
) -> List[Mismatch]:
    left = phi.apply_many(_segre(t).embed_many(points))
    moved = alpha_prime.apply_many([p.y for p in points])
    found = []

    for point, lhs, y in zip(points, left, moved):
        rhs = t(point.x, y) if y is not None else None
        if lhs != rhs:
            found.append(Mismatch(point, lhs, rhs))

    return found


def verify_decomposition(
    t: ProductMapTable,
    alpha_prime: SemilinearMap,
    phi: SemilinearMap,
    workers: int = 1,
) -> VerificationReport:
    segre = _segre(t)
    if alpha_prime.source_dim != t.m or alpha_prime.target_dim != t.m:
        raise ValueError(f'alpha must be a map of PG({t.m}) onto itself')
    if phi.source_dim != segre.ambient or phi.target_dim != t.N:
        raise ValueError(f'phi must map PG({segre.ambient}) into PG({t.N})')

    points = t.points()
    mismatches = shard_map(_mismatches, points, workers, t, alpha_prime, phi)
    logger.info('Verification: %d mismatches on %d points', len(mismatches), len(points))
    return VerificationReport(len(points), mismatches)


def decompose(t: ProductMapTable, workers: int = 1) -> DecompositionCertificate:
    found = check_condition_i(t)
    if found is None:
        raise HypothesisFailure(
            'condition-i',
            'no plane E and basis A_0..A_m with every E x {A_0, A_i} global '
            'of dimension at least 3',
        )
    plane, basis = found

    a = check_condition_ii(t)
    if a is None:
        raise HypothesisFailure(
            'condition-ii', f'no point A with an image of A x PG({t.m}) of dimension {t.m}'
        )

    logger.info(
        'Witnesses: A = %s, E = %s, B = %s', a, plane, ' '.join(map(str, basis))
    )
    phi = build_phi(t, basis)
    alpha_prime = build_alpha(t, phi, a)
    report = verify_decomposition(t, alpha_prime, phi, workers)
    return DecompositionCertificate(
        alpha_prime, phi, a, basis, plane, report.ok, None, report
    )


@dataclass
class Reduction:
    """
    A map and its restriction ``chi'`` to ``D1 x D2``, written in the
    echelon frames of the complements of the radicals.
    """

    table: ProductMapTable
    rad1: Subspace
    rad2: Subspace
    d1: Subspace
    d2: Subspace
    restricted: Optional[ProductMapTable]

    @property
    def pi1(self) -> Projection:
        return Projection(self.rad1, self.d1)

    @property
    def pi2(self) -> Projection:
        return Projection(self.rad2, self.d2)

    def project(self, point: ProductPoint) -> Optional[ProductPoint]:
        """``(X pi1, Y pi2)`` in frame coordinates, ``None`` if undefined."""
        x = self.pi1.coordinates(point.x)
        y = self.pi2.coordinates(point.y)
        if x is None or y is None:
            return None
        return ProductPoint(x, y)

    def mismatches(self) -> List[ProductPoint]:
        pi1, pi2 = self.pi1, self.pi2
        found = []

        for point in self.table.points():
            x, y = pi1.coordinates(point.x), pi2.coordinates(point.y)
            if x is None or y is None or self.restricted is None:
                expected = None
            else:
                expected = self.restricted(x, y)
            if self.table[point] != expected:
                found.append(point)

        return found


def _reduce(
    t: ProductMapTable, rad1: Subspace, rad2: Subspace, d1: Subspace, d2: Subspace
) -> Reduction:
    restricted = None
    if not d1.is_empty and not d2.is_empty:
        restricted = ProductMapTable.tabulate(
            t.field, d1.dimension, d2.dimension, t.N,
            lambda p: t(d1.lift(p.x), d2.lift(p.y)),
        )
    return Reduction(t, rad1, rad2, d1, d2, restricted)


def reduce_nondegenerate(t: ProductMapTable) -> Reduction:
    rad1, rad2 = radicals(t)
    return _reduce(t, rad1, rad2, complement(rad1), complement(rad2))


def degenerate_base_point(t: ProductMapTable) -> Optional[ProjPoint]:
    """
    The first A whose exceptional set ``A(chi_A)`` in PG(m) is a subspace
    of dimension at most m-2 contained in every ``A(chi_P)``.
    """
    exceptional = {
        x: frozenset(y for y in t.second_points() if t(x, y) is None)
        for x in t.first_points()
    }

    for a, points in exceptional.items():
        space = points_subspace(t.field, t.m, sorted(points))
        if space is None or space.dimension > t.m - 2:
            continue
        if all(points <= other for other in exceptional.values()):
            return a

    return None


def annihilated_subspace(
    field: Field, n: int, m: int, rad1: Subspace, rad2: Subspace
) -> Subspace:
    """``U``: the join of the images of ``rad1 x PG(m)`` and ``PG(n) x rad2``."""
    rows = np.concatenate([
        kron(rad1.matrix(), field.identity(m + 1)),
        kron(field.identity(n + 1), rad2.matrix()),
    ])
    return Subspace.from_vectors(field, n * m + n + m, Field.to_rows(rows))


def unannihilated_points(phi: SemilinearMap, annihilated: Subspace) -> List[ProjPoint]:
    """Points of ``annihilated`` with a defined image under ``phi``."""
    points = annihilated.points()
    return [u for u, image in zip(points, phi.apply_many(points)) if image is not None]


def _extend_collineation(
    beta: SemilinearMap, d2: Subspace, rad2: Subspace
) -> SemilinearMap:
    """A collineation acting as ``beta`` on D2 and fixing ``rad2`` pointwise."""
    field = beta.field
    twist = beta.automorphism
    source = twist(np.concatenate([d2.matrix(), rad2.matrix()]))
    target = np.concatenate([beta.array @ d2.matrix(), rad2.matrix()])
    return SemilinearMap.from_array(field, np.linalg.inv(source) @ target, beta.sigma)


def _extend_linear(
    inner: SemilinearMap, d1: Subspace, d2: Subspace, annihilated: Subspace, N: int
) -> SemilinearMap:
    """A map acting as ``inner`` on the Segre span of D1 x D2 and killing U."""
    field = inner.field
    twist = inner.automorphism
    source = twist(np.concatenate([kron(d1.matrix(), d2.matrix()), annihilated.matrix()]))
    target = np.concatenate([inner.array, field.zeros(annihilated.rank, N + 1)])
    return SemilinearMap.from_array(field, np.linalg.inv(source) @ target, inner.sigma)


def decompose_degenerate(
    t: ProductMapTable, workers: int = 1
) -> DecompositionCertificate:
    field = t.field
    segre = _segre(t)
    rad1, rad2 = radicals(t)

    if rad1.is_whole or rad2.is_whole:
        # Everything is exceptional
        phi = SemilinearMap(
            field, Field.to_rows(field.zeros(segre.ambient + 1, t.N + 1))
        )
        alpha_prime = SemilinearMap.identity(field, t.m)
        report = verify_decomposition(t, alpha_prime, phi, workers)
        whole = Subspace.whole(field, segre.ambient)
        return DecompositionCertificate(
            alpha_prime, phi, t.first_points()[0], (), Subspace(field, t.n),
            report.ok, whole, report,
        )

    a = degenerate_base_point(t)
    if a is None:
        raise HypothesisFailure(
            'degenerate-base-point',
            f'no point A whose exceptional set is a subspace of dimension at '
            f'most {t.m - 2} contained in every other one',
        )

    d2 = complement(rad2)
    found = None
    if t.n >= 2:
        found = _search_plane_and_basis(
            t, enumerate_subspaces(field, t.n, 2), d2.points(), d2.rank
        )
    if found is None:
        raise HypothesisFailure(
            'condition-i',
            f'no plane E and basis of {d2} with every E x {{A_0, A_i}} global '
            f'of dimension at least 3',
        )
    plane, basis = found

    d1 = complement(rad1, containing=plane)
    reduction = _reduce(t, rad1, rad2, d1, d2)
    core = reduction.restricted
    logger.info(
        'Degenerate reduction: rad1 = %s, rad2 = %s, core PG(%d) x PG(%d)',
        rad1, rad2, core.n, core.m,
    )

    inner_a = check_condition_ii(core)
    if inner_a is None:
        raise HypothesisFailure(
            'condition-ii',
            f'no point A of D1 with an image of A x D2 of dimension {core.m}',
        )

    inner_phi = build_phi(core, tuple(d2.coordinates(b) for b in basis))
    beta = build_alpha(core, inner_phi, inner_a)

    annihilated = annihilated_subspace(field, t.n, t.m, rad1, rad2)
    alpha_prime = _extend_collineation(beta, d2, rad2)
    phi = _extend_linear(inner_phi, d1, d2, annihilated, t.N)

    report = verify_decomposition(t, alpha_prime, phi, workers)
    report.unannihilated = unannihilated_points(phi, annihilated)
    return DecompositionCertificate(
        alpha_prime, phi, a, basis, plane, report.ok, annihilated, report
    )


def is_special_line(
    t: ProductMapTable,
    phi: SemilinearMap,
    alpha_prime: SemilinearMap,
    l2: Subspace,
) -> bool:
    segre = _segre(t)
    line_points = l2.points()
    moved = dict(zip(line_points, alpha_prime.apply_many(line_points)))
    everything = set()

    for x in t.first_points():
        points = _row(x, line_points)
        left = {z for z in phi.apply_many(segre.embed_many(points)) if z is not None}
        right = {
            t(x, moved[y]) for y in line_points
            if moved[y] is not None and t(x, moved[y]) is not None
        }
        if left != right:
            return False
        everything |= right

    return image_dimension(t.field, everything, t.N) >= 2


def exceptional_sets_on(
    t: ProductMapTable,
    phi: SemilinearMap,
    alpha_prime: SemilinearMap,
    a: ProjPoint,
    x1: ProjPoint,
    l2: Subspace,
) -> Tuple[FrozenSet[ProductPoint], FrozenSet[ProductPoint]]:
    """
    The exceptional points of ``gamma phi`` and of ``alpha chi`` on
    ``AX1 x l2``.
    """
    points = [
        ProductPoint(x, y)
        for x in line_through(t.field, a, x1).points()
        for y in l2.points()
    ]
    left = phi.apply_many(_segre(t).embed_many(points))
    moved = alpha_prime.apply_many([p.y for p in points])

    first = frozenset(p for p, z in zip(points, left) if z is None)
    second = frozenset(
        p for p, y in zip(points, moved) if y is None or t(p.x, y) is None
    )
    return first, second


def images_in_joins(t: ProductMapTable, g: Subspace, line: Subspace) -> bool:
    """
    For every three distinct points of ``line``, the image of ``g`` times
    any one of them lies in the join of the images of the other two.
    """
    images = {y: t.images(ProductPoint(x, y) for x in g.points()) for y in line.points()}

    for y0 in line.points():
        others = [y for y in line.points() if y != y0]
        for y1, y2 in itertools.combinations(others, 2):
            joined = span(t.field, images[y1] | images[y2], t.N)
            if any(z not in joined for z in images[y0]):
                return False

    return True


def image_transfer(
    t: ProductMapTable, g: Subspace, first: ProjPoint, second: ProjPoint
) -> Optional[SemilinearMap]:
    """
    The map ``(P, first) chi -> (P, second) chi`` between the image lines
    of ``g x first`` and ``g x second``, in their echelon coordinates.
    ``None`` unless both restrictions are global with line images.
    """
    points = g.points()
    h1 = [t(p, first) for p in points]
    h2 = [t(p, second) for p in points]
    if any(z is None for z in h1 + h2):
        return None

    line1, line2 = span(t.field, h1, t.N), span(t.field, h2, t.N)
    if line1.dimension != 1 or line2.dimension != 1:
        return None

    table = {line1.coordinates(u): line2.coordinates(v) for u, v in zip(h1, h2)}
    if len(table) != len(line1.points()):
        return None
    return coordinatize(t.field, table, 1, 1)


class GridKind(Enum):
    FULL_LINE = 'full-line'
    EMPTY = 'empty'
    ONE_POINT = 'one-point'
    TWO_POINTS = 'two-points'


class GridSubcase(Enum):
    NONE = 'none'
    I_A = '(i)(a)'
    I_B = '(i)(b)'
    II = '(ii)'


@dataclass
class GridClassification:
    kind: Optional[GridKind]
    exceptional: Tuple[ProductPoint, ...]
    subcase: GridSubcase = GridSubcase.NONE
    subcases: Dict[ProjPoint, GridSubcase] = dataclass_field(default_factory=dict)
    violations: List[str] = dataclass_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.kind is not None and not self.violations


def classify_line_grid(mu: ProductMapTable, a: ProjPoint) -> GridClassification:
    """
    Shape of the exceptional set of a linear mapping of a grid
    ``l1 x l2`` whose row ``A x l2`` is fully defined.
    """
    if mu.n != 1 or mu.m != 1:
        raise ValueError('A grid lives on PG(1) x PG(1)')

    l1, l2 = mu.first_points(), mu.second_points()
    row_a = _row(a, l2)
    if any(mu[p] is None for p in row_a):
        raise PreconditionViolated(f'The row of {a} is not fully defined')

    exceptional = tuple(mu.exceptional())
    image_a = mu.images(row_a)
    result = GridClassification(None, exceptional)
    full_rows = [x for x in l1 if all(mu(x, y) is None for y in l2)]

    if full_rows:
        result.kind = GridKind.FULL_LINE
        if len(exceptional) != len(l2):
            result.violations.append(
                'the exceptional set holds a full line and further points'
            )

    elif not exceptional:
        result.kind = GridKind.EMPTY

    elif len(exceptional) == 1:
        result.kind = GridKind.ONE_POINT
        (x1, p), = [(e.x, e.y) for e in exceptional]
        ap = mu(a, p)

        for x in l1:
            if x in (a, x1):
                continue
            image_x = mu.images(_row(x, l2))
            if image_x == image_a:
                result.subcases[x] = GridSubcase.I_A
                if mu.images(_row(x1, l2)) != {ap}:
                    result.violations.append(
                        f'rows of {a} and {x} agree but the row of {x1} is not '
                        f'collapsed onto {ap}'
                    )
            elif image_x & image_a == {ap}:
                result.subcases[x] = GridSubcase.I_B
            else:
                result.subcases[x] = GridSubcase.NONE
                result.violations.append(
                    f'the rows of {a} and {x} neither agree nor meet in {ap} only'
                )

        if result.subcases:
            result.subcase = next(iter(result.subcases.values()))

    elif len(exceptional) == 2:
        result.kind = GridKind.TWO_POINTS
        result.subcase = GridSubcase.II
        e1, e2 = exceptional

        if e1.x == e2.x or e1.y == e2.y:
            result.violations.append(f'{e1} and {e2} are collinear')
        for this, that in ((e1, e2), (e2, e1)):
            expected = {mu(a, this.y)}
            if mu.images(_row(that.x, l2)) != expected:
                result.violations.append(
                    f'the row of {that.x} is not collapsed onto {mu(a, this.y)}'
                )
        if mu.images(mu.points()) != image_a:
            result.violations.append(f'the image is larger than the row of {a}')

    else:
        result.violations.append(
            f'{len(exceptional)} exceptional points and no exceptional line'
        )

    return result


def enumerate_grid_tables(field: Field, N: int) -> Iterator[ProductMapTable]:
    """
    Every table on PG(1) x PG(1) into PG(N) passing (L1) and (L2) whose
    first row is fully defined. Exhaustive, so only for tiny fields.
    """
    line = enumerate_points(1, field)
    targets = [None] + list(enumerate_points(N, field))
    valid = [
        images for images in itertools.product(targets, repeat=len(line))
        if not line_violations(field, images)
    ]
    valid_set = set(valid)
    first_rows = [images for images in valid if None not in images]
    logger.debug('%d valid line assignments, %d defined', len(valid), len(first_rows))

    for rows in itertools.product(first_rows, *[valid] * (len(line) - 1)):
        columns = zip(*rows)
        if all(column in valid_set for column in columns):
            yield ProductMapTable(
                field, 1, 1, N,
                {
                    ProductPoint(x, y): rows[i][j]
                    for i, x in enumerate(line)
                    for j, y in enumerate(line)
                },
            )


# vim:sw=4:ts=4:et:
