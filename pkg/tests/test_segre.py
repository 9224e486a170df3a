import itertools

import pytest

from segredecomp.errors import NotOnVariety
from segredecomp.gf import Field
from segredecomp.linmap import check_axioms
from segredecomp.product import ProductPoint, enumerate_product_points
from segredecomp.projspace import (
    ProjPoint, Subspace, enumerate_points, enumerate_subspaces, line_through, span,
)
from segredecomp.segre import (
    SegreEmbedding, kron, regularity_dimension, segre_embed, segre_preimage,
)


def P(*coords):
    return ProjPoint(tuple(coords))


@pytest.mark.parametrize('n, m, q', [(2, 1, 2), (2, 1, 3), (2, 2, 2), (3, 1, 2)])
def test_regularity(n, m, q):
    embedding = SegreEmbedding(Field(q), n, m)
    assert regularity_dimension(embedding) == n * m + n + m


def test_embed(gf2):
    assert segre_embed(gf2, P(0, 1, 1), P(1, 1)) == P(0, 0, 1, 1, 1, 1)
    assert segre_embed(gf2, P(1, 0, 0), P(0, 1)) == P(0, 1, 0, 0, 0, 0)

    with pytest.raises(ValueError):
        SegreEmbedding(gf2, 2, 1)(P(0, 1), P(1, 1))


def test_embedding_is_injective(gf3):
    embedding = SegreEmbedding(gf3, 2, 1)
    assert len(set(embedding.image())) == 52
    assert embedding.tabulate().is_embedding()


def test_preimage_inverts_embedding(gf3):
    embedding = SegreEmbedding(gf3, 2, 1)
    for point in enumerate_product_points(gf3, 2, 1):
        assert segre_preimage(embedding, embedding(point.x, point.y)) == point


def test_preimage_off_the_variety(gf2):
    embedding = SegreEmbedding(gf2, 2, 1)
    with pytest.raises(NotOnVariety):
        embedding.preimage(P(1, 0, 0, 1, 0, 0))
    with pytest.raises(NotOnVariety):
        embedding.preimage(P(1, 0, 0))


@pytest.mark.parametrize('q', [2, 3])
def test_segre_table_passes_axioms(q):
    assert check_axioms(SegreEmbedding(Field(q), 2, 1).tabulate()).ok


def test_kron(gf3):
    assert (kron(gf3.identity(2), gf3.identity(3)) == gf3.identity(6)).all()

    a = gf3([[1, 2]])
    b = gf3([[0, 1], [2, 2]])
    assert kron(a, b).tolist() == [[0, 1, 0, 2], [2, 2, 1, 1]]


def test_line_transfer_is_a_projectivity(gf4):
    embedding = SegreEmbedding(gf4, 2, 1)
    g = line_through(gf4, P(0, 0, 1), P(0, 1, 0))
    transfer = embedding.line_transfer(g, P(0, 1), P(1, 2))

    assert transfer.sigma == 0
    assert transfer.is_invertible


@pytest.mark.parametrize('q', [2, 3])
def test_line_transfer_exhaustive(q):
    field = Field(q)
    embedding = SegreEmbedding(field, 2, 1)

    for g in enumerate_subspaces(field, 2, 1):
        for first, second in itertools.permutations(enumerate_points(1, field), 2):
            transfer = embedding.line_transfer(g, first, second)
            assert transfer.sigma == 0
            assert transfer.is_invertible

            g1 = span(field, [embedding(p, first) for p in g.points()])
            g2 = span(field, [embedding(p, second) for p in g.points()])
            for p in g.points():
                moved = transfer(g1.coordinates(embedding(p, first)))
                assert moved == g2.coordinates(embedding(p, second))


def test_index(gf2):
    embedding = SegreEmbedding(gf2, 2, 1)
    assert embedding.ambient == 5
    assert embedding.index(2, 1) == 5
    x, y = P(0, 0, 1), P(0, 1)
    assert embedding(x, y).coords[embedding.index(2, 1)] == 1


# vim:sw=4:ts=4:et:
