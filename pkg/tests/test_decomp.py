import pytest

from segredecomp.decomp import (
    build_alpha, build_phi, check_condition_i, check_condition_ii, decompose,
    images_in_joins, image_transfer, is_special_line, verify_decomposition,
)
from segredecomp.errors import (
    HypothesisFailure, InconsistentAutomorphisms, NoUniquePreimage, RowNotSemilinear,
)
from segredecomp.gf import Field, FieldAutomorphism
from segredecomp.linmap import ProductMapTable, SemilinearMap, check_axioms
from segredecomp.product import ProductPoint
from segredecomp.projspace import (
    ProjPoint, Subspace, enumerate_subspaces, line_through, normalize,
)
from segredecomp.segre import SegreEmbedding
from segredecomp._generators import RoundTripInstance


def P(*coords):
    return ProjPoint(tuple(coords))


def roundtrip_instances():
    for seed in range(75):
        yield RoundTripInstance(Field(2), 2, 1, 5, seed=seed)()
    for seed in range(75):
        yield RoundTripInstance(Field(3), 2, 1, 5, seed=seed)()
    # Frobenius-twisted maps over GF(4)
    for seed in range(50):
        yield RoundTripInstance(Field(2, 2), 2, 1, 5, seed=seed, sigma=1)()


def test_conditions_on_segre_table(segre_table):
    assert check_condition_ii(segre_table) == P(0, 0, 1)

    plane, basis = check_condition_i(segre_table)
    assert plane.is_whole
    assert basis == (P(0, 1), P(1, 0))


def test_condition_i_needs_a_plane(gf2):
    t = SegreEmbedding(gf2, 1, 1).tabulate()
    assert check_condition_i(t) is None

    with pytest.raises(HypothesisFailure) as e:
        decompose(t)
    assert e.value.condition == 'condition-i'


def test_collapsed_rows_fail_condition_ii(gf2):
    segre = SegreEmbedding(gf2, 2, 1)
    t = ProductMapTable.tabulate(gf2, 2, 1, 5, lambda p: segre(p.x, P(0, 1)))
    assert check_condition_ii(t) is None


def test_identity_decomposition(segre_table):
    cert = decompose(segre_table)
    assert cert.verified
    assert cert.alpha_prime == SemilinearMap.identity(segre_table.field, 1)
    assert cert.phi == SemilinearMap.identity(segre_table.field, 5)
    assert cert.report.checked == 21


def test_identity_triple_verifies(segre_table):
    field = segre_table.field
    report = verify_decomposition(
        segre_table, SemilinearMap.identity(field, 1), SemilinearMap.identity(field, 5)
    )
    assert report.ok
    assert report.checked == 21


def test_perturbed_alpha_is_caught(segre_table):
    field = segre_table.field
    swap = SemilinearMap(field, ((0, 1), (1, 0)))
    report = verify_decomposition(segre_table, swap, SemilinearMap.identity(field, 5))
    assert not report.ok
    assert report.mismatches


def test_verify_checks_dimensions(segre_table):
    field = segre_table.field
    with pytest.raises(ValueError):
        verify_decomposition(
            segre_table, SemilinearMap.identity(field, 2), SemilinearMap.identity(field, 5)
        )


def test_roundtrip_soundness():
    for instance in roundtrip_instances():
        t = instance.table
        segre = SegreEmbedding(t.field, t.n, t.m)
        cert = decompose(t)
        assert cert.verified, instance.answer
        assert not cert.report.mismatches
        assert cert.report.checked == len(t.points())

        for a, b in zip(cert.basis, cert.basis[1:]):
            line = line_through(t.field, a, b)
            assert is_special_line(t, cert.phi, cert.alpha_prime, line)

            # Both sides agree pointwise on the special-line subgrid
            for x in t.first_points():
                for y in line.points():
                    assert cert.phi(segre(x, y)) == t(x, cert.alpha_prime(y))


def test_parallel_verification_matches():
    t = RoundTripInstance(Field(3), 2, 1, 5, seed=11)().table
    cert = decompose(t)
    swap = SemilinearMap(t.field, ((0, 1), (1, 0)))
    serial = verify_decomposition(t, swap, cert.phi)
    parallel = verify_decomposition(t, swap, cert.phi, workers=2)
    assert parallel.mismatches == serial.mismatches


def test_phi_agrees_with_the_hidden_psi():
    instance = RoundTripInstance(Field(3), 2, 1, 5, seed=3)()
    t = instance.table
    _, basis = check_condition_i(t)
    phi = build_phi(t, basis)
    segre = SegreEmbedding(t.field, 2, 1)

    for a in basis:
        for x in t.first_points():
            assert phi(segre(x, a)) == t(x, a)


def test_every_line_of_the_identity_is_special(gf2):
    t = SegreEmbedding(gf2, 2, 2).tabulate()
    cert = decompose(t)
    assert cert.verified
    for line in enumerate_subspaces(gf2, 2, 1):
        assert is_special_line(t, cert.phi, cert.alpha_prime, line)


def test_collapsed_image_is_not_special(gf2):
    segre = SegreEmbedding(gf2, 2, 1)
    psi = SemilinearMap(gf2, ((1, 0, 0, 0, 0, 0),) * 6)
    t = ProductMapTable.tabulate(gf2, 2, 1, 5, lambda p: psi(segre(p.x, p.y)))
    line = Subspace.whole(gf2, 1)
    assert not is_special_line(t, psi, SemilinearMap.identity(gf2, 1), line)


def test_mixed_automorphisms(gf4):
    segre = SegreEmbedding(gf4, 2, 1)
    frobenius = FieldAutomorphism(gf4, 1)

    def image(p):
        if p.y == P(0, 1):
            return segre(p.x, p.y)
        if p.y == P(1, 0):
            return segre(normalize(gf4, frobenius(p.x.vector(gf4))), p.y)
        return None

    t = ProductMapTable.tabulate(gf4, 2, 1, 5, image)
    with pytest.raises(InconsistentAutomorphisms):
        build_phi(t, (P(0, 1), P(1, 0)))


def test_row_not_semilinear(segre_table):
    a = P(0, 1)
    first, second = ProductPoint(P(0, 0, 1), a), ProductPoint(P(0, 1, 0), a)
    t = segre_table.replace(first, segre_table[second]).replace(second, segre_table[first])

    with pytest.raises(RowNotSemilinear):
        build_phi(t, (a, P(1, 0)))


def test_collapsed_row_has_no_unique_preimage(segre_table):
    field = segre_table.field
    a = P(0, 0, 1)
    t = segre_table.replace(ProductPoint(a, P(1, 1)), segre_table(a, P(0, 1)))

    with pytest.raises(NoUniquePreimage):
        build_alpha(t, SemilinearMap.identity(field, 5), a)


def test_alpha_undoes_beta():
    instance = RoundTripInstance(Field(3), 2, 1, 5, seed=5)()
    t = instance.table
    beta, psi = instance.answer
    cert = decompose(t)
    segre = SegreEmbedding(t.field, 2, 1)

    for point in t.points():
        assert cert.phi(segre(point.x, point.y)) == t(point.x, cert.alpha_prime(point.y))
        assert t(point.x, point.y) == psi(segre(point.x, beta(point.y)))


def test_row_images_lie_in_joins():
    instance = RoundTripInstance(Field(3), 2, 1, 5, seed=2)()
    for t in (SegreEmbedding(Field(3), 2, 1).tabulate(), instance.table):
        for g in enumerate_subspaces(t.field, 2, 1):
            assert images_in_joins(t, g, Subspace.whole(t.field, 1))


def test_image_transfer_is_a_projectivity():
    instance = RoundTripInstance(Field(2, 2), 2, 1, 5, seed=4)()
    t = instance.table
    for g in enumerate_subspaces(t.field, 2, 1)[:5]:
        transfer = image_transfer(t, g, P(0, 1), P(1, 1))
        assert transfer is not None
        assert transfer.sigma == 0
        assert transfer.is_invertible


def test_image_transfer_needs_global_lines(segre_table):
    g = line_through(segre_table.field, P(0, 0, 1), P(0, 1, 0))
    t = segre_table.replace(ProductPoint(P(0, 0, 1), P(0, 1)), None)
    assert image_transfer(t, g, P(0, 1), P(1, 0)) is None


def test_mutation_sensitivity():
    for seed in range(20):
        instance = RoundTripInstance(Field(2), 2, 1, 5, seed=seed)()
        t = instance.table
        cert = decompose(t)

        for point in t.points()[::4]:
            other = next(
                z for z in SegreEmbedding(t.field, 2, 1).image() if z != t[point]
            )
            mutated = t.replace(point, other)
            report = verify_decomposition(mutated, cert.alpha_prime, cert.phi)
            assert not report.ok or not check_axioms(mutated).ok


# vim:sw=4:ts=4:et:
