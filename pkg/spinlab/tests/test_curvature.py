"""
Test algebraic curvature tensors.

"""
from fractions import Fraction

import numpy as np
from hamcrest import (
    assert_that,
    calling,
    contains_exactly,
    equal_to,
    greater_than,
    is_,
    less_than,
    raises,
)

from spinlab.clifford import act, build_rep
from spinlab.curvature import (
    AlgCurvature,
    bianchi_report,
    block_checks,
    curvature_endomorphism,
    partial_scal,
    ricci,
    scal,
    sigma_tilde,
    validate,
    zeros,
)
from spinlab.errors import InconsistentDataError, IndexOutOfRangeError, InvalidCurvatureError
from spinlab.exterior import Form, sigma_T
from spinlab.homogeneous import canonical_curvature, canonical_torsion, stiefel_space
from spinlab.splitting import make_partition
from spinlab.tests.fixtures import e


def sphere_plane() -> AlgCurvature:
    return AlgCurvature.from_records(3, [((1, 2, 2, 1), 1)])


def stiefel_setup():
    space = stiefel_space(4)
    partition = make_partition(5, [{1, 2}, {3, 4}, {5}])
    return canonical_curvature(space), partition, sigma_T(canonical_torsion(space))


def test_records_complete_the_symmetries():
    curvature = sphere_plane()
    assert_that(curvature(1, 2, 2, 1), is_(equal_to(1)))
    assert_that(curvature(1, 2, 1, 2), is_(equal_to(-1)))
    assert_that(curvature(2, 1, 1, 2), is_(equal_to(1)))
    assert_that(curvature.records(), contains_exactly(((1, 2, 1, 2), -1)))
    assert_that(curvature.is_exact, is_(equal_to(True)))


def test_ricci_contraction():
    curvature = sphere_plane()
    ric = ricci(curvature)
    assert_that(
        [[ric[q, s] for s in range(3)] for q in range(3)],
        is_(equal_to([[1, 0, 0], [0, 1, 0], [0, 0, 0]])),
    )
    assert_that(scal(curvature), is_(equal_to(Fraction(2))))
    assert_that(partial_scal(curvature, make_partition(3, [{1, 2}, {3}])), contains_exactly(0, 2))


def test_conflicting_records():
    assert_that(
        calling(AlgCurvature.from_records).with_args(4, [((1, 2, 3, 4), 1), ((3, 4, 1, 2), 2)]),
        raises(InconsistentDataError),
    )
    assert_that(
        calling(AlgCurvature.from_records).with_args(4, [((1, 1, 3, 4), 1)]),
        raises(InconsistentDataError),
    )
    assert_that(
        calling(AlgCurvature.from_records).with_args(3, [((1, 2, 3, 4), 1)]),
        raises(IndexOutOfRangeError),
    )


def test_symmetry_violations_are_reported():
    coeffs = zeros((2,) * 4)
    coeffs[0, 1, 0, 1] = Fraction(1)
    curvature = AlgCurvature(n=2, coeffs=coeffs)
    report = validate(curvature)
    assert_that(report.passed, is_(equal_to(False)))
    assert_that(report.first_pair, is_(equal_to(1.0)))
    assert_that(calling(ricci).with_args(curvature), raises(InvalidCurvatureError))


def test_float_curvature():
    curvature = AlgCurvature.from_records(3, [((1, 2, 2, 1), 0.5)])
    assert_that(curvature.is_exact, is_(equal_to(False)))
    assert_that(scal(curvature), is_(equal_to(1.0)))


def test_block_structure_of_stiefel_curvature():
    curvature, partition, _ = stiefel_setup()
    report = block_checks(curvature, partition)
    assert_that(report.passed, is_(equal_to(True)))
    assert_that(report.cross_pair_blocks, is_(greater_than(0.0)))
    assert_that(partial_scal(curvature, partition), contains_exactly(0, 2, 2))


def test_block_structure_violation():
    curvature = AlgCurvature.from_records(3, [((1, 3, 3, 1), 1)])
    report = block_checks(curvature, make_partition(3, [{1, 2}, {3}]))
    assert_that(report.passed, is_(equal_to(False)))
    assert_that(report.first_pair_across, is_(equal_to(1.0)))


def test_sigma_tilde_sums_to_sigma():
    curvature, partition, sigma = stiefel_setup()
    tildes = [sigma_tilde(curvature, partition, i) for i in range(1, partition.k + 1)]
    assert_that(sum(tildes, Form.zero(5)), is_(equal_to(sigma)))
    assert_that(sigma, is_(equal_to(-e(5, 1, 2, 3, 4))))


def test_partial_lichnerowicz():
    curvature, partition, _ = stiefel_setup()
    rep = build_rep(5)
    partial = partial_scal(curvature, partition)
    for i in range(1, partition.k + 1):
        expected = act(rep, sigma_tilde(curvature, partition, i)) + rep.identity() * (float(partial[i - 1]) / 4)
        endo = curvature_endomorphism(rep, curvature, partition, i)
        assert_that(endo.distance(expected), is_(less_than(1e-12)))


def test_bianchi_identity_with_torsion():
    curvature, _, sigma = stiefel_setup()
    report = bianchi_report(curvature, sigma)
    assert_that(report.passed, is_(equal_to(True)))
    assert_that(report.residual, is_(equal_to(0.0)))


def test_bianchi_identity_failure():
    curvature = AlgCurvature.from_records(4, [((1, 2, 3, 4), 1)])
    report = bianchi_report(curvature, Form.zero(4))
    assert_that(report.passed, is_(equal_to(False)))
    assert_that(report.residual, is_(equal_to(1.0)))
    assert_that(report.alternation, is_(equal_to(0.0)))


def test_zero_curvature():
    curvature = AlgCurvature.zero(4)
    assert_that(scal(curvature), is_(equal_to(0)))
    assert_that(curvature.records(), is_(equal_to([])))
    assert_that(np.all(curvature.coeffs == 0), is_(equal_to(True)))
