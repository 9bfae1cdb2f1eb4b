"""
Test the verification pipeline.

"""
from fractions import Fraction

from hamcrest import (
    assert_that,
    contains_exactly,
    equal_to,
    has_entries,
    has_item,
    is_,
    none,
)

from spinlab.catalog import CatalogEntry
from spinlab.constants import HOLONOMY_CAVEAT
from spinlab.curvature import AlgCurvature
from spinlab.geometry import from_document, load
from spinlab.main import create_spinlab_graph
from spinlab.splitting import make_partition
from spinlab.tests.fixtures import BIANCHI_COUNTEREXAMPLE, e, m5_document, m7_document


HOMOGENEOUS_CHECKS = [
    "clifford.self_adjoint",
    "clifford.square_identity",
    "clifford.trace_identity",
    "torsion.reference",
    "homogeneous.torsion_matches",
    "homogeneous.torsion_invariance",
    "homogeneous.curvature_invariance",
    "homogeneous.scal_g_oracle",
    "curvature.symmetries",
    "curvature.block_structure",
    "curvature.sigma_sum",
    "curvature.spinor_sigma_sum",
    "curvature.partial_lichnerowicz",
    "curvature.bianchi",
]


class TestAnalysisPipeline:

    def setup_method(self):
        self.graph = create_spinlab_graph(testing=True)
        self.catalog = self.graph.catalog
        self.pipeline = self.graph.analysis_pipeline

    def test_default_tolerances(self):
        assert_that(self.pipeline.tolerance, is_(equal_to(1e-9)))
        assert_that(self.pipeline.eigen_tolerance, is_(equal_to(1e-8)))
        assert_that(self.pipeline.curvature_tolerance, is_(equal_to(1e-10)))

    def test_nearly_kaehler(self):
        analysis = self.pipeline.run(self.catalog.get("nk_F12"))

        assert_that(analysis.passed, is_(equal_to(True)))
        assert_that(analysis.split_type, is_(equal_to(True)))
        assert_that(analysis.norm2, is_(equal_to(4)))
        assert_that(analysis.sigma, is_(equal_to(e(6, 1, 2, 5, 6) * 2 - e(6, 1, 2, 3, 4) * 2 - e(6, 3, 4, 5, 6) * 2)))
        assert_that(analysis.spectrum.eigenvalues, contains_exactly(-4.0, 0.0, 4.0))
        assert_that(
            [check.name for check in analysis.checks],
            contains_exactly(
                "clifford.self_adjoint",
                "clifford.square_identity",
                "clifford.trace_identity",
                "torsion.given_norm",
            ),
        )
        assert_that(analysis.curvature, is_(none()))
        assert_that(analysis.notes, contains_exactly(HOLONOMY_CAVEAT))

        bounds = analysis.bounds
        assert_that(bounds.bounds_input.mu2_list, contains_exactly(0, 16))
        assert_that(bounds.report.values(), has_entries({"β_split": 4, "β_univ": 4, "β_tw": 4}))
        assert_that(bounds.sources, has_entries(dict(t_norm2="given", mu2_list="spectrum of T")))

    def test_stiefel_v2r4(self):
        analysis = self.pipeline.run(self.catalog.get("stiefel_v2r4"))

        assert_that(analysis.passed, is_(equal_to(True)))
        assert_that([check.name for check in analysis.checks], contains_exactly(*HOMOGENEOUS_CHECKS))
        assert_that(analysis.spectrum.eigenvalues, contains_exactly(-2.0, 0.0, 2.0))
        assert_that(analysis.spectrum.multiplicities, contains_exactly(1, 2, 1))
        assert_that(analysis.homogeneous.scal_nabla, is_(equal_to(Fraction(4))))
        assert_that(analysis.homogeneous.scal_g, is_(equal_to(Fraction(7))))
        assert_that(analysis.curvature.partial_scal, contains_exactly(0, 2, 2))

        report = analysis.bounds.report
        assert_that(analysis.bounds.sources, has_entries(dict(scal_g_min="homogeneous Scal^g")))
        assert_that((report.beta_split, report.beta_univ, report.beta_tw), is_(equal_to((1, 1, Fraction(15, 16)))))

    def test_stiefel_v2r5(self):
        analysis = self.pipeline.run(self.catalog.get("stiefel_v2r5"))

        assert_that(analysis.passed, is_(equal_to(True)))
        assert_that(analysis.homogeneous.scal_g, is_(equal_to(Fraction(33, 2))))
        assert_that(analysis.bounds.bounds_input.mu2_list, contains_exactly(1, 9))

        report = analysis.bounds.report
        assert_that(
            (report.beta_split, report.beta_univ, report.beta_tw),
            is_(equal_to((Fraction(9, 4), Fraction(9, 4), Fraction(35, 16)))),
        )

    def test_flat_trivial(self):
        analysis = self.pipeline.run(self.catalog.get("flat_trivial"))

        assert_that(analysis.passed, is_(equal_to(True)))
        assert_that(analysis.sigma.is_zero(), is_(equal_to(True)))
        assert_that(analysis.spectrum.eigenvalues, contains_exactly(0.0))
        assert_that(analysis.bounds.report.values(), has_entries({"β_split": 0, "β_univ": 0, "β_tw": 0}))

    def test_nonsplit_example(self):
        analysis = self.pipeline.run(self.catalog.get("nonsplit_example"))

        assert_that(analysis.passed, is_(equal_to(True)))
        assert_that(analysis.split_type, is_(equal_to(False)))
        assert_that(analysis.decomposition.two_one, is_(equal_to(e(3, 1, 2, 3))))
        assert_that(analysis.bounds, is_(none()))
        assert_that(analysis.notes, has_item("bounds skipped: no Scal^g_min available"))

    def test_non_split_curvature_checks_are_reported_only(self):
        entry = CatalogEntry(
            name="plane",
            n=3,
            partition=make_partition(3, [{1, 2}, {3}]),
            torsion=e(3, 1, 2, 3),
            curvature=AlgCurvature.from_records(3, [((1, 2, 2, 1), 1)]),
        )
        analysis = self.pipeline.run(entry)

        assert_that(analysis.check("curvature.block_structure").asserted, is_(equal_to(False)))
        assert_that(analysis.check("curvature.bianchi").asserted, is_(equal_to(True)))
        assert_that(analysis.check("curvature.bianchi").passed, is_(equal_to(True)))
        assert_that(
            analysis.notes,
            has_item("block, σ̃ and partial Lichnerowicz checks are reported only: torsion is not of split type"),
        )

    def test_bianchi_counterexample_fails(self):
        analysis = self.pipeline.run(load(BIANCHI_COUNTEREXAMPLE))

        assert_that(analysis.passed, is_(equal_to(False)))
        assert_that(analysis.check("curvature.symmetries").passed, is_(equal_to(True)))
        assert_that(analysis.check("curvature.bianchi").passed, is_(equal_to(False)))

    def test_external_scalars(self):
        for document in (m5_document(), m7_document()):
            analysis = self.pipeline.run(from_document(document))

            assert_that(analysis.passed, is_(equal_to(True)))
            assert_that(analysis.check("torsion.given_norm").asserted, is_(equal_to(False)))
            assert_that(analysis.bounds.report.values(), has_entries({"β_split": 1, "β_univ": 1, "β_tw": 1}))
            assert_that(analysis.bounds.report.notes, has_item("β_split = β_univ = β_tw = 1"))


def test_tolerance_configuration():
    graph = create_spinlab_graph(testing=True, analysis_pipeline=dict(tolerance=1e-6))
    assert_that(graph.analysis_pipeline.tolerance, is_(equal_to(1e-6)))
