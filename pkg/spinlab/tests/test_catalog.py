"""
Test the built-in catalog.

"""
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from hamcrest import (
    assert_that,
    calling,
    contains_exactly,
    equal_to,
    is_,
    only_contains,
    raises,
    same_instance,
)

from spinlab.catalog import BUILDERS, CatalogEntry, CurvatureSource
from spinlab.errors import DimensionMismatchError, UnknownEntryError
from spinlab.exterior import Form
from spinlab.main import create_spinlab_graph
from spinlab.splitting import make_partition
from spinlab.tests.fixtures import e, nearly_kaehler_torsion


class TestCatalog:

    def setup_method(self):
        self.graph = create_spinlab_graph(testing=True)
        self.catalog = self.graph.catalog

    def test_names(self):
        assert_that(
            self.catalog.list(),
            contains_exactly(
                "flat_trivial",
                "nk_CP3",
                "nk_F12",
                "nonsplit_example",
                "stiefel_v2r4",
                "stiefel_v2r5",
            ),
        )

    def test_unknown_entry(self):
        assert_that(calling(self.catalog.get).with_args("nk_S6"), raises(UnknownEntryError))

    def test_entries_are_cached(self):
        assert_that(self.catalog.get("stiefel_v2r4"), is_(same_instance(self.catalog.get("stiefel_v2r4"))))

    def test_entries_are_shared_across_threads(self):
        expected = self.catalog.get("stiefel_v2r5")
        with ThreadPoolExecutor(max_workers=4) as executor:
            entries = list(executor.map(self.catalog.get, ["stiefel_v2r5"] * 16))
        assert_that(entries, only_contains(same_instance(expected)))
        assert_that(sorted(self.catalog.entries), contains_exactly(*sorted(BUILDERS)))

    def test_nearly_kaehler_entries(self):
        f12 = self.catalog.get("nk_F12")
        cp3 = self.catalog.get("nk_CP3")
        assert_that(f12.torsion, is_(equal_to(nearly_kaehler_torsion())))
        assert_that(cp3.torsion, is_(equal_to(f12.torsion)))
        assert_that(cp3.alias_of, is_(equal_to("nk_F12")))
        assert_that(f12.scalars.scal_g_min, is_(equal_to(Fraction(30))))
        assert_that(f12.extras["Ω"], is_(equal_to(e(6, 1, 2) - e(6, 3, 4) + e(6, 5, 6))))
        assert_that(f12.curvature_source, is_(equal_to(CurvatureSource.NONE)))

    def test_stiefel_entries(self):
        entry = self.catalog.get("stiefel_v2r5")
        assert_that(entry.curvature_source, is_(equal_to(CurvatureSource.HOMOGENEOUS)))
        assert_that(entry.partition.as_lists(), contains_exactly([7], [1, 2, 3], [4, 5, 6]))
        assert_that(entry.torsion, is_(equal_to(entry.reference_torsion)))

    def test_flat_and_nonsplit_entries(self):
        assert_that(self.catalog.get("flat_trivial").torsion.is_zero(), is_(equal_to(True)))
        assert_that(self.catalog.get("nonsplit_example").torsion, is_(equal_to(e(3, 1, 2, 3))))


def test_entries_check_dimensions():
    assert_that(
        calling(CatalogEntry).with_args(
            name="mismatch",
            n=4,
            partition=make_partition(3, [{1, 2, 3}]),
            torsion=Form.zero(4),
        ),
        raises(DimensionMismatchError),
    )
