"""
Test geometry documents.

"""
import json
from fractions import Fraction

import pytest
from hamcrest import (
    assert_that,
    calling,
    contains_exactly,
    equal_to,
    instance_of,
    is_,
    raises,
)

from spinlab.catalog import BUILDERS, CurvatureSource
from spinlab.errors import InvalidGeometryError, SpinlabInputError
from spinlab.geometry import from_document, load, pointer, to_document
from spinlab.report import dumps
from spinlab.tests.fixtures import BIANCHI_COUNTEREXAMPLE, write_document


def minimal_document(**kwargs) -> dict:
    document = dict(
        n=4,
        partition=[[1, 2], [3, 4]],
        torsion=[dict(indices=[1, 2, 3], value=1)],
    )
    document.update(kwargs)
    return document


def pointer_of(document) -> str:
    try:
        from_document(document)
    except InvalidGeometryError as error:
        return error.pointer
    raise AssertionError("expected an invalid geometry")


@pytest.mark.parametrize("name", sorted(BUILDERS))
def test_catalog_entries_round_trip(name):
    entry = BUILDERS[name]()
    document = json.loads(dumps(to_document(entry)))
    loaded = from_document(document)

    assert_that(loaded.name, is_(equal_to(entry.name)))
    assert_that(loaded.torsion, is_(equal_to(entry.torsion)))
    assert_that(loaded.partition, is_(equal_to(entry.partition)))
    assert_that(loaded.curvature_source, is_(equal_to(entry.curvature_source)))
    assert_that(loaded.extras, is_(equal_to(entry.extras)))
    assert_that(loaded.scalars, is_(equal_to(entry.scalars)))
    assert_that(to_document(loaded), is_(equal_to(to_document(entry))))


def test_pointer():
    assert_that(pointer("torsion", 0, "indices"), is_(equal_to("/torsion/0/indices")))
    assert_that(pointer("extras", "a/b~c"), is_(equal_to("/extras/a~1b~0c")))
    assert_that(pointer(), is_(equal_to("")))


def test_exact_numbers():
    entry = from_document(minimal_document(torsion=[dict(indices=[1, 2, 3], value="3/4")]))
    assert_that(entry.torsion.terms[(1, 2, 3)], is_(equal_to(Fraction(3, 4))))
    entry = from_document(minimal_document(torsion=[dict(indices=[1, 2, 3], value=0.5)]))
    assert_that(entry.torsion.terms[(1, 2, 3)], is_(instance_of(Fraction)))


def test_default_name():
    assert_that(from_document(minimal_document()).name, is_(equal_to("geometry")))


def test_explicit_curvature():
    document = json.loads(BIANCHI_COUNTEREXAMPLE.read_text(encoding="utf-8"))
    entry = from_document(document)
    assert_that(entry.curvature_source, is_(equal_to(CurvatureSource.EXPLICIT)))
    assert_that(entry.curvature(3, 4, 1, 2), is_(equal_to(1)))
    assert_that(to_document(entry)["curvature"], contains_exactly(dict(indices=[1, 2, 3, 4], value=1)))


def test_schema_errors():
    assert_that(pointer_of(dict(n=4, partition=[[1, 2, 3, 4]])), is_(equal_to("/")))
    assert_that(pointer_of(minimal_document(n="four")), is_(equal_to("/n")))
    assert_that(pointer_of(minimal_document(colour="red")), is_(equal_to("/")))
    assert_that(
        pointer_of(minimal_document(torsion=[dict(indices=[1, 2, 3], value="0.5")])),
        is_(equal_to("/torsion/0/value")),
    )


@pytest.mark.parametrize(
    "torsion",
    [
        [dict(indices=[2, 1, 3], value=1)],
        [dict(indices=[1, 2, 5], value=1)],
        [dict(indices=[1, 2], value=1)],
        [dict(indices=[1, 2, 3], value=1), dict(indices=[1, 2, 4], value=1), dict(indices=[1, 2, 3], value=1)],
    ],
)
def test_invalid_torsion_terms(torsion):
    location = f"/torsion/{len(torsion) - 1}/indices"
    assert_that(pointer_of(minimal_document(torsion=torsion)), is_(equal_to(location)))


def test_invalid_partition():
    assert_that(pointer_of(minimal_document(partition=[[1, 2], [2, 3, 4]])), is_(equal_to("/partition")))


def test_curvature_and_homogeneous_are_exclusive():
    document = minimal_document(
        torsion=[],
        curvature=[dict(indices=[1, 2, 1, 2], value=-1)],
        homogeneous=dict(brackets=[], h_dim=0, metric_diag=[1, 1, 1, 1]),
    )
    assert_that(pointer_of(document), is_(equal_to("/curvature")))


def test_conflicting_curvature_records():
    document = minimal_document(
        curvature=[dict(indices=[1, 2, 3, 4], value=1), dict(indices=[3, 4, 1, 2], value=2)],
    )
    assert_that(pointer_of(document), is_(equal_to("/curvature")))


def test_homogeneous_section_errors():
    document = minimal_document(torsion=[], homogeneous=dict(brackets=[], h_dim=0, metric_diag=[1, 1]))
    assert_that(pointer_of(document), is_(equal_to("/homogeneous/metric_diag")))

    document = minimal_document(
        torsion=[],
        homogeneous=dict(brackets=[dict(i=1, j=2, k=9, value=1)], h_dim=0, metric_diag=[1, 1, 1, 1]),
    )
    assert_that(pointer_of(document), is_(equal_to("/homogeneous/brackets/0")))


def test_negative_scalars():
    document = minimal_document(scalars=dict(scal_g_min=1, t_norm2=-1))
    assert_that(pointer_of(document), is_(equal_to("/scalars/t_norm2")))
    document = minimal_document(scalars=dict(scal_g_min=1, mu2_list=[1, -4]))
    assert_that(pointer_of(document), is_(equal_to("/scalars/mu2_list/1")))


def test_load(tmp_path):
    path = write_document(tmp_path / "plane.json", minimal_document())
    entry = load(path)
    assert_that(entry.name, is_(equal_to("plane")))
    assert_that(entry.torsion.is_zero(), is_(equal_to(False)))


def test_load_errors(tmp_path):
    assert_that(calling(load).with_args(tmp_path / "missing.json"), raises(SpinlabInputError))

    path = tmp_path / "broken.json"
    path.write_text("{\"n\": 4,", encoding="utf-8")
    assert_that(calling(load).with_args(path), raises(InvalidGeometryError))


@pytest.mark.parametrize("value", [float("nan"), float("inf"), float("-inf")])
def test_non_finite_numbers(value):
    document = minimal_document(torsion=[dict(indices=[1, 2, 3], value=value)])
    assert_that(pointer_of(document), is_(equal_to("/torsion/0/value")))
    document = minimal_document(scalars=dict(scal_g_min=1, mu2_list=[0, value]))
    assert_that(pointer_of(document), is_(equal_to("/scalars/mu2_list/1")))


def test_load_rejects_overflowing_numbers(tmp_path):
    path = tmp_path / "overflow.json"
    path.write_text(
        '{"n": 3, "partition": [[1, 2, 3]], "torsion": [{"indices": [1, 2, 3], "value": 1e400}]}',
        encoding="utf-8",
    )
    assert_that(calling(load).with_args(path), raises(InvalidGeometryError))
