"""
Geometry files: JSON documents validated against `schemas/geometry.json`.

Numbers are JSON numbers or "p/q" strings and load as exact rationals.

"""
import json
from functools import lru_cache
from math import isfinite
from pathlib import Path
from typing import Any, Mapping

from jsonschema import Draft202012Validator as validator
from jsonschema.exceptions import best_match

from spinlab.catalog import CatalogEntry, GivenScalars
from spinlab.curvature import AlgCurvature
from spinlab.errors import InconsistentDataError, InvalidGeometryError, SpinlabInputError
from spinlab.exterior import Form
from spinlab.homogeneous import Bracket, build_space
from spinlab.scalars import decode_number, encode_number
from spinlab.splitting import make_partition


GEOMETRY_SCHEMA = Path(__file__).parent / "schemas" / "geometry.json"


@lru_cache(maxsize=1)
def geometry_validator():
    with open(GEOMETRY_SCHEMA) as fp:
        return validator(
            schema=json.load(fp),
            format_checker=validator.FORMAT_CHECKER,
        )


def pointer(*parts) -> str:
    """
    RFC 6901 JSON pointer for a path of keys and positions.

    """
    return "".join("/" + str(part).replace("~", "~0").replace("/", "~1") for part in parts)


def _non_finite(value: Any, path: tuple = ()):
    if isinstance(value, float) and not isfinite(value):
        yield path
    elif isinstance(value, Mapping):
        for key, item in value.items():
            yield from _non_finite(item, (*path, key))
    elif isinstance(value, list):
        for position, item in enumerate(value):
            yield from _non_finite(item, (*path, position))


def validate_document(document: Any) -> None:
    error = best_match(geometry_validator().iter_errors(document))
    if error is not None:
        raise InvalidGeometryError(error.message, pointer(*error.absolute_path))

    # the schema accepts NaN and infinities as numbers
    location = next(_non_finite(document), None)
    if location is not None:
        raise InvalidGeometryError("Numbers must be finite", pointer(*location))


def _decode_form(n: int, terms, location: tuple, degree: int | None = None) -> Form:
    decoded = {}
    for position, term in enumerate(terms):
        indices = tuple(term["indices"])
        where = pointer(*location, position, "indices")
        if degree is not None and len(indices) != degree:
            raise InvalidGeometryError(f"Expected {degree} indices, got {len(indices)}", where)
        if any(left >= right for left, right in zip(indices, indices[1:])):
            raise InvalidGeometryError(f"Indices {list(indices)} are not strictly increasing", where)
        if any(index > n for index in indices):
            raise InvalidGeometryError(f"Indices {list(indices)} exceed n = {n}", where)
        if indices in decoded:
            raise InvalidGeometryError(f"Indices {list(indices)} repeat an earlier term", where)
        decoded[indices] = decode_number(term["value"])
    return Form(n=n, terms=decoded)


def _decode_curvature(n: int, records) -> AlgCurvature:
    for position, record in enumerate(records):
        if any(index > n for index in record["indices"]):
            raise InvalidGeometryError(
                f"Indices {record['indices']} exceed n = {n}",
                pointer("curvature", position, "indices"),
            )
    try:
        return AlgCurvature.from_records(
            n,
            ((record["indices"], decode_number(record["value"])) for record in records),
        )
    except InconsistentDataError as error:
        raise InvalidGeometryError(str(error), pointer("curvature")) from error


def _decode_homogeneous(n: int, name: str, document: Mapping):
    h_dim = document["h_dim"]
    metric_diag = [decode_number(value) for value in document["metric_diag"]]
    if len(metric_diag) != n:
        raise InvalidGeometryError(
            f"Expected {n} metric entries, got {len(metric_diag)}",
            pointer("homogeneous", "metric_diag"),
        )
    dim_g = h_dim + n

    brackets = []
    for position, record in enumerate(document["brackets"]):
        indices = (record["i"], record["j"], record["k"])
        if any(index > dim_g for index in indices):
            raise InvalidGeometryError(
                f"Bracket indices {list(indices)} exceed dim 𝔤 = {dim_g}",
                pointer("homogeneous", "brackets", position),
            )
        brackets.append(Bracket(*indices, decode_number(record["value"])))

    basis_labels = document.get("basis_labels")
    if basis_labels is not None and len(basis_labels) != dim_g:
        raise InvalidGeometryError(
            f"Expected {dim_g} basis labels, got {len(basis_labels)}",
            pointer("homogeneous", "basis_labels"),
        )

    try:
        return build_space(brackets, h_dim=h_dim, metric_diag=metric_diag, name=name, basis_labels=basis_labels)
    except InconsistentDataError as error:
        raise InvalidGeometryError(str(error), pointer("homogeneous", "brackets")) from error


def from_document(document: Any, default_name: str = "geometry") -> CatalogEntry:
    """
    Validate a geometry document and build the entry it describes.

    """
    validate_document(document)

    n = document["n"]
    name = document.get("name", default_name)
    if "curvature" in document and "homogeneous" in document:
        raise InvalidGeometryError("curvature and homogeneous are mutually exclusive", pointer("curvature"))

    try:
        partition = make_partition(n, document["partition"])
    except SpinlabInputError as error:
        raise InvalidGeometryError(str(error), pointer("partition")) from error

    torsion = _decode_form(n, document["torsion"], ("torsion",), degree=3)
    reference = None
    if "reference_torsion" in document:
        reference = _decode_form(n, document["reference_torsion"], ("reference_torsion",), degree=3)
    extras = {
        label: _decode_form(n, terms, ("extras", label))
        for label, terms in document.get("extras", {}).items()
    }

    curvature = _decode_curvature(n, document["curvature"]) if "curvature" in document else None
    homogeneous = _decode_homogeneous(n, name, document["homogeneous"]) if "homogeneous" in document else None

    scalars = None
    if "scalars" in document:
        given = document["scalars"]
        scalars = GivenScalars(
            scal_g_min=decode_number(given["scal_g_min"]),
            t_norm2=decode_number(given["t_norm2"]) if "t_norm2" in given else None,
            mu2_list=tuple(decode_number(value) for value in given["mu2_list"]) if "mu2_list" in given else None,
            provenance=given.get("provenance", ""),
        )
        if scalars.t_norm2 is not None and scalars.t_norm2 < 0:
            raise InvalidGeometryError("‖T‖² must be nonnegative", pointer("scalars", "t_norm2"))
        for position, value in enumerate(scalars.mu2_list or ()):
            if value < 0:
                raise InvalidGeometryError("μ² values must be nonnegative", pointer("scalars", "mu2_list", position))

    return CatalogEntry(
        name=name,
        n=n,
        partition=partition,
        torsion=torsion,
        curvature=curvature,
        homogeneous=homogeneous,
        scalars=scalars,
        extras=extras,
        reference_torsion=reference,
        description=document.get("description", ""),
    )


def load(path) -> CatalogEntry:
    path = Path(path)
    try:
        with open(path) as fp:
            document = json.load(fp)
    except OSError as error:
        raise SpinlabInputError(f"Unable to read geometry file {path}: {error.strerror}") from error
    except json.JSONDecodeError as error:
        raise InvalidGeometryError(f"Invalid JSON: {error.msg} (line {error.lineno})") from error
    return from_document(document, default_name=path.stem)


def _encode_form(form: Form) -> list[dict]:
    return [
        dict(indices=list(indices), value=encode_number(coefficient))
        for indices, coefficient in form.terms.items()
    ]


def to_document(entry: CatalogEntry) -> dict:
    """
    The geometry document describing an entry; `from_document` inverts it.

    Blocks are written in the caller's original order so block labels survive a reload.

    """
    original_blocks = [None] * entry.partition.k
    for block, label in zip(entry.partition.blocks, entry.partition.labels):
        original_blocks[label - 1] = sorted(block)

    document: dict[str, Any] = dict(
        name=entry.name,
        n=entry.n,
        partition=original_blocks,
        torsion=_encode_form(entry.torsion),
    )
    if entry.description:
        document["description"] = entry.description
    if entry.reference_torsion is not None:
        document["reference_torsion"] = _encode_form(entry.reference_torsion)
    if entry.extras:
        document["extras"] = {label: _encode_form(form) for label, form in entry.extras.items()}
    if entry.curvature is not None and entry.homogeneous is None:
        document["curvature"] = [
            dict(indices=list(indices), value=encode_number(value))
            for indices, value in entry.curvature.records()
        ]
    if entry.homogeneous is not None:
        space = entry.homogeneous
        document["homogeneous"] = dict(
            brackets=[
                dict(i=record.i, j=record.j, k=record.k, value=encode_number(record.value))
                for record in space.brackets
            ],
            h_dim=space.h_dim,
            metric_diag=[encode_number(value) for value in space.metric_diag],
            basis_labels=list(space.basis_labels),
        )
    if entry.scalars is not None:
        scalars: dict[str, Any] = dict(scal_g_min=encode_number(entry.scalars.scal_g_min))
        if entry.scalars.t_norm2 is not None:
            scalars["t_norm2"] = encode_number(entry.scalars.t_norm2)
        if entry.scalars.mu2_list is not None:
            scalars["mu2_list"] = [encode_number(value) for value in entry.scalars.mu2_list]
        if entry.scalars.provenance:
            scalars["provenance"] = entry.scalars.provenance
        document["scalars"] = scalars
    return document
