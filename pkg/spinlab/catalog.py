"""
Built-in example geometries.

Entries are defined in code and built when the catalog is created; homogeneous entries
derive their torsion from structure constants.

"""
from dataclasses import dataclass, field
from enum import Enum, unique
from fractions import Fraction
from typing import Callable

from microcosm.api import binding
from microcosm_logging.decorators import logger

from spinlab.curvature import AlgCurvature
from spinlab.errors import DimensionMismatchError, UnknownEntryError
from spinlab.exterior import Form
from spinlab.homogeneous import HomogeneousSpace, abelian_space, canonical_torsion, stiefel_space
from spinlab.scalars import Scalar
from spinlab.splitting import Partition, make_partition


@unique
class CurvatureSource(Enum):
    NONE = "none"
    EXPLICIT = "explicit"
    HOMOGENEOUS = "homogeneous"


@dataclass(frozen=True)
class GivenScalars:
    """
    Scalars supplied as data rather than derived.

    `t_norm2` overrides ‖T‖² and `mu2_list` the μ² values taken from the spectrum.

    """
    scal_g_min: Scalar
    t_norm2: Scalar | None = None
    mu2_list: tuple[Scalar, ...] | None = None
    provenance: str = ""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    n: int
    partition: Partition
    torsion: Form
    curvature: AlgCurvature | None = None
    homogeneous: HomogeneousSpace | None = None
    scalars: GivenScalars | None = None
    extras: dict[str, Form] = field(default_factory=dict)
    reference_torsion: Form | None = None
    alias_of: str | None = None
    description: str = ""

    def __post_init__(self):
        self.torsion.require_degree(3).require_dimension(self.n)
        if self.partition.n != self.n:
            raise DimensionMismatchError(self.n, self.partition.n, what="partition")
        if self.curvature is not None and self.curvature.n != self.n:
            raise DimensionMismatchError(self.n, self.curvature.n, what="curvature")
        if self.homogeneous is not None and self.homogeneous.n != self.n:
            raise DimensionMismatchError(self.n, self.homogeneous.n, what="homogeneous space")
        if self.reference_torsion is not None:
            self.reference_torsion.require_degree(3).require_dimension(self.n)
        for extra in self.extras.values():
            extra.require_dimension(self.n)

    @property
    def curvature_source(self) -> CurvatureSource:
        if self.homogeneous is not None:
            return CurvatureSource.HOMOGENEOUS
        if self.curvature is not None:
            return CurvatureSource.EXPLICIT
        return CurvatureSource.NONE


def nearly_kaehler_torsion() -> Form:
    return Form.from_terms(6, {(2, 4, 5): 1, (1, 4, 6): 1, (2, 3, 6): -1, (1, 3, 5): 1})


def kaehler_form() -> Form:
    return Form.from_terms(6, {(1, 2): 1, (3, 4): -1, (5, 6): 1})


def nearly_kaehler(name: str, alias_of: str | None = None) -> CatalogEntry:
    """
    The nearly Kähler 6-manifolds F(1,2) and CP³ with their characteristic connection.

    Both share this algebraic data; Scal^g is given since deriving it needs the su(3)
    normalization.

    """
    return CatalogEntry(
        name=name,
        n=6,
        partition=make_partition(6, [{1, 2}, {3, 4}, {5, 6}]),
        torsion=nearly_kaehler_torsion(),
        scalars=GivenScalars(
            scal_g_min=Fraction(30),
            t_norm2=Fraction(4),
            provenance="nearly Kähler normalization: Scal^g = 30, ‖T‖² = 4",
        ),
        extras={"Ω": kaehler_form()},
        alias_of=alias_of,
        description="nearly Kähler 6-manifold with T = e245 + e146 - e236 + e135",
    )


def stiefel(k: int, blocks, reference: dict) -> CatalogEntry:
    space = stiefel_space(k)
    return CatalogEntry(
        name=space.name,
        n=space.n,
        partition=make_partition(space.n, blocks),
        torsion=canonical_torsion(space),
        homogeneous=space,
        reference_torsion=Form.from_terms(space.n, reference),
        description=f"Stiefel manifold V₂(ℝ^{k}) = SO({k})/SO({k - 2}) with its canonical connection",
    )


def stiefel_v2r4() -> CatalogEntry:
    return stiefel(4, [{1, 2}, {3, 4}, {5}], {(1, 3, 5): -1, (2, 4, 5): -1})


def stiefel_v2r5() -> CatalogEntry:
    return stiefel(5, [{1, 2, 3}, {4, 5, 6}, {7}], {(1, 4, 7): -1, (2, 5, 7): -1, (3, 6, 7): -1})


def flat_trivial() -> CatalogEntry:
    space = abelian_space(4)
    return CatalogEntry(
        name="flat_trivial",
        n=4,
        partition=make_partition(4, [{1, 2, 3, 4}]),
        torsion=Form.zero(4),
        homogeneous=space,
        description="flat ℝ⁴ as an abelian homogeneous space, T = 0",
    )


def nonsplit_example() -> CatalogEntry:
    return CatalogEntry(
        name="nonsplit_example",
        n=3,
        partition=make_partition(3, [{1, 2}, {3}]),
        torsion=Form.monomial(3, (1, 2, 3)),
        description="T = e123 with two indices in one block",
    )


BUILDERS: dict[str, Callable[[], CatalogEntry]] = {
    "flat_trivial": flat_trivial,
    "nk_CP3": lambda: nearly_kaehler("nk_CP3", alias_of="nk_F12"),
    "nk_F12": lambda: nearly_kaehler("nk_F12"),
    "nonsplit_example": nonsplit_example,
    "stiefel_v2r4": stiefel_v2r4,
    "stiefel_v2r5": stiefel_v2r5,
}


@binding("catalog")
@logger
class Catalog:
    """
    Registry of built-in geometries.

    Entries are built once, when the component is created, and are read-only afterwards.

    """
    def __init__(self, graph):
        self.entries: dict[str, CatalogEntry] = {}
        for name, builder in sorted(BUILDERS.items()):
            self.logger.debug(
                "Building catalog entry: {geometry}",
                extra=dict(
                    geometry=name,
                ),
            )
            self.entries[name] = builder()

    def names(self) -> list[str]:
        return sorted(self.entries)

    def get(self, name: str) -> CatalogEntry:
        if name not in self.entries:
            raise UnknownEntryError(name)
        return self.entries[name]

    list = names
