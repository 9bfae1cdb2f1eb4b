"""
Algebraic curvature tensors of connections with parallel skew torsion.

Conventions: R(X, Y, Z, V) = g(R(X, Y)Z, V), so the sectional curvature of a plane is
R(X, Y, Y, X) and the Ricci contraction is Ric(q, s) = Σ_p R(p, q, s, p).

Coefficient arrays are dense with 0-based axes. They hold `Fraction` objects when the
tensor is exact and floats otherwise.

"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from spinlab.clifford import CliffordRep, SpinEndo, frozen_matrix
from spinlab.constants import DEFAULT_CURVATURE_TOLERANCE
from spinlab.errors import (
    DimensionMismatchError,
    InconsistentDataError,
    IndexOutOfRangeError,
    InvalidCurvatureError,
    SpinlabInputError,
)
from spinlab.exterior import Form, sorting_sign
from spinlab.scalars import as_scalar, is_exact
from spinlab.splitting import Partition


def max_abs(values) -> float:
    """
    Largest absolute entry of an array (exact or float) as a float; 0 when empty.

    """
    return float(max((abs(value) for value in np.asarray(values).ravel()), default=0))


def zeros(shape, exact: bool = True) -> np.ndarray:
    if exact:
        array = np.empty(shape, dtype=object)
        array.fill(Fraction(0))
        return array
    return np.zeros(shape)


@dataclass(frozen=True)
class AlgCurvature:
    """
    A 4-index curvature tensor R(p, q, r, s) over an n-frame.

    """
    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise SpinlabInputError("empty frame")
        if self.coeffs.shape != (self.n,) * 4:
            raise DimensionMismatchError((self.n,) * 4, self.coeffs.shape, what="curvature array")

    @property
    def is_exact(self) -> bool:
        return self.coeffs.dtype == object and all(is_exact(value) for value in self.coeffs.ravel())

    @classmethod
    def zero(cls, n: int) -> "AlgCurvature":
        return cls(n=n, coeffs=zeros((n,) * 4))

    @classmethod
    def from_records(cls, n: int, records: Iterable[tuple[Sequence[int], object]]) -> "AlgCurvature":
        """
        Build a tensor from 1-based (p, q, r, s) records, completing by the symmetries.

        Each record fixes all eight images under the antisymmetries and the pair symmetry.
        A record contradicting an earlier image raises `InconsistentDataError`.

        """
        values = {}
        for indices, value in records:
            indices = tuple(indices)
            if len(indices) != 4:
                raise DimensionMismatchError(4, len(indices), what="curvature record length")
            for index in indices:
                if not 1 <= index <= n:
                    raise IndexOutOfRangeError(index, n)
            value = as_scalar(value)
            for image, sign in _symmetry_images(indices):
                image_value = sign * value
                if image[0] == image[1] or image[2] == image[3]:
                    if image_value != 0:
                        raise InconsistentDataError(indices, 0, value)
                    continue
                existing = values.get(image)
                if existing is not None and existing != image_value:
                    raise InconsistentDataError(image, existing, image_value)
                values[image] = image_value

        exact = all(is_exact(value) for value in values.values())
        coeffs = zeros((n,) * 4, exact=exact)
        for (p, q, r, s), value in values.items():
            coeffs[p - 1, q - 1, r - 1, s - 1] = value if exact else float(value)
        return cls(n=n, coeffs=coeffs)

    def records(self) -> list[tuple[tuple[int, int, int, int], object]]:
        """
        Canonical nonzero records with p < q, r < s and (p, q) ≤ (r, s).

        """
        result = []
        for p in range(self.n):
            for q in range(p + 1, self.n):
                for r in range(p, self.n):
                    for s in range(r + 1, self.n):
                        if (r, s) < (p, q):
                            continue
                        value = self.coeffs[p, q, r, s]
                        if value != 0:
                            result.append(((p + 1, q + 1, r + 1, s + 1), value))
        return result

    def __call__(self, p: int, q: int, r: int, s: int):
        return self.coeffs[p - 1, q - 1, r - 1, s - 1]


def _symmetry_images(indices):
    p, q, r, s = indices
    for first, second, sign in (
        ((p, q), (r, s), 1),
        ((q, p), (r, s), -1),
        ((p, q), (s, r), -1),
        ((q, p), (s, r), 1),
    ):
        yield first + second, sign
        yield second + first, sign


@dataclass(frozen=True)
class SymmetryReport:
    first_pair: float
    second_pair: float
    pair_symmetry: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return max(self.first_pair, self.second_pair, self.pair_symmetry) <= self.tolerance

    @property
    def residual(self) -> float:
        return max(self.first_pair, self.second_pair, self.pair_symmetry)

    def describe(self) -> str:
        return (
            f"antisymmetry (p,q) {self.first_pair:.3e}, "
            f"antisymmetry (r,s) {self.second_pair:.3e}, "
            f"pair symmetry {self.pair_symmetry:.3e} "
            f"(tolerance {self.tolerance:.1e})"
        )


def validate(curvature: AlgCurvature, tolerance: float = DEFAULT_CURVATURE_TOLERANCE) -> SymmetryReport:
    """
    Report the maximal violation of each algebraic symmetry.

    """
    coeffs = curvature.coeffs
    return SymmetryReport(
        first_pair=max_abs(coeffs + coeffs.transpose(1, 0, 2, 3)),
        second_pair=max_abs(coeffs + coeffs.transpose(0, 1, 3, 2)),
        pair_symmetry=max_abs(coeffs - coeffs.transpose(2, 3, 0, 1)),
        tolerance=tolerance,
    )


def require_valid(curvature: AlgCurvature, tolerance: float = DEFAULT_CURVATURE_TOLERANCE) -> AlgCurvature:
    report = validate(curvature, tolerance)
    if not report.passed:
        raise InvalidCurvatureError(report)
    return curvature


def ricci(curvature: AlgCurvature, tolerance: float = DEFAULT_CURVATURE_TOLERANCE) -> np.ndarray:
    """
    Ric(q, s) = Σ_p R(p, q, s, p).

    """
    require_valid(curvature, tolerance)
    return curvature.coeffs.diagonal(axis1=0, axis2=3).sum(axis=-1)


def scal(curvature: AlgCurvature, tolerance: float = DEFAULT_CURVATURE_TOLERANCE):
    return _start(curvature) + ricci(curvature, tolerance).diagonal().sum()


def partial_scal(curvature: AlgCurvature, partition: Partition, tolerance: float = DEFAULT_CURVATURE_TOLERANCE) -> list:
    """
    Partial scalar curvatures Scal_i: the Ricci trace over each block.

    These are also the τ_i entering the block-wise Schrödinger-Lichnerowicz formula.

    """
    _check_partition(curvature, partition)
    ric = ricci(curvature, tolerance)
    return [
        sum((ric[index - 1, index - 1] for index in partition.block(i)), _start(curvature))
        for i in range(1, partition.k + 1)
    ]


def _start(curvature: AlgCurvature):
    return Fraction(0) if curvature.coeffs.dtype == object else 0.0


def _check_partition(curvature: AlgCurvature, partition: Partition) -> None:
    if partition.n != curvature.n:
        raise DimensionMismatchError(curvature.n, partition.n, what="partition")


@dataclass(frozen=True)
class BlockReport:
    """
    Block structure of a curvature tensor under a partition.

    `cross_pair_blocks` holds the values R(X, Y, U, V) with X, Y and U, V in two different
    blocks; these may be nonzero and are never asserted.

    """
    last_pair_across: float
    first_pair_across: float
    ricci_off_block: float
    cross_pair_blocks: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return max(self.last_pair_across, self.first_pair_across, self.ricci_off_block) <= self.tolerance

    @property
    def residual(self) -> float:
        return max(self.last_pair_across, self.first_pair_across, self.ricci_off_block)


def block_checks(
    curvature: AlgCurvature,
    partition: Partition,
    tolerance: float = DEFAULT_CURVATURE_TOLERANCE,
) -> BlockReport:
    _check_partition(curvature, partition)
    require_valid(curvature, tolerance)

    labels = partition.block_labels()
    same = labels[:, None] == labels[None, :]
    coeffs = curvature.coeffs

    ric = ricci(curvature, tolerance)
    on_block = sum(
        (partition.projector(i) @ ric.astype(float) @ partition.projector(i) for i in range(1, partition.k + 1)),
        np.zeros((curvature.n, curvature.n)),
    )

    cross_pairs = (
        same[:, :, None, None]
        & same[None, None, :, :]
        & (labels[:, None, None, None] != labels[None, None, :, None])
    )
    return BlockReport(
        last_pair_across=max_abs(coeffs[:, :, ~same]),
        first_pair_across=max_abs(coeffs[~same]),
        ricci_off_block=max_abs(ric.astype(float) - on_block),
        cross_pair_blocks=max_abs(coeffs[cross_pairs]),
        tolerance=tolerance,
    )


def sigma_tilde(
    curvature: AlgCurvature,
    partition: Partition,
    i: int,
    tolerance: float = DEFAULT_CURVATURE_TOLERANCE,
) -> Form:
    """
    The block-i 4-form ½ Σ R(a, b, p, q) e_a e_b e_p e_q over a < b in block i, p < q global.

    Only quadruples of four distinct indices contribute; the remaining summands make up
    ¼·Scal_i (see `curvature_endomorphism`).

    """
    _check_partition(curvature, partition)
    require_valid(curvature, tolerance)
    block = partition.block(i)
    half = Fraction(1, 2) if curvature.coeffs.dtype == object else 0.5

    terms: dict[tuple[int, ...], object] = {}
    for a, b, p, q in _block_quadruples(block, curvature.n):
        if len({a, b, p, q}) < 4:
            continue
        value = curvature.coeffs[a - 1, b - 1, p - 1, q - 1]
        if value == 0:
            continue
        sign, indices = sorting_sign((a, b, p, q))
        terms[indices] = terms.get(indices, 0) + sign * half * value
    return Form(n=curvature.n, terms=terms)


def _block_quadruples(block: Sequence[int], n: int):
    for position, a in enumerate(block):
        for b in block[position + 1:]:
            for p in range(1, n + 1):
                for q in range(p + 1, n + 1):
                    yield a, b, p, q


def curvature_endomorphism(
    rep: CliffordRep,
    curvature: AlgCurvature,
    partition: Partition,
    i: int,
    tolerance: float = DEFAULT_CURVATURE_TOLERANCE,
) -> SpinEndo:
    """
    The raw Clifford sum ½ Σ R(a, b, p, q) e_a e_b e_p e_q over a < b in block i, p < q global.

    For curvature with block structure this equals act(σ̃ⁱ) + ¼·Scal_i·Id.

    """
    _check_partition(curvature, partition)
    if rep.n != curvature.n:
        raise DimensionMismatchError(curvature.n, rep.n, what="representation")
    require_valid(curvature, tolerance)

    matrix = np.zeros((rep.dim_spinor, rep.dim_spinor), dtype=complex)
    for a, b, p, q in _block_quadruples(partition.block(i), curvature.n):
        value = curvature.coeffs[a - 1, b - 1, p - 1, q - 1]
        if value != 0:
            matrix += 0.5 * float(value) * rep.monomial((a, b, p, q))
    return SpinEndo(matrix=frozen_matrix(matrix), origin=f"curvature endomorphism of block {i}")


def bianchi_cyclic(curvature: AlgCurvature, tolerance: float = DEFAULT_CURVATURE_TOLERANCE) -> np.ndarray:
    """
    B(x, y, z, v) = R(x, y, z, v) + R(y, z, x, v) + R(z, x, y, v).

    """
    require_valid(curvature, tolerance)
    coeffs = curvature.coeffs
    return coeffs + coeffs.transpose(2, 0, 1, 3) + coeffs.transpose(1, 2, 0, 3)


@dataclass(frozen=True)
class BianchiReport:
    """
    Comparison of the cyclic sum with constant·σ_T.

    `alternation` measures the failure of the cyclic sum to be a 4-form.

    """
    residual: float
    alternation: float
    constant: object
    tolerance: float

    @property
    def passed(self) -> bool:
        return max(self.residual, self.alternation) <= self.tolerance


def bianchi_report(
    curvature: AlgCurvature,
    sigma: Form,
    constant=1,
    tolerance: float = DEFAULT_CURVATURE_TOLERANCE,
) -> BianchiReport:
    """
    Compare the cyclic sum of R against constant·σ evaluated on every index quadruple.

    """
    sigma.require_degree(4).require_dimension(curvature.n)
    cyclic = bianchi_cyclic(curvature, tolerance)
    expected = (sigma * constant).to_tensor(4)

    alternation = 0.0
    for permutation in permutations(range(4)):
        sign, _ = sorting_sign(permutation)
        alternation = max(alternation, max_abs(cyclic.transpose(permutation) - sign * cyclic))

    return BianchiReport(
        residual=max_abs(cyclic - expected),
        alternation=alternation,
        constant=constant,
        tolerance=tolerance,
    )
