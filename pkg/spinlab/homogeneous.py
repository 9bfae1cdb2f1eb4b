"""
Naturally reductive homogeneous spaces built from Lie algebra structure constants.

The 𝔤 basis b_1, ..., b_{dim g} is 1-based with the 𝔥 basis first, so 𝔪 is spanned by
b_{h+1}, ..., b_{h+n}. The metric is diagonal on that 𝔪 basis, and every tensor below lives
in the orthonormal 𝔪 frame ê_x = b_{h+x} / sqrt(g_xx).

For the canonical connection:

    T(x, y, z)    = -⟨[ê_x, ê_y]_𝔪, ê_z⟩
    R(x, y, z, v) = -⟨[[ê_x, ê_y]_𝔥, ê_z], ê_v⟩

"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from spinlab.constants import DEFAULT_CURVATURE_TOLERANCE
from spinlab.curvature import AlgCurvature, max_abs, require_valid, scal, zeros
from spinlab.errors import (
    InconsistentDataError,
    IndexOutOfRangeError,
    JacobiError,
    NonInvariantMetricError,
    NotNaturallyReductiveError,
    NotReductiveError,
    SpinlabInputError,
)
from spinlab.exterior import Form, norm2
from spinlab.scalars import as_scalar, inverse_sqrt, is_exact


class Bracket(NamedTuple):
    """
    One structure constant: [b_i, b_j] has coefficient `value` along b_k.

    """
    i: int
    j: int
    k: int
    value: object


@dataclass(frozen=True)
class HomogeneousSpace:
    """
    A validated naturally reductive space 𝔤 = 𝔥 ⊕ 𝔪.

    `m_bracket[x, y, z]` is the ê_z component of [ê_x, ê_y]; `h_bracket[x, y, a]` the b_{a+1}
    component; `isotropy[a][v, z]` the ê_v component of [b_{a+1}, ê_z] (all 0-based).

    """
    name: str
    dim_g: int
    h_dim: int
    brackets: tuple[Bracket, ...]
    metric_diag: tuple
    basis_labels: tuple[str, ...]
    m_bracket: np.ndarray
    h_bracket: np.ndarray
    isotropy: tuple[np.ndarray, ...]

    @property
    def n(self) -> int:
        return self.dim_g - self.h_dim

    @property
    def dim_m(self) -> int:
        return self.n


def structure_tensor(dim_g: int, brackets: Iterable[Bracket]) -> np.ndarray:
    """
    Dense structure constants C[i, j, k] (0-based) completed by antisymmetry.

    """
    values: dict[tuple[int, int, int], object] = {}
    for record in brackets:
        i, j, k, value = record
        for index in (i, j, k):
            if not 1 <= index <= dim_g:
                raise IndexOutOfRangeError(index, dim_g, what="𝔤 basis index")
        value = as_scalar(value)
        if i == j:
            if value != 0:
                raise InconsistentDataError((i, j, k), 0, value)
            continue
        for key, signed in (((i, j, k), value), ((j, i, k), -value)):
            existing = values.get(key)
            if existing is not None and existing != signed:
                raise InconsistentDataError(key, existing, signed)
            values[key] = signed

    exact = all(is_exact(value) for value in values.values())
    tensor = zeros((dim_g,) * 3, exact=exact)
    for (i, j, k), value in values.items():
        tensor[i - 1, j - 1, k - 1] = value if exact else float(value)
    return tensor


def _require_jacobi(structure: np.ndarray, tolerance: float) -> None:
    dim_g = structure.shape[0]
    for i, j, k in combinations(range(dim_g), 3):
        # [[b_i, b_j], b_k] + [[b_j, b_k], b_i] + [[b_k, b_i], b_j]
        total = (
            structure[i, j] @ structure[:, k]
            + structure[j, k] @ structure[:, i]
            + structure[k, i] @ structure[:, j]
        )
        residual = max_abs(total)
        if residual > tolerance:
            raise JacobiError((i + 1, j + 1, k + 1), residual)


def _require_reductive(structure: np.ndarray, h_dim: int, tolerance: float) -> None:
    dim_g = structure.shape[0]
    for a in range(h_dim):
        for z in range(h_dim, dim_g):
            for c in range(h_dim):
                residual = max_abs(structure[a, z, c])
                if residual > tolerance:
                    raise NotReductiveError((a + 1, z + 1, c + 1), residual)


def _require_invariant_metric(isotropy: Sequence[np.ndarray], tolerance: float) -> None:
    for a, action in enumerate(isotropy):
        n = action.shape[0]
        for z in range(n):
            for v in range(n):
                residual = max_abs(action[v, z] + action[z, v])
                if residual > tolerance:
                    raise NonInvariantMetricError((a + 1, z + 1, v + 1), residual)


def _require_naturally_reductive(m_bracket: np.ndarray, tolerance: float) -> None:
    n = m_bracket.shape[0]
    for x in range(n):
        for y in range(n):
            for z in range(n):
                residual = max_abs(m_bracket[x, y, z] + m_bracket[x, z, y])
                if residual > tolerance:
                    raise NotNaturallyReductiveError((x + 1, y + 1, z + 1), residual)


def build_space(
    brackets: Iterable,
    h_dim: int,
    metric_diag: Sequence,
    name: str = "",
    basis_labels: Sequence[str] | None = None,
    tolerance: float = DEFAULT_CURVATURE_TOLERANCE,
) -> HomogeneousSpace:
    """
    Validate structure constants and orthonormalize 𝔪 against a diagonal metric.

    Conditions are checked in order (Jacobi, reductivity, Ad(H)-invariance of the metric,
    natural reductivity); the first failure raises with its witness triple.

    """
    metric = tuple(as_scalar(value) for value in metric_diag)
    n = len(metric)
    if n < 1:
        raise SpinlabInputError("empty frame")
    if h_dim < 0:
        raise SpinlabInputError(f"h_dim must be nonnegative, got {h_dim}")
    if any(value <= 0 for value in metric):
        raise SpinlabInputError(f"Metric must be positive definite, got diagonal {list(metric)}")

    dim_g = h_dim + n
    brackets = tuple(Bracket(*record) for record in brackets)
    if basis_labels is None:
        basis_labels = [f"b{index}" for index in range(1, dim_g + 1)]
    if len(basis_labels) != dim_g:
        raise SpinlabInputError(f"Expected {dim_g} basis labels, got {len(basis_labels)}")

    structure = structure_tensor(dim_g, brackets)
    _require_jacobi(structure, tolerance)
    _require_reductive(structure, h_dim, tolerance)

    inverse_scales = [inverse_sqrt(value) for value in metric]
    exact = structure.dtype == object and all(is_exact(value) for value in inverse_scales)
    if not exact:
        structure = structure.astype(float)
        inverse_scales = [float(value) for value in inverse_scales]
    inverse = np.array(inverse_scales, dtype=object if exact else float)
    scales = np.array([1 / value for value in inverse_scales], dtype=object if exact else float)

    m_part = structure[h_dim:, h_dim:, h_dim:]
    # [ê_x, ê_y] = Σ_z c^z_xy s_z / (s_x s_y) ê_z
    m_bracket = m_part * inverse[:, None, None] * inverse[None, :, None] * scales[None, None, :]
    h_bracket = structure[h_dim:, h_dim:, :h_dim] * inverse[:, None, None] * inverse[None, :, None]
    isotropy = tuple(
        # [b_a, ê_z] = Σ_v c^v_az s_v / s_z ê_v, stored as [v, z]
        (structure[a, h_dim:, h_dim:] * inverse[:, None] * scales[None, :]).T.copy()
        for a in range(h_dim)
    )

    _require_invariant_metric(isotropy, tolerance)
    _require_naturally_reductive(m_bracket, tolerance)

    return HomogeneousSpace(
        name=name,
        dim_g=dim_g,
        h_dim=h_dim,
        brackets=brackets,
        metric_diag=metric,
        basis_labels=tuple(basis_labels),
        m_bracket=m_bracket,
        h_bracket=h_bracket,
        isotropy=isotropy,
    )


def isotropy(space: HomogeneousSpace) -> list[np.ndarray]:
    """
    Matrices of the 𝔥 basis acting on the orthonormal 𝔪 frame.

    """
    return list(space.isotropy)


def torsion_tensor(space: HomogeneousSpace) -> np.ndarray:
    return -space.m_bracket


def canonical_torsion(space: HomogeneousSpace) -> Form:
    """
    The torsion 3-form of the canonical connection.

    """
    tensor = torsion_tensor(space)
    return Form(
        n=space.n,
        terms={
            (x + 1, y + 1, z + 1): tensor[x, y, z]
            for x, y, z in combinations(range(space.n), 3)
        },
    )


def _ad_h(space: HomogeneousSpace, x: int, y: int) -> np.ndarray:
    """
    Matrix of ad([ê_x, ê_y]_𝔥) on the 𝔪 frame.

    """
    return sum(
        (space.h_bracket[x, y, a] * action for a, action in enumerate(space.isotropy)),
        zeros((space.n, space.n), exact=space.m_bracket.dtype == object),
    )


def canonical_curvature(space: HomogeneousSpace, tolerance: float = DEFAULT_CURVATURE_TOLERANCE) -> AlgCurvature:
    """
    Curvature of the canonical connection, validated before it is returned.

    """
    n = space.n
    coeffs = zeros((n,) * 4, exact=space.m_bracket.dtype == object)
    for x in range(n):
        for y in range(n):
            operator = _ad_h(space, x, y)
            # R(x, y, z, v) = -⟨ad([ê_x, ê_y]_𝔥) ê_z, ê_v⟩
            coeffs[x, y] = -operator.T
    return require_valid(AlgCurvature(n=n, coeffs=coeffs), tolerance)


def levi_civita_curvature(space: HomogeneousSpace, tolerance: float = DEFAULT_CURVATURE_TOLERANCE) -> AlgCurvature:
    """
    Riemannian curvature from the Nomizu map Λ(X)Y = ½[X, Y]_𝔪:

        R^g(X, Y) = [Λ(X), Λ(Y)] - Λ([X, Y]_𝔪) - ad([X, Y]_𝔥)

    """
    n = space.n
    exact = space.m_bracket.dtype == object
    half = Fraction(1, 2) if exact else 0.5
    # nomizu[x][z, y] is the ê_z component of Λ(ê_x) ê_y
    nomizu = [(half * space.m_bracket[x]).T for x in range(n)]

    coeffs = zeros((n,) * 4, exact=exact)
    for x in range(n):
        for y in range(n):
            operator = nomizu[x] @ nomizu[y] - nomizu[y] @ nomizu[x] - _ad_h(space, x, y)
            for z in range(n):
                operator = operator - space.m_bracket[x, y, z] * nomizu[z]
            coeffs[x, y] = operator.T
    return require_valid(AlgCurvature(n=n, coeffs=coeffs), tolerance)


def scal_nabla(space: HomogeneousSpace, tolerance: float = DEFAULT_CURVATURE_TOLERANCE):
    return scal(canonical_curvature(space, tolerance), tolerance)


def scal_g(space: HomogeneousSpace, tolerance: float = DEFAULT_CURVATURE_TOLERANCE):
    """
    Riemannian scalar curvature Scal^g = Scal^∇ + (3/2)‖T‖².

    """
    return scal_nabla(space, tolerance) + Fraction(3, 2) * norm2(canonical_torsion(space))


def _act_on_axis(action: np.ndarray, tensor: np.ndarray, axis: int) -> np.ndarray:
    """
    Replace slot `axis` of a tensor by the action: Σ_v action[v, i] tensor[..., v, ...].

    """
    moved = np.moveaxis(tensor, axis, 0)
    result = (action.T @ moved.reshape(moved.shape[0], -1)).reshape(moved.shape)
    return np.moveaxis(result, 0, axis)


def derivation_residual(space: HomogeneousSpace, tensor: np.ndarray) -> float:
    """
    Maximal failure of a tensor on 𝔪 to be annihilated by the isotropy derivations.

    """
    residual = 0.0
    for action in space.isotropy:
        total = sum(_act_on_axis(action, tensor, axis) for axis in range(tensor.ndim))
        residual = max(residual, max_abs(total))
    return residual


def torsion_invariance(space: HomogeneousSpace) -> float:
    return derivation_residual(space, torsion_tensor(space))


def curvature_invariance(space: HomogeneousSpace, tolerance: float = DEFAULT_CURVATURE_TOLERANCE) -> float:
    return derivation_residual(space, canonical_curvature(space, tolerance).coeffs)


def orthogonal_brackets(size: int, basis: Sequence[tuple[int, int]]) -> list[Bracket]:
    """
    Structure constants of so(size) in a basis of elementary skew matrices.

    A basis entry (i, j) stands for E_ij = e_i e_jᵀ - e_j e_iᵀ, so (2, 1) is -E_12.
    The basis must contain each unordered pair exactly once.

    """
    pairs = [frozenset(pair) for pair in basis]
    expected = {frozenset(pair) for pair in combinations(range(1, size + 1), 2)}
    if len(pairs) != len(expected) or set(pairs) != expected or any(len(pair) != 2 for pair in pairs):
        raise SpinlabInputError(f"Basis {list(basis)} does not span so({size}) with each pair once")

    def elementary(i: int, j: int) -> np.ndarray:
        matrix = np.zeros((size, size), dtype=int)
        matrix[i - 1, j - 1] = 1
        matrix[j - 1, i - 1] = -1
        return matrix

    matrices = [elementary(i, j) for i, j in basis]
    records = []
    for left in range(len(basis)):
        for right in range(left + 1, len(basis)):
            commutator = matrices[left] @ matrices[right] - matrices[right] @ matrices[left]
            for target, (i, j) in enumerate(basis):
                value = int(commutator[i - 1, j - 1])
                if value:
                    records.append(Bracket(left + 1, right + 1, target + 1, value))
    return records


def abelian_space(n: int, name: str = "flat") -> HomogeneousSpace:
    return build_space(
        [],
        h_dim=0,
        metric_diag=[1] * n,
        name=name,
        basis_labels=[f"X{index}" for index in range(1, n + 1)],
    )


def stiefel_basis(k: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """
    Adapted so(k) basis for SO(k)/SO(k-2): 𝔥 = so(k-2) on the last k-2 coordinates and
    𝔪 = E_13..E_1k, E_23..E_2k, E_21 (the last being the fiber direction).

    """
    h_basis = list(combinations(range(3, k + 1), 2))
    m_basis = [(1, j) for j in range(3, k + 1)] + [(2, j) for j in range(3, k + 1)] + [(2, 1)]
    return h_basis, m_basis


def stiefel_space(k: int, fiber_scale=1, tolerance: float = DEFAULT_CURVATURE_TOLERANCE) -> HomogeneousSpace:
    """
    The Stiefel manifold V₂(ℝ^k) = SO(k)/SO(k-2) with the fiber direction scaled.

    Only fiber_scale = 1 (the normal metric) is naturally reductive for this split.

    """
    if k < 3:
        raise SpinlabInputError(f"Stiefel spaces need k ≥ 3, got {k}")

    h_basis, m_basis = stiefel_basis(k)
    basis = h_basis + m_basis
    metric = [1] * (len(m_basis) - 1) + [fiber_scale]
    return build_space(
        orthogonal_brackets(k, basis),
        h_dim=len(h_basis),
        metric_diag=metric,
        name=f"stiefel_v2r{k}",
        basis_labels=[f"E{i}{j}" for i, j in basis],
        tolerance=tolerance,
    )
