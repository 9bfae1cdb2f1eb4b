"""
Complex Clifford algebra representations and the Clifford action of forms.

Generators satisfy e_i e_j + e_j e_i = -2 δ_ij (spin-geometry convention) and are
skew-adjoint. They are built from Pauli blocks by the tensor-product (Jordan-Wigner)
construction: for n = 2m,

    γ_{2k-1} = σ3 ⊗ ... ⊗ σ3 ⊗ σ1 ⊗ 1 ⊗ ... ⊗ 1
    γ_{2k}   = σ3 ⊗ ... ⊗ σ3 ⊗ σ2 ⊗ 1 ⊗ ... ⊗ 1

(σ3 in the first k-1 slots), e_j = i·γ_j, and for n = 2m + 1 the extra generator is
i·volume_sign·σ3 ⊗ ... ⊗ σ3. The construction is deterministic.

"""
from dataclasses import dataclass
from functools import reduce
from typing import NamedTuple

import numpy as np

from spinlab.constants import DEFAULT_EIGEN_TOLERANCE
from spinlab.errors import NotSelfAdjointError, SpinlabInputError
from spinlab.exterior import Form


SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def _kron_all(factors) -> np.ndarray:
    return reduce(np.kron, factors, np.eye(1, dtype=complex))


def frozen_matrix(matrix: np.ndarray) -> np.ndarray:
    matrix = np.array(matrix, dtype=complex)
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True)
class CliffordRep:
    """
    Matrix realization of Cl(n) on the spinor module of dimension 2^⌊n/2⌋.

    """
    n: int
    dim_spinor: int
    generators: tuple[np.ndarray, ...]
    volume_sign: int = 1

    def monomial(self, indices) -> np.ndarray:
        """
        Ordered matrix product generators[p1]···generators[pk] (1-based indices).

        """
        return reduce(
            np.matmul,
            (self.generators[index - 1] for index in indices),
            np.eye(self.dim_spinor, dtype=complex),
        )

    def identity(self) -> "SpinEndo":
        return SpinEndo(matrix=frozen_matrix(np.eye(self.dim_spinor)), origin="identity")

    def volume_element(self) -> complex:
        """
        The scalar by which e_1···e_n acts (central for odd n).

        """
        return complex(self.monomial(range(1, self.n + 1))[0, 0])

    def validate(self) -> dict[str, float]:
        """
        Residuals of the defining relations.

        """
        identity = np.eye(self.dim_spinor)
        anticommutation = max(
            np.abs(left @ right + right @ left + 2 * (i == j) * identity).max()
            for i, left in enumerate(self.generators)
            for j, right in enumerate(self.generators)
        )
        skew_adjoint = max(
            np.abs(generator.conj().T + generator).max()
            for generator in self.generators
        )
        residuals = dict(
            anticommutation=float(anticommutation),
            skew_adjoint=float(skew_adjoint),
        )
        if self.n % 2 == 1:
            volume = self.monomial(range(1, self.n + 1))
            residuals["volume_central"] = float(np.abs(volume - volume[0, 0] * identity).max())
        return residuals


@dataclass(frozen=True)
class SpinEndo:
    """
    An endomorphism of the spinor module together with a tag describing its origin.

    """
    matrix: np.ndarray
    origin: str = ""

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def adjoint_residual(self) -> float:
        return float(np.abs(self.matrix - self.matrix.conj().T).max(initial=0.0))

    def is_self_adjoint(self, tolerance: float) -> bool:
        return self.adjoint_residual() <= tolerance

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def distance(self, other: "SpinEndo") -> float:
        """
        Maximal entrywise deviation from another endomorphism.

        """
        self._check_compatible(other)
        return float(np.abs(self.matrix - other.matrix).max(initial=0.0))

    def __add__(self, other: "SpinEndo") -> "SpinEndo":
        self._check_compatible(other)
        return SpinEndo(matrix=frozen_matrix(self.matrix + other.matrix), origin=f"({self.origin}) + ({other.origin})")

    def __sub__(self, other: "SpinEndo") -> "SpinEndo":
        self._check_compatible(other)
        return SpinEndo(matrix=frozen_matrix(self.matrix - other.matrix), origin=f"({self.origin}) - ({other.origin})")

    def __mul__(self, scalar) -> "SpinEndo":
        return SpinEndo(matrix=frozen_matrix(complex(scalar) * self.matrix), origin=f"{scalar}·({self.origin})")

    __rmul__ = __mul__

    def __matmul__(self, other: "SpinEndo") -> "SpinEndo":
        self._check_compatible(other)
        return SpinEndo(matrix=frozen_matrix(self.matrix @ other.matrix), origin=f"({self.origin})·({other.origin})")

    def _check_compatible(self, other: "SpinEndo") -> None:
        if self.dim != other.dim:
            raise SpinlabInputError(f"Spinor dimension mismatch: {self.dim} != {other.dim}")


@dataclass(frozen=True)
class Spectrum:
    """
    Clustered real spectrum of a self-adjoint endomorphism.

    """
    eigenvalues: tuple[float, ...]
    multiplicities: tuple[int, ...]
    tolerance: float

    @property
    def dim(self) -> int:
        return sum(self.multiplicities)

    def squares(self) -> tuple[float, ...]:
        """
        Distinct μ² values in ascending order.

        """
        return tuple(sorted({_snap(value * value, self.tolerance) for value in self.eigenvalues}))

    def items(self):
        return zip(self.eigenvalues, self.multiplicities)


class EigenProjector(NamedTuple):
    mu: float
    multiplicity: int
    projector: SpinEndo


def build_rep(n: int, volume_sign: int = 1) -> CliffordRep:
    """
    Build the complex spinor representation of Cl(n).

    For even n the volume sign is ignored; for odd n it selects one of the two
    inequivalent irreducible representations.

    """
    if n < 1:
        raise SpinlabInputError("empty frame")
    if volume_sign not in (1, -1):
        raise SpinlabInputError(f"volume_sign must be ±1, got {volume_sign}")

    half = n // 2
    hermitian = []
    for k in range(half):
        prefix = [SIGMA_3] * k
        suffix = [IDENTITY_2] * (half - k - 1)
        hermitian.append(_kron_all(prefix + [SIGMA_1] + suffix))
        hermitian.append(_kron_all(prefix + [SIGMA_2] + suffix))
    if n % 2 == 1:
        hermitian.append(volume_sign * _kron_all([SIGMA_3] * half))
    else:
        volume_sign = 1

    return CliffordRep(
        n=n,
        dim_spinor=2 ** half,
        generators=tuple(frozen_matrix(1j * gamma) for gamma in hermitian),
        volume_sign=volume_sign,
    )


def act(rep: CliffordRep, form: Form) -> SpinEndo:
    """
    Clifford action of a (possibly mixed degree) form, linear in the coefficients.

    """
    if form.n != rep.n:
        raise SpinlabInputError(f"Form dimension {form.n} does not match representation dimension {rep.n}")

    matrix = np.zeros((rep.dim_spinor, rep.dim_spinor), dtype=complex)
    for indices, coefficient in form.terms.items():
        matrix += float(coefficient) * rep.monomial(indices)
    return SpinEndo(matrix=frozen_matrix(matrix), origin=form.render())


def torsion_square(rep: CliffordRep, torsion: Form) -> SpinEndo:
    """
    The square T·T of the Clifford action of a 3-form.

    """
    torsion.require_degree(3)
    endo = act(rep, torsion)
    return SpinEndo(matrix=frozen_matrix(endo.matrix @ endo.matrix), origin=f"({torsion.render()})²")


def _require_self_adjoint(endo: SpinEndo, tolerance: float) -> None:
    if not endo.is_self_adjoint(tolerance):
        raise NotSelfAdjointError(endo.adjoint_residual(), tolerance)


def _snap(value: float, tolerance: float) -> float:
    nearest = round(value)
    if abs(value - nearest) <= tolerance:
        value = float(nearest)
    # normalize negative zero
    return value + 0.0


def _clusters(eigenvalues: np.ndarray, tolerance: float) -> list[list[int]]:
    """
    Group sorted eigenvalue positions whose consecutive gaps are within tolerance.

    """
    groups: list[list[int]] = []
    for position, value in enumerate(eigenvalues):
        if groups and value - eigenvalues[groups[-1][-1]] <= tolerance:
            groups[-1].append(position)
        else:
            groups.append([position])
    return groups


def _eigh(endo: SpinEndo, tolerance: float):
    _require_self_adjoint(endo, tolerance)
    hermitian = (endo.matrix + endo.matrix.conj().T) / 2
    return np.linalg.eigh(hermitian)


def spectrum(endo: SpinEndo, tolerance: float = DEFAULT_EIGEN_TOLERANCE) -> Spectrum:
    """
    Real eigenvalues of a self-adjoint endomorphism, clustered at tolerance.

    """
    eigenvalues, _ = _eigh(endo, tolerance)
    groups = _clusters(eigenvalues, tolerance)
    return Spectrum(
        eigenvalues=tuple(_snap(float(np.mean(eigenvalues[group])), tolerance) for group in groups),
        multiplicities=tuple(len(group) for group in groups),
        tolerance=tolerance,
    )


def eigen_projectors(endo: SpinEndo, tolerance: float = DEFAULT_EIGEN_TOLERANCE) -> list[EigenProjector]:
    """
    Orthogonal projectors onto the eigenspaces of a self-adjoint endomorphism.

    """
    eigenvalues, eigenvectors = _eigh(endo, tolerance)
    projectors = []
    for group in _clusters(eigenvalues, tolerance):
        mu = _snap(float(np.mean(eigenvalues[group])), tolerance)
        basis = eigenvectors[:, group]
        projectors.append(
            EigenProjector(
                mu=mu,
                multiplicity=len(group),
                projector=SpinEndo(matrix=frozen_matrix(basis @ basis.conj().T), origin=f"eigenspace μ={mu:g}"),
            ),
        )
    return projectors
