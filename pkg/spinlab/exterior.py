"""
Sparse exterior algebra over an oriented orthonormal n-frame.

A `Form` maps strictly increasing index tuples (1-based) to coefficients. Monomials are
written e_{p1...pk} and evaluate to 1 on their own increasing tuple, with no 1/k! factor;
every cross-module comparison (curvature tensors, Bianchi identity) uses this convention.

"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping

import numpy as np

from spinlab.errors import (
    DegreeError,
    DimensionMismatchError,
    IndexOutOfRangeError,
    SpinlabInputError,
)
from spinlab.scalars import Scalar, as_scalar, format_number, is_exact


def sorting_sign(indices: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """
    Sort an index sequence and return the parity of the sorting permutation.

    Returns a sign of 0 when an index repeats.

    """
    items = list(indices)
    if len(set(items)) != len(items):
        return 0, tuple(sorted(items))

    inversions = sum(
        1
        for position, left in enumerate(items)
        for right in items[position + 1:]
        if left > right
    )
    return (-1) ** inversions, tuple(sorted(items))


@dataclass(frozen=True)
class Form:
    """
    A (possibly mixed degree) alternating form in canonical sparse representation.

    """
    n: int
    terms: Mapping[tuple[int, ...], Scalar] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise SpinlabInputError(f"empty frame (n = {self.n})")

        canonical: dict[tuple[int, ...], Scalar] = {}
        for indices, coefficient in self.terms.items():
            indices = tuple(indices)
            for index in indices:
                if not 1 <= index <= self.n:
                    raise IndexOutOfRangeError(index, self.n)
            if any(left >= right for left, right in zip(indices, indices[1:])):
                raise ValueError(f"Index tuple {indices} is not strictly increasing")
            coefficient = as_scalar(coefficient)
            if coefficient != 0:
                canonical[indices] = coefficient

        object.__setattr__(self, "terms", dict(sorted(canonical.items(), key=_term_order)))

    @classmethod
    def zero(cls, n: int) -> "Form":
        return cls(n=n)

    @classmethod
    def monomial(cls, n: int, indices: Iterable[int], coefficient=1) -> "Form":
        """
        Build c·e_{i1}∧...∧e_{ik} for indices in any order.

        """
        sign, ordered = sorting_sign(indices)
        if sign == 0:
            return cls.zero(n)
        return cls(n=n, terms={ordered: sign * as_scalar(coefficient)})

    @classmethod
    def from_terms(cls, n: int, terms: Mapping[Iterable[int], object]) -> "Form":
        """
        Build a form from a mapping of (unordered) index tuples to coefficients.

        """
        result = cls.zero(n)
        for indices, coefficient in terms.items():
            result = result + cls.monomial(n, indices, coefficient)
        return result

    @property
    def degrees(self) -> frozenset[int]:
        return frozenset(len(indices) for indices in self.terms)

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int | None:
        """
        The degree of a homogeneous nonzero form; None for zero or mixed forms.

        """
        if len(self.degrees) == 1:
            return next(iter(self.degrees))
        return None

    @property
    def is_exact(self) -> bool:
        return all(is_exact(coefficient) for coefficient in self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.terms)

    def require_degree(self, degree: int) -> "Form":
        """
        Reject forms with terms of another degree (the zero form passes).

        """
        if self.degrees - {degree}:
            raise DegreeError(degree, sorted(self.degrees))
        return self

    def require_dimension(self, n: int) -> "Form":
        if self.n != n:
            raise DimensionMismatchError(n, self.n)
        return self

    def __add__(self, other: "Form") -> "Form":
        self._check_compatible(other)
        terms = dict(self.terms)
        for indices, coefficient in other.terms.items():
            terms[indices] = terms.get(indices, 0) + coefficient
        return Form(n=self.n, terms=terms)

    def __neg__(self) -> "Form":
        return Form(n=self.n, terms={indices: -coefficient for indices, coefficient in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, scalar) -> "Form":
        scalar = as_scalar(scalar)
        return Form(n=self.n, terms={indices: scalar * coefficient for indices, coefficient in self.terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def chop(self, tolerance: float) -> "Form":
        """
        Drop float coefficients below tolerance; exact coefficients are kept.

        """
        return Form(
            n=self.n,
            terms={
                indices: coefficient
                for indices, coefficient in self.terms.items()
                if is_exact(coefficient) or abs(coefficient) > tolerance
            },
        )

    def to_tensor(self, degree: int) -> np.ndarray:
        """
        Expand the degree-k part into a dense antisymmetric k-tensor (0-based axes).

        """
        exact = self.is_exact
        tensor = np.full((self.n,) * degree, Fraction(0) if exact else 0.0, dtype=object if exact else float)
        for indices, coefficient in self.terms.items():
            if len(indices) != degree:
                continue
            for permuted in permutations(indices):
                sign, _ = sorting_sign(permuted)
                tensor[tuple(index - 1 for index in permuted)] = sign * coefficient
        return tensor

    def render(self) -> str:
        """
        Canonical text rendering "c·e_{i j k} + ...".

        """
        if not self.terms:
            return "0"

        pieces = []
        for position, (indices, coefficient) in enumerate(self.terms.items()):
            negative = coefficient < 0
            magnitude = format_number(-coefficient if negative else coefficient)
            monomial = "e_{" + " ".join(str(index) for index in indices) + "}" if indices else "1"
            text = f"{magnitude}·{monomial}"
            if position == 0:
                pieces.append(f"-{text}" if negative else text)
            else:
                pieces.append(f"- {text}" if negative else f"+ {text}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def _check_compatible(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise TypeError(f"Expected a Form, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatchError(self.n, other.n)


def _term_order(item):
    indices, _ = item
    return len(indices), indices


def wedge(alpha: Form, beta: Form) -> Form:
    """
    Exterior product; bilinear, associative and graded-commutative.

    """
    alpha._check_compatible(beta)
    terms: dict[tuple[int, ...], Scalar] = {}
    for left, left_coefficient in alpha.terms.items():
        for right, right_coefficient in beta.terms.items():
            sign, indices = sorting_sign(left + right)
            if sign == 0:
                continue
            terms[indices] = terms.get(indices, 0) + sign * left_coefficient * right_coefficient
    return Form(n=alpha.n, terms=terms)


def contract(index: int, alpha: Form) -> Form:
    """
    Interior product e_index ⌟ alpha; an antiderivation lowering the degree by one.

    """
    if not 1 <= index <= alpha.n:
        raise IndexOutOfRangeError(index, alpha.n)

    terms: dict[tuple[int, ...], Scalar] = {}
    for indices, coefficient in alpha.terms.items():
        if index not in indices:
            continue
        position = indices.index(index)
        remaining = indices[:position] + indices[position + 1:]
        terms[remaining] = terms.get(remaining, 0) + (-1) ** position * coefficient
    return Form(n=alpha.n, terms=terms)


def norm2(alpha: Form) -> Scalar:
    """
    Sum of squared coefficients over the canonical increasing basis.

    """
    return sum((coefficient * coefficient for coefficient in alpha.terms.values()), Fraction(0))


def sigma_T(torsion: Form) -> Form:
    """
    The 4-form σ_T = ½ Σ_k (e_k ⌟ T) ∧ (e_k ⌟ T).

    """
    torsion.require_degree(3)
    result = Form.zero(torsion.n)
    for index in range(1, torsion.n + 1):
        contracted = contract(index, torsion)
        result = result + wedge(contracted, contracted)
    return result * Fraction(1, 2)


def evaluate(alpha: Form, indices: Iterable[int]) -> Scalar:
    """
    Evaluate a form on a tuple of frame vectors; fully antisymmetric in the tuple.

    """
    indices = tuple(indices)
    for index in indices:
        if not 1 <= index <= alpha.n:
            raise IndexOutOfRangeError(index, alpha.n)
    if alpha.terms and alpha.degrees != {len(indices)}:
        raise DimensionMismatchError(sorted(alpha.degrees), len(indices), what="evaluation tuple length")

    sign, ordered = sorting_sign(indices)
    if sign == 0:
        return Fraction(0)
    return sign * alpha.terms.get(ordered, Fraction(0))
