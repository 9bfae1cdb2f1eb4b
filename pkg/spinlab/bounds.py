"""
Lower bounds for the smallest eigenvalue of the squared characteristic Dirac operator.

All coefficients are exact rationals, so exact inputs yield exact bounds.

"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import isclose
from typing import Sequence

from spinlab.constants import SPLIT_CAVEAT
from spinlab.errors import InvalidBoundsInputError, UndefinedBoundError
from spinlab.scalars import Scalar, as_scalar, format_number, is_exact


BOUND_NAMES = ("β_split", "β_univ", "β_tw")


@dataclass(frozen=True)
class BoundsInput:
    """
    Scalars entering the bounds: dimension, largest block size, Scal^g_min, ‖T‖² and μ².

    """
    n: int
    n_k: int
    scal_g_min: Scalar
    t_norm2: Scalar
    mu2_list: Sequence[Scalar]

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 2:
            raise InvalidBoundsInputError(f"n must be an integer ≥ 2, got {self.n}")
        if isinstance(self.n_k, bool) or not isinstance(self.n_k, int) or not 1 <= self.n_k <= self.n:
            raise InvalidBoundsInputError(f"n_k must be an integer in 1..{self.n}, got {self.n_k}")

        object.__setattr__(self, "scal_g_min", as_scalar(self.scal_g_min))
        object.__setattr__(self, "t_norm2", as_scalar(self.t_norm2))
        object.__setattr__(self, "mu2_list", tuple(as_scalar(value) for value in self.mu2_list))

        if self.t_norm2 < 0:
            raise InvalidBoundsInputError(f"t_norm2 must be nonnegative, got {format_number(self.t_norm2)}")
        if not self.mu2_list:
            raise InvalidBoundsInputError("mu2_list must not be empty")
        negative = [format_number(value) for value in self.mu2_list if value < 0]
        if negative:
            raise InvalidBoundsInputError(f"μ² values must be nonnegative, got {negative}")

    @property
    def max_mu2(self) -> Scalar:
        return max(self.mu2_list)


def beta_split_mu(scal_g_min, t_norm2, mu2, n_k: int) -> Scalar:
    """
    Bound on the eigenbundle of μ:

        n_k/(4(n_k-1))·Scal^g_min + n_k/(8(n_k-1))·‖T‖² - (1+n_k)/(4(n_k-1))·μ²

    """
    if n_k == 1:
        raise UndefinedBoundError("β_split", "n_k=1")
    return (
        Fraction(n_k, 4 * (n_k - 1)) * as_scalar(scal_g_min)
        + Fraction(n_k, 8 * (n_k - 1)) * as_scalar(t_norm2)
        - Fraction(1 + n_k, 4 * (n_k - 1)) * as_scalar(mu2)
    )


def beta_split(bounds_input: BoundsInput) -> Scalar:
    return beta_split_mu(bounds_input.scal_g_min, bounds_input.t_norm2, bounds_input.max_mu2, bounds_input.n_k)


def beta_univ(bounds_input: BoundsInput) -> Scalar:
    """
    The universal estimate ¼·Scal^g_min + ⅛·‖T‖² - ¼·max μ².

    """
    return (
        Fraction(1, 4) * bounds_input.scal_g_min
        + Fraction(1, 8) * bounds_input.t_norm2
        - Fraction(1, 4) * bounds_input.max_mu2
    )


def beta_tw(bounds_input: BoundsInput) -> Scalar:
    """
    The twistor estimate

        n/(4(n-1))·Scal^g_min + n(n-5)/(8(n-3)²)·‖T‖² + n(4-n)/(4(n-3)²)·max μ²

    """
    n = bounds_input.n
    if n == 3:
        raise UndefinedBoundError("β_tw", "n=3")
    return (
        Fraction(n, 4 * (n - 1)) * bounds_input.scal_g_min
        + Fraction(n * (n - 5), 8 * (n - 3) ** 2) * bounds_input.t_norm2
        + Fraction(n * (4 - n), 4 * (n - 3) ** 2) * bounds_input.max_mu2
    )


@dataclass(frozen=True)
class BoundsReport:
    """
    Defined bounds (None when undefined), the per-μ table and explanatory notes.

    """
    beta_split: Scalar | None
    beta_univ: Scalar
    beta_tw: Scalar | None
    per_mu: tuple[tuple[Scalar, Scalar | None], ...]
    undefined: dict[str, str] = field(default_factory=dict)
    coincidences: tuple[tuple[str, ...], ...] = ()
    best: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def values(self) -> dict[str, Scalar | None]:
        return dict(zip(BOUND_NAMES, (self.beta_split, self.beta_univ, self.beta_tw)))


def _same(left: Scalar, right: Scalar) -> bool:
    if is_exact(left) and is_exact(right):
        return left == right
    return isclose(float(left), float(right), rel_tol=1e-12, abs_tol=1e-12)


def _evaluate(name: str, evaluator, undefined: dict[str, str]):
    try:
        return evaluator()
    except UndefinedBoundError as error:
        undefined[name] = error.reason
        return None


def compare(bounds_input: BoundsInput) -> BoundsReport:
    """
    Evaluate every bound, group coinciding values and record notes for undefined cases.

    """
    undefined: dict[str, str] = {}
    values = dict(
        zip(
            BOUND_NAMES,
            (
                _evaluate("β_split", lambda: beta_split(bounds_input), undefined),
                _evaluate("β_univ", lambda: beta_univ(bounds_input), undefined),
                _evaluate("β_tw", lambda: beta_tw(bounds_input), undefined),
            ),
        ),
    )

    per_mu = []
    for mu2 in sorted(set(bounds_input.mu2_list)):
        try:
            per_mu.append((mu2, beta_split_mu(bounds_input.scal_g_min, bounds_input.t_norm2, mu2, bounds_input.n_k)))
        except UndefinedBoundError:
            per_mu.append((mu2, None))

    defined = [(name, value) for name, value in values.items() if value is not None]
    groups: list[list[str]] = []
    for name, value in defined:
        for group in groups:
            if _same(values[group[0]], value):
                group.append(name)
                break
        else:
            groups.append([name])
    coincidences = tuple(tuple(group) for group in groups if len(group) > 1)

    best: tuple[str, ...] = ()
    if defined:
        largest = max(value for _, value in defined)
        best = tuple(name for name, value in defined if _same(value, largest))

    notes = [f"{name} undefined ({reason})" for name, reason in undefined.items()]
    for group in coincidences:
        notes.append(f"{' = '.join(group)} = {format_number(values[group[0]])}")
    if bounds_input.t_norm2 != 0:
        notes.append(SPLIT_CAVEAT)

    return BoundsReport(
        beta_split=values["β_split"],
        beta_univ=values["β_univ"],
        beta_tw=values["β_tw"],
        per_mu=tuple(per_mu),
        undefined=undefined,
        coincidences=coincidences,
        best=best,
        notes=tuple(notes),
    )
