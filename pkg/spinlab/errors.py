"""
Spinlab errors.

Errors define an `exit_code` for each translation to the command line
but are not coupled with the CLI itself.

"""


class SpinlabError(Exception):
    """
    Base class for all spinlab errors.

    """
    @property
    def exit_code(self):
        # mathematical assertion failure
        return 1

    @property
    def include_stack_trace(self):
        return True


class SpinlabInputError(SpinlabError):
    """
    The caller supplied data that does not describe a valid object.

    Usually the result of a malformed geometry or a wrong argument.

    """
    @property
    def exit_code(self):
        # input error
        return 2

    @property
    def include_stack_trace(self):
        return False


class DimensionMismatchError(SpinlabInputError):
    """
    Two objects live over frames of different dimension.

    """
    def __init__(self, expected, actual, what="frame"):
        super().__init__(f"Dimension mismatch for {what}: expected {expected}, got {actual}")
        self.expected = expected
        self.actual = actual


class IndexOutOfRangeError(SpinlabInputError):
    """
    A frame or block index lies outside of its valid range.

    """
    def __init__(self, index, upper, what="frame index"):
        super().__init__(f"Invalid {what} {index}; expected 1..{upper}")
        self.index = index
        self.upper = upper


class DegreeError(SpinlabInputError):
    """
    A form of the wrong degree was supplied.

    """
    def __init__(self, expected, actual):
        super().__init__(f"Expected a form of degree {expected}, got degree(s) {actual}")
        self.expected = expected
        self.actual = actual


class InvalidPartitionError(SpinlabInputError):
    """
    Blocks overlap, leave gaps or are empty.

    """
    pass


class InvalidGeometryError(SpinlabInputError):
    """
    A geometry document failed schema or semantic validation.

    """
    def __init__(self, message, pointer=""):
        super().__init__(f"{message} (at {pointer or '/'})")
        self.pointer = pointer or "/"


class UnknownEntryError(SpinlabInputError):
    """
    The requested catalog entry does not exist.

    """
    def __init__(self, name):
        super().__init__(f"Unknown catalog entry: {name}")
        self.name = name


class InvalidBoundsInputError(SpinlabInputError):
    """
    Eigenvalue bound inputs violate their ranges.

    """
    pass


class UndefinedBoundError(SpinlabError):
    """
    A bound is undefined for the given dimensions (singular coefficient).

    Converted into report notes; never an exit condition by itself.

    """
    def __init__(self, bound, reason):
        super().__init__(f"{bound} undefined ({reason})")
        self.bound = bound
        self.reason = reason

    @property
    def include_stack_trace(self):
        return False


class SpinlabAssertionError(SpinlabError):
    """
    A mathematical property that must hold did not hold.

    """
    pass


class NotSelfAdjointError(SpinlabAssertionError):
    """
    A spinor endomorphism expected to be self-adjoint is not.

    """
    def __init__(self, residual, tolerance):
        super().__init__(f"Endomorphism is not self-adjoint: residual {residual:.3e} > {tolerance:.3e}")
        self.residual = residual
        self.tolerance = tolerance


class InvalidCurvatureError(SpinlabAssertionError):
    """
    A curvature tensor violates its algebraic symmetries.

    """
    def __init__(self, report):
        super().__init__(f"Curvature tensor failed validation: {report.describe()}")
        self.report = report


class HomogeneousSpaceError(SpinlabInputError):
    """
    Structure constants do not define a valid naturally reductive space.

    Each subclass carries a 1-based witness triple: 𝔤-basis indices for the Jacobi and
    reductivity conditions, (𝔥 index, 𝔪 index, 𝔪 index) for metric invariance and
    𝔪-frame indices for natural reductivity.

    """
    condition = "homogeneous space"

    def __init__(self, witness, residual):
        super().__init__(
            f"{self.condition} violated at basis triple {tuple(witness)} (residual {float(residual):.3e})",
        )
        self.witness = tuple(witness)
        self.residual = residual


class JacobiError(HomogeneousSpaceError):
    condition = "Jacobi identity"


class NotReductiveError(HomogeneousSpaceError):
    condition = "Reductivity [h, m] ⊆ m"


class NonInvariantMetricError(HomogeneousSpaceError):
    condition = "Ad(H)-invariance of the metric"


class NotNaturallyReductiveError(HomogeneousSpaceError):
    condition = "Natural reductivity"


class InconsistentDataError(SpinlabInputError):
    """
    Records disagree once their symmetry completion is applied.

    Raised for curvature records and for bracket records alike.

    """
    def __init__(self, indices, existing, value):
        super().__init__(
            f"Conflicting value at {tuple(indices)}: symmetry completion implies {existing}, got {value}",
        )
        self.indices = tuple(indices)
        self.existing = existing
        self.value = value
