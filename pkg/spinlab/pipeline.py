"""
The verification pipeline run by `catalog run` and `analyze`.

Each stage records named checks. A check is asserted when it must hold for the geometry
at hand; other checks are reported only.

"""
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

from microcosm.api import binding, defaults, typed
from microcosm_logging.decorators import logger
from microcosm_logging.timing import elapsed_time

from spinlab.bounds import BoundsInput, BoundsReport, compare
from spinlab.catalog import CatalogEntry, CurvatureSource
from spinlab.clifford import Spectrum, act, build_rep, spectrum, torsion_square
from spinlab.constants import (
    DEFAULT_CURVATURE_TOLERANCE,
    DEFAULT_EIGEN_TOLERANCE,
    DEFAULT_TOLERANCE,
    HOLONOMY_CAVEAT,
)
from spinlab.curvature import (
    AlgCurvature,
    BianchiReport,
    BlockReport,
    bianchi_report,
    block_checks,
    curvature_endomorphism,
    partial_scal,
    scal,
    sigma_tilde,
    validate,
)
from spinlab.exterior import Form, norm2, sigma_T
from spinlab.homogeneous import (
    canonical_curvature,
    canonical_torsion,
    curvature_invariance,
    levi_civita_curvature,
    torsion_invariance,
)
from spinlab.scalars import Scalar, as_exact, is_exact
from spinlab.splitting import Lambda3Decomposition, decompose_3form, is_split_type


@dataclass(frozen=True)
class Check:
    """
    Outcome of one named check; `residual` is None for checks decided exactly.

    """
    name: str
    passed: bool
    residual: float | None
    tolerance: float
    asserted: bool = True


def scalar_check(name: str, left: Scalar, right: Scalar, tolerance: float, asserted: bool = True) -> Check:
    if is_exact(left) and is_exact(right):
        return Check(name, left == right, None, tolerance, asserted)
    residual = abs(float(left) - float(right))
    return Check(name, residual <= tolerance, residual, tolerance, asserted)


def form_check(name: str, left: Form, right: Form, tolerance: float, asserted: bool = True) -> Check:
    difference = left - right
    if difference.is_exact:
        return Check(name, difference.is_zero(), None, tolerance, asserted)
    residual = max((abs(float(value)) for value in difference.terms.values()), default=0.0)
    return Check(name, residual <= tolerance, residual, tolerance, asserted)


def residual_check(name: str, residual: float, tolerance: float, asserted: bool = True) -> Check:
    return Check(name, residual <= tolerance, residual, tolerance, asserted)


@dataclass(frozen=True)
class HomogeneousAnalysis:
    dim_g: int
    h_dim: int
    scal_nabla: Scalar
    scal_g: Scalar
    scal_g_oracle: Scalar


@dataclass(frozen=True)
class CurvatureAnalysis:
    source: CurvatureSource
    curvature: AlgCurvature
    valid: bool
    scal: Scalar | None = None
    partial_scal: tuple | None = None
    blocks: BlockReport | None = None
    sigma_tilde: tuple[Form, ...] = ()
    bianchi: BianchiReport | None = None


@dataclass(frozen=True)
class BoundsAnalysis:
    bounds_input: BoundsInput
    report: BoundsReport
    sources: dict[str, str]


@dataclass(frozen=True)
class Analysis:
    entry: CatalogEntry
    norm2: Scalar
    sigma: Form
    split_type: bool
    decomposition: Lambda3Decomposition
    spectrum: Spectrum
    homogeneous: HomogeneousAnalysis | None
    curvature: CurvatureAnalysis | None
    bounds: BoundsAnalysis | None
    checks: tuple[Check, ...]
    notes: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks if check.asserted)

    def check(self, name: str) -> Check:
        return next(check for check in self.checks if check.name == name)


@binding("analysis_pipeline")
@defaults(
    tolerance=typed(float, default_value=DEFAULT_TOLERANCE),
    eigen_tolerance=typed(float, default_value=DEFAULT_EIGEN_TOLERANCE),
    curvature_tolerance=typed(float, default_value=DEFAULT_CURVATURE_TOLERANCE),
)
@logger
class AnalysisPipeline:
    """
    Split-type check, Clifford spectrum of T, σ_T, curvature checks and bounds.

    """
    def __init__(self, graph):
        self.tolerance = graph.config.analysis_pipeline.tolerance
        self.eigen_tolerance = graph.config.analysis_pipeline.eigen_tolerance
        self.curvature_tolerance = graph.config.analysis_pipeline.curvature_tolerance

    @contextmanager
    def stage(self, name: str, entry: CatalogEntry):
        extra = dict(stage=name, geometry=entry.name)
        with elapsed_time(extra):
            yield
        self.logger.debug("Finished stage {stage} for {geometry}", extra=extra)

    def run(self, entry: CatalogEntry) -> Analysis:
        self.logger.info(
            "Analyzing geometry: {geometry}",
            extra=dict(
                geometry=entry.name,
                n=entry.n,
                partition=entry.partition.render(),
                curvature_source=entry.curvature_source.value,
            ),
        )
        checks: list[Check] = []
        notes: list[str] = [HOLONOMY_CAVEAT]

        with self.stage("clifford", entry):
            rep = build_rep(entry.n)
            torsion = entry.torsion
            endo = act(rep, torsion)
            checks.append(residual_check("clifford.self_adjoint", endo.adjoint_residual(), self.tolerance))
            torsion_spectrum = spectrum(endo, self.eigen_tolerance)

            sigma = sigma_T(torsion)
            torsion_norm2 = norm2(torsion)
            square = torsion_square(rep, torsion)
            expected = rep.identity() * float(torsion_norm2) - act(rep, sigma) * 2
            checks.append(residual_check("clifford.square_identity", square.distance(expected), self.tolerance))
            checks.append(
                residual_check(
                    "clifford.trace_identity",
                    abs(square.trace() - float(torsion_norm2) * rep.dim_spinor),
                    self.tolerance,
                ),
            )

        with self.stage("splitting", entry):
            decomposition = decompose_3form(torsion, entry.partition)
            split_type = is_split_type(torsion, entry.partition)

        if entry.scalars is not None and entry.scalars.t_norm2 is not None:
            # homogeneous entries may carry an externally normalized ‖T‖²
            checks.append(
                scalar_check(
                    "torsion.given_norm",
                    entry.scalars.t_norm2,
                    torsion_norm2,
                    self.tolerance,
                    asserted=entry.curvature_source is not CurvatureSource.HOMOGENEOUS,
                ),
            )
        if entry.reference_torsion is not None:
            checks.append(form_check("torsion.reference", torsion, entry.reference_torsion, self.tolerance))

        homogeneous = None
        curvature = entry.curvature
        if entry.homogeneous is not None:
            with self.stage("homogeneous", entry):
                homogeneous, curvature = self.analyze_homogeneous(entry, checks)

        curvature_analysis = None
        if curvature is not None:
            with self.stage("curvature", entry):
                curvature_analysis = self.analyze_curvature(entry, rep, curvature, sigma, split_type, checks, notes)

        with self.stage("bounds", entry):
            bounds = self.analyze_bounds(entry, homogeneous, torsion_norm2, torsion_spectrum, notes)

        analysis = Analysis(
            entry=entry,
            norm2=torsion_norm2,
            sigma=sigma,
            split_type=split_type,
            decomposition=decomposition,
            spectrum=torsion_spectrum,
            homogeneous=homogeneous,
            curvature=curvature_analysis,
            bounds=bounds,
            checks=tuple(checks),
            notes=tuple(notes),
        )
        failed = [check.name for check in analysis.checks if check.asserted and not check.passed]
        if failed:
            self.logger.warning(
                "Checks failed for {geometry}: {failed}",
                extra=dict(
                    geometry=entry.name,
                    failed=", ".join(failed),
                ),
            )
        return analysis

    def analyze_homogeneous(self, entry: CatalogEntry, checks: list[Check]):
        space = entry.homogeneous
        derived = canonical_torsion(space)
        checks.append(form_check("homogeneous.torsion_matches", entry.torsion, derived, self.tolerance))
        checks.append(
            residual_check("homogeneous.torsion_invariance", torsion_invariance(space), self.curvature_tolerance),
        )
        checks.append(
            residual_check(
                "homogeneous.curvature_invariance",
                curvature_invariance(space, self.curvature_tolerance),
                self.curvature_tolerance,
            ),
        )

        curvature = canonical_curvature(space, self.curvature_tolerance)
        scal_nabla = scal(curvature, self.curvature_tolerance)
        scal_g = scal_nabla + Fraction(3, 2) * norm2(derived)
        oracle = scal(levi_civita_curvature(space, self.curvature_tolerance), self.curvature_tolerance)
        checks.append(scalar_check("homogeneous.scal_g_oracle", scal_g, oracle, self.tolerance))

        return (
            HomogeneousAnalysis(
                dim_g=space.dim_g,
                h_dim=space.h_dim,
                scal_nabla=scal_nabla,
                scal_g=scal_g,
                scal_g_oracle=oracle,
            ),
            curvature,
        )

    def analyze_curvature(self, entry, rep, curvature, sigma, split_type, checks, notes) -> CurvatureAnalysis:
        source = entry.curvature_source
        symmetries = validate(curvature, self.curvature_tolerance)
        if curvature.is_exact:
            checks.append(Check("curvature.symmetries", symmetries.residual == 0, None, self.curvature_tolerance))
        else:
            checks.append(residual_check("curvature.symmetries", symmetries.residual, self.curvature_tolerance))
        if not checks[-1].passed:
            notes.append("curvature checks skipped: algebraic symmetries violated")
            return CurvatureAnalysis(source=source, curvature=curvature, valid=False)

        partition = entry.partition
        partial = tuple(partial_scal(curvature, partition, self.curvature_tolerance))
        total = scal(curvature, self.curvature_tolerance)

        blocks = block_checks(curvature, partition, self.curvature_tolerance)
        checks.append(
            residual_check("curvature.block_structure", blocks.residual, self.curvature_tolerance, split_type),
        )

        tildes = tuple(
            sigma_tilde(curvature, partition, i, self.curvature_tolerance)
            for i in range(1, partition.k + 1)
        )
        tilde_sum = sum(tildes, Form.zero(entry.n))
        checks.append(form_check("curvature.sigma_sum", tilde_sum, sigma, self.tolerance, split_type))

        spinor_sum = sum((act(rep, tilde) for tilde in tildes[1:]), act(rep, tildes[0]))
        checks.append(
            residual_check(
                "curvature.spinor_sigma_sum",
                spinor_sum.distance(act(rep, sigma)),
                self.tolerance,
                split_type,
            ),
        )

        lichnerowicz = max(
            curvature_endomorphism(rep, curvature, partition, i, self.curvature_tolerance).distance(
                act(rep, tilde) + rep.identity() * (float(partial[i - 1]) / 4),
            )
            for i, tilde in enumerate(tildes, start=1)
        )
        checks.append(residual_check("curvature.partial_lichnerowicz", lichnerowicz, self.tolerance, split_type))

        bianchi = bianchi_report(curvature, sigma, 1, self.curvature_tolerance)
        if curvature.is_exact and sigma.is_exact:
            exact = bianchi.residual == 0 and bianchi.alternation == 0
            checks.append(Check("curvature.bianchi", exact, None, self.tolerance))
        else:
            residual = max(bianchi.residual, bianchi.alternation)
            checks.append(residual_check("curvature.bianchi", residual, self.tolerance))

        if not split_type:
            notes.append("block, σ̃ and partial Lichnerowicz checks are reported only: torsion is not of split type")

        return CurvatureAnalysis(
            source=source,
            curvature=curvature,
            valid=True,
            scal=total,
            partial_scal=partial,
            blocks=blocks,
            sigma_tilde=tildes,
            bianchi=bianchi,
        )

    def analyze_bounds(self, entry, homogeneous, torsion_norm2, torsion_spectrum, notes) -> BoundsAnalysis | None:
        given = entry.scalars
        sources = {}
        if given is not None:
            scal_g_min = given.scal_g_min
            sources["scal_g_min"] = f"given: {given.provenance}" if given.provenance else "given"
        elif homogeneous is not None:
            scal_g_min = homogeneous.scal_g
            sources["scal_g_min"] = "homogeneous Scal^g"
        else:
            notes.append("bounds skipped: no Scal^g_min available")
            return None

        if entry.n < 2:
            notes.append("bounds skipped: n < 2")
            return None

        if given is not None and given.t_norm2 is not None:
            t_norm2 = given.t_norm2
            sources["t_norm2"] = "given"
        else:
            t_norm2 = torsion_norm2
            sources["t_norm2"] = "norm2(T)"

        if given is not None and given.mu2_list is not None:
            mu2_list = given.mu2_list
            sources["mu2_list"] = "given"
        else:
            mu2_list = tuple(as_exact(value, self.eigen_tolerance) for value in torsion_spectrum.squares())
            sources["mu2_list"] = "spectrum of T"

        bounds_input = BoundsInput(
            n=entry.n,
            n_k=entry.partition.n_k,
            scal_g_min=scal_g_min,
            t_norm2=t_norm2,
            mu2_list=mu2_list,
        )
        return BoundsAnalysis(bounds_input=bounds_input, report=compare(bounds_input), sources=sources)
