"""
Report rendering.

JSON output has sorted keys, exact rationals as integers or "p/q" strings and floats with
17 significant digits. Table output is fixed-width and shows check outcomes without
residuals, so it is stable across platforms.

"""
import json
from fractions import Fraction
from math import isfinite
from typing import Any, Iterator, Mapping

from spinlab.bounds import BOUND_NAMES, BoundsInput, BoundsReport
from spinlab.exterior import Form
from spinlab.pipeline import Analysis, Check
from spinlab.scalars import as_exact, encode_number, format_number


CHECK_WIDTH = 34


def dumps(document: Any, indent: int = 2) -> str:
    """
    Serialize a document to diff-stable JSON text.

    """
    return "".join(_encode(document, 0, indent)) + "\n"


def _encode(value: Any, level: int, indent: int) -> Iterator[str]:
    if value is None:
        yield "null"
    elif value is True:
        yield "true"
    elif value is False:
        yield "false"
    elif isinstance(value, int):
        yield str(value)
    elif isinstance(value, Fraction):
        yield from _encode(encode_number(value), level, indent)
    elif isinstance(value, float):
        if not isfinite(value):
            raise ValueError(f"Cannot serialize non-finite value {value}")
        yield format(value + 0.0, ".17g")
    elif isinstance(value, str):
        yield json.dumps(value, ensure_ascii=False)
    elif isinstance(value, Mapping):
        if not value:
            yield "{}"
            return
        inner = " " * (indent * (level + 1))
        yield "{\n"
        for position, key in enumerate(sorted(value)):
            yield f"{inner}{json.dumps(str(key), ensure_ascii=False)}: "
            yield from _encode(value[key], level + 1, indent)
            yield ",\n" if position < len(value) - 1 else "\n"
        yield " " * (indent * level) + "}"
    elif isinstance(value, (list, tuple)):
        if not value:
            yield "[]"
            return
        inner = " " * (indent * (level + 1))
        yield "[\n"
        for position, item in enumerate(value):
            yield inner
            yield from _encode(item, level + 1, indent)
            yield ",\n" if position < len(value) - 1 else "\n"
        yield " " * (indent * level) + "]"
    else:
        raise TypeError(f"Cannot serialize {type(value).__name__}")


def form_document(form: Form) -> dict:
    return dict(
        text=form.render(),
        terms=[
            dict(indices=list(indices), value=encode_number(coefficient))
            for indices, coefficient in form.terms.items()
        ],
    )


def check_document(check: Check) -> dict:
    return dict(
        name=check.name,
        passed=check.passed,
        residual="exact" if check.residual is None else check.residual,
        tolerance=check.tolerance,
        asserted=check.asserted,
    )


def _bound_value(report: BoundsReport, name: str):
    value = report.values()[name]
    if value is None:
        return f"undefined ({report.undefined[name]})"
    return encode_number(value)


def bounds_document(bounds_input: BoundsInput, report: BoundsReport, sources: Mapping[str, str] | None = None) -> dict:
    document = dict(
        input=dict(
            n=bounds_input.n,
            n_k=bounds_input.n_k,
            scal_g_min=encode_number(bounds_input.scal_g_min),
            t_norm2=encode_number(bounds_input.t_norm2),
            mu2_list=[encode_number(value) for value in bounds_input.mu2_list],
        ),
        beta_split=_bound_value(report, "β_split"),
        beta_univ=_bound_value(report, "β_univ"),
        beta_tw=_bound_value(report, "β_tw"),
        per_mu=[
            dict(mu2=encode_number(mu2), beta_split=None if value is None else encode_number(value))
            for mu2, value in report.per_mu
        ],
        coincidences=[list(group) for group in report.coincidences],
        best=list(report.best),
        notes=list(report.notes),
    )
    if sources is not None:
        document["sources"] = dict(sources)
    return document


def _mu_value(mu: float):
    return encode_number(as_exact(mu))


def analysis_document(analysis: Analysis) -> dict:
    """
    Every intermediate of an analysis under stable field names.

    """
    entry = analysis.entry
    document: dict[str, Any] = dict(
        name=entry.name,
        description=entry.description,
        n=entry.n,
        partition=entry.partition.as_lists(),
        partition_labels=list(entry.partition.labels),
        curvature_source=entry.curvature_source.value,
        torsion=form_document(entry.torsion),
        norm2=encode_number(analysis.norm2),
        sigma_T=form_document(analysis.sigma),
        split_type=analysis.split_type,
        decomposition=dict(
            pure=[form_document(part) for part in analysis.decomposition.pure],
            two_one=form_document(analysis.decomposition.two_one),
            mixed=form_document(analysis.decomposition.mixed),
        ),
        spectrum=dict(
            eigenvalues=[
                dict(mu=_mu_value(mu), multiplicity=multiplicity)
                for mu, multiplicity in analysis.spectrum.items()
            ],
            tolerance=analysis.spectrum.tolerance,
        ),
        extras={label: form_document(form) for label, form in entry.extras.items()},
        reference_torsion=None if entry.reference_torsion is None else form_document(entry.reference_torsion),
        homogeneous=None,
        curvature=None,
        bounds=None,
        checks=[check_document(check) for check in analysis.checks],
        notes=list(analysis.notes),
        passed=analysis.passed,
    )

    if analysis.homogeneous is not None:
        homogeneous = analysis.homogeneous
        document["homogeneous"] = dict(
            dim_g=homogeneous.dim_g,
            h_dim=homogeneous.h_dim,
            scal_nabla=encode_number(homogeneous.scal_nabla),
            scal_g=encode_number(homogeneous.scal_g),
            scal_g_oracle=encode_number(homogeneous.scal_g_oracle),
        )

    if analysis.curvature is not None:
        curvature = analysis.curvature
        section: dict[str, Any] = dict(source=curvature.source.value, valid=curvature.valid)
        if curvature.valid:
            section.update(
                scal=encode_number(curvature.scal),
                partial_scal=[encode_number(value) for value in curvature.partial_scal],
                block_checks=dict(
                    last_pair_across=curvature.blocks.last_pair_across,
                    first_pair_across=curvature.blocks.first_pair_across,
                    ricci_off_block=curvature.blocks.ricci_off_block,
                    cross_pair_blocks=curvature.blocks.cross_pair_blocks,
                ),
                sigma_tilde=[form_document(tilde) for tilde in curvature.sigma_tilde],
                bianchi=dict(
                    constant=encode_number(curvature.bianchi.constant),
                    residual=curvature.bianchi.residual,
                    alternation=curvature.bianchi.alternation,
                ),
            )
        document["curvature"] = section

    if analysis.bounds is not None:
        document["bounds"] = bounds_document(
            analysis.bounds.bounds_input,
            analysis.bounds.report,
            analysis.bounds.sources,
        )

    return document


def _status(check: Check) -> str:
    status = "pass" if check.passed else "FAIL"
    return status if check.asserted else f"{status} (reported)"


def bounds_lines(
    bounds_input: BoundsInput,
    report: BoundsReport,
    sources: Mapping[str, str] | None = None,
) -> list[str]:
    sources = sources or {}

    def sourced(label: str, text: str) -> str:
        return f"  {text} ({sources[label]})" if label in sources else f"  {text}"

    lines = [
        f"  n = {bounds_input.n}, n_k = {bounds_input.n_k}",
        sourced("scal_g_min", f"Scal^g_min = {format_number(bounds_input.scal_g_min)}"),
        sourced("t_norm2", f"‖T‖² = {format_number(bounds_input.t_norm2)}"),
        sourced(
            "mu2_list",
            "μ² ∈ {" + ", ".join(format_number(value) for value in sorted(set(bounds_input.mu2_list))) + "}",
        ),
    ]
    for name in BOUND_NAMES:
        value = report.values()[name]
        text = format_number(value) if value is not None else f"undefined ({report.undefined[name]})"
        lines.append(f"  {name} = {text}")
    for mu2, value in report.per_mu:
        lines.append(f"  β_split(μ² = {format_number(mu2)}) = {format_number(value)}")
    if report.best:
        lines.append(f"  best: {', '.join(report.best)}")
    lines.extend(f"  note: {note}" for note in report.notes)
    return lines


def render_bounds(bounds_input: BoundsInput, report: BoundsReport) -> str:
    return "\n".join(["bounds:", *bounds_lines(bounds_input, report)]) + "\n"


def render_table(analysis: Analysis) -> str:
    """
    Human-readable fixed-width report.

    """
    entry = analysis.entry
    decomposition = analysis.decomposition
    lines = [f"geometry: {entry.name}"]
    if entry.description:
        lines.append(f"description: {entry.description}")
    lines.extend([
        f"n = {entry.n}",
        f"partition: {entry.partition.render()}",
        f"T = {entry.torsion.render()}",
        f"‖T‖² = {format_number(analysis.norm2)}",
        f"σ_T = {analysis.sigma.render()}",
        f"split-type: {'yes' if analysis.split_type else 'no'}",
        "Λ³ pure: " + " | ".join(part.render() for part in decomposition.pure),
        f"Λ³ two-one: {decomposition.two_one.render()}",
        f"Λ³ mixed: {decomposition.mixed.render()}",
        "μ ∈ {" + ", ".join(format_number(as_exact(mu)) for mu, _ in analysis.spectrum.items()) + "}",
        "multiplicities: " + ", ".join(str(multiplicity) for _, multiplicity in analysis.spectrum.items()),
    ])

    for label, form in entry.extras.items():
        lines.append(f"{label} = {form.render()}")

    if analysis.homogeneous is not None:
        homogeneous = analysis.homogeneous
        lines.extend([
            "homogeneous:",
            f"  dim 𝔤 = {homogeneous.dim_g}, dim 𝔥 = {homogeneous.h_dim}",
            f"  Scal^∇ = {format_number(homogeneous.scal_nabla)}",
            f"  Scal^g = {format_number(homogeneous.scal_g)}",
        ])

    if analysis.curvature is not None:
        curvature = analysis.curvature
        lines.append(f"curvature ({curvature.source.value}):")
        if curvature.valid:
            lines.extend([
                f"  Scal = {format_number(curvature.scal)}",
                "  Scal_i = " + ", ".join(format_number(value) for value in curvature.partial_scal),
                f"  block structure: {_status(analysis.check('curvature.block_structure'))}",
                f"  Σσ̃ⁱ = σ_T: {_status(analysis.check('curvature.sigma_sum'))}",
                f"  Bianchi 𝔖R = σ_T: {_status(analysis.check('curvature.bianchi'))}",
            ])
        else:
            lines.append("  algebraic symmetries violated")

    if analysis.bounds is not None:
        lines.append("bounds:")
        lines.extend(bounds_lines(analysis.bounds.bounds_input, analysis.bounds.report, analysis.bounds.sources))

    lines.append("checks:")
    lines.extend(f"  {check.name:<{CHECK_WIDTH}}{_status(check)}" for check in analysis.checks)
    lines.append("notes:")
    lines.extend(f"  - {note}" for note in analysis.notes)
    lines.append(f"result: {'pass' if analysis.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"
