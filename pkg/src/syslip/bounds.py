"""Assembly of the two-sided bounds on the systole map's Lipschitz constant.

Upper bound: along a family with collar constant N, hyperbolic structures at
Teichmueller distance below log(|chi|/N) have systoles at curve-complex
distance at most 2, giving the coefficient 2/log(|chi|/N).  Lower bound: for
any pseudo-Anosov, the Lipschitz constant is at least (asymptotic translation
length) / (log dilatation); the twist-product root maps supply translation
length >= 1/mixing_number and log-dilatation <= log(16i+9)/i.

Both products K * log|chi| stay in a bounded window along a family, which is
the machine-checkable form of the asymptotic statement; the implied constants
are not pinned by theory.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .mixing import default_mixing_cap, mixing_number
from .spectral import root_log_dilatation_bound
from .surfaces import (
    RationalRay,
    RayPoint,
    Surface,
    cover_surface,
    family_collar_constant,
)
from .twists import lifted_root_matrix

K_UPPER_ADDITIVE_CONSTANT = 2.0


def k_upper_bound(surface: Surface, collar_constant: float) -> float:
    """Lipschitz coefficient 2/log(|chi|/N); vacuous unless |chi| > N.

    The accompanying additive constant is 2 (K_UPPER_ADDITIVE_CONSTANT); it
    is reported alongside, never folded into the coefficient.
    """
    if collar_constant <= 0:
        raise DomainError("collar constant must be positive")
    ratio = surface.abs_chi / collar_constant
    if ratio <= 1.0:
        raise DomainError(
            f"upper bound is vacuous: |chi| = {surface.abs_chi} does not exceed "
            f"the collar constant {collar_constant:.6g}"
        )
    return 2.0 / math.log(ratio)


def wolpert_distance_lower_bound(length_x: float, length_y: float) -> float:
    """Teichmueller distance is at least log(l_Y/l_X) when a curve stretches.

    One-sided: swap the roles of the lengths for the other direction.
    """
    if length_x <= 0 or length_y <= 0:
        raise DomainError("curve lengths must be positive")
    return max(0.0, math.log(length_y / length_x))


def nonfilling_certificate(
    length_x_alpha: float,
    length_y_beta: float,
    teich_distance: float,
    surface: Surface,
    collar_constant: float,
) -> bool:
    """Certify that two systoles cannot fill, so their distance is <= 2.

    Checks the inequality chain: with l_X(alpha) <= l_Y(beta) and
    d_T <= log(|chi|/N), the collar and length-stretch bounds force
    i(alpha, beta) < |chi|, below the filling threshold.  Precondition
    violations raise, naming the failed inequality.
    """
    if length_x_alpha <= 0 or length_y_beta <= 0:
        raise DomainError("curve lengths must be positive")
    if teich_distance < 0:
        raise DomainError("distance must be nonnegative")
    if length_x_alpha > length_y_beta:
        raise DomainError(
            "ordering inequality failed: l_X(alpha) must not exceed l_Y(beta)"
        )
    if collar_constant <= 0:
        raise DomainError("collar constant must be positive")
    threshold = math.log(surface.abs_chi / collar_constant)
    if teich_distance > threshold:
        raise DomainError(
            f"distance inequality failed: d_T = {teich_distance:.6g} exceeds "
            f"log(|chi|/N) = {threshold:.6g}"
        )
    # i(alpha,beta) < |chi| * l_X(alpha)/l_Y(beta) <= |chi|
    return surface.abs_chi * (length_x_alpha / length_y_beta) <= surface.abs_chi


@dataclass(frozen=True)
class LowerBoundInputs:
    """Certified ingredients behind a ray-family lower bound."""

    log_dilatation_upper: float
    translation_lower: Fraction | None
    mixing_number: int | None
    mixing_cap: int
    matrix_dimension: int
    certified: bool


def closed_form_k_lower(ray: RationalRay, index: int) -> float:
    """Closed-form lower bound 1/((2+2p+q) * log(16i+9))."""
    if index < 2:
        raise DomainError("ray lower bounds need cover degree >= 2")
    return 1.0 / ((2 + 2 * ray.p + ray.q) * math.log(16 * index + 9))


def k_lower_bound_ray(
    ray: RationalRay,
    index: int,
    cap: int | None = None,
    use_computed_mixing: bool = True,
) -> tuple[float | None, LowerBoundInputs]:
    """Lower bound translation_lower / log_dilatation_upper for the root map.

    The dilatation denominator is the certified closed form log(16i+9)/i.
    The translation numerator is 1/r for the computed mixing number r; when
    the mixing number exceeds its cap the bound is uncertified and None is
    returned alongside the inputs (a falsification candidate, not an error).
    """
    if index < 2:
        raise DomainError("ray lower bounds need cover degree >= 2")
    log_dil = root_log_dilatation_bound(index)
    effective_cap = cap if cap is not None else default_mixing_cap(ray, index)
    if not use_computed_mixing:
        # closed-form mode: take the cap itself as the mixing budget
        inputs = LowerBoundInputs(
            log_dilatation_upper=log_dil,
            translation_lower=Fraction(1, effective_cap),
            mixing_number=None,
            mixing_cap=effective_cap,
            matrix_dimension=index * (2 * ray.p + ray.q),
            certified=True,
        )
        return float(Fraction(1, effective_cap)) / log_dil, inputs
    matrix = lifted_root_matrix(ray, index)
    result = mixing_number(matrix, effective_cap)
    inputs = LowerBoundInputs(
        log_dilatation_upper=log_dil,
        translation_lower=result.translation_lower_bound,
        mixing_number=result.mixing_number,
        mixing_cap=effective_cap,
        matrix_dimension=matrix.dimension,
        certified=result.within_cap,
    )
    if not result.within_cap:
        return None, inputs
    return float(result.translation_lower_bound) / log_dil, inputs


def conditional_rate(abs_chi: float, c1: float, c2: float) -> float:
    """Fixed-genus rate 1/(C1 * C2 * log|chi|) from cited dilatation bounds."""
    if c1 <= 0 or c2 <= 0:
        raise DomainError("the cited constants must be positive")
    if abs_chi <= 1:
        raise DomainError("need |chi| > 1 for a positive logarithm")
    return 1.0 / (c1 * c2 * math.log(abs_chi))


def k_lower_bound_fixed_genus(genus: int, punctures: int, c1: float, c2: float) -> float:
    """Conditional fixed-genus lower bound 1/(C1*C2*log|chi|).

    The underlying pseudo-Anosov family is quoted, not constructed, so the
    value is conditional on the supplied constants.
    """
    if genus < 2:
        raise DomainError("the fixed-genus bound needs genus >= 2")
    surface = Surface(genus, punctures)
    if surface.abs_chi < 3:
        raise DomainError("need |chi| >= 3 on the fixed-genus path")
    return conditional_rate(surface.abs_chi, c1, c2)


@dataclass(frozen=True)
class BoundsReport:
    """One family member's bounds and every intermediate quantity."""

    family: str
    genus: int
    punctures: int
    abs_chi: int
    collar_constant: float
    k_upper: float | None
    k_upper_additive: float
    k_lower: float | None
    lower_inputs: LowerBoundInputs | None
    conditional_constants: tuple[float, float] | None = None
    note: str = ""

    @property
    def k_upper_log_abs_chi(self) -> float | None:
        if self.k_upper is None:
            return None
        return self.k_upper * math.log(self.abs_chi)

    @property
    def k_lower_log_abs_chi(self) -> float | None:
        if self.k_lower is None:
            return None
        return self.k_lower * math.log(self.abs_chi)

    @property
    def lambda_upper(self) -> float | None:
        """Dilatation upper bound exp(log bound) of the constructed map."""
        if self.lower_inputs is None:
            return None
        return math.exp(self.lower_inputs.log_dilatation_upper)

    def to_json(self) -> dict:
        inputs = None
        if self.lower_inputs is not None:
            tl = self.lower_inputs.translation_lower
            inputs = {
                "log_dilatation_upper": self.lower_inputs.log_dilatation_upper,
                "translation_lower": (
                    None if tl is None else {"numerator": tl.numerator, "denominator": tl.denominator}
                ),
                "mixing_number": self.lower_inputs.mixing_number,
                "mixing_cap": self.lower_inputs.mixing_cap,
                "matrix_dimension": self.lower_inputs.matrix_dimension,
                "certified": self.lower_inputs.certified,
            }
        return {
            "family": self.family,
            "genus": self.genus,
            "punctures": self.punctures,
            "abs_chi": self.abs_chi,
            "collar_constant": self.collar_constant,
            "k_upper": self.k_upper,
            "k_upper_additive": self.k_upper_additive,
            "k_lower": self.k_lower,
            "k_upper_log_abs_chi": self.k_upper_log_abs_chi,
            "k_lower_log_abs_chi": self.k_lower_log_abs_chi,
            "lambda_upper": self.lambda_upper,
            "lower_inputs": inputs,
            "conditional_constants": (
                None
                if self.conditional_constants is None
                else list(self.conditional_constants)
            ),
            "note": self.note,
        }


def _ray_report(
    ray: RationalRay,
    index: int,
    collar_constant: float,
    cap: int | None,
    use_computed_mixing: bool,
) -> BoundsReport:
    surface = cover_surface(RayPoint(ray, index))
    notes = []
    try:
        k_up = k_upper_bound(surface, collar_constant)
    except DomainError as exc:
        k_up = None
        notes.append(str(exc))
    k_low, inputs = k_lower_bound_ray(ray, index, cap=cap, use_computed_mixing=use_computed_mixing)
    if k_low is None:
        notes.append(
            f"mixing number exceeds cap {inputs.mixing_cap}: lower bound uncertified"
        )
    return BoundsReport(
        family=f"ray {ray}",
        genus=surface.genus,
        punctures=surface.punctures,
        abs_chi=surface.abs_chi,
        collar_constant=collar_constant,
        k_upper=k_up,
        k_upper_additive=K_UPPER_ADDITIVE_CONSTANT,
        k_lower=k_low,
        lower_inputs=inputs,
        note="; ".join(notes),
    )


def _fixed_genus_report(
    genus: int, punctures: int, collar_constant: float, c1: float, c2: float
) -> BoundsReport:
    surface = Surface(genus, punctures)
    notes = ["conditional on cited dilatation constants"]
    try:
        k_up = k_upper_bound(surface, collar_constant)
    except DomainError as exc:
        k_up = None
        notes.append(str(exc))
    try:
        k_low = k_lower_bound_fixed_genus(genus, punctures, c1, c2)
    except DomainError as exc:
        k_low = None
        notes.append(str(exc))
    return BoundsReport(
        family=f"genus {genus}",
        genus=genus,
        punctures=punctures,
        abs_chi=surface.abs_chi,
        collar_constant=collar_constant,
        k_upper=k_up,
        k_upper_additive=K_UPPER_ADDITIVE_CONSTANT,
        k_lower=k_low,
        lower_inputs=None,
        conditional_constants=(c1, c2),
        note="; ".join(notes),
    )


def sandwich_table(
    family: RationalRay | int,
    indices: list[int] | range,
    collar_override: float | None = None,
    cap: int | None = None,
    use_computed_mixing: bool = True,
    c1: float = 1.0,
    c2: float = 1.0,
) -> list[BoundsReport]:
    """Per-index bounds reports along a ray or a fixed-genus family.

    Failed quantities are reported in the row's note rather than dropping the
    row.  For a ray the index is the cover degree; for fixed genus it is the
    puncture count.
    """
    collar = collar_override if collar_override is not None else family_collar_constant(family)
    rows = []
    for index in indices:
        if isinstance(family, RationalRay):
            rows.append(_ray_report(family, index, collar, cap, use_computed_mixing))
        else:
            rows.append(_fixed_genus_report(family, index, collar, c1, c2))
    return rows


CSV_COLUMNS = (
    "genus",
    "punctures",
    "abs_chi",
    "collar_constant",
    "k_upper",
    "k_lower",
    "mixing_number",
    "lambda_upper",
    "k_upper_log_abs_chi",
    "k_lower_log_abs_chi",
    "note",
)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def reports_to_csv(reports: list[BoundsReport]) -> str:
    """Fixed-column CSV: '.' decimals, no separators, LF line endings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        mixing = None if r.lower_inputs is None else r.lower_inputs.mixing_number
        writer.writerow(
            [
                _cell(r.genus),
                _cell(r.punctures),
                _cell(r.abs_chi),
                _cell(r.collar_constant),
                _cell(r.k_upper),
                _cell(r.k_lower),
                _cell(mixing),
                _cell(r.lambda_upper),
                _cell(r.k_upper_log_abs_chi),
                _cell(r.k_lower_log_abs_chi),
                _cell(r.note),
            ]
        )
    return buf.getvalue()


def reports_to_json(reports: list[BoundsReport]) -> str:
    return json.dumps({"rows": [r.to_json() for r in reports]}, indent=2, sort_keys=True) + "\n"


def reports_to_plot_data(reports: list[BoundsReport]) -> str:
    """Two-column (abs_chi, K_lower * log|chi|) file for external plotters."""
    lines = ["abs_chi,k_lower_log_abs_chi"]
    for r in reports:
        product = r.k_lower_log_abs_chi
        if product is not None:
            lines.append(f"{r.abs_chi},{repr(product)}")
    return "\n".join(lines) + "\n"
