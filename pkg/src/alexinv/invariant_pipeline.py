"""End-to-end computations on arrangement scenarios.

A scenario bundles everything needed to compute twisted cohomology of an
arrangement complement: the component degrees, the cohomology algebra with
its structure constants, the residue rows of an embedded resolution, and the
linear map sending residue parameters to one-form coefficients.

On top of a scenario, this module computes cohomology dimensions of a given
rank-one local system (via an admissible residue search), jumping-locus scans
over all torsion points of a level, and monodromy characteristic polynomials
of the associated Milnor fiber via equimonodromic local systems.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

from .aomoto_complex import (
    GradedAlgebra,
    OneForm,
    algebra_from_dict,
    algebra_to_dict,
    betti_vector,
    cohomology_dims,
    ensure_valid,
)
from .errors import DimensionError, InconclusiveSearchError, SchemaError
from .exact_kernel import cyclotomic_poly, divisors, format_rational, parse_rational
from .laurent_ring import TorsionPoint, torsion_grid
from .residue_systems import (
    ResidueSystem,
    admissible_search,
    equimonodromic_beta,
    residue_system_from_dict,
    residue_system_to_dict,
)


@dataclass(frozen=True)
class Scenario:
    """A complete arrangement description consumed by the pipeline and CLI.

    ``omega_map`` is an ``nparams x dim(A^1)`` rational matrix sending residue
    parameters to one-form coefficients.  ``max_shift``, when set, caps the
    admissible-search box for this scenario regardless of the caller's bound
    (used when only small residues are known to be admissible).
    """

    name: str
    components: int
    degrees: tuple
    algebra: GradedAlgebra
    residue_system: ResidueSystem
    omega_map: tuple
    include_infinity_in_milnor: bool = True
    intersection_points: tuple | None = None
    max_shift: int | None = None

    @property
    def nparams(self) -> int:
        return self.residue_system.nparams

    def one_form(self, alpha) -> OneForm:
        """Map a residue parameter vector through ``omega_map``."""
        alpha = tuple(Fraction(a) for a in alpha)
        if len(alpha) != self.nparams:
            raise DimensionError(
                f"alpha has length {len(alpha)}, expected {self.nparams}"
            )
        dim1 = self.algebra.dim(1)
        coeffs = [Fraction(0)] * dim1
        for i, a in enumerate(alpha):
            if not a:
                continue
            for j in range(dim1):
                coeffs[j] += a * self.omega_map[i][j]
        return OneForm(tuple(coeffs))

    def effective_bound(self, bound: int) -> int:
        if self.max_shift is None:
            return bound
        return min(bound, self.max_shift)


def admissible_representative(scenario: Scenario, beta, bound: int = 3):
    """Deterministic admissible residue choice for ``beta``, or None."""
    return admissible_search(
        scenario.residue_system, beta, scenario.effective_bound(bound)
    )


def twisted_cohomology(scenario: Scenario, beta, bound: int = 3) -> tuple[int, ...]:
    """Cohomology dimensions of the rank-one local system with residue
    classes ``beta``, computed from an admissible representative.

    Raises :class:`InconclusiveSearchError` when no representative exists in
    the search box; that outcome is "unknown", not a vanishing statement.
    """
    alpha = admissible_representative(scenario, beta, bound)
    if alpha is None:
        raise InconclusiveSearchError(
            tuple(Fraction(b) for b in beta),
            scenario.effective_bound(bound),
            scenario.name,
        )
    return cohomology_dims(scenario.algebra, scenario.one_form(alpha))


@dataclass(frozen=True)
class CharvarScan:
    """Result of bucketing torsion points by a twisted cohomology dimension."""

    level: int
    degree: int
    by_dimension: dict
    inconclusive: tuple

    def points_with_dim_above(self, i: int) -> tuple[TorsionPoint, ...]:
        out = []
        for dim in sorted(self.by_dimension):
            if dim > i:
                out.extend(self.by_dimension[dim])
        return tuple(sorted(out, key=lambda p: p.numerators()))


def _worker_count() -> int:
    raw = os.environ.get("ALEXINV_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def charvar_scan(
    scenario: Scenario, level: int, degree: int, bound: int = 3
) -> CharvarScan:
    """Bucket every level-N torsion point by ``dim H^degree``.

    The scan enumerates all ``level ** nparams`` residue-class vectors in
    lexicographic order; aggregation is deterministic regardless of the
    worker count.
    """
    if not 1 <= degree <= scenario.algebra.top_degree:
        raise DimensionError(
            f"degree {degree} out of range [1, {scenario.algebra.top_degree}]"
        )
    points = list(torsion_grid(level, scenario.nparams))

    def compute(point):
        try:
            return twisted_cohomology(scenario, point.beta, bound)[degree]
        except InconclusiveSearchError:
            return None

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(compute, points))
    else:
        outcomes = [compute(point) for point in points]

    by_dimension: dict = {}
    inconclusive = []
    for point, outcome in zip(points, outcomes):
        if outcome is None:
            inconclusive.append(point)
        else:
            by_dimension.setdefault(outcome, []).append(point)
    by_dimension = {
        dim: tuple(pts) for dim, pts in sorted(by_dimension.items())
    }
    return CharvarScan(level, degree, by_dimension, tuple(inconclusive))


# ---------------------------------------------------------------------------
# Monodromy characteristic polynomials.


@dataclass(frozen=True)
class MonodromyPolynomial:
    """``det(t - h)`` on a cohomology degree, stored as root multiplicities.

    ``multiplicities[k]`` is the multiplicity of the root
    ``exp(-2*pi*i*k/order)``.
    """

    order: int
    multiplicities: tuple

    def __post_init__(self):
        if len(self.multiplicities) != self.order:
            raise DimensionError("need one multiplicity per root")

    @property
    def degree(self) -> int:
        return sum(self.multiplicities)

    def multiplicity_by_root_order(self):
        """Map d -> multiplicity shared by all roots of primitive order d, or
        None when some primitive class carries unequal multiplicities."""
        out = {}
        for d in divisors(self.order):
            values = {
                self.multiplicities[k]
                for k in range(self.order)
                if self.order // int_gcd(k, self.order) == d
            }
            if len(values) != 1:
                return None
            out[d] = values.pop()
        return out

    def factored_str(self) -> str:
        """Canonical factored text like ``(t-1)^2*(t^5-1)``.

        Roots are grouped into ``t^e - 1`` factors greedily (largest exponent
        first); primitive classes that cannot be completed to such a factor
        are printed as explicit cyclotomic polynomials.  When multiplicities
        are not constant on a primitive class the root list is printed
        verbatim.
        """
        by_order = self.multiplicity_by_root_order()
        if by_order is None:
            roots = ",".join(
                f"{k}/{self.order}:{m}"
                for k, m in enumerate(self.multiplicities)
                if m
            )
            return f"roots[{roots}]"
        remaining = dict(by_order)
        factors = []
        for e in sorted(divisors(self.order), reverse=True):
            count = min(remaining[d] for d in divisors(e))
            if count > 0:
                factors.append((e, count))
                for d in divisors(e):
                    remaining[d] -= count
        leftovers = [
            (d, m) for d, m in sorted(remaining.items()) if m > 0
        ]
        parts = []
        for e, count in sorted(factors):
            base = "(t-1)" if e == 1 else f"(t^{e}-1)"
            parts.append(base + (f"^{count}" if count > 1 else ""))
        for d, count in leftovers:
            base = "(" + compact_univariate(cyclotomic_poly(d)) + ")"
            parts.append(base + (f"^{count}" if count > 1 else ""))
        return "*".join(parts) if parts else "1"


def compact_univariate(coeffs) -> str:
    """Spaceless display of an integer polynomial in ``t`` (constant first)."""
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else f"{mag}*") + ("t" if e == 1 else f"t^{e}")
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+" if c > 0 else "-") + body)
    return "".join(parts) if parts else "0"


def milnor_order(scenario: Scenario) -> int:
    return sum(scenario.degrees) + (1 if scenario.include_infinity_in_milnor else 0)


def milnor_charpoly(scenario: Scenario, m: int, bound: int = 3) -> MonodromyPolynomial:
    """Characteristic polynomial of the degree-``m`` monodromy of the
    associated Milnor fiber, assembled from equimonodromic local systems."""
    if not 0 <= m <= scenario.algebra.top_degree:
        raise DimensionError(
            f"degree {m} out of range [0, {scenario.algebra.top_degree}]"
        )
    order = milnor_order(scenario)
    mults = []
    for k in range(order):
        beta = equimonodromic_beta(order, k, scenario.nparams)
        mults.append(twisted_cohomology(scenario, beta, bound)[m])
    return MonodromyPolynomial(order, tuple(mults))


# ---------------------------------------------------------------------------
# Projective local systems and the added-line criterion.


def projective_points(degrees, level: int) -> tuple[TorsionPoint, ...]:
    """Level-N torsion points satisfying ``sum(d_j * beta_j)`` integral; these
    are the rank-one local systems extending to the projective complement."""
    degrees = tuple(int(d) for d in degrees)
    out = []
    for point in torsion_grid(level, len(degrees)):
        total = sum((d * b for d, b in zip(degrees, point.beta)), start=Fraction(0))
        if total.denominator == 1:
            out.append(point)
    return tuple(out)


def epsilon_line(points, point: TorsionPoint) -> int:
    """The correction term when adding a line to a plane curve arrangement.

    ``points`` lists, for each intersection point of the arrangement with the
    line, the vector of intersection multiplicities of the components there.
    Returns 0 iff some intersection point has a nontrivial monodromy product,
    else 1; the twisted first Betti number of the affine complement equals
    the projective one plus this value.
    """
    for mults in points:
        if len(mults) != point.nvars:
            raise DimensionError("multiplicity vector length must match the point")
        total = sum(
            (int(k) * b for k, b in zip(mults, point.beta)), start=Fraction(0)
        )
        if total.denominator != 1:
            return 0
    return 1


# ---------------------------------------------------------------------------
# Scenario files.


def scenario_from_dict(data: dict, path: str = "") -> Scenario:
    for key in ("name", "components", "degrees", "algebra", "residue_system", "omega_map"):
        if key not in data:
            raise SchemaError(f"{path}/{key}", "missing required field")
    name = data["name"]
    if not isinstance(name, str) or not name:
        raise SchemaError(f"{path}/name", "must be a non-empty string")
    s = data["components"]
    if not (isinstance(s, int) and s >= 1):
        raise SchemaError(f"{path}/components", "must be a positive integer")
    degrees = data["degrees"]
    if (
        not isinstance(degrees, list)
        or len(degrees) != s
        or not all(isinstance(d, int) and d >= 1 for d in degrees)
    ):
        raise SchemaError(
            f"{path}/degrees", f"must be a list of {s} positive integers"
        )
    algebra = algebra_from_dict(data["algebra"], f"{path}/algebra")
    system = residue_system_from_dict(
        data["residue_system"], f"{path}/residue_system"
    )
    raw_map = data["omega_map"]
    dim1 = algebra.dim(1)
    if not isinstance(raw_map, list) or len(raw_map) != system.nparams:
        raise SchemaError(
            f"{path}/omega_map", f"must have {system.nparams} rows"
        )
    omega_map = []
    for i, raw_row in enumerate(raw_map):
        if not isinstance(raw_row, list) or len(raw_row) != dim1:
            raise SchemaError(
                f"{path}/omega_map/{i}", f"must have {dim1} entries"
            )
        try:
            omega_map.append(tuple(parse_rational(x) for x in raw_row))
        except ValueError as exc:
            raise SchemaError(f"{path}/omega_map/{i}", str(exc)) from exc
    milnor = data.get("milnor", {})
    if not isinstance(milnor, dict):
        raise SchemaError(f"{path}/milnor", "must be an object")
    include_infinity = milnor.get("include_infinity", True)
    if not isinstance(include_infinity, bool):
        raise SchemaError(f"{path}/milnor/include_infinity", "must be a boolean")
    raw_points = data.get("intersection_points")
    intersection_points = None
    if raw_points is not None:
        if not isinstance(raw_points, list):
            raise SchemaError(f"{path}/intersection_points", "must be a list")
        cleaned = []
        for k, vec in enumerate(raw_points):
            if (
                not isinstance(vec, list)
                or len(vec) != s
                or not all(isinstance(x, int) and x >= 0 for x in vec)
            ):
                raise SchemaError(
                    f"{path}/intersection_points/{k}",
                    f"must be a list of {s} non-negative integers",
                )
            cleaned.append(tuple(vec))
        intersection_points = tuple(cleaned)
    max_shift = data.get("max_shift")
    if max_shift is not None and not (isinstance(max_shift, int) and max_shift >= 0):
        raise SchemaError(f"{path}/max_shift", "must be a non-negative integer")

    # Residue rows of an affine arrangement with one free parameter per
    # component must contain the unit rows and the infinity row -degrees.
    if system.nparams == s:
        component_rows = [tuple(r.coeffs) for r in system.rows if r.is_component]
        for j in range(s):
            unit = tuple(1 if i == j else 0 for i in range(s))
            if unit not in component_rows:
                raise SchemaError(
                    f"{path}/residue_system/rows",
                    f"missing component unit row for parameter {j + 1}",
                )
        infinity = tuple(-d for d in degrees)
        if infinity not in component_rows:
            raise SchemaError(
                f"{path}/residue_system/rows",
                "missing the infinity component row (-d_1, ..., -d_s)",
            )

    return Scenario(
        name=name,
        components=s,
        degrees=tuple(degrees),
        algebra=algebra,
        residue_system=system,
        omega_map=tuple(omega_map),
        include_infinity_in_milnor=include_infinity,
        intersection_points=intersection_points,
        max_shift=max_shift,
    )


def scenario_to_dict(scenario: Scenario) -> dict:
    data = {
        "name": scenario.name,
        "components": scenario.components,
        "degrees": list(scenario.degrees),
        "algebra": algebra_to_dict(scenario.algebra),
        "residue_system": residue_system_to_dict(scenario.residue_system),
        "omega_map": [
            [format_rational(x) for x in row] for row in scenario.omega_map
        ],
        "milnor": {"include_infinity": scenario.include_infinity_in_milnor},
    }
    if scenario.intersection_points is not None:
        data["intersection_points"] = [list(v) for v in scenario.intersection_points]
    if scenario.max_shift is not None:
        data["max_shift"] = scenario.max_shift
    return data


def load_scenario(path: str, validate: bool = True) -> Scenario:
    """Load and schema-check a scenario file; optionally validate the algebra."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError("", f"invalid JSON: {exc}") from exc
    scenario = scenario_from_dict(data)
    if validate:
        ensure_valid(scenario.algebra)
    return scenario


def untwisted_betti(scenario: Scenario) -> tuple[int, ...]:
    return betti_vector(scenario.algebra)
