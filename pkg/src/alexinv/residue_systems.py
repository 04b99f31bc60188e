"""Residue data of an embedded resolution as integer linear forms.

Each divisor (component or exceptional) contributes one row of integer
coefficients; its logarithmic residue at a parameter vector ``alpha`` is the
dot product of the row with ``alpha``.  A choice of residues is admissible
when no residue is a strictly positive integer.

``admissible_search`` looks for an admissible representative of a residue
class vector ``beta`` by trying integer shifts inside a box, in a fixed
deterministic order (total absolute shift first, then lexicographic), so that
searches are reproducible.  Failure inside the box is reported as absence,
never as a certificate of non-admissibility.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DimensionError, SchemaError

ResidueChoice = tuple  # tuple[Fraction, ...] of length nparams


@dataclass(frozen=True)
class ResidueRow:
    label: str
    coeffs: tuple
    is_component: bool

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))


@dataclass(frozen=True)
class ResidueSystem:
    nparams: int
    rows: tuple

    def __post_init__(self):
        for row in self.rows:
            if len(row.coeffs) != self.nparams:
                raise DimensionError(
                    f"row {row.label!r} has {len(row.coeffs)} coefficients, "
                    f"expected {self.nparams}"
                )

    def labels(self) -> tuple[str, ...]:
        return tuple(row.label for row in self.rows)


def residues(system: ResidueSystem, alpha) -> list[tuple[str, Fraction]]:
    """All residues, labeled, in row order."""
    alpha = tuple(Fraction(a) for a in alpha)
    if len(alpha) != system.nparams:
        raise DimensionError(
            f"alpha has length {len(alpha)}, expected {system.nparams}"
        )
    out = []
    for row in system.rows:
        value = sum(
            (c * a for c, a in zip(row.coeffs, alpha)), start=Fraction(0)
        )
        out.append((row.label, value))
    return out


def is_admissible(system: ResidueSystem, alpha) -> bool:
    """True iff no residue is a strictly positive integer."""
    for _, value in residues(system, alpha):
        if value.denominator == 1 and value > 0:
            return False
    return True


def shift_vectors(nparams: int, bound: int) -> list[tuple[int, ...]]:
    """Integer shift vectors with entries in [-bound, bound], ordered by total
    absolute shift and then lexicographically."""
    if bound < 0:
        raise ValueError("search bound must be >= 0")
    grid = product(range(-bound, bound + 1), repeat=nparams)
    return sorted(grid, key=lambda k: (sum(abs(x) for x in k), k))


def admissible_search(system: ResidueSystem, beta, bound: int = 3):
    """First admissible ``alpha`` congruent to ``beta`` mod 1 inside the shift
    box, or None.  Absence does not certify non-admissibility."""
    beta = tuple(Fraction(b) for b in beta)
    if len(beta) != system.nparams:
        raise DimensionError(
            f"beta has length {len(beta)}, expected {system.nparams}"
        )
    for shift in shift_vectors(system.nparams, bound):
        alpha = tuple(b + k for b, k in zip(beta, shift))
        if is_admissible(system, alpha):
            return alpha
    return None


def equimonodromic_beta(order: int, k: int, nparams: int) -> tuple[Fraction, ...]:
    """Residue classes of the local system whose component monodromies all
    equal ``exp(-2*pi*i*k/order)``."""
    if not 0 <= k < order:
        raise ValueError(f"k must lie in [0, {order})")
    return (Fraction(k, order),) * nparams


# ---------------------------------------------------------------------------
# JSON schema.


def residue_system_from_dict(data: dict, path: str = "/residue_system") -> ResidueSystem:
    for key in ("nparams", "rows"):
        if key not in data:
            raise SchemaError(f"{path}/{key}", "missing required field")
    nparams = data["nparams"]
    if not (isinstance(nparams, int) and nparams >= 1):
        raise SchemaError(f"{path}/nparams", "must be a positive integer")
    rows = []
    for k, raw in enumerate(data["rows"]):
        here = f"{path}/rows/{k}"
        if not isinstance(raw, dict):
            raise SchemaError(here, "row must be an object")
        label = raw.get("label")
        if not isinstance(label, str) or not label:
            raise SchemaError(f"{here}/label", "must be a non-empty string")
        coeffs = raw.get("coeffs")
        if (
            not isinstance(coeffs, list)
            or len(coeffs) != nparams
            or not all(isinstance(c, int) for c in coeffs)
        ):
            raise SchemaError(
                f"{here}/coeffs", f"must be a list of {nparams} integers"
            )
        component = raw.get("component", False)
        if not isinstance(component, bool):
            raise SchemaError(f"{here}/component", "must be a boolean")
        rows.append(ResidueRow(label, tuple(coeffs), component))
    return ResidueSystem(nparams, tuple(rows))


def residue_system_to_dict(system: ResidueSystem) -> dict:
    return {
        "nparams": system.nparams,
        "rows": [
            {
                "label": row.label,
                "coeffs": list(row.coeffs),
                "component": row.is_component,
            }
            for row in system.rows
        ],
    }


def load_residue_system(path: str) -> ResidueSystem:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError("", f"invalid JSON: {exc}") from exc
    return residue_system_from_dict(data, "")
