"""Finitely presented modules over the Laurent polynomial ring.

A module is given by an n x m presentation matrix (rows = generators,
columns = relations).  From it we compute elementary ideals, characteristic
polynomials (gcds of minors), supports and Fitting-stratified variety scans
over torsion points of a chosen level.

Conventions for the i-th elementary ideal of an n-generator presentation:
the full ring when ``i >= n``, the zero ideal when ``n - i > m``, and
otherwise the ideal of all ``(n-i) x (n-i)`` minors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .errors import DimensionError, SchemaError
from .laurent_ring import (
    LaurentPoly,
    TorsionPoint,
    evaluate_at_torsion,
    format_poly,
    gcd,
    parse_poly,
    torsion_grid,
)


@dataclass(frozen=True)
class Presentation:
    """Presentation matrix of a module: ``generators`` rows, ``relations`` columns."""

    nvars: int
    generators: int
    relations: int
    matrix: tuple  # tuple of generator rows, each a tuple of LaurentPoly

    def __post_init__(self):
        if len(self.matrix) != self.generators:
            raise DimensionError("matrix must have one row per generator")
        for row in self.matrix:
            if len(row) != self.relations:
                raise DimensionError("matrix must have one column per relation")
            for entry in row:
                if entry.nvars != self.nvars:
                    raise DimensionError("matrix entry has wrong variable count")

    @classmethod
    def from_rows(cls, nvars: int, rows) -> Presentation:
        rows = tuple(tuple(r) for r in rows)
        m = len(rows[0]) if rows else 0
        return cls(nvars, len(rows), m, rows)

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.matrix[i][j]


@dataclass(frozen=True)
class IdealGenerators:
    """Generators of an ideal; empty means the zero ideal, a unit generator
    means the full ring."""

    gens: tuple

    @property
    def is_zero_ideal(self) -> bool:
        return not self.gens

    @property
    def is_full_ring(self) -> bool:
        return any(g.is_unit for g in self.gens)


def _poly_det(rows) -> LaurentPoly:
    """Cofactor-expansion determinant of a square array of polynomials."""
    k = len(rows)
    if k == 0:
        raise ValueError("empty minor")
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = LaurentPoly.zero(rows[0][0].nvars)
    for j in range(k):
        if rows[0][j].is_zero:
            continue
        sub = [[row[c] for c in range(k) if c != j] for row in rows[1:]]
        cofactor = rows[0][j] * _poly_det(sub)
        total = total - cofactor if j % 2 else total + cofactor
    return total


def elementary_ideal(pres: Presentation, i: int) -> IdealGenerators:
    """The i-th elementary ideal: all ``(n-i) x (n-i)`` minors, with the
    conventions for ``i >= n`` (full ring) and ``n - i > m`` (zero ideal)."""
    n, m = pres.generators, pres.relations
    if i >= n:
        return IdealGenerators((LaurentPoly.one(pres.nvars),))
    if n - i > m:
        return IdealGenerators(())
    k = n - i
    gens = []
    for rsel in combinations(range(n), k):
        for csel in combinations(range(m), k):
            minor = _poly_det([[pres.entry(r, c) for c in csel] for r in rsel])
            if not minor.is_zero:
                gens.append(minor)
    return IdealGenerators(tuple(gens))


def char_poly(pres: Presentation, i: int) -> LaurentPoly:
    """Normalized gcd of the i-th elementary ideal (0 for the zero ideal,
    1 for the full ring)."""
    ideal = elementary_ideal(pres, i)
    g = LaurentPoly.zero(pres.nvars)
    for gen in ideal.gens:
        g = gcd(g, gen)
        if g.is_one:
            break
    return g


def direct_sum(p1: Presentation, p2: Presentation) -> Presentation:
    """Block-diagonal presentation of the direct sum."""
    if p1.nvars != p2.nvars:
        raise DimensionError("direct sum of modules over different rings")
    zero = LaurentPoly.zero(p1.nvars)
    rows = []
    for row in p1.matrix:
        rows.append(tuple(row) + (zero,) * p2.relations)
    for row in p2.matrix:
        rows.append((zero,) * p1.relations + tuple(row))
    return Presentation(
        p1.nvars,
        p1.generators + p2.generators,
        p1.relations + p2.relations,
        tuple(rows),
    )


def cyclic_module(gens, nvars: int | None = None) -> Presentation:
    """Presentation of ``R / (gens)`` on one generator; an empty generator
    list gives the free rank-one module (``nvars`` is then required)."""
    gens = tuple(gens)
    if nvars is None:
        if not gens:
            raise ValueError("nvars is required for an empty generator list")
        nvars = gens[0].nvars
    return Presentation(nvars, 1, len(gens), (gens,))


def tensor_cyclic(p1: Presentation, p2: Presentation) -> Presentation:
    """Tensor product of cyclic modules: ``R/I (x) R/J = R/(I + J)``."""
    if p1.generators != 1 or p2.generators != 1:
        raise ValueError("tensor_cyclic needs cyclic presentations")
    if p1.nvars != p2.nvars:
        raise DimensionError("tensor product of modules over different rings")
    return cyclic_module(p1.matrix[0] + p2.matrix[0], p1.nvars)


def in_support(pres: Presentation, point: TorsionPoint) -> bool:
    """True iff every generator of the 0-th elementary ideal vanishes at the
    point (zero ideal: always true; full ring: always false)."""
    if pres.nvars != point.nvars:
        raise DimensionError("point length does not match the module's ring")
    ideal = elementary_ideal(pres, 0)
    return all(evaluate_at_torsion(g, point).is_zero() for g in ideal.gens)


def _vanishing_points(gens, nvars: int, level: int):
    points = []
    for point in torsion_grid(level, nvars):
        if all(evaluate_at_torsion(g, point).is_zero() for g in gens):
            points.append(point)
    return tuple(points)


def support_scan(pres: Presentation, level: int) -> tuple[TorsionPoint, ...]:
    """All level-N torsion points in the support, in lexicographic order."""
    ideal = elementary_ideal(pres, 0)
    return _vanishing_points(ideal.gens, pres.nvars, level)


def fitting_variety_scan(
    pres: Presentation, i: int, level: int
) -> tuple[TorsionPoint, ...]:
    """Torsion points where every generator of the (i-1)-st elementary ideal
    vanishes (the i-th Fitting-stratified characteristic variety)."""
    if i < 1:
        raise ValueError("variety index must be >= 1")
    ideal = elementary_ideal(pres, i - 1)
    if ideal.is_full_ring:
        return tuple()
    return _vanishing_points(ideal.gens, pres.nvars, level)


# ---------------------------------------------------------------------------
# Presentation files.


def presentation_from_dict(data: dict, path: str = "") -> Presentation:
    for key in ("nvars", "generators", "relations", "matrix"):
        if key not in data:
            raise SchemaError(f"{path}/{key}", "missing required field")
    nvars = data["nvars"]
    n, m = data["generators"], data["relations"]
    if not (isinstance(nvars, int) and nvars >= 1):
        raise SchemaError(f"{path}/nvars", "must be a positive integer")
    if not (isinstance(n, int) and n >= 0 and isinstance(m, int) and m >= 0):
        raise SchemaError(f"{path}/generators", "counts must be non-negative integers")
    raw = data["matrix"]
    if not isinstance(raw, list) or len(raw) != n:
        raise SchemaError(f"{path}/matrix", f"expected {n} generator rows")
    rows = []
    for i, raw_row in enumerate(raw):
        if not isinstance(raw_row, list) or len(raw_row) != m:
            raise SchemaError(f"{path}/matrix/{i}", f"expected {m} relation entries")
        row = []
        for j, text in enumerate(raw_row):
            try:
                row.append(parse_poly(str(text), nvars))
            except Exception as exc:
                raise SchemaError(f"{path}/matrix/{i}/{j}", str(exc)) from exc
        rows.append(tuple(row))
    return Presentation(nvars, n, m, tuple(rows))


def presentation_to_dict(pres: Presentation) -> dict:
    return {
        "nvars": pres.nvars,
        "generators": pres.generators,
        "relations": pres.relations,
        "matrix": [[format_poly(e) for e in row] for row in pres.matrix],
    }


def load_presentation(path: str) -> Presentation:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError("", f"invalid JSON: {exc}") from exc
    return presentation_from_dict(data)
