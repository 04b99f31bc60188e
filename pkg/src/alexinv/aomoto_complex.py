"""Finite graded-commutative cohomology algebras and the wedge differential.

An algebra is described by an ordered basis in each degree (degree 0 is
spanned by the unit element) and by structure constants for wedging a
degree-1 basis element with any other basis element.  Wedging with the unit
is scalar multiplication and is built in; omitted products are zero.

The differential of the complex attached to a one-form ``w`` in degree one is
``v -> w ^ v``; its cohomology dimensions are computed by exact rank
computations over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    AlgebraInvalidError,
    DimensionError,
    InconsistentDifferentialError,
    SchemaError,
)
from .exact_kernel import (
    ExactMatrix,
    format_rational,
    is_zero_matrix,
    mat_mul,
    parse_rational,
    rank,
)

ProductTable = dict  # (left label, right label) -> {target label: Fraction}


@dataclass
class GradedAlgebra:
    """Graded algebra with explicit structure constants.

    ``basis[p]`` is the ordered label tuple of degree ``p``; ``products``
    maps a (degree-1 label, any label) pair to the target coefficient vector,
    stored sparsely by target label.  Missing mirror entries of degree-1 by
    degree-1 products are filled in with the antisymmetric value; explicitly
    supplied entries are kept verbatim so that validation can catch
    inconsistent input.
    """

    top_degree: int
    basis: tuple
    products: ProductTable
    _where: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.basis = tuple(tuple(labels) for labels in self.basis)
        if len(self.basis) != self.top_degree + 1:
            raise DimensionError("need one basis tuple per degree 0..top_degree")
        where = {}
        for p, labels in enumerate(self.basis):
            for i, label in enumerate(labels):
                if label in where:
                    raise ValueError(f"duplicate basis label {label!r}")
                where[label] = (p, i)
        self._where = where
        normalized = {}
        for (left, right), vec in self.products.items():
            for label in (left, right):
                if label not in where:
                    raise ValueError(f"product references unknown label {label!r}")
            vec = {k: Fraction(v) for k, v in vec.items() if Fraction(v)}
            for target in vec:
                if target not in where:
                    raise ValueError(f"product targets unknown label {target!r}")
            normalized[(left, right)] = vec
        # Fill antisymmetric mirrors for degree-1 pairs that were not given.
        ones = self.basis[1] if self.top_degree >= 1 else ()
        for a in ones:
            for b in ones:
                if (a, b) in normalized and (b, a) not in normalized:
                    normalized[(b, a)] = {
                        k: -v for k, v in normalized[(a, b)].items()
                    }
        self.products = normalized

    def dim(self, p: int) -> int:
        if 0 <= p <= self.top_degree:
            return len(self.basis[p])
        return 0

    def degree_of(self, label: str) -> int:
        return self._where[label][0]

    def index_of(self, label: str) -> int:
        return self._where[label][1]

    def wedge_pair(self, one_label: str, other_label: str) -> dict:
        """Structure vector of (degree-1 element) ^ (any basis element)."""
        if self.degree_of(other_label) == 0:
            return {one_label: Fraction(1)}
        return self.products.get((one_label, other_label), {})


@dataclass(frozen=True)
class OneForm:
    """A degree-1 element, as coefficients over the degree-1 basis."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def scaled(self, c) -> OneForm:
        return OneForm(tuple(Fraction(c) * x for x in self.coeffs))


def validate_algebra(algebra: GradedAlgebra) -> list[str]:
    """Check graded-commutativity invariants; returns violation strings.

    Checks, exhaustively over basis elements: antisymmetry of degree-1 by
    degree-1 products, vanishing squares of degree-1 elements, and
    ``u ^ (u ^ v) = 0`` for every degree-1 ``u`` and basis element ``v``.
    """
    violations = []
    if algebra.top_degree < 1:
        return violations
    ones = algebra.basis[1]
    for a in ones:
        square = algebra.products.get((a, a), {})
        if square:
            violations.append(f"square is nonzero: ({a}, {a}, degree 1)")
    for i, a in enumerate(ones):
        for b in ones[i + 1 :]:
            ab = algebra.products.get((a, b), {})
            ba = algebra.products.get((b, a), {})
            mirror = {k: -v for k, v in ab.items()}
            if ba != mirror:
                violations.append(f"antisymmetry fails: ({a}, {b}, degree 1)")
    for u in ones:
        for p in range(0, algebra.top_degree - 1):
            for v in algebra.basis[p]:
                first = algebra.wedge_pair(u, v)
                acc: dict = {}
                for mid, c in first.items():
                    for target, d in algebra.wedge_pair(u, mid).items():
                        acc[target] = acc.get(target, Fraction(0)) + c * d
                if any(acc.values()):
                    violations.append(
                        f"u^(u^v) is nonzero: ({u}, {v}, degree {p})"
                    )
    return violations


def wedge(algebra: GradedAlgebra, omega: OneForm, p: int, vector) -> list:
    """Image of a degree-``p`` coefficient vector under wedging with omega."""
    if not 0 <= p < algebra.top_degree:
        raise DimensionError(f"degree {p} out of range [0, {algebra.top_degree})")
    if len(omega.coeffs) != algebra.dim(1):
        raise DimensionError("one-form length does not match the degree-1 basis")
    vector = list(vector)
    if len(vector) != algebra.dim(p):
        raise DimensionError(f"vector length does not match the degree-{p} basis")
    target = algebra.basis[p + 1]
    index = {label: i for i, label in enumerate(target)}
    acc = [Fraction(0)] * len(target)
    for i, u in enumerate(algebra.basis[1]):
        a = omega.coeffs[i]
        if not a:
            continue
        for j, v in enumerate(algebra.basis[p]):
            c = Fraction(vector[j])
            if not c:
                continue
            for label, s in algebra.wedge_pair(u, v).items():
                acc[index[label]] += a * c * s
    return acc


def differential_matrix(algebra: GradedAlgebra, omega: OneForm, p: int) -> ExactMatrix:
    """Matrix of wedging with omega from degree p to degree p+1; columns are
    the images of the degree-p basis elements."""
    cols = []
    for j in range(algebra.dim(p)):
        e = [Fraction(0)] * algebra.dim(p)
        e[j] = Fraction(1)
        cols.append(wedge(algebra, omega, p, e))
    nrows = algebra.dim(p + 1)
    ncols = algebra.dim(p)
    entries = tuple(cols[j][i] for i in range(nrows) for j in range(ncols))
    return ExactMatrix(nrows, ncols, entries)


def cohomology_dims(algebra: GradedAlgebra, omega: OneForm) -> tuple[int, ...]:
    """Dimensions ``b_0 .. b_top`` of the complex ``(A, omega ^ .)``.

    Verifies that consecutive differentials compose to zero before trusting
    any rank computation.
    """
    mats = [
        differential_matrix(algebra, omega, p) for p in range(algebra.top_degree)
    ]
    for p in range(algebra.top_degree - 1):
        if not is_zero_matrix(mat_mul(mats[p + 1], mats[p])):
            raise InconsistentDifferentialError(
                f"wedging twice with the one-form is nonzero from degree {p}"
            )
    ranks = [rank(m) for m in mats] + [0]
    dims = []
    for p in range(algebra.top_degree + 1):
        below = ranks[p - 1] if p > 0 else 0
        dims.append(algebra.dim(p) - ranks[p] - below)
    return tuple(dims)


def betti_vector(algebra: GradedAlgebra) -> tuple[int, ...]:
    return tuple(algebra.dim(p) for p in range(algebra.top_degree + 1))


# ---------------------------------------------------------------------------
# Orlik-Solomon algebras of affine line arrangements.


def os_algebra_lines(nlines: int, points) -> GradedAlgebra:
    """Cohomology algebra of an affine line arrangement complement.

    ``points`` lists the multiple and double points as subsets of line
    indices ``1..nlines``; every pair of lines must lie in exactly one point.
    Degree 2 has one basis element per point ``p`` and pair ``(j1, jb)`` with
    ``j1`` the smallest line through ``p``; the other wedges of lines through
    ``p`` rewrite via ``e_a ^ e_b = e_j1 ^ e_b - e_j1 ^ e_a``.
    """
    if nlines < 1:
        raise ValueError("need at least one line")
    normalized = []
    for k, raw in enumerate(points):
        pt = tuple(sorted(set(int(x) for x in raw)))
        if len(pt) < 2:
            raise ValueError(f"point {k} has fewer than two lines")
        if pt[0] < 1 or pt[-1] > nlines:
            raise ValueError(f"point {k} references a line outside 1..{nlines}")
        normalized.append(pt)
    seen: dict = {}
    for k, pt in enumerate(normalized):
        for i, a in enumerate(pt):
            for b in pt[i + 1 :]:
                if (a, b) in seen:
                    raise ValueError(f"line pair ({a}, {b}) lies in two points")
                seen[(a, b)] = k
    for a in range(1, nlines + 1):
        for b in range(a + 1, nlines + 1):
            if (a, b) not in seen:
                raise ValueError(f"line pair ({a}, {b}) lies in no point")

    def pair_label(a: int, b: int) -> str:
        return f"e{a}^e{b}"

    deg1 = tuple(f"e{j}" for j in range(1, nlines + 1))
    deg2 = []
    products: ProductTable = {}
    for pt in normalized:
        j1 = pt[0]
        for b in pt[1:]:
            deg2.append(pair_label(j1, b))
        for i, a in enumerate(pt):
            for b in pt[i + 1 :]:
                if a == j1:
                    vec = {pair_label(j1, b): Fraction(1)}
                else:
                    vec = {
                        pair_label(j1, b): Fraction(1),
                        pair_label(j1, a): Fraction(-1),
                    }
                products[(f"e{a}", f"e{b}")] = vec
    return GradedAlgebra(2, (("1",), deg1, tuple(deg2)), products)


# ---------------------------------------------------------------------------
# JSON schema.


def algebra_from_dict(data: dict, path: str = "/algebra") -> GradedAlgebra:
    for key in ("top_degree", "basis"):
        if key not in data:
            raise SchemaError(f"{path}/{key}", "missing required field")
    top = data["top_degree"]
    if not (isinstance(top, int) and top >= 0):
        raise SchemaError(f"{path}/top_degree", "must be a non-negative integer")
    raw_basis = data["basis"]
    if not isinstance(raw_basis, dict):
        raise SchemaError(f"{path}/basis", "must map degree strings to label lists")
    basis = []
    for p in range(top + 1):
        key = str(p)
        if key not in raw_basis:
            raise SchemaError(f"{path}/basis/{key}", "missing degree")
        labels = raw_basis[key]
        if not isinstance(labels, list) or not all(
            isinstance(x, str) for x in labels
        ):
            raise SchemaError(f"{path}/basis/{key}", "must be a list of strings")
        basis.append(tuple(labels))
    if len(basis[0]) != 1:
        raise SchemaError(f"{path}/basis/0", "degree 0 must have exactly one element")
    known = {label for labels in basis for label in labels}
    if len(known) != sum(len(labels) for labels in basis):
        raise SchemaError(f"{path}/basis", "duplicate basis label")

    degree: dict = {}
    for p, labels in enumerate(basis):
        for label in labels:
            degree[label] = p

    products: ProductTable = {}
    for k, item in enumerate(data.get("products", [])):
        here = f"{path}/products/{k}"
        for key in ("left", "right", "value"):
            if key not in item:
                raise SchemaError(f"{here}/{key}", "missing required field")
        left, right = item["left"], item["right"]
        for side, label in (("left", left), ("right", right)):
            if label not in degree:
                raise SchemaError(f"{here}/{side}", f"unknown basis label {label!r}")
        vec = {}
        for t, entry in enumerate(item["value"]):
            target = entry.get("basis")
            if target not in degree:
                raise SchemaError(
                    f"{here}/value/{t}/basis", f"unknown basis label {target!r}"
                )
            try:
                coeff = parse_rational(entry.get("coeff", "1"))
            except ValueError as exc:
                raise SchemaError(f"{here}/value/{t}/coeff", str(exc)) from exc
            if degree[target] != degree[left] + degree[right]:
                raise SchemaError(
                    f"{here}/value/{t}/basis",
                    "target degree must equal the sum of factor degrees",
                )
            if coeff:
                vec[target] = vec.get(target, Fraction(0)) + coeff
        if degree[left] == 1:
            key = (left, right)
        elif degree[right] == 1:
            # Store under the degree-1-first convention with the graded sign.
            sign = -1 if degree[left] % 2 else 1
            key = (right, left)
            vec = {t: sign * c for t, c in vec.items()}
        else:
            raise SchemaError(f"{here}", "one factor must have degree 1")
        if key in products:
            raise SchemaError(f"{here}", f"duplicate product for {key}")
        products[key] = vec
    try:
        return GradedAlgebra(top, tuple(basis), products)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from exc


def algebra_to_dict(algebra: GradedAlgebra) -> dict:
    products = []
    for (left, right), vec in sorted(algebra.products.items()):
        if not vec:
            continue
        products.append(
            {
                "left": left,
                "right": right,
                "value": [
                    {"basis": t, "coeff": format_rational(c)}
                    for t, c in sorted(vec.items())
                ],
            }
        )
    return {
        "top_degree": algebra.top_degree,
        "basis": {
            str(p): list(labels) for p, labels in enumerate(algebra.basis)
        },
        "products": products,
    }


def ensure_valid(algebra: GradedAlgebra) -> None:
    violations = validate_algebra(algebra)
    if violations:
        raise AlgebraInvalidError(violations)
