"""Sparse multivariate Laurent polynomials with rational coefficients.

A polynomial in ``s`` variables ``t1 .. ts`` is a mapping from exponent
tuples (length ``s``, negative entries allowed) to nonzero Fractions.  The
zero polynomial has an empty term mapping.

Text grammar (whitespace insignificant)::

    poly   := [sign] term (sign term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    coeff  := INT ['/' INT]
    factor := VAR ['^' ['-'] INT]
    VAR    := 't' DIGITS        (bare 't' is accepted when s = 1)

Unit normalization, gcd and divisibility all work up to multiplication by
units of the Laurent ring (nonzero rationals times monomials); the canonical
representative of a unit class shifts every variable's minimum exponent to 0,
clears denominators to integer content 1, and makes the graded-lex leading
coefficient positive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd as int_gcd, lcm as int_lcm

from .errors import DimensionError, ParseError
from .exact_kernel import CyclotomicNumber, format_rational

Monomial = tuple  # exponent tuple of length nvars


class LaurentPoly:
    """Immutable sparse Laurent polynomial."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise DimensionError(
                    f"exponent tuple {exps} has length {len(exps)}, expected {nvars}"
                )
            coeff = Fraction(coeff)
            if coeff:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(
            self, "terms", {e: c for e, c in clean.items() if c}
        )

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> LaurentPoly:
        return cls(nvars, {})

    @classmethod
    def constant(cls, value, nvars: int) -> LaurentPoly:
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def one(cls, nvars: int) -> LaurentPoly:
        return cls.constant(1, nvars)

    @classmethod
    def var(cls, nvars: int, index: int, power: int = 1) -> LaurentPoly:
        """The monomial ``t{index+1} ** power``."""
        exps = [0] * nvars
        exps[index] = power
        return cls(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def term(cls, nvars: int, coeff, exps) -> LaurentPoly:
        return cls(nvars, {tuple(exps): Fraction(coeff)})

    # -- predicates ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    @property
    def is_one(self) -> bool:
        return self.terms == {(0,) * self.nvars: Fraction(1)}

    @property
    def is_unit(self) -> bool:
        """Units of the Laurent ring are single nonzero terms."""
        return len(self.terms) == 1

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise DimensionError(
                    f"mixing polynomials in {self.nvars} and {other.nvars} variables"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.nvars)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return LaurentPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit:
                raise ValueError("negative power of a non-unit")
            ((e, c),) = self.terms.items()
            inv = LaurentPoly(self.nvars, {tuple(-x for x in e): 1 / c})
            return inv ** (-n)
        result = LaurentPoly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {format_poly(self)!r})"

    # -- structure helpers ---------------------------------------------------

    def min_exponents(self) -> tuple[int, ...]:
        if self.is_zero:
            return (0,) * self.nvars
        return tuple(
            min(e[j] for e in self.terms) for j in range(self.nvars)
        )

    def max_exponents(self) -> tuple[int, ...]:
        if self.is_zero:
            return (0,) * self.nvars
        return tuple(
            max(e[j] for e in self.terms) for j in range(self.nvars)
        )

    def shifted(self, delta) -> LaurentPoly:
        """Multiply by the monomial with exponent vector ``delta``."""
        return LaurentPoly(
            self.nvars,
            {tuple(a + b for a, b in zip(e, delta)): c for e, c in self.terms.items()},
        )


def _grlex_key(exps):
    return (sum(exps), exps)


def _leading(p: LaurentPoly):
    """Graded-lex leading (exponents, coefficient) of a nonzero polynomial."""
    exps = max(p.terms, key=_grlex_key)
    return exps, p.terms[exps]


def _shift_to_ordinary(p: LaurentPoly) -> LaurentPoly:
    mins = p.min_exponents()
    if not any(mins):
        return p
    return p.shifted(tuple(-m for m in mins))


def normalize_unit(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative of the unit class of ``p``.

    Shifts every variable's minimum exponent to 0, scales to primitive
    integer coefficients, and makes the graded-lex leading coefficient
    positive.  Idempotent; maps 0 to 0.
    """
    if p.is_zero:
        return p
    q = _shift_to_ordinary(p)
    den = 1
    for c in q.terms.values():
        den = int_lcm(den, c.denominator)
    num = 0
    for c in q.terms.values():
        num = int_gcd(num, abs(c.numerator * (den // c.denominator)))
    q = q * Fraction(den, num)
    _, lead = _leading(q)
    if lead < 0:
        q = -q
    return q


def _div_exact_ordinary(dividend: LaurentPoly, divisor: LaurentPoly):
    """Quotient of ordinary polynomials, or None when not exactly divisible."""
    if divisor.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    n = dividend.nvars
    lead_e, lead_c = _leading(divisor)
    quot = LaurentPoly.zero(n)
    rem = dividend
    while not rem.is_zero:
        r_e, r_c = _leading(rem)
        diff = tuple(a - b for a, b in zip(r_e, lead_e))
        if any(d < 0 for d in diff):
            return None
        t = LaurentPoly.term(n, r_c / lead_c, diff)
        quot = quot + t
        rem = rem - t * divisor
    return quot


def divides(p: LaurentPoly, q: LaurentPoly) -> bool:
    """True iff ``q = p * r`` for some Laurent polynomial ``r``."""
    if p.nvars != q.nvars:
        raise DimensionError("divisibility between different variable counts")
    if q.is_zero:
        return True
    if p.is_zero:
        return False
    return _div_exact_ordinary(_shift_to_ordinary(q), _shift_to_ordinary(p)) is not None


def divide_exact(p: LaurentPoly, q: LaurentPoly):
    """``p / q`` up to the unit shift applied by normalization, or None.

    The returned quotient satisfies ``q * result = p`` exactly.
    """
    if p.is_zero:
        return LaurentPoly.zero(p.nvars)
    mins_p = p.min_exponents()
    mins_q = q.min_exponents()
    quot = _div_exact_ordinary(_shift_to_ordinary(p), _shift_to_ordinary(q))
    if quot is None:
        return None
    return quot.shifted(tuple(a - b for a, b in zip(mins_p, mins_q)))


# ---------------------------------------------------------------------------
# Multivariate gcd via content / primitive-part recursion.


def _degree_in(p: LaurentPoly, v: int) -> int:
    return max((e[v] for e in p.terms), default=0)


def _univ_coeffs(p: LaurentPoly, v: int) -> dict[int, LaurentPoly]:
    """Coefficients of powers of variable ``v`` (with that exponent zeroed)."""
    buckets: dict[int, dict] = {}
    for e, c in p.terms.items():
        stripped = e[:v] + (0,) + e[v + 1 :]
        buckets.setdefault(e[v], {})[stripped] = c
    return {d: LaurentPoly(p.nvars, t) for d, t in buckets.items()}


def _content(p: LaurentPoly, v: int) -> LaurentPoly:
    g = LaurentPoly.zero(p.nvars)
    for coeff_poly in _univ_coeffs(p, v).values():
        g = _gcd_ordinary(g, coeff_poly)
        if g.is_constant and not g.is_zero:
            return LaurentPoly.one(p.nvars)
    return normalize_unit(g)


def _pseudo_rem(a: LaurentPoly, b: LaurentPoly, v: int) -> LaurentPoly:
    db = _degree_in(b, v)
    coeffs_b = _univ_coeffs(b, v)
    lead_b = coeffs_b[db]
    r = a
    while not r.is_zero:
        dr = _degree_in(r, v)
        if dr < db:
            break
        lead_r = _univ_coeffs(r, v)[dr]
        shift = [0] * a.nvars
        shift[v] = dr - db
        r = lead_b * r - lead_r * b.shifted(tuple(shift))
    return r


def _gcd_ordinary(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.is_constant or b.is_constant:
        return LaurentPoly.one(a.nvars)
    v = max(
        j
        for j in range(a.nvars)
        if _degree_in(a, j) > 0 or _degree_in(b, j) > 0
    )
    ca = _content(a, v)
    cb = _content(b, v)
    c = _gcd_ordinary(ca, cb)
    pa = _div_exact_ordinary(a, ca)
    pb = _div_exact_ordinary(b, cb)
    if _degree_in(pa, v) < _degree_in(pb, v):
        pa, pb = pb, pa
    while not pb.is_zero and _degree_in(pb, v) > 0:
        r = _pseudo_rem(pa, pb, v)
        if not r.is_zero:
            r = normalize_unit(_div_exact_ordinary(r, _content(r, v)))
        pa, pb = pb, r
    if not pb.is_zero:
        # A nonzero remainder of degree 0 in v: the primitive parts are coprime.
        return c
    return c * pa


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Normalized greatest common divisor in the unit-class sense."""
    if p.nvars != q.nvars:
        raise DimensionError("gcd between different variable counts")
    if p.is_zero and q.is_zero:
        return LaurentPoly.zero(p.nvars)
    if p.is_zero:
        return normalize_unit(q)
    if q.is_zero:
        return normalize_unit(p)
    g = _gcd_ordinary(_shift_to_ordinary(p), _shift_to_ordinary(q))
    return normalize_unit(g)


# ---------------------------------------------------------------------------
# Torsion points and evaluation.


@dataclass(frozen=True)
class TorsionPoint:
    """A point of the torus with all coordinates N-th roots of unity.

    ``beta`` holds the residue classes: coordinate ``j`` of the point is
    ``exp(-2*pi*i*beta[j])``, each ``beta[j]`` in ``[0, 1)`` with
    ``level * beta[j]`` an integer.
    """

    level: int
    beta: tuple[Fraction, ...]

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        for b in self.beta:
            if not (0 <= b < 1):
                raise ValueError(f"residue class {b} outside [0, 1)")
            if (b * self.level).denominator != 1:
                raise ValueError(f"residue class {b} has level not dividing {self.level}")

    @classmethod
    def from_numerators(cls, level: int, numerators) -> TorsionPoint:
        return cls(level, tuple(Fraction(n % level, level) for n in numerators))

    @classmethod
    def from_residues(cls, level: int, residues) -> TorsionPoint:
        """Build from arbitrary rationals, reducing each mod 1."""
        beta = tuple(Fraction(r) - (Fraction(r).numerator // Fraction(r).denominator)
                     for r in residues)
        return cls(level, beta)

    @property
    def nvars(self) -> int:
        return len(self.beta)

    def numerators(self) -> tuple[int, ...]:
        return tuple(int(b * self.level) for b in self.beta)

    def negate(self) -> TorsionPoint:
        return TorsionPoint.from_numerators(
            self.level, tuple(-n for n in self.numerators())
        )

    def is_trivial(self) -> bool:
        return not any(self.beta)

    def __str__(self):
        return "(" + ",".join(format_rational(b) for b in self.beta) + ")"


def torsion_grid(level: int, nvars: int):
    """All level-N torsion points, in lexicographic order of numerators."""
    for nums in product(range(level), repeat=nvars):
        yield TorsionPoint.from_numerators(level, nums)


def evaluate_at_torsion(p: LaurentPoly, point: TorsionPoint) -> CyclotomicNumber:
    """Substitute ``tj -> exp(-2*pi*i*beta[j])``, exactly, in Q(zeta_N)."""
    if p.nvars != point.nvars:
        raise DimensionError(
            f"polynomial in {p.nvars} variables evaluated at a point of length {point.nvars}"
        )
    n = point.level
    nums = point.numerators()
    # Accumulate by power of zeta_N, then reduce once.
    powers = [Fraction(0)] * n
    for exps, coeff in p.terms.items():
        k = -sum(e * b for e, b in zip(exps, nums)) % n
        powers[k] += coeff
    return CyclotomicNumber._make(n, powers)


# ---------------------------------------------------------------------------
# Parsing and formatting.

_TOKEN = re.compile(r"(?P<int>\d+)|(?P<var>t\d*)|(?P<op>[*/^+-])|(?P<bad>\S)")


def _tokenize(text: str):
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", m.start())
        tokens.append((m.lastgroup, m.group(), m.start()))
    return tokens


def parse_poly(text: str, nvars: int) -> LaurentPoly:
    """Parse the textual grammar into a polynomial in ``nvars`` variables."""
    tokens = _tokenize(text)
    pos = 0
    n = len(tokens)

    def fail(message, at=None):
        where = tokens[at][2] if at is not None and at < n else len(text)
        raise ParseError(message, where)

    def peek():
        return tokens[pos] if pos < n else (None, None, len(text))

    def var_index(name, at):
        digits = name[1:]
        if not digits:
            if nvars == 1:
                return 0
            fail("bare variable 't' is ambiguous; use t1..t%d" % nvars, at)
        idx = int(digits)
        if not 1 <= idx <= nvars:
            fail(f"unknown variable {name!r} (nvars = {nvars})", at)
        return idx - 1

    def parse_factor():
        nonlocal pos
        kind, value, _ = peek()
        if kind != "var":
            fail("expected a variable factor", pos)
        idx = var_index(value, pos)
        pos += 1
        power = 1
        if peek()[1] == "^":
            pos += 1
            sign = 1
            if peek()[1] == "-":
                sign = -1
                pos += 1
            kind, value, _ = peek()
            if kind != "int":
                fail("expected an integer exponent", pos)
            power = sign * int(value)
            pos += 1
        return idx, power

    def parse_term():
        nonlocal pos
        coeff = Fraction(1)
        exps = [0] * nvars
        kind, value, _ = peek()
        if kind == "int":
            num = int(value)
            pos += 1
            if peek()[1] == "/":
                pos += 1
                kind, value, _ = peek()
                if kind != "int":
                    fail("expected a denominator", pos)
                denom = int(value)
                if denom == 0:
                    fail("zero denominator", pos)
                coeff = Fraction(num, denom)
                pos += 1
            else:
                coeff = Fraction(num)
            if peek()[1] != "*":
                return coeff, tuple(exps)
            pos += 1
        while True:
            idx, power = parse_factor()
            exps[idx] += power
            if peek()[1] != "*":
                break
            pos += 1
        return coeff, tuple(exps)

    if not tokens:
        raise ParseError("empty polynomial text", 0)

    terms: dict = {}
    sign = Fraction(1)
    kind, value, _ = peek()
    if value in ("+", "-"):
        sign = Fraction(-1) if value == "-" else Fraction(1)
        pos += 1
    while True:
        coeff, exps = parse_term()
        terms[exps] = terms.get(exps, Fraction(0)) + sign * coeff
        if pos >= n:
            break
        kind, value, _ = peek()
        if value not in ("+", "-"):
            fail("expected '+' or '-' between terms", pos)
        sign = Fraction(-1) if value == "-" else Fraction(1)
        pos += 1
        if pos >= n:
            fail("dangling sign", pos - 1)
    return LaurentPoly(nvars, terms)


def format_poly(p: LaurentPoly) -> str:
    """Canonical text form; ``parse_poly(format_poly(p), p.nvars) == p``."""
    if p.is_zero:
        return "0"
    parts = []
    for exps in sorted(p.terms, key=_grlex_key, reverse=True):
        coeff = p.terms[exps]
        factors = [
            f"t{j + 1}" + (f"^{e}" if e != 1 else "")
            for j, e in enumerate(exps)
            if e != 0
        ]
        mag = abs(coeff)
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_rational(mag)] + factors)
        if not parts:
            parts.append(body if coeff > 0 else "-" + body)
        else:
            parts.append((" + " if coeff > 0 else " - ") + body)
    return "".join(parts)
