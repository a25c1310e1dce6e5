"""Sparse polynomials in x1, x2, x3 with exact rational coefficients.

Besides the ring operations this module knows the bigrading used throughout
the package: ``k`` is the partial degree in (x1, x2) and ``r`` the total
degree.  ``DPRIME = x1^2 + x2^2`` and ``D = DPRIME * x3`` are the two
distinguished polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple

Exponent = tuple  # (i1, i2, i3)


class Bigrade(NamedTuple):
    k: int
    r: int

    def __str__(self):
        return f"({self.k},{self.r})"


def exponent_bigrade(e: Exponent) -> Bigrade:
    return Bigrade(e[0] + e[1], e[0] + e[1] + e[2])


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent triples to nonzero Fractions."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c:
                    if len(e) != 3 or any(i < 0 for i in e):
                        raise ValueError(f"bad exponent {e!r}")
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, e: Exponent, c=1) -> "Poly":
        return cls({tuple(e): c})

    @classmethod
    def var(cls, i: int) -> "Poly":
        """The coordinate x_i, i in {1, 2, 3}."""
        e = [0, 0, 0]
        e[i - 1] = 1
        return cls({tuple(e): 1})

    @staticmethod
    def _coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        return NotImplemented

    # ring operations -----------------------------------------------------

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, 0) + c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return Poly(res)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Poly({e: c * other for e, c in self.terms.items()})
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        res: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                res[e] = res.get(e, 0) + c1 * c2
        return Poly(res)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: Exponent) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    # calculus ---------------------------------------------------------------

    def diff(self, i: int) -> "Poly":
        """Partial derivative with respect to x_i (i in {1, 2, 3})."""
        j = i - 1
        res = {}
        for e, c in self.terms.items():
            if e[j]:
                e2 = list(e)
                e2[j] -= 1
                res[tuple(e2)] = c * e[j]
        return Poly(res)

    # grading ---------------------------------------------------------------

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def bigrades(self) -> set[Bigrade]:
        return {exponent_bigrade(e) for e in self.terms}

    def bigrade(self) -> Bigrade | None:
        """The common bigrade of all terms, or None for zero / inhomogeneous input."""
        g = self.bigrades()
        return next(iter(g)) if len(g) == 1 else None

    def is_bigrade_homogeneous(self) -> bool:
        return len(self.bigrades()) <= 1

    # division ---------------------------------------------------------------

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Multivariate division by a single polynomial, lex order x1 > x2 > x3.

        For one divisor the remainder vanishes exactly when ``divisor`` divides
        ``self``.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = max(divisor.terms)
        lc = divisor.terms[lead]
        rest = dict(self.terms)
        quot: dict = {}
        rem: dict = {}
        while rest:
            e = max(rest)
            c = rest[e]
            if all(a >= b for a, b in zip(e, lead)):
                t = (e[0] - lead[0], e[1] - lead[1], e[2] - lead[2])
                f = c / lc
                quot[t] = quot.get(t, 0) + f
                for e2, c2 in divisor.terms.items():
                    e3 = (t[0] + e2[0], t[1] + e2[1], t[2] + e2[2])
                    s = rest.get(e3, 0) - f * c2
                    if s:
                        rest[e3] = s
                    else:
                        rest.pop(e3, None)
            else:
                rem[e] = c
                del rest[e]
        return Poly(quot), Poly(rem)

    def exact_div(self, divisor: "Poly") -> "Poly | None":
        q, r = self.divmod(divisor)
        return q if r.is_zero() else None

    # substitution -----------------------------------------------------------

    def substitute_linear(self, m) -> "Poly":
        """Replace x_i by sum_j m[i][j] x_j (``m`` is any 3x3 indexable)."""
        forms = [Poly({(1, 0, 0): m[i][0], (0, 1, 0): m[i][1], (0, 0, 1): m[i][2]})
                 for i in range(3)]
        out = ZERO
        for e, c in self.terms.items():
            out = out + (forms[0] ** e[0]) * (forms[1] ** e[1]) * (forms[2] ** e[2]) * c
        return out

    def evaluate(self, point) -> Fraction:
        s = Fraction(0)
        for e, c in self.terms.items():
            s += c * Fraction(point[0]) ** e[0] * Fraction(point[1]) ** e[1] * Fraction(point[2]) ** e[2]
        return s

    # rendering --------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda ec: (-sum(ec[0]), tuple(-i for i in ec[0])))

    def __str__(self):
        return render_terms(self.sorted_terms(), lambda e: monomial_str(e))

    def __repr__(self):
        return f"Poly({self})"


def monomial_str(e: Exponent) -> str:
    parts = []
    for i, n in enumerate(e, start=1):
        if n == 1:
            parts.append(f"x{i}")
        elif n > 1:
            parts.append(f"x{i}^{n}")
    return "*".join(parts)


def render_terms(terms, atom) -> str:
    """Join (key, coefficient) pairs as ``c*atom + ...`` with num/den coefficients."""
    if not terms:
        return "0"
    out = []
    for idx, (key, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = atom(key)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if idx == 0:
            out.append(text if sign == "+" else f"-{text}")
        else:
            out.append(f" {sign} {text}")
    return "".join(out)


ZERO = Poly()
ONE = Poly.const(1)
X1, X2, X3 = Poly.var(1), Poly.var(2), Poly.var(3)
DPRIME = X1 * X1 + X2 * X2
D = DPRIME * X3


def bigrade_split(p: Poly) -> dict[Bigrade, Poly]:
    """Split ``p`` into bigrade-homogeneous parts."""
    parts: dict = {}
    for e, c in p.terms.items():
        parts.setdefault(exponent_bigrade(e), {})[e] = c
    return {g: Poly(t) for g, t in sorted(parts.items())}


def _require_homogeneous(p: Poly) -> None:
    if not p.is_bigrade_homogeneous():
        raise ValueError(f"polynomial is not bigrade-homogeneous: {p}")


def div_by_dprime(p: Poly) -> Poly | None:
    """``q`` with ``p == DPRIME * q``, or None when x1^2 + x2^2 does not divide ``p``."""
    _require_homogeneous(p)
    return p.exact_div(DPRIME)


def div_by_d(p: Poly) -> Poly | None:
    """``q`` with ``p == D * q``, or None."""
    _require_homogeneous(p)
    return p.exact_div(D)


def dprime_criterion(p: Poly) -> bool:
    """Alternating-sum test for divisibility by x1^2 + x2^2.

    On every x3-stratum the (x1, x2)-part sum a_l x1^l x2^(k-l) is divisible by
    x1^2 + x2^2 iff a_0 - a_2 + a_4 - ... = 0 and a_1 - a_3 + a_5 - ... = 0.
    Used as an independent cross-check of :func:`div_by_dprime`.
    """
    strata: dict = {}
    for (i1, i2, i3), c in p.terms.items():
        strata.setdefault((i1 + i2, i3), {})[i1] = c
    for (k, _), coeffs in strata.items():
        if k == 0:
            return False
        for parity in (0, 1):
            s = sum(((-1) ** (l // 2)) * coeffs.get(l, 0) for l in range(parity, k + 1, 2))
            if s:
                return False
    return True


def apply_linear_field(a, p: Poly) -> Poly:
    """Apply the derivation sum_ij a[i][j] x_i d/dx_j to ``p``."""
    out = ZERO
    for i in range(3):
        for j in range(3):
            c = a[i][j]
            if c:
                out = out + Poly.var(i + 1) * p.diff(j + 1) * c
    return out


# Q_{kr} = P_{kr} / D, canonical basis x1^l x2^(k-l) x3^(r-k) / D, l = 0..k.

def q_basis(grade) -> list[Exponent]:
    k, r = grade
    if not 0 <= k <= r:
        return []
    return [(l, k - l, r - k) for l in range(k + 1)]


def q_coords(p: Poly, grade) -> tuple:
    """Coordinates of a numerator in the canonical basis of P_{kr}."""
    basis = q_basis(grade)
    index = {e: i for i, e in enumerate(basis)}
    v = [Fraction(0)] * len(basis)
    for e, c in p.terms.items():
        if e not in index:
            raise ValueError(f"term {monomial_str(e)} is not of bigrade {tuple(grade)}")
        v[index[e]] = c
    return tuple(v)


def q_from_coords(coords, grade) -> Poly:
    return Poly({e: c for e, c in zip(q_basis(grade), coords)})


@dataclass(frozen=True)
class QElem:
    """An element numerator / D of Q_{kr}; the numerator has bigrade ``grade`` or is zero."""

    grade: Bigrade
    numerator: Poly

    def __post_init__(self):
        object.__setattr__(self, "grade", Bigrade(*self.grade))
        g = self.numerator.bigrade()
        if not self.numerator.is_zero() and g != self.grade:
            raise ValueError(f"numerator {self.numerator} is not of bigrade {self.grade}")

    def coords(self) -> tuple:
        return q_coords(self.numerator, self.grade)

    @classmethod
    def from_coords(cls, coords, grade) -> "QElem":
        return cls(Bigrade(*grade), q_from_coords(coords, grade))

    def __str__(self):
        return f"({self.numerator})/D"
