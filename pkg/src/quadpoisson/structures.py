"""Class-2 and class-7 quadratic structures, their parameter regimes and the
closed-form cohomology dimensions they are expected to have.

The expected dimensions are assembled from generator families (Casimir
multiples, the singular x3-series, a few isolated classes).  Each generator
is placed at the bigrade of its Y-frame numerator: a function f times Y_J has
numerator f*D, so it lands at grade(f) + (2, 3); a d-frame generator is placed
with :func:`to_y_frame`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import Matrix, solve
from .multivector import BASIS, MultiVector, NotPoisson, is_poisson
from .poly import DPRIME, X1, X2, X3, Bigrade, Poly
from .yframe import y_wedge

# the gl(3) side of the story lives in rmatrix; re-exported here for convenience
from .rmatrix import j_map, j_wedge, j_wedge3, stabilizer, yang_baxter_check  # noqa: F401

log = logging.getLogger(__name__)

FAMILIES = ("DH2", "DH7", "custom")


class TheoremUnavailable(ValueError):
    """No closed-form result covers these parameters."""


class NotAdmissible(ValueError):
    """The tensor is not a constant combination of Y23, Y31, Y12."""


@dataclass(frozen=True)
class StructureParams:
    family: str
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    custom: MultiVector | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        for name in "abc":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.family == "custom" and self.custom is None:
            raise ValueError("custom family needs a tensor")

    @classmethod
    def dh2(cls, a, b) -> "StructureParams":
        return cls("DH2", a, b)

    @classmethod
    def dh7(cls, a, b, c) -> "StructureParams":
        return cls("DH7", a, b, c)

    @property
    def y_coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        """(alpha, beta, gamma) with tensor = alpha Y23 + beta Y31 + gamma Y12."""
        if self.family == "DH2":
            return 2 * self.b, self.a, self.b
        if self.family == "DH7":
            return 2 * self.b + self.c, self.a, self.b
        return y_decomposition(self.custom)

    def describe(self) -> str:
        if self.family == "DH2":
            return f"DH2(a={self.a}, b={self.b})"
        if self.family == "DH7":
            return f"DH7(a={self.a}, b={self.b}, c={self.c})"
        return f"custom({self.custom})"


def build_structure(p: StructureParams) -> MultiVector:
    """The tensor in the d-frame, written out from the normal forms directly."""
    if p.family == "custom":
        if not is_poisson(p.custom):
            raise NotPoisson(p.custom)
        return p.custom
    a, b = p.a, p.b
    e = 2 * b + (p.c if p.family == "DH7" else 0)
    return MultiVector.from_components(2, [
        (X1 * e - X2 * a) * X3,
        (X1 * a + X2 * e) * X3,
        DPRIME * b,
    ])


def y_decomposition(pi: MultiVector) -> tuple[Fraction, Fraction, Fraction]:
    """Constants (alpha, beta, gamma) with pi = alpha Y23 + beta Y31 + gamma Y12."""
    gens = [y_wedge(key) for key in BASIS[2]]
    keys = sorted({(key, e) for g in gens + [pi] for key, c in g.terms.items() for e in c.terms})
    col = lambda mv: [mv.coefficient(key).coeff(e) for key, e in keys]
    sol = solve(Matrix.from_columns([col(g) for g in gens], len(keys)), col(pi))
    if pi.degree != 2 or sol is None:
        raise NotAdmissible(f"{pi} is not a constant combination of Y23, Y31, Y12")
    return tuple(sol)


# -- regimes ---------------------------------------------------------------------

REGIME_TAGS = ("A_NONZERO", "A0_EXACT", "A0_B0", "A0_2BpC0", "A0_RATIO_NEG", "A0_RATIO_POS")


@dataclass(frozen=True)
class Regime:
    tag: str
    beta: int | None = None
    gamma: int | None = None

    def __str__(self):
        if self.beta is None:
            return self.tag
        return f"{self.tag}(beta={self.beta}, gamma={self.gamma})"


def _reduced_ratio(b: Fraction, c: Fraction) -> tuple[int, int]:
    q = b / c
    return q.numerator, q.denominator


def classify_regime(p: StructureParams) -> Regime:
    """The case of the closed-form results that applies to ``p``.

    A0_EXACT is the a = 0 case of class 2 (class 7 with c = 0), where the
    tensor is the Jacobian structure of bD.
    """
    if p.family == "custom":
        raise TheoremUnavailable("regimes are defined for the class-2 and class-7 families only")
    a, b = p.a, p.b
    c = p.c if p.family == "DH7" else Fraction(0)
    if c == 0:
        if b == 0:
            raise TheoremUnavailable(
                "class 2 with b = 0 is the diagonal case, which is covered by a separate study")
        return Regime("A_NONZERO") if a else Regime("A0_EXACT")
    if a:
        return Regime("A_NONZERO")
    if b == 0:
        return Regime("A0_B0")
    if 2 * b + c == 0:
        return Regime("A0_2BpC0")
    num, den = _reduced_ratio(b, c)        # den > 0
    if b * (2 * b + c) < 0:
        return Regime("A0_RATIO_NEG", num, den)
    if num < 0:
        num, den = -num, -den
    return Regime("A0_RATIO_POS", num, den)


# -- expected dimensions -----------------------------------------------------------


def _function_grade(i: int, n: int) -> Bigrade:
    """Grade of D'^i x3^n times D."""
    return Bigrade(2 * i + 2, 2 * i + n + 3)


def casimir_grades(regime: Regime, rmax: int) -> list[Bigrade]:
    """Numerator grades (of f*D) of a basis of Casimirs f, up to total degree rmax."""
    out = []
    tag = regime.tag
    if tag in ("A_NONZERO", "A0_RATIO_NEG"):
        out = [_function_grade(0, 0)]
    elif tag == "A0_EXACT":                  # D^n
        out = [_function_grade(n, n) for n in range(rmax + 1)]
    elif tag == "A0_B0":                     # D'^n
        out = [_function_grade(n, 0) for n in range(rmax + 1)]
    elif tag == "A0_2BpC0":                  # x3^n
        out = [_function_grade(0, n) for n in range(rmax + 1)]
    elif tag == "A0_RATIO_POS":              # D'^(n beta + n gamma/2) x3^(n beta), n gamma even
        beta, gamma = regime.beta, regime.gamma
        for n in range(rmax + 1):
            if (n * gamma) % 2:
                continue
            i, m = n * beta + n * gamma // 2, n * beta
            if i < 0 or m < 0:
                log.debug("skipping Casimir term n=%d: exponents (%d, %d) are negative", n, i, m)
                continue
            out.append(_function_grade(i, m))
    return [g for g in out if g.r <= rmax]


def _extra_classes(regime: Regime, rmax: int, add) -> None:
    tag = regime.tag
    if tag == "A_NONZERO":
        add(3, Bigrade(0, 0), 1)                           # d123
        return
    for r in range(rmax + 1):                              # x3^m d12, x3^m d123
        if r >= 1:
            add(2, Bigrade(0, r), 1)
        add(3, Bigrade(0, r), 1)
    if tag == "A0_EXACT":
        for m in range(1, rmax + 1):
            add(2, Bigrade(m, m), 2)
            add(3, Bigrade(m, m), 2)
        return
    gamma = None
    if tag == "A0_2BpC0":
        gamma = 2
    elif tag == "A0_RATIO_NEG" and regime.beta == -1 and regime.gamma % 2 == 0 and regime.gamma >= 4:
        gamma = regime.gamma
    if gamma is not None and gamma <= rmax:
        g = Bigrade(gamma, gamma)                          # D'^(gamma/2 - 1) d3 and its wedges
        add(1, g, 1)
        add(2, g, 2)
        add(3, g, 1)


@lru_cache(maxsize=256)
def _expected_table(params: StructureParams, rmax: int) -> dict:
    regime = classify_regime(params)
    table: dict = {}

    def add(d, g, n):
        if g.r <= rmax:
            table[d, g] = table.get((d, g), 0) + n

    for g in casimir_grades(regime, rmax):
        for d, n in ((0, 1), (1, 3), (2, 3), (3, 1)):
            add(d, g, n)
    _extra_classes(regime, rmax, add)
    return table


def expected_table(params: StructureParams, rmax: int) -> dict:
    """{(d, grade): dim} of the real cohomology over all slices with r <= rmax (zeros omitted)."""
    return dict(_expected_table(params, rmax))


def expected_dim(params: StructureParams, d: int, grade) -> int:
    g = Bigrade(*grade)
    return _expected_table(params, g.r).get((d, g), 0)


def expected_dim_complex(params: StructureParams, complex: str, d: int, grade) -> int:
    """Expected dims of the potential and supplementary complexes (class 2 only)."""
    if complex == "R":
        return expected_dim(params, d, grade)
    if params.family != "DH2" and not (params.family == "DH7" and params.c == 0):
        raise TheoremUnavailable("potential and supplementary results are stated for class 2 only")
    regime = classify_regime(params)
    exact = regime.tag == "A0_EXACT"
    k, r = grade
    diag = k == r
    if complex == "S":
        if d == 1:
            return 2 if exact and diag and k >= 2 else 0
        if d == 2:
            return 2 if diag and (k == 1 or (exact and k >= 1)) else 0
        return 0
    if complex == "P":
        if d in (0, 1):
            return expected_dim(params, d, grade)
        cas = Bigrade(k, r) in casimir_grades(regime, r)
        if d == 2:
            if cas:
                return 3
            if (k, r) == (1, 1):
                return 2
            return 1 if exact and k == 0 and r >= 1 else 0
        if d == 3:
            if cas:
                return 1
            return 1 if k == 0 and (exact or r == 0) else 0
    raise ValueError(f"unknown complex {complex!r}")


# -- named generators -----------------------------------------------------------------

def _casimirs(regime: Regime, rmax: int) -> list[Poly]:
    tag = regime.tag
    fns = []
    for n in range(rmax + 1):
        if tag in ("A_NONZERO", "A0_RATIO_NEG"):
            f = Poly.const(1) if n == 0 else None
        elif tag == "A0_EXACT":
            f = (DPRIME * X3) ** n
        elif tag == "A0_B0":
            f = DPRIME ** n
        elif tag == "A0_2BpC0":
            f = X3 ** n
        else:
            beta, gamma = regime.beta, regime.gamma
            f = None
            if (n * gamma) % 2 == 0:
                f = DPRIME ** (n * beta + n * gamma // 2) * X3 ** (n * beta)
        if f is not None:
            fns.append(f)
    return fns


def generators(params: StructureParams, d: int, grade) -> list[MultiVector]:
    """The closed-form cohomology generators of degree d living on ``grade``, as d-frame cochains."""
    from .yframe import to_y_frame
    g = Bigrade(*grade)
    regime = classify_regime(params)
    x3 = lambda m: X3 ** m
    cands: list[MultiVector] = []
    for f in _casimirs(regime, g.r):
        cands += [y_wedge(key).scale(f) for key in BASIS[d]]
    k, r = g
    if k == 0:
        if regime.tag == "A_NONZERO":
            if d == 3 and r == 0:
                cands.append(MultiVector.basis_element((1, 2, 3)))
        elif d == 2 and r >= 1:
            cands.append(MultiVector.basis_element((1, 2), x3(r - 1)))
        elif d == 3:
            cands.append(MultiVector.basis_element((1, 2, 3), x3(r)))
    if regime.tag == "A0_EXACT" and k == r and k >= 1:
        m = k
        if d == 2:
            x1m = X1 ** (m - 1)
            second = MultiVector.basis_element((3, 1), x1m)
            if m >= 2:
                second = second + MultiVector.basis_element((2, 3), X1 ** (m - 2) * X2 * (m - 1))
            cands += [MultiVector.basis_element((2, 3), x1m), second]
        elif d == 3:
            cands += [MultiVector.basis_element((1, 2, 3), X1 ** (m - 1) * v) for v in (X1, X2)]
    gamma = 2 if regime.tag == "A0_2BpC0" else None
    if regime.tag == "A0_RATIO_NEG" and regime.beta == -1 and regime.gamma % 2 == 0 and regime.gamma >= 4:
        gamma = regime.gamma
    if gamma is not None and k == r == gamma and d >= 1:
        c3 = MultiVector.basis_element((3,), DPRIME ** (gamma // 2 - 1))
        others = {1: [MultiVector.function(1)], 2: [y_wedge((1,)), y_wedge((2,))], 3: [y_wedge((1, 2))]}[d]
        cands += [c3 ^ w if w.degree else c3 for w in others]
    out = []
    for c in cands:
        if not c.is_zero() and to_y_frame(c).grade == g:
            out.append(c)
    return out
