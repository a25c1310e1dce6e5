"""The commuting frame Y1 = x1 d1 + x2 d2, Y2 = x1 d2 - x2 d1, Y3 = x3 d3.

A cochain written in this frame has rational coefficients with the fixed
denominator D = (x1^2 + x2^2) x3 = det(Y1, Y2, Y3); only numerators are
stored.  For an admissible tensor

    L = alpha Y23 + beta Y31 + gamma Y12

the coboundary of q Y_J is sum_i X_i(q) Y_i ^ Y_J, with

    X1 = gamma Y2 - beta Y3,  X2 = alpha Y3 - gamma Y1,  X3 = beta Y1 - alpha Y2.

Each X_i maps Q_{kr} = P_{kr}/D to itself; :func:`x_matrix` gives the exact
tridiagonal matrix and :func:`x_apply` the direct derivation, which serves as
its oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import Matrix, SubspaceBasis, kernel_basis
from .multivector import BASIS, MultiVector, normalize, wedge
from .poly import D, DPRIME, X1, X2, X3, ZERO, Bigrade, Poly, QElem, q_basis

Y1 = MultiVector.from_components(1, [X1, X2, ZERO])
Y2 = MultiVector.from_components(1, [-X2, X1, ZERO])
Y3 = MultiVector.from_components(1, [ZERO, ZERO, X3])
Y_FIELDS = (Y1, Y2, Y3)


def y_fields() -> tuple[MultiVector, MultiVector, MultiVector]:
    return Y_FIELDS


def y_wedge(index: tuple) -> MultiVector:
    """Y_index expanded in the d-frame, e.g. ``y_wedge((2, 3))`` is Y2 ^ Y3."""
    out = MultiVector.function(1)
    for i in index:
        out = wedge(out, Y_FIELDS[i - 1])
    return out


def as_coefficients(params) -> tuple[Fraction, Fraction, Fraction]:
    """(alpha, beta, gamma) from a 3-tuple or anything with ``y_coefficients``."""
    coeffs = getattr(params, "y_coefficients", params)
    alpha, beta, gamma = coeffs
    return Fraction(alpha), Fraction(beta), Fraction(gamma)


def admissible_tensor(params) -> MultiVector:
    alpha, beta, gamma = as_coefficients(params)
    return (y_wedge((2, 3)).scale(alpha) + y_wedge((3, 1)).scale(beta)
            + y_wedge((1, 2)).scale(gamma))


# -- cochains in the Y-frame ---------------------------------------------------

@dataclass(frozen=True)
class YCochain:
    """Degree-d cochain sum_J (p_J / D) Y_J, numerators listed in BASIS[d] order."""

    degree: int
    grade: Bigrade
    numerators: tuple

    def __post_init__(self):
        object.__setattr__(self, "grade", Bigrade(*self.grade))
        nums = tuple(self.numerators)
        if len(nums) != len(BASIS[self.degree]):
            raise ValueError(f"degree {self.degree} cochain needs {len(BASIS[self.degree])} numerators")
        for p in nums:
            if not p.is_zero() and p.bigrade() != self.grade:
                raise ValueError(f"numerator {p} is not of bigrade {self.grade}")
        object.__setattr__(self, "numerators", nums)

    @property
    def components(self) -> tuple:
        return tuple(QElem(self.grade, p) for p in self.numerators)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.numerators)

    def __add__(self, other: "YCochain") -> "YCochain":
        if (other.degree, other.grade) != (self.degree, self.grade):
            raise ValueError("adding cochains of different degree or grade")
        return YCochain(self.degree, self.grade,
                        tuple(p + q for p, q in zip(self.numerators, other.numerators)))

    def scale(self, c) -> "YCochain":
        return YCochain(self.degree, self.grade, tuple(p * c for p in self.numerators))

    def render(self) -> str:
        as_mv = MultiVector(self.degree, dict(zip(BASIS[self.degree], self.numerators)))
        body = as_mv.render(prefix="Y")
        return f"(1/D)*[{body}]"

    def __str__(self):
        return self.render()


def _d_to_y_numerators() -> dict[tuple, MultiVector]:
    """d_I = (1/D) * N_I in the Y-frame; returns N_I with Y symbols as basis."""
    # d1 = (x13 Y1 - x23 Y2)/D, d2 = (x23 Y1 + x13 Y2)/D, d3 = D' Y3 / D
    rows = {
        1: MultiVector.from_components(1, [X1 * X3, -X2 * X3, ZERO]),
        2: MultiVector.from_components(1, [X2 * X3, X1 * X3, ZERO]),
        3: MultiVector.from_components(1, [ZERO, ZERO, DPRIME]),
    }
    table = {}
    for deg, keys in BASIS.items():
        for key in keys:
            acc = MultiVector.function(1)
            for i in key:
                acc = wedge(acc, rows[i])
            if deg == 0:
                acc = acc.scale(D)
            else:
                for _ in range(deg - 1):
                    acc = acc.map_coefficients(lambda p: _exact(p, D))
            table[key] = acc
    return table


def _exact(p: Poly, q: Poly) -> Poly:
    res = p.exact_div(q)
    if res is None:
        raise ArithmeticError(f"{q} does not divide {p}")
    return res


_D_TO_Y = _d_to_y_numerators()


def d_basis_shift(key: tuple) -> Bigrade:
    """Numerator bigrade of the constant d-frame basis element ``key``."""
    g = {p.bigrade() for p in _D_TO_Y[key].terms.values()}
    (only,) = g
    return only


def to_y_frame(c: MultiVector, grade=None) -> YCochain:
    """Rewrite a d-frame cochain over the common denominator D."""
    acc = MultiVector.zero(c.degree)
    for key, f in c.terms.items():
        acc = acc + _D_TO_Y[key].scale(f)
    nums = acc.components
    grades = set()
    for p in nums:
        grades |= p.bigrades()
    if len(grades) > 1:
        raise ValueError(f"cochain is not bigrade-homogeneous in the Y-frame: {sorted(grades)}")
    if grades:
        (g,) = grades
        if grade is not None and tuple(grade) != tuple(g):
            raise ValueError(f"cochain has numerator bigrade {tuple(g)}, expected {tuple(grade)}")
        grade = g
    elif grade is None:
        raise ValueError("grade must be given for the zero cochain")
    return YCochain(c.degree, Bigrade(*grade), nums)


def from_y_frame(c: YCochain) -> MultiVector | None:
    """The d-frame cochain represented by ``c``, or None when it is not polynomial."""
    acc = MultiVector.zero(c.degree)
    for key, p in zip(BASIS[c.degree], c.numerators):
        if not p.is_zero():
            acc = acc + y_wedge(key).scale(p)
    out = {}
    for key, p in acc.terms.items():
        q = p.exact_div(D)
        if q is None:
            return None
        out[key] = q
    return MultiVector(c.degree, out)


def formulary_is_real(c: YCochain) -> bool:
    """Per-degree divisibility criteria for a potential cochain to be real.

    Valid on the potential cochain spaces (where the range conditions already
    force the x3 factor): d=0: D' | p; d=1: D' | p1 x1 - p2 x2 and D' | p3;
    d=2: D' | p1 x1 - p2 x2; d=3: always.
    """
    from .poly import dprime_criterion

    nums = c.numerators
    if c.degree == 0:
        return nums[0].is_zero() or dprime_criterion(nums[0])
    if c.degree in (1, 2):
        s = nums[0] * X1 - nums[1] * X2
        ok = s.is_zero() or dprime_criterion(s)
        if c.degree == 1:
            ok = ok and (nums[2].is_zero() or dprime_criterion(nums[2]))
        return ok
    return True


# -- fundamental operators ---------------------------------------------------

def _y_numerator_action(i: int, p: Poly) -> Poly:
    """Numerator of Y_i(p / D) over D, by the quotient rule with the factor D cancelled."""
    y = Y_FIELDS[i - 1]
    top = D * y.apply(p) - p * y.apply(D)
    return _exact(top, D)


def x_apply(which: int, params, q: QElem) -> QElem:
    """X_which applied to q as a derivation of rational functions."""
    alpha, beta, gamma = as_coefficients(params)
    combos = {
        1: ((2, gamma), (3, -beta)),
        2: ((3, alpha), (1, -gamma)),
        3: ((1, beta), (2, -alpha)),
    }[which]
    out = ZERO
    for i, c in combos:
        if c:
            out = out + _y_numerator_action(i, q.numerator) * c
    return QElem(q.grade, out)


@lru_cache(maxsize=None)
def _y_matrices(k: int, r: int) -> tuple[Matrix, Matrix, Matrix]:
    """Matrices of Y1, Y2, Y3 acting on numerators of Q_{kr} (basis index l = x1 exponent)."""
    n = k + 1
    y1 = [[Fraction(0)] * n for _ in range(n)]
    y2 = [[Fraction(0)] * n for _ in range(n)]
    y3 = [[Fraction(0)] * n for _ in range(n)]
    for l in range(n):
        y1[l][l] = Fraction(k - 2)           # Euler weight k, minus Y1(D)/D = 2
        y3[l][l] = Fraction(r - k - 1)       # weight r-k, minus Y3(D)/D = 1
        if l + 1 <= k:
            y2[l + 1][l] = Fraction(k - l)   # x1 d2 raises the x1 exponent
        if l >= 1:
            y2[l - 1][l] = Fraction(-l)      # -x2 d1 lowers it
    return Matrix(n, n, y1), Matrix(n, n, y2), Matrix(n, n, y3)


@dataclass(frozen=True)
class XOperatorMatrix:
    which: int
    grade: Bigrade
    params: tuple
    matrix: Matrix


def x_matrix(which: int, grade, params) -> XOperatorMatrix:
    """Exact (k+1)x(k+1) matrix of X_which on Q_{kr} in the canonical basis."""
    k, r = grade
    alpha, beta, gamma = as_coefficients(params)
    y1, y2, y3 = _y_matrices(k, r)
    if which == 1:
        m = y2.scale(gamma) - y3.scale(beta)
    elif which == 2:
        m = y3.scale(alpha) - y1.scale(gamma)
    elif which == 3:
        m = y1.scale(beta) - y2.scale(alpha)
    else:
        raise ValueError(f"no operator X{which}")
    return XOperatorMatrix(which, Bigrade(k, r), (alpha, beta, gamma), m)


def x_kernel(which: int, grade, params) -> SubspaceBasis:
    return kernel_basis(x_matrix(which, grade, params).matrix)


def basis_qelem(grade, l: int) -> QElem:
    return QElem(Bigrade(*grade), Poly.monomial(q_basis(grade)[l]))


def y_index_wedge(i: int, key: tuple) -> tuple[int, tuple | None]:
    """Y_i ^ Y_key = sign * Y_result."""
    return normalize((i,) + key)
