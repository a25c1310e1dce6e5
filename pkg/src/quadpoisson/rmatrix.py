"""gl(3), its exterior powers, and the map J: a -> sum a_ij x_i d_j.

Elements of the exterior algebra of gl(3) are kept as dicts from increasing
index tuples to Fractions; index 3*(i-1) + (j-1) stands for the unit matrix
E_ij.  :class:`BiMatrix` and :class:`TriMatrix` are the degree-2 and degree-3
cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .linalg import Matrix, SubspaceBasis, inverse, kernel_basis
from .multivector import MultiVector, schouten, wedge
from .poly import Poly

Matrix3 = Matrix


def unit(i: int, j: int) -> Matrix3:
    """E_ij with 1-based indices."""
    return Matrix(3, 3, [[1 if (r, c) == (i - 1, j - 1) else 0 for c in range(3)] for r in range(3)])


GL3_BASIS = tuple(unit(i, j) for i in (1, 2, 3) for j in (1, 2, 3))

Y_MATRICES = (
    Matrix(3, 3, [[1, 0, 0], [0, 1, 0], [0, 0, 0]]),
    Matrix(3, 3, [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]),
    unit(3, 3),
)


def to_vec(m: Matrix3) -> tuple:
    return tuple(m[i, j] for i in range(3) for j in range(3))


def from_vec(v: Sequence) -> Matrix3:
    return Matrix(3, 3, [list(v[3 * i:3 * i + 3]) for i in range(3)])


def commutator(m: Matrix3, n: Matrix3) -> Matrix3:
    return m @ n - n @ m


def j_map(m: Matrix3) -> MultiVector:
    """The linear vector field sum_ij m_ij x_i d_j."""
    comps = [Poly() for _ in range(3)]
    for i, j in product(range(3), repeat=2):
        if m[i, j]:
            comps[j] = comps[j] + Poly.var(i + 1) * m[i, j]
    return MultiVector.from_components(1, comps)


# -- exterior algebra of gl(3) ------------------------------------------------------

def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple]:
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class WedgeElement:
    """Homogeneous element of degree ``degree`` in the exterior algebra of gl(3)."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict | None = None):
        self.degree = degree
        clean: dict = {}
        for idx, c in (terms or {}).items():
            if len(idx) != degree:
                raise ValueError(f"index {idx} in a degree-{degree} element")
            sign, key = _sort_sign(idx)
            if sign and c:
                clean[key] = clean.get(key, Fraction(0)) + sign * Fraction(c)
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def wedge_of(cls, *mats: Matrix3, coeff=1) -> "WedgeElement":
        """m1 ^ m2 ^ ... expanded in the unit-matrix basis."""
        acc = {(): Fraction(coeff)}
        for m in mats:
            v = to_vec(m)
            nxt: dict = {}
            for idx, c in acc.items():
                for t, x in enumerate(v):
                    if x:
                        nxt[idx + (t,)] = nxt.get(idx + (t,), 0) + c * x
            acc = nxt
        return cls(len(mats), acc)

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("adding elements of different degree")
        res = dict(self.terms)
        for k, v in other.terms.items():
            res[k] = res.get(k, 0) + v
        return type(self)(self.degree, res) if type(self) is type(other) else WedgeElement(self.degree, res)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return type(self)(self.degree, {k: v * c for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, WedgeElement) and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        name = lambda i: f"E{i // 3 + 1}{i % 3 + 1}"
        body = " + ".join(f"{c}*" + "^".join(name(i) for i in k) for k, c in sorted(self.terms.items()))
        return f"{type(self).__name__}({body or '0'})"


class BiMatrix(WedgeElement):
    def __init__(self, degree: int = 2, terms: dict | None = None):
        super().__init__(degree, terms)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Matrix3, Matrix3, object]]) -> "BiMatrix":
        out = cls()
        for m, n, c in terms:
            out = out + cls(2, WedgeElement.wedge_of(m, n, coeff=c).terms)
        return out


class TriMatrix(WedgeElement):
    def __init__(self, degree: int = 3, terms: dict | None = None):
        super().__init__(degree, terms)


def _bracket_basis(s: int, t: int) -> dict:
    """[E_s, E_t] in unit-matrix coordinates."""
    v = to_vec(commutator(GL3_BASIS[s], GL3_BASIS[t]))
    return {i: x for i, x in enumerate(v) if x}


def algebraic_bracket(p: WedgeElement, q: WedgeElement) -> WedgeElement:
    """Schouten bracket of the exterior algebra of gl(3):

        [x1^...^xp, y1^...^yq] = sum_ij (-1)^(i+j) [xi, yj] ^ x1..^xi..xp ^ y1..^yj..yq
    """
    res: dict = {}
    deg = p.degree + q.degree - 1
    for xs, cx in p.terms.items():
        for ys, cy in q.terms.items():
            for i, s in enumerate(xs, start=1):
                for j, t in enumerate(ys, start=1):
                    br = _bracket_basis(s, t)
                    if not br:
                        continue
                    rest = xs[:i - 1] + xs[i:] + ys[:j - 1] + ys[j:]
                    sign = -1 if (i + j) % 2 else 1
                    for u, c in br.items():
                        sg, key = _sort_sign((u,) + rest)
                        if sg:
                            res[key] = res.get(key, 0) + sign * sg * cx * cy * c
    cls = {2: BiMatrix, 3: TriMatrix}.get(deg)
    return cls(deg, res) if cls else WedgeElement(deg, res)


def j_wedge(w: WedgeElement) -> MultiVector:
    """Extension of J to the exterior algebra, multiplicative for the wedge."""
    fields = [j_map(m) for m in GL3_BASIS]
    out = MultiVector.zero(w.degree)
    for idx, c in w.terms.items():
        acc = MultiVector.function(1)
        for i in idx:
            acc = wedge(acc, fields[i])
        out = out + acc.scale(c)
    return out


def j_wedge3(t: WedgeElement) -> MultiVector:
    if t.degree != 3:
        raise ValueError("j_wedge3 takes a degree-3 element")
    return j_wedge(t)


@dataclass(frozen=True)
class YangBaxterResult:
    bracket: WedgeElement
    is_zero: bool
    j_identity: bool      # J([r, r]) == [J r, J r], checked whether or not [r, r] vanishes


def yang_baxter_check(r: BiMatrix) -> YangBaxterResult:
    """[r, r] from the gl(3) structure constants, plus the J-compatibility check."""
    rr = algebraic_bracket(r, r)
    lam = j_wedge(r)
    return YangBaxterResult(rr, rr.is_zero(), j_wedge(rr) == schouten(lam, lam))


def y_rmatrix(coeffs) -> BiMatrix:
    """alpha Y2^Y3 + beta Y3^Y1 + gamma Y1^Y2 built from the commuting Y-matrices."""
    alpha, beta, gamma = coeffs
    y1, y2, y3 = Y_MATRICES
    return BiMatrix.from_terms([(y2, y3, alpha), (y3, y1, beta), (y1, y2, gamma)])


def stabilizer(lam: MultiVector) -> SubspaceBasis:
    """Matrices a (as 9-vectors) with [J a, lam] = 0."""
    images = [schouten(j_map(m), lam) for m in GL3_BASIS]
    keys = sorted({(key, e) for im in images for key, p in im.terms.items() for e in p.terms})
    rows = [[im.coefficient(key).coeff(e) for im in images] for key, e in keys]
    return kernel_basis(Matrix(len(rows), 9, rows))


# -- GL(3) actions -------------------------------------------------------------

def ad_action(A: Matrix3, w: WedgeElement) -> WedgeElement:
    """Factorwise a -> A^(-T) a A^T, the action that J intertwines with push-forward."""
    inv_t = inverse(A).T
    images = [to_vec(inv_t @ m @ A.T) for m in GL3_BASIS]
    res: dict = {}
    for idx, c in w.terms.items():
        acc = {(): c}
        for i in idx:
            nxt: dict = {}
            for key, x in acc.items():
                for t, y in enumerate(images[i]):
                    if y:
                        nxt[key + (t,)] = nxt.get(key + (t,), 0) + x * y
            acc = nxt
        for key, x in acc.items():
            res[key] = res.get(key, 0) + x
    return type(w)(w.degree, res)


def pushforward(A: Matrix3, mv: MultiVector) -> MultiVector:
    """Image of a multivector field under the linear map x -> A x."""
    A_inv = inverse(A)
    m = A_inv.tolist()
    if mv.degree == 0:
        return MultiVector.function(mv.components[0].substitute_linear(m))
    out = MultiVector.zero(mv.degree)
    for key, c in mv.terms.items():
        c2 = c.substitute_linear(m)
        acc = MultiVector.function(c2)
        for i in key:
            col = [A[j, i - 1] for j in range(3)]        # d_i -> sum_j A_ji d_j
            acc = wedge(acc, MultiVector.from_components(1, [Poly.const(x) for x in col]))
        out = out + acc
    return out
