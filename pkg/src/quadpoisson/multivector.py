"""Polyvector fields on R^3 with polynomial coefficients.

A degree-d multivector is stored against the ordered wedge basis

    d=0: 1     d=1: d1, d2, d3     d=2: d23, d31, d12     d=3: d123

The same class doubles as the exterior algebra over formal frame symbols (the
Y-frame reuses it), since nothing below depends on what the symbols mean
except :func:`schouten`, which differentiates coefficients in x1, x2, x3.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping, Sequence

from .poly import ONE, ZERO, Poly, render_terms, monomial_str

BASIS: dict[int, tuple] = {
    0: ((),),
    1: ((1,), (2,), (3,)),
    2: ((2, 3), (3, 1), (1, 2)),
    3: ((1, 2, 3),),
}

_BASIS_NAMES = {(): "", (1,): "1", (2,): "2", (3,): "3", (2, 3): "23", (3, 1): "31",
                (1, 2): "12", (1, 2, 3): "123"}


class UnsupportedDegree(ValueError):
    """A bracket or product would have degree above 3."""


def _perm_sign(seq: Sequence[int], target: Sequence[int]) -> int:
    pos = {v: i for i, v in enumerate(target)}
    p = [pos[v] for v in seq]
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


@lru_cache(maxsize=None)
def normalize(index: tuple) -> tuple[int, tuple | None]:
    """Map an index tuple to (sign, basis key); sign 0 when an index repeats."""
    if len(set(index)) != len(index):
        return 0, None
    d = len(index)
    if d > 3:
        return 0, None
    key = next(b for b in BASIS[d] if set(b) == set(index))
    return _perm_sign(index, key), key


class MultiVector:
    """Immutable polyvector field of fixed degree 0..3."""

    __slots__ = ("degree", "terms", "_hash")

    def __init__(self, degree: int, terms: Mapping[tuple, Poly] | None = None):
        if degree not in BASIS:
            raise UnsupportedDegree(f"multivector degree {degree} outside 0..3")
        self.degree = degree
        clean = {}
        for key, p in (terms or {}).items():
            if not isinstance(p, Poly):
                p = Poly.const(p)
            if p.is_zero():
                continue
            sign, k = normalize(tuple(key))
            if len(key) != degree:
                raise ValueError(f"basis element {key} in a degree-{degree} multivector")
            if sign == 0:
                continue
            clean[k] = clean.get(k, ZERO) + (p if sign > 0 else -p)
        self.terms = {k: v for k, v in clean.items() if not v.is_zero()}
        self._hash = None

    @classmethod
    def zero(cls, degree: int) -> "MultiVector":
        return cls(degree)

    @classmethod
    def function(cls, f) -> "MultiVector":
        return cls(0, {(): f if isinstance(f, Poly) else Poly.const(f)})

    @classmethod
    def from_components(cls, degree: int, comps: Sequence) -> "MultiVector":
        """Build from coefficients listed in the ordered basis of ``degree``."""
        basis = BASIS[degree]
        if len(comps) != len(basis):
            raise ValueError(f"degree {degree} needs {len(basis)} components, got {len(comps)}")
        return cls(degree, dict(zip(basis, comps)))

    @classmethod
    def basis_element(cls, index: tuple, coeff=ONE) -> "MultiVector":
        return cls(len(index), {tuple(index): coeff})

    @property
    def components(self) -> tuple:
        return tuple(self.terms.get(b, ZERO) for b in BASIS[self.degree])

    def coefficient(self, index: tuple) -> Poly:
        sign, key = normalize(tuple(index))
        if sign == 0:
            return ZERO
        c = self.terms.get(key, ZERO)
        return c if sign > 0 else -c

    def is_zero(self) -> bool:
        return not self.terms

    # linear structure -------------------------------------------------------

    def __add__(self, other: "MultiVector") -> "MultiVector":
        if not isinstance(other, MultiVector):
            return NotImplemented
        if other.degree != self.degree:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise ValueError(f"adding degree {self.degree} and degree {other.degree}")
        res = dict(self.terms)
        for k, v in other.terms.items():
            res[k] = res.get(k, ZERO) + v
        return MultiVector(self.degree, res)

    def __neg__(self):
        return MultiVector(self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MultiVector":
        """Multiply every coefficient by a scalar or a polynomial."""
        return MultiVector(self.degree, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, MultiVector):
            return wedge(self, c)
        return self.scale(c)

    def __rmul__(self, c):
        return self.scale(c)

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, MultiVector):
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self.terms.items())))
        return self._hash

    def map_coefficients(self, f) -> "MultiVector":
        return MultiVector(self.degree, {k: f(v) for k, v in self.terms.items()})

    def apply(self, f: Poly) -> Poly:
        """Action of a vector field on a function."""
        if self.degree != 1:
            raise ValueError("only vector fields act on functions")
        out = ZERO
        for (i,), c in self.terms.items():
            out = out + c * f.diff(i)
        return out

    def render(self, prefix: str = "d") -> str:
        items = []
        for b in BASIS[self.degree]:
            c = self.terms.get(b)
            if c is None:
                continue
            name = f"{prefix}{_BASIS_NAMES[b]}" if b else ""
            for e, coef in c.sorted_terms():
                items.append(((e, name), coef))
        return render_terms(items, lambda key: "*".join(p for p in (monomial_str(key[0]), key[1]) if p))

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MultiVector[{self.degree}]({self})"


def wedge(a: MultiVector, b: MultiVector) -> MultiVector:
    d = a.degree + b.degree
    if d > 3:
        if a.is_zero() or b.is_zero():
            return MultiVector.zero(3)
        raise UnsupportedDegree(f"wedge product of degree {d}")
    res: dict = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            sign, key = normalize(ka + kb)
            if sign == 0:
                continue
            p = va * vb
            res[key] = res.get(key, ZERO) + (p if sign > 0 else -p)
    return MultiVector(d, res)


def _right_dxi(a: MultiVector, i: int) -> MultiVector:
    """Right derivative with respect to the odd symbol d_i."""
    if a.degree == 0:
        return MultiVector.zero(0)
    res: dict = {}
    for key, v in a.terms.items():
        if i not in key:
            continue
        pos = key.index(i)
        rest = key[:pos] + key[pos + 1:]
        sign = -1 if (len(key) - 1 - pos) % 2 else 1
        s2, k2 = normalize(rest)
        p = v if sign * s2 > 0 else -v
        res[k2] = res.get(k2, ZERO) + p
    return MultiVector(a.degree - 1, res)


def schouten(a: MultiVector, b: MultiVector) -> MultiVector:
    """Schouten-Nijenhuis bracket with [X, f] = X(f) and [X, Y] the Lie bracket.

    In odd coordinates d_i it reads
        [A, B] = sum_i (A <d_i)(d_{x_i} B) - (-1)^((a-1)(b-1)) (B <d_i)(d_{x_i} A)
    where ``<d_i`` is the right derivative in d_i.
    """
    p, q = a.degree, b.degree
    rdeg = p + q - 1
    if rdeg > 3:
        raise UnsupportedDegree(f"bracket of degrees {p} and {q} has degree {rdeg}")
    if rdeg < 0:
        return MultiVector.zero(0)
    out = MultiVector.zero(rdeg)
    eps = -1 if ((p - 1) * (q - 1)) % 2 else 1
    for i in (1, 2, 3):
        da = _right_dxi(a, i)
        if not da.is_zero():
            out = out + wedge(da, b.map_coefficients(lambda c: c.diff(i)))
        db = _right_dxi(b, i)
        if not db.is_zero():
            t = wedge(db, a.map_coefficients(lambda c: c.diff(i)))
            out = out - t if eps > 0 else out + t
    return out


@lru_cache(maxsize=256)
def is_poisson(pi: MultiVector) -> bool:
    if pi.degree != 2:
        raise ValueError("a Poisson tensor is a bivector")
    return schouten(pi, pi).is_zero()


class NotPoisson(ValueError):
    def __init__(self, pi: MultiVector):
        self.bracket = schouten(pi, pi)
        super().__init__(f"[L, L] != 0: {self.bracket}")


def lp_coboundary(lam: MultiVector, c: MultiVector) -> MultiVector:
    """Lichnerowicz-Poisson coboundary [lam, c]."""
    if not is_poisson(lam):
        raise NotPoisson(lam)
    return schouten(lam, c)


def curl(pi: MultiVector) -> MultiVector:
    """Modular vector field w.r.t. d123: component j is sum_i d_i(pi_ji)."""
    if pi.degree != 2:
        raise ValueError("curl takes a bivector")
    comps = []
    for j in (1, 2, 3):
        s = ZERO
        for i in (1, 2, 3):
            s = s + pi.coefficient((j, i)).diff(i)
        comps.append(s)
    return MultiVector.from_components(1, comps)


def jacobian_structure(h: Poly) -> MultiVector:
    """The bivector with d23-, d31-, d12-coefficients dh/dx1, dh/dx2, dh/dx3."""
    return MultiVector.from_components(2, [h.diff(1), h.diff(2), h.diff(3)])


def d(*index: int) -> MultiVector:
    """Constant basis multivector, e.g. ``d(2, 3)`` is d2 ^ d3."""
    return MultiVector.basis_element(tuple(index))
