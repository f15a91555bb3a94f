"""The plane curve y^q + y = x^m over GF(q^2), m | q + 1.

Points are enumerated once in a canonical order (affine points sorted by the
codes of x then y, so zero comes first and nonzero values follow discrete
log order; the point at infinity last).  That order fixes code coordinates
everywhere else in the package.

Functions on the curve are bivariate polynomials stored as ``{(i, j): code}``
dictionaries of nonzero coefficients.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .gf import GF, FieldError, make_field, prime_power, trace_codes

Poly = dict  # {(i, j): code}


class CurveError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CurvePoint:
    """A rational point: affine ``(x, y)`` by field codes, or the point at infinity."""

    _key: tuple = field(repr=False)

    @classmethod
    def affine(cls, x: int, y: int) -> "CurvePoint":
        return cls((0, int(x), int(y)))

    @property
    def is_infinity(self) -> bool:
        return self._key[0] == 1

    @property
    def x(self) -> int:
        if self.is_infinity:
            raise CurveError("the point at infinity has no affine coordinates")
        return self._key[1]

    @property
    def y(self) -> int:
        if self.is_infinity:
            raise CurveError("the point at infinity has no affine coordinates")
        return self._key[2]

    def __repr__(self) -> str:
        if self.is_infinity:
            return "Pinf"
        return f"({self.x}, {self.y})"


INFINITY = CurvePoint((1, 0, 0))


def format_point(F: GF, P: CurvePoint) -> str:
    if P.is_infinity:
        return "Pinf"
    return f"({F.format(P.x)}, {F.format(P.y)})"


def parse_point(F: GF, text: str) -> CurvePoint:
    text = text.strip()
    if text in ("Pinf", "inf", "Qinf"):
        return INFINITY
    mt = re.fullmatch(r"\(\s*([^,]+?)\s*,\s*([^)]+?)\s*\)", text)
    if not mt:
        raise CurveError(f"cannot parse point {text!r}")
    return CurvePoint.affine(F.parse(mt.group(1)), F.parse(mt.group(2)))


@dataclass(frozen=True)
class LocalExpansion:
    """``y = y_P + sum_k coeffs[k-1] t^k`` with ``t = x - x_P``, modulo ``t^(order+1)``."""

    point: CurvePoint
    order: int
    coeffs: tuple[int, ...]

    def series(self) -> np.ndarray:
        """Coefficients of ``y - y_P`` as a length ``order + 1`` array (constant term first)."""
        return np.array((0,) + self.coeffs, dtype=np.int64)


class CurveModel:
    """Parameters and rational points of ``y^q + y = x^m``."""

    def __init__(self, q: int, m: int):
        try:
            p, e = prime_power(q)
        except FieldError as exc:
            raise CurveError(str(exc)) from None
        if q * q > (1 << 20):
            raise CurveError(f"q^2 = {q * q} exceeds the supported field size")
        if m < 1 or (q + 1) % m:
            raise CurveError(f"m = {m} must be a positive divisor of q + 1 = {q + 1}")
        self.q, self.m, self.p, self.e = q, m, p, e
        self.field = make_field(p, 2 * e)
        self.c = (q + 1) // m
        self.genus = (q - 1) * (m - 1) // 2
        self.hermitian = m == q + 1

    def __repr__(self) -> str:
        return f"CurveModel(q={self.q}, m={self.m})"

    def __reduce__(self):
        return (build_curve, (self.q, self.m))

    @property
    def expected_point_count(self) -> int:
        if self.hermitian:
            return self.q**3 + 1
        return 1 + self.q * (1 + (self.q - 1) * self.m)

    @cached_property
    def trace(self) -> np.ndarray:
        return trace_codes(self.field, self.q)

    @cached_property
    def x_to_m(self) -> np.ndarray:
        F = self.field
        x = F.all_codes
        return np.where(x == 0, 0, ((x - 1) * self.m) % F.qm1 + 1)

    @cached_property
    def points(self) -> tuple[CurvePoint, ...]:
        pts = []
        for x in range(self.field.order):
            for y in np.flatnonzero(self.trace == self.x_to_m[x]):
                pts.append(CurvePoint.affine(x, int(y)))
        pts.append(INFINITY)
        return tuple(pts)

    @property
    def affine_points(self) -> tuple[CurvePoint, ...]:
        return self.points[:-1]

    @cached_property
    def point_index(self) -> dict[CurvePoint, int]:
        return {P: i for i, P in enumerate(self.points)}

    @property
    def origin(self) -> CurvePoint:
        return CurvePoint.affine(0, 0)

    def contains(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return True
        return bool(self.trace[P.y] == self.x_to_m[P.x])

    def check_point(self, P: CurvePoint) -> None:
        if not self.contains(P):
            raise CurveError(f"{format_point(self.field, P)} is not on {self!r}")

    def automorphisms(self) -> list:
        """Generators of a group of point maps preserving every L(rQinf).

        ``(x, y) -> (l x, l^m y)`` with ``l`` of order m(q-1), and the
        translations ``y -> y + b`` for an F_p-basis of ``{b : b^q + b = 0}``.
        """
        F = self.field
        lam = F.pow(F.gen, self.c)
        lam_m = F.pow(lam, self.m)

        def scale(P):
            return P if P.is_infinity else CurvePoint.affine(F.mul(lam, P.x), F.mul(lam_m, P.y))

        gens = [scale]
        kernel = [int(b) for b in np.flatnonzero(self.trace == 0) if b]
        span = {0}
        for b in kernel:
            if b in span:
                continue
            span |= {F.add(s, F.mul(F.from_int(k), b)) for s in span for k in range(self.p)}
            gens.append(_translation(F, b))
        return gens


def _translation(F: GF, b: int):
    def move(P):
        return P if P.is_infinity else CurvePoint.affine(P.x, F.add(P.y, b))

    return move


@lru_cache(maxsize=None)
def build_curve(q: int, m: int) -> CurveModel:
    return CurveModel(q, m)


def enumerate_points(curve: CurveModel) -> tuple[CurvePoint, ...]:
    pts = curve.points
    if len(pts) != curve.expected_point_count:
        raise CurveError(f"found {len(pts)} points, expected {curve.expected_point_count}")  # pragma: no cover
    return pts


def solve_trace_fiber(curve: CurveModel, c: int) -> list[int]:
    """All ``y`` with ``y^q + y = c`` (``c`` must lie in GF(q))."""
    F = curve.field
    if c and (c - 1) % (curve.q + 1):
        raise CurveError(f"{F.format(c)} is not in the subfield GF({curve.q})")
    return [int(y) for y in np.flatnonzero(curve.trace == c)]


# --- truncated power series in t -------------------------------------------


def series_mul(F: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two series truncated to ``len(a)`` terms."""
    L = len(a)
    outer = F.vmul(a[:, None], b[None, :L])
    i, j = np.indices((L, len(b[:L])))
    keep = i + j < L
    digits = np.zeros((L, F.n), dtype=np.int64)
    np.add.at(digits, (i + j)[keep], F.digit_table[outer[keep]])
    digits %= F.p
    return F._vec_to_code[(digits * F._powers_of_p).sum(axis=1)]


def _frobenius_series(F: GF, s: np.ndarray, q: int) -> np.ndarray:
    """``s(t)^q`` in characteristic p: raise coefficients to q and t to t^q."""
    out = np.zeros_like(s)
    idx = np.arange(0, len(s), q)
    src = s[: len(idx)]
    out[idx] = np.where(src == 0, 0, ((src - 1) * q) % F.qm1 + 1)
    return out


def local_expand(curve: CurveModel, P: CurvePoint, N: int) -> LocalExpansion:
    """Branch of the curve through an affine point as a series in ``t = x - x_P``.

    Writing ``y = y_P + s`` turns the equation into ``s^q + s = (x_P + t)^m - x_P^m``
    because the q-th power is additive; ``s = R - s^q`` is then iterated, each
    pass multiplying the exact precision by q.
    """
    if P.is_infinity:
        raise CurveError("no local expansion at the singular point at infinity")
    if N < 1:
        raise CurveError("truncation order must be positive")
    curve.check_point(P)
    F = curve.field
    L = N + 1
    R = np.zeros(L, dtype=np.int64)
    for k in range(1, min(curve.m, N) + 1):
        binom = F.from_int(math.comb(curve.m, k))
        R[k] = F.mul(binom, F.pow(P.x, curve.m - k))
    s = R.copy()
    while True:
        nxt = F.vsub(R, _frobenius_series(F, s, curve.q))
        if np.array_equal(nxt, s):
            break
        s = nxt
    return LocalExpansion(P, N, tuple(int(c) for c in s[1:]))


def _power_table(F: GF, base: np.ndarray, count: int) -> list[np.ndarray]:
    one = np.zeros_like(base)
    one[0] = 1
    out = [one]
    for _ in range(count):
        out.append(series_mul(F, out[-1], base))
    return out


def monomial_series(curve: CurveModel, P: CurvePoint, monomials, N: int) -> np.ndarray:
    """Series of each ``x^i y^j`` at affine ``P``: array of shape (len(monomials), N + 1)."""
    F = curve.field
    monomials = list(monomials)
    exp = local_expand(curve, P, max(N, 1))
    L = N + 1
    X = np.zeros(L, dtype=np.int64)
    X[0] = P.x
    if L > 1:
        X[1] = 1
    Y = exp.series()[:L].copy()
    Y[0] = P.y
    imax = max((i for i, _ in monomials), default=0)
    jmax = max((j for _, j in monomials), default=0)
    xp = _power_table(F, X, imax)
    yp = _power_table(F, Y, jmax)
    out = np.zeros((len(monomials), L), dtype=np.int64)
    for r, (i, j) in enumerate(monomials):
        out[r] = series_mul(F, xp[i], yp[j])
    return out


def reduce_poly(curve: CurveModel, f: Poly) -> Poly:
    """Rewrite ``f`` with y-degree below q using ``y^q = x^m - y``."""
    F = curve.field
    q, m = curve.q, curve.m
    out: dict = {}
    todo = [(k, v) for k, v in f.items() if v]
    while todo:
        (i, j), c = todo.pop()
        if j < q:
            out[(i, j)] = F.add(out.get((i, j), 0), c)
            continue
        todo.append(((i + m, j - q), c))
        todo.append(((i, j - q + 1), F.neg(c)))
    return {k: v for k, v in out.items() if v}


def is_reduced(curve: CurveModel, f: Poly) -> bool:
    return all(j < curve.q for (_, j), c in f.items() if c)


def pole_order(curve: CurveModel, f: Poly) -> int:
    """Pole order at infinity of a reduced nonzero polynomial."""
    return max(curve.q * i + curve.m * j for (i, j), c in f.items() if c)


def poly_mul(F: GF, f: Poly, g: Poly) -> Poly:
    out: dict = {}
    for (i1, j1), a in f.items():
        for (i2, j2), b in g.items():
            k = (i1 + i2, j1 + j2)
            out[k] = F.add(out.get(k, 0), F.mul(a, b))
    return {k: v for k, v in out.items() if v}


def eval_poly(F: GF, f: Poly, xs, ys) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    acc = np.zeros_like(xs)
    for (i, j), c in f.items():
        xi = np.where(xs == 0, int(i == 0), ((xs - 1) * i) % F.qm1 + 1)
        yj = np.where(ys == 0, int(j == 0), ((ys - 1) * j) % F.qm1 + 1)
        acc = F.vadd(acc, F.vmul(c, F.vmul(xi, yj)))
    return acc


def valuation(curve: CurveModel, f: Poly, P: CurvePoint) -> float:
    """Order of vanishing of ``f`` at ``P`` (negative for poles, ``inf`` for f = 0).

    At infinity the weights ``q i + m j`` (j < q) are pairwise distinct, so
    the pole order is the largest weight present.  At affine points the
    branch series is truncated adaptively; a nonzero reduced function cannot
    vanish to order above its pole order, which bounds the search.
    """
    f = {k: v for k, v in f.items() if v}
    if not f:
        return math.inf
    if not is_reduced(curve, f):
        raise CurveError("valuation needs a polynomial reduced modulo the curve equation")
    if P.is_infinity:
        return -pole_order(curve, f)
    F = curve.field
    cap = max(4 * (curve.q + curve.m), pole_order(curve, f) + 1)
    N = 8
    monomials = list(f)
    coeffs = np.array([f[k] for k in monomials], dtype=np.int64)
    while True:
        S = monomial_series(curve, P, monomials, N)
        total = F.vsum(F.vmul(coeffs[:, None], S), axis=0)
        nz = np.flatnonzero(total)
        if nz.size:
            return int(nz[0])
        if N >= cap:
            raise CurveError("series truncation exhausted")  # pragma: no cover
        N = min(2 * N, cap)
