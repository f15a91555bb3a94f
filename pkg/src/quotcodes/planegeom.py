"""Lines of P^2(GF(q^2)) and zero-dimensional schemes supported on the curve.

A scheme here is curvilinear along the curve at affine points (length k at
a smooth point = the first k branch coefficients vanish) plus, optionally,
the reduced point Pinf = (1:0:0).  Fat structure at the singular point is
outside this class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .curve import INFINITY, CurveError, CurveModel, CurvePoint, format_point, monomial_series
from .gf import GF
from .rrspace import EffectiveDivisor, max_multiplicity

L0, LINF, LAMBDA, THETA = "L0", "Linf", "Lambda", "Theta"


@dataclass(frozen=True, order=True)
class ProjLine:
    """``u x + v y + w z = 0`` with the first nonzero coefficient equal to 1."""

    u: int
    v: int
    w: int

    @classmethod
    def normalized(cls, F: GF, u: int, v: int, w: int) -> "ProjLine":
        lead = next((c for c in (u, v, w) if c), 0)
        if not lead:
            raise ValueError("all-zero line coefficients")
        s = F.inv(lead)
        return cls(F.mul(u, s), F.mul(v, s), F.mul(w, s))

    @classmethod
    def horizontal(cls, F: GF, a: int) -> "ProjLine":
        """The line ``y = a``."""
        return cls(0, 1, F.neg(a))

    @property
    def kind(self) -> str:
        if self.u:
            return THETA
        if self.v:
            return L0 if self.w == 0 else LAMBDA
        return LINF

    def through_infinity(self) -> bool:
        return self.u == 0

    def contains(self, F: GF, P: CurvePoint) -> bool:
        if P.is_infinity:
            return self.u == 0
        return F.add(F.add(F.mul(self.u, P.x), F.mul(self.v, P.y)), self.w) == 0

    def affine_equation(self) -> dict:
        return {k: c for k, c in (((1, 0), self.u), ((0, 1), self.v), ((0, 0), self.w)) if c}

    def format(self, F: GF) -> str:
        kind = self.kind
        if kind == L0:
            return "y=0"
        if kind == LINF:
            return "z=0"
        if kind == LAMBDA:
            return f"y={F.format(F.neg(self.w))}"
        return f"[{F.format(self.u)}:{F.format(self.v)}:{F.format(self.w)}]"


def line_through(F: GF, P: CurvePoint, R: CurvePoint) -> ProjLine:
    """The line joining two distinct points (cross product of (x:y:1) vectors)."""
    a = (1, 0, 0) if P.is_infinity else (P.x, P.y, 1)
    b = (1, 0, 0) if R.is_infinity else (R.x, R.y, 1)
    u = F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1]))
    v = F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2]))
    w = F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))
    return ProjLine.normalized(F, u, v, w)


@lru_cache(maxsize=None)
def _all_lines(F: GF) -> tuple[ProjLine, ...]:
    Q = F.order
    out = [ProjLine(1, v, w) for v in range(Q) for w in range(Q)]
    out += [ProjLine(0, 1, w) for w in range(Q)]
    out.append(ProjLine(0, 0, 1))
    return tuple(sorted(out))


def all_lines(curve: CurveModel) -> tuple[ProjLine, ...]:
    """Every line of P^2 over GF(q^2), each once (q^4 + q^2 + 1 of them)."""
    return _all_lines(curve.field)


def classify_lines(curve: CurveModel) -> dict[str, list[ProjLine]]:
    out: dict[str, list[ProjLine]] = {L0: [], LINF: [], LAMBDA: [], THETA: []}
    for L in all_lines(curve):
        out[L.kind].append(L)
    return out


def lines_through(F: GF, P: CurvePoint) -> list[ProjLine]:
    """The q^2 + 1 lines through a point of P^2."""
    if P.is_infinity:
        return [ProjLine(0, 1, w) for w in range(F.order)] + [ProjLine(0, 0, 1)]
    # lines through (x0, y0, 1): direction (0, 1), then (1, slope)
    out = {line_through(F, P, CurvePoint.affine(P.x, F.add(P.y, 1)))}
    for slope in range(F.order):
        # second point (x0 + 1, y0 + slope)
        R = CurvePoint.affine(F.add(P.x, 1), F.add(P.y, slope))
        out.add(line_through(F, P, R))
    return sorted(out)


def horizontal_line_counts(curve: CurveModel) -> dict[str, int]:
    """Horizontal lines y = a (a != 0) by how they meet the affine curve."""
    F = curve.field
    a = np.arange(1, F.order)
    tr = curve.trace[a]
    return {
        "horizontal_nonzero": int(a.size),
        "meeting_m_points": int((tr != 0).sum()) if curve.m > 1 else int(a.size),
        "tangent_at_x0": int((tr == 0).sum()),
    }


@dataclass(frozen=True)
class PlaneScheme:
    """Curvilinear scheme on the curve: affine lengths plus an optional reduced Pinf."""

    affine: tuple[tuple[CurvePoint, int], ...]
    at_infinity: bool = False

    @classmethod
    def from_divisor(cls, E: EffectiveDivisor, *, allow_fat_infinity: bool = False) -> "PlaneScheme":
        if E.at_infinity > 1 and not allow_fat_infinity:
            raise CurveError("non-reduced structure at the singular point is not supported")
        return cls(tuple(sorted(E.affine.items())), E.at_infinity > 0)

    @classmethod
    def of(cls, points=(), at_infinity=False) -> "PlaneScheme":
        mults: dict = {}
        for P in points:
            if P.is_infinity:
                at_infinity = True
            else:
                mults[P] = mults.get(P, 0) + 1
        return cls(tuple(sorted(mults.items())), at_infinity)

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.affine) + int(self.at_infinity)

    @property
    def reduced_points(self) -> list[CurvePoint]:
        pts = [P for P, _ in self.affine]
        return pts + ([INFINITY] if self.at_infinity else [])

    def union(self, other: "PlaneScheme") -> "PlaneScheme":
        d = dict(self.affine)
        for P, k in other.affine:
            d[P] = max(d.get(P, 0), k)
        return PlaneScheme(tuple(sorted(d.items())), self.at_infinity or other.at_infinity)

    def divisor(self) -> EffectiveDivisor:
        items = list(self.affine) + ([(INFINITY, 1)] if self.at_infinity else [])
        return EffectiveDivisor(items)

    def format(self, F: GF) -> str:
        parts = [f"{format_point(F, P)}:{k}" for P, k in self.affine]
        if self.at_infinity:
            parts.append("Pinf:1")
        return ";".join(parts)


@lru_cache(maxsize=4096)
def _linear_series(curve: CurveModel, P: CurvePoint, cap: int) -> np.ndarray:
    return monomial_series(curve, P, [(0, 0), (1, 0), (0, 1)], cap)


def _line_valuation(curve: CurveModel, L: ProjLine, P: CurvePoint, cap: int) -> int:
    """Order of vanishing of the line's affine equation at ``P``, capped at ``cap``."""
    F = curve.field
    if not L.contains(F, P):
        return 0
    if cap <= 1:
        return cap
    S = _linear_series(curve, P, cap)
    coeffs = np.array([L.w, L.u, L.v], dtype=np.int64)
    total = F.vsum(F.vmul(coeffs[:, None], S), axis=0)
    nz = np.flatnonzero(total)
    return int(nz[0]) if nz.size else cap


def line_scheme_degree(curve: CurveModel, L: ProjLine, E: PlaneScheme) -> int:
    """Length of the scheme-theoretic intersection ``L ∩ E``."""
    F = curve.field
    deg = 0
    for P, k in E.affine:
        if k > max_multiplicity(curve):
            raise CurveError(f"multiplicity {k} outside the supported scheme class")
        if L.contains(F, P):
            deg += min(k, _line_valuation(curve, L, P, k))
    if E.at_infinity and L.through_infinity():
        deg += 1
    return deg


def _candidate_lines(curve: CurveModel, E: PlaneScheme) -> list[ProjLine]:
    F = curve.field
    seen: set[ProjLine] = set()
    for P, _ in E.affine:
        seen.update(lines_through(F, P))
    if E.at_infinity:
        seen.update(lines_through(F, INFINITY))
    return sorted(seen)


def alpha_invariants(curve: CurveModel, E: PlaneScheme) -> tuple[int, int]:
    """``(max over horizontal lines y=a, a != 0, max over lines missing Pinf)`` of deg(L ∩ E)."""
    a1 = a2 = 0
    for L in _candidate_lines(curve, E):
        kind = L.kind
        if kind not in (LAMBDA, THETA):
            continue
        deg = line_scheme_degree(curve, L, E)
        if kind == LAMBDA:
            a1 = max(a1, deg)
        else:
            a2 = max(a2, deg)
    return a1, a2


# --- degree-d plane forms -----------------------------------------------------


def plane_monomials(d: int) -> list[tuple[int, int]]:
    """Exponents ``(a, b)`` of ``x^a y^b z^(d-a-b)``, graded by a + b then by b."""
    return [(e - b, b) for e in range(d + 1) for b in range(e + 1)]


def scheme_conditions(curve: CurveModel, Z: PlaneScheme, d: int) -> np.ndarray:
    """Linear conditions imposed by ``Z`` on degree-d forms (columns: plane_monomials(d))."""
    mons = plane_monomials(d)
    rows = []
    for P, k in Z.affine:
        if k > max_multiplicity(curve):
            raise CurveError(f"multiplicity {k} outside the supported scheme class")
        S = monomial_series(curve, P, mons, k - 1)
        rows.append(S[:, :k].T)
    if Z.at_infinity:
        # at (1:0:0) only x^d survives
        rows.append(np.array([[1 if (a, b) == (d, 0) else 0 for a, b in mons]], dtype=np.int64))
    if not rows:
        return np.zeros((0, len(mons)), dtype=np.int64)
    return np.vstack(rows)


def h1_ideal_sheaf(curve: CurveModel, Z: PlaneScheme, d: int) -> tuple[int, int]:
    """``(h^0, h^1)`` of the ideal sheaf of ``Z`` twisted by ``d``."""
    if d < 1:
        raise ValueError("d must be positive")
    M = scheme_conditions(curve, Z, d)
    rk = linalg.rank(curve.field, M) if M.shape[0] else 0
    return math.comb(d + 2, 2) - rk, Z.degree - rk


def line_excess_certificate(curve: CurveModel, Z: PlaneScheme, d: int) -> ProjLine | None:
    """A line with ``deg(L ∩ Z) >= d + 2``, or None."""
    for L in _candidate_lines(curve, Z):
        if line_scheme_degree(curve, L, Z) >= d + 2:
            return L
    return None


# --- support classification ---------------------------------------------------

HORIZONTAL, ON_L0, OTHER_LINE, NONCOLLINEAR = "horizontal", "L0", "other-line", "non-collinear"


def common_line(F: GF, points) -> ProjLine | None:
    """The line containing all ``points`` (at least two distinct), or None."""
    points = list(points)
    if len(points) < 2:
        return None
    L = line_through(F, points[0], points[1])
    return L if all(L.contains(F, P) for P in points[2:]) else None


def support_geometry(F: GF, points) -> str:
    L = common_line(F, points)
    if L is None:
        return NONCOLLINEAR
    kind = L.kind
    if kind == LAMBDA:
        return HORIZONTAL
    if kind == L0:
        return ON_L0
    return OTHER_LINE
