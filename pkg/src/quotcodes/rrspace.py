"""Riemann-Roch spaces L(r Qinf - A) through the monomial basis x^i y^j.

``x^i y^j`` with ``j < q`` has pole order ``q i + m j`` at infinity and these
weights are distinct, so ``L(r Qinf)`` is spanned by the monomials of weight
at most ``r``.  Vanishing at an affine point ``P`` to order ``k`` means the
first ``k`` coefficients of the branch series at ``P`` vanish; these jet
conditions cut out ``L(r Qinf - A)`` as a kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from . import linalg
from .curve import (
    INFINITY,
    CurveError,
    CurveModel,
    CurvePoint,
    Poly,
    format_point,
    monomial_series,
    parse_point,
    pole_order,
    valuation,
)


class Monomial(NamedTuple):
    i: int
    j: int

    def weight(self, curve: CurveModel) -> int:
        return curve.q * self.i + curve.m * self.j


def monomial_basis(curve: CurveModel, r: int) -> list[Monomial]:
    """Monomials spanning L(r Qinf), sorted by (pole order, j)."""
    if r < 0:
        return []
    q, m = curve.q, curve.m
    out = [Monomial(i, j) for j in range(q) for i in range((r - m * j) // q + 1) if m * j <= r]
    return sorted(out, key=lambda mo: (mo.weight(curve), mo.j))


class EffectiveDivisor(Mapping):
    """Finite multiplicity map ``CurvePoint -> positive int``."""

    def __init__(self, mults: Mapping[CurvePoint, int] | Iterable[tuple[CurvePoint, int]] = ()):
        items = mults.items() if isinstance(mults, Mapping) else mults
        acc: dict[CurvePoint, int] = {}
        for P, k in items:
            if k < 0:
                raise ValueError(f"negative multiplicity {k} in an effective divisor")
            acc[P] = acc.get(P, 0) + int(k)
        self._m = {P: k for P, k in sorted(acc.items()) if k}

    def __getitem__(self, P):
        return self._m.get(P, 0)

    def __iter__(self):
        return iter(self._m)

    def __len__(self):
        return len(self._m)

    def __eq__(self, other):
        return isinstance(other, EffectiveDivisor) and self._m == other._m

    def __hash__(self):
        return hash(tuple(self._m.items()))

    def __repr__(self):
        return f"EffectiveDivisor({self._m!r})"

    @property
    def degree(self) -> int:
        return sum(self._m.values())

    @property
    def at_infinity(self) -> int:
        return self._m.get(INFINITY, 0)

    @property
    def affine(self) -> dict[CurvePoint, int]:
        return {P: k for P, k in self._m.items() if not P.is_infinity}

    def support(self) -> list[CurvePoint]:
        return list(self._m)

    def __le__(self, other: "EffectiveDivisor") -> bool:
        return all(other[P] >= k for P, k in self._m.items())

    def __add__(self, other: "EffectiveDivisor") -> "EffectiveDivisor":
        return EffectiveDivisor(list(self._m.items()) + list(other._m.items()))

    def check(self, curve: CurveModel) -> None:
        for P in self._m:
            curve.check_point(P)

    def to_json(self, F) -> list:
        return [[format_point(F, P), k] for P, k in self._m.items()]


def parse_divisor(F, text: str) -> EffectiveDivisor:
    """Parse ``"point:mult;point:mult"``; a bare point means multiplicity 1."""
    items = []
    for part in filter(None, (s.strip() for s in text.split(";"))):
        head, sep, tail = part.rpartition(":")
        if sep and tail.strip().isdigit():
            items.append((parse_point(F, head), int(tail)))
        else:
            items.append((parse_point(F, part), 1))
    return EffectiveDivisor(items)


@dataclass
class FunctionSpace:
    """A subspace of L(r Qinf): rows of ``coeffs`` are coordinates on ``monomials``."""

    curve: CurveModel
    r: int
    monomials: list[Monomial]
    coeffs: np.ndarray
    divisor: EffectiveDivisor

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def polys(self) -> list[Poly]:
        return [
            {tuple(mo): int(c) for mo, c in zip(self.monomials, row) if c} for row in self.coeffs
        ]

    def export(self) -> str:
        F = self.curve.field
        A = "; ".join(f"{k}*{format_point(F, P)}" for P, k in self.divisor.items()) or "0"
        lines = [f"L({self.r}Qinf - {A})"]
        for row in self.coeffs:
            lines.append(
                " ".join(f"({mo.i},{mo.j}):{F.format(int(c))}" for mo, c in zip(self.monomials, row) if c)
            )
        return "\n".join(lines) + "\n"


# Affine multiplicities above this need series beyond the supported truncation.
def max_multiplicity(curve: CurveModel) -> int:
    return 4 * (curve.q + curve.m)


def jet_matrix(curve: CurveModel, monomials, A: Mapping[CurvePoint, int]) -> np.ndarray:
    """Rows: the first ``A(P)`` series coefficients at each affine ``P``; columns: monomials."""
    rows = []
    cap = max_multiplicity(curve)
    for P, k in sorted(A.items()):
        if P.is_infinity or k == 0:
            continue
        if k > cap:
            raise CurveError(f"multiplicity {k} exceeds the truncation bound {cap}")
        S = monomial_series(curve, P, monomials, k - 1)
        rows.append(S[:, :k].T)
    if not rows:
        return np.zeros((0, len(monomials)), dtype=np.int64)
    return np.vstack(rows)


def rr_subspace(curve: CurveModel, r: int, A: EffectiveDivisor | None = None) -> FunctionSpace:
    """Basis of L(r Qinf - A); multiplicity at infinity lowers the pole bound."""
    A = A if A is not None else EffectiveDivisor()
    A.check(curve)
    r_eff = r - A.at_infinity
    monomials = monomial_basis(curve, r_eff)
    if not monomials:
        return FunctionSpace(curve, r, [], np.zeros((0, 0), dtype=np.int64), A)
    J = jet_matrix(curve, monomials, A.affine)
    K = linalg.nullspace(curve.field, J, ncols=len(monomials))
    return FunctionSpace(curve, r, monomials, K, A)


def equivalence_function(curve: CurveModel, P: CurvePoint, t: int) -> Poly:
    """Nonzero ``h`` with divisor ``t(q+1) P - t(q+1) Qinf``.

    ``L(t(q+1) Qinf - t(q+1) P)`` is one-dimensional on this maximal curve;
    any other dimension is reported as an error rather than hidden.
    """
    if P.is_infinity:
        raise CurveError("the equivalence function is taken at an affine point")
    if t < 1:
        raise CurveError("t must be positive")
    n = t * (curve.q + 1)
    if n > max_multiplicity(curve):
        raise CurveError(f"t(q+1) = {n} exceeds the truncation bound")
    space = rr_subspace(curve, n, EffectiveDivisor({P: n}))
    if space.dim != 1:
        raise CurveError(
            f"L({n}Qinf - {n}P) has dimension {space.dim} at {format_point(curve.field, P)}; expected 1"
        )
    h = space.polys()[0]
    v_p = valuation(curve, h, P)
    if v_p != n or pole_order(curve, h) != n:
        raise CurveError(f"equivalence function has v_P = {v_p}, pole order {pole_order(curve, h)}")  # pragma: no cover
    return h
