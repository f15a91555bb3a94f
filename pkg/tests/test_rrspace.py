import random

import pytest

from quotcodes import linalg
from quotcodes.curve import INFINITY, CurveError, eval_poly, pole_order, valuation
from quotcodes.rrspace import (
    EffectiveDivisor,
    Monomial,
    equivalence_function,
    monomial_basis,
    parse_divisor,
    rr_subspace,
)

from conftest import scalar_rank


def test_basis_examples(curves):
    assert monomial_basis(curves(5, 3), 5) == [Monomial(0, 0), Monomial(0, 1), Monomial(1, 0)]
    assert set(monomial_basis(curves(5, 2), 5)) == {Monomial(0, 0), Monomial(0, 1), Monomial(0, 2), Monomial(1, 0)}
    assert monomial_basis(curves(8, 3), 0) == [Monomial(0, 0)]
    assert monomial_basis(curves(8, 3), -1) == []


@pytest.mark.parametrize("q,m", [(3, 2), (5, 2), (5, 3), (7, 4), (8, 3), (9, 5), (11, 6)])
def test_basis_grows_by_at_most_one(q, m, curves):
    curve = curves(q, m)
    sizes = [len(monomial_basis(curve, r)) for r in range(3 * q + 1)]
    assert all(b - a in (0, 1) for a, b in zip(sizes, sizes[1:]))
    # Riemann-Roch once r exceeds 2g - 2
    for r in range(2 * curve.genus - 1, 3 * q + 1):
        if r >= 0:
            assert sizes[r] == r - curve.genus + 1


def test_full_space_when_no_conditions(curves):
    curve = curves(7, 4)
    sp = rr_subspace(curve, 9)
    assert sp.dim == len(monomial_basis(curve, 9))


def test_one_point_condition(curves):
    curve = curves(5, 3)
    for P in curve.affine_points[::9]:
        assert rr_subspace(curve, 5, EffectiveDivisor({P: 1})).dim == 2


def test_reduced_conditions_match_scalar_rank(curves):
    """dim L(rQ - A) for reduced A equals basis size minus the rank of the evaluation block."""
    curve = curves(7, 4)
    F = curve.field
    rng = random.Random(5)
    for _ in range(8):
        r = rng.randrange(8, 30)
        pts = rng.sample(list(curve.affine_points), rng.randrange(1, 8))
        mons = monomial_basis(curve, r)
        block = [[int(eval_poly(F, {tuple(mo): 1}, [P.x], [P.y])[0]) for mo in mons] for P in pts]
        want = len(mons) - scalar_rank(F, block)
        assert rr_subspace(curve, r, EffectiveDivisor({P: 1 for P in pts})).dim == want


def test_rows_vanish_to_prescribed_order(curves):
    curve = curves(7, 4)
    rng = random.Random(9)
    pts = rng.sample(list(curve.affine_points), 3)
    A = EffectiveDivisor({pts[0]: 3, pts[1]: 2, pts[2]: 1})
    sp = rr_subspace(curve, 30, A)
    assert linalg.rank(curve.field, sp.coeffs) == sp.dim
    for f in sp.polys():
        for P, k in A.items():
            assert valuation(curve, f, P) >= k


def test_divisor_monotonicity(curves):
    curve = curves(8, 3)
    P, R = curve.affine_points[10], curve.affine_points[40]
    small = rr_subspace(curve, 20, EffectiveDivisor({P: 1}))
    big = rr_subspace(curve, 20, EffectiveDivisor({P: 2, R: 1}))
    assert small.monomials == big.monomials
    assert linalg.rowspace_contains(curve.field, small.coeffs, big.coeffs)


def test_pole_at_infinity_lowers_r(curves):
    curve = curves(5, 3)
    assert rr_subspace(curve, 10, EffectiveDivisor({INFINITY: 1})).dim == len(monomial_basis(curve, 9))


def test_equivalence_function_divisor(curves):
    curve = curves(5, 3)
    for P in curve.affine_points[::6]:
        h = equivalence_function(curve, P, 1)
        assert valuation(curve, h, P) == 6 and pole_order(curve, h) == 6
        others = sum(valuation(curve, h, R) for R in curve.affine_points if R != P)
        assert others == 0


def test_y_has_divisor_m_origin(curves):
    curve = curves(7, 4)
    y = {(0, 1): 1}
    assert valuation(curve, y, curve.origin) == 4 and pole_order(curve, y) == 4
    assert sum(valuation(curve, y, R) for R in curve.affine_points if R != curve.origin) == 0


def test_scaled_function_same_divisor(curves):
    curve = curves(5, 3)
    F = curve.field
    P = curve.affine_points[7]
    h = equivalence_function(curve, P, 1)
    ch = {k: F.mul(9, v) for k, v in h.items()}
    assert valuation(curve, ch, P) == valuation(curve, h, P)


def test_equivalence_function_rejects_infinity(curves):
    with pytest.raises(CurveError):
        equivalence_function(curves(5, 3), INFINITY, 1)


def test_divisor_parsing(curves):
    F = curves(5, 3).field
    E = parse_divisor(F, "(0, 0):2; Pinf")
    assert E.degree == 3 and E.at_infinity == 1 and len(E.affine) == 1
    with pytest.raises(ValueError):
        EffectiveDivisor({INFINITY: -1})
