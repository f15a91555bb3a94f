"""Randomized invariants."""

import itertools
from functools import lru_cache

import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from quotcodes import linalg
from quotcodes.codes import LinearCode, codeword_from_circuit, dual, dual_min_distance, enumerate_circuits
from quotcodes.construct import strong_isometry_check
from quotcodes.curve import build_curve, poly_mul, reduce_poly, valuation
from quotcodes.gf import field_of_order, trace_codes
from quotcodes.planegeom import PlaneScheme, h1_ideal_sheaf, line_excess_certificate
from quotcodes.rrspace import EffectiveDivisor, monomial_basis, rr_subspace

from conftest import brute_dual_distance, scalar_rank

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

field_orders = st.sampled_from([4, 8, 9, 16, 25, 49, 64, 121])
curve_params = st.sampled_from([(3, 2), (5, 2), (5, 3), (7, 4), (8, 3)])


@lru_cache(maxsize=None)
def curve_of(q, m):
    return build_curve(q, m)


@SETTINGS
@given(field_orders, st.data())
def test_field_axioms(Q, data):
    F = field_of_order(Q)
    a, b, c = (data.draw(st.integers(0, Q - 1)) for _ in range(3))
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0 and F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == F.one and F.div(F.mul(a, b), a) == b
        assert F.pow(a, Q - 1) == F.one


@SETTINGS
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 11]), st.data())
def test_relative_trace_is_linear_onto_subfield(q, data):
    F = field_of_order(q * q)
    tr = trace_codes(F, q)
    sub = set(F.subfield_codes(q).tolist())
    a, b = data.draw(st.integers(0, F.order - 1)), data.draw(st.integers(0, F.order - 1))
    c = data.draw(st.sampled_from(sorted(sub)))
    assert int(tr[a]) in sub
    assert tr[F.add(a, b)] == F.add(int(tr[a]), int(tr[b]))
    assert tr[F.mul(c, a)] == F.mul(c, int(tr[a]))


polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(1, 24), min_size=1, max_size=4)


@SETTINGS
@given(curve_params, polys, polys, st.data())
def test_valuation_is_additive(qm, f, g, data):
    curve = curve_of(*qm)
    F = curve.field
    f = reduce_poly(curve, {k: 1 + (v - 1) % (F.order - 1) for k, v in f.items()})
    g = reduce_poly(curve, {k: 1 + (v - 1) % (F.order - 1) for k, v in g.items()})
    assume(f and g)
    P = data.draw(st.sampled_from(curve.points))
    fg = reduce_poly(curve, poly_mul(F, f, g))
    assert valuation(curve, fg, P) == valuation(curve, f, P) + valuation(curve, g, P)


@SETTINGS
@given(curve_params, st.integers(0, 40))
def test_basis_increments_by_zero_or_one(qm, r):
    curve = curve_of(*qm)
    assert len(monomial_basis(curve, r + 1)) - len(monomial_basis(curve, r)) in (0, 1)


@SETTINGS
@given(st.sampled_from([(5, 3), (7, 4)]), st.integers(4, 25), st.data())
def test_larger_divisor_gives_subspace(qm, r, data):
    curve = curve_of(*qm)
    pts = data.draw(st.lists(st.sampled_from(curve.affine_points), min_size=1, max_size=3, unique=True))
    small = EffectiveDivisor({P: 1 for P in pts})
    extra = data.draw(st.sampled_from(curve.affine_points))
    big = small + EffectiveDivisor({extra: 1})
    A, B = rr_subspace(curve, r, small), rr_subspace(curve, r, big)
    assert B.dim <= A.dim <= B.dim + 1
    assert B.dim == 0 or linalg.rowspace_contains(curve.field, A.coeffs, B.coeffs)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3]), st.data())
def test_h1_positive_iff_heavy_line(d, data):
    curve = curve_of(7, 4)
    pts = data.draw(st.lists(st.sampled_from(curve.affine_points), min_size=1, max_size=2 * d + 1, unique=True))
    mults = [data.draw(st.integers(1, 2)) for _ in pts]
    while sum(mults) > 2 * d + 1:
        mults[mults.index(max(mults))] -= 1
    Z = PlaneScheme(tuple(sorted((P, k) for P, k in zip(pts, mults) if k)))
    assume(Z.degree)
    _, h1 = h1_ideal_sheaf(curve, Z, d)
    assert (h1 > 0) == (line_excess_certificate(curve, Z, d) is not None)


def random_code(data, Q):
    F = field_of_order(Q)
    k = data.draw(st.integers(1, 3))
    n = data.draw(st.integers(k + 1, 7))
    G = np.array(data.draw(st.lists(st.lists(st.integers(0, Q - 1), min_size=n, max_size=n), min_size=k, max_size=k)), dtype=np.int64)
    return F, G


@SETTINGS
@given(st.sampled_from([4, 5, 9]), st.data())
def test_dual_distance_matches_subset_search(Q, data):
    F, G = random_code(data, Q)
    want, _ = brute_dual_distance(F, G)
    assert dual_min_distance(LinearCode(F, G), G.shape[1]).d_min == want


@SETTINGS
@given(st.sampled_from([4, 5, 9]), st.data())
def test_dimensions_add_up(Q, data):
    F, G = random_code(data, Q)
    code = LinearCode(F, G)
    D = dual(code)
    assert code.k == scalar_rank(F, G.tolist())
    assert code.k + D.k == code.n
    assert not F.matmul(code.generator, D.generator.T).any()


@SETTINGS
@given(st.sampled_from([4, 9]), st.data())
def test_circuits_are_minimal(Q, data):
    F, G = random_code(data, Q)
    code = LinearCode(F, G)
    dd = dual_min_distance(code, code.n)
    assume(dd.d_min is not None and dd.d_min > 1)
    for c in enumerate_circuits(code, dd.d_min, dd.d_min):
        cols = [G[:, i].tolist() for i in c.indices]
        assert scalar_rank(F, cols) == len(cols) - 1
        for sub in itertools.combinations(cols, len(cols) - 1):
            assert scalar_rank(F, list(sub)) == len(cols) - 1
        assert not F.matmul(G, codeword_from_circuit(code, c)[:, None]).any()


@SETTINGS
@given(st.sampled_from([4, 9, 25]), st.data())
def test_isometry_round_trip(Q, data):
    F, G = random_code(data, Q)
    code = LinearCode(F, G)
    x = np.array(data.draw(st.lists(st.integers(1, Q - 1), min_size=code.n, max_size=code.n)), dtype=np.int64)
    scaled = LinearCode(F, linalg.scale_columns(F, code.generator, x))
    assert strong_isometry_check(scaled, code, x)
    assert strong_isometry_check(code, scaled, F.inv_table[x])
    a, b = dual_min_distance(code, code.n), dual_min_distance(scaled, code.n)
    assert a.d_min == b.d_min
