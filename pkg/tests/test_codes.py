import itertools

import numpy as np
import pytest

from quotcodes import linalg
from quotcodes.codes import (
    BudgetExceeded,
    Circuit,
    LinearCode,
    SymmetryData,
    binom,
    code_symmetries,
    codeword_from_circuit,
    dual,
    dual_min_distance,
    enumerate_circuits,
    evaluate_space,
    min_weight_codeword_count,
    parse_code,
    singleton_ok,
)
from quotcodes.construct import build_complete
from quotcodes.gf import field_of_order
from quotcodes.planegeom import HORIZONTAL, NONCOLLINEAR, support_geometry
from quotcodes.rrspace import rr_subspace

from conftest import brute_dual_distance, brute_dual_min_weight, scalar_rank


def test_constants_only_space(curves):
    curve = curves(5, 3)
    code = evaluate_space(rr_subspace(curve, 0), curve.affine_points)
    assert code.k == 1 and set(code.generator[0].tolist()) == {1}


def test_small_complete_code_and_dual(curves):
    curve = curves(5, 3)
    code = build_complete(curve, 1)
    assert (code.n, code.k) == (65, 3)
    assert scalar_rank(curve.field, code.generator) == 3
    D = dual(code)
    assert D.k == 62
    assert not curve.field.matmul(code.generator, D.generator.T).any()


def test_full_code_has_zero_dual():
    F = field_of_order(4)
    code = LinearCode(F, np.eye(5, dtype=np.int64))
    assert dual(code).k == 0


@pytest.mark.parametrize("q,m,d", [(3, 2, 1), (5, 2, 1), (5, 3, 1), (7, 4, 2), (8, 3, 1)])
def test_generator_dual_orthogonality(q, m, d, curves):
    code = build_complete(curves(q, m), d)
    D = dual(code)
    assert code.k + D.k == code.n
    assert not code.field.matmul(code.generator, D.generator.T).any()
    assert singleton_ok(code, dual_min_distance(code, 6).d_min)


def test_worked_example_distances(curves):
    assert dual_min_distance(build_complete(curves(5, 2), 1), 5).d_min == 4
    assert dual_min_distance(build_complete(curves(5, 3), 1), 5).d_min == 3


def test_repeated_column():
    F = field_of_order(9)
    G = np.array([[1, 2, 2, 5], [0, 3, 3, 1]])
    dd = dual_min_distance(LinearCode(F, G), 4)
    assert dd.d_min == 2 and dd.witness.indices == (1, 2)


def test_against_subset_oracle(curves):
    curve = curves(3, 2)
    code = build_complete(curve, 1)
    want, _ = brute_dual_distance(curve.field, code.generator, 5)
    assert dual_min_distance(code, 5).d_min == want


def test_random_codes_against_weight_enumeration():
    F = field_of_order(4)
    rng = np.random.default_rng(4)
    for _ in range(12):
        n, k = int(rng.integers(4, 8)), int(rng.integers(1, 4))
        G = rng.integers(0, 4, size=(k, n))
        if linalg.rank(F, G) < k:
            continue
        code = LinearCode(F, G)
        best, count = brute_dual_min_weight(F, G)
        dd = dual_min_distance(code, n)
        assert dd.d_min == best
        if best is not None:
            circuits = enumerate_circuits(code, best, best)
            assert (F.order - 1) * len(circuits) == count


def test_all_ones_code_pairs():
    F = field_of_order(8)
    code = LinearCode(F, np.ones((1, 9), dtype=np.int64))
    assert len(enumerate_circuits(code, 2)) == binom(9, 2)


def test_circuits_are_minimal_dependencies(curves):
    curve = curves(5, 2)
    F = curve.field
    code = build_complete(curve, 1)
    circuits = enumerate_circuits(code, 4, 4)
    assert circuits
    for c in circuits[:40]:
        cols = [code.generator[:, i].tolist() for i in c.indices]
        assert scalar_rank(F, cols) == 3
        for sub in itertools.combinations(cols, 3):
            assert scalar_rank(F, list(sub)) == 3
        v = codeword_from_circuit(code, c)
        assert np.count_nonzero(v) == 4 and c.coeffs[0] == 1
        assert not F.matmul(code.generator, v[:, None]).any()


def test_horizontal_triples_q8(curves):
    curve = curves(8, 3)
    F = curve.field
    code = build_complete(curve, 1)
    circuits = enumerate_circuits(code, 3, 3)
    assert len(circuits) == 56
    for c in circuits:
        assert support_geometry(F, [code.labels[i] for i in c.indices]) == HORIZONTAL


def test_truncated_count_against_exhaustive_coefficients(curves):
    """Codeword count on the first 30 columns by trying every coefficient vector on every support."""
    curve = curves(5, 3)
    F = curve.field
    code = build_complete(curve, 1).restrict(range(30))
    summary = min_weight_codeword_count(code)
    w = summary.d_min
    G = code.generator
    tails = np.array(list(itertools.product(range(1, F.order), repeat=w - 1)), dtype=np.int64)
    count = 0
    for S in itertools.combinations(range(code.n), w):
        block = G[:, S]
        # leading coefficient fixed to 1, every nonzero tail tried at once
        acc = np.broadcast_to(block[:, 0], (len(tails), G.shape[0]))
        for j in range(1, w):
            acc = F.vadd(acc, F.vmul(tails[:, j - 1 : j], block[:, j][None, :]))
        count += int((~acc.any(axis=1)).sum())
    assert summary.count == (F.order - 1) * count


def test_geometry_histograms(curves):
    s = min_weight_codeword_count(build_complete(curves(5, 3), 1))
    assert s.d_min == 3 and sum(s.geometry.values()) == len(s.circuits)
    assert s.geometry.get("other-line", 0) > 0
    t = min_weight_codeword_count(build_complete(curves(5, 2), 1))
    assert t.geometry.get(NONCOLLINEAR, 0) > 0


def test_symmetries_are_code_automorphisms(curves):
    curve = curves(7, 4)
    code = build_complete(curve, 2)
    perms = code_symmetries(code, curve.automorphisms())
    assert perms
    for p in perms:
        assert linalg.same_rowspace(code.field, code.generator, code.generator[:, p])
    sym = SymmetryData(perms, code.n)
    plain = dual_min_distance(code, 5)
    fast = dual_min_distance(code, 5, symmetry=sym)
    assert plain.d_min == fast.d_min == 4


def test_budget_is_enforced(curves):
    code = build_complete(curves(11, 6), 3)
    with pytest.raises(BudgetExceeded):
        dual_min_distance(code, 5, budget=1e6)


def test_export_round_trip(curves):
    code = build_complete(curves(5, 3), 1)
    back = parse_code(code.export())
    assert np.array_equal(back.generator, code.generator) and back.field is code.field
    assert code.export().splitlines()[0] == "65 3 GF(5^2)"


def test_rejects_infinity_and_empty(curves):
    curve = curves(5, 3)
    with pytest.raises(ValueError):
        evaluate_space(rr_subspace(curve, 5), curve.points)
    with pytest.raises(ValueError):
        evaluate_space(rr_subspace(curve, 5), [])


def test_circuit_dataclass_size():
    assert Circuit((1, 4, 7), (1, 2, 3)).size == 3
