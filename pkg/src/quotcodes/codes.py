"""Linear codes over GF(q^2) and the minimal-dependent-column-set engine.

The dual minimum distance of a code is the size of its smallest dependent
set of generator columns.  The search is level by level: once every set of
size ``w - 1`` is known to be independent, a dependent ``w``-set
``S + {j, l1, l2}`` exists iff ``l1`` and ``l2`` have proportional residues
modulo ``span(S + {j})``.  Residues are normalized projectively and hashed
so that one vectorized pass per prefix ``S`` finds all such pairs; every
hash collision is re-checked exactly before it is reported.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .curve import CurvePoint, eval_poly, format_point
from .gf import GF
from .planegeom import support_geometry

# elements per vectorized chunk in the level scan
_CHUNK = 1 << 21


@dataclass
class LinearCode:
    """Generator matrix (rows span the code) with one curve point label per column."""

    field: GF
    generator: np.ndarray
    labels: tuple[CurvePoint, ...] | None = None

    def __post_init__(self):
        self.generator = np.array(self.generator, dtype=np.int64, ndmin=2)
        if self.generator.shape[0] == 0:
            self.generator = self.generator.reshape(0, len(self.labels) if self.labels else self.generator.shape[1])
        else:
            # k is the dimension, so dependent rows are dropped
            keep = linalg.independent_rows(self.field, self.generator)
            if len(keep) < self.generator.shape[0]:
                self.generator = self.generator[keep].reshape(len(keep), self.generator.shape[1])
        if self.labels is not None:
            self.labels = tuple(self.labels)
            if len(self.labels) != self.generator.shape[1]:
                raise ValueError("one label per column required")
            if len(set(self.labels)) != len(self.labels):
                raise ValueError("labels must be distinct")

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over {self.field.name})"

    def export(self) -> str:
        F = self.field
        lines = [f"{self.n} {self.k} {F.name}"]
        lines += [" ".join(F.format(int(c)) for c in row) for row in self.generator]
        return "\n".join(lines) + "\n"

    def restrict(self, columns: Sequence[int]) -> "LinearCode":
        """Puncture to ``columns`` (rows kept independent)."""
        G = self.generator[:, list(columns)]
        keep = linalg.independent_rows(self.field, G)
        labels = tuple(self.labels[i] for i in columns) if self.labels else None
        return LinearCode(self.field, G[keep], labels)


def parse_code(text: str) -> LinearCode:
    from .gf import field_of_order

    lines = [ln.split() for ln in text.strip().splitlines()]
    n, k, name = int(lines[0][0]), int(lines[0][1]), lines[0][2]
    p, e = name[3:-1].split("^")
    F = field_of_order(int(p) ** int(e))
    G = np.array([[F.parse(tok) for tok in row] for row in lines[1 : 1 + k]], dtype=np.int64)
    return LinearCode(F, G.reshape(k, n))


@dataclass(frozen=True)
class Circuit:
    """Minimal dependent column set and its normalized dependency coefficients."""

    indices: tuple[int, ...]
    coeffs: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.indices)


@dataclass
class DualDistance:
    """Result of :func:`dual_min_distance`; ``d_min`` is None when it exceeds ``w_max``."""

    d_min: int | None
    witness: Circuit | None
    w_max: int
    levels_checked: list[int] = field(default_factory=list)

    @property
    def lower_bound(self) -> int:
        return self.d_min if self.d_min is not None else self.w_max + 1

    def describe(self) -> str:
        return str(self.d_min) if self.d_min is not None else f"> {self.w_max}"


# --- construction helpers -------------------------------------------------------


def monomial_evaluations(F: GF, monomials, points: Sequence[CurvePoint]) -> np.ndarray:
    xs = np.array([P.x for P in points], dtype=np.int64)
    ys = np.array([P.y for P in points], dtype=np.int64)
    return np.vstack([eval_poly(F, {tuple(mo): 1}, xs, ys) for mo in monomials]) if len(monomials) else np.zeros((0, len(points)), dtype=np.int64)


def evaluate_space(space, points: Sequence[CurvePoint]) -> LinearCode:
    """Evaluate the basis of ``space`` (monomials + coefficient rows) at affine ``points``.

    Dependent rows are dropped, so ``k`` equals the rank of the evaluation map.
    """
    F = space.curve.field
    points = list(points)
    if not points:
        raise ValueError("empty evaluation point set")
    if any(P.is_infinity for P in points):
        raise ValueError("the point at infinity is never an evaluation point")
    if space.coeffs.shape[0] == 0:
        return LinearCode(F, np.zeros((0, len(points)), dtype=np.int64), tuple(points))
    E = monomial_evaluations(F, space.monomials, points)
    G = F.matmul(space.coeffs, E)
    zero_rows = np.flatnonzero(~G.any(axis=1))
    if zero_rows.size:
        raise ValueError(f"basis function {int(zero_rows[0])} vanishes on every evaluation point")
    keep = linalg.independent_rows(F, G)
    return LinearCode(F, G[keep], tuple(points))


def dual(code: LinearCode) -> LinearCode:
    """Generator of the dual code (null space of the generator matrix)."""
    F = code.field
    if code.k == 0:
        H = np.eye(code.n, dtype=np.int64)
    else:
        H = linalg.nullspace(F, code.generator)
    return LinearCode(F, H, code.labels)


# --- vectorized projective normalization and hashing ----------------------------


def _normalize(F: GF, R: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Scale each vector along axis -2 so its first nonzero entry is 1."""
    nz = R != 0
    first = nz.argmax(axis=-2)
    lead = np.take_along_axis(R, first[..., None, :], axis=-2)
    return F.vmul(R, F.inv_table[lead]), ~nz.any(axis=-2)


def _hash_vectors(V: np.ndarray, H: np.ndarray) -> np.ndarray:
    shape = [1] * V.ndim
    shape[-2] = H.size
    return (V.astype(np.uint64) * H.reshape(shape)).sum(axis=-2, dtype=np.uint64)


def _hash_weights(k: int) -> np.ndarray:
    return np.random.default_rng(0x5EED).integers(1, 2**63, size=k, dtype=np.uint64) * np.uint64(2) + np.uint64(1)


def _residual_basis(F: GF, M: np.ndarray, S: Sequence[int]) -> np.ndarray:
    """Columns of ``M`` reduced modulo span of the columns ``S`` (assumed independent)."""
    R = M.copy()
    for s in S:
        col = R[:, s]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            raise _SmallerDependency(tuple(S))
        p = int(nz[0])
        b = F.vmul(col, F.inv(int(col[p])))
        R = F.vsub(R, F.vmul(b[:, None], R[p][None, :]))
    return R


class _SmallerDependency(Exception):
    pass


def _collision_groups(keys_row: np.ndarray) -> list[np.ndarray]:
    order = np.argsort(keys_row, kind="stable")
    sk = keys_row[order]
    eq = sk[1:] == sk[:-1]
    if not eq.any():
        return []
    groups = []
    start = None
    for i, e in enumerate(eq):
        if e and start is None:
            start = i
        elif not e and start is not None:
            groups.append(order[start : i + 1])
            start = None
    if start is not None:
        groups.append(order[start:])
    return groups


def _scan_level(
    F: GF,
    M: np.ndarray,
    w: int,
    prefixes: Iterable[tuple[int, ...]] | None = None,
    *,
    ordered: bool = True,
    j_choices: Sequence[int] | None = None,
    collect: bool = True,
) -> list[tuple[int, ...]]:
    """Candidate dependent ``w``-sets (w >= 3), assuming no dependent set of size < w.

    Ordered mode walks ``S < j < l1 < l2`` so each set appears once.  The
    unordered mode, used with symmetry, only requires ``j`` and ``l`` to be
    outside the prefix; sets may then repeat, which is harmless for existence.
    """
    k, n = M.shape
    H = _hash_weights(k)
    found: list[tuple[int, ...]] = []
    if prefixes is None:
        prefixes = itertools.combinations(range(n), w - 3)
    cols = np.arange(n)
    sentinel = np.uint64(1 << 63) + cols.astype(np.uint64)
    step = max(1, _CHUNK // max(1, k * n))
    for S in prefixes:
        S = tuple(S)
        R = _residual_basis(F, M, S)
        if j_choices is not None:
            js = np.array([j for j in j_choices if j not in S], dtype=np.int64)
        elif ordered:
            js = np.arange((max(S) + 1) if S else 0, n)
        else:
            js = np.setdiff1d(cols, S)
        for c0 in range(0, js.size, step):
            J = js[c0 : c0 + step]
            Rj = R[:, J]
            Rjn, zero_j = _normalize(F, Rj)
            if zero_j.any():
                raise _SmallerDependency(S + (int(J[np.flatnonzero(zero_j)[0]]),))
            piv = (Rj != 0).argmax(axis=0)
            coef = R[piv, :]  # (J, n)
            R2 = F.vsub(R[None, :, :], F.vmul(coef[:, None, :], Rjn.T[:, :, None]))
            N2, zero = _normalize(F, R2)
            keys = _hash_vectors(N2, H)
            if ordered:
                valid = cols[None, :] > J[:, None]
            else:
                valid = cols[None, :] != J[:, None]
            if S:
                valid[:, list(S)] = False
            if (zero & valid).any():
                b, l = np.argwhere(zero & valid)[0]
                raise _SmallerDependency(S + (int(J[b]), int(l)))
            keys = np.where(valid, keys, sentinel[None, :])
            srt = np.sort(keys, axis=1)
            hit_rows = np.flatnonzero((srt[:, 1:] == srt[:, :-1]).any(axis=1))
            for b in hit_rows:
                j = int(J[b])
                for grp in _collision_groups(keys[b]):
                    grp = [int(l) for l in grp if valid[b, l]]
                    # hash collisions are split by exact vector equality
                    exact: dict[tuple, list[int]] = {}
                    for l in grp:
                        exact.setdefault(tuple(N2[b, :, l]), []).append(l)
                    for members in exact.values():
                        for l1, l2 in itertools.combinations(sorted(members), 2):
                            found.append(tuple(sorted(S + (j, l1, l2))))
                            if not collect:
                                return found
    return found


def _proportional_pairs(F: GF, M: np.ndarray) -> list[tuple[int, int]]:
    N, zero = _normalize(F, M[None])
    N, zero = N[0], zero[0]
    groups: dict[tuple, list[int]] = {}
    for i in range(M.shape[1]):
        if not zero[i]:
            groups.setdefault(tuple(N[:, i]), []).append(i)
    return [pair for g in groups.values() for pair in itertools.combinations(g, 2)]


def _circuit_from(F: GF, M: np.ndarray, idx: Sequence[int], *, check_minimal: bool = True) -> Circuit | None:
    idx = tuple(sorted(idx))
    sub = M[:, list(idx)]
    w = len(idx)
    if linalg.rank(F, sub) != w - 1:
        return None
    if check_minimal and w > 1:
        for drop in range(w):
            rest = [c for c in range(w) if c != drop]
            if linalg.rank(F, sub[:, rest]) != w - 1:
                return None
    K = linalg.nullspace(F, sub)
    if K.shape[0] != 1:
        return None  # pragma: no cover
    v = K[0]
    if not v.all():
        return None
    v = F.vmul(v, F.inv(int(v[0])))
    return Circuit(idx, tuple(int(c) for c in v))


def is_dependent(F: GF, M: np.ndarray, idx: Sequence[int]) -> bool:
    return linalg.rank(F, M[:, list(idx)]) < len(idx)


def _level_witness(F: GF, M: np.ndarray, w: int, sym: "SymmetryData | None") -> tuple[int, ...] | None:
    if w == 1:
        zero = np.flatnonzero(~M.any(axis=0))
        return (int(zero[0]),) if zero.size else None
    if w == 2:
        pairs = _proportional_pairs(F, M)
        return pairs[0] if pairs else None
    if sym is None:
        cands = _scan_level(F, M, w, collect=False)
    elif w == 3:
        cands = _scan_level(F, M, 3, [()], ordered=False, j_choices=sym.point_reps, collect=False)
    else:
        reps = sym.subset_reps(w - 3)
        if reps is None:
            cands = _scan_level(F, M, w, collect=False)
        else:
            cands = _scan_level(F, M, w, reps, ordered=False, collect=False)
    return cands[0] if cands else None


def level_cost(n: int, k: int, w: int, sym: "SymmetryData | None" = None) -> int:
    """Rough number of field operations to clear level ``w`` exhaustively."""
    if w <= 2:
        return n * k
    if sym is not None:
        if w == 3:
            return len(sym.point_reps) * n * n * k
        count = sym.subset_rep_count(w - 3)
        if count is not None:
            return count * n * n * k
    return binom(n, w - 3) * n * n * k // 2


def dual_min_distance(
    code: LinearCode,
    w_max: int,
    *,
    hints: Iterable[Sequence[int]] = (),
    symmetry: "Sequence[np.ndarray] | SymmetryData | None" = None,
    budget: int | None = None,
) -> DualDistance:
    """Smallest dependent column set of ``code`` (exhaustive up to ``w_max``).

    ``hints`` are candidate column sets tried before the exhaustive scan of a
    level; any dependent hint at the first level with dependencies is a
    genuine witness because all smaller levels were cleared exhaustively.
    ``symmetry`` lists column permutations preserving the code (see
    :func:`code_symmetries`); a level then only needs prefixes that are orbit
    representatives.  A level whose estimated cost exceeds ``budget`` raises
    :class:`BudgetExceeded`.
    """
    if w_max < 1:
        raise ValueError("w_max must be positive")
    F, M = code.field, code.generator
    hints = [tuple(sorted(h)) for h in hints]
    sym = symmetry if isinstance(symmetry, SymmetryData) or symmetry is None else SymmetryData(symmetry, code.n)
    if sym is not None and not sym.perms:
        sym = None
    checked: list[int] = []
    for w in range(1, min(w_max, code.k + 1) + 1):
        idx = next((h for h in hints if len(h) == w and is_dependent(F, M, h)), None)
        if idx is None:
            if budget is not None and level_cost(code.n, code.k, w, sym) > budget:
                raise BudgetExceeded(w, level_cost(code.n, code.k, w, sym), budget, checked)
            idx = _level_witness(F, M, w, sym)
        if idx is not None:
            circ = _circuit_from(F, M, idx)
            if circ is None:
                raise RuntimeError(f"witness {idx} failed exact re-check")  # pragma: no cover
            return DualDistance(w, circ, w_max, checked)
        checked.append(w)
    if code.k + 1 <= w_max and code.n > code.k:
        raise RuntimeError("no dependency among k + 1 columns")  # pragma: no cover
    return DualDistance(None, None, w_max, checked)


class BudgetExceeded(RuntimeError):
    def __init__(self, w: int, cost: int, budget: int, checked: list[int]):
        super().__init__(f"level {w} needs ~{cost:.3g} operations, budget {budget:.3g}")
        self.w, self.cost, self.budget, self.checked = w, cost, budget, list(checked)


def enumerate_circuits(code: LinearCode, w: int, d_min: int | None = None) -> list[Circuit]:
    """All circuits of size ``w`` where ``w`` is the dual minimum distance.

    For ``w`` below the dual minimum distance the result is empty.
    """
    F, M = code.field, code.generator
    if d_min is None:
        d_min = dual_min_distance(code, w).d_min
        if d_min is None:
            return []
    if w < d_min:
        return []
    if w > d_min:
        raise ValueError(f"circuit enumeration needs w == dual distance ({d_min}), got {w}")
    if w == 1:
        cands = [(int(i),) for i in np.flatnonzero(~M.any(axis=0))]
    elif w == 2:
        cands = _proportional_pairs(F, M)
    else:
        cands = _scan_level(F, M, w, collect=True)
    out = []
    for idx in sorted(set(cands)):
        circ = _circuit_from(F, M, idx)
        if circ is None:
            raise RuntimeError(f"candidate {idx} failed exact re-check")  # pragma: no cover
        out.append(circ)
    return out


@dataclass
class MinWeightSummary:
    d_min: int
    circuits: list[Circuit]
    count: int
    geometry: dict[str, int]

    @property
    def supports(self) -> list[tuple[int, ...]]:
        return [c.indices for c in self.circuits]


def min_weight_codeword_count(code: LinearCode, d_min: int | None = None, *, w_max: int = 8) -> MinWeightSummary:
    """Number of minimum-weight dual codewords, their supports, and support geometry.

    Each circuit carries a one-dimensional dependency space, so it supports
    exactly ``Q - 1`` minimum-weight codewords.
    """
    if d_min is None:
        dd = dual_min_distance(code, w_max)
        if dd.d_min is None:
            raise ValueError(f"dual distance exceeds w_max = {w_max}")
        d_min = dd.d_min
    circuits = enumerate_circuits(code, d_min, d_min)
    geometry: Counter = Counter()
    if code.labels is not None:
        for c in circuits:
            geometry[support_geometry(code.field, [code.labels[i] for i in c.indices])] += 1
    return MinWeightSummary(d_min, circuits, (code.field.order - 1) * len(circuits), dict(sorted(geometry.items())))


def codeword_from_circuit(code: LinearCode, circ: Circuit) -> np.ndarray:
    v = np.zeros(code.n, dtype=np.int64)
    v[list(circ.indices)] = circ.coeffs
    return v


def singleton_ok(code: LinearCode, d: int) -> bool:
    """Singleton bound for the dual: d <= n - (n - k) + 1 = k + 1."""
    return d <= code.k + 1


# --- symmetry ------------------------------------------------------------------------


def code_symmetries(code: LinearCode, point_maps) -> list[np.ndarray]:
    """Column permutations induced by ``point_maps`` that provably preserve the code.

    A map is kept only if it permutes the labels and the permuted generator
    spans the same row space.
    """
    if code.labels is None:
        return []
    index = {P: i for i, P in enumerate(code.labels)}
    perms = []
    for g in point_maps:
        try:
            perm = np.array([index[g(P)] for P in code.labels])
        except KeyError:
            continue
        if len(set(perm.tolist())) != code.n:
            continue
        if linalg.same_rowspace(code.field, code.generator, code.generator[:, perm]):
            perms.append(perm)
    return perms


def orbit_representatives(perms: Sequence[np.ndarray], n: int) -> list[int]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for perm in perms:
        for i, j in enumerate(perm):
            ri, rj = find(i), find(int(j))
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return sorted({find(i) for i in range(n)})


def permutation_group(perms: Sequence[np.ndarray], n: int, limit: int = 20000) -> np.ndarray | None:
    """All elements of the group generated by ``perms`` (rows), or None past ``limit``."""
    ident = np.arange(n)
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for p in perms:
                h = np.asarray(p)[g]
                key = h.tobytes()
                if key not in seen:
                    seen[key] = h
                    nxt.append(h)
                    if len(seen) > limit:
                        return None
        frontier = nxt
    return np.array(sorted(seen.values(), key=lambda a: a.tobytes()))


class SymmetryData:
    """Verified column symmetries of a code and orbit representatives of small subsets."""

    _SUBSET_LIMIT = 3_000_000

    def __init__(self, perms: Sequence[np.ndarray], n: int):
        self.perms = [np.asarray(p) for p in perms]
        self.n = n
        self.point_reps = orbit_representatives(self.perms, n)
        self._group: np.ndarray | None | bool = False
        self._reps: dict[int, list | None] = {1: [(r,) for r in self.point_reps]}

    @property
    def group(self) -> np.ndarray | None:
        if self._group is False:
            self._group = permutation_group(self.perms, self.n)
        return self._group

    def subset_reps(self, size: int) -> list[tuple[int, ...]] | None:
        if size not in self._reps:
            self._reps[size] = self._compute_reps(size)
        return self._reps[size]

    def subset_rep_count(self, size: int) -> int | None:
        if size in self._reps:
            r = self._reps[size]
            return None if r is None else len(r)
        G = self.group
        if G is None or binom(self.n, size) > self._SUBSET_LIMIT:
            return None
        return -(-binom(self.n, size) // len(G)) * 2

    def _compute_reps(self, size: int) -> list[tuple[int, ...]] | None:
        if size == 0:
            return [()]
        G = self.group
        if G is None or binom(self.n, size) > self._SUBSET_LIMIT:
            return None
        seen: set = set()
        reps = []
        for T in itertools.combinations(range(self.n), size):
            if T in seen:
                continue
            reps.append(T)
            imgs = np.sort(G[:, list(T)], axis=1)
            seen.update(map(tuple, imgs.tolist()))
        return reps


def circuit_labels(code: LinearCode, circ: Circuit) -> list[str]:
    return [format_point(code.field, code.labels[i]) for i in circ.indices] if code.labels else list(map(str, circ.indices))


def binom(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0
