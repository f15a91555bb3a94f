"""Shared fixtures and independent oracles.

The oracles here use scalar field operations only, never the package's
elimination or circuit routines, so that they can cross-check them.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from quotcodes.curve import build_curve


def scalar_rank(F, rows) -> int:
    """Rank by textbook Gaussian elimination with scalar ops and first-row pivoting."""
    M = [list(map(int, r)) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = F.inv(M[rank][col])
        M[rank] = [F.mul(inv, v) for v in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                f = M[i][col]
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def brute_dual_distance(F, G, w_max: int | None = None):
    """Smallest w such that some w columns of G are dependent, by trying every subset."""
    G = np.asarray(G)
    k, n = G.shape
    w_max = n if w_max is None else w_max
    cols = [G[:, i].tolist() for i in range(n)]
    for w in range(1, w_max + 1):
        for S in itertools.combinations(range(n), w):
            # columns dependent iff rank of the transposed block < w
            if scalar_rank(F, [cols[i] for i in S]) < w:
                return w, S
    return None, None


def brute_dual_min_weight(F, G):
    """Minimum nonzero weight of {v : G v = 0} by enumerating all of F^n (small n only)."""
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    Q = F.order
    best = None
    count = 0
    for v in itertools.product(range(Q), repeat=n):
        if not any(v):
            continue
        w = sum(1 for c in v if c)
        if best is not None and w > best:
            continue
        ok = True
        for row in G:
            acc = 0
            for a, b in zip(row, v):
                if a and b:
                    acc = F.add(acc, F.mul(int(a), b))
            if acc:
                ok = False
                break
        if ok:
            if best is None or w < best:
                best, count = w, 1
            elif w == best:
                count += 1
    return best, count


@pytest.fixture(scope="session")
def curves():
    cache = {}

    def get(q, m):
        if (q, m) not in cache:
            cache[(q, m)] = build_curve(q, m)
        return cache[(q, m)]

    return get


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
