"""Brute force model of Z(K; (D^1, S^0)) inside the cube [-1, 1]^m.

A cell picks, per coordinate, the left endpoint (-1), the right endpoint
(+1) or the whole interval (0).  It lies in the polyhedral product exactly
when its interval coordinates form a simplex of K.  Cellular cochains are
the transposes of the cubical boundary matrices.
"""
from __future__ import annotations

import itertools
import os

import numpy as np

from .graded_algebra.linalg import (
    Coefficients,
    HomologyGroup,
    SparseMatrix,
    coefficients,
    homology_of_complex,
)
from .simplicial import SimplicialComplex

LEFT, RIGHT, INTERVAL = -1, 1, 0

CubicalCell = tuple  # entries in {-1, 0, 1}


class CapExceeded(ValueError):
    pass


def max_m() -> int:
    try:
        return int(os.environ.get("POLYPROD_MAX_M", "10"))
    except ValueError:
        return 10


def cell_dim(cell: CubicalCell) -> int:
    return sum(1 for x in cell if x == INTERVAL)


class CubicalComplex:
    def __init__(self, K: SimplicialComplex, cap: int | None = None):
        cap = max_m() if cap is None else cap
        if K.m > cap:
            raise CapExceeded(f"m={K.m} exceeds the brute force cap {cap} (POLYPROD_MAX_M)")
        self.K = K
        m = K.m
        cells: dict[int, list[CubicalCell]] = {}
        for sigma in K.sorted_faces():
            s = set(sigma)
            free = [i for i in range(m) if i + 1 not in s]
            for ends in itertools.product((LEFT, RIGHT), repeat=len(free)):
                c = [INTERVAL] * m
                for i, e in zip(free, ends):
                    c[i] = e
                cells.setdefault(len(sigma), []).append(tuple(c))
        self.cells = {k: sorted(v) for k, v in cells.items()}
        self.index = {k: {c: i for i, c in enumerate(v)} for k, v in self.cells.items()}

    def count(self) -> int:
        return sum(len(v) for v in self.cells.values())

    def boundary(self, k: int) -> SparseMatrix:
        """Cellular boundary from k-cells to (k-1)-cells."""
        src = self.cells.get(k, [])
        tgt = self.index.get(k - 1, {})
        M = SparseMatrix(len(tgt), len(src))
        for j, c in enumerate(src):
            p = 0
            for i, x in enumerate(c):
                if x != INTERVAL:
                    continue
                sign = -1 if p % 2 else 1
                for end, s in ((RIGHT, sign), (LEFT, -sign)):
                    face = c[:i] + (end,) + c[i + 1:]
                    M.add(tgt[face], j, s)
                p += 1
        return M

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(v) for k, v in self.cells.items())


def build_cellular_complex(K: SimplicialComplex, cap: int | None = None) -> CubicalComplex:
    return CubicalComplex(K, cap)


def oracle_cohomology(K: SimplicialComplex, coeffs: "str | Coefficients | None" = None,
                      cap: int | None = None) -> dict[int, HomologyGroup]:
    c = coefficients(coeffs)
    X = CubicalComplex(K, cap)
    if c.p == 2:
        return _f2_cohomology(X)
    maps = {}
    dims = {k: len(v) for k, v in X.cells.items()}
    for k in X.cells:
        if k + 1 in X.cells:
            maps[k] = X.boundary(k + 1).transpose()
    return homology_of_complex(maps, dims, c, kind="cochain")


def _f2_rank(M: SparseMatrix) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    A = np.zeros((M.nrows, M.ncols), dtype=np.uint8)
    for i, r in enumerate(M.rows):
        for j, v in r.items():
            A[i, j] = v & 1
    rank = 0
    rows, cols = A.shape
    for c in range(cols):
        piv = np.nonzero(A[rank:, c])[0]
        if piv.size == 0:
            continue
        p = rank + piv[0]
        if p != rank:
            A[[rank, p]] = A[[p, rank]]
        hits = np.nonzero(A[:, c])[0]
        hits = hits[hits != rank]
        A[hits] ^= A[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def _f2_cohomology(X: CubicalComplex) -> dict[int, HomologyGroup]:
    ranks = {k: _f2_rank(X.boundary(k + 1)) for k in X.cells if k + 1 in X.cells}
    out = {}
    for k, cells in sorted(X.cells.items()):
        out[k] = HomologyGroup(len(cells) - ranks.get(k, 0) - ranks.get(k - 1, 0))
    return out
