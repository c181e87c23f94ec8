"""Exact integer linear algebra: Smith normal form and (co)homology.

Everything runs on Python ints.  Dense matrices are numpy object arrays so
that ``U @ A @ V`` stays exact; large sparse boundary matrices go through
:func:`invariant_factors`, which peels off unit pivots before falling back
to the dense algorithm on whatever is left.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np


class InvalidComplexError(ValueError):
    pass


# coefficients ---------------------------------------------------------------

@dataclass(frozen=True)
class Coefficients:
    """``Z``, ``Q`` or ``F_p``.  ``p`` is 0 for Z and Q."""

    name: str
    p: int = 0

    @property
    def is_field(self) -> bool:
        return self.name != "Z"

    def __str__(self) -> str:
        return self.name


ZZ = Coefficients("Z")
QQ = Coefficients("Q")


def coefficients(spec: "str | Coefficients | None") -> Coefficients:
    if spec is None:
        return ZZ
    if isinstance(spec, Coefficients):
        return spec
    s = str(spec).strip().upper().replace("_", "")
    if s in ("Z", "ZZ"):
        return ZZ
    if s in ("Q", "QQ"):
        return QQ
    mt = re.fullmatch(r"(?:F|GF|FP)\(?(\d+)\)?", s)
    if mt:
        p = int(mt.group(1))
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not a prime")
        return Coefficients(f"F{p}", p)
    raise ValueError(f"unknown coefficient ring {spec!r} (use Z, Q or F<p>)")


# matrices -------------------------------------------------------------------

class SparseMatrix:
    """Integer matrix stored as a list of ``{column: value}`` rows."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Mapping[int, int]] | None = None):
        self.nrows, self.ncols = nrows, ncols
        if rows is None:
            rows = [dict() for _ in range(nrows)]
        self.rows = [{c: v for c, v in r.items() if v} for r in rows]

    @classmethod
    def from_dense(cls, A) -> "SparseMatrix":
        A = as_int_matrix(A)
        n, m = A.shape
        return cls(n, m, [{j: int(A[i, j]) for j in range(m) if A[i, j]} for i in range(n)])

    def to_dense(self) -> np.ndarray:
        A = zeros(self.nrows, self.ncols)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                A[i, j] = v
        return A

    def add(self, i: int, j: int, v: int) -> None:
        r = self.rows[i]
        nv = r.get(j, 0) + v
        if nv:
            r[j] = nv
        else:
            r.pop(j, None)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = SparseMatrix(self.nrows, other.ncols)
        for i, r in enumerate(self.rows):
            acc: dict[int, int] = {}
            for k, v in r.items():
                for j, w in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            out.rows[i] = {j: v for j, v in acc.items() if v}
        return out

    def transpose(self) -> "SparseMatrix":
        out = SparseMatrix(self.ncols, self.nrows)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out.rows[j][i] = v
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)


def zeros(n: int, m: int) -> np.ndarray:
    A = np.empty((n, m), dtype=object)
    A.fill(0)
    return A


def identity(n: int) -> np.ndarray:
    A = zeros(n, n)
    for i in range(n):
        A[i, i] = 1
    return A


def as_int_matrix(A) -> np.ndarray:
    if isinstance(A, SparseMatrix):
        return A.to_dense()
    arr = np.array(A, dtype=object)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 0)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    out = zeros(*arr.shape)
    for idx, v in np.ndenumerate(arr):
        out[idx] = int(v)
    return out


# Smith normal form -----------------------------------------------------------

@dataclass
class SNFResult:
    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray | None = None
    V_inv: np.ndarray | None = None

    @property
    def diagonal(self) -> list[int]:
        k = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]


def smith_normal_form(A, *, inverses: bool = False) -> SNFResult:
    """Return unimodular U, V and diagonal D with U @ A @ V == D.

    The diagonal is non-negative and each entry divides the next.  With
    ``inverses=True`` the inverses of U and V are tracked as well.
    """
    M = as_int_matrix(A)
    n, m = M.shape
    a = [[int(x) for x in row] for row in M]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(n)] for i in range(n)] if inverses else None
    Vi = [[int(i == j) for j in range(m)] for i in range(m)] if inverses else None

    def row_add(i, j, q):  # row_i += q * row_j
        ai, aj = a[i], a[j]
        for c in range(m):
            if aj[c]:
                ai[c] += q * aj[c]
        Ui_, Uj = U[i], U[j]
        for c in range(n):
            if Uj[c]:
                Ui_[c] += q * Uj[c]
        if Ui is not None:
            for r in Ui:
                if r[i]:
                    r[j] -= q * r[i]

    def col_add(i, j, q):  # col_i += q * col_j
        for r in a:
            if r[j]:
                r[i] += q * r[j]
        for r in V:
            if r[j]:
                r[i] += q * r[j]
        if Vi is not None:
            vj, vi = Vi[j], Vi[i]
            for c in range(m):
                if vi[c]:
                    vj[c] -= q * vi[c]

    def row_swap(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        if i == j:
            return
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        if Vi is not None:
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        if Ui is not None:
            for r in Ui:
                r[i] = -r[i]

    t = 0
    while t < min(n, m):
        best = None
        for i in range(t, n):
            row = a[i]
            for j in range(t, m):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            clean = True
            p = a[t][t]
            for i in range(t + 1, n):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        row_add(i, t, -q)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, m):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        col_add(j, t, -q)
                    if a[t][j]:
                        clean = False
            if not clean:
                # move the smallest leftover in row/col t onto the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t, n) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t, m) if a[t][j]]
                _, i, j = min(cand)
                row_swap(t, i)
                col_swap(t, j)
                continue
            p = a[t][t]
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            row_neg(t)
        t += 1

    def arr(x, r, c):
        out = zeros(r, c)
        for i in range(r):
            for j in range(c):
                out[i, j] = x[i][j]
        return out

    return SNFResult(
        U=arr(U, n, n), D=arr(a, n, m), V=arr(V, m, m),
        U_inv=arr(Ui, n, n) if Ui is not None else None,
        V_inv=arr(Vi, m, m) if Vi is not None else None,
    )


def invariant_factors(A) -> list[int]:
    """Nonzero SNF diagonal of A, computed sparsely where possible."""
    S = A if isinstance(A, SparseMatrix) else SparseMatrix.from_dense(A)
    rows = {i: dict(r) for i, r in enumerate(S.rows) if r}
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    units = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(rows, key=lambda k: len(rows[k])):
            r = rows.get(i)
            if r is None:
                continue
            piv = None
            for j, v in r.items():
                if v == 1 or v == -1:
                    if piv is None or len(cols[j]) < len(cols[piv]):
                        piv = j
            if piv is None:
                continue
            v = r[piv]
            for i2 in list(cols[piv]):
                if i2 == i:
                    continue
                r2 = rows[i2]
                f = -r2[piv] * v
                for j, w in r.items():
                    nv = r2.get(j, 0) + f * w
                    if nv:
                        if j not in r2:
                            cols[j].add(i2)
                        r2[j] = nv
                    else:
                        r2.pop(j, None)
                        cols[j].discard(i2)
                if not r2:
                    del rows[i2]
            for j in r:
                cols[j].discard(i)
            del rows[i]
            units += 1
            progress = True
    rest = [1] * units
    if rows:
        used = sorted({j for r in rows.values() for j in r})
        pos = {j: k for k, j in enumerate(used)}
        dense = zeros(len(rows), len(used))
        for a, r in enumerate(rows.values()):
            for j, v in r.items():
                dense[a, pos[j]] = v
        rest += smith_normal_form(dense).invariant_factors
    return sorted(rest)


def rank(A, coeffs: "str | Coefficients | None" = None) -> int:
    c = coefficients(coeffs)
    fs = invariant_factors(A)
    if c.p:
        return sum(1 for d in fs if d % c.p)
    return len(fs)


# homology ---------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def _shape(A) -> tuple[int, int]:
    if isinstance(A, SparseMatrix):
        return A.shape
    return as_int_matrix(A).shape


def _as_sparse(A) -> SparseMatrix:
    return A if isinstance(A, SparseMatrix) else SparseMatrix.from_dense(A)


def homology_of_complex(
    maps: Mapping[int, object],
    dims: Mapping[int, int] | None = None,
    coefficients_: "str | Coefficients | None" = None,
    kind: str = "cochain",
) -> dict[int, HomologyGroup]:
    """(Co)homology of a complex given by its differentials.

    For ``kind='cochain'`` ``maps[k]`` goes from degree k to k+1; for
    ``kind='chain'`` it goes from degree k to k-1.  Matrices act on column
    vectors, so ``maps[k]`` has shape (dim target, dim source).
    """
    c = coefficients(coefficients_)
    step = 1 if kind == "cochain" else -1
    if kind not in ("cochain", "chain"):
        raise ValueError("kind must be 'cochain' or 'chain'")
    sparse = {k: _as_sparse(v) for k, v in maps.items()}
    dim: dict[int, int] = dict(dims or {})
    for k, M in sparse.items():
        r, s = M.shape
        for deg, n in ((k, s), (k + step, r)):
            if dim.setdefault(deg, n) != n:
                raise InvalidComplexError(f"dimension mismatch in degree {deg}")
    for k, M in sparse.items():
        N = sparse.get(k + step)
        if N is not None and not (N @ M).is_zero():
            raise InvalidComplexError(f"composite of differentials at degree {k} is not zero")
    facs = {k: invariant_factors(M) for k, M in sparse.items()}

    def rk(k):
        fs = facs.get(k, [])
        return sum(1 for d in fs if d % c.p) if c.p else len(fs)

    out = {}
    for k in sorted(dim):
        incoming = k - step
        r = dim[k] - rk(k) - rk(incoming)
        tors: tuple[int, ...] = ()
        if c.name == "Z":
            tors = tuple(d for d in facs.get(incoming, []) if d > 1)
        out[k] = HomologyGroup(r, tors)
    return out


@dataclass
class DegreeCohomology:
    """H^k of a cochain complex over Z with explicit representatives.

    ``free`` holds integer cocycles whose classes form a basis of the free
    part; ``torsion`` holds (order, cocycle) pairs.  :meth:`coordinates`
    expresses any cocycle in this basis modulo coboundaries.
    """

    degree: int
    dim: int
    free: list[list[int]] = field(default_factory=list)
    torsion: list[tuple[int, list[int]]] = field(default_factory=list)
    _v_inv: np.ndarray | None = None
    _r: int = 0
    _u2: np.ndarray | None = None
    _d2: tuple[int, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.free)

    @property
    def group(self) -> HomologyGroup:
        return HomologyGroup(self.rank, tuple(o for o, _ in self.torsion))

    def coordinates(self, z: Sequence[int]) -> tuple[list[int], list[int]]:
        if len(z) != self.dim:
            raise ValueError("vector has the wrong length")
        if self.dim == 0:
            return [], []
        col = zeros(self.dim, 1)
        for i, v in enumerate(z):
            col[i, 0] = int(v)
        y = self._v_inv @ col
        if any(y[i, 0] for i in range(self._r)):
            raise ValueError("vector is not a cocycle")
        y = y[self._r:, :]
        if y.shape[0] == 0:
            return [], []
        cvec = self._u2 @ y
        r2 = len(self._d2)
        free = [int(cvec[i, 0]) for i in range(r2, cvec.shape[0])]
        tors = [int(cvec[i, 0]) % d for i, d in enumerate(self._d2) if d > 1]
        return free, tors


def cohomology_with_representatives(d_prev, d_next, n: int, degree: int = 0) -> DegreeCohomology:
    """H^k = ker(d_next) / im(d_prev) for dense integer matrices.

    ``d_prev`` has shape (n, n_{k-1}) and ``d_next`` shape (n_{k+1}, n);
    either may be None when the neighbouring group is zero.
    """
    out = DegreeCohomology(degree, n)
    if n == 0:
        return out
    if d_next is None or _shape(d_next)[0] == 0:
        snf = None
        r = 0
        V, Vinv = identity(n), identity(n)
    else:
        snf = smith_normal_form(d_next, inverses=True)
        r = snf.rank
        V, Vinv = snf.V, snf.V_inv
    kernel = V[:, r:]
    z = n - r
    if d_prev is None or _shape(d_prev)[1] == 0:
        X = zeros(n, 0)
    else:
        X = Vinv @ as_int_matrix(d_prev)
        if any(X[i, j] for i in range(r) for j in range(X.shape[1])):
            raise InvalidComplexError(f"composite of differentials at degree {degree} is not zero")
    M = X[r:, :]
    if M.shape[1] == 0 or z == 0:
        U2, U2inv, diag = identity(z), identity(z), []
    else:
        s2 = smith_normal_form(M, inverses=True)
        U2, U2inv, diag = s2.U, s2.U_inv, s2.invariant_factors
    gens = kernel @ U2inv if z else zeros(n, 0)
    for i in range(z):
        vec = [int(gens[j, i]) for j in range(n)]
        if i < len(diag):
            if diag[i] > 1:
                out.torsion.append((diag[i], vec))
        else:
            out.free.append(vec)
    out._v_inv, out._r, out._u2, out._d2 = Vinv, r, U2, tuple(diag)
    return out


def rational_rank(rows: Iterable[Sequence]) -> int:
    """Rank over Q by fraction-free elimination; an independent check."""
    from fractions import Fraction

    mat = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c] / mat[r][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
    return r
