"""The filtration spectral sequence of a polyhedral (smash) product.

E_1 has a basis of monomials y_1 (x) ... (x) y_m with y_i a generator of
E_i, W_i, B_i or C_i (and the unit when the Z-variant is asked for).  The
support of a monomial is the set of C and W positions; it has to be a
simplex of K, and its lex weight is the filtration degree s.  The only
differential on E_1-monomials is delta: E -> W applied by the Leibniz rule.

delta never changes the generator labels, it only turns e into delta(e).
So the filtered complex splits into blocks: fix, per coordinate, either an
E-label (the coordinates J) or a B/C-label (the coordinates I, with C on
sigma).  The monomials of a block are indexed by the faces sigma' of
N(I, sigma), which all have distinct weights.  Each block is therefore a
one-cell-per-filtration-step complex, and a standard persistence reduction
gives every page with monomial bases: a pair (x, y) of length r means
d_r x = c * y, and unpaired monomials survive to E_infinity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .graded_algebra.pairdata import UNIT, PairData, VertexData
from .graded_algebra.series import PoincareSeries
from .simplicial import SimplicialComplex, Simplex, lex_weight

Monomial = tuple  # one generator label per coordinate

Z_VARIANT = "Z"
ZHAT_VARIANT = "Zhat"


class SpectralConsistencyError(RuntimeError):
    pass


def variant_name(v: str) -> str:
    s = str(v).strip().lower().replace("-", "").replace("_", "").replace("̂", "hat")
    if s in ("z",):
        return Z_VARIANT
    if s in ("zhat", "hat", "ẑ", "smash"):
        return ZHAT_VARIANT
    raise ValueError(f"unknown variant {v!r}; use 'Z' or 'Zhat'")


def support(y: Monomial, vdata: Sequence[VertexData]) -> Simplex:
    return tuple(i + 1 for i, (l, v) in enumerate(zip(y, vdata)) if l in v.C or l in v.W)


def degree(y: Monomial, vdata: Sequence[VertexData]) -> int:
    return sum(v.deg(l) for l, v in zip(y, vdata))


def format_monomial(y: Monomial) -> str:
    return " ⊗ ".join(y)


def coboundary(y: Mapping[Monomial, int], K: SimplicialComplex, data: PairData) -> dict:
    """delta on a combination of E_1 monomials (Leibniz, Koszul signs)."""
    vdata = data.for_m(K.m)
    out: dict = {}
    for mono, c in y.items():
        supp = set(support(mono, vdata))
        sign = 0
        for i, (l, v) in enumerate(zip(mono, vdata)):
            if l in v.E and (i + 1) not in supp:
                new = tuple(sorted(supp | {i + 1}))
                if new in K.faces:
                    z = mono[:i] + (v.delta[l],) + mono[i + 1:]
                    out[z] = out.get(z, 0) + (-c if sign % 2 else c)
            sign += v.deg(l)
    return {z: c for z, c in out.items() if c}


# blocks and their persistence pairing -------------------------------------------

@dataclass(frozen=True)
class Shape:
    """Which coordinates carry E (J), C (sigma) or B labels (the rest of I)."""

    J: tuple
    sigma: tuple
    I: tuple
    options: tuple  # per coordinate, tuple of allowed labels

    def label_choices(self) -> Iterator[tuple]:
        return itertools.product(*self.options)


@dataclass
class BlockPairing:
    faces: list  # faces sigma' of N in increasing weight
    weights: list
    partner: dict  # index -> (other index, length, coefficient, is_source)
    essential: list

    def alive(self, idx: int, r: int | None) -> bool:
        p = self.partner.get(idx)
        if p is None:
            return True
        return r is not None and p[1] >= r

    @property
    def max_length(self) -> int:
        return max((p[1] for p in self.partner.values()), default=0)


@lru_cache(maxsize=200000)
def block_pairing(K: SimplicialComplex, J: tuple, sigma: tuple) -> BlockPairing:
    """Persistence reduction of the top part of C_N, N = N([m]-J, sigma).

    Columns are processed from the deepest filtration (largest weight) up;
    a column may only absorb columns of larger weight, which keeps every
    representative inside its filtration level.
    """
    m = K.m
    I = tuple(i for i in range(1, m + 1) if i not in J)
    N = K.link_complement(I, sigma)
    sset = set(sigma)
    faces = sorted(N.faces, key=lambda f: lex_weight(sset.union(f), m))
    weights = [lex_weight(sset.union(f), m) for f in faces]
    pos = {f: i for i, f in enumerate(faces)}
    cols: list[dict] = []
    for f in faces:
        col = {}
        for v in J:
            if v in f:
                continue
            g = tuple(sorted(f + (v,)))
            if g in pos:
                below = sum(1 for u in f if u < v)
                col[pos[g]] = Fraction(-1 if below % 2 else 1)
        cols.append(col)
    reduced: dict[int, dict] = {}
    pivot_of: dict[int, int] = {}
    partner: dict[int, tuple] = {}
    for j in reversed(range(len(faces))):
        col = dict(cols[j])
        while col:
            p = min(col)
            k = pivot_of.get(p)
            if k is None:
                break
            f = col[p] / reduced[k][p]
            for i, v in reduced[k].items():
                nv = col.get(i, 0) - f * v
                if nv:
                    col[i] = nv
                else:
                    col.pop(i, None)
        reduced[j] = col
        if col:
            p = min(col)
            pivot_of[p] = j
            r = weights[p] - weights[j]
            partner[j] = (p, r, col[p], True)
            partner[p] = (j, r, col[p], False)
    essential = [i for i in range(len(faces)) if i not in partner]
    return BlockPairing(faces, weights, partner, essential)


def twist_sign(face: Iterable[int], base_degrees: Sequence[int]) -> int:
    """Sign relating block monomials to top-part cochains of C_N."""
    e = 0
    for j in face:
        e += sum(base_degrees[:j - 1])
    return -1 if e % 2 else 1


# the spectral sequence ------------------------------------------------------------

@dataclass
class PageClass:
    monomial: Monomial
    s: int
    t: int
    block: tuple  # the block's label assignment
    face: tuple  # sigma' inside the block

    @property
    def label(self) -> str:
        return format_monomial(self.monomial)


@dataclass
class Page:
    r: int | None  # None means E_infinity
    classes: list[PageClass]
    differentials: list[tuple[int, int, Fraction]] = field(default_factory=list)
    ss: "SpectralSequence | None" = field(default=None, repr=False)

    def dims(self) -> dict[tuple[int, int], int]:
        out: dict = {}
        for c in self.classes:
            out[(c.s, c.t)] = out.get((c.s, c.t), 0) + 1
        return out

    def total(self) -> PoincareSeries:
        return PoincareSeries.from_degrees(c.t for c in self.classes)

    def at_filtration(self, s: int) -> list[PageClass]:
        return [c for c in self.classes if c.s == s]

    def differential_matrix(self) -> dict[tuple[int, int], Fraction]:
        return {(tgt, src): c for src, tgt, c in self.differentials}

    def check_square_zero(self) -> bool:
        d = {}
        for src, tgt, c in self.differentials:
            d.setdefault(src, {})[tgt] = c
        for src, row in d.items():
            acc: dict = {}
            for mid, c in row.items():
                for tgt, c2 in d.get(mid, {}).items():
                    acc[tgt] = acc.get(tgt, 0) + c * c2
            if any(acc.values()):
                return False
        for src, tgt, _ in self.differentials:
            a, b = self.classes[src], self.classes[tgt]
            if self.r is None or b.s - a.s != self.r or b.t != a.t + 1:
                return False
        return True

    def homology_dims(self) -> int:
        """dim H(E_r, d_r) from the rank of d_r over Q."""
        cols: dict[int, dict] = {}
        for s, t, c in self.differentials:
            cols.setdefault(s, {})[t] = cols.get(s, {}).get(t, 0) + Fraction(c)
        return len(self.classes) - 2 * _sparse_rank(cols.values())


def _sparse_rank(vectors: Iterable[Mapping]) -> int:
    pivots: dict = {}
    for vec in vectors:
        v = {k: x for k, x in vec.items() if x}
        while v:
            lead = min(v)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = v
                break
            f = v[lead] / p[lead]
            for k, x in p.items():
                nx = v.get(k, 0) - f * x
                if nx:
                    v[k] = nx
                else:
                    v.pop(k, None)
    return len(pivots)


class SpectralSequence:
    """Pages of the lex-weight filtration for Z or Zhat.

    ``coords`` restricts the non-unit coordinates (the Zhat piece of a full
    subcomplex, still filtered by ambient weights).
    """

    def __init__(self, K: SimplicialComplex, data: PairData, variant: str = Z_VARIANT,
                 coords: Iterable[int] | None = None):
        self.K = K
        self.m = K.m
        self.data = data
        self.vdata = data.for_m(self.m)
        self.variant = variant_name(variant)
        self.coords = tuple(sorted(coords)) if coords is not None else tuple(range(1, self.m + 1))
        self._shapes: list[Shape] | None = None
        self._cache = None

    def shapes(self) -> list[Shape]:
        if self._shapes is not None:
            return self._shapes
        m, K = self.m, self.K
        kinds_per = []
        for i in range(1, m + 1):
            v = self.vdata[i - 1]
            if i not in self.coords:
                kinds_per.append([("B", (UNIT,))])
                continue
            opts = []
            if len(v.E):
                opts.append(("J", tuple(v.E.labels())))
            if len(v.C):
                opts.append(("C", tuple(v.C.labels())))
            bl = tuple(l for l in v.B.labels() if self.variant == Z_VARIANT or l != UNIT)
            if bl:
                opts.append(("B", bl))
            kinds_per.append(opts)
        out = []
        for combo in itertools.product(*kinds_per):
            J = tuple(i + 1 for i, (k, _) in enumerate(combo) if k == "J")
            sigma = tuple(i + 1 for i, (k, _) in enumerate(combo) if k == "C")
            if sigma not in K.faces:
                continue
            I = tuple(i for i in range(1, m + 1) if i not in J)
            out.append(Shape(J, sigma, I, tuple(o for _, o in combo)))
        self._shapes = out
        return out

    def pairing(self, shape: Shape) -> BlockPairing:
        return block_pairing(self.K, shape.J, shape.sigma)

    def max_length(self) -> int:
        return max((self.pairing(sh).max_length for sh in self.shapes()), default=0)

    # dimensions without building explicit bases
    def dims(self, r: int | None = 1) -> dict[tuple[int, int], int]:
        out: dict = {}
        for sh in self.shapes():
            bp = self.pairing(sh)
            lab = _label_degrees(sh, self.vdata)
            for idx, f in enumerate(bp.faces):
                if not bp.alive(idx, r):
                    continue
                s = bp.weights[idx]
                for d, n in lab.items():
                    key = (s, d + len(f))
                    out[key] = out.get(key, 0) + n
        return out

    def total(self, r: int | None = None) -> PoincareSeries:
        out: dict = {}
        for (s, t), n in self.dims(r).items():
            out[t] = out.get(t, 0) + n
        return PoincareSeries(out)

    # explicit pages
    def blocks(self) -> Iterator[tuple[Shape, tuple, BlockPairing]]:
        for sh in self.shapes():
            bp = self.pairing(sh)
            for labels in sh.label_choices():
                yield sh, labels, bp

    def _all_classes(self):
        """E_1 classes in page order, their lifetimes and every pairing."""
        if self._cache is not None:
            return self._cache
        classes: list[PageClass] = []
        life: list = []
        links = []
        degs = [{l: v.deg(l) for l in v.all_labels()} for v in self.vdata]
        for sh, labels, bp in self.blocks():
            base = [degs[i][l] for i, l in enumerate(labels)]
            first = len(classes)
            for idx, f in enumerate(bp.faces):
                mono = tuple(self.vdata[i].delta[l] if (i + 1) in f else l for i, l in enumerate(labels))
                classes.append(PageClass(mono, bp.weights[idx], sum(base) + len(f), labels, f))
                p = bp.partner.get(idx)
                life.append(p[1] if p else None)
            for idx, (other, length, coeff, is_src) in bp.partner.items():
                if is_src:
                    c = coeff * twist_sign(bp.faces[idx], base) * twist_sign(bp.faces[other], base)
                    links.append((first + idx, first + other, length, c))
        order = sorted(range(len(classes)), key=lambda k: (classes[k].s, classes[k].t, classes[k].monomial))
        newpos = {old: new for new, old in enumerate(order)}
        self._cache = ([classes[k] for k in order], [life[k] for k in order],
                       [(newpos[a], newpos[b], n, c) for a, b, n, c in links])
        return self._cache

    def page(self, r: int | None = 1) -> Page:
        classes, life, links = self._all_classes()
        keep = [k for k, n in enumerate(life) if n is None or (r is not None and n >= r)]
        pos = {k: i for i, k in enumerate(keep)}
        diffs = [] if r is None else sorted((pos[a], pos[b], c) for a, b, n, c in links if n == r)
        return Page(r, [classes[k] for k in keep], diffs, self)

    def e1(self) -> Page:
        return self.page(1)

    def einfty(self) -> Page:
        return self.page(None)

    def pages(self) -> list[Page]:
        """E_1, E_2, ... up to the first page past the longest differential."""
        out = [self.page(1)]
        for _ in range(self.max_length()):
            out.append(turn_page(out[-1]))
        return out

    def literal_dims(self, r: int) -> dict[tuple[int, int], int]:
        """E_r dimensions from Z_r / B_{r-1} subspaces, block by block."""
        out: dict = {}
        for sh in self.shapes():
            lab = _label_degrees(sh, self.vdata)
            for idx, f, s in _literal_block(self.K, sh.J, sh.sigma, r):
                for d, n in lab.items():
                    key = (s, d + len(f))
                    out[key] = out.get(key, 0) + n
        return out


def _label_degrees(sh: Shape, vdata: Sequence[VertexData]) -> dict[int, int]:
    poly = {0: 1}
    for i, opts in enumerate(sh.options):
        nxt: dict = {}
        for l in opts:
            d = vdata[i].deg(l)
            for k, n in poly.items():
                nxt[k + d] = nxt.get(k + d, 0) + n
        poly = nxt
    return poly


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    mat = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -mat[i][fc]
        basis.append(v)
    return basis


def _literal_block(K: SimplicialComplex, J: tuple, sigma: tuple, r: int):
    """Faces of one block that span E_r, straight from the definitions.

    Z_r^s = {x in F^s : dx in F^(s+r)} and B_(r-1)^s = F^s n d(F^(s-r+1)).
    Every weight carries at most one face, so E_r^s is the image of Z_r^s
    in that face's coordinate modulo the image of B_(r-1)^s.
    """
    bp = block_pairing(K, J, sigma)
    faces, weights = bp.faces, bp.weights
    n = len(faces)
    pos = {f: i for i, f in enumerate(faces)}
    D = [[Fraction(0)] * n for _ in range(n)]
    for j, f in enumerate(faces):
        for v in J:
            if v in f:
                continue
            g = tuple(sorted(f + (v,)))
            if g in pos:
                below = sum(1 for u in f if u < v)
                D[pos[g]][j] = Fraction(-1 if below % 2 else 1)
    out = []
    for idx in range(n):
        s = weights[idx]
        cols = [j for j in range(n) if weights[j] >= s]
        rows = [i for i in range(n) if weights[i] < s + r]
        ns = _nullspace([[D[i][j] for j in cols] for i in rows], len(cols))
        k = cols.index(idx)
        in_z = any(v[k] for v in ns)
        if not in_z:
            continue
        cols_b = [j for j in range(n) if weights[j] >= s - r + 1]
        rows_b = [i for i in range(n) if weights[i] < s]
        nb = _nullspace([[D[i][j] for j in cols_b] for i in rows_b], len(cols_b))
        hit = any(sum(D[idx][j] * v[q] for q, j in enumerate(cols_b)) for v in nb)
        if not hit:
            out.append((idx, faces[idx], s))
    return out


# module level operations ----------------------------------------------------------

def build_e1(K: SimplicialComplex, data: PairData, variant: str = Z_VARIANT) -> Page:
    return SpectralSequence(K, data, variant).page(1)


def turn_page(page: Page) -> Page:
    """E_{r+1} = H(E_r, d_r), checked against the survivor rule."""
    if page.ss is None or page.r is None:
        raise ValueError("page is not attached to a spectral sequence")
    nxt = page.ss.page(page.r + 1)
    if len(nxt.classes) != page.homology_dims():
        raise SpectralConsistencyError(
            f"E_{page.r + 1} has {len(nxt.classes)} classes but H(E_{page.r}) has {page.homology_dims()}")
    return nxt


@dataclass
class EInfinity:
    dims: dict[tuple[int, int], int]
    total: PoincareSeries
    last_page: int


def run_to_einfty(K: SimplicialComplex, data: PairData, variant: str = Z_VARIANT,
                  check: bool = False) -> EInfinity:
    """Turn pages until nothing changes; r never needs to exceed 2^m."""
    ss = SpectralSequence(K, data, variant)
    last = ss.max_length()
    if last > 2 ** K.m:
        raise SpectralConsistencyError("a differential is longer than the filtration")
    dims = ss.dims(None)
    if check:
        for r in range(1, last + 2):
            lit = {k: v for k, v in ss.literal_dims(r).items() if v}
            fast = {k: v for k, v in ss.dims(r).items() if v}
            if lit != fast:
                raise SpectralConsistencyError(f"survivor rule disagrees with ker/im on E_{r}")
    total: dict = {}
    for (s, t), n in dims.items():
        total[t] = total.get(t, 0) + n
    return EInfinity(dims, PoincareSeries(total), last + 1)


def split_by_subcomplex(page: Page) -> dict[tuple, Page]:
    """Split a Z-variant page by the set of non-unit coordinates.

    Each piece is compared with the Zhat page of the corresponding full
    subcomplex (same ambient weights); any mismatch, or a differential that
    crosses pieces, raises.
    """
    ss = page.ss
    if ss is None or ss.variant != Z_VARIANT:
        raise ValueError("split_by_subcomplex needs a Z-variant page")
    groups: dict[tuple, list[int]] = {}
    for k, c in enumerate(page.classes):
        I = tuple(i + 1 for i, l in enumerate(c.monomial) if l != UNIT)
        groups.setdefault(I, []).append(k)
    where = {k: I for I, ks in groups.items() for k in ks}
    for a, b, _ in page.differentials:
        if where[a] != where[b]:
            raise SpectralConsistencyError("differential crosses full-subcomplex pieces")
    out = {}
    for I, ks in sorted(groups.items(), key=lambda kv: (len(kv[0]), kv[0])):
        pos = {k: n for n, k in enumerate(ks)}
        piece = Page(page.r, [page.classes[k] for k in ks],
                     [(pos[a], pos[b], c) for a, b, c in page.differentials if a in pos], ss)
        sub = SpectralSequence(ss.K.full_subcomplex(I), ss.data, ZHAT_VARIANT, coords=I)
        direct = sub.page(page.r)
        if sorted(c.monomial for c in direct.classes) != sorted(c.monomial for c in piece.classes):
            raise SpectralConsistencyError(f"piece {list(I)} differs from the smash page of K_I")
        out[I] = piece
    return out


# growing a complex one face at a time -------------------------------------------

@dataclass
class GrowthTable:
    K: SimplicialComplex
    classes: dict[int, list[str]]  # filtration -> labels
    differentials: list[tuple[int, int]]

    @property
    def top(self) -> int:
        return max((lex_weight(f, self.K.m) for f in self.K.faces), default=0)

    def as_rows(self) -> tuple[list[str], list[str]]:
        head = [str(s) for s in range(self.top + 1)]
        cells = [" + ".join(self.classes[s]) if self.classes.get(s) else "0" for s in range(self.top + 1)]
        return head, cells


def filtration_steps(K: SimplicialComplex, start: int = 0) -> list[SimplicialComplex]:
    """K intersected with F_t of the full simplex, for each face weight t >= start."""
    m = K.m
    ws = sorted(lex_weight(f, m) for f in K.faces)
    out = []
    for t in ws:
        if t < start:
            continue
        out.append(SimplicialComplex(m, [f for f in K.faces if lex_weight(f, m) <= t], closed=True))
    return out


def growth_tables(complexes: Sequence[SimplicialComplex], data: PairData,
                  variant: str = ZHAT_VARIANT) -> list[GrowthTable]:
    """Tables for a growing sequence of complexes.

    The first table is E_1 of the first complex.  Each later table lists the
    E_infinity classes of the previous complex together with the E_1 classes
    that the new faces bring in, and the differentials that land on them.
    """
    out = []
    prev = None
    for K in complexes:
        ss = SpectralSequence(K, data, variant)
        shown: list[PageClass] = []
        diffs: list[tuple[int, int]] = []
        e1 = ss.page(1)
        if prev is None:
            shown = e1.classes
            for r in range(1, ss.max_length() + 1):
                pg = ss.page(r)
                diffs += [(pg.classes[a].s, pg.classes[b].s) for a, b, _ in pg.differentials]
        else:
            old = SpectralSequence(prev, data, variant).page(None)
            vd = data.for_m(K.m)
            new = [c for c in e1.classes if support(c.monomial, vd) not in prev.faces]
            shown = old.classes + new
            newset = {c.monomial for c in new}
            for r in range(1, ss.max_length() + 1):
                pg = ss.page(r)
                diffs += [(pg.classes[a].s, pg.classes[b].s) for a, b, _ in pg.differentials
                          if pg.classes[b].monomial in newset]
        table: dict[int, list[str]] = {}
        for c in sorted(shown, key=lambda c: (c.s, c.monomial)):
            table.setdefault(c.s, []).append(c.label)
        out.append(GrowthTable(K, table, sorted(set(diffs))))
        prev = K
    return out
