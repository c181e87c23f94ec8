"""The cochain complex C_K computing H*(Z(K; (D^1, S^0))).

A generator is a word over the symbols ``1``, ``t``, ``s`` (one per
coordinate) whose s-positions form a simplex of K.  The differential is the
derivation with ``d t_i = s_i``; the sign of the i-th term is
(-1)^(number of s symbols left of i).  Cochains are dicts from words to
integer coefficients.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .graded_algebra.linalg import (
    Coefficients,
    DegreeCohomology,
    HomologyGroup,
    SparseMatrix,
    coefficients,
    cohomology_with_representatives,
    zeros,
)
from .simplicial import SimplicialComplex, Simplex

Cochain = dict  # word -> int


@dataclass(frozen=True)
class TSMonomial:
    coeff: int
    symbols: str

    def __post_init__(self):
        if set(self.symbols) - set("1ts"):
            raise ValueError(f"bad symbols {self.symbols!r}")

    @property
    def degree(self) -> int:
        return self.symbols.count("s")

    @property
    def support(self) -> Simplex:
        return tuple(i + 1 for i, c in enumerate(self.symbols) if c == "s")

    @property
    def nonunit(self) -> Simplex:
        return tuple(i + 1 for i, c in enumerate(self.symbols) if c != "1")

    def __str__(self) -> str:
        body = "".join(f"{c}{i + 1}" for i, c in enumerate(self.symbols) if c != "1") or "1"
        return body if self.coeff == 1 else f"{self.coeff}*{body}"


def word(m: int, I: Iterable[int], sigma: Iterable[int]) -> str:
    I, sigma = set(I), set(sigma)
    return "".join("s" if i in sigma else ("t" if i in I else "1") for i in range(1, m + 1))


def s_support(w: str) -> Simplex:
    return tuple(i + 1 for i, c in enumerate(w) if c == "s")


def format_cochain(x: Mapping[str, int]) -> str:
    if not x:
        return "0"
    parts = []
    for w in sorted(x, key=lambda w: (w.count("s"), w)):
        parts.append(str(TSMonomial(x[w], w)))
    return " + ".join(parts).replace("+ -", "- ")


# the complex -------------------------------------------------------------------

class CKComplex:
    """All generators of C_K, grouped by I and then by sigma in lex order."""

    def __init__(self, K: SimplicialComplex):
        self.K = K
        m = K.m
        gens = []
        for k in range(m + 1):
            for I in itertools.combinations(range(1, m + 1), k):
                Iset = set(I)
                for sigma in K.sorted_faces():
                    if Iset.issuperset(sigma):
                        gens.append(word(m, I, sigma))
        self.generators = gens
        self.index = {w: i for i, w in enumerate(gens)}

    def degree_generators(self, k: int) -> list[str]:
        return [w for w in self.generators if w.count("s") == k]

    @property
    def max_degree(self) -> int:
        return max(self.K.dim + 1, 0)

    def d(self, x: Mapping[str, int]) -> Cochain:
        return ck_differential(x, self.K)

    def differential(self, k: int) -> SparseMatrix:
        src = self.degree_generators(k)
        tgt = self.degree_generators(k + 1)
        pos = {w: i for i, w in enumerate(tgt)}
        M = SparseMatrix(len(tgt), len(src))
        for j, w in enumerate(src):
            for u, c in ck_differential({w: 1}, self.K).items():
                M.add(pos[u], j, c)
        return M

    def euler_characteristic(self) -> int:
        return sum((-1) ** w.count("s") for w in self.generators)


def build_ck(K: SimplicialComplex) -> CKComplex:
    return CKComplex(K)


def ck_differential(x: Mapping[str, int], K: SimplicialComplex) -> Cochain:
    faces = K.faces
    out: Cochain = {}
    for w, c in x.items():
        if not c:
            continue
        supp = s_support(w)
        nsign = 0
        for i, ch in enumerate(w):
            if ch == "s":
                nsign += 1
            elif ch == "t":
                new = tuple(sorted(supp + (i + 1,)))
                if new in faces:
                    u = w[:i] + "s" + w[i + 1:]
                    out[u] = out.get(u, 0) + (-c if nsign % 2 else c)
    return {w: c for w, c in out.items() if c}


# the product -------------------------------------------------------------------

_CAI = {("t", "t"): "t", ("t", "s"): None, ("s", "t"): "s", ("s", "s"): None}


def cai_monomial(u: str, v: str) -> tuple[int, str | None]:
    """Product of two words ignoring the support test; returns (sign, word)."""
    out = []
    for a, b in zip(u, v):
        if a == "1":
            out.append(b)
        elif b == "1":
            out.append(a)
        else:
            r = _CAI[(a, b)]
            if r is None:
                return 0, None
            out.append(r)
    # Koszul sign: s of u at position i passes s of v at positions j < i
    sign, seen_v = 0, 0
    for a, b in zip(u, v):
        if a == "s":
            sign += seen_v
        if b == "s":
            seen_v += 1
    return (-1 if sign % 2 else 1), "".join(out)


def cai_product(x: Mapping[str, int], y: Mapping[str, int], K: SimplicialComplex) -> Cochain:
    out: Cochain = {}
    faces = K.faces
    for u, a in x.items():
        for v, b in y.items():
            sign, w = cai_monomial(u, v)
            if w is None or s_support(w) not in faces:
                continue
            out[w] = out.get(w, 0) + sign * a * b
    return {w: c for w, c in out.items() if c}


# cohomology ---------------------------------------------------------------------

class TopCohomology:
    """Integral cohomology of the top part of C_N on the coordinates J.

    The top part has one generator y_sigma = s^sigma t^(J - sigma) per face
    sigma of N, in degree |sigma|, so it is the augmented cochain complex of
    N and H^k here is the reduced cohomology of N in degree k - 1.
    """

    def __init__(self, N: SimplicialComplex, J: Iterable[int]):
        self.N = N
        self.J = tuple(sorted(J))
        Jset = set(self.J)
        faces = [f for f in N.sorted_faces() if Jset.issuperset(f)]
        self.faces: dict[int, list[Simplex]] = {}
        for f in faces:
            self.faces.setdefault(len(f), []).append(f)
        self.pos = {k: {f: i for i, f in enumerate(fs)} for k, fs in self.faces.items()}
        self.groups: dict[int, DegreeCohomology] = {}
        degs = sorted(self.faces)
        mats = {k: self._matrix(k) for k in degs}
        for k in degs:
            prev = mats.get(k - 1)
            self.groups[k] = cohomology_with_representatives(
                prev, mats[k], len(self.faces[k]), degree=k)

    def _matrix(self, k: int):
        src = self.faces.get(k, [])
        tgt = self.faces.get(k + 1, [])
        if not tgt:
            return None
        pos = self.pos[k + 1]
        M = zeros(len(tgt), len(src))
        for j, f in enumerate(src):
            fs = set(f)
            for v in self.J:
                if v in fs:
                    continue
                g = tuple(sorted(f + (v,)))
                if g in pos:
                    below = sum(1 for u in f if u < v)
                    M[pos[g], j] = -1 if below % 2 else 1
        return M

    def betti(self) -> dict[int, HomologyGroup]:
        return {k: g.group for k, g in self.groups.items() if g.group.rank or g.group.torsion}

    def classes(self) -> list[tuple[int, dict]]:
        """Free basis classes as (degree, {face: coeff})."""
        out = []
        for k in sorted(self.groups):
            fs = self.faces[k]
            for vec in self.groups[k].free:
                out.append((k, {fs[i]: c for i, c in enumerate(vec) if c}))
        return out

    def coordinates(self, k: int, vec: Mapping[Simplex, int]) -> list[int]:
        if k not in self.groups:
            if any(vec.values()):
                raise ValueError(f"no cochains in degree {k}")
            return []
        pos = self.pos[k]
        z = [0] * len(self.faces[k])
        for f, c in vec.items():
            z[pos[f]] += c
        return self.groups[k].coordinates(z)[0]


@lru_cache(maxsize=4096)
def top_cohomology(N: SimplicialComplex, J: tuple) -> TopCohomology:
    return TopCohomology(N, J)


@dataclass
class CKCohomology:
    K: SimplicialComplex
    coeffs: Coefficients
    groups: dict[int, HomologyGroup]
    representatives: dict[int, list[Cochain]] = field(default_factory=dict)
    torsion_representatives: dict[int, list[tuple[int, Cochain]]] = field(default_factory=dict)
    blocks: dict[tuple, TopCohomology] = field(default_factory=dict, repr=False)

    def betti(self) -> list[int]:
        top = max(self.groups, default=0)
        return [self.groups.get(k, HomologyGroup(0)).rank for k in range(top + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * g.rank for k, g in self.groups.items())

    def coordinates(self, z: Mapping[str, int]) -> list[int]:
        """Coordinates of a cocycle in the free basis of its degree."""
        z = {w: c for w, c in z.items() if c}
        if not z:
            return []
        degs = {w.count("s") for w in z}
        if len(degs) != 1:
            raise ValueError("cochain is not homogeneous")
        k = degs.pop()
        out = [0] * len(self.representatives.get(k, []))
        by_block: dict[tuple, dict] = {}
        for w, c in z.items():
            I = tuple(i + 1 for i, ch in enumerate(w) if ch != "1")
            by_block.setdefault(I, {})[s_support(w)] = c
        offset = 0
        for I, block in self.blocks.items():
            n = block.groups[k].rank if k in block.groups else 0
            if I in by_block:
                for i, c in enumerate(block.coordinates(k, by_block.pop(I))):
                    out[offset + i] += c
            offset += n
        if by_block:
            raise ValueError("cochain has components outside C_K")
        return out

    def to_json(self) -> list[dict]:
        out = []
        for k in sorted(self.groups):
            g = self.groups[k]
            reps = [[{"coeff": c, "symbols": w} for w, c in sorted(r.items())]
                    for r in self.representatives.get(k, [])]
            out.append({"degree": k, "rank": g.rank, "torsion": list(g.torsion), "representatives": reps})
        return out


def ck_cohomology(K: SimplicialComplex, coeffs: "str | Coefficients | None" = None) -> CKCohomology:
    """Cohomology of C_K, computed one I-block at a time.

    The block of words with non-unit positions I is the top part of
    C_{K_I}, so H*(C_K) is the sum of the reduced cohomologies of all full
    subcomplexes, shifted up by one.
    """
    c = coefficients(coeffs)
    m = K.m
    groups: dict[int, list] = {}
    reps: dict[int, list[Cochain]] = {}
    treps: dict[int, list] = {}
    blocks = {}
    for k in range(m + 1):
        for I in itertools.combinations(range(1, m + 1), k):
            KI = K.full_subcomplex(I)
            block = top_cohomology(KI, I)
            blocks[I] = block
            for deg, g in block.groups.items():
                fs = block.faces[deg]
                acc = groups.setdefault(deg, [0, []])
                acc[0] += g.rank
                acc[1] += [o for o, _ in g.torsion]
                for vec in g.free:
                    reps.setdefault(deg, []).append(
                        {word(m, I, fs[i]): v for i, v in enumerate(vec) if v})
                for o, vec in g.torsion:
                    treps.setdefault(deg, []).append(
                        (o, {word(m, I, fs[i]): v for i, v in enumerate(vec) if v}))
    out: dict[int, HomologyGroup] = {}
    for deg in sorted(groups):
        r, tors = groups[deg]
        out[deg] = HomologyGroup(r, tuple(sorted(tors)))
    out = _change_coefficients(out, c)
    return CKCohomology(K, c, out, reps, treps, blocks)


def _change_coefficients(groups: dict[int, HomologyGroup], c: Coefficients) -> dict[int, HomologyGroup]:
    if c.name == "Z":
        return groups
    out = {}
    for k, g in groups.items():
        r = g.rank
        if c.p:
            r += sum(1 for t in g.torsion if t % c.p == 0)
            nxt = groups.get(k + 1)
            if nxt is not None:
                r += sum(1 for t in nxt.torsion if t % c.p == 0)
        out[k] = HomologyGroup(r)
    return out


def cup_product_table(coh: CKCohomology) -> list[dict]:
    """Products of free basis classes, expressed in the free basis."""
    K = coh.K
    out = []
    degs = sorted(coh.representatives)
    for a in degs:
        for b in degs:
            if a + b not in coh.representatives:
                continue
            for i, x in enumerate(coh.representatives[a]):
                for j, y in enumerate(coh.representatives[b]):
                    z = cai_product(x, y, K)
                    coords = coh.coordinates(z) if z else []
                    nz = {k: v for k, v in enumerate(coords) if v}
                    if nz:
                        out.append({"left": [a, i], "right": [b, j], "product": {str(k): v for k, v in nz.items()}})
    return out


# formulas ----------------------------------------------------------------------

def euler_characteristic(K: SimplicialComplex) -> int:
    """Sum over n >= -1 of (-1)^(n+1) t_n 2^(m-n-1)."""
    m = K.m
    return sum((-1) ** (n + 1) * t * 2 ** (m - n - 1) for n, t in enumerate(K.f_vector(), start=-1))


class NotAPolygonError(ValueError):
    pass


def genus_ngon(K: "SimplicialComplex | int") -> int:
    """Genus of Z(K; (D^1, S^0)) for the boundary of an n-gon."""
    if isinstance(K, int):
        n = K
        if n < 3:
            raise NotAPolygonError("a polygon needs at least 3 vertices")
    else:
        if not K.is_ngon():
            raise NotAPolygonError("K is not the boundary of a polygon on all of its vertices")
        n = K.m
    return 1 + (n - 4) * 2 ** (n - 3)


def random_cochain(K: SimplicialComplex, degree: int, rng: random.Random, terms: int = 4) -> Cochain:
    gens = CKComplex(K).degree_generators(degree)
    if not gens:
        return {}
    out: Cochain = {}
    for _ in range(terms):
        w = rng.choice(gens)
        out[w] = out.get(w, 0) + rng.choice((-2, -1, 1, 2))
    return {w: c for w, c in out.items() if c}
