"""Closed form additive and multiplicative structure.

Additively the reduced cohomology of the smash product splits into summands
indexed by a vertex set I and a simplex sigma inside I:

    E^J (x) H~*(Sigma |N(I, sigma)|) (x) Y^(I, sigma),    J = [m] - I,

with Y the tensor product of C_i over sigma and B_i over I - sigma.  The
link factor is computed as the top part of C_N on J, which is the augmented
cochain complex of N; a maximal sigma has N = {()} and contributes one class
in degree 0 (the 1/t convention).

Multiplicatively, classes are represented by E_1-chains (monomials with E,
W, B and C labels) and multiplied coordinate by coordinate.  The result is
reduced back to the class basis one block at a time.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .graded_algebra.linalg import (
    Coefficients,
    HomologyGroup,
    coefficients,
    homology_of_complex,
    zeros,
)
from .graded_algebra.pairdata import UNIT, PairData, VertexData
from .graded_algebra.series import PoincareSeries
from .realmac_chain import _change_coefficients, top_cohomology
from .simplicial import SimplicialComplex, Simplex, lex_weight
from .spectral import (
    Z_VARIANT,
    ZHAT_VARIANT,
    SpectralSequence,
    coboundary,
    support,
    twist_sign,
    variant_name,
)


class DecompositionError(ValueError):
    pass


# additive structure ---------------------------------------------------------------

def reduced_cohomology(N: SimplicialComplex, vertices: Iterable[int] | None = None,
                       coeffs=None) -> dict[int, HomologyGroup]:
    """Reduced simplicial cohomology of N, augmented by the empty face.

    Uses the textbook alternating signs; kept separate from the top part
    computation so the two can be compared.
    """
    vs = set(vertices) if vertices is not None else None
    faces = [f for f in N.sorted_faces() if vs is None or vs.issuperset(f)]
    by_dim: dict[int, list] = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    pos = {d: {f: i for i, f in enumerate(fs)} for d, fs in by_dim.items()}
    maps = {}
    for d, fs in by_dim.items():
        tgt = by_dim.get(d + 1)
        if not tgt:
            continue
        M = zeros(len(tgt), len(fs))
        for i, g in enumerate(tgt):
            for k in range(len(g)):
                M[i, pos[d][g[:k] + g[k + 1:]]] = -1 if k % 2 else 1
        maps[d] = M
    dims = {d: len(fs) for d, fs in by_dim.items()}
    return homology_of_complex(maps, dims, coeffs, kind="cochain")


@dataclass
class Summand:
    I: Simplex
    sigma: Simplex
    J: Simplex
    link: dict[int, HomologyGroup]  # reduced cohomology of N by degree (from -1)
    E_factors: list[list[str]]
    Y_factors: list[list[str]]
    dims: PoincareSeries

    @property
    def link_betti(self) -> list[int]:
        if not self.link:
            return []
        top = max(self.link)
        return [self.link.get(k, HomologyGroup(0)).rank for k in range(-1, top + 1)]

    def to_json(self) -> dict:
        return {
            "I": list(self.I),
            "sigma": list(self.sigma),
            "link_betti": self.link_betti,
            "dims_by_degree": {str(k): v for k, v in sorted(self.dims.coeffs.items())},
        }


@dataclass
class Decomposition:
    K: SimplicialComplex
    variant: str
    summands: list[Summand]

    @property
    def poincare(self) -> PoincareSeries:
        total = PoincareSeries()
        for s in self.summands:
            total = total + s.dims
        return total

    def to_json(self) -> dict:
        return {"summands": [s.to_json() for s in self.summands], "poincare": str(self.poincare)}


def _series(labels: Sequence[str], v: VertexData) -> PoincareSeries:
    return PoincareSeries.from_degrees(v.deg(l) for l in labels)


def _summands_for(K: SimplicialComplex, vdata, I: tuple, variant: str, c: Coefficients,
                  check: bool) -> list[Summand]:
    m = K.m
    Iset = set(I)
    J = tuple(j for j in range(1, m + 1) if j not in Iset)
    E_factors = [list(vdata[j - 1].E.labels()) for j in J]
    if any(not f for f in E_factors):
        return []
    E_series = PoincareSeries.one()
    for j, f in zip(J, E_factors):
        E_series = E_series * _series(f, vdata[j - 1])
    out = []
    for sigma in K.sorted_faces():
        if not Iset.issuperset(sigma):
            continue
        Y = []
        for i in I:
            v = vdata[i - 1]
            if i in sigma:
                Y.append(list(v.C.labels()))
            else:
                Y.append([l for l in v.B.labels() if variant == Z_VARIANT or l != UNIT])
        if any(not f for f in Y):
            continue
        N = K.link_complement(I, sigma)
        top = top_cohomology(N, J)
        groups = _change_coefficients({k: g.group for k, g in top.groups.items()}, c)
        link = {k - 1: g for k, g in groups.items() if g.rank or g.torsion}
        if check:
            simp = {k: g for k, g in reduced_cohomology(N, J).items() if g.rank or g.torsion}
            simp = {k: g for k, g in _change_coefficients(
                {k + 1: g for k, g in simp.items()}, c).items()}
            simp = {k - 1: g for k, g in simp.items() if g.rank or g.torsion}
            if {k: g.rank for k, g in simp.items()} != {k: g.rank for k, g in link.items()}:
                raise DecompositionError(f"link cohomology disagrees for I={list(I)}, sigma={list(sigma)}")
        if not any(g.rank for g in link.values()):
            continue
        link_series = PoincareSeries({k + 1: g.rank for k, g in link.items()})
        Y_series = PoincareSeries.one()
        for i, f in zip(I, Y):
            Y_series = Y_series * _series(f, vdata[i - 1])
        out.append(Summand(tuple(I), tuple(sigma), J, link, E_factors, Y,
                           E_series * link_series * Y_series))
    out.sort(key=lambda s: lex_weight(s.sigma, m))
    return out


def decompose(K: SimplicialComplex, data: PairData, variant: str = ZHAT_VARIANT,
              coeffs=None, threads: int = 1, check: bool = False) -> Decomposition:
    """All nonzero summands, ordered by I (size, then lex) and sigma weight."""
    variant = variant_name(variant)
    c = coefficients(coeffs)
    vdata = data.for_m(K.m)
    subsets = [I for k in range(K.m + 1) for I in itertools.combinations(range(1, K.m + 1), k)]
    work = lambda I: _summands_for(K, vdata, I, variant, c, check)
    if threads and threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(work, subsets))
    else:
        parts = [work(I) for I in subsets]
    return Decomposition(K, variant, [s for p in parts for s in p])


def poincare(K: SimplicialComplex, data: PairData, variant: str = ZHAT_VARIANT,
             coeffs=None, threads: int = 1) -> PoincareSeries:
    return decompose(K, data, variant, coeffs, threads).poincare


# Stanley-Reisner presentation -------------------------------------------------------

@dataclass
class SRPresentation:
    """H*(X_1 x ... x X_m) modulo the ideal of C-monomials on non-faces."""

    K: SimplicialComplex
    data: PairData
    generators: dict[int, list[tuple[str, int]]]
    relations: list[tuple[Simplex, list[tuple]]]  # (minimal non-face, generator monomials)

    @property
    def vdata(self):
        return self.data.for_m(self.K.m)

    def ambient_basis(self) -> list[tuple]:
        return list(itertools.product(*[v.B.labels() + v.C.labels() for v in self.vdata]))

    def quotient_basis(self) -> list[tuple]:
        vd = self.vdata
        return [y for y in self.ambient_basis() if support(y, vd) in self.K.faces]

    def quotient_series(self) -> PoincareSeries:
        vd = self.vdata
        return PoincareSeries.from_degrees(sum(v.deg(l) for l, v in zip(y, vd))
                                           for y in self.quotient_basis())

    def ideal_ranks(self) -> dict[int, int]:
        """Rank of the relation ideal per degree, by elimination over Q."""
        vd = self.vdata
        ambient = self.ambient_basis()
        vectors: dict[int, list[dict]] = {}
        for _, gens in self.relations:
            for g in gens:
                for x in ambient:
                    prod = _monomial_product(g, x, vd)
                    if prod:
                        d = next(iter(_degree(y, vd) for y in prod))
                        vectors.setdefault(d, []).append(prod)
        return {d: _sparse_rank(vs) for d, vs in vectors.items()}

    def quotient_series_by_elimination(self) -> PoincareSeries:
        vd = self.vdata
        amb = PoincareSeries.from_degrees(_degree(y, vd) for y in self.ambient_basis())
        return amb - PoincareSeries(self.ideal_ranks())

    def to_json(self) -> dict:
        return {
            "generators": {str(i): [{"label": l, "deg": d} for l, d in g] for i, g in self.generators.items()},
            "relations": [{"nonface": list(t), "monomials": [list(y) for y in ys]} for t, ys in self.relations],
            "quotient": str(self.quotient_series()),
        }


def sr_presentation(K: SimplicialComplex, data: PairData) -> SRPresentation:
    vd = data.for_m(K.m)
    bad = [i + 1 for i, v in enumerate(vd) if len(v.E)]
    if bad:
        raise DecompositionError(f"E is not empty at vertex {bad[0]}; the quotient form needs E = 0 everywhere")
    gens = {i + 1: [(l, v.deg(l)) for l in v.C.labels()] for i, v in enumerate(vd)}
    rels = []
    for tau in K.minimal_nonfaces():
        choices = [vd[i - 1].C.labels() for i in tau]
        monos = []
        for pick in itertools.product(*choices):
            y = [UNIT] * K.m
            for i, l in zip(tau, pick):
                y[i - 1] = l
            monos.append(tuple(y))
        rels.append((tau, monos))
    return SRPresentation(K, data, gens, rels)


def _sparse_rank(vectors: list[dict]) -> int:
    pivots: dict = {}
    for vec in vectors:
        v = {k: Fraction(c) for k, c in vec.items() if c}
        while v:
            lead = min(v)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = v
                break
            f = v[lead] / p[lead]
            for k, c in p.items():
                nv = v.get(k, 0) - f * c
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return len(pivots)


# products ---------------------------------------------------------------------------

def _degree(y: tuple, vdata) -> int:
    return sum(v.deg(l) for l, v in zip(y, vdata))


def _inv_delta(v: VertexData, w: str) -> str:
    for e, x in v.delta.items():
        if x == w:
            return e
    raise KeyError(w)


def _split(vec: Mapping[str, int], v: VertexData, kinds: str) -> dict:
    return {l: c for l, c in vec.items() if c and (l == UNIT and "B" in kinds or l != UNIT and v.kind(l) in kinds)}


def coordinate_product(x: str, y: str, v: VertexData) -> dict[str, int]:
    """Product of two generator labels at one vertex.

    t_e is an E label, s_e the W label delta(e); B and C multiply in H*(X),
    E and B in H*(A).  Products of C with E or W vanish.
    """
    if x == UNIT:
        return {y: 1}
    if y == UNIT:
        return {x: 1}
    kx, ky = v.kind(x), v.kind(y)
    if kx in "BC" and ky in "BC":
        return _split(v.mulX(x, y), v, "BC")
    if "C" in (kx, ky):
        return {}
    if kx == "E" and ky == "E":
        return _split(v.mulA(x, y), v, "EB")
    if kx == "W" and ky == "W" or kx == "E" and ky == "W":
        return {}
    if kx == "W" and ky == "E":
        return {v.delta[l]: c for l, c in _split(v.mulA(_inv_delta(v, x), y), v, "E").items()}
    if kx == "B" and ky == "E" or kx == "E" and ky == "B":
        return _split(v.mulA(x, y), v, "EB")
    if kx == "B" and ky == "W":
        s = -1 if v.deg(x) % 2 else 1
        return {v.delta[l]: s * c for l, c in _split(v.mulA(x, _inv_delta(v, y)), v, "E").items()}
    if kx == "W" and ky == "B":
        return {v.delta[l]: c for l, c in _split(v.mulA(_inv_delta(v, x), y), v, "E").items()}
    raise DecompositionError(f"no rule for {x} * {y}")


def _monomial_product(u: tuple, w: tuple, vdata, K: SimplicialComplex | None = None) -> dict:
    du = [v.deg(l) for l, v in zip(u, vdata)]
    dw = [v.deg(l) for l, v in zip(w, vdata)]
    sign = 0
    seen = 0
    for i in range(len(u)):
        sign += du[i] * seen
        seen += dw[i]
    terms = [((), -1 if sign % 2 else 1)]
    for a, b, v in zip(u, w, vdata):
        local = coordinate_product(a, b, v)
        if not local:
            return {}
        terms = [(t + (l,), c * lc) for t, c in terms for l, lc in local.items()]
    out: dict = {}
    for y, c in terms:
        if K is not None and support(y, vdata) not in K.faces:
            continue
        out[y] = out.get(y, 0) + c
    return {y: c for y, c in out.items() if c}


def chain_product(x: Mapping[tuple, int], y: Mapping[tuple, int], K: SimplicialComplex,
                  data: PairData) -> dict:
    """Product of E_1-chains, dropping monomials supported off K."""
    vd = data.for_m(K.m)
    out: dict = {}
    for u, a in x.items():
        for w, b in y.items():
            for z, c in _monomial_product(u, w, vd, K).items():
                out[z] = out.get(z, 0) + a * b * c
    return {z: c for z, c in out.items() if c}


@dataclass(frozen=True)
class BasisClass:
    labels: tuple  # block labels, E on J
    J: Simplex
    sigma: Simplex
    I: Simplex
    link_degree: int  # degree in the top part (reduced link degree + 1)
    index: int
    degree: int

    def __str__(self) -> str:
        body = " ⊗ ".join(self.labels)
        return f"[{body}]_{self.link_degree}.{self.index}"


@dataclass
class RingElement:
    ring: "CohomologyRing"
    coeffs: dict[int, int] = field(default_factory=dict)

    def __add__(self, other: "RingElement") -> "RingElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return RingElement(self.ring, {k: v for k, v in out.items() if v})

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scale(self, c: int) -> "RingElement":
        return RingElement(self.ring, {k: c * v for k, v in self.coeffs.items() if c * v})

    def __mul__(self, other: "RingElement") -> "RingElement":
        return self.ring.product(self, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        return isinstance(other, RingElement) and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> set[int]:
        return {self.ring.basis[k].degree for k in self.coeffs}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{self.ring.basis[k]}" for k, c in sorted(self.coeffs.items()))


class CohomologyRing:
    """Free part of the cohomology ring of Z or Zhat in the summand basis."""

    def __init__(self, K: SimplicialComplex, data: PairData, variant: str = Z_VARIANT):
        self.K = K
        self.data = data
        self.variant = variant_name(variant)
        self.vdata = data.for_m(K.m)
        self.basis: list[BasisClass] = []
        self.index: dict[tuple, int] = {}
        self._reps: list[dict] = []
        ss = SpectralSequence(K, data, self.variant)
        for sh, labels, _ in ss.blocks():
            N = K.link_complement(sh.I, sh.sigma)
            top = top_cohomology(N, sh.J)
            base = sum(v.deg(l) for l, v in zip(labels, self.vdata))
            for k in sorted(top.groups):
                fs = top.faces[k]
                for i, vec in enumerate(top.groups[k].free):
                    self.index[(labels, k, i)] = len(self.basis)
                    self.basis.append(BasisClass(labels, sh.J, sh.sigma, sh.I, k, i, base + k))
                    self._reps.append(self._chain(labels, {fs[j]: c for j, c in enumerate(vec) if c}))

    def __len__(self) -> int:
        return len(self.basis)

    def _base_degrees(self, labels) -> list[int]:
        return [v.deg(l) for l, v in zip(labels, self.vdata)]

    def _chain(self, labels: tuple, vec: Mapping[Simplex, int]) -> dict:
        base = self._base_degrees(labels)
        out = {}
        for f, c in vec.items():
            mono = tuple(self.vdata[i].delta[l] if (i + 1) in f else l for i, l in enumerate(labels))
            out[mono] = c * twist_sign(f, base)
        return out

    def series(self) -> PoincareSeries:
        return PoincareSeries.from_degrees(b.degree for b in self.basis)

    def element(self, i: int, c: int = 1) -> RingElement:
        return RingElement(self, {i: c})

    def elements_of_degree(self, d: int) -> list[RingElement]:
        return [self.element(i) for i, b in enumerate(self.basis) if b.degree == d]

    def representative(self, x: RingElement) -> dict:
        out: dict = {}
        for k, c in x.coeffs.items():
            for y, a in self._reps[k].items():
                out[y] = out.get(y, 0) + c * a
        return {y: c for y, c in out.items() if c}

    def reduce(self, chain: Mapping[tuple, int], check: bool = False) -> RingElement:
        """Class of an E_1 cocycle in the summand basis (free part)."""
        if check and coboundary(chain, self.K, self.data):
            raise DecompositionError("chain is not a cocycle")
        blocks: dict[tuple, dict] = {}
        for y, c in chain.items():
            labels, face = [], []
            for i, (l, v) in enumerate(zip(y, self.vdata)):
                if l in v.W:
                    labels.append(_inv_delta(v, l))
                    face.append(i + 1)
                else:
                    labels.append(l)
            blocks.setdefault(tuple(labels), {})[tuple(face)] = c
        out: dict[int, int] = {}
        for labels, vec in blocks.items():
            if self.variant == ZHAT_VARIANT and UNIT in labels:
                raise DecompositionError("product left the reduced part")
            J = tuple(i + 1 for i, (l, v) in enumerate(zip(labels, self.vdata)) if l in v.E)
            sigma = tuple(i + 1 for i, (l, v) in enumerate(zip(labels, self.vdata)) if l in v.C)
            I = tuple(i for i in range(1, self.K.m + 1) if i not in J)
            top = top_cohomology(self.K.link_complement(I, sigma), J)
            base = self._base_degrees(labels)
            by_deg: dict[int, dict] = {}
            for f, c in vec.items():
                by_deg.setdefault(len(f), {})[f] = c * twist_sign(f, base)
            for k, v in by_deg.items():
                for i, c in enumerate(top.coordinates(k, v)):
                    if c:
                        idx = self.index[(labels, k, i)]
                        out[idx] = out.get(idx, 0) + c
        return RingElement(self, {k: v for k, v in out.items() if v})

    def product(self, x: RingElement, y: RingElement, check: bool = False) -> RingElement:
        z = chain_product(self.representative(x), self.representative(y), self.K, self.data)
        return self.reduce(z, check)

    def one(self) -> RingElement:
        if self.variant != Z_VARIANT:
            raise DecompositionError("the reduced ring has no unit")
        return self.reduce({(UNIT,) * self.K.m: 1})

    def table(self, degrees: Iterable[int] | None = None) -> list[dict]:
        """Nonzero products of basis classes (in the given degrees)."""
        keep = None if degrees is None else set(degrees)
        idx = [i for i, b in enumerate(self.basis) if keep is None or b.degree in keep]
        out = []
        for i in idx:
            for j in idx:
                p = self.product(self.element(i), self.element(j))
                if p.coeffs:
                    out.append({"left": str(self.basis[i]), "right": str(self.basis[j]),
                                "product": {str(self.basis[k]): c for k, c in sorted(p.coeffs.items())}})
        return out


def product(x: RingElement, y: RingElement, K: SimplicialComplex | None = None,
            data: PairData | None = None) -> RingElement:
    if x.ring is not y.ring:
        raise DecompositionError("elements belong to different rings")
    return x.ring.product(x, y)


# the maximal summand subring -------------------------------------------------------

@dataclass
class MaximalSubring:
    basis: list[tuple]
    degrees: list[int]
    table: dict[tuple[int, int], dict[int, int]]
    closed: bool


def maximal_subring(K: SimplicialComplex, data: PairData) -> MaximalSubring:
    """Summands with I = [m]: non-unit B/C monomials with C-support in K."""
    vd = data.for_m(K.m)
    opts = [[l for l in v.B.labels() if l != UNIT] + v.C.labels() for v in vd]
    basis = [y for y in itertools.product(*opts) if support(y, vd) in K.faces]
    pos = {y: i for i, y in enumerate(basis)}
    table = {}
    closed = True
    for i, u in enumerate(basis):
        for j, w in enumerate(basis):
            prod = _monomial_product(u, w, vd, K)
            if not prod:
                continue
            row = {}
            for z, c in prod.items():
                if z not in pos:
                    closed = False
                    continue
                row[pos[z]] = c
            if row:
                table[(i, j)] = row
    return MaximalSubring(basis, [_degree(y, vd) for y in basis], table, closed)
