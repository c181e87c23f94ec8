"""Simplicial complexes on the vertex set [m] = {1, ..., m}.

Faces are stored as sorted tuples with their ambient labels.  Vertices of
[m] that never occur in a face are ghost vertices.  Full subcomplexes and
links in the complement keep the ambient labels as well, so nothing is ever
re-indexed.
"""
from __future__ import annotations

import itertools
import random
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

Simplex = tuple  # strictly increasing tuple of ints; () is the empty simplex


class ComplexError(ValueError):
    pass


def simplex(vertices: Iterable[int]) -> Simplex:
    return tuple(sorted(set(int(v) for v in vertices)))


def lex_weight(sigma: Sequence[int], m: int) -> int:
    """Position of ``sigma`` among all faces of the full simplex on [m].

    Faces are ordered by size first and lexicographically within a size,
    so the empty face has weight 0 and [m] has weight 2**m - 1.
    """
    s = simplex(sigma)
    k = len(s)
    if s and (s[0] < 1 or s[-1] > m):
        raise ComplexError(f"face {s} is not a face of the simplex on {m} vertices")
    w = sum(comb(m, j) for j in range(k))
    prev = 0
    for i, v in enumerate(s, start=1):
        for u in range(prev + 1, v):
            w += comb(m - u, k - i)
        prev = v
    return w


@lru_cache(maxsize=None)
def faces_in_lex_order(m: int) -> tuple[Simplex, ...]:
    out = []
    for k in range(m + 1):
        out.extend(itertools.combinations(range(1, m + 1), k))
    return tuple(out)


def face_of_weight(w: int, m: int) -> Simplex:
    faces = faces_in_lex_order(m)
    if not 0 <= w < len(faces):
        raise ComplexError(f"weight {w} out of range for m={m}")
    return faces[w]


class SimplicialComplex:
    """A downward closed family of faces of the simplex on [m].

    The void complex (no faces, not even the empty one) is only available
    through :meth:`void`; everything built from facets contains ().
    """

    __slots__ = ("m", "faces", "_hash")

    def __init__(self, m: int, faces: Iterable[Sequence[int]], *, closed: bool = False):
        if int(m) <= 0:
            raise ComplexError(f"m must be positive, got {m}")
        self.m = int(m)
        fs = {simplex(f) for f in faces}
        for f in fs:
            if f and (f[0] < 1 or f[-1] > self.m):
                raise ComplexError(f"vertex out of range 1..{self.m} in face {list(f)}")
        if not closed:
            fs = _closure(fs)
        self.faces = frozenset(fs)
        self._hash = None

    # constructors
    @classmethod
    def from_facets(cls, facets: Iterable[Sequence[int]], m: int) -> "SimplicialComplex":
        facets = [list(f) for f in facets]
        return cls(m, facets + [[]])

    @classmethod
    def void(cls, m: int) -> "SimplicialComplex":
        return cls(m, [], closed=True)

    @classmethod
    def simplex_boundary(cls, m: int) -> "SimplicialComplex":
        return cls.from_facets(itertools.combinations(range(1, m + 1), m - 1), m)

    @classmethod
    def full_simplex(cls, m: int) -> "SimplicialComplex":
        return cls.from_facets([range(1, m + 1)], m)

    @classmethod
    def polygon(cls, n: int) -> "SimplicialComplex":
        if n < 3:
            raise ComplexError("a polygon needs at least 3 vertices")
        edges = [(i, i % n + 1) for i in range(1, n + 1)]
        return cls.from_facets(edges, n)

    @classmethod
    def from_json(cls, obj: dict) -> "SimplicialComplex":
        if not isinstance(obj, dict) or "m" not in obj:
            raise ComplexError("complex JSON needs an integer field 'm'")
        m = obj["m"]
        if not isinstance(m, int) or isinstance(m, bool):
            raise ComplexError("field 'm' must be an integer")
        facets = obj.get("facets", [])
        if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
            raise ComplexError("field 'facets' must be a list of integer lists")
        for f in facets:
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in f):
                raise ComplexError(f"facet {f} contains a non-integer vertex")
        return cls.from_facets(facets, m)

    def to_json(self) -> dict:
        return {"m": self.m, "facets": [list(f) for f in self.facets_sorted()]}

    # basic queries
    def __contains__(self, face) -> bool:
        return simplex(face) in self.faces

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.sorted_faces())

    def __len__(self) -> int:
        return len(self.faces)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.m == other.m and self.faces == other.faces

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, self.faces))
        return self._hash

    def __repr__(self) -> str:
        return f"SimplicialComplex(m={self.m}, facets={[list(f) for f in self.facets_sorted()]})"

    @property
    def is_void(self) -> bool:
        return not self.faces

    def sorted_faces(self) -> list[Simplex]:
        """Faces in increasing lex weight."""
        return sorted(self.faces, key=lambda f: (len(f), f))

    def facets(self) -> list[Simplex]:
        fs = self.faces
        out = []
        for f in fs:
            if not any(len(g) == len(f) + 1 and set(f) < set(g) for g in fs):
                out.append(f)
        return out

    def facets_sorted(self) -> list[Simplex]:
        return sorted(self.facets(), key=lambda f: (len(f), f))

    def vertices(self) -> list[int]:
        return sorted(f[0] for f in self.faces if len(f) == 1)

    def ghost_vertices(self) -> list[int]:
        vs = set(self.vertices())
        return [v for v in range(1, self.m + 1) if v not in vs]

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.faces), default=0) - 1

    def faces_of_dim(self, d: int) -> list[Simplex]:
        return sorted(f for f in self.faces if len(f) == d + 1)

    def f_vector(self) -> list[int]:
        """Counts (t_{-1}, t_0, t_1, ...); t_{-1} = 1 unless the complex is void."""
        if self.is_void:
            return []
        counts = [0] * (self.dim + 2)
        for f in self.faces:
            counts[len(f)] += 1
        return counts

    def minimal_nonfaces(self, vertex_set: Iterable[int] | None = None) -> list[Simplex]:
        vs = range(1, self.m + 1) if vertex_set is None else sorted(vertex_set)
        out = []
        for k in range(1, len(vs) + 1):
            for c in itertools.combinations(vs, k):
                if c in self.faces:
                    continue
                if all(c[:i] + c[i + 1:] in self.faces for i in range(k)):
                    out.append(c)
        return out

    # constructions
    def full_subcomplex(self, I: Iterable[int]) -> "SimplicialComplex":
        Iset = set(I)
        return SimplicialComplex(self.m, [f for f in self.faces if Iset.issuperset(f)], closed=True)

    def link_complement(self, I: Iterable[int], sigma: Sequence[int]) -> "SimplicialComplex":
        """N(I, sigma): faces on [m] - I whose union with sigma is a face.

        Always contains (), so a maximal sigma yields {()} whose augmented
        reduced cohomology is one copy of the coefficients in degree -1.
        """
        Iset = set(I)
        s = simplex(sigma)
        if s not in self.faces:
            raise ComplexError(f"{list(s)} is not a simplex of K")
        if not Iset.issuperset(s):
            raise ComplexError(f"{list(s)} is not contained in I={sorted(Iset)}")
        sset = set(s)
        faces = [tuple(v for v in f if v not in sset) for f in self.faces if sset.issubset(f)]
        faces = [f for f in faces if Iset.isdisjoint(f)]
        return SimplicialComplex(self.m, faces, closed=True)

    def link(self, sigma: Sequence[int]) -> "SimplicialComplex":
        return self.link_complement(simplex(sigma), sigma)

    def is_ngon(self) -> bool:
        """True when K is the boundary of a polygon using every vertex of [m]."""
        m = self.m
        if m < 3 or self.dim != 1 or self.ghost_vertices():
            return False
        edges = self.faces_of_dim(1)
        if len(edges) != m:
            return False
        nbrs: dict[int, list[int]] = {v: [] for v in range(1, m + 1)}
        for a, b in edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        if any(len(n) != 2 for n in nbrs.values()):
            return False
        seen, prev, cur = {1}, None, 1
        while True:
            nxt = nbrs[cur][0] if nbrs[cur][0] != prev else nbrs[cur][1]
            if nxt == 1:
                break
            seen.add(nxt)
            prev, cur = cur, nxt
        return len(seen) == m


def _closure(faces: set) -> set:
    out = set()
    for f in sorted(faces, key=len, reverse=True):
        if f in out:
            continue
        for k in range(len(f) + 1):
            out.update(itertools.combinations(f, k))
    return out


def validate(facets: Iterable[Sequence[int]], m: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets(facets, m)


full_subcomplex = SimplicialComplex.full_subcomplex
link_complement = SimplicialComplex.link_complement
f_vector = SimplicialComplex.f_vector


def enumerate_complexes(m: int) -> list[SimplicialComplex]:
    """Every complex on [m] that contains the empty face (ghosts allowed)."""
    nonempty = [f for f in faces_in_lex_order(m) if f]
    out = []

    def rec(i: int, chosen: set):
        if i == len(nonempty):
            out.append(SimplicialComplex(m, chosen | {()}, closed=True))
            return
        f = nonempty[i]
        rec(i + 1, chosen)
        if all(f[:j] + f[j + 1:] in chosen or len(f) == 1 for j in range(len(f))):
            chosen.add(f)
            rec(i + 1, chosen)
            chosen.discard(f)

    rec(0, set())
    return out


def random_complex(m: int, rng: random.Random, max_facets: int | None = None) -> SimplicialComplex:
    """Closure of a few random faces; vertices may end up as ghosts."""
    max_facets = max_facets or 2 * m
    n = rng.randint(0, max_facets)
    facets = []
    for _ in range(n):
        k = rng.randint(1, m)
        facets.append(rng.sample(range(1, m + 1), k))
    return SimplicialComplex.from_facets(facets, m)


def corpus(seed: int = 20240607, n_random: int = 200) -> list[SimplicialComplex]:
    """All complexes with m <= 4 plus ``n_random`` random ones with m in {5, 6}."""
    out = []
    for m in range(1, 5):
        out.extend(enumerate_complexes(m))
    rng = random.Random(seed)
    for _ in range(n_random):
        out.append(random_complex(rng.choice((5, 6)), rng))
    return out

