"""Per-vertex strong freeness data for a pair (X, A).

At each vertex the user supplies a chosen splitting

    H*(A) = E + B,   H*(X) = B + C,   H~*(X/A) = C + W,

with 1 in B and a degree raising bijection delta: E -> W, together with
structure constants for the two rings.  Nothing is inferred from spaces.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

UNIT = "1"

Vector = dict  # label -> int coefficient


class PairDataError(ValueError):
    def __init__(self, issues: Sequence[str]):
        self.issues = list(issues)
        super().__init__("; ".join(self.issues))


@dataclass(frozen=True)
class GradedBasis:
    generators: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, gens: Iterable) -> "GradedBasis":
        out = []
        for g in gens:
            if isinstance(g, Mapping):
                out.append((str(g["label"]), int(g["deg"])))
            else:
                label, deg = g
                out.append((str(label), int(deg)))
        return cls(tuple(out))

    def labels(self) -> list[str]:
        return [l for l, _ in self.generators]

    def degrees(self) -> list[int]:
        return [d for _, d in self.generators]

    def degree(self, label: str) -> int:
        for l, d in self.generators:
            if l == label:
                return d
        raise KeyError(label)

    def without(self, label: str) -> "GradedBasis":
        return GradedBasis(tuple(g for g in self.generators if g[0] != label))

    def __contains__(self, label) -> bool:
        return any(l == label for l, _ in self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def to_json(self) -> list:
        return [{"label": l, "deg": d} for l, d in self.generators]


Table = dict  # (a, b) -> {label: coeff}


@dataclass
class VertexData:
    E: GradedBasis
    B: GradedBasis
    C: GradedBasis
    W: GradedBasis
    delta: dict
    productX: Table = field(default_factory=dict)
    productA: Table = field(default_factory=dict)
    max_degree: int | None = None
    raw_X: Table = field(default_factory=dict, repr=False)
    raw_A: Table = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, E=(), B=((UNIT, 0),), C=(), productX=None, productA=None,
              W=None, delta=None, max_degree=None) -> "VertexData":
        Eb, Bb, Cb = GradedBasis.of(E), GradedBasis.of(B), GradedBasis.of(C)
        if delta is None:
            delta = {}
        delta = dict(delta)
        if W is None:
            wgens = []
            for e, d in Eb:
                w = delta.setdefault(e, f"δ({e})")
                wgens.append((w, d + 1))
            Wb = GradedBasis(tuple(wgens))
        else:
            Wb = GradedBasis.of(W)
            if not delta and len(Wb) == len(Eb):
                delta = {e: w for (e, _), (w, _) in zip(Eb, Wb)}
        raw_X = _table(productX)
        raw_A = _table(productA)
        v = cls(Eb, Bb, Cb, Wb, delta, {}, {}, max_degree, raw_X, raw_A)
        v.productX = v._complete(raw_X, is_A=False)
        v.productA = v._complete(raw_A, is_A=True)
        return v

    # lookup
    def all_labels(self) -> list[str]:
        return self.E.labels() + self.B.labels() + self.C.labels() + self.W.labels()

    def kind(self, label: str) -> str:
        for name in "EBCW":
            if label in getattr(self, name):
                return name
        raise KeyError(label)

    def deg(self, label: str) -> int:
        for name in "EBCW":
            basis = getattr(self, name)
            if label in basis:
                return basis.degree(label)
        raise KeyError(label)

    def w_of(self, e: str) -> str:
        return self.delta[e]

    def _complete(self, raw: Table, is_A: bool) -> Table:
        out: Table = {}
        for (a, b), res in raw.items():
            out[(a, b)] = dict(res)
        for (a, b), res in raw.items():
            if (b, a) not in raw:
                try:
                    s = -1 if (self.deg(a) * self.deg(b)) % 2 else 1
                except KeyError:
                    continue
                out[(b, a)] = {g: s * c for g, c in res.items()}
        if is_A:
            # iota is a ring map, so products of B classes in H*(A) are the
            # B part of the product in H*(X)
            for a in self.B.labels():
                for b in self.B.labels():
                    if (a, b) in out or UNIT in (a, b):
                        continue
                    res = self.mulX(a, b)
                    res = {g: c for g, c in res.items() if g in self.B}
                    if res:
                        out[(a, b)] = res
        return out

    def mulX(self, a: str, b: str) -> Vector:
        if a == UNIT:
            return {b: 1}
        if b == UNIT:
            return {a: 1}
        return dict(self.productX.get((a, b), {}))

    def mulA(self, a: str, b: str) -> Vector:
        if a == UNIT:
            return {b: 1}
        if b == UNIT:
            return {a: 1}
        return dict(self.productA.get((a, b), {}))

    # validation
    def issues(self, where: str = "") -> list[str]:
        p = f"{where}: " if where else ""
        out: list[str] = []
        labels = self.all_labels()
        dup = sorted({l for l in labels if labels.count(l) > 1})
        if dup:
            out.append(f"{p}duplicate generator labels {dup}")
        for name in "EBCW":
            for l, d in getattr(self, name):
                if d < 0:
                    out.append(f"{p}generator {l} in {name} has negative degree {d}")
                if self.max_degree is not None and d > self.max_degree:
                    out.append(f"{p}generator {l} has degree {d} above max_degree {self.max_degree}")
        if UNIT not in self.B:
            out.append(f"{p}B has no unit generator '{UNIT}'")
        elif self.B.degree(UNIT) != 0:
            out.append(f"{p}unit '{UNIT}' must have degree 0")
        for name in "ECW":
            if UNIT in getattr(self, name):
                out.append(f"{p}unit label '{UNIT}' is reserved for B but appears in {name}")
        # delta
        es, ws = self.E.labels(), self.W.labels()
        if set(self.delta) != set(es):
            out.append(f"{p}delta must be defined exactly on E={es}, got {sorted(self.delta)}")
        images = list(self.delta.values())
        if sorted(images) != sorted(ws) or len(set(images)) != len(images):
            out.append(f"{p}delta is not a bijection onto W={ws}")
        for e, w in self.delta.items():
            if e in self.E and w in self.W and self.W.degree(w) != self.E.degree(e) + 1:
                out.append(f"{p}delta({e}) = {w} has degree {self.W.degree(w)}, expected {self.E.degree(e) + 1}")
        if out:
            return out
        out += self._table_issues(self.raw_X, self.productX, False, p)
        out += self._table_issues(self.raw_A, self.productA, True, p)
        return out

    def _table_issues(self, raw: Table, table: Table, is_A: bool, p: str) -> list[str]:
        out = []
        ring = "H*(A)" if is_A else "H*(X)"
        ops = set(self.E.labels() + self.B.labels()) if is_A else set(self.B.labels() + self.C.labels())
        for (a, b), res in raw.items():
            kinds = {self.kind(x) for x in (a, b) if x in self.all_labels()}
            if "E" in kinds and "C" in kinds:
                out.append(f"{p}product {a}*{b} mixes E and C; it must be zero")
                continue
            for x in (a, b):
                if x not in ops:
                    out.append(f"{p}{ring} product {a}*{b}: {x} is not a generator of {ring}")
            for g, c in res.items():
                if g not in ops:
                    out.append(f"{p}{ring} product {a}*{b} lands on {g}, not a generator of {ring}")
        if out:
            return out
        for (a, b), res in table.items():
            da, db = self.deg(a), self.deg(b)
            for g, c in res.items():
                if not c:
                    continue
                if self.deg(g) != da + db:
                    out.append(f"{p}{ring} product {a}*{b} = {g} has degree {self.deg(g)}, expected {da + db}")
                if self.max_degree is not None and da + db > self.max_degree:
                    out.append(f"{p}{ring} product {a}*{b} lands in degree {da + db} above max_degree {self.max_degree}")
                if not is_A and self.kind(g) != "C" and "C" in (self.kind(a), self.kind(b)):
                    out.append(f"{p}C is not an ideal: {a}*{b} has a component on {g}")
            if (b, a) in table:
                s = -1 if (da * db) % 2 else 1
                other = table[(b, a)]
                if {g: s * c for g, c in other.items() if c} != {g: c for g, c in res.items() if c}:
                    out.append(f"{p}{ring} is not graded commutative on {a}, {b}")
            if UNIT in (a, b):
                x = b if a == UNIT else a
                if {g: c for g, c in res.items() if c} != {x: 1}:
                    out.append(f"{p}unit does not act as identity on {x} in {ring}")
        if is_A:
            for (a, b), res in raw.items():
                if a in self.B and b in self.B and UNIT not in (a, b):
                    x = {g: c for g, c in self.mulX(a, b).items() if g in self.B and c}
                    if {g: c for g, c in res.items() if c} != x:
                        out.append(f"{p}restriction is not multiplicative on {a}*{b}")
        if out:
            return out
        mul = self.mulA if is_A else self.mulX
        gens = sorted(ops)
        for a, b, c in itertools.product(gens, repeat=3):
            left = _mul_vec(mul, _mul_vec(mul, {a: 1}, {b: 1}), {c: 1})
            right = _mul_vec(mul, {a: 1}, _mul_vec(mul, {b: 1}, {c: 1}))
            if left != right:
                out.append(f"{p}{ring} is not associative on ({a}, {b}, {c})")
                break
        return out

    def to_json(self) -> dict:
        def tab(t):
            return [{"a": a, "b": b, "result": [{"gen": g, "coeff": c} for g, c in r.items()]}
                    for (a, b), r in t.items()]
        out = {"E": self.E.to_json(), "B": self.B.to_json(), "C": self.C.to_json(),
               "W": self.W.to_json(), "delta": dict(self.delta),
               "productX": tab(self.raw_X), "productA": tab(self.raw_A)}
        if self.max_degree is not None:
            out["max_degree"] = self.max_degree
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "VertexData":
        if not isinstance(obj, Mapping):
            raise PairDataError(["vertex data must be a JSON object"])
        allowed = {"E", "B", "C", "W", "delta", "productX", "productA", "max_degree"}
        extra = set(obj) - allowed
        if extra:
            raise PairDataError([f"unknown field(s) {sorted(extra)} in vertex data"])
        try:
            gens = {k: GradedBasis.of(obj.get(k, [])) for k in "EC"}
            B = GradedBasis.of(obj["B"]) if "B" in obj else GradedBasis(((UNIT, 0),))
        except (KeyError, TypeError, ValueError) as exc:
            raise PairDataError([f"malformed generator list: {exc}"]) from None
        W = obj.get("W")
        if W is not None:
            W = GradedBasis.of(W).generators

        def parse_tab(name):
            rows = obj.get(name, [])
            out = {}
            if not isinstance(rows, list):
                raise PairDataError([f"{name} must be a list"])
            for k, row in enumerate(rows):
                try:
                    out[(str(row["a"]), str(row["b"]))] = {
                        str(r["gen"]): int(r["coeff"]) for r in row.get("result", [])}
                except (KeyError, TypeError, ValueError):
                    raise PairDataError([f"{name}[{k}] needs fields a, b, result[gen, coeff]"]) from None
            return out

        return cls.build(gens["E"].generators, B.generators, gens["C"].generators,
                         productX=parse_tab("productX"), productA=parse_tab("productA"),
                         W=W, delta=obj.get("delta"), max_degree=obj.get("max_degree"))


def _table(t) -> Table:
    out: Table = {}
    if not t:
        return out
    items = t.items() if isinstance(t, Mapping) else t
    for key, res in items:
        a, b = key
        out[(str(a), str(b))] = {str(g): int(c) for g, c in dict(res).items() if c}
    return out


def _mul_vec(mul, x: Vector, y: Vector) -> Vector:
    out: Vector = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for g, c in mul(a, b).items():
                out[g] = out.get(g, 0) + ca * cb * c
    return {g: c for g, c in out.items() if c}


class PairData:
    """Strong freeness data at each vertex of [m].

    A single VertexData can be stored once and broadcast to any m.
    """

    def __init__(self, vertices: Sequence[VertexData] | VertexData, name: str = ""):
        if isinstance(vertices, VertexData):
            self.uniform: VertexData | None = vertices
            self.vertices: tuple[VertexData, ...] = ()
        else:
            self.uniform = None
            self.vertices = tuple(vertices)
        self.name = name

    def for_m(self, m: int) -> tuple[VertexData, ...]:
        if self.uniform is not None:
            return (self.uniform,) * m
        if len(self.vertices) != m:
            raise PairDataError([f"pair data has {len(self.vertices)} vertices but the complex has m={m}"])
        return self.vertices

    def vertex(self, i: int, m: int) -> VertexData:
        return self.for_m(m)[i - 1]

    @property
    def all_E_empty(self) -> bool:
        vs = (self.uniform,) if self.uniform is not None else self.vertices
        return all(len(v.E) == 0 for v in vs)

    def issues(self) -> list[str]:
        if self.uniform is not None:
            return self.uniform.issues("every vertex")
        out = []
        for i, v in enumerate(self.vertices, start=1):
            out += v.issues(f"vertex {i}")
        return out

    def check(self) -> "PairData":
        issues = self.issues()
        if issues:
            raise PairDataError(issues)
        return self

    def relabel(self, mapping: Mapping[str, str]) -> "PairData":
        """Rename generators (the unit excepted); used for label-invariance checks."""
        def one(v: VertexData) -> VertexData:
            r = lambda l: l if l == UNIT else mapping.get(l, l)
            ren = lambda b: [(r(l), d) for l, d in b]
            tab = lambda t: {(r(a), r(b)): {r(g): c for g, c in res.items()} for (a, b), res in t.items()}
            return VertexData.build(ren(v.E), ren(v.B), ren(v.C), tab(v.raw_X), tab(v.raw_A),
                                    W=ren(v.W), delta={r(e): r(w) for e, w in v.delta.items()},
                                    max_degree=v.max_degree)
        if self.uniform is not None:
            return PairData(one(self.uniform), self.name)
        return PairData([one(v) for v in self.vertices], self.name)

    def to_json(self) -> dict:
        if self.uniform is not None:
            return self.uniform.to_json()
        return {"vertices": [v.to_json() for v in self.vertices]}

    @classmethod
    def from_json(cls, obj) -> "PairData":
        if isinstance(obj, list):
            return cls([VertexData.from_json(v) for v in obj])
        if isinstance(obj, Mapping) and "vertices" in obj:
            return cls([VertexData.from_json(v) for v in obj["vertices"]])
        return cls(VertexData.from_json(obj))

    @classmethod
    def load(cls, path) -> "PairData":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def __repr__(self) -> str:
        return f"PairData({self.name or 'custom'})"


@dataclass
class ValidationReport:
    errors: list[str]

    @property
    def ok(self) -> bool:
        return not self.errors

    def __str__(self) -> str:
        return "valid" if self.ok else "\n".join(self.errors)


def validate_pair_data(data: PairData | VertexData) -> ValidationReport:
    if isinstance(data, VertexData):
        return ValidationReport(data.issues())
    return ValidationReport(data.issues())


# presets ----------------------------------------------------------------------

def d1s0() -> PairData:
    """(D^1, S^0): H*(S^0) has basis 1 and the idempotent point class e_0."""
    v = VertexData.build(E=[("e_0", 0)], productA={("e_0", "e_0"): {"e_0": 1}},
                         W=[("w_1", 1)], delta={"e_0": "w_1"})
    return PairData(v, "(D1,S0)")


def d2s1() -> PairData:
    v = VertexData.build(E=[("e_1", 1)], W=[("w_2", 2)], delta={"e_1": "w_2"})
    return PairData(v, "(D2,S1)")


def three_block_pair() -> PairData:
    """E = {e2}, B = {1, b4}, C = {c6}; positive degree products vanish."""
    v = VertexData.build(E=[("e2", 2)], B=[(UNIT, 0), ("b4", 4)], C=[("c6", 6)],
                         W=[("w3", 3)], delta={"e2": "w3"})
    return PairData(v, "three-block")


def sphere_pair(n: int = 2) -> PairData:
    """(S^n, point): E empty, C one class in degree n."""
    v = VertexData.build(C=[(f"c{n}", n)])
    return PairData(v, f"(S{n},pt)")


def cp_pair(k: int) -> PairData:
    """(CP^k, point) with H*(CP^k) = Z[v]/(v^(k+1))."""
    C = [(f"v^{i}" if i > 1 else "v", 2 * i) for i in range(1, k + 1)]
    name = lambda i: "v" if i == 1 else f"v^{i}"
    prod = {}
    for a in range(1, k + 1):
        for b in range(a, k + 1):
            if a + b <= k:
                prod[(name(a), name(b))] = {name(a + b): 1}
    v = VertexData.build(C=C, productX=prod, max_degree=2 * k)
    return PairData(v, f"(CP{k},pt)")


def disk_wedge_pair() -> PairData:
    """X = D^2 v S^3 with A = S^1: E = {e1}, B = {1}, C = {c3}, W = {w2}."""
    v = VertexData.build(E=[("e1", 1)], C=[("c3", 3)], W=[("w2", 2)], delta={"e1": "w2"})
    return PairData(v, "(D2vS3,S1)")


PRESETS = {
    "d1s0": d1s0,
    "d2s1": d2s1,
    "three-block": three_block_pair,
    "sphere": sphere_pair,
    "disk-wedge": disk_wedge_pair,
}
