"""Laurent polynomials in one variable t with integer coefficients."""
from __future__ import annotations

import re
from typing import Iterable, Mapping


class PoincareSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {int(k): int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "PoincareSeries":
        return cls({exp: coeff})

    @classmethod
    def one(cls) -> "PoincareSeries":
        return cls({0: 1})

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "PoincareSeries":
        out: dict[int, int] = {}
        for d in degrees:
            out[d] = out.get(d, 0) + 1
        return cls(out)

    @classmethod
    def parse(cls, text: str) -> "PoincareSeries":
        s = text.replace(" ", "").replace("−", "-")
        if s in ("", "0"):
            return cls()
        out: dict[int, int] = {}
        for sign, coef, var, exp in re.findall(r"([+-]?)(\d*)(t?)(?:\^\{?(-?\d+)\}?)?", s):
            if not coef and not var:
                continue
            c = int(coef) if coef else 1
            e = (int(exp) if exp else 1) if var else 0
            if sign == "-":
                c = -c
            out[e] = out.get(e, 0) + c
        return cls(out)

    def __add__(self, other: "PoincareSeries") -> "PoincareSeries":
        out = dict(self.coeffs)
        for k, v in _lift(other).coeffs.items():
            out[k] = out.get(k, 0) + v
        return PoincareSeries(out)

    __radd__ = __add__

    def __neg__(self) -> "PoincareSeries":
        return PoincareSeries({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "PoincareSeries") -> "PoincareSeries":
        return self + (-_lift(other))

    def __mul__(self, other) -> "PoincareSeries":
        other = _lift(other)
        out: dict[int, int] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return PoincareSeries(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PoincareSeries":
        out = PoincareSeries.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, str):
            other = PoincareSeries.parse(other)
        if isinstance(other, int):
            other = PoincareSeries({0: other})
        return isinstance(other, PoincareSeries) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __getitem__(self, exp: int) -> int:
        return self.coeffs.get(exp, 0)

    def at(self, t: int) -> int:
        """Evaluate at an integer (negative exponents need t = +-1)."""
        total = 0
        for k, v in self.coeffs.items():
            if k < 0:
                if t not in (1, -1):
                    raise ValueError("negative exponents only evaluate at t = +-1")
                total += v * t ** (-k)
            else:
                total += v * t ** k
        return total

    def total(self) -> int:
        return sum(self.coeffs.values())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            if k == 0:
                body = str(abs(v))
            else:
                var = "t" if k == 1 else f"t^{k}"
                body = var if abs(v) == 1 else f"{abs(v)}{var}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += sign + body
        return s

    def __repr__(self) -> str:
        return f"PoincareSeries({self})"

    def to_tex(self) -> str:
        return re.sub(r"\^(-?\d+)", lambda mt: "^{%s}" % mt.group(1), str(self))


def _lift(x) -> PoincareSeries:
    if isinstance(x, PoincareSeries):
        return x
    if isinstance(x, int):
        return PoincareSeries({0: x})
    raise TypeError(f"cannot combine PoincareSeries with {type(x).__name__}")


def poincare_series(basis) -> PoincareSeries:
    """Sum of t^deg over a graded basis (anything with ``degrees()`` or pairs)."""
    if hasattr(basis, "degrees"):
        return PoincareSeries.from_degrees(basis.degrees())
    return PoincareSeries.from_degrees(d for _, d in basis)
