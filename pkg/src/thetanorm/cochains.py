"""Exact cochains on configuration types.

A cochain of degree q stores one value per length-(q+1) type as int64
numerators over a single positive denominator. Values on non-canonical
tuples are read through the type index, which is valid because every
cochain here is invariant under order-preserving relabeling of each factor.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .circle_core import Configuration
from .config_space import Orbits, orbits, type_space

__all__ = ["Cochain", "OverflowRisk", "frac_str", "parse_frac"]

_LIMIT = 2**62


class OverflowRisk(ArithmeticError):
    pass


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(str(s).strip())


def _guard(*ints: int) -> None:
    for v in ints:
        if abs(int(v)) >= _LIMIT:
            raise OverflowRisk("cochain numerators exceed int64 headroom")


class Cochain:
    def __init__(self, degree: int, num, den: int = 1, mode: str = "H"):
        if mode not in ("H", "G"):
            raise ValueError(f"unknown invariance mode {mode!r}")
        self.degree = degree
        self.mode = mode
        self.space = type_space(degree + 1)
        num = np.asarray(num, dtype=np.int64)
        if num.shape != (self.space.N,):
            raise ValueError(f"expected {self.space.N} values, got shape {num.shape}")
        den = int(den)
        if den <= 0:
            raise ValueError("denominator must be positive")
        g = math.gcd(int(np.gcd.reduce(num)) if num.size else 0, den)
        if g > 1:
            num = num // g
            den //= g
        self.num = num
        self.den = den

    # construction

    @classmethod
    def zero(cls, degree: int, mode: str = "H") -> "Cochain":
        return cls(degree, np.zeros(type_space(degree + 1).N, dtype=np.int64), 1, mode)

    @classmethod
    def from_values(cls, degree: int, values: Iterable, mode: str = "H") -> "Cochain":
        vals = [Fraction(v) for v in values]
        den = math.lcm(*(v.denominator for v in vals)) if vals else 1
        _guard(den, *(v.numerator * (den // v.denominator) for v in vals))
        num = np.array([v.numerator * (den // v.denominator) for v in vals], dtype=np.int64)
        return cls(degree, num, den, mode)

    @classmethod
    def from_function(cls, degree: int, fn: Callable[[Configuration], Fraction],
                      mode: str = "H") -> "Cochain":
        ts = type_space(degree + 1)
        return cls.from_values(degree, (fn(ts.config(i)) for i in range(ts.N)), mode)

    @classmethod
    def from_coeffs(cls, degree: int, coeffs, mode: str = "H") -> "Cochain":
        """Build from coordinates in the orbit basis (one value per non-forced orbit)."""
        orb = orbits(degree + 1, mode == "H")
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != len(orb.basis):
            raise ValueError(f"expected {len(orb.basis)} coefficients, got {len(coeffs)}")
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        per_orbit = np.zeros(len(orb.reps), dtype=np.int64)
        scaled = [c.numerator * (den // c.denominator) for c in coeffs]
        _guard(den, *scaled)
        per_orbit[orb.basis] = scaled
        return cls(degree, per_orbit[orb.orbit_of] * orb.sign, den, mode)

    @classmethod
    def basis_vector(cls, degree: int, k: int, mode: str = "H") -> "Cochain":
        n = len(orbits(degree + 1, mode == "H").basis)
        coeffs = [0] * n
        coeffs[k] = 1
        return cls.from_coeffs(degree, coeffs, mode)

    # arithmetic

    def _common(self, other: "Cochain"):
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        den = math.lcm(self.den, other.den)
        a, b = den // self.den, den // other.den
        _guard(den, a * self.max_abs_num(), b * other.max_abs_num())
        return self.num * a, other.num * b, den

    def max_abs_num(self) -> int:
        return int(np.abs(self.num).max()) if self.num.size else 0

    def __add__(self, other: "Cochain") -> "Cochain":
        a, b, den = self._common(other)
        _guard(int(np.abs(a).max(initial=0)) + int(np.abs(b).max(initial=0)))
        return Cochain(self.degree, a + b, den, self.mode)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __neg__(self) -> "Cochain":
        return Cochain(self.degree, -self.num, self.den, self.mode)

    def scale(self, c) -> "Cochain":
        c = Fraction(c)
        _guard(c.numerator * self.max_abs_num(), c.denominator * self.den)
        return Cochain(self.degree, self.num * c.numerator, self.den * c.denominator, self.mode)

    def __mul__(self, c) -> "Cochain":
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.degree == other.degree and self.den == other.den
                and bool(np.array_equal(self.num, other.num)))

    def is_zero(self) -> bool:
        return not self.num.any()

    def with_mode(self, mode: str) -> "Cochain":
        return Cochain(self.degree, self.num, self.den, mode)

    # evaluation

    def value_at_index(self, idx: int) -> Fraction:
        return Fraction(int(self.num[idx]), self.den)

    def __call__(self, c: Configuration) -> Fraction:
        return self.value_at_index(self.space.config_index(c))

    def value_raw(self, xs, ys) -> Fraction:
        """Value on a tuple given by arbitrary (not necessarily contiguous) ranks."""
        return self.value_at_index(self.space.raw_index(xs, ys))

    def sup_norm(self) -> Fraction:
        return Fraction(self.max_abs_num(), self.den)

    # structure

    def coboundary(self) -> "Cochain":
        """delta f on every length-(q+2) type, via the face tables."""
        upper = type_space(self.degree + 2)
        ix, iy = upper.all_indices()
        total = np.zeros(upper.N, dtype=np.int64)
        _guard((self.degree + 2) * self.max_abs_num())
        for i in range(upper.t):
            v = self.num[upper.face_index(i, ix, iy)]
            total += v if i % 2 == 0 else -v
        return Cochain(self.degree + 1, total, self.den, self.mode)

    def coboundary_at(self, indices) -> np.ndarray:
        """Numerators (over self.den) of delta f at the given length-(q+2) type indices."""
        upper = type_space(self.degree + 2)
        ix, iy = np.divmod(np.asarray(indices, dtype=np.int64), upper.P)
        total = np.zeros(len(ix), dtype=np.int64)
        for i in range(upper.t):
            v = self.num[upper.face_index(i, ix, iy)]
            total += v if i % 2 == 0 else -v
        return total

    def orbit_data(self) -> Orbits:
        return orbits(self.degree + 1, self.mode == "H")

    def coeffs(self) -> list[Fraction]:
        """Coordinates in the orbit basis: the values at the basis representatives."""
        orb = self.orbit_data()
        return [self.value_at_index(r) for r in orb.reps[orb.basis]]

    def invariance_defect(self) -> int | None:
        """First type index where the value disagrees with sign chart x representative value.

        None means the cochain is alternating and invariant for its mode.
        """
        orb = self.orbit_data()
        expected = self.num[orb.reps[orb.orbit_of]] * orb.sign
        bad = np.flatnonzero(expected != self.num)
        return int(bad[0]) if bad.size else None

    def is_invariant(self) -> bool:
        return self.invariance_defect() is None

    # serialization

    def to_json_obj(self) -> dict:
        orb = self.orbit_data()
        coeffs = {}
        for rep in orb.reps[orb.basis]:
            v = self.value_at_index(rep)
            if v:
                coeffs[str(self.space.config(rep))] = frac_str(v)
        return {"degree": self.degree, "mode": self.mode, "coeffs": coeffs}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Cochain":
        from .cli import parse_config

        degree = int(obj["degree"])
        mode = obj.get("mode", "H")
        orb = orbits(degree + 1, mode == "H")
        ts = type_space(degree + 1)
        pos = orb.basis_position()
        coeffs: list[Fraction | None] = [None] * len(orb.basis)
        for key, val in obj.get("coeffs", {}).items():
            idx = ts.config_index(parse_config(key))
            v = parse_frac(val)
            if pos[idx] < 0:
                if v:
                    raise ValueError(f"{key} lies in a forced-zero orbit")
                continue
            c = v * int(orb.sign[idx])
            if coeffs[pos[idx]] is not None and coeffs[pos[idx]] != c:
                raise ValueError(f"conflicting values for the orbit of {key}")
            coeffs[pos[idx]] = c
        coeffs = [c if c is not None else Fraction(0) for c in coeffs]
        return cls.from_coeffs(degree, coeffs, mode)

    def __repr__(self):
        return f"Cochain(degree={self.degree}, mode={self.mode}, sup={self.sup_norm()})"
