"""Cyclic-order combinatorics on S^1 and the basic cochain calculus.

A point of S^1 x S^1 carries no coordinates here: a tuple of points is
recorded by the cyclic order (with coincidences) of its two projections.
Ranks increase counterclockwise, equal ranks are coincident points.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

__all__ = [
    "DegeneratePoints",
    "MalformedRanks",
    "CyclicArrangement",
    "Configuration",
    "RawCochain",
    "relabel",
    "perm_sign",
    "orientation",
    "interleaves",
    "alternate",
    "cup",
    "coboundary",
    "or_x",
    "or_y",
    "constant",
]


class DegeneratePoints(ValueError):
    pass


class MalformedRanks(ValueError):
    pass


def relabel(values: Sequence) -> tuple[int, ...]:
    """Order-preserving relabeling of arbitrary comparable values onto 0..m-1."""
    distinct = sorted(set(values))
    pos = {v: i for i, v in enumerate(distinct)}
    return tuple(pos[v] for v in values)


def perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class CyclicArrangement:
    ranks: tuple[int, ...]

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        object.__setattr__(self, "ranks", ranks)
        if ranks and set(ranks) != set(range(max(ranks) + 1)):
            raise MalformedRanks(f"ranks {list(ranks)} are not contiguous 0..m-1")

    @property
    def m(self) -> int:
        return len(set(self.ranks))

    def __len__(self):
        return len(self.ranks)

    def __str__(self):
        return "[" + ",".join(map(str, self.ranks)) + "]"


@dataclass(frozen=True)
class Configuration:
    x: CyclicArrangement
    y: CyclicArrangement

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("x and y arrangements have different lengths")

    @classmethod
    def of(cls, xs: Sequence[int], ys: Sequence[int]) -> "Configuration":
        return cls(CyclicArrangement(tuple(xs)), CyclicArrangement(tuple(ys)))

    @property
    def t(self) -> int:
        return len(self.x)

    def points(self) -> list[tuple[int, int]]:
        return list(zip(self.x.ranks, self.y.ranks))

    def sub(self, indices: Sequence[int]) -> "Configuration":
        """The tuple (z_i for i in indices), relabeled to contiguous ranks."""
        xs = relabel([self.x.ranks[i] for i in indices])
        ys = relabel([self.y.ranks[i] for i in indices])
        return Configuration.of(xs, ys)

    def face(self, i: int) -> "Configuration":
        return self.sub([k for k in range(self.t) if k != i])

    def permuted(self, perm: Sequence[int]) -> "Configuration":
        """New coordinate k is old coordinate perm[k]."""
        return self.sub(perm)

    def __str__(self):
        return f"X={self.x};Y={self.y}"


def orientation(a: int, b: int, c: int, m: int | None = None) -> int:
    """Or of three circle points given by ranks: +1 counterclockwise, 0 if any coincide."""
    s = (b - a) * (c - b) * (c - a)
    return (s > 0) - (s < 0)


def interleaves(arr: CyclicArrangement | Sequence[int], pair_a, pair_b) -> bool:
    """True iff the chords pair_a and pair_b cross, i.e. their endpoints alternate."""
    ranks = arr.ranks if isinstance(arr, CyclicArrangement) else tuple(arr)
    i, j = pair_a
    k, l = pair_b
    pts = [ranks[i], ranks[j], ranks[k], ranks[l]]
    if len(set(pts)) < 4:
        raise DegeneratePoints(f"coincident endpoints among ranks {pts}")
    lo, hi = sorted(pts[:2])
    inside = [lo < r < hi for r in pts[2:]]
    return inside[0] != inside[1]


@dataclass(frozen=True)
class RawCochain:
    """A rational-valued function of (q+1)-tuple configurations.

    ``twist`` is "trivial" or "twisted"; it records which coefficient module
    the cochain is meant to live in and does not change evaluation.
    """

    degree: int
    evaluator: Callable[[Configuration], Fraction]
    alternating: bool = False
    twist: str = "trivial"

    def __call__(self, c: Configuration) -> Fraction:
        if c.t != self.degree + 1:
            raise ValueError(f"degree-{self.degree} cochain evaluated on a {c.t}-tuple")
        return Fraction(self.evaluator(c))


def alternate(f: RawCochain) -> RawCochain:
    t = f.degree + 1
    perms = [(p, perm_sign(p)) for p in itertools.permutations(range(t))]
    norm = math.factorial(t)

    def ev(c: Configuration) -> Fraction:
        total = sum((s * f(c.permuted(p)) for p, s in perms), Fraction(0))
        return total / norm

    return RawCochain(f.degree, ev, alternating=True, twist=f.twist)


def cup(f: RawCochain, g: RawCochain, twist: str = "trivial") -> RawCochain:
    p, q = f.degree, g.degree

    def ev(c: Configuration) -> Fraction:
        left = f(c.sub(range(0, p + 1)))
        if left == 0:
            return Fraction(0)
        return left * g(c.sub(range(p, p + q + 1)))

    return RawCochain(p + q, ev, alternating=False, twist=twist)


def coboundary(f: RawCochain) -> RawCochain:
    def ev(c: Configuration) -> Fraction:
        return sum(((-1) ** i * f(c.face(i)) for i in range(c.t)), Fraction(0))

    return RawCochain(f.degree + 1, ev, alternating=f.alternating, twist=f.twist)


def constant(degree: int, value) -> RawCochain:
    v = Fraction(value)
    return RawCochain(degree, lambda c: v)


or_x = RawCochain(2, lambda c: Fraction(orientation(*c.x.ranks)), alternating=True)
or_y = RawCochain(2, lambda c: Fraction(orientation(*c.y.ranks)), alternating=True)
