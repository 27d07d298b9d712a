"""Boundary action of an explicit genus-2 Fuchsian group and the cycle pairings.

Group elements are kept as words in a1, b1, a2, b2 (inverses in upper case)
and evaluated to PSL(2, R) matrices on demand. Points of the circle at
infinity are angles in the disk model; reducing a tuple of angles to ranks
is the only place where floating point meets the exact cochains.

The generators pair opposite sides of the regular octagon with vertex angle
pi/4. With the labelling used here they satisfy a1 b1 a2 b2 = b2 a2 b1 a1,
which is exactly the relation that makes the six-term chain below a cycle
when its triples are read as (1, g, g h).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .circle_core import Configuration, orientation
from .config_space import canonical_ranks

__all__ = [
    "COINCIDE_TOL",
    "AMBIGUOUS_TOL",
    "NearCoincidence",
    "ConstructionFailure",
    "MobiusMap",
    "SurfaceGroupData",
    "GroupChain",
    "mobius_boundary",
    "octagon_group",
    "load_generators",
    "genus2_cycle",
    "boundary",
    "product_chain",
    "reduce_to_ranks",
    "pair",
    "pair_or",
    "fixed_point_orientations",
    "perturbed",
    "reductions",
    "circle_distance",
]

COINCIDE_TOL = 1e-12
AMBIGUOUS_TOL = 1e-9
TWO_PI = 2 * math.pi

_K = np.array([[1, -1j], [1, 1j]])  # Cayley transform, upper half-plane -> disk
_KINV = np.linalg.inv(_K)


class NearCoincidence(ArithmeticError):
    pass


class ConstructionFailure(RuntimeError):
    pass


class MobiusMap:
    """A real 2x2 matrix with determinant +-1, up to sign."""

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=float).reshape(2, 2)
        det = np.linalg.det(m)
        if abs(det) < 1e-300:
            raise ValueError("singular matrix")
        self.matrix = m / math.sqrt(abs(det))

    @classmethod
    def from_disk(cls, u) -> "MobiusMap":
        """From an SU(1,1) matrix acting on the unit disk."""
        m = _KINV @ np.asarray(u, dtype=complex) @ _K
        # the conjugate is real up to a global phase
        k = np.argmax(np.abs(m))
        m = m * (abs(m.flat[k]) / m.flat[k])
        return cls(m.real)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(np.eye(2))

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    def disk(self) -> np.ndarray:
        return _K @ self.matrix @ _KINV

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(self.matrix @ other.matrix)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(np.linalg.inv(self.matrix))

    def boundary(self, theta: float) -> float:
        d = self.disk()
        w = np.exp(1j * theta)
        return float(np.angle((d[0, 0] * w + d[0, 1]) / (d[1, 0] * w + d[1, 1]))) % TWO_PI

    def distance_to_identity(self) -> float:
        """Operator-norm distance from +-identity."""
        return min(np.linalg.norm(self.matrix - s * np.eye(2), 2) for s in (1, -1))

    def fixed_points(self) -> list[float]:
        """Boundary fixed points, attracting first."""
        d = self.disk()
        a, b, c, e = d[0, 0], d[0, 1], d[1, 0], d[1, 1]
        roots = np.roots([c, e - a, -b]) if abs(c) > 1e-15 else np.array([])
        pts = [z for z in roots if abs(abs(z) - 1) < 1e-8]
        pts.sort(key=lambda z: abs(1 / (c * z + e) ** 2))
        return [float(np.angle(z)) % TWO_PI for z in pts]

    def __repr__(self):
        return f"MobiusMap({self.matrix.tolist()})"


def mobius_boundary(m: MobiusMap, theta: float) -> float:
    return m.boundary(theta)


def _su11_rotation(phi: float) -> np.ndarray:
    return np.array([[np.exp(1j * phi / 2), 0], [0, np.exp(-1j * phi / 2)]])


def _su11_translation(s: float) -> np.ndarray:
    return np.array([[math.cosh(s / 2), math.sinh(s / 2)],
                     [math.sinh(s / 2), math.cosh(s / 2)]], dtype=complex)


def octagon_side_map(i: int, j: int) -> MobiusMap:
    """Orientation-preserving map of the regular octagon taking side i onto side j.

    Rotate side i to the real axis, half-turn about its midpoint, rotate to side j.
    """
    d = math.acosh(1 / math.tan(math.pi / 8))  # center to side midpoint
    phi = [TWO_PI * k / 8 for k in range(8)]
    u = (_su11_rotation(phi[j]) @ _su11_translation(d) @ _su11_rotation(math.pi)
         @ _su11_translation(-d) @ _su11_rotation(-phi[i]))
    return MobiusMap.from_disk(u)


GENERATORS = ("a1", "b1", "a2", "b2")


@dataclass
class SurfaceGroupData:
    a1: MobiusMap
    b1: MobiusMap
    a2: MobiusMap
    b2: MobiusMap
    xi: float
    relator_residual: float

    def generator(self, name: str) -> MobiusMap:
        return getattr(self, name)

    def element(self, word: Sequence[str]) -> MobiusMap:
        """Evaluate a word; upper-case letters are inverses."""
        m = MobiusMap.identity()
        for letter in word:
            g = self.generator(letter.lower())
            m = m @ (g.inverse() if letter[0].isupper() else g)
        return m

    def act(self, word: Sequence[str], theta: float | None = None) -> float:
        return self.element(word).boundary(self.xi if theta is None else theta)

    def with_base_point(self, xi: float) -> "SurfaceGroupData":
        return SurfaceGroupData(self.a1, self.b1, self.a2, self.b2, xi, self.relator_residual)


def _relator(a1, b1, a2, b2) -> MobiusMap:
    return a1 @ b1 @ a2 @ b2 @ (b2 @ a2 @ b1 @ a1).inverse()


def _assemble(gens: Sequence[MobiusMap], tol: float = 1e-9) -> SurfaceGroupData:
    a1, b1, a2, b2 = gens
    res = _relator(a1, b1, a2, b2).distance_to_identity()
    if not res <= tol:
        raise ConstructionFailure(f"relator residual {res:.3e} exceeds {tol:.0e}")
    fps = a1.fixed_points()
    if len(fps) != 2:
        raise ConstructionFailure("a1 is not hyperbolic")
    return SurfaceGroupData(a1, b1, a2, b2, fps[0], res)


def octagon_group() -> SurfaceGroupData:
    """Opposite-side pairings of the regular octagon; xi is the attracting fixed point of a1."""
    P = octagon_side_map
    return _assemble([P(0, 4), P(3, 7), P(2, 6).inverse(), P(1, 5)])


def load_generators(path) -> SurfaceGroupData:
    """Four matrices from a text file, one per row as four reals a b c d."""
    rows = np.loadtxt(path, dtype=float, ndmin=2)
    if rows.shape != (4, 4):
        raise ConstructionFailure(f"expected 4 rows of 4 reals, got shape {rows.shape}")
    return _assemble([MobiusMap(r.reshape(2, 2)) for r in rows])


# chains

def reduce_word(word: Iterable[str]) -> tuple[str, ...]:
    out: list[str] = []
    for letter in word:
        if out and out[-1] == letter.swapcase():
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def inverse_word(word: Sequence[str]) -> tuple[str, ...]:
    return tuple(letter.swapcase() for letter in reversed(word))


@dataclass(frozen=True)
class GroupChain:
    """Formal integer combination of tuples; entries are words or pairs of words."""

    terms: tuple[tuple[int, tuple], ...]

    @property
    def degree(self) -> int:
        return len(self.terms[0][1]) - 1 if self.terms else -1

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "GroupChain") -> "GroupChain":
        return GroupChain(self.terms + other.terms)

    def __neg__(self) -> "GroupChain":
        return GroupChain(tuple((-c, t) for c, t in self.terms))

    def simplified(self) -> "GroupChain":
        acc: dict = {}
        for c, t in self.terms:
            acc[t] = acc.get(t, 0) + c
        return GroupChain(tuple((c, t) for t, c in acc.items() if c))


def genus2_cycle(group: SurfaceGroupData | None = None) -> GroupChain:
    """The six-term fundamental cycle, triples written as (1, g, g h)."""
    def w(s):
        return tuple(s.split())
    one = ()
    triples = [
        (+1, "a1", "b1"), (+1, "a1 b1", "a2"), (+1, "a1 b1 a2", "b2"),
        (-1, "b2", "a2"), (-1, "b2 a2", "b1"), (-1, "b2 a2 b1", "a1"),
    ]
    return GroupChain(tuple((s, (one, w(g), reduce_word(w(g) + w(h)))) for s, g, h in triples))


def _fingerprint(m: MobiusMap, digits: int = 7) -> tuple:
    a = m.matrix.flatten()
    k = int(np.argmax(np.abs(a)))
    if a[k] < 0:
        a = -a
    return tuple(np.round(a, digits) + 0.0)


def boundary(chain: GroupChain, group: SurfaceGroupData) -> GroupChain:
    """Boundary in the coinvariants: faces are translated to start at 1 and compared as group elements."""
    acc: dict = {}
    rep: dict = {}
    for c, tup in chain.terms:
        for i in range(len(tup)):
            face = tup[:i] + tup[i + 1:]
            lead = inverse_word(face[0])
            norm = tuple(reduce_word(lead + g) for g in face)
            key = tuple(_fingerprint(group.element(g)) for g in norm)
            rep.setdefault(key, norm)
            acc[key] = acc.get(key, 0) + (-1) ** i * c
    return GroupChain(tuple((c, rep[k]) for k, c in acc.items() if c))


# (index into g, index into k) for the six shuffles and their signs
SHUFFLES = (
    (+1, ((0, 0), (0, 1), (0, 2), (1, 2), (2, 2))),
    (-1, ((0, 0), (0, 1), (1, 1), (1, 2), (2, 2))),
    (+1, ((0, 0), (0, 1), (1, 1), (2, 1), (2, 2))),
    (+1, ((0, 0), (1, 0), (1, 1), (1, 2), (2, 2))),
    (-1, ((0, 0), (1, 0), (1, 1), (2, 1), (2, 2))),
    (+1, ((0, 0), (1, 0), (2, 0), (2, 1), (2, 2))),
)


def product_chain(c: GroupChain, d: GroupChain) -> GroupChain:
    """Shuffle product of two 2-chains; entries are 5-tuples of (g, k) pairs."""
    terms = []
    for s, g in c.terms:
        for t, k in d.terms:
            for e, path in SHUFFLES:
                terms.append((s * t * e, tuple((g[i], k[j]) for i, j in path)))
    return GroupChain(tuple(terms))


# float -> rank reduction

def circle_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def reduce_to_ranks(angles: Sequence[float]) -> tuple[int, ...]:
    """Cyclic ranks of boundary angles; near-equal angles are one point.

    Gaps up to COINCIDE_TOL merge, gaps at or above AMBIGUOUS_TOL separate,
    anything in between raises NearCoincidence.
    """
    angles = [a % TWO_PI for a in angles]
    n = len(angles)
    if n == 0:
        return ()
    order = sorted(range(n), key=lambda i: angles[i])
    cluster = [0] * n
    k = 0
    for prev, cur in zip(order, order[1:]):
        gap = angles[cur] - angles[prev]
        if COINCIDE_TOL < gap < AMBIGUOUS_TOL:
            raise NearCoincidence(f"boundary points {gap:.3e} apart")
        if gap >= AMBIGUOUS_TOL:
            k += 1
        cluster[cur] = k
    if k > 0:
        wrap = angles[order[0]] + TWO_PI - angles[order[-1]]
        if COINCIDE_TOL < wrap < AMBIGUOUS_TOL:
            raise NearCoincidence(f"boundary points {wrap:.3e} apart across 0")
        if wrap <= COINCIDE_TOL:
            cluster = [0 if v == k else v for v in cluster]
    return canonical_ranks(cluster)


def _is_pair(e) -> bool:
    return len(e) == 2 and all(isinstance(w, tuple) for w in e)


def reductions(chain: GroupChain, group: SurfaceGroupData) -> list[Configuration]:
    """The configuration of boundary points attached to each chain entry."""
    cache: dict = {}

    def pt(word):
        if word not in cache:
            cache[word] = group.act(word)
        return cache[word]

    out = []
    for _, tup in chain.terms:
        if tup and _is_pair(tup[0]):
            xs = reduce_to_ranks([pt(g) for g, _ in tup])
            ys = reduce_to_ranks([pt(k) for _, k in tup])
        else:
            xs = ys = reduce_to_ranks([pt(g) for g in tup])
        out.append(Configuration.of(xs, ys))
    return out


def pair(f: Callable[[Configuration], Fraction], chain: GroupChain,
         group: SurfaceGroupData) -> Fraction:
    """sum of coefficient * f(h_0(xi, xi), ..., h_4(xi, xi)) over the chain, exactly."""
    total = Fraction(0)
    for (c, _), conf in zip(chain.terms, reductions(chain, group)):
        total += c * Fraction(f(conf))
    return total


def pair_or(chain: GroupChain, group: SurfaceGroupData) -> int:
    """<Or_xi, chain> for a 2-chain of words."""
    return sum(c * orientation(*conf.x.ranks)
               for (c, _), conf in zip(chain.terms, reductions(chain, group)))


def fixed_point_orientations(group: SurfaceGroupData) -> list[int]:
    """The four summands of <Or_xi, z> that survive a1 xi = xi; each should be +1."""
    z = genus2_cycle(group)
    return [c * orientation(*conf.x.ranks)
            for (c, _), conf in list(zip(z.terms, reductions(z, group)))[1:5]]


def perturbed(group: SurfaceGroupData, eps: float, seed: int = 0) -> SurfaceGroupData:
    """Generators with entries perturbed by at most eps (renormalized), same base point."""
    rng = random.Random(seed)
    gens = []
    for name in GENERATORS:
        m = group.generator(name).matrix
        gens.append(MobiusMap(m + np.array([[rng.uniform(-eps, eps) for _ in range(2)]
                                            for _ in range(2)])))
    a1 = gens[0]
    xi = min(a1.fixed_points(), key=lambda p: circle_distance(p, group.xi))
    res = _relator(*gens).distance_to_identity()
    return SurfaceGroupData(*gens, xi, res)
