"""Enumeration and symmetry analysis of configuration types.

A per-factor type of length t is a rank vector with r[0] == 0, which is the
rotation-minimal representative of its class. A configuration type of
length t is a pair of per-factor types and is indexed by ``ix * P + iy``
where P is the number of per-factor types.

Symmetries act through precomputed index tables: a coordinate permutation
acts on both factors at once, a reflection reverses one factor's cyclic
order, and the swap exchanges the factors.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .circle_core import (
    Configuration,
    CyclicArrangement,
    MalformedRanks,
    interleaves,
    perm_sign,
    relabel,
)

__all__ = [
    "MAX_T",
    "SizeLimit",
    "SymmetryElement",
    "OrbitClass",
    "Orbits",
    "TypeSpace",
    "type_space",
    "canonical_ranks",
    "canonicalize",
    "enumerate_types",
    "counts",
    "forced_zero",
    "lemma7_applies",
    "orbits",
    "orbit_classes",
]

MAX_T = 6


class SizeLimit(ValueError):
    pass


def _check_t(t: int) -> None:
    if not 1 <= t <= MAX_T:
        raise SizeLimit(f"tuple length {t} outside 1..{MAX_T}")


def canonical_ranks(values) -> tuple[int, ...]:
    """Relabel to 0..m-1 and rotate so the first coordinate has rank 0."""
    r = relabel(values)
    if not r:
        return r
    m = max(r) + 1
    r0 = r[0]
    return tuple((v - r0) % m for v in r)


def _require_contiguous(ranks) -> None:
    if ranks and set(ranks) != set(range(max(ranks) + 1)):
        raise MalformedRanks(f"ranks {list(ranks)} are not contiguous 0..m-1")


def canonicalize(c: Configuration) -> Configuration:
    _require_contiguous(c.x.ranks)
    _require_contiguous(c.y.ranks)
    return Configuration.of(canonical_ranks(c.x.ranks), canonical_ranks(c.y.ranks))


def counts(c: Configuration) -> tuple[int, int]:
    return len(set(c.x.ranks)), len(set(c.y.ranks))


def _factor_types(t: int) -> list[tuple[int, ...]]:
    # every rank vector with first entry 0 whose values are exactly 0..m-1
    out = []
    for tail in itertools.product(range(t), repeat=t - 1):
        r = (0,) + tail
        if set(r) == set(range(max(r) + 1)):
            out.append(r)
    return sorted(out)


@dataclass(frozen=True)
class SymmetryElement:
    """Coordinate permutation combined with per-factor reversals and a factor swap.

    Applied as: swap factors, then reverse x and/or y, then move old
    coordinate perm[k] to position k.
    """

    perm: tuple[int, ...]
    x_reverse: bool = False
    y_reverse: bool = False
    swap: bool = False

    def net_sign(self, twisted: bool = True) -> int:
        s = perm_sign(self.perm)
        if twisted:
            if self.x_reverse:
                s = -s
            if self.y_reverse:
                s = -s
        return s

    def apply(self, c: Configuration) -> Configuration:
        xs, ys = c.x.ranks, c.y.ranks
        if self.swap:
            xs, ys = ys, xs
        if self.x_reverse:
            xs = tuple(-v for v in xs)
        if self.y_reverse:
            ys = tuple(-v for v in ys)
        xs = relabel([xs[i] for i in self.perm])
        ys = relabel([ys[i] for i in self.perm])
        return Configuration.of(xs, ys)


def group_elements(t: int, twisted: bool = True):
    """All symmetry elements: Sym(t) x reversals x swap (twisted) or Sym(t) (untwisted)."""
    flags = itertools.product([False, True], repeat=3) if twisted else [(False, False, False)]
    flags = list(flags)
    for p in itertools.permutations(range(t)):
        for xr, yr, sw in flags:
            yield SymmetryElement(p, xr, yr, sw)


def forced_zero(c: Configuration, twisted: bool = True) -> bool:
    """Exhaustive stabilizer search: is there a symmetry fixing c's type with net sign -1?"""
    target = canonicalize(c)
    for g in group_elements(c.t, twisted):
        if g.net_sign(twisted) == -1 and canonicalize(g.apply(c)) == target:
            return True
    return False


def lemma7_applies(c: Configuration) -> bool:
    """Chords {0,2},{1,3} cross in one factor and not in the other, all points distinct."""
    if c.t != 4 or c.x.m != 4 or c.y.m != 4:
        return False
    cx = interleaves(c.x, (0, 2), (1, 3))
    cy = interleaves(c.y, (0, 2), (1, 3))
    return cx != cy


class TypeSpace:
    """Per-factor types of length t together with their symmetry and face tables."""

    def __init__(self, t: int):
        _check_t(t)
        self.t = t
        self.factor_types = _factor_types(t)
        self.P = len(self.factor_types)
        self.N = self.P * self.P
        self.index = {r: i for i, r in enumerate(self.factor_types)}
        self.ranks = np.array(self.factor_types, dtype=np.int8).reshape(self.P, t)
        self.m = np.array([max(r) + 1 for r in self.factor_types], dtype=np.int8)

        def table(fn):
            return np.array([self.index[canonical_ranks(fn(r))] for r in self.factor_types],
                            dtype=np.int32)

        self.transp = []
        for k in range(t - 1):
            def sw(r, k=k):
                r = list(r)
                r[k], r[k + 1] = r[k + 1], r[k]
                return r
            self.transp.append(table(sw))
        self.refl = table(lambda r: [-v for v in r])
        self.faces = []
        if t >= 2:
            lower = type_space(t - 1)
            for i in range(t):
                self.faces.append(np.array(
                    [lower.index[canonical_ranks(r[:i] + r[i + 1:])] for r in self.factor_types],
                    dtype=np.int32))

    def factor_index(self, values) -> int:
        return self.index[canonical_ranks(values)]

    def config_index(self, c: Configuration) -> int:
        if c.t != self.t:
            raise ValueError(f"expected a {self.t}-tuple, got {c.t}")
        return self.factor_index(c.x.ranks) * self.P + self.factor_index(c.y.ranks)

    def raw_index(self, xs, ys) -> int:
        return self.factor_index(xs) * self.P + self.factor_index(ys)

    def config(self, idx: int) -> Configuration:
        ix, iy = divmod(int(idx), self.P)
        return Configuration.of(self.factor_types[ix], self.factor_types[iy])

    def all_indices(self):
        ix, iy = np.divmod(np.arange(self.N, dtype=np.int64), self.P)
        return ix, iy

    def counts_arrays(self):
        ix, iy = self.all_indices()
        return self.m[ix].astype(np.int64), self.m[iy].astype(np.int64)

    def face_index(self, i: int, ix, iy):
        lower_P = type_space(self.t - 1).P
        return self.faces[i][ix].astype(np.int64) * lower_P + self.faces[i][iy]

    def generators(self, twisted: bool):
        """(image index array, sign) for a generating set of the symmetry group."""
        ix, iy = self.all_indices()
        P = self.P
        gens = [(tr[ix].astype(np.int64) * P + tr[iy], -1) for tr in self.transp]
        if twisted:
            gens.append((self.refl[ix].astype(np.int64) * P + iy, -1))
            gens.append((ix * P + self.refl[iy], -1))
            gens.append((iy * P + ix, 1))
        return gens


@functools.lru_cache(maxsize=None)
def type_space(t: int) -> TypeSpace:
    return TypeSpace(t)


def enumerate_types(t: int) -> list[Configuration]:
    ts = type_space(t)
    return [ts.config(i) for i in range(ts.N)]


@dataclass
class Orbits:
    """Orbit decomposition of all length-t types under the symmetry group.

    ``orbit_of[i]`` is the orbit number of type i (orbits numbered by
    increasing representative index); ``sign[i]`` relates the value at i to
    the value at the representative and is 0 on forced-zero orbits.
    """

    t: int
    twisted: bool
    orbit_of: np.ndarray
    sign: np.ndarray
    reps: np.ndarray
    sizes: np.ndarray
    forced: np.ndarray

    @property
    def basis(self) -> np.ndarray:
        """Orbit numbers of the non-forced orbits, in order."""
        return np.flatnonzero(~self.forced)

    def basis_position(self) -> np.ndarray:
        """For each type, its basis coordinate, or -1 on forced-zero orbits."""
        pos = np.full(len(self.reps), -1, dtype=np.int64)
        b = self.basis
        pos[b] = np.arange(len(b))
        return pos[self.orbit_of]


@functools.lru_cache(maxsize=None)
def orbits(t: int, twisted: bool = True) -> Orbits:
    """Signed orbits via connected components of the sign double cover."""
    ts = type_space(t)
    N = ts.N
    src = np.arange(N, dtype=np.int64)
    rows, cols = [src, src + N], [src, src + N]
    for img, s in ts.generators(twisted):
        if s == 1:
            rows += [src, src + N]
            cols += [img, img + N]
        else:
            rows += [src, src + N]
            cols += [img + N, img]
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(2 * N, 2 * N))
    _, lab = connected_components(graph, directed=False)
    plus, minus = lab[:N], lab[N:]
    forced_node = plus == minus
    key = np.minimum(plus, minus)
    # representative = smallest type index in each orbit
    order = np.argsort(key, kind="stable")
    skey = key[order]
    starts = np.flatnonzero(np.r_[True, skey[1:] != skey[:-1]])
    reps_by_start = order[starts]
    group_of_sorted = np.cumsum(np.r_[True, skey[1:] != skey[:-1]]) - 1
    grp = np.empty(N, dtype=np.int64)
    grp[order] = group_of_sorted
    rep_of = reps_by_start[grp]
    # renumber orbits by representative index
    rank = np.argsort(np.argsort(reps_by_start))
    orbit_of = rank[grp]
    reps = np.sort(reps_by_start)
    sizes = np.bincount(orbit_of, minlength=len(reps))
    forced = np.zeros(len(reps), dtype=bool)
    forced[orbit_of[forced_node]] = True
    sign = np.where(plus == plus[rep_of], 1, -1).astype(np.int8)
    sign[forced[orbit_of]] = 0
    return Orbits(t, twisted, orbit_of, sign, reps, sizes, forced)


@dataclass(frozen=True)
class OrbitClass:
    representative: Configuration
    rep_index: int
    size: int
    forced_zero: bool
    members: tuple[int, ...]
    signs: tuple[int, ...]


def orbit_classes(t: int, twisted: bool = True) -> list[OrbitClass]:
    ts = type_space(t)
    orb = orbits(t, twisted)
    order = np.argsort(orb.orbit_of, kind="stable")
    bounds = np.r_[0, np.cumsum(orb.sizes)]
    out = []
    for k, rep in enumerate(orb.reps):
        members = order[bounds[k]:bounds[k + 1]]
        out.append(OrbitClass(
            representative=ts.config(rep),
            rep_index=int(rep),
            size=int(orb.sizes[k]),
            forced_zero=bool(orb.forced[k]),
            members=tuple(int(m) for m in members),
            signs=tuple(int(s) for s in orb.sign[members]),
        ))
    return out
