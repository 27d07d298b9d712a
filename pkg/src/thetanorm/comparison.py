"""Constructive coboundary decomposition of degree-4 twisted cocycles.

Given a cocycle f whose lambda functional vanishes, three 3-cochains are
built in turn, each killing f on a larger family of 5-tuples:

  h1 removes f on tuples with three distinct points per factor,
  h2 removes what is left on tuples with n1 + n2 <= 7,
  h3 removes the rest.

Every value of an h_i is computed from all admissible index choices and the
choices are required to agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cochains import Cochain, frac_str
from .config_space import orbits, type_space
from .theta import lambda_profile

__all__ = [
    "DecompositionError",
    "WellDefinednessViolation",
    "ClaimViolation",
    "PreconditionLambda",
    "NotACocycle",
    "DecompositionReport",
    "build_h1",
    "build_h2",
    "build_h3",
    "decompose",
    "check_cocycle",
]


class DecompositionError(ValueError):
    pass


class WellDefinednessViolation(DecompositionError):
    pass


class ClaimViolation(DecompositionError):
    pass


class PreconditionLambda(DecompositionError):
    def __init__(self, value: Fraction):
        super().__init__(f"lambda functional is {value}, not 0")
        self.value = value


class NotACocycle(DecompositionError):
    pass


def _insert(f: Cochain, x: int, y: int, xs, ys) -> Fraction:
    """f((x, y), z_1, ..., z_4) for the 4-tuple with ranks xs, ys."""
    return f.value_raw((x,) + tuple(xs), (y,) + tuple(ys))


def _agree(vals, what, xs, ys, exc=WellDefinednessViolation) -> Fraction:
    vals = set(vals)
    if len(vals) > 1:
        raise exc(f"{what} not well defined at X={list(xs)};Y={list(ys)}: {sorted(vals)}")
    return vals.pop() if vals else Fraction(0)


def _build(fn) -> Cochain:
    ts = type_space(4)
    vals = [fn(ts.factor_types[ix], ts.factor_types[iy])
            for ix in range(ts.P) for iy in range(ts.P)]
    return Cochain.from_values(3, vals, "H")


def _paired(ranks) -> list[int]:
    return [i for i in range(4) if any(ranks[i] == ranks[k] for k in range(4) if k != i)]


def build_h1(f: Cochain) -> Cochain:
    """h1(z) = f((x_i, y_j), z) when x_i is repeated in x and y_j is repeated in y, else 0."""
    def h(xs, ys):
        vals = [_insert(f, xs[i], ys[j], xs, ys) for i in _paired(xs) for j in _paired(ys)]
        return _agree(vals, "h1", xs, ys)
    return _build(h)


def build_h2(f1: Cochain) -> Cochain:
    """h2(z) = 1/2 [f1((x_i, y_k), z) + f1((x_i, y_l), z)] for x_i = x_j, symmetrically in y."""
    def h(xs, ys):
        vals = []
        for i, j in itertools.permutations(range(4), 2):
            k, l = (m for m in range(4) if m not in (i, j))
            if xs[i] == xs[j]:
                vals.append((_insert(f1, xs[i], ys[k], xs, ys)
                             + _insert(f1, xs[i], ys[l], xs, ys)) / 2)
            if ys[i] == ys[j]:
                vals.append((_insert(f1, xs[k], ys[i], xs, ys)
                             + _insert(f1, xs[l], ys[i], xs, ys)) / 2)
        return _agree(vals, "h2", xs, ys)
    return _build(h)


def build_h3(f2: Cochain) -> Cochain:
    """h3(z) = 1/12 sum_{i,j} f2((x_i, y_j), z); every i != j term must be equal."""
    def h(xs, ys):
        off = [_insert(f2, xs[i], ys[j], xs, ys) for i, j in itertools.permutations(range(4), 2)]
        diag = [_insert(f2, xs[i], ys[i], xs, ys) for i in range(4)]
        if any(diag):
            raise ClaimViolation(f"f2 nonzero on a repeated point at X={list(xs)};Y={list(ys)}")
        _agree(off, "single insertion", xs, ys, ClaimViolation)
        return sum(off, Fraction(0)) / 12
    return _build(h)


def check_cocycle(f: Cochain) -> int | None:
    """First 6-tuple representative where delta f is nonzero, or None.

    For an invariant f, delta f is invariant too, so the non-forced orbit
    representatives suffice.
    """
    orb = orbits(f.degree + 2, f.mode == "H")
    reps = orb.reps[orb.basis]
    vals = f.coboundary_at(reps)
    bad = np.flatnonzero(vals)
    return int(reps[bad[0]]) if bad.size else None


def _first_nonzero(c: Cochain, mask) -> int | None:
    bad = np.flatnonzero((c.num != 0) & mask)
    return int(bad[0]) if bad.size else None


@dataclass
class DecompositionReport:
    f: Cochain
    h1: Cochain | None = None
    h2: Cochain | None = None
    h3: Cochain | None = None
    step1: bool = False
    step2: bool = False
    step3: bool = False
    final: bool = False
    counterexample: str | None = None
    stage: str | None = None
    precondition: str | None = None
    lambda_value: Fraction | None = None
    extra: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        d = {
            "step1_vanishing": self.step1,
            "step2_vanishing": self.step2,
            "step3_vanishing": self.step3,
            "final": self.final,
        }
        if self.precondition:
            d["precondition_failed"] = self.precondition
        if self.lambda_value is not None:
            d["lambda_functional"] = frac_str(self.lambda_value)
        if self.counterexample is not None:
            d["counterexample"] = {"stage": self.stage, "config": self.counterexample}
        for name in ("h1", "h2", "h3"):
            h = getattr(self, name)
            if h is not None:
                d[name] = h.to_json_obj()
        return d


def decompose(f: Cochain, raise_on_precondition: bool = True) -> DecompositionReport:
    """Build h1, h2, h3 with f = delta(h1 + h2 + h3) and check every stage exhaustively."""
    if f.degree != 4 or f.mode != "H":
        raise ValueError("decompose expects an H-twisted degree-4 cochain")
    rep = DecompositionReport(f)
    ts = type_space(5)
    defect = f.invariance_defect()
    bad = check_cocycle(f) if defect is None else None
    lam = lambda_profile(f).functional
    rep.lambda_value = lam
    if defect is not None or bad is not None:
        idx = bad if bad is not None else defect
        space = type_space(6) if bad is not None else ts
        rep.precondition = "not_a_cocycle" if bad is not None else "not_invariant"
        rep.counterexample = str(space.config(idx))
        if raise_on_precondition:
            raise NotACocycle(f"{rep.precondition} at {rep.counterexample}")
        return rep
    if lam != 0:
        rep.precondition = "lambda_functional"
        if raise_on_precondition:
            raise PreconditionLambda(lam)
        return rep

    n1, n2 = ts.counts_arrays()
    rep.h1 = build_h1(f)
    f1 = f - rep.h1.coboundary()
    k = _first_nonzero(f1, (n1 == 3) & (n2 == 3))
    rep.step1 = k is None
    if not rep.step1:
        rep.stage, rep.counterexample = "step1", str(ts.config(k))
        return rep

    rep.h2 = build_h2(f1)
    f2 = f1 - rep.h2.coboundary()
    k = _first_nonzero(f2, n1 + n2 <= 7)
    rep.step2 = k is None
    if not rep.step2:
        rep.stage, rep.counterexample = "step2", str(ts.config(k))
        return rep

    rep.h3 = build_h3(f2)
    f3 = f2 - rep.h3.coboundary()
    k = _first_nonzero(f3, np.ones(ts.N, dtype=bool))
    rep.step3 = k is None
    if not rep.step3:
        rep.stage, rep.counterexample = "step3", str(ts.config(k))
        return rep

    total = rep.h1 + rep.h2 + rep.h3
    rep.final = total.coboundary() == f
    if not rep.final:
        rep.stage = "final"
    return rep
